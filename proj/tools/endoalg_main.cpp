// Command line front end.  Every command prints a deterministic report to
// stdout (plain text, or JSON with --json) and encodes its verdict in the
// exit status: 0 success/true, 1 definite negative, 2 usage or input
// errors, 3 resource or depth exhaustion.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "endoalg/config.hpp"
#include "endoalg/dynamics.hpp"
#include "endoalg/errors.hpp"
#include "endoalg/group.hpp"
#include "endoalg/l2.hpp"
#include "endoalg/numeric.hpp"
#include "endoalg/ortho.hpp"
#include "endoalg/parser.hpp"
#include "endoalg/printer.hpp"
#include "endoalg/qform.hpp"
#include "endoalg/word.hpp"

using json = nlohmann::ordered_json;
using namespace endoalg;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GlobalOpts {
  std::string config_path;
  int depth = -1;  // -1 keeps the config value
  std::size_t window = 41;
  std::uint64_t seed = 1;
  bool json_mode = false;
};

Context build_context(const GlobalOpts& g) {
  ContextConfig cfg;
  if (g.config_path.empty()) {
    cfg.rank = 1;
    cfg.matrix = {Int(3)};
    std::cerr << "context: built-in rank 1 matrix [3]\n";
  } else {
    cfg = ContextConfig::load(g.config_path);
  }
  if (g.depth >= 0) cfg.max_depth = g.depth;
  cfg.validate();
  return Context(cfg);
}

std::string int_str(const Int& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::string rat_str(const Rat& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

const char* yn(bool b) { return b ? "yes" : "no"; }
const char* okfail(bool b) { return b ? "ok" : "FAIL"; }

void emit(const GlobalOpts& g, const json& j, const std::string& text) {
  if (g.json_mode)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

std::vector<std::string> args_of(CLI::App& app, CLI::App* sub, std::size_t want,
                                 const std::string& usage) {
  std::vector<std::string> out = sub->remaining();
  for (const std::string& extra : app.remaining()) out.push_back(extra);
  if (out.size() != want) throw UsageError("expected " + usage);
  return out;
}

int parse_level(const std::string& s) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size() || v < 0) throw UsageError("level must be a nonnegative integer");
    return v;
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception&) {
    throw UsageError("level must be a nonnegative integer");
  }
}

// --- element arithmetic ------------------------------------------------

int cmd_element(const GlobalOpts& g, const Context& ctx, const std::string& name,
                const AlgebraElement& x) {
  std::string text = print_element(x);
  json j;
  j["command"] = name;
  j["element"] = text;
  j["terms"] = x.size();
  emit(g, j, text + "\n");
  return 0;
}

int cmd_equal(const GlobalOpts& g, const Context& ctx, const std::string& lhs,
              const std::string& rhs) {
  AlgebraElement a = parse_element_arg(ctx, lhs);
  AlgebraElement b = parse_element_arg(ctx, rhs);
  bool eq = equals(ctx, a, b);
  json j;
  j["command"] = "equal";
  j["equal"] = eq;
  emit(g, j, std::string(eq ? "equal" : "not equal") + "\n");
  return eq ? 0 : 1;
}

// --- point action oracle -----------------------------------------------

Word random_word(const Context& ctx, Rng& rng, std::size_t len) {
  Word w;
  for (std::size_t i = 0; i < len; ++i) {
    switch (rng.below(3)) {
      case 0: {
        Vec g;
        for (std::size_t j = 0; j < ctx.rank(); ++j) g.emplace_back(rng.range(-4, 4));
        w.push_back(Letter::u(ctx.make(g)));
        break;
      }
      case 1:
        w.push_back(Letter::s());
        break;
      default:
        w.push_back(Letter::sstar());
        break;
    }
  }
  return w;
}

Word monomial_word(const Monomial& m) {
  Word w;
  w.push_back(Letter::u(m.a));
  for (int i = 0; i < m.p; ++i) w.push_back(Letter::s());
  for (int i = 0; i < m.q; ++i) w.push_back(Letter::sstar());
  w.push_back(Letter::u(m.b));
  return w;
}

int cmd_oracle_check(const GlobalOpts& g, const Context& ctx, const std::string& expr,
                     std::size_t count) {
  std::vector<GroupElement> window = window_points(ctx, g.window);
  json j;
  j["command"] = "oracle-check";
  j["points"] = window.size();
  std::ostringstream text;
  if (!expr.empty()) {
    AlgebraElement x = parse_element_arg(ctx, expr);
    std::size_t checked = 0;
    for (const auto& [mono, coeff] : x.terms()) {
      AlgebraElement single;
      single.add_term(mono, GaussRat(Rat(1)));
      if (!word_matches_element(ctx, monomial_word(mono), single, window)) {
        std::string what = print_monomial(mono);
        j["mode"] = "monomials";
        j["checked"] = checked;
        j["agree"] = false;
        j["failed"] = what;
        emit(g, j, "monomial " + what + " disagrees with the point action\n");
        return 1;
      }
      ++checked;
    }
    j["mode"] = "monomials";
    j["checked"] = checked;
    j["agree"] = true;
    text << "checked " << checked << " monomials on " << window.size()
         << " points: all agree\n";
    emit(g, j, text.str());
    return 0;
  }
  Rng rng(g.seed);
  for (std::size_t i = 0; i < count; ++i) {
    Word w = random_word(ctx, rng, 1 + rng.below(7));
    AlgebraElement x = from_word(ctx, w);
    if (!word_matches_element(ctx, w, x, window)) {
      j["mode"] = "words";
      j["checked"] = i;
      j["agree"] = false;
      j["failed"] = "word " + std::to_string(i);
      emit(g, j, "word " + std::to_string(i) + " disagrees with the point action\n");
      return 1;
    }
  }
  j["mode"] = "words";
  j["checked"] = count;
  j["agree"] = true;
  text << "checked " << count << " words on " << window.size() << " points: all agree\n";
  emit(g, j, text.str());
  return 0;
}

// --- group layer -------------------------------------------------------

int cmd_cosets(const GlobalOpts& g, const Context& ctx, int level) {
  const std::vector<GroupElement>& reps = ctx.transversal(level);
  json j;
  j["command"] = "cosets";
  j["level"] = level;
  j["index"] = int_str(ctx.index(level));
  json arr = json::array();
  std::ostringstream text;
  text << "level " << level << ": index " << int_str(ctx.index(level)) << "\n";
  for (const GroupElement& r : reps) {
    std::string s = print_group(r);
    arr.push_back(s);
    text << s << "\n";
  }
  j["reps"] = arr;
  emit(g, j, text.str());
  return 0;
}

int cmd_purity(const GlobalOpts& g, const Context& ctx) {
  PurityReport rep = ctx.purity_check();
  std::string verdict = rep.verdict == Purity::PureUpToDepth ? "pure"
                        : rep.verdict == Purity::NotPure     ? "not pure"
                                                             : "inconclusive";
  json j;
  j["command"] = "purity";
  j["verdict"] = verdict;
  j["checked_depth"] = rep.checked_depth;
  j["witness"] = rep.witness ? json(print_group(*rep.witness)) : json(nullptr);
  j["note"] = rep.note;
  std::ostringstream text;
  text << "verdict: " << verdict << "\n";
  text << "checked depth: " << rep.checked_depth << "\n";
  if (rep.witness) text << "witness: " << print_group(*rep.witness) << "\n";
  if (!rep.note.empty()) text << "note: " << rep.note << "\n";
  emit(g, j, text.str());
  if (rep.verdict == Purity::PureUpToDepth) return 0;
  return rep.verdict == Purity::NotPure ? 1 : 3;
}

// --- separation --------------------------------------------------------

std::vector<QTerm> parse_family(const Context& ctx, const std::string& src) {
  std::string body = src;
  if (!body.empty() && body[0] == '@') {
    std::vector<QTerm> terms = parse_qterm_sum_arg(ctx, src);
    return terms;
  }
  if (body.find("qterm") != std::string::npos) return parse_qterm_sum(ctx, body);
  AlgebraElement x = parse_element_arg(ctx, src);
  return to_qform(ctx, x);
}

int report_separation(const GlobalOpts& g, const Context& ctx,
                      const std::vector<QTerm>& family, const OrthoOptions& opts,
                      json& j, std::ostringstream& text) {
  OrthoResult r = orthogonalize(ctx, family, opts);
  SeparationReport sep = verify_separation(ctx, family, r);
  j["terms"] = family.size();
  j["common_level"] = r.common_level;
  j["projections"] = r.proj_reps.size();
  json comp = json::array();
  for (const GroupElement& h : r.companions) comp.push_back(print_group(h));
  j["companions"] = comp;
  json crit = json::array();
  for (const TermExponent& te : r.critical_exponents)
    crit.push_back(json{{"term", te.term}, {"exponent", te.exponent}});
  j["critical_exponents"] = crit;
  j["computed_p"] = r.computed_p;
  j["p"] = r.p;
  json sc = json::array();
  for (const GaussRat& s : sep.scalars) sc.push_back(gauss_to_string(s));
  j["scalars"] = sc;
  j["norm_input"] = rat_str(sep.norm_input);
  j["norm_compressed"] = rat_str(sep.norm_compressed);
  j["orthogonal"] = sep.orthogonal;
  j["isometric"] = sep.isometric;
  j["norm_match"] = sep.norm_match;
  j["formal"] = sep.formal_ok;
  j["algebraic"] = sep.algebraic_ok;
  j["separated"] = sep.all();

  text << "terms: " << family.size() << "\n";
  text << "common level: " << r.common_level << "\n";
  text << "projections: " << r.proj_reps.size() << "\n";
  text << "companions: ";
  for (std::size_t i = 0; i < r.companions.size(); ++i) {
    if (i) text << ",";
    text << print_group(r.companions[i]);
  }
  text << "\n";
  text << "critical exponents:";
  if (r.critical_exponents.empty()) text << " none";
  for (const TermExponent& te : r.critical_exponents)
    text << " " << te.term << ":" << te.exponent;
  text << "\n";
  text << "p: " << r.p << "\n";
  text << "scalars: ";
  for (std::size_t i = 0; i < sep.scalars.size(); ++i) {
    if (i) text << ",";
    text << gauss_to_string(sep.scalars[i]);
  }
  text << "\n";
  text << "norm: " << rat_str(sep.norm_input) << " -> " << rat_str(sep.norm_compressed)
       << "\n";
  text << "orthogonal: " << yn(sep.orthogonal) << "\n";
  text << "isometric: " << yn(sep.isometric) << "\n";
  text << "norm match: " << yn(sep.norm_match) << "\n";
  text << "formal: " << yn(sep.formal_ok) << "\n";
  text << "algebraic: " << yn(sep.algebraic_ok) << "\n";
  text << "separated: " << yn(sep.all()) << "\n";
  return sep.all() ? 0 : 1;
}

int cmd_orthogonalize(const GlobalOpts& g, const Context& ctx, const std::string& src,
                      std::size_t offset, std::optional<int> forced_p) {
  std::vector<QTerm> family = parse_family(ctx, src);
  OrthoOptions opts;
  opts.companion_offset = offset;
  opts.forced_p = forced_p;
  json j;
  j["command"] = "orthogonalize";
  std::ostringstream text;
  int rc = report_separation(g, ctx, family, opts, j, text);
  emit(g, j, text.str());
  return rc;
}

// --- dynamics ----------------------------------------------------------

int cmd_freeness(const GlobalOpts& g, const Context& ctx, const std::string& tsrc,
                 const std::string& csrc) {
  SemidirectElement t = parse_sd(ctx, tsrc);
  Cylinder c = parse_cylinder(ctx, csrc);
  FreenessResult r = freeness_witness(ctx, t, c);
  json j;
  j["command"] = "freeness";
  std::ostringstream text;
  int rc = 0;
  switch (r.kind) {
    case FreenessResult::Kind::Witness:
      j["kind"] = "witness";
      j["point"] = print_point(*r.point);
      j["certificate_level"] = r.certificate_level;
      j["outside_domain"] = r.outside_domain;
      text << "kind: witness\n";
      text << "point: " << print_point(*r.point) << "\n";
      text << "certificate level: " << r.certificate_level << "\n";
      text << "outside domain: " << yn(r.outside_domain) << "\n";
      break;
    case FreenessResult::Kind::DomainEmpty:
      j["kind"] = "domain-empty";
      text << "kind: domain empty\n";
      break;
    case FreenessResult::Kind::Inconclusive:
      j["kind"] = "inconclusive";
      text << "kind: inconclusive\n";
      rc = 3;
      break;
  }
  j["note"] = r.note;
  if (!r.note.empty()) text << "note: " << r.note << "\n";
  emit(g, j, text.str());
  return rc;
}

int cmd_orbit(const GlobalOpts& g, const Context& ctx, const std::string& xsrc,
              const std::string& csrc) {
  ProfinitePoint x = parse_point(ctx, xsrc);
  Cylinder c = parse_cylinder(ctx, csrc);
  SemidirectElement t = orbit_mover(ctx, x, c);
  ProfinitePoint y = apply_partial(ctx, t, x);
  json j;
  j["command"] = "orbit";
  j["mover"] = print_sd(t);
  j["image"] = print_point(y);
  std::ostringstream text;
  text << "mover: " << print_sd(t) << "\n";
  text << "image: " << print_point(y) << "\n";
  emit(g, j, text.str());
  return 0;
}

int cmd_ore(const GlobalOpts& g, const Context& ctx, const std::string& s1,
            const std::string& s2) {
  SemidirectElement t1 = parse_sd(ctx, s1);
  SemidirectElement t2 = parse_sd(ctx, s2);
  OreWitness w = ore_witness(ctx, t1, t2);
  json j;
  j["command"] = "ore";
  j["left1"] = print_sd(w.l1);
  j["left2"] = print_sd(w.l2);
  j["common"] = print_sd(w.common);
  j["verified"] = w.verified;
  std::ostringstream text;
  text << "left 1: " << print_sd(w.l1) << "\n";
  text << "left 2: " << print_sd(w.l2) << "\n";
  text << "common: " << print_sd(w.common) << "\n";
  text << "verified: " << yn(w.verified) << "\n";
  emit(g, j, text.str());
  return w.verified ? 0 : 1;
}

// A small context independent family for the expectation correspondence:
// one diagonal term the expectation keeps and two shapes it kills.
std::vector<QTerm> correspondence_family(const Context& ctx) {
  GroupElement z = ctx.zero();
  GroupElement e0 = ctx.unit_vector(0);
  GroupElement e2 = ctx.add(e0, e0);
  std::vector<QTerm> fam;
  fam.push_back(QTerm{GaussRat(Rat(1)), 1, e0, e0, 1, e0, 1});
  fam.push_back(QTerm{GaussRat(Rat(1)), 1, e0, e0, 1, e2, 1});
  fam.push_back(QTerm{GaussRat(Rat(1)), 0, z, e0, 1, z, 1});
  return fam;
}

void relations_lines(const RelationsReport& rep, const CorrespondenceReport& corr,
                     std::size_t corr_terms, json& j, std::ostringstream& text) {
  j["unit"] = rep.unit_ok;
  j["adjoints"] = rep.adjoint_ok;
  j["partial_multiplicativity"] = rep.partial_mult_ok;
  j["unitaries"] = rep.unitary_ok;
  j["isometries"] = rep.isometry_ok;
  j["partition"] = rep.partition_ok;
  j["round_trips"] = rep.roundtrip_ok;
  j["correspondence"] = corr.ok();
  j["correspondence_terms"] = corr.checked;
  j["samples"] = rep.samples;
  text << "unit: " << okfail(rep.unit_ok) << "\n";
  text << "adjoints: " << okfail(rep.adjoint_ok) << "\n";
  text << "partial multiplicativity: " << okfail(rep.partial_mult_ok) << "\n";
  text << "unitaries: " << okfail(rep.unitary_ok) << "\n";
  text << "isometries: " << okfail(rep.isometry_ok) << "\n";
  text << "partition: " << okfail(rep.partition_ok) << "\n";
  text << "round trips: " << okfail(rep.roundtrip_ok) << "\n";
  if (corr.ok())
    text << "correspondence: ok (" << corr.checked << " terms)\n";
  else
    text << "correspondence: FAIL (" << corr.mismatches << " of " << corr.checked
         << " mismatch)\n";
  text << "samples: " << rep.samples << "\n";
}

int cmd_relations(const GlobalOpts& g, const Context& ctx) {
  RelationsReport rep = relations_check(ctx);
  std::vector<QTerm> fam = correspondence_family(ctx);
  CorrespondenceReport corr = expectation_correspondence_check(ctx, fam);
  json j;
  j["command"] = "relations-check";
  std::ostringstream text;
  relations_lines(rep, corr, fam.size(), j, text);
  emit(g, j, text.str());
  return rep.all() && corr.ok() ? 0 : 1;
}

// --- combined report ---------------------------------------------------

std::vector<QTerm> separation_family(const Context& ctx, OrthoOptions& opts) {
  GroupElement z = ctx.zero();
  GroupElement e0 = ctx.unit_vector(0);
  std::vector<QTerm> fam;
  if (!ctx.finite() && ctx.rank() == 1 && ctx.index(1) == 3) {
    fam.push_back(QTerm{GaussRat(Rat(2)), 2, ctx.make({-30}), ctx.make({5}), 4,
                        ctx.make({2187}), 1});
    fam.push_back(
        QTerm{GaussRat(Rat(-4)), 7, ctx.make({0}), ctx.make({10}), 4, ctx.make({-5}), 9});
    fam.push_back(
        QTerm{GaussRat(Rat(1)), 8, ctx.make({0}), ctx.make({20}), 4, ctx.make({0}), 8});
    opts.companion_offset = 1;
    return fam;
  }
  if (ctx.index_one()) {
    fam.push_back(QTerm{GaussRat(Rat(1)), 0, z, z, 1, z, 0});
    return fam;
  }
  fam.push_back(QTerm{GaussRat(Rat(2)), 0, z, z, 1, z, 0});
  fam.push_back(QTerm{GaussRat(Rat(1)), 0, z, e0, 1, z, 0});
  fam.push_back(QTerm{GaussRat(Rat(1)), 0, z, e0, 1, z, 1});
  return fam;
}

int cmd_report_all(const GlobalOpts& g, const Context& ctx) {
  json j;
  j["command"] = "report-all";
  std::ostringstream text;
  bool ok = true;

  json jctx;
  jctx["fingerprint"] = ctx.fingerprint();
  jctx["rank"] = ctx.rank();
  jctx["finite"] = ctx.finite();
  json idx = json::array();
  text << "== context ==\n";
  text << "fingerprint: " << ctx.fingerprint() << "\n";
  text << "rank: " << ctx.rank() << "\n";
  text << "group: " << (ctx.finite() ? "finite" : "lattice") << "\n";
  text << "index:";
  for (int n = 1; n <= 3; ++n) {
    idx.push_back(int_str(ctx.index(n)));
    text << " " << int_str(ctx.index(n));
  }
  text << "\n";
  jctx["index"] = idx;
  j["context"] = jctx;

  text << "== purity ==\n";
  PurityReport prep = ctx.purity_check();
  std::string verdict = prep.verdict == Purity::PureUpToDepth ? "pure"
                        : prep.verdict == Purity::NotPure     ? "not pure"
                                                              : "inconclusive";
  json jp;
  jp["verdict"] = verdict;
  jp["checked_depth"] = prep.checked_depth;
  jp["witness"] = prep.witness ? json(print_group(*prep.witness)) : json(nullptr);
  j["purity"] = jp;
  text << "verdict: " << verdict << "\n";
  text << "checked depth: " << prep.checked_depth << "\n";
  if (prep.witness) text << "witness: " << print_group(*prep.witness) << "\n";

  text << "== relations ==\n";
  RelationsReport rrep = relations_check(ctx);
  std::vector<QTerm> cfam = correspondence_family(ctx);
  CorrespondenceReport corr = expectation_correspondence_check(ctx, cfam);
  json jr;
  relations_lines(rrep, corr, cfam.size(), jr, text);
  j["relations"] = jr;
  ok = ok && rrep.all() && corr.ok();

  text << "== separation ==\n";
  OrthoOptions opts;
  std::vector<QTerm> fam = separation_family(ctx, opts);
  json js;
  int sep_rc = report_separation(g, ctx, fam, opts, js, text);
  j["separation"] = js;
  ok = ok && sep_rc == 0;

  text << "== dynamics ==\n";
  json jd;
  GroupElement z = ctx.zero();
  GroupElement e0 = ctx.unit_vector(0);
  OreWitness ow = ore_witness(ctx, sd_make(ctx, e0, 0, 1), sd_make(ctx, z, 0, 2));
  jd["ore_verified"] = ow.verified;
  text << "ore: " << (ow.verified ? "verified" : "FAIL") << "\n";
  ok = ok && ow.verified;

  FreenessResult fr = freeness_witness(ctx, sd_make(ctx, e0, 0, 0), make_cylinder(ctx, 0, {0}));
  json jf;
  switch (fr.kind) {
    case FreenessResult::Kind::Witness:
      jf["kind"] = "witness";
      jf["point"] = print_point(*fr.point);
      jf["certificate_level"] = fr.certificate_level;
      text << "freeness: witness " << print_point(*fr.point) << " certificate "
           << fr.certificate_level << (fr.outside_domain ? " (outside domain)" : "")
           << "\n";
      break;
    case FreenessResult::Kind::DomainEmpty:
      jf["kind"] = "domain-empty";
      text << "freeness: domain empty\n";
      break;
    case FreenessResult::Kind::Inconclusive:
      jf["kind"] = "inconclusive";
      text << "freeness: inconclusive\n";
      break;
  }
  jd["freeness"] = jf;

  int pdepth = std::min(2, ctx.max_depth());
  ProfinitePoint x = make_point(ctx, z, pdepth);
  std::size_t cls = ctx.index(1) > 1 ? 1 : 0;
  Cylinder c = make_cylinder(ctx, 1, {cls});
  SemidirectElement mover = orbit_mover(ctx, x, c);
  ProfinitePoint y = apply_partial(ctx, mover, x);
  jd["orbit_mover"] = print_sd(mover);
  jd["orbit_image"] = print_point(y);
  text << "orbit: " << print_sd(mover) << " sends " << print_point(x) << " to "
       << print_point(y) << "\n";
  j["dynamics"] = jd;

  j["ok"] = ok;
  text << "== verdict ==\n";
  text << "ok: " << yn(ok) << "\n";
  emit(g, j, text.str());
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  auto t0 = std::chrono::steady_clock::now();
  CLI::App app{"exact calculator for the universal algebra of a lattice endomorphism"};
  app.require_subcommand(1);
  app.allow_extras();

  GlobalOpts g;
  app.add_option("--config", g.config_path, "context description file");
  app.add_option("--depth", g.depth, "override the truncation depth");
  app.add_option("--window", g.window, "points used by the action oracle");
  app.add_option("--seed", g.seed, "seed for sampled checks");
  app.add_flag("--json", g.json_mode, "machine readable output");

  auto sub = [&](const std::string& name, const std::string& desc) {
    CLI::App* s = app.add_subcommand(name, desc);
    s->allow_extras();
    s->fallthrough();
    return s;
  };

  CLI::App* c_normalize = sub("normalize", "reduce an expression to normal form");
  CLI::App* c_mul = sub("mul", "multiply two expressions");
  CLI::App* c_adjoint = sub("adjoint", "adjoint of an expression");
  CLI::App* c_expect = sub("expect", "apply the diagonal expectation");
  CLI::App* c_equal = sub("equal", "compare two expressions");
  CLI::App* c_oracle = sub("oracle-check", "compare reduction with the point action");
  std::size_t count = 50;
  c_oracle->add_option("--count", count, "number of random words");
  CLI::App* c_cosets = sub("cosets", "list coset representatives at a level");
  CLI::App* c_purity = sub("purity", "decide purity of the endomorphism");
  CLI::App* c_ortho = sub("orthogonalize", "separate a projection family");
  std::size_t offset = 0;
  int forced_p = -1;
  c_ortho->add_option("--offset", offset, "companion search offset");
  c_ortho->add_option("--force-p", forced_p, "override the computed exponent");
  CLI::App* c_freeness = sub("freeness", "search a cylinder for a moved point");
  CLI::App* c_orbit = sub("orbit", "move a point into a cylinder");
  CLI::App* c_ore = sub("ore", "common left multiple of two group side elements");
  CLI::App* c_relations = sub("relations-check", "verify the defining relations");
  CLI::App* c_report = sub("report-all", "run every check on the context");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  int rc = 0;
  try {
    Context ctx = build_context(g);
    if (c_normalize->parsed()) {
      auto a = args_of(app, c_normalize, 1, "normalize EXPR");
      rc = cmd_element(g, ctx, "normalize", parse_element_arg(ctx, a[0]));
    } else if (c_mul->parsed()) {
      auto a = args_of(app, c_mul, 2, "mul EXPR EXPR");
      rc = cmd_element(g, ctx, "mul",
                       mul(ctx, parse_element_arg(ctx, a[0]), parse_element_arg(ctx, a[1])));
    } else if (c_adjoint->parsed()) {
      auto a = args_of(app, c_adjoint, 1, "adjoint EXPR");
      rc = cmd_element(g, ctx, "adjoint", adjoint(ctx, parse_element_arg(ctx, a[0])));
    } else if (c_expect->parsed()) {
      auto a = args_of(app, c_expect, 1, "expect EXPR");
      rc = cmd_element(g, ctx, "expect", expectation(ctx, parse_element_arg(ctx, a[0])));
    } else if (c_equal->parsed()) {
      auto a = args_of(app, c_equal, 2, "equal EXPR EXPR");
      rc = cmd_equal(g, ctx, a[0], a[1]);
    } else if (c_oracle->parsed()) {
      std::vector<std::string> a = c_oracle->remaining();
      for (const std::string& extra : app.remaining()) a.push_back(extra);
      if (a.size() > 1) throw UsageError("expected oracle-check [EXPR]");
      rc = cmd_oracle_check(g, ctx, a.empty() ? "" : a[0], count);
    } else if (c_cosets->parsed()) {
      auto a = args_of(app, c_cosets, 1, "cosets LEVEL");
      rc = cmd_cosets(g, ctx, parse_level(a[0]));
    } else if (c_purity->parsed()) {
      rc = cmd_purity(g, ctx);
    } else if (c_ortho->parsed()) {
      auto a = args_of(app, c_ortho, 1, "orthogonalize FAMILY");
      std::optional<int> fp;
      if (c_ortho->count("--force-p")) fp = forced_p;
      rc = cmd_orthogonalize(g, ctx, a[0], offset, fp);
    } else if (c_freeness->parsed()) {
      auto a = args_of(app, c_freeness, 2, "freeness ELEMENT CYLINDER");
      rc = cmd_freeness(g, ctx, a[0], a[1]);
    } else if (c_orbit->parsed()) {
      auto a = args_of(app, c_orbit, 2, "orbit POINT CYLINDER");
      rc = cmd_orbit(g, ctx, a[0], a[1]);
    } else if (c_ore->parsed()) {
      auto a = args_of(app, c_ore, 2, "ore ELEMENT ELEMENT");
      rc = cmd_ore(g, ctx, a[0], a[1]);
    } else if (c_relations->parsed()) {
      rc = cmd_relations(g, ctx);
    } else if (c_report->parsed()) {
      rc = cmd_report_all(g, ctx);
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    rc = 2;
  } catch (const ParseError& e) {
    std::cerr << e.what() << "\n";
    rc = 2;
  } catch (const ConfigError& e) {
    std::cerr << e.what() << "\n";
    rc = 2;
  } catch (const CapExceeded& e) {
    std::cerr << e.what() << "\n";
    rc = 3;
  } catch (const DepthExhausted& e) {
    std::cerr << e.what() << "\n";
    rc = 3;
  } catch (const SaturatedValuation& e) {
    std::cerr << e.what() << "\n";
    rc = 3;
  } catch (const CompanionExhausted& e) {
    std::cerr << e.what() << "\n";
    rc = 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
    rc = 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    rc = 2;
  }

  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - t0)
                .count();
  std::cerr << "time: " << ms << " ms\n";
  return rc;
}
