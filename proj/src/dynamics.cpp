#include "endoalg/dynamics.hpp"

#include <algorithm>
#include <stdexcept>

#include "endoalg/errors.hpp"

namespace endoalg {

LimitElement make_limit(const Context& ctx, const GroupElement& g, int depth) {
  if (depth < 0) throw std::invalid_argument("limit depth must be nonnegative");
  LimitElement e{g, depth};
  while (e.depth > 0) {
    auto pre = ctx.preimage(e.g, 1);
    if (!pre) break;
    e.g = *pre;
    --e.depth;
  }
  return e;
}

LimitElement limit_zero(const Context& ctx) { return LimitElement{ctx.zero(), 0}; }

LimitElement limit_add(const Context& ctx, const LimitElement& a, const LimitElement& b) {
  const int d = std::max(a.depth, b.depth);
  GroupElement ga = ctx.apply_endo(a.g, d - a.depth);
  GroupElement gb = ctx.apply_endo(b.g, d - b.depth);
  return make_limit(ctx, ctx.add(ga, gb), d);
}

LimitElement limit_neg(const Context& ctx, const LimitElement& a) {
  return make_limit(ctx, ctx.neg(a.g), a.depth);
}

LimitElement limit_phi(const Context& ctx, const LimitElement& a, int n) {
  if (n >= 0) return make_limit(ctx, ctx.apply_endo(a.g, n), a.depth);
  return make_limit(ctx, a.g, a.depth - n);
}

SemidirectElement sd_identity(const Context& ctx) {
  return SemidirectElement{limit_zero(ctx), 0};
}

SemidirectElement sd_make(const Context& ctx, const GroupElement& g, int depth, int n) {
  return SemidirectElement{make_limit(ctx, g, depth), n};
}

SemidirectElement sd_mul(const Context& ctx, const SemidirectElement& s,
                         const SemidirectElement& t) {
  return SemidirectElement{limit_add(ctx, s.a, limit_phi(ctx, t.a, s.n)), s.n + t.n};
}

SemidirectElement sd_inv(const Context& ctx, const SemidirectElement& s) {
  return SemidirectElement{limit_phi(ctx, limit_neg(ctx, s.a), -s.n), -s.n};
}

bool sd_is_identity(const Context& ctx, const SemidirectElement& s) {
  return s.n == 0 && s.a.depth == 0 && ctx.is_zero(s.a.g);
}

OreWitness ore_witness(const Context& ctx, const SemidirectElement& s1,
                       const SemidirectElement& s2) {
  if (s1.a.depth != 0 || s2.a.depth != 0 || s1.n < 0 || s2.n < 0)
    throw std::invalid_argument("ore_witness expects monoid elements (depth 0, shift >= 0)");
  OreWitness w;
  w.l1 = SemidirectElement{make_limit(ctx, ctx.apply_endo(ctx.neg(s1.a.g), s2.n), 0), s2.n};
  w.l2 = SemidirectElement{make_limit(ctx, ctx.apply_endo(ctx.neg(s2.a.g), s1.n), 0), s1.n};
  w.common = sd_mul(ctx, w.l1, s1);
  w.verified = sd_mul(ctx, w.l2, s2) == w.common &&
               w.common == SemidirectElement{limit_zero(ctx), s1.n + s2.n};
  return w;
}

ProfinitePoint make_point(const Context& ctx, const GroupElement& g, int depth) {
  if (depth < 0 || depth > ctx.max_depth())
    throw std::invalid_argument("point depth out of range");
  return ProfinitePoint{depth, ctx.canonical_rep(g, depth)};
}

GroupElement point_entry(const Context& ctx, const ProfinitePoint& x, int m) {
  if (m < 0) throw std::invalid_argument("entry height must be nonnegative");
  if (m > x.depth) throw DepthExhausted("entry height exceeds point depth");
  return ctx.canonical_rep(x.rep, m);
}

Cylinder make_cylinder(const Context& ctx, int m, std::vector<std::size_t> classes) {
  if (m < 0 || m > ctx.max_depth()) throw std::invalid_argument("cylinder level out of range");
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  const std::size_t count = ctx.transversal(m).size();
  for (std::size_t c : classes)
    if (c >= count) throw std::invalid_argument("cylinder class out of range");
  return Cylinder{m, std::move(classes)};
}

bool cyl_contains(const Context& ctx, const Cylinder& c, const ProfinitePoint& x) {
  if (x.depth < c.m) throw DepthExhausted("point too shallow for cylinder level");
  const std::size_t idx = ctx.coset_index(x.rep, c.m);
  return std::binary_search(c.classes.begin(), c.classes.end(), idx);
}

DomainStatus domain_status(const Context& ctx, const SemidirectElement& t) {
  DomainStatus st;
  if (t.n >= 0) {
    if (t.a.depth > 0) {
      st.kind = DomainKind::Empty;
    } else if (t.n == 0 || ctx.index_one()) {
      st.kind = DomainKind::Full;
    } else {
      st.kind = DomainKind::Proper;
      st.cylinder = Cylinder{t.n, {ctx.coset_index(t.a.g, t.n)}};
    }
  } else {
    st.kind = (t.a.depth <= -t.n) ? DomainKind::Full : DomainKind::Empty;
  }
  return st;
}

bool xi_contains(const Context& ctx, const ProfinitePoint& x, const SemidirectElement& t) {
  if (t.n < 0) return t.a.depth <= -t.n;
  if (t.a.depth > 0) return false;
  if (t.n > x.depth) throw DepthExhausted("membership needs entries beyond point depth");
  return ctx.in_image(ctx.sub(t.a.g, point_entry(ctx, x, t.n)), t.n);
}

ProfinitePoint apply_partial(const Context& ctx, const SemidirectElement& t,
                             const ProfinitePoint& x) {
  const DomainStatus dom = domain_status(ctx, sd_inv(ctx, t));
  if (dom.kind == DomainKind::Empty) throw OutOfDomain("element acts nowhere");
  if (dom.kind == DomainKind::Proper && !cyl_contains(ctx, *dom.cylinder, x))
    throw OutOfDomain("point outside the domain cylinder");
  if (t.n >= 0) {
    const int depth = std::min(x.depth + t.n, ctx.max_depth());
    const int j = depth - t.n;
    GroupElement xj = j >= 0 ? point_entry(ctx, x, j) : ctx.zero();
    GroupElement rep = ctx.add(t.a.g, ctx.apply_endo(xj, t.n));
    return ProfinitePoint{depth, ctx.canonical_rep(rep, depth)};
  }
  const int k = -t.n;
  if (x.depth < k) throw DepthExhausted("point too shallow for downward shift");
  GroupElement shifted = ctx.add(x.rep, ctx.apply_endo(t.a.g, k - t.a.depth));
  auto pre = ctx.preimage(shifted, k);
  if (!pre) throw OutOfDomain("point outside the domain cylinder");
  const int depth = x.depth - k;
  return ProfinitePoint{depth, ctx.canonical_rep(*pre, depth)};
}

SpectrumReport spectrum_check(const Context& ctx, const ProfinitePoint& x,
                              const SpectrumOptions& opts) {
  SpectrumReport rep;
  std::vector<GroupElement> probes;
  for (std::size_t bi = 0; bi < opts.sample; ++bi) {
    try {
      probes.push_back(ctx.ball_element(bi));
    } catch (const CapExceeded&) {
      break;
    }
  }
  const int top = std::min(opts.height_bound, x.depth);
  rep.heights_checked = top + 1;
  for (int n = 0; n <= top; ++n) {
    const GroupElement xn = point_entry(ctx, x, n);
    for (const GroupElement& h : probes) {
      SemidirectElement t{
          make_limit(ctx, ctx.add(xn, ctx.apply_endo(h, n)), 0), n};
      ++rep.members_checked;
      if (!xi_contains(ctx, x, t)) rep.unique_class = false;
      for (const GroupElement& hr : probes) {
        SemidirectElement r{make_limit(ctx, hr, 0), 0};
        if (!xi_contains(ctx, x, sd_mul(ctx, t, r))) rep.right_closure = false;
      }
      SemidirectElement down = sd_mul(ctx, t, SemidirectElement{limit_zero(ctx), -1});
      if (down.n >= 0 && down.n <= x.depth) {
        if (!xi_contains(ctx, x, down)) rep.shift_closure = false;
      } else if (down.n < 0 && !xi_contains(ctx, x, down)) {
        rep.shift_closure = false;
      }
    }
    if (ctx.index(n) <= ctx.enum_cap()) {
      std::size_t hits = 0;
      for (const GroupElement& r : ctx.transversal(n))
        if (xi_contains(ctx, x, SemidirectElement{make_limit(ctx, r, 0), n})) ++hits;
      if (hits != 1) rep.unique_class = false;
    }
  }
  return rep;
}

namespace {

// Probe points built from integer candidates refining the cylinder one level.
std::vector<GroupElement> cylinder_probes(const Context& ctx, const Cylinder& c) {
  std::vector<GroupElement> out;
  const auto& base = ctx.transversal(c.m);
  const auto& fine = ctx.transversal(1);
  for (std::size_t ci : c.classes)
    for (const GroupElement& r : fine)
      out.push_back(ctx.add(base[ci], ctx.apply_endo(r, c.m)));
  return out;
}

}  // namespace

FreenessResult freeness_witness(const Context& ctx, const SemidirectElement& t,
                                const Cylinder& c) {
  FreenessResult res;
  if (sd_is_identity(ctx, t)) {
    res.kind = FreenessResult::Kind::Inconclusive;
    res.note = "identity element fixes every point";
    return res;
  }
  if (domain_status(ctx, sd_inv(ctx, t)).kind == DomainKind::Empty) {
    res.kind = FreenessResult::Kind::DomainEmpty;
    res.note = "element acts nowhere";
    return res;
  }
  if (ctx.index_one()) {
    res.kind = FreenessResult::Kind::Inconclusive;
    res.note = "index one: levels carry a single class";
    return res;
  }
  const int k = t.n < 0 ? -t.n : 0;
  bool saw_saturated = false;
  bool saw_deep = false;
  for (const GroupElement& u : cylinder_probes(ctx, c)) {
    GroupElement w;
    if (t.n >= 0) {
      w = ctx.sub(ctx.add(t.a.g, ctx.apply_endo(u, t.n)), u);
    } else {
      GroupElement shifted = ctx.add(u, ctx.apply_endo(t.a.g, k - t.a.depth));
      auto pre = ctx.preimage(shifted, k);
      if (!pre) {
        // u's class leaves the domain entirely, so no point over it is fixed.
        const int depth = std::max(c.m, k);
        if (depth > ctx.max_depth()) {
          saw_deep = true;
          continue;
        }
        res.kind = FreenessResult::Kind::Witness;
        res.point = make_point(ctx, u, depth);
        res.certificate_level = k;
        res.outside_domain = true;
        res.note = "witness lies outside the domain of the element";
        return res;
      }
      w = ctx.sub(*pre, u);
    }
    if (ctx.is_zero(w)) continue;
    const ValuationResult val = ctx.valuation(w);
    if (val.saturated) {
      saw_saturated = true;
      continue;
    }
    const int cert = val.value + 1;
    const int depth = std::max(c.m, cert + k);
    if (depth > ctx.max_depth()) {
      saw_deep = true;
      continue;
    }
    ProfinitePoint x = make_point(ctx, u, depth);
    ProfinitePoint y = apply_partial(ctx, t, x);
    if (point_entry(ctx, y, cert) == point_entry(ctx, x, cert)) continue;
    res.kind = FreenessResult::Kind::Witness;
    res.point = x;
    res.certificate_level = cert;
    res.note = "entries differ at the certificate level";
    return res;
  }
  res.kind = FreenessResult::Kind::Inconclusive;
  res.note = saw_saturated ? "valuation saturated before separating"
             : saw_deep    ? "certificate level exceeds max depth"
                           : "all probes fixed up to the probe depth";
  return res;
}

SemidirectElement orbit_mover(const Context& ctx, const ProfinitePoint& x, const Cylinder& c) {
  if (c.classes.empty()) throw std::invalid_argument("empty cylinder has no points");
  if (x.depth < c.m) throw DepthExhausted("point too shallow for cylinder level");
  const GroupElement target = ctx.transversal(c.m)[c.classes.front()];
  const GroupElement current = point_entry(ctx, x, c.m);
  return SemidirectElement{make_limit(ctx, ctx.sub(target, current), 0), 0};
}

AlgebraElement pi_rep(const Context& ctx, const SemidirectElement& t) {
  const int j = std::max(t.a.depth, std::max(0, -t.n));
  AlgebraElement word = el_u(ctx, ctx.apply_endo(t.a.g, j - t.a.depth));
  word = mul(ctx, el_sstar(ctx, j), word);
  return mul(ctx, word, el_s(ctx, t.n + j));
}

namespace {

GroupElement axis(const Context& ctx, std::size_t d, long v) {
  Vec coords(ctx.rank(), Int(0));
  coords[d] = v;
  return ctx.make(std::move(coords));
}

std::vector<SemidirectElement> relation_samples(const Context& ctx,
                                                const RelationsOptions& opts) {
  std::vector<SemidirectElement> out;
  std::vector<GroupElement> gs;
  gs.push_back(ctx.zero());
  for (std::size_t d = 0; d < ctx.rank(); ++d) {
    for (long v = 1; v <= opts.gbound; ++v) {
      gs.push_back(axis(ctx, d, v));
      gs.push_back(axis(ctx, d, -v));
    }
  }
  for (int n = -opts.nbound; n <= opts.nbound; ++n)
    for (const GroupElement& g : gs)
      for (int depth : {0, 1}) out.push_back(sd_make(ctx, g, depth, n));
  return out;
}

}  // namespace

RelationsReport relations_check(const Context& ctx, const RelationsOptions& opts) {
  RelationsReport rep;
  const AlgebraElement one = el_unit(ctx);
  rep.unit_ok = equals(ctx, pi_rep(ctx, sd_identity(ctx)), one);

  const auto samples = relation_samples(ctx, opts);
  rep.samples = samples.size();
  rep.adjoint_ok = true;
  for (const auto& t : samples)
    if (!equals(ctx, pi_rep(ctx, sd_inv(ctx, t)), adjoint(ctx, pi_rep(ctx, t))))
      rep.adjoint_ok = false;

  rep.partial_mult_ok = true;
  for (std::size_t i = 0; i < samples.size(); i += 5) {
    for (std::size_t j = 0; j < samples.size(); j += 7) {
      const auto& s = samples[i];
      const auto& t = samples[j];
      AlgebraElement range_t = mul(ctx, pi_rep(ctx, t), pi_rep(ctx, sd_inv(ctx, t)));
      AlgebraElement lhs = mul(ctx, pi_rep(ctx, s), range_t);
      AlgebraElement rhs = mul(ctx, pi_rep(ctx, sd_mul(ctx, s, t)),
                               mul(ctx, pi_rep(ctx, sd_inv(ctx, t)), range_t));
      if (!equals(ctx, lhs, rhs)) rep.partial_mult_ok = false;
    }
  }

  rep.unitary_ok = true;
  for (const auto& t : samples) {
    if (t.n != 0 || t.a.depth != 0) continue;
    AlgebraElement ug = pi_rep(ctx, t);
    if (!equals(ctx, mul(ctx, ug, adjoint(ctx, ug)), one) ||
        !equals(ctx, mul(ctx, adjoint(ctx, ug), ug), one))
      rep.unitary_ok = false;
  }

  rep.isometry_ok = true;
  for (int n = 1; n <= opts.nbound; ++n) {
    AlgebraElement sn = pi_rep(ctx, sd_make(ctx, ctx.zero(), 0, n));
    if (!equals(ctx, mul(ctx, adjoint(ctx, sn), sn), one)) rep.isometry_ok = false;
  }

  rep.partition_ok = true;
  for (int n = 1; n <= opts.sum_levels; ++n) {
    if (ctx.index(n) > ctx.enum_cap()) break;
    AlgebraElement sum = el_zero();
    for (const GroupElement& g : ctx.transversal(n)) {
      AlgebraElement piece = pi_rep(ctx, sd_make(ctx, g, 0, n));
      sum = add(sum, mul(ctx, piece, adjoint(ctx, piece)));
    }
    if (!equals(ctx, sum, one)) rep.partition_ok = false;
  }

  rep.roundtrip_ok = true;
  for (const auto& t : samples) {
    const int j = std::max(t.a.depth, std::max(0, -t.n));
    SemidirectElement rec = sd_mul(
        ctx,
        sd_mul(ctx, sd_make(ctx, ctx.zero(), 0, -j),
               sd_make(ctx, ctx.apply_endo(t.a.g, j - t.a.depth), 0, 0)),
        sd_make(ctx, ctx.zero(), 0, t.n + j));
    if (rec != t) rep.roundtrip_ok = false;
  }
  if (!equals(ctx, pi_rep(ctx, sd_make(ctx, ctx.unit_vector(0), 0, 0)),
              el_u(ctx, ctx.unit_vector(0))) ||
      !equals(ctx, pi_rep(ctx, sd_make(ctx, ctx.zero(), 0, 1)), el_s(ctx, 1)))
    rep.roundtrip_ok = false;
  return rep;
}

CorrespondenceReport expectation_correspondence_check(const Context& ctx,
                                                      const std::vector<QTerm>& terms) {
  CorrespondenceReport rep;
  for (const QTerm& t : terms) {
    ++rep.checked;
    SemidirectElement shadow{make_limit(ctx, ctx.sub(t.hp, t.h), t.n), t.m - t.n};
    const bool formal_keep = sd_is_identity(ctx, shadow);
    if (formal_keep == is_critical(t)) {
      ++rep.mismatches;
      continue;
    }
    AlgebraElement reduced = from_qterm(ctx, t);
    AlgebraElement kept = expectation(ctx, reduced);
    const bool algebra_keep_ok =
        formal_keep ? equals(ctx, kept, reduced) : is_zero(ctx, kept);
    if (!algebra_keep_ok) ++rep.mismatches;
  }
  return rep;
}

}  // namespace endoalg
