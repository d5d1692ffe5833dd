#include "endoalg/group.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace endoalg {

namespace {

// Mixed-radix decomposition with the last coordinate running fastest,
// so index order equals lexicographic order on coordinate vectors.
std::size_t radix_index(const Vec& coords, const std::vector<Int>& radices) {
  Int idx = 0;
  for (std::size_t i = 0; i < coords.size(); ++i) idx = idx * radices[i] + coords[i];
  return idx.convert_to<std::size_t>();
}

Vec radix_element(std::size_t k, const std::vector<Int>& radices) {
  Vec coords(radices.size());
  Int rest = k;
  for (std::size_t i = radices.size(); i-- > 0;) {
    coords[i] = rest % radices[i];
    rest /= radices[i];
  }
  return coords;
}

void collect_shell(std::size_t dim, long r, Vec& buf, bool on_boundary,
                   std::vector<GroupElement>& out) {
  if (buf.size() == dim) {
    if (on_boundary) out.push_back(GroupElement{buf});
    return;
  }
  for (long c = r; c >= -r; --c) {
    buf.emplace_back(c);
    collect_shell(dim, r, buf, on_boundary || (c == r || c == -r), out);
    buf.pop_back();
  }
}

}  // namespace

Context::Context(ContextConfig cfg) : cfg_(std::move(cfg)) {
  cfg_.validate();
  mat_ = Matrix(cfg_.rank, cfg_.matrix);
  if (finite()) {
    det_abs_ = 1;
    std::size_t order = finite_order();
    perm_fwd_.assign(order, 0);
    perm_inv_.assign(order, order);
    for (std::size_t k = 0; k < order; ++k) {
      Vec img = mat_.apply(radix_element(k, cfg_.moduli));
      reduce(img);
      std::size_t j = radix_index(img, cfg_.moduli);
      perm_fwd_[k] = j;
      if (perm_inv_[j] != order)
        throw ConfigError("matrix is not injective on the finite group");
      perm_inv_[j] = k;
    }
    finite_transversal_ = {zero()};
  } else {
    Int d = mat_.det();
    if (d == 0) throw ConfigError("matrix must be nonsingular");
    det_abs_ = int_abs(d);
  }
}

std::size_t Context::finite_order() const {
  Int order = 1;
  for (const Int& m : cfg_.moduli) order *= m;
  if (order > cfg_.enum_cap)
    throw CapExceeded("finite group order " + order.str() + " exceeds enum_cap");
  return order.convert_to<std::size_t>();
}

void Context::reduce(Vec& v) const {
  if (!finite()) return;
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = mod_floor(v[i], cfg_.moduli[i]);
}

bool Context::index_one() const { return finite() || det_abs_ == 1; }

Int Context::index(int n) const {
  if (n < 0) throw std::invalid_argument("index: negative level");
  if (finite()) return 1;
  return pow(det_abs_, static_cast<unsigned>(n));
}

std::string Context::fingerprint() const {
  std::ostringstream os;
  os << "rank=" << cfg_.rank << " matrix=[";
  for (std::size_t i = 0; i < cfg_.matrix.size(); ++i) {
    if (i) os << ",";
    os << cfg_.matrix[i];
  }
  os << "] moduli=[";
  for (std::size_t i = 0; i < cfg_.moduli.size(); ++i) {
    if (i) os << ",";
    os << cfg_.moduli[i];
  }
  os << "] max_depth=" << cfg_.max_depth << " enum_cap=" << cfg_.enum_cap;
  return os.str();
}

GroupElement Context::zero() const { return GroupElement{Vec(cfg_.rank, Int(0))}; }

GroupElement Context::make(Vec coords) const {
  if (coords.size() != cfg_.rank) throw std::invalid_argument("make: coordinate count mismatch");
  reduce(coords);
  return GroupElement{std::move(coords)};
}

GroupElement Context::unit_vector(std::size_t i) const {
  Vec v(cfg_.rank, Int(0));
  v[i] = 1;
  reduce(v);
  return GroupElement{std::move(v)};
}

GroupElement Context::add(const GroupElement& a, const GroupElement& b) const {
  Vec v(cfg_.rank);
  for (std::size_t i = 0; i < cfg_.rank; ++i) v[i] = a.coords[i] + b.coords[i];
  reduce(v);
  return GroupElement{std::move(v)};
}

GroupElement Context::neg(const GroupElement& a) const {
  Vec v(cfg_.rank);
  for (std::size_t i = 0; i < cfg_.rank; ++i) v[i] = -a.coords[i];
  reduce(v);
  return GroupElement{std::move(v)};
}

GroupElement Context::sub(const GroupElement& a, const GroupElement& b) const {
  return add(a, neg(b));
}

const Context::Level& Context::level(int n) const {
  if (n < 0) throw std::invalid_argument("level: negative");
  std::lock_guard<std::mutex> lock(mu_);
  while (levels_.size() <= static_cast<std::size_t>(n)) {
    auto lv = std::make_unique<Level>();
    std::size_t m = levels_.size();
    lv->power = mat_.pow(static_cast<unsigned>(m));
    lv->smith = smith_form(lv->power);
    lv->index = 1;
    for (const Int& d : lv->smith.diag) lv->index *= d;
    levels_.push_back(std::move(lv));
  }
  return *levels_[static_cast<std::size_t>(n)];
}

const Context::Level& Context::level_with_reps(int n) const {
  const Level& lv = level(n);
  std::lock_guard<std::mutex> lock(mu_);
  Level& wl = const_cast<Level&>(lv);
  if (!wl.has_reps) {
    if (wl.index > cfg_.enum_cap)
      throw CapExceeded("transversal at level " + std::to_string(n) + " has " +
                        wl.index.str() + " cosets");
    std::size_t count = wl.index.convert_to<std::size_t>();
    wl.reps.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
      Vec w = radix_element(k, wl.smith.diag);
      wl.reps.push_back(GroupElement{wl.smith.uinv.apply(w)});
    }
    std::sort(wl.reps.begin(), wl.reps.end());
    for (std::size_t k = 0; k < count; ++k) wl.rep_pos[wl.reps[k].coords] = k;
    wl.has_reps = true;
  }
  return wl;
}

GroupElement Context::apply_endo(const GroupElement& x, int n) const {
  if (n < 0) throw std::invalid_argument("apply_endo: negative power");
  if (n == 0) return x;
  if (finite()) {
    Vec v = x.coords;
    for (int k = 0; k < n; ++k) {
      v = mat_.apply(v);
      reduce(v);
    }
    return GroupElement{std::move(v)};
  }
  return GroupElement{level(n).power.apply(x.coords)};
}

bool Context::in_image(const GroupElement& x, int n) const {
  if (n < 0) throw std::invalid_argument("in_image: negative level");
  if (n == 0 || finite()) return true;
  const Level& lv = level(n);
  Vec z = lv.smith.u.apply(x.coords);
  for (std::size_t i = 0; i < z.size(); ++i)
    if (z[i] % lv.smith.diag[i] != 0) return false;
  return true;
}

std::optional<GroupElement> Context::preimage(const GroupElement& x, int n) const {
  if (n < 0) throw std::invalid_argument("preimage: negative level");
  if (n == 0) return x;
  if (finite()) {
    std::size_t idx = radix_index(x.coords, cfg_.moduli);
    for (int k = 0; k < n; ++k) idx = perm_inv_[idx];
    return GroupElement{radix_element(idx, cfg_.moduli)};
  }
  const Level& lv = level(n);
  Vec z = lv.smith.u.apply(x.coords);
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (z[i] % lv.smith.diag[i] != 0) return std::nullopt;
    z[i] /= lv.smith.diag[i];
  }
  return GroupElement{lv.smith.v.apply(z)};
}

GroupElement Context::canonical_rep(const GroupElement& x, int n) const {
  if (n < 0) throw std::invalid_argument("canonical_rep: negative level");
  if (n == 0 || finite()) return zero();
  const Level& lv = level(n);
  Vec z = lv.smith.u.apply(x.coords);
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = mod_floor(z[i], lv.smith.diag[i]);
  return GroupElement{lv.smith.uinv.apply(z)};
}

const std::vector<GroupElement>& Context::transversal(int n) const {
  // finite contexts have index one at every level, so the transversal is {0}
  if (finite()) return finite_transversal_;
  return level_with_reps(n).reps;
}

std::size_t Context::coset_index(const GroupElement& x, int n) const {
  if (finite() || n == 0) return 0;
  GroupElement rep = canonical_rep(x, n);
  const Level& lv = level_with_reps(n);
  auto it = lv.rep_pos.find(rep.coords);
  if (it == lv.rep_pos.end()) throw std::logic_error("coset_index: representative not found");
  return it->second;
}

ValuationResult Context::valuation(const GroupElement& x) const {
  if (is_zero(x)) throw ZeroElement("valuation of the identity is undefined");
  for (int v = 1; v <= cfg_.max_depth; ++v)
    if (!in_image(x, v)) return ValuationResult{v - 1, false};
  return ValuationResult{cfg_.max_depth, true};
}

PurityReport Context::purity_check() const {
  PurityReport rep;
  rep.checked_depth = cfg_.max_depth;
  std::string declared;
  if (cfg_.has_declared_pure)
    declared = std::string("; declared_pure=") + (cfg_.declared_pure ? "true" : "false");

  if (finite()) {
    Int order = 1;
    for (const Int& m : cfg_.moduli) order *= m;
    if (order == 1) {
      rep.verdict = Purity::PureUpToDepth;
      rep.note = "trivial group" + declared;
      return rep;
    }
    rep.verdict = Purity::NotPure;
    rep.witness = GroupElement{radix_element(1, cfg_.moduli)};
    rep.note = "endomorphism is bijective on a finite group" + declared;
    return rep;
  }
  if (det_abs_ == 1) {
    rep.verdict = Purity::NotPure;
    rep.witness = unit_vector(0);
    rep.note = "matrix is unimodular, so the endomorphism is an automorphism" + declared;
    return rep;
  }

  std::set<GroupElement> samples;
  try {
    for (const GroupElement& t : transversal(1))
      if (!is_zero(t)) samples.insert(t);
  } catch (const CapExceeded&) {
  }
  for (std::size_t i = 0; i < cfg_.rank; ++i) {
    GroupElement e = unit_vector(i);
    samples.insert(e);
    samples.insert(neg(e));
    for (std::size_t j = i + 1; j < cfg_.rank; ++j) {
      samples.insert(add(e, unit_vector(j)));
      samples.insert(sub(e, unit_vector(j)));
    }
  }

  bool saturated_any = false;
  for (const GroupElement& x : samples) {
    std::map<Vec, int> seen;
    GroupElement y = x;
    for (int step = 0; step <= cfg_.max_depth; ++step) {
      auto it = seen.find(y.coords);
      if (it != seen.end()) {
        rep.verdict = Purity::NotPure;
        rep.witness = y;
        rep.note = "periodic orbit under the endomorphism" + declared;
        return rep;
      }
      seen[y.coords] = step;
      y = apply_endo(y, 1);
    }
    if (valuation(x).saturated) saturated_any = true;
  }
  if (saturated_any) {
    rep.verdict = Purity::Inconclusive;
    rep.note = "a sample stayed in every image up to max_depth" + declared;
  } else {
    rep.verdict = Purity::PureUpToDepth;
    rep.note = "all sample valuations are finite" + declared;
  }
  return rep;
}

GroupElement Context::ball_element(std::size_t k) const {
  if (finite()) {
    std::size_t order = 1;
    for (const Int& m : cfg_.moduli) order = order * m.convert_to<std::size_t>();
    if (k >= order) throw CapExceeded("ball enumeration exhausted the finite group");
    return GroupElement{radix_element(k, cfg_.moduli)};
  }
  std::lock_guard<std::mutex> lock(mu_);
  if (k > 10000000) throw CapExceeded("ball enumeration index too large");
  while (ball_.size() <= k) {
    long r = next_shell_++;
    if (r == 0) {
      ball_.push_back(GroupElement{Vec(cfg_.rank, Int(0))});
      continue;
    }
    Vec buf;
    buf.reserve(cfg_.rank);
    collect_shell(cfg_.rank, r, buf, false, ball_);
  }
  return ball_[k];
}

}  // namespace endoalg
