#include "endoalg/l2.hpp"

#include "endoalg/errors.hpp"

namespace endoalg {

std::optional<GroupElement> act_letter(const Context& ctx, const Letter& l,
                                       const GroupElement& x) {
  switch (l.kind) {
    case Letter::Kind::U:
      return ctx.add(l.g, x);
    case Letter::Kind::S:
      return ctx.apply_endo(x, 1);
    case Letter::Kind::Sstar:
      return ctx.preimage(x, 1);
  }
  return std::nullopt;
}

std::optional<GroupElement> act_word(const Context& ctx, const Word& w, const GroupElement& x) {
  GroupElement cur = x;
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    std::optional<GroupElement> next = act_letter(ctx, *it, cur);
    if (!next) return std::nullopt;
    cur = std::move(*next);
  }
  return cur;
}

std::optional<GroupElement> act_monomial(const Context& ctx, const Monomial& m,
                                         const GroupElement& x) {
  GroupElement y = ctx.add(m.b, x);
  std::optional<GroupElement> pre = ctx.preimage(y, m.q);
  if (!pre) return std::nullopt;
  return ctx.add(m.a, ctx.apply_endo(*pre, m.p));
}

BasisVector act_element(const Context& ctx, const AlgebraElement& x, const GroupElement& pt) {
  BasisVector out;
  for (const auto& [m, c] : x.terms()) {
    std::optional<GroupElement> y = act_monomial(ctx, m, pt);
    if (!y) continue;
    auto [it, fresh] = out.try_emplace(y->coords, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) out.erase(it);
    }
  }
  return out;
}

std::vector<GroupElement> window_points(const Context& ctx, std::size_t n) {
  std::vector<GroupElement> pts;
  pts.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    try {
      pts.push_back(ctx.ball_element(k));
    } catch (const CapExceeded&) {
      break;  // finite group exhausted
    }
  }
  return pts;
}

bool elements_agree_on_window(const Context& ctx, const AlgebraElement& x,
                              const AlgebraElement& y,
                              const std::vector<GroupElement>& window) {
  for (const GroupElement& pt : window)
    if (act_element(ctx, x, pt) != act_element(ctx, y, pt)) return false;
  return true;
}

bool word_matches_element(const Context& ctx, const Word& w, const AlgebraElement& x,
                          const std::vector<GroupElement>& window) {
  for (const GroupElement& pt : window) {
    BasisVector got = act_element(ctx, x, pt);
    std::optional<GroupElement> ref = act_word(ctx, w, pt);
    BasisVector want;
    if (ref) want[ref->coords] = GaussRat(Rat(1));
    if (got != want) return false;
  }
  return true;
}

}  // namespace endoalg
