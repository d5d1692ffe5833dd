#include "endoalg/word.hpp"

#include <algorithm>
#include <stdexcept>

#include "endoalg/errors.hpp"

namespace endoalg {

Monomial canonical_monomial(const Context& ctx, const GroupElement& a, int p, int q,
                            const GroupElement& b) {
  if (p < 0 || q < 0) throw std::invalid_argument("canonical_monomial: negative exponent");
  int pp = p, qq = q;
  if (ctx.index_one() && pp > 0 && qq > 0) {
    int k = std::min(pp, qq);
    pp -= k;
    qq -= k;
  }
  GroupElement ah = ctx.canonical_rep(a, pp);
  GroupElement c = ctx.preimage(ctx.sub(a, ah), pp).value();
  GroupElement bp = ctx.add(ctx.apply_endo(c, qq), b);
  return Monomial{std::move(ah), pp, qq, std::move(bp)};
}

Monomial unit_monomial(const Context& ctx) { return Monomial{ctx.zero(), 0, 0, ctx.zero()}; }

std::optional<Monomial> mono_mul(const Context& ctx, const Monomial& x, const Monomial& y) {
  GroupElement z = ctx.add(x.b, y.a);
  int k = std::min(x.q, y.p);
  if (!ctx.in_image(z, k)) return std::nullopt;
  if (x.q <= y.p) {
    GroupElement e = ctx.preimage(z, x.q).value();
    return canonical_monomial(ctx, ctx.add(x.a, ctx.apply_endo(e, x.p)), x.p + (y.p - x.q),
                              y.q, y.b);
  }
  GroupElement e = ctx.preimage(z, y.p).value();
  return canonical_monomial(ctx, x.a, x.p, (x.q - y.p) + y.q,
                            ctx.add(ctx.apply_endo(e, y.q), y.b));
}

Monomial mono_adjoint(const Context& ctx, const Monomial& x) {
  return canonical_monomial(ctx, ctx.neg(x.b), x.q, x.p, ctx.neg(x.a));
}

AlgebraElement el_zero() { return AlgebraElement{}; }

AlgebraElement el_unit(const Context& ctx) { return el_mono(ctx, unit_monomial(ctx)); }

AlgebraElement el_mono(const Context& ctx, const Monomial& m, const GaussRat& c) {
  AlgebraElement x;
  x.add_term(canonical_monomial(ctx, m.a, m.p, m.q, m.b), c);
  return x;
}

AlgebraElement el_u(const Context& ctx, const GroupElement& g) {
  return el_mono(ctx, Monomial{ctx.zero(), 0, 0, g});
}

AlgebraElement el_s(const Context& ctx, int k) {
  return el_mono(ctx, Monomial{ctx.zero(), k, 0, ctx.zero()});
}

AlgebraElement el_sstar(const Context& ctx, int k) {
  return el_mono(ctx, Monomial{ctx.zero(), 0, k, ctx.zero()});
}

AlgebraElement add(const AlgebraElement& x, const AlgebraElement& y) {
  AlgebraElement r = x;
  for (const auto& [m, c] : y.terms()) r.add_term(m, c);
  return r;
}

AlgebraElement sub(const AlgebraElement& x, const AlgebraElement& y) {
  AlgebraElement r = x;
  for (const auto& [m, c] : y.terms()) r.add_term(m, -c);
  return r;
}

AlgebraElement scale(const AlgebraElement& x, const GaussRat& c) {
  AlgebraElement r;
  if (c.is_zero()) return r;
  for (const auto& [m, k] : x.terms()) r.add_term(m, k * c);
  return r;
}

AlgebraElement mul(const Context& ctx, const AlgebraElement& x, const AlgebraElement& y) {
  AlgebraElement r;
  for (const auto& [mx, cx] : x.terms())
    for (const auto& [my, cy] : y.terms()) {
      std::optional<Monomial> m = mono_mul(ctx, mx, my);
      if (m) r.add_term(*m, cx * cy);
    }
  return r;
}

AlgebraElement adjoint(const Context& ctx, const AlgebraElement& x) {
  AlgebraElement r;
  for (const auto& [m, c] : x.terms()) r.add_term(mono_adjoint(ctx, m), c.conj());
  return r;
}

AlgebraElement from_word(const Context& ctx, const Word& w) {
  AlgebraElement x = el_unit(ctx);
  for (const Letter& l : w) {
    switch (l.kind) {
      case Letter::Kind::U:
        x = mul(ctx, x, el_u(ctx, l.g));
        break;
      case Letter::Kind::S:
        x = mul(ctx, x, el_s(ctx));
        break;
      case Letter::Kind::Sstar:
        x = mul(ctx, x, el_sstar(ctx));
        break;
    }
  }
  return x;
}

AlgebraElement raise_level(const Context& ctx, const Monomial& m) {
  AlgebraElement r;
  for (const GroupElement& g : ctx.transversal(1)) {
    GroupElement na = ctx.add(m.a, ctx.apply_endo(g, m.p));
    GroupElement nb = ctx.add(ctx.apply_endo(ctx.neg(g), m.q), m.b);
    r.add_term(canonical_monomial(ctx, na, m.p + 1, m.q + 1, nb), GaussRat(Rat(1)));
  }
  return r;
}

AlgebraElement raise_to(const Context& ctx, const Monomial& m, int target_q) {
  if (target_q < m.q) throw std::invalid_argument("raise_to: cannot lower the level");
  if (ctx.index(target_q - m.q) > ctx.enum_cap())
    throw CapExceeded("raising to level " + std::to_string(target_q) + " would produce " +
                      ctx.index(target_q - m.q).str() + " terms");
  AlgebraElement cur = el_mono(ctx, m);
  for (int step = m.q; step < target_q; ++step) {
    AlgebraElement next;
    for (const auto& [t, c] : cur.terms()) {
      AlgebraElement lifted = raise_level(ctx, t);
      for (const auto& [lt, lc] : lifted.terms()) next.add_term(lt, lc * c);
    }
    cur = std::move(next);
  }
  return cur;
}

AlgebraElement normal_form(const Context& ctx, const AlgebraElement& x) {
  std::map<int, int> level;  // degree -> highest level seen
  for (const auto& [m, c] : x.terms()) {
    auto [it, fresh] = level.try_emplace(m.degree(), m.q);
    if (!fresh) it->second = std::max(it->second, m.q);
  }
  AlgebraElement r;
  for (const auto& [m, c] : x.terms()) {
    AlgebraElement lifted = raise_to(ctx, m, level.at(m.degree()));
    for (const auto& [lt, lc] : lifted.terms()) r.add_term(lt, lc * c);
  }
  return r;
}

bool is_zero(const Context& ctx, const AlgebraElement& x) {
  return normal_form(ctx, x).empty();
}

bool equals(const Context& ctx, const AlgebraElement& x, const AlgebraElement& y) {
  return is_zero(ctx, sub(x, y));
}

AlgebraElement expectation(const Context& ctx, const AlgebraElement& x) {
  AlgebraElement r;
  for (const auto& [m, c] : x.terms())
    if (m.p == m.q && ctx.is_zero(ctx.add(m.a, m.b))) r.add_term(m, c);
  return r;
}

Rat diagonal_norm_sq(const Context& ctx, const AlgebraElement& x) {
  int top = 0;
  for (const auto& [m, c] : x.terms()) {
    if (m.p != m.q || ctx.neg(m.a) != m.b)
      throw NotDiagonal("term with degree " + std::to_string(m.degree()) +
                        " or off-diagonal shift");
    top = std::max(top, m.q);
  }
  AlgebraElement flat;
  for (const auto& [m, c] : x.terms()) {
    AlgebraElement lifted = raise_to(ctx, m, top);
    for (const auto& [lt, lc] : lifted.terms()) flat.add_term(lt, lc * c);
  }
  Rat best(0);
  for (const auto& [m, c] : flat.terms()) best = std::max(best, c.norm_sq());
  return best;
}

std::optional<GaussRat> scalar_multiple_of(const Context& ctx, const AlgebraElement& x,
                                           const Monomial& m) {
  AlgebraElement nx = normal_form(ctx, x);
  if (nx.empty()) return GaussRat();
  int top = m.q;
  for (const auto& [t, c] : nx.terms()) {
    if (t.degree() != m.degree()) return std::nullopt;
    top = std::max(top, t.q);
  }
  AlgebraElement fx;
  for (const auto& [t, c] : nx.terms()) {
    AlgebraElement lifted = raise_to(ctx, t, top);
    for (const auto& [lt, lc] : lifted.terms()) fx.add_term(lt, lc * c);
  }
  AlgebraElement fm = raise_to(ctx, canonical_monomial(ctx, m.a, m.p, m.q, m.b), top);
  const auto& probe = *fm.terms().begin();
  auto it = fx.terms().find(probe.first);
  if (it == fx.terms().end()) return std::nullopt;
  GaussRat lambda = it->second / probe.second;
  if (fx == scale(fm, lambda)) return lambda;
  return std::nullopt;
}

}  // namespace endoalg
