#include "endoalg/qform.hpp"

namespace endoalg {

QTerm qterm_adjoint(const Context& ctx, const QTerm& t) {
  (void)ctx;
  return QTerm{t.coeff.conj(), t.m, t.hp, t.fg, t.fk, t.h, t.n};
}

AlgebraElement from_qterm(const Context& ctx, const QTerm& t) {
  AlgebraElement proj = mul(ctx, mul(ctx, el_u(ctx, t.fg), el_s(ctx, t.fk)),
                            mul(ctx, el_sstar(ctx, t.fk), el_u(ctx, ctx.neg(t.fg))));
  AlgebraElement mid = mul(ctx, mul(ctx, el_u(ctx, ctx.neg(t.h)), proj), el_u(ctx, t.hp));
  return scale(mul(ctx, mul(ctx, el_sstar(ctx, t.n), mid), el_s(ctx, t.m)), t.coeff);
}

AlgebraElement from_qform(const Context& ctx, const std::vector<QTerm>& terms) {
  AlgebraElement x;
  for (const QTerm& t : terms) x = add(x, from_qterm(ctx, t));
  return x;
}

namespace {

// Sandwich shape of a single canonical monomial of nonnegative degree:
//   u_a s^p s*^q u_b = (u_a s^p s*^p u_{-a}) u_{a + phi^(p-q)(b)} s^(p-q).
QTerm positive_shape(const Context& ctx, const Monomial& m) {
  int delta = m.degree();
  QTerm t;
  t.coeff = GaussRat(Rat(1));
  t.n = 0;
  t.h = ctx.zero();
  t.fg = m.a;
  t.fk = m.p;
  t.hp = ctx.add(m.a, ctx.apply_endo(m.b, delta));
  t.m = delta;
  return t;
}

}  // namespace

std::vector<QTerm> to_qform(const Context& ctx, const AlgebraElement& x) {
  std::vector<QTerm> out;
  out.reserve(x.size());
  for (const auto& [m, c] : x.terms()) {
    if (m.degree() >= 0) {
      QTerm t = positive_shape(ctx, m);
      t.coeff = c;
      out.push_back(std::move(t));
    } else {
      QTerm t = qterm_adjoint(ctx, positive_shape(ctx, mono_adjoint(ctx, m)));
      t.coeff = c;
      out.push_back(std::move(t));
    }
  }
  return out;
}

}  // namespace endoalg
