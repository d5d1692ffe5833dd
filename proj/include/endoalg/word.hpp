#pragma once

#include <map>
#include <optional>
#include <vector>

#include "endoalg/group.hpp"
#include "endoalg/numeric.hpp"

namespace endoalg {

// u_a s^p s*^q u_b in reduced position: p, q >= 0, a a canonical
// representative at level p, and (in index-one contexts) min(p, q) = 0.
struct Monomial {
  GroupElement a;
  int p = 0;
  int q = 0;
  GroupElement b;

  int degree() const { return p - q; }
  bool operator==(const Monomial& o) const {
    return p == o.p && q == o.q && a == o.a && b == o.b;
  }
};

// Sort by degree, then level, then group parts.
struct MonomialOrder {
  bool operator()(const Monomial& x, const Monomial& y) const {
    if (x.degree() != y.degree()) return x.degree() < y.degree();
    if (x.q != y.q) return x.q < y.q;
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  }
};

// Finite linear combination of reduced monomials with Gaussian rational
// coefficients.  Keys are always canonical; zero coefficients are dropped.
class AlgebraElement {
 public:
  using Terms = std::map<Monomial, GaussRat, MonomialOrder>;

  const Terms& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add_term(const Monomial& m, const GaussRat& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.try_emplace(m, c);
    if (!fresh) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  bool operator==(const AlgebraElement& o) const { return terms_ == o.terms_; }

 private:
  Terms terms_;
};

struct Letter {
  enum class Kind { U, S, Sstar };
  Kind kind;
  GroupElement g;  // only meaningful for U

  static Letter u(GroupElement x) { return Letter{Kind::U, std::move(x)}; }
  static Letter s() { return Letter{Kind::S, GroupElement{}}; }
  static Letter sstar() { return Letter{Kind::Sstar, GroupElement{}}; }
};
using Word = std::vector<Letter>;

Monomial canonical_monomial(const Context& ctx, const GroupElement& a, int p, int q,
                            const GroupElement& b);
Monomial unit_monomial(const Context& ctx);

std::optional<Monomial> mono_mul(const Context& ctx, const Monomial& x, const Monomial& y);
Monomial mono_adjoint(const Context& ctx, const Monomial& x);

AlgebraElement el_zero();
AlgebraElement el_unit(const Context& ctx);
AlgebraElement el_mono(const Context& ctx, const Monomial& m, const GaussRat& c = GaussRat(Rat(1)));
AlgebraElement el_u(const Context& ctx, const GroupElement& g);
AlgebraElement el_s(const Context& ctx, int k = 1);
AlgebraElement el_sstar(const Context& ctx, int k = 1);

AlgebraElement add(const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement sub(const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement scale(const AlgebraElement& x, const GaussRat& c);
AlgebraElement mul(const Context& ctx, const AlgebraElement& x, const AlgebraElement& y);
AlgebraElement adjoint(const Context& ctx, const AlgebraElement& x);
AlgebraElement from_word(const Context& ctx, const Word& w);

// One refinement step: rewrite through the level-(q+1) partition of unity.
AlgebraElement raise_level(const Context& ctx, const Monomial& m);
AlgebraElement raise_to(const Context& ctx, const Monomial& m, int target_q);

// Common-level form per degree class; the identity map on elements.
AlgebraElement normal_form(const Context& ctx, const AlgebraElement& x);
bool is_zero(const Context& ctx, const AlgebraElement& x);
bool equals(const Context& ctx, const AlgebraElement& x, const AlgebraElement& y);

// Conditional expectation onto the diagonal subalgebra.
AlgebraElement expectation(const Context& ctx, const AlgebraElement& x);

// Norm squared of a diagonal element (a combination of commuting
// projections): the largest |coefficient|^2 after refinement to a common
// level.  Throws NotDiagonal on non-diagonal input.
Rat diagonal_norm_sq(const Context& ctx, const AlgebraElement& x);

// If x equals lambda * m for a scalar lambda, return lambda.
std::optional<GaussRat> scalar_multiple_of(const Context& ctx, const AlgebraElement& x,
                                           const Monomial& m);

}  // namespace endoalg
