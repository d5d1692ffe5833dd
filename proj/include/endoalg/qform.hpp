#pragma once

#include <vector>

#include "endoalg/word.hpp"

namespace endoalg {

// coeff * s*^n u_{-h} (u_g s^k s*^k u_{-g}) u_{h'} s^m, a compressed
// conjugated range projection.  Every reduced monomial can be written in
// this shape with n = 0 (nonnegative degree) or m = 0 (negative degree).
struct QTerm {
  GaussRat coeff;
  int n = 0;
  GroupElement h;
  GroupElement fg;
  int fk = 0;
  GroupElement hp;
  int m = 0;
};

// A term is critical when the two outer parts differ, i.e. the
// expectation kills it.
inline bool is_critical(const QTerm& t) { return !(t.n == t.m && t.h == t.hp); }

QTerm qterm_adjoint(const Context& ctx, const QTerm& t);

AlgebraElement from_qterm(const Context& ctx, const QTerm& t);
AlgebraElement from_qform(const Context& ctx, const std::vector<QTerm>& terms);

// Rewrite a reduced element in sandwich shape, one term per monomial.
std::vector<QTerm> to_qform(const Context& ctx, const AlgebraElement& x);

}  // namespace endoalg
