#pragma once

#include <string>
#include <vector>

#include "endoalg/dynamics.hpp"
#include "endoalg/qform.hpp"
#include "endoalg/word.hpp"

namespace endoalg {

// Expression grammar over the generators:
//   expr    := [+-] term ((+|-) term)*
//   term    := factor+                    (juxtaposition multiplies; a '*'
//                                          with space on its left does too)
//   factor  := atom postfix*
//   postfix := '*' glued to its atom (adjoint) | '^' nat (power)
//   atom    := nat [/ nat] | 'i' | 'u' '[' ints ']' | 's'
//            | 'qterm' '(' int, g, g, nat, g, int ')' | '(' expr ')'
// Group arguments g are a bare integer in rank one, or [a,b,...].
// Whitespace and '#'-to-end-of-line comments are ignored.
AlgebraElement parse_element(const Context& ctx, const std::string& src);

// Like parse_element, but an argument of the form @path reads the file.
AlgebraElement parse_element_arg(const Context& ctx, const std::string& arg);

// A sum of scalar multiples of qterm(...) atoms, kept term by term rather
// than reduced, so families that sum to zero stay visible.
std::vector<QTerm> parse_qterm_sum(const Context& ctx, const std::string& src);
std::vector<QTerm> parse_qterm_sum_arg(const Context& ctx, const std::string& arg);

SemidirectElement parse_sd(const Context& ctx, const std::string& src);   // t(g;depth;shift)
ProfinitePoint parse_point(const Context& ctx, const std::string& src);   // g@depth
Cylinder parse_cylinder(const Context& ctx, const std::string& src);      // V[m]{c1,c2}

}  // namespace endoalg
