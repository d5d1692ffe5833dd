#pragma once

#include <string>

#include "endoalg/dynamics.hpp"
#include "endoalg/qform.hpp"
#include "endoalg/word.hpp"

namespace endoalg {

// Canonical text forms; parsing printed output restores the value exactly.
std::string print_monomial(const Monomial& m);
std::string print_element(const AlgebraElement& x);
std::string print_group(const GroupElement& g);            // [1,2] or bare in rank one
std::string print_qterm(const QTerm& t);                   // coefficient prefix + qterm(...)
std::string print_point(const ProfinitePoint& x);          // rep@depth
std::string print_sd(const SemidirectElement& t);          // t(g;depth;shift)
std::string print_cylinder(const Cylinder& c);             // V[m]{c1,c2}

}  // namespace endoalg
