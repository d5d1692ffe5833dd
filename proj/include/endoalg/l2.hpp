#pragma once

#include <map>
#include <optional>
#include <vector>

#include "endoalg/word.hpp"

namespace endoalg {

// The natural action on the canonical basis of l2(G): U(g) shifts by g,
// S applies the endomorphism, S* inverts it where possible and kills the
// basis vector otherwise.  Words act letter by letter (rightmost first),
// independently of the reduction rules, which makes this layer an oracle
// for the word algebra.

std::optional<GroupElement> act_letter(const Context& ctx, const Letter& l,
                                       const GroupElement& x);
std::optional<GroupElement> act_word(const Context& ctx, const Word& w, const GroupElement& x);
std::optional<GroupElement> act_monomial(const Context& ctx, const Monomial& m,
                                         const GroupElement& x);

using BasisVector = std::map<Vec, GaussRat>;
BasisVector act_element(const Context& ctx, const AlgebraElement& x, const GroupElement& pt);

// First n points of the deterministic enumeration of G (all of G when the
// group is finite and smaller).
std::vector<GroupElement> window_points(const Context& ctx, std::size_t n);

bool elements_agree_on_window(const Context& ctx, const AlgebraElement& x,
                              const AlgebraElement& y,
                              const std::vector<GroupElement>& window);
bool word_matches_element(const Context& ctx, const Word& w, const AlgebraElement& x,
                          const std::vector<GroupElement>& window);

}  // namespace endoalg
