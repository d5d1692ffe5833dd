#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "endoalg/numeric.hpp"

namespace endoalg {

// Plain-text context description, one `key = value` pair per line.
// An empty `moduli` list means the free lattice of the given rank;
// a nonempty list means the finite group  Z/m_1 x ... x Z/m_rank.
struct ContextConfig {
  int version = 1;
  std::size_t rank = 1;
  std::vector<Int> matrix;  // rank*rank entries, row-major
  std::vector<Int> moduli;  // empty, or one modulus >= 2 per coordinate
  int max_depth = 24;
  Int enum_cap = 1000000;
  bool declared_pure = false;
  bool has_declared_pure = false;

  static ContextConfig parse(const std::string& text);
  static ContextConfig load(const std::string& path);
  std::string serialize() const;
  void validate() const;
};

}  // namespace endoalg
