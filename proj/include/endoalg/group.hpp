#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "endoalg/config.hpp"
#include "endoalg/errors.hpp"
#include "endoalg/matrix.hpp"
#include "endoalg/numeric.hpp"

namespace endoalg {

struct GroupElement {
  Vec coords;

  bool operator==(const GroupElement& o) const { return coords == o.coords; }
  bool operator!=(const GroupElement& o) const { return coords != o.coords; }
  bool operator<(const GroupElement& o) const { return coords < o.coords; }
};

struct ValuationResult {
  int value;
  bool saturated;  // stopped at max_depth with membership still holding
};

enum class Purity { PureUpToDepth, NotPure, Inconclusive };

struct PurityReport {
  Purity verdict;
  std::optional<GroupElement> witness;  // for NotPure: a nonzero element of every image
  int checked_depth;
  std::string note;
};

// A group G (free lattice Z^rank or a finite product of cyclic groups)
// together with an injective endomorphism phi of finite cokernel, given
// by an integer matrix.  All per-level data (matrix powers, Smith forms,
// coset transversals) is cached lazily and guarded for concurrent reads.
class Context {
 public:
  explicit Context(ContextConfig cfg);

  const ContextConfig& config() const { return cfg_; }
  std::size_t rank() const { return cfg_.rank; }
  bool finite() const { return !cfg_.moduli.empty(); }
  int max_depth() const { return cfg_.max_depth; }
  const Int& enum_cap() const { return cfg_.enum_cap; }
  bool index_one() const;
  Int index(int n) const;  // |G / phi^n(G)|
  std::string fingerprint() const;

  GroupElement zero() const;
  GroupElement make(Vec coords) const;
  GroupElement unit_vector(std::size_t i) const;
  GroupElement add(const GroupElement& a, const GroupElement& b) const;
  GroupElement neg(const GroupElement& a) const;
  GroupElement sub(const GroupElement& a, const GroupElement& b) const;
  bool is_zero(const GroupElement& a) const { return a == zero(); }

  GroupElement apply_endo(const GroupElement& x, int n) const;  // phi^n, n >= 0
  bool in_image(const GroupElement& x, int n) const;            // x in phi^n(G)
  std::optional<GroupElement> preimage(const GroupElement& x, int n) const;
  GroupElement canonical_rep(const GroupElement& x, int n) const;
  const std::vector<GroupElement>& transversal(int n) const;  // sorted, throws CapExceeded
  std::size_t coset_index(const GroupElement& x, int n) const;

  ValuationResult valuation(const GroupElement& x) const;  // throws ZeroElement on 0
  PurityReport purity_check() const;

  // Deterministic enumeration of G used for search windows and companion
  // candidates: 0, 1, -1, 2, -2, ... in rank one; by sup-norm shells in
  // general.  Finite groups enumerate all elements once, then throw.
  GroupElement ball_element(std::size_t k) const;

 private:
  struct Level {
    Matrix power;  // phi^n as a matrix
    SmithForm smith;
    Int index = 1;
    bool has_reps = false;
    std::vector<GroupElement> reps;
    std::map<Vec, std::size_t> rep_pos;
  };

  const Level& level(int n) const;
  const Level& level_with_reps(int n) const;
  void reduce(Vec& v) const;
  std::size_t finite_order() const;  // |G| for finite contexts

  ContextConfig cfg_;
  Matrix mat_;
  Int det_abs_;  // free contexts: |det|; finite contexts: 1
  mutable std::mutex mu_;
  mutable std::vector<std::unique_ptr<Level>> levels_;
  mutable std::vector<GroupElement> ball_;
  mutable long next_shell_ = 0;
  std::vector<std::size_t> perm_fwd_, perm_inv_;  // finite contexts
  std::vector<GroupElement> finite_transversal_;
};

}  // namespace endoalg
