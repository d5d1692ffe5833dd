#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "endoalg/qform.hpp"

namespace endoalg {

struct OrthoOptions {
  // index into the deterministic ball enumeration where the companion
  // search starts; retries continue from there
  std::size_t companion_offset = 0;
  // override the computed exponent (used for negative controls)
  std::optional<int> forced_p;
  std::size_t max_candidates = 64;
};

struct TermExponent {
  std::size_t term;       // index into the refined term list
  int exponent;           // valuation + 1, maximized over companions
  GroupElement quantity;  // the combination realizing the maximum
  std::size_t companion;  // which companion realized it
};

struct OrthoResult {
  int common_level = 0;                          // all projections refined to this level
  std::vector<QTerm> refined;                    // input rewritten at the common level
  std::vector<GroupElement> proj_reps;           // distinct projection classes g_1..g_N
  std::vector<GroupElement> companions;          // h_i = g_i + phi^level(w_i)
  std::vector<std::size_t> companion_ball_index; // chosen w_i as ball positions
  std::vector<TermExponent> critical_exponents;  // one entry per critical refined term
  int computed_p = 0;
  int p = 0;
  std::vector<Monomial> isometries;  // f_i = u_{h_i} s^p s*^p u_{-h_i}
  bool orthogonal = false;
  bool isometric = false;
};

// phi^m(-h_i) - h' + h + phi^n(h_i) for a term against a companion.
GroupElement critical_quantity(const Context& ctx, const QTerm& t, const GroupElement& h_i);

// Highest projection level among the terms, and the terms refined to it.
std::pair<int, std::vector<QTerm>> common_level(const Context& ctx,
                                                const std::vector<QTerm>& terms);

OrthoResult orthogonalize(const Context& ctx, const std::vector<QTerm>& terms,
                          const OrthoOptions& opts = {});

struct SeparationReport {
  bool orthogonal = false;      // f_i f_j = 0 for i != j
  bool isometric = false;       // each u_{h_i} s^p is an isometry
  bool norm_match = false;      // compression preserves the diagonal norm
  bool formal_ok = false;       // every critical combination escapes phi^p(G)
  bool algebraic_ok = false;    // f_i y f_i = f_i E(y) f_i = lambda_i f_i
  bool compression_ok = false;  // formal_ok && algebraic_ok
  Rat norm_input;
  Rat norm_compressed;
  std::vector<GaussRat> scalars;  // lambda_i
  bool all() const { return orthogonal && isometric && norm_match && compression_ok; }
};

SeparationReport verify_separation(const Context& ctx, const std::vector<QTerm>& terms,
                                   const OrthoResult& r);

}  // namespace endoalg
