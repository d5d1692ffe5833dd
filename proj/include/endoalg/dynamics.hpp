#pragma once

#include <optional>
#include <string>
#include <vector>

#include "endoalg/qform.hpp"
#include "endoalg/word.hpp"

namespace endoalg {

// Element of the direct limit of G along phi: (g, depth) stands for the
// depth-fold formal preimage of g.  Canonical when depth = 0 or g has no
// actual preimage left to strip.
struct LimitElement {
  GroupElement g;
  int depth = 0;

  bool operator==(const LimitElement& o) const { return depth == o.depth && g == o.g; }
  bool operator!=(const LimitElement& o) const { return !(*this == o); }
};

LimitElement make_limit(const Context& ctx, const GroupElement& g, int depth);
LimitElement limit_zero(const Context& ctx);
LimitElement limit_add(const Context& ctx, const LimitElement& a, const LimitElement& b);
LimitElement limit_neg(const Context& ctx, const LimitElement& a);
// phi-bar^n with n of either sign (negative n deepens).
LimitElement limit_phi(const Context& ctx, const LimitElement& a, int n);

// The limit group extended by the shift: (a, n) acts as "add a, then
// shift height by n".
struct SemidirectElement {
  LimitElement a;
  int n = 0;

  bool operator==(const SemidirectElement& o) const { return n == o.n && a == o.a; }
  bool operator!=(const SemidirectElement& o) const { return !(*this == o); }
};

SemidirectElement sd_identity(const Context& ctx);
SemidirectElement sd_make(const Context& ctx, const GroupElement& g, int depth, int n);
SemidirectElement sd_mul(const Context& ctx, const SemidirectElement& s,
                         const SemidirectElement& t);
SemidirectElement sd_inv(const Context& ctx, const SemidirectElement& s);
bool sd_is_identity(const Context& ctx, const SemidirectElement& s);

// Left multipliers that equalize two monoid elements ((g, 0), n >= 0).
struct OreWitness {
  SemidirectElement l1, l2, common;
  bool verified = false;
};
OreWitness ore_witness(const Context& ctx, const SemidirectElement& s1,
                       const SemidirectElement& s2);

// A point of the inverse limit of G/phi^n(G), truncated at finite depth;
// rep is the canonical representative of the deepest known entry.
struct ProfinitePoint {
  int depth = 0;
  GroupElement rep;

  bool operator==(const ProfinitePoint& o) const { return depth == o.depth && rep == o.rep; }
};

ProfinitePoint make_point(const Context& ctx, const GroupElement& g, int depth);
GroupElement point_entry(const Context& ctx, const ProfinitePoint& x, int m);

// A union of cosets at one level, named by transversal positions.
struct Cylinder {
  int m = 0;
  std::vector<std::size_t> classes;  // sorted, distinct
};

Cylinder make_cylinder(const Context& ctx, int m, std::vector<std::size_t> classes);
bool cyl_contains(const Context& ctx, const Cylinder& c, const ProfinitePoint& x);

enum class DomainKind { Empty, Full, Proper };

struct DomainStatus {
  DomainKind kind = DomainKind::Empty;
  std::optional<Cylinder> cylinder;  // set when kind == Proper
};

// The set of points whose spectrum contains t, in closed form.
DomainStatus domain_status(const Context& ctx, const SemidirectElement& t);

// Whether t lies in the spectrum of x.  Throws DepthExhausted when the
// answer needs entries beyond the known depth.
bool xi_contains(const Context& ctx, const ProfinitePoint& x, const SemidirectElement& t);

// The partial homeomorphism attached to t, evaluated at x.  The domain
// is the set attached to the inverse of t; positive shifts deepen the
// point (capped at max_depth), negative shifts consume depth.
ProfinitePoint apply_partial(const Context& ctx, const SemidirectElement& t,
                             const ProfinitePoint& x);

struct SpectrumOptions {
  int height_bound = 3;
  std::size_t sample = 6;
};

struct SpectrumReport {
  bool right_closure = true;  // members absorb right multiplication by the group
  bool shift_closure = true;  // members survive one downward shift
  bool unique_class = true;   // exactly one coset class per height
  int heights_checked = 0;
  std::size_t members_checked = 0;
  bool all() const { return right_closure && shift_closure && unique_class; }
};

SpectrumReport spectrum_check(const Context& ctx, const ProfinitePoint& x,
                              const SpectrumOptions& opts = {});

struct FreenessResult {
  enum class Kind { Witness, DomainEmpty, Inconclusive };
  Kind kind = Kind::Inconclusive;
  std::optional<ProfinitePoint> point;  // a point of the cylinder moved by t
  int certificate_level = 0;            // entries differ (or leave the domain) here
  bool outside_domain = false;          // the point witnesses by falling outside
  std::string note;
};

// Search the cylinder for a point that t visibly moves.
FreenessResult freeness_witness(const Context& ctx, const SemidirectElement& t,
                                const Cylinder& c);

// A group-part element carrying x into the cylinder's first class.
SemidirectElement orbit_mover(const Context& ctx, const ProfinitePoint& x, const Cylinder& c);

// Image of t under the standard partial representation by words.
AlgebraElement pi_rep(const Context& ctx, const SemidirectElement& t);

struct RelationsOptions {
  long gbound = 2;      // group entries sampled from [-gbound, gbound]
  int nbound = 2;       // shift part sampled from [-nbound, nbound]
  int sum_levels = 3;   // partition relation checked up to this level
};

struct RelationsReport {
  bool unit_ok = false;         // the identity maps to 1
  bool adjoint_ok = false;      // inverses map to adjoints
  bool partial_mult_ok = false; // the partial multiplicativity identity
  bool unitary_ok = false;      // group elements map to unitaries
  bool isometry_ok = false;     // pure shifts map to isometries
  bool partition_ok = false;    // range projections sum to 1 per level
  bool roundtrip_ok = false;    // generator decompositions recompose
  std::size_t samples = 0;
  bool all() const {
    return unit_ok && adjoint_ok && partial_mult_ok && unitary_ok && isometry_ok &&
           partition_ok && roundtrip_ok;
  }
};

RelationsReport relations_check(const Context& ctx, const RelationsOptions& opts = {});

struct CorrespondenceReport {
  std::size_t checked = 0;
  std::size_t mismatches = 0;
  bool ok() const { return mismatches == 0; }
};

// The expectation kills exactly the terms whose group-side shadow is not
// the identity; checked per term both formally and on reduced elements.
CorrespondenceReport expectation_correspondence_check(const Context& ctx,
                                                      const std::vector<QTerm>& terms);

}  // namespace endoalg
