#include "endoalg/ortho.hpp"

#include <algorithm>
#include <set>

#include "endoalg/errors.hpp"

namespace endoalg {

GroupElement critical_quantity(const Context& ctx, const QTerm& t, const GroupElement& h_i) {
  GroupElement left = ctx.sub(ctx.apply_endo(ctx.neg(h_i), t.m), t.hp);
  GroupElement right = ctx.add(t.h, ctx.apply_endo(h_i, t.n));
  return ctx.add(left, right);
}

std::pair<int, std::vector<QTerm>> common_level(const Context& ctx,
                                                const std::vector<QTerm>& terms) {
  int level = 0;
  for (const QTerm& t : terms) level = std::max(level, t.fk);
  std::vector<QTerm> refined;
  for (const QTerm& t : terms) {
    if (t.fk == level) {
      QTerm r = t;
      r.fg = ctx.canonical_rep(r.fg, level);
      refined.push_back(std::move(r));
      continue;
    }
    int gap = level - t.fk;
    if (ctx.index(gap) > ctx.enum_cap())
      throw CapExceeded("refining a projection across " + std::to_string(gap) + " levels");
    for (const GroupElement& w : ctx.transversal(gap)) {
      QTerm r = t;
      r.fg = ctx.canonical_rep(ctx.add(t.fg, ctx.apply_endo(w, t.fk)), level);
      r.fk = level;
      refined.push_back(std::move(r));
    }
  }
  return {level, std::move(refined)};
}

OrthoResult orthogonalize(const Context& ctx, const std::vector<QTerm>& terms,
                          const OrthoOptions& opts) {
  OrthoResult res;
  auto [level, refined] = common_level(ctx, terms);
  res.common_level = level;
  res.refined = std::move(refined);

  std::set<GroupElement> reps;
  for (const QTerm& t : res.refined) reps.insert(t.fg);
  res.proj_reps.assign(reps.begin(), reps.end());

  std::vector<std::size_t> critical;
  for (std::size_t i = 0; i < res.refined.size(); ++i)
    if (is_critical(res.refined[i])) critical.push_back(i);

  // A critical term only ever meets the companion of its own projection
  // class: conjugation by the others dies of the class mismatch.  Group
  // the critical terms by class before choosing companions.
  std::vector<std::vector<std::size_t>> owned(res.proj_reps.size());
  for (std::size_t k = 0; k < critical.size(); ++k) {
    const GroupElement& g = res.refined[critical[k]].fg;
    std::size_t gi = std::lower_bound(res.proj_reps.begin(), res.proj_reps.end(), g) -
                     res.proj_reps.begin();
    owned[gi].push_back(k);
  }

  // One companion per projection class, congruent to it at the common
  // level; a candidate is rejected when one of the class's critical
  // combinations degenerates to the identity.
  std::vector<TermExponent> found(critical.size());
  for (std::size_t gi = 0; gi < res.proj_reps.size(); ++gi) {
    bool placed = false;
    for (std::size_t attempt = 0; attempt < opts.max_candidates && !placed; ++attempt) {
      std::size_t ball_idx = opts.companion_offset + attempt;
      GroupElement w;
      try {
        w = ctx.ball_element(ball_idx);
      } catch (const CapExceeded&) {
        break;
      }
      GroupElement cand = ctx.add(res.proj_reps[gi], ctx.apply_endo(w, level));
      std::vector<std::pair<int, GroupElement>> cand_exps;
      cand_exps.reserve(owned[gi].size());
      bool ok = true;
      for (std::size_t k : owned[gi]) {
        GroupElement q = critical_quantity(ctx, res.refined[critical[k]], cand);
        if (ctx.is_zero(q)) {
          ok = false;
          break;
        }
        ValuationResult v = ctx.valuation(q);
        if (v.saturated)
          throw SaturatedValuation("critical combination " + vec_to_string(q.coords));
        cand_exps.emplace_back(v.value + 1, q);
      }
      if (!ok) continue;
      res.companions.push_back(cand);
      res.companion_ball_index.push_back(ball_idx);
      for (std::size_t j = 0; j < owned[gi].size(); ++j) {
        std::size_t k = owned[gi][j];
        found[k].term = critical[k];
        found[k].exponent = cand_exps[j].first;
        found[k].quantity = cand_exps[j].second;
        found[k].companion = gi;
      }
      placed = true;
    }
    if (!placed)
      throw CompanionExhausted("no companion for projection class " +
                               vec_to_string(res.proj_reps[gi].coords));
  }

  res.computed_p = res.common_level + 1;
  for (std::size_t k = 0; k < critical.size(); ++k) {
    res.computed_p = std::max(res.computed_p, found[k].exponent);
    res.critical_exponents.push_back(found[k]);
  }
  res.p = opts.forced_p.value_or(res.computed_p);

  for (const GroupElement& h : res.companions)
    res.isometries.push_back(canonical_monomial(ctx, h, res.p, res.p, ctx.neg(h)));

  res.orthogonal = true;
  for (std::size_t i = 0; i < res.isometries.size(); ++i)
    for (std::size_t j = i + 1; j < res.isometries.size(); ++j)
      if (mono_mul(ctx, res.isometries[i], res.isometries[j]))
        res.orthogonal = false;

  res.isometric = true;
  for (const GroupElement& h : res.companions) {
    AlgebraElement v = mul(ctx, el_u(ctx, h), el_s(ctx, res.p));
    if (!equals(ctx, mul(ctx, adjoint(ctx, v), v), el_unit(ctx))) res.isometric = false;
  }
  return res;
}

SeparationReport verify_separation(const Context& ctx, const std::vector<QTerm>& terms,
                                   const OrthoResult& r) {
  SeparationReport rep;
  AlgebraElement y = from_qform(ctx, terms);
  AlgebraElement ey = expectation(ctx, y);

  rep.orthogonal = true;
  for (std::size_t i = 0; i < r.isometries.size(); ++i)
    for (std::size_t j = i + 1; j < r.isometries.size(); ++j) {
      AlgebraElement prod =
          mul(ctx, el_mono(ctx, r.isometries[i]), el_mono(ctx, r.isometries[j]));
      if (!is_zero(ctx, prod)) rep.orthogonal = false;
    }

  rep.isometric = true;
  for (const GroupElement& h : r.companions) {
    AlgebraElement v = mul(ctx, el_u(ctx, h), el_s(ctx, r.p));
    if (!equals(ctx, mul(ctx, adjoint(ctx, v), v), el_unit(ctx))) rep.isometric = false;
  }

  AlgebraElement compressed;
  for (const Monomial& f : r.isometries) {
    AlgebraElement fe = el_mono(ctx, f);
    compressed = add(compressed, mul(ctx, mul(ctx, fe, ey), fe));
  }
  rep.norm_input = diagonal_norm_sq(ctx, ey);
  rep.norm_compressed = diagonal_norm_sq(ctx, compressed);
  rep.norm_match = rep.norm_input == rep.norm_compressed;

  rep.formal_ok = true;
  for (const QTerm& t : r.refined) {
    if (!is_critical(t)) continue;
    auto it = std::lower_bound(r.proj_reps.begin(), r.proj_reps.end(), t.fg);
    if (it == r.proj_reps.end() || !(*it == t.fg)) {
      rep.formal_ok = false;
      continue;
    }
    GroupElement q = critical_quantity(ctx, t, r.companions[it - r.proj_reps.begin()]);
    if (ctx.is_zero(q) || ctx.in_image(q, r.p)) rep.formal_ok = false;
  }

  rep.algebraic_ok = true;
  for (const Monomial& f : r.isometries) {
    AlgebraElement fe = el_mono(ctx, f);
    AlgebraElement dy = mul(ctx, mul(ctx, fe, y), fe);
    AlgebraElement de = mul(ctx, mul(ctx, fe, ey), fe);
    if (!equals(ctx, dy, de)) rep.algebraic_ok = false;
    std::optional<GaussRat> lambda = scalar_multiple_of(ctx, dy, f);
    if (lambda)
      rep.scalars.push_back(*lambda);
    else
      rep.algebraic_ok = false;
  }
  rep.compression_ok = rep.formal_ok && rep.algebraic_ok;
  return rep;
}

}  // namespace endoalg
