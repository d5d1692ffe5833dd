#include "doctest.h"
#include "endoalg/l2.hpp"
#include "endoalg/word.hpp"
#include "test_util.hpp"

using namespace endoalg;
using testutil::vec;

namespace {

GaussRat one() { return GaussRat(Rat(1)); }

Word random_word(const Context& ctx, Rng& rng, std::size_t len) {
  Word w;
  for (std::size_t i = 0; i < len; ++i) {
    switch (rng.below(3)) {
      case 0: {
        Vec g;
        for (std::size_t j = 0; j < ctx.rank(); ++j) g.emplace_back(rng.range(-4, 4));
        w.push_back(Letter::u(ctx.make(g)));
        break;
      }
      case 1:
        w.push_back(Letter::s());
        break;
      default:
        w.push_back(Letter::sstar());
        break;
    }
  }
  return w;
}

}  // namespace

TEST_CASE("canonicalization produces the expected reduced shape") {
  Context ctx(testutil::z3());
  // u_5 s = u_2 s u_1
  Monomial m = canonical_monomial(ctx, ctx.make(vec({5})), 1, 0, ctx.zero());
  CHECK(m == (Monomial{ctx.make(vec({2})), 1, 0, ctx.make(vec({1}))}));
  // idempotent
  CHECK(canonical_monomial(ctx, m.a, m.p, m.q, m.b) == m);
  // the group part of a plain unitary sits on the right
  CHECK(el_u(ctx, ctx.make(vec({7}))).terms().begin()->first ==
        (Monomial{ctx.zero(), 0, 0, ctx.make(vec({7}))}));
}

TEST_CASE("index-one contexts strip the range projection") {
  Context ctx(testutil::z_id());
  CHECK(canonical_monomial(ctx, ctx.zero(), 1, 1, ctx.zero()) == unit_monomial(ctx));
  // u_1 s and s u_1 normalize identically
  AlgebraElement left = from_word(ctx, {Letter::u(ctx.make(vec({1}))), Letter::s()});
  AlgebraElement right = from_word(ctx, {Letter::s(), Letter::u(ctx.make(vec({1})))});
  REQUIRE(left.size() == 1);
  CHECK(left.terms().begin()->first == (Monomial{ctx.zero(), 1, 0, ctx.make(vec({1}))}));
  CHECK(left == right);

  Context c5(testutil::c5());
  AlgebraElement a = from_word(c5, {Letter::s(), Letter::u(c5.make(vec({1})))});
  AlgebraElement b = mul(c5, el_u(c5, c5.make(vec({2}))), el_s(c5));
  CHECK(a == b);
  // s* u_1 s = u_3 since 2*3 = 1 mod 5
  AlgebraElement c =
      from_word(c5, {Letter::sstar(), Letter::u(c5.make(vec({1}))), Letter::s()});
  CHECK(c == el_u(c5, c5.make(vec({3}))));
}

TEST_CASE("defining relations hold after reduction") {
  for (const ContextConfig& cfg : {testutil::z3(), testutil::z2_skew(), testutil::z2_double()}) {
    Context ctx(cfg);
    Rng rng(5);
    for (int trial = 0; trial < 10; ++trial) {
      Vec gv, hv;
      for (std::size_t j = 0; j < ctx.rank(); ++j) {
        gv.emplace_back(rng.range(-8, 8));
        hv.emplace_back(rng.range(-8, 8));
      }
      GroupElement g = ctx.make(gv), h = ctx.make(hv);
      CHECK(equals(ctx, mul(ctx, el_u(ctx, g), el_u(ctx, h)), el_u(ctx, ctx.add(g, h))));
      CHECK(equals(ctx, mul(ctx, el_s(ctx), el_u(ctx, g)),
                   mul(ctx, el_u(ctx, ctx.apply_endo(g, 1)), el_s(ctx))));
      CHECK(equals(ctx, mul(ctx, el_u(ctx, g), el_sstar(ctx)),
                   mul(ctx, el_sstar(ctx), el_u(ctx, ctx.apply_endo(g, 1)))));
    }
    // sum of range projections over a transversal is the identity
    AlgebraElement total = el_zero();
    for (const GroupElement& g : ctx.transversal(1)) {
      AlgebraElement proj = mul(
          ctx, mul(ctx, el_u(ctx, g), mul(ctx, el_s(ctx), el_sstar(ctx))), el_u(ctx, ctx.neg(g)));
      total = add(total, proj);
    }
    CHECK(equals(ctx, total, el_unit(ctx)));
    CHECK(is_zero(ctx, sub(total, el_unit(ctx))));
    // isometry
    CHECK(equals(ctx, mul(ctx, el_sstar(ctx), el_s(ctx)), el_unit(ctx)));
  }
}

TEST_CASE("compressed unitaries reduce by image membership") {
  Context ctx(testutil::z3());
  AlgebraElement dead = from_word(ctx, {Letter::sstar(), Letter::u(ctx.make(vec({1}))), Letter::s()});
  CHECK(dead.empty());
  AlgebraElement alive =
      from_word(ctx, {Letter::sstar(), Letter::u(ctx.make(vec({3}))), Letter::s()});
  CHECK(alive == el_u(ctx, ctx.make(vec({1}))));
}

TEST_CASE("merged product rule for positive words") {
  Context ctx(testutil::z2_skew());
  Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    GroupElement g = ctx.make(vec({rng.range(-5, 5), rng.range(-5, 5)}));
    GroupElement h = ctx.make(vec({rng.range(-5, 5), rng.range(-5, 5)}));
    int n = static_cast<int>(rng.below(3)), m = static_cast<int>(rng.below(3));
    AlgebraElement lhs = mul(ctx, mul(ctx, el_u(ctx, g), el_s(ctx, n)),
                             mul(ctx, el_u(ctx, h), el_s(ctx, m)));
    AlgebraElement rhs =
        mul(ctx, el_u(ctx, ctx.add(g, ctx.apply_endo(h, n))), el_s(ctx, n + m));
    CHECK(equals(ctx, lhs, rhs));
    REQUIRE(lhs.size() == 1);
    CHECK(lhs.terms().begin()->first.q == 0);
  }
}

TEST_CASE("adjoint is an involutive antihomomorphism") {
  Context ctx(testutil::z2_skew());
  Rng rng(23);
  for (int trial = 0; trial < 25; ++trial) {
    AlgebraElement x = from_word(ctx, random_word(ctx, rng, 1 + rng.below(5)));
    AlgebraElement y = from_word(ctx, random_word(ctx, rng, 1 + rng.below(5)));
    CHECK(equals(ctx, adjoint(ctx, adjoint(ctx, x)), x));
    CHECK(equals(ctx, adjoint(ctx, mul(ctx, x, y)),
                 mul(ctx, adjoint(ctx, y), adjoint(ctx, x))));
  }
  AlgebraElement ix = scale(el_s(ctx), GaussRat(Rat(0), Rat(1)));
  CHECK(equals(ctx, adjoint(ctx, ix), scale(el_sstar(ctx), GaussRat(Rat(0), Rat(-1)))));
}

TEST_CASE("reduction agrees with the basis action") {
  for (const ContextConfig& cfg : {testutil::z3(), testutil::z2_skew(), testutil::c5()}) {
    Context ctx(cfg);
    std::vector<GroupElement> window = window_points(ctx, 25);
    Rng rng(31);
    for (int trial = 0; trial < 60; ++trial) {
      Word w = random_word(ctx, rng, 1 + rng.below(8));
      AlgebraElement x = from_word(ctx, w);
      CHECK(word_matches_element(ctx, w, x, window));
    }
  }
}

TEST_CASE("products agree with composed basis action") {
  Context ctx(testutil::z3());
  std::vector<GroupElement> window = window_points(ctx, 20);
  Rng rng(37);
  for (int trial = 0; trial < 30; ++trial) {
    Word w1 = random_word(ctx, rng, 1 + rng.below(5));
    Word w2 = random_word(ctx, rng, 1 + rng.below(5));
    AlgebraElement prod = mul(ctx, from_word(ctx, w1), from_word(ctx, w2));
    Word joined = w1;
    joined.insert(joined.end(), w2.begin(), w2.end());
    CHECK(word_matches_element(ctx, joined, prod, window));
  }
}

TEST_CASE("level raising refines without changing the element") {
  Context ctx(testutil::z3());
  Monomial range_proj{ctx.zero(), 1, 1, ctx.zero()};
  AlgebraElement lifted = raise_level(ctx, range_proj);
  CHECK(lifted.size() == 3);
  CHECK(equals(ctx, lifted, el_mono(ctx, range_proj)));

  AlgebraElement twice = raise_to(ctx, range_proj, 3);
  CHECK(twice.size() == 9);
  CHECK(equals(ctx, twice, el_mono(ctx, range_proj)));
  for (const auto& [m, c] : twice.terms()) {
    CHECK(m.q == 3);
    CHECK(c == one());
  }
}

TEST_CASE("normal form brings each degree to a common level") {
  Context ctx(testutil::z3());
  AlgebraElement ssp = mul(ctx, el_s(ctx), el_sstar(ctx));
  AlgebraElement x = sub(el_unit(ctx), ssp);
  AlgebraElement nf = normal_form(ctx, x);
  CHECK(nf.size() == 2);
  for (const auto& [m, c] : nf.terms()) {
    CHECK(m.p == 1);
    CHECK(m.q == 1);
  }
  CHECK_FALSE(is_zero(ctx, x));

  AlgebraElement total = el_zero();
  for (const GroupElement& g : ctx.transversal(1))
    total = add(total, mul(ctx, mul(ctx, el_u(ctx, g), ssp), el_u(ctx, ctx.neg(g))));
  CHECK(is_zero(ctx, sub(total, el_unit(ctx))));
}

TEST_CASE("equality is stable under rewriting through the partition") {
  Context ctx(testutil::z2_skew());
  AlgebraElement ssp = mul(ctx, el_s(ctx), el_sstar(ctx));
  AlgebraElement sum = el_zero();
  for (const GroupElement& g : ctx.transversal(1))
    sum = add(sum, mul(ctx, mul(ctx, el_u(ctx, g), ssp), el_u(ctx, ctx.neg(g))));
  CHECK(equals(ctx, sum, el_unit(ctx)));
  CHECK(equals(ctx, mul(ctx, sum, sum), el_unit(ctx)));
}

TEST_CASE("conditional expectation keeps exactly the diagonal part") {
  Context ctx(testutil::z3());
  GroupElement g1 = ctx.make(vec({1}));
  CHECK(expectation(ctx, el_u(ctx, g1)).empty());
  CHECK(expectation(ctx, el_unit(ctx)) == el_unit(ctx));
  CHECK(expectation(ctx, el_s(ctx)).empty());

  AlgebraElement ssp = mul(ctx, el_s(ctx), el_sstar(ctx));
  CHECK(expectation(ctx, ssp) == ssp);

  AlgebraElement shifted = mul(ctx, mul(ctx, el_u(ctx, g1), ssp), el_u(ctx, ctx.neg(g1)));
  CHECK(expectation(ctx, shifted) == shifted);

  AlgebraElement off = mul(ctx, mul(ctx, el_u(ctx, g1), ssp), el_u(ctx, ctx.make(vec({-2}))));
  CHECK(expectation(ctx, off).empty());

  // linear over a mixed sum
  AlgebraElement mix = add(scale(ssp, GaussRat(Rat(2))), el_s(ctx));
  CHECK(expectation(ctx, mix) == scale(ssp, GaussRat(Rat(2))));
  // idempotent
  CHECK(expectation(ctx, expectation(ctx, mix)) == expectation(ctx, mix));
}

TEST_CASE("diagonal norm through refinement to a common level") {
  Context ctx(testutil::z3());
  AlgebraElement ssp = mul(ctx, el_s(ctx), el_sstar(ctx));
  AlgebraElement deep = mul(ctx, el_s(ctx, 2), el_sstar(ctx, 2));
  GroupElement g1 = ctx.make(vec({1}));
  AlgebraElement shifted = mul(ctx, mul(ctx, el_u(ctx, g1), ssp), el_u(ctx, ctx.neg(g1)));

  CHECK(diagonal_norm_sq(ctx, sub(ssp, shifted)) == Rat(1));
  CHECK(diagonal_norm_sq(ctx, add(ssp, deep)) == Rat(4));
  CHECK(diagonal_norm_sq(ctx, el_zero()) == Rat(0));
  CHECK(diagonal_norm_sq(ctx, scale(el_unit(ctx), GaussRat(Rat(0), Rat(3)))) == Rat(9));
  CHECK_THROWS_AS(diagonal_norm_sq(ctx, el_u(ctx, g1)), NotDiagonal);
  CHECK_THROWS_AS(diagonal_norm_sq(ctx, el_s(ctx)), NotDiagonal);
}

TEST_CASE("scalar multiple detection") {
  Context ctx(testutil::z3());
  Monomial f{ctx.zero(), 1, 1, ctx.zero()};
  AlgebraElement ssp = el_mono(ctx, f);
  CHECK(scalar_multiple_of(ctx, scale(ssp, GaussRat(Rat(3))), f).value() == GaussRat(Rat(3)));
  CHECK(scalar_multiple_of(ctx, el_zero(), f).value() == GaussRat());
  GroupElement g1 = ctx.make(vec({1}));
  AlgebraElement shifted = mul(ctx, mul(ctx, el_u(ctx, g1), ssp), el_u(ctx, ctx.neg(g1)));
  CHECK_FALSE(scalar_multiple_of(ctx, add(ssp, shifted), f).has_value());
  CHECK_FALSE(scalar_multiple_of(ctx, el_s(ctx), f).has_value());
  // a refinement of f is still a multiple of f
  CHECK(scalar_multiple_of(ctx, raise_to(ctx, f, 3), f).value() == one());
}

TEST_CASE("level raising respects the enumeration cap") {
  ContextConfig cfg = testutil::z3();
  cfg.enum_cap = 5;
  Context ctx(cfg);
  AlgebraElement mixed = add(el_unit(ctx), mul(ctx, el_s(ctx, 2), el_sstar(ctx, 2)));
  CHECK_THROWS_AS(normal_form(ctx, mixed), CapExceeded);
}
