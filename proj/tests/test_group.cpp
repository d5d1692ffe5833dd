#include <set>

#include "coset_oracle.hpp"
#include "doctest.h"
#include "endoalg/group.hpp"
#include "test_util.hpp"

using namespace endoalg;
using testutil::vec;

TEST_CASE("rank-one context with multiplication by 3") {
  Context ctx(testutil::z3());

  CHECK(ctx.index(1) == 3);
  CHECK(ctx.index(3) == 27);
  CHECK_FALSE(ctx.index_one());

  CHECK(ctx.apply_endo(ctx.make(vec({7})), 5) == ctx.make(vec({1701})));
  CHECK(ctx.preimage(ctx.make(vec({-1701})), 5).value() == ctx.make(vec({-7})));
  CHECK_FALSE(ctx.preimage(ctx.make(vec({5})), 1).has_value());

  const auto& t2 = ctx.transversal(2);
  REQUIRE(t2.size() == 9);
  for (long k = 0; k < 9; ++k) CHECK(t2[k] == ctx.make(vec({k})));

  CHECK(ctx.canonical_rep(ctx.make(vec({86})), 4) == ctx.make(vec({5})));
  CHECK(ctx.coset_index(ctx.make(vec({86})), 4) == 5);

  CHECK(ctx.valuation(ctx.make(vec({-1701}))).value == 5);
  CHECK_FALSE(ctx.valuation(ctx.make(vec({-1701}))).saturated);
  CHECK(ctx.valuation(ctx.make(vec({-1592131}))).value == 0);
  CHECK(ctx.valuation(ctx.make(vec({81}))).value == 4);
  CHECK_THROWS_AS(ctx.valuation(ctx.zero()), ZeroElement);

  CHECK(ctx.purity_check().verdict == Purity::PureUpToDepth);

  CHECK(ctx.ball_element(0) == ctx.make(vec({0})));
  CHECK(ctx.ball_element(1) == ctx.make(vec({1})));
  CHECK(ctx.ball_element(2) == ctx.make(vec({-1})));
  CHECK(ctx.ball_element(3) == ctx.make(vec({2})));
  CHECK(ctx.ball_element(4) == ctx.make(vec({-2})));
}

TEST_CASE("filtration nesting and index multiplicativity") {
  Context ctx(testutil::z2_skew());
  CHECK(ctx.index(1) == 2);
  CHECK(ctx.index(6) == 64);
  for (int n = 1; n <= 4; ++n)
    CHECK(ctx.index(n + 1) == ctx.index(n) * ctx.index(1));

  Rng rng(777);
  for (int trial = 0; trial < 50; ++trial) {
    GroupElement x = ctx.make(vec({rng.range(-9, 9), rng.range(-9, 9)}));
    for (int n = 1; n <= 3; ++n) {
      if (ctx.in_image(x, n + 1)) CHECK(ctx.in_image(x, n));
      GroupElement y = ctx.apply_endo(x, n);
      CHECK(ctx.in_image(y, n));
      CHECK(ctx.preimage(y, n).value() == x);
    }
  }
}

TEST_CASE("skew context matches the brute-force coset oracle") {
  Context ctx(testutil::z2_skew());
  Matrix a(2, vec({1, 1, -1, 1}));

  CHECK(ctx.apply_endo(ctx.make(vec({1, 0})), 2) == ctx.make(vec({0, -2})));
  CHECK(ctx.valuation(ctx.make(vec({2, 2}))).value == 3);

  for (int n = 1; n <= 3; ++n) {
    Matrix an = a.pow(static_cast<unsigned>(n));
    long bound = 5;
    std::set<Vec> classes = oracle::coset_points(an, bound);
    CHECK(Int(classes.size()) == ctx.index(n));

    const auto& reps = ctx.transversal(n);
    REQUIRE(Int(reps.size()) == ctx.index(n));
    std::set<Vec> rep_classes;
    for (const GroupElement& r : reps) rep_classes.insert(oracle::parallelepiped_point(an, r.coords));
    CHECK(rep_classes.size() == reps.size());

    Rng rng(1000 + n);
    for (int trial = 0; trial < 40; ++trial) {
      Vec x = vec({rng.range(-12, 12), rng.range(-12, 12)});
      GroupElement gx = ctx.make(x);
      CHECK(ctx.in_image(gx, n) == oracle::member(an, x));
      GroupElement rep = ctx.canonical_rep(gx, n);
      CHECK(oracle::same_coset(an, x, rep.coords));
      CHECK(ctx.canonical_rep(rep, n) == rep);
      auto pre = ctx.preimage(gx, n);
      CHECK(pre.has_value() == oracle::member(an, x));
      if (pre) CHECK(ctx.apply_endo(*pre, n) == gx);
    }
  }
}

TEST_CASE("doubling context transversal is the unit square") {
  Context ctx(testutil::z2_double());
  CHECK(ctx.index(1) == 4);
  const auto& t1 = ctx.transversal(1);
  REQUIRE(t1.size() == 4);
  CHECK(t1[0] == ctx.make(vec({0, 0})));
  CHECK(t1[1] == ctx.make(vec({0, 1})));
  CHECK(t1[2] == ctx.make(vec({1, 0})));
  CHECK(t1[3] == ctx.make(vec({1, 1})));
  CHECK(ctx.purity_check().verdict == Purity::PureUpToDepth);
}

TEST_CASE("identity context has index one") {
  Context ctx(testutil::z_id());
  CHECK(ctx.index_one());
  CHECK(ctx.index(5) == 1);
  CHECK(ctx.canonical_rep(ctx.make(vec({42})), 3) == ctx.zero());
  CHECK(ctx.preimage(ctx.make(vec({42})), 3).value() == ctx.make(vec({42})));
  PurityReport rep = ctx.purity_check();
  CHECK(rep.verdict == Purity::NotPure);
  CHECK(rep.witness.value() == ctx.make(vec({1})));
}

TEST_CASE("finite context acts by a permutation") {
  Context ctx(testutil::c5());
  CHECK(ctx.finite());
  CHECK(ctx.index_one());
  CHECK(ctx.apply_endo(ctx.make(vec({1})), 1) == ctx.make(vec({2})));
  CHECK(ctx.apply_endo(ctx.make(vec({1})), 4) == ctx.make(vec({1})));
  CHECK(ctx.preimage(ctx.make(vec({1})), 1).value() == ctx.make(vec({3})));
  CHECK(ctx.make(vec({7})) == ctx.make(vec({2})));

  ValuationResult v = ctx.valuation(ctx.make(vec({1})));
  CHECK(v.value == ctx.max_depth());
  CHECK(v.saturated);

  PurityReport rep = ctx.purity_check();
  CHECK(rep.verdict == Purity::NotPure);
  CHECK(rep.witness.value() == ctx.make(vec({1})));

  for (long k = 0; k < 5; ++k) CHECK(ctx.ball_element(k) == ctx.make(vec({k})));
  CHECK_THROWS_AS(ctx.ball_element(5), CapExceeded);
}

TEST_CASE("non-injective finite matrix is rejected") {
  CHECK_THROWS_AS(Context(testutil::cfg(1, {2}, {4})), ConfigError);
}

TEST_CASE("ball enumeration in rank two walks sup-norm shells") {
  Context ctx(testutil::z2_skew());
  CHECK(ctx.ball_element(0) == ctx.make(vec({0, 0})));
  CHECK(ctx.ball_element(1) == ctx.make(vec({1, 1})));
  std::set<GroupElement> seen;
  for (std::size_t k = 0; k < 25; ++k) CHECK(seen.insert(ctx.ball_element(k)).second);
  // first two shells complete: the 3x3 box around the origin
  for (long x = -1; x <= 1; ++x)
    for (long y = -1; y <= 1; ++y) CHECK(seen.count(ctx.make(vec({x, y}))) == 1);
}

TEST_CASE("transversal enumeration respects the cap") {
  ContextConfig c = testutil::z3();
  c.enum_cap = 10;
  Context ctx(c);
  CHECK(ctx.transversal(2).size() == 9);
  CHECK_THROWS_AS(ctx.transversal(3), CapExceeded);
}
