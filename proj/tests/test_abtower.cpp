#include <gtest/gtest.h>

#include "generators.hpp"
#include "oracles.hpp"

using namespace covlim;
using covlim::testing::Brute;
using covlim::testing::brute_force;
using covlim::testing::Gen;

TEST(DecideStationary, TimesTwoIsNotML) {
  MLVerdict v = ml_decide_stationary(IntMatrix{{2}});
  EXPECT_EQ(v.status, MLStatus::NotML);
  EXPECT_EQ(v.proof, "stationary-exact");
  ASSERT_TRUE(v.levels[0].descent_index);
  EXPECT_EQ(*v.levels[0].descent_index, 2);
}

TEST(DecideStationary, IdentityIsML) { EXPECT_EQ(ml_decide_stationary(IntMatrix::identity(3)).status, MLStatus::ML); }

TEST(DecideStationary, SwapIsML) { EXPECT_EQ(ml_decide_stationary(IntMatrix{{0, 1}, {1, 0}}).status, MLStatus::ML); }

TEST(DecideStationary, NilpotentStabilisesAtZero) {
  MLVerdict v = ml_decide_stationary(IntMatrix{{0, 1, 0}, {0, 0, 1}, {0, 0, 0}});
  EXPECT_EQ(v.status, MLStatus::ML);
  EXPECT_EQ(*v.levels[0].stable_from, 4u);
}

TEST(DecideStationary, ProjectionTimesTwoIsNotML) {
  // rank drops once, then the eventual image is doubled forever
  EXPECT_EQ(ml_decide_stationary(IntMatrix{{2, 0}, {0, 0}}).status, MLStatus::NotML);
  EXPECT_EQ(ml_decide_stationary(IntMatrix{{1, 1}, {0, 0}}).status, MLStatus::ML);
}

TEST(DecideStationary, NonSquareThrows) { EXPECT_THROW(ml_decide_stationary(IntMatrix{{1, 2}}), input_error); }

TEST(DecideStationary, MatchesBruteForceOnRandomMatrices) {
  Gen gen(51);
  int ml = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = gen.uniform(1, 4);
    const std::int64_t span = trial % 3 == 0 ? 1 : 3;
    IntMatrix a = gen.matrix(n, n, -span, span);
    MLVerdict v = ml_decide_stationary(a);
    Brute b = brute_force(a);
    ASSERT_EQ(v.status == MLStatus::ML, b.ml) << to_string(a);
    if (b.ml) {
      ++ml;
      ASSERT_EQ(*v.levels[0].stable_from, b.first_equal + 1) << to_string(a);
    }
  }
  EXPECT_GT(ml, 0);
  EXPECT_LT(ml, 200);
}

TEST(PowerImageChain, IsDecreasing) {
  Gen gen(52);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = gen.uniform(1, 4);
    auto chain = power_image_chain(gen.matrix(n, n, -3, 3), n + 4);
    for (std::size_t k = 0; k + 1 < chain.size(); ++k) ASSERT_TRUE(chain[k].contains(chain[k + 1]));
  }
}

TEST(Observe, ConstantIdentityTowerIsCertified) {
  // Identity bonds are onto, so the verdict is certified rather than merely observed.
  for (bool stationary : {true, false}) {
    AbelianTower t = AbelianTower::constant(IntMatrix::identity(2), 5);
    t.stationary = stationary;
    MLVerdict v = ml_observe(t, 5);
    EXPECT_EQ(v.status, MLStatus::ML);
    for (const auto& w : v.levels) {
      ASSERT_TRUE(w.stable_from);
      EXPECT_EQ(*w.stable_from, w.level);
    }
  }
}

TEST(Observe, TimesTwoTruncatedAtSix) {
  MLVerdict v = ml_observe(AbelianTower::constant(IntMatrix{{2}}, 6), 6);
  EXPECT_EQ(v.status, MLStatus::NotML);
  EXPECT_EQ(v.proof, "stationary-exact");
  EXPECT_EQ(lim1_verdict(v), Lim1::Nontrivial);
}

TEST(Observe, TimesTwoWithoutDeclarationIsUndetermined) {
  AbelianTower t = AbelianTower::constant(IntMatrix{{2}}, 6);
  t.stationary = false;
  MLVerdict v = ml_observe(t, 6);
  EXPECT_EQ(v.status, MLStatus::Undetermined);
  EXPECT_EQ(lim1_verdict(v), Lim1::Unknown);
}

TEST(Observe, ProjectionTowerIsML) {
  AbelianTower t;
  for (std::size_t i = 1; i <= 5; ++i) t.ranks.push_back(i);
  for (std::size_t i = 1; i < 5; ++i) t.bonds.push_back(IntMatrix::deletion(i + 1, i));
  MLVerdict v = ml_observe(t, 5);
  EXPECT_EQ(v.status, MLStatus::ML);
  EXPECT_EQ(v.proof, "epimorphic-bonds");
  EXPECT_EQ(lim1_verdict(v), Lim1::Trivial);
}

TEST(Observe, SettledChainsAreObservedStable) {
  // bonds kill a coordinate once, then are onto: images settle but the first bond is not onto
  AbelianTower t;
  t.ranks = {2, 2, 2, 2};
  t.bonds = {IntMatrix{{1, 0}, {0, 0}}, IntMatrix::identity(2), IntMatrix::identity(2)};
  MLVerdict v = ml_observe(t, 4);
  EXPECT_EQ(v.status, MLStatus::ObservedStable);
  EXPECT_EQ(*v.levels[0].stable_from, 2u);
  EXPECT_EQ(v.observed_stable_at, 3u);
  EXPECT_EQ(lim1_verdict(v), Lim1::Unknown);
  t.stationary = true;
  EXPECT_EQ(lim1_verdict(ml_observe(t, 4)), Lim1::Trivial);
}

TEST(Observe, RandomOntoBondsAreML) {
  Gen gen(53);
  for (int trial = 0; trial < 100; ++trial) {
    AbelianTower t;
    t.ranks = {2, 3, 3, 4};
    for (std::size_t i = 0; i + 1 < t.ranks.size(); ++i) {
      // deletion after a random unimodular change of basis is onto
      IntMatrix u = IntMatrix::identity(t.ranks[i + 1]);
      for (int op = 0; op < 6; ++op) {
        std::size_t a = gen.uniform(0, u.cols() - 1), b = gen.uniform(0, u.cols() - 1);
        if (a != b) u.add_col(a, b, Integer(gen.uniform(-2, 2)));
      }
      t.bonds.push_back(IntMatrix::deletion(t.ranks[i + 1], t.ranks[i]) * u);
    }
    ASSERT_EQ(ml_observe(t, 4).status, MLStatus::ML);
  }
}

TEST(Observe, HorizonBeyondLevelsThrows) {
  EXPECT_THROW(ml_observe(AbelianTower::constant(IntMatrix{{1}}, 3), 4), input_error);
}

TEST(Lim1, Verdicts) {
  EXPECT_EQ(lim1_verdict(ml_decide_stationary(IntMatrix{{2}})), Lim1::Nontrivial);
  EXPECT_EQ(lim1_verdict(ml_decide_stationary(IntMatrix::identity(2))), Lim1::Trivial);
  MLVerdict undetermined;
  EXPECT_EQ(lim1_verdict(undetermined), Lim1::Unknown);
}
