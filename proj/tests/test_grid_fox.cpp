#include <gtest/gtest.h>

#include "generators.hpp"

using namespace covlim;
using covlim::testing::Gen;
using covlim::testing::W;

namespace {

// Third route to F'' in rank 2: the planar grid's cycle space is spanned by
// the unit squares, so a loop is null-homologous iff it winds zero times
// around every square inside its bounding box.
bool planar_winding_oracle(const Word& w) {
  if (!is_in_first_derived(w)) return false;
  GridPath p = lift_to_grid(w);
  std::int64_t lo_x = 0, hi_x = 0, lo_y = 0, hi_y = 0;
  for (const auto& v : p.vertices) {
    lo_x = std::min(lo_x, v[0]);
    hi_x = std::max(hi_x, v[0]);
    lo_y = std::min(lo_y, v[1]);
    hi_y = std::max(hi_y, v[1]);
  }
  for (std::int64_t x = lo_x; x < hi_x; ++x)
    for (std::int64_t y = lo_y; y < hi_y; ++y)
      if (winding_number(p, {x, y}) != 0) return false;
  return true;
}

}  // namespace

TEST(LiftToGrid, EmptyWordStaysAtOrigin) {
  GridPath p = lift_to_grid(Word(2));
  ASSERT_EQ(p.vertices.size(), 1u);
  EXPECT_EQ(p.vertices[0], (GridPoint{0, 0}));
  EXPECT_TRUE(p.closed());
}

TEST(LiftToGrid, CommutatorTracesUnitSquare) {
  GridPath p = lift_to_grid(W("[x1,x2]", 2));
  std::vector<GridPoint> expected{{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0, 0}};
  EXPECT_EQ(p.vertices, expected);
  EXPECT_EQ(p.steps[2], (GridStep{1, -1}));
}

TEST(LiftToGrid, StraightPath) {
  GridPath p = lift_to_grid(W("x1 x1", 2));
  std::vector<GridPoint> expected{{0, 0}, {1, 0}, {2, 0}};
  EXPECT_EQ(p.vertices, expected);
  EXPECT_FALSE(p.closed());
}

TEST(LiftToGrid, EndpointIsExponentVector) {
  Gen gen(21);
  for (int trial = 0; trial < 1000; ++trial) {
    Word w = gen.word(3, 25);
    GridPath p = lift_to_grid(w);
    EXPECT_EQ(p.endpoint(), exponent_vector(w));
    EXPECT_EQ(p.closed(), is_in_first_derived(w));
    for (std::size_t i = 0; i < p.steps.size(); ++i) {
      GridPoint d = p.vertices[i + 1];
      for (std::size_t k = 0; k < d.size(); ++k) d[k] -= p.vertices[i][k];
      GridPoint unit(3, 0);
      unit[p.steps[i].axis - 1] = p.steps[i].sign;
      EXPECT_EQ(d, unit);
    }
  }
}

TEST(GridHomology, ConstantPathIsZero) {
  CycleClass c = grid_homology_class(lift_to_grid(Word(2)));
  EXPECT_TRUE(c.is_zero());
}

TEST(GridHomology, UnitSquareHasOneUnitCoefficient) {
  CycleClass c = grid_homology_class(lift_to_grid(W("[x1,x2]", 2)));
  ASSERT_EQ(c.coefficients.size(), 1u);
  EXPECT_EQ(std::abs(c.coefficients[0]), 1);
}

TEST(GridHomology, DoubleTraversalHasCoefficientTwo) {
  Word c = W("[x1,x2]", 2);
  CycleClass cls = grid_homology_class(lift_to_grid(multiply(c, c)));
  ASSERT_EQ(cls.coefficients.size(), 1u);
  EXPECT_EQ(std::abs(cls.coefficients[0]), 2);
}

TEST(GridHomology, OpenPathThrows) { EXPECT_THROW(grid_homology_class(lift_to_grid(W("x1", 2))), input_error); }

TEST(FoxOracle, CommutatorDerivatives) {
  // d/dx1 [x1,x2] = 1 - t2 and d/dx2 [x1,x2] = t1 - 1 after abelianizing.
  auto d = abelianized_fox_derivatives(W("[x1,x2]", 2));
  ASSERT_EQ(d.size(), 2u);
  LaurentPoly d1{{{0, 0}, 1}, {{0, 1}, -1}};
  LaurentPoly d2{{{1, 0}, 1}, {{0, 0}, -1}};
  EXPECT_EQ(d[0], d1);
  EXPECT_EQ(d[1], d2);
}

TEST(SecondDerived, Examples) {
  Word c = W("[x1,x2]", 2);
  Word nested = commutator(c, conjugate(c, W("x1", 2)));
  EXPECT_FALSE(is_in_second_derived(c));
  EXPECT_FALSE(fox_oracle_second_derived(c));
  EXPECT_TRUE(is_in_second_derived(nested));
  EXPECT_TRUE(fox_oracle_second_derived(nested));
  EXPECT_FALSE(is_in_second_derived(W("x1", 2)));
  EXPECT_FALSE(fox_oracle_second_derived(W("x1", 2)));
}

TEST(SecondDerived, ImpliesFirstDerived) {
  Gen gen(22);
  for (int trial = 0; trial < 2000; ++trial) {
    Word w = gen.word(2, 16);
    if (is_in_second_derived(w)) { EXPECT_TRUE(is_in_first_derived(w)); }
  }
}

TEST(SecondDerived, CommutatorsOfDerivedElementsAreMembers) {
  Gen gen(23);
  for (int trial = 0; trial < 1000; ++trial) {
    const int rank = trial % 2 ? 3 : 2;
    Word w(rank);
    for (int k = 0, n = static_cast<int>(gen.uniform(1, 2)); k < n; ++k)
      w = multiply(w, commutator(gen.derived_element(rank, 3), gen.derived_element(rank, 3)));
    ASSERT_TRUE(is_in_second_derived(w)) << to_string(w);
  }
}

TEST(SecondDerived, AgreesWithFoxOracleOnDerivedWords) {
  // Random words rarely lie in F'; these all do, so both outcomes occur.
  Gen gen(24);
  int members = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int rank = trial % 2 ? 3 : 2;
    Word w = gen.derived_element(rank, 4);
    if (gen.coin()) w = multiply(w, commutator(gen.derived_element(rank, 2), gen.derived_element(rank, 2)));
    bool grid = is_in_second_derived(w);
    members += grid;
    ASSERT_EQ(grid, fox_oracle_second_derived(w)) << to_string(w);
  }
  EXPECT_GT(members, 0);
  EXPECT_LT(members, 1000);
}

TEST(SecondDerived, AgreesWithPlanarWindingOracle) {
  Gen gen(25);
  for (int trial = 0; trial < 1000; ++trial) {
    Word w = trial % 2 ? gen.derived_element(2, 4) : gen.word(2, 12);
    ASSERT_EQ(is_in_second_derived(w), planar_winding_oracle(w)) << to_string(w);
  }
}

TEST(Plaquettes, LoopWindsOnceAroundItsSquareOnly) {
  auto order = plaquette_order(12);
  for (const auto& sq : order) {
    GridPath p = lift_to_grid(plaquette_loop(sq));
    for (const auto& other : order) EXPECT_EQ(winding_number(p, other), sq == other ? 1 : 0);
  }
}

TEST(Plaquettes, RingOrderStartsAroundOrigin) {
  auto first = plaquette_order(4);
  std::vector<Plaquette> expected{{-1, -1}, {-1, 0}, {0, -1}, {0, 0}};
  EXPECT_EQ(first, expected);
  auto more = plaquette_order(16);
  EXPECT_EQ(std::set<Plaquette>(more.begin(), more.end()).size(), 16u);
}
