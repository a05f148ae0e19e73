#include <gtest/gtest.h>

#include <filesystem>

#include "generators.hpp"

using namespace covlim;
using covlim::testing::W;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_tower_text(text);
  } catch (const input_error& e) {
    return e.what();
  }
  return "";
}

const char* kMinimal = R"({"base": "wedge", "levels": [{"rank": 1, "subgroup": {"generators": ["x1 x1"]}}]})";

}  // namespace

TEST(ParseTower, Defaults) {
  CoveringTower t = parse_tower_text(kMinimal);
  EXPECT_EQ(t.base, BaseKind::WedgeExpansion);
  EXPECT_EQ(t.horizon, 8u);
  EXPECT_FALSE(t.stationary);
  EXPECT_FALSE(t.regular);
  ASSERT_EQ(t.levels.size(), 1u);
  EXPECT_EQ(t.levels[0].kind, GroupKind::Free);
  EXPECT_FALSE(t.levels[0].bond);
  EXPECT_TRUE(equal_subgroups(std::get<FiniteGenSubgroup>(t.levels[0].subgroup).core,
                              core_from_generators({W("x1 x1", 1)}, 1)));
}

TEST(ParseTower, MissingBondMeansDeletion) {
  CoveringTower t = parse_tower_text(R"({"base": "wedge", "levels": [
      {"rank": 1, "subgroup": {"generators": []}},
      {"rank": 3, "subgroup": {"generators": ["x3"]}}]})");
  EXPECT_TRUE(bond_is_deletion(t, 2));
}

TEST(ParseTower, ExplicitBonds) {
  CoveringTower t = parse_tower_text(R"({"base": "wedge", "levels": [
      {"rank": 1, "subgroup": {"generators": ["x1"]}},
      {"rank": 2, "subgroup": {"generators": ["x1", "x2"]}, "bond": {"images": ["x1", "X1 X1"]}},
      {"rank": 2, "subgroup": {"generators": ["x1"]}, "bond": "identity"}]})");
  const auto& h = std::get<FreeHom>(*t.levels[1].bond);
  EXPECT_EQ(apply_hom(h, W("x2", 2)), W("x1^-2", 1));
  EXPECT_TRUE(bond_is_identity(t, 3));
  CoveringTower a = parse_tower_text(R"({"base": "tower-complete", "levels": [
      {"rank": 1, "kind": "abelian", "subgroup": {"lattice": [[1]]}},
      {"rank": 2, "kind": "abelian", "subgroup": {"lattice": []}, "bond": {"images": [[2], [3]]}}]})");
  EXPECT_EQ(std::get<IntMatrix>(*a.levels[1].bond), (IntMatrix{{2, 3}}));
}

TEST(ParseTower, KernelToFiniteGroup) {
  // ker(F_2 -> Z/2, x1 -> 1, x2 -> 0) contains x1^2 and x2 but not x1
  CoveringTower t = parse_tower_text(R"({"base": "wedge", "levels": [
      {"rank": 2, "subgroup": {"kernel-to": {"type": "Z/2", "images": [[1], [0]]}}}]})");
  const LevelSpec& L = t.level(1);
  EXPECT_TRUE(contains(L, W("x1 x1", 2)));
  EXPECT_TRUE(contains(L, W("x2", 2)));
  EXPECT_TRUE(contains(L, W("[x1,x2]", 2)));
  EXPECT_FALSE(contains(L, W("x1", 2)));
  EXPECT_EQ(*quotient_data(t, 1).order, 2);
}

TEST(ParseTower, KernelToFreeAbelianPower) {
  CoveringTower t = parse_tower_text(R"({"base": "wedge", "levels": [
      {"rank": 2, "subgroup": {"kernel-to": {"type": "Z^2", "images": [[1, 0], [0, 1]]}}}]})");
  EXPECT_TRUE(contains(t.level(1), W("[x1,x2]", 2)));
  EXPECT_FALSE(contains(t.level(1), W("x1", 2)));
  EXPECT_EQ(std::get<LatticeSubgroup>(t.level(1).subgroup).lattice.rank(), 0u);
}

TEST(ParseTower, KernelToModularPower) {
  CoveringTower t = parse_tower_text(R"({"base": "wedge", "levels": [
      {"rank": 2, "subgroup": {"kernel-to": {"type": "Z/3^2", "images": [[1, 0], [1, 1]]}}}]})");
  EXPECT_EQ(*quotient_data(t, 1).order, 9);
  EXPECT_TRUE(contains(t.level(1), W("x1^3", 2)));
  EXPECT_FALSE(contains(t.level(1), W("x1 X2", 2)));
}

TEST(ParseTower, GridCycleKernel) {
  CoveringTower t = parse_tower_text(R"({"base": "countable-pi1", "levels": [
      {"rank": 2, "subgroup": {"grid-cycle-kernel": {"squares": 3}}}]})");
  EXPECT_EQ(std::get<GridCycleKernel>(t.level(1).subgroup).squares, 3u);
}

TEST(ParseTower, ErrorsNameTheField) {
  struct Case {
    const char* text;
    const char* message;
  };
  const Case cases[] = {
      {R"({"base": "wedge"})", "tower: missing field \"levels\""},
      {R"({"base": "plane", "levels": []})", "base: expected wedge"},
      {R"({"base": "wedge", "levels": []})", "levels: expected a non-empty list"},
      {R"({"base": "wedge", "levels": [], "colour": 1})", "tower: unknown field \"colour\""},
      {R"({"format": 2, "base": "wedge", "levels": []})", "format: only format 1"},
      {R"({"base": "wedge", "horizon": 0, "levels": []})", "horizon: must be positive"},
      {R"({"base": "wedge", "stationary": "yes", "levels": []})", "stationary: expected true or false"},
      {R"({"base": "wedge", "levels": [{"rank": 0, "subgroup": {"generators": []}}]})", "levels[0].rank: must be positive"},
      {R"({"base": "wedge", "levels": [{"rank": 1, "subgroup": {"generators": ["x2"]}}]})", "levels[0].subgroup.generators[0]"},
      {R"({"base": "wedge", "levels": [{"rank": 1, "subgroup": {}}]})", "levels[0].subgroup: give exactly one"},
      {R"({"base": "wedge", "levels": [{"rank": 1, "subgroup": {"lattice": [[1]], "generators": []}}]})",
       "levels[0].subgroup: give exactly one"},
      {R"({"base": "wedge", "levels": [{"rank": 1, "kind": "ring", "subgroup": {"generators": []}}]})",
       "levels[0].kind: expected free or abelian"},
      {R"({"base": "wedge", "levels": [{"rank": 1, "kind": "abelian", "subgroup": {"generators": []}}]})",
       "generator lists need a free level"},
      {R"({"base": "wedge", "levels": [{"rank": 2, "subgroup": {"lattice": [[1]]}}]})",
       "levels[0].subgroup.lattice"},
      {R"({"base": "wedge", "levels": [{"rank": 1, "subgroup": {"kernel-to": {"type": "Q", "images": [[1]]}}}]})",
       "kernel-to.type: expected Z^k or Z/m^k"},
      {R"({"base": "wedge", "levels": [{"rank": 1, "subgroup": {"kernel-to": {"type": "Z/0", "images": [[1]]}}}]})",
       "modulus must be positive"},
      {R"({"base": "wedge", "levels": [{"rank": 2, "subgroup": {"kernel-to": {"type": "Z", "images": [[1]]}}}]})",
       "kernel-to.images: expected one image per generator (2)"},
      {R"({"base": "wedge", "levels": [{"rank": 2, "subgroup": {"generators": []}},
                                       {"rank": 1, "subgroup": {"generators": []}}]})",
       "levels[1].bond: deletion projection cannot increase rank"},
      {R"({"base": "wedge", "levels": [{"rank": 1, "subgroup": {"generators": []}},
                                       {"rank": 2, "subgroup": {"generators": []}, "bond": "identity"}]})",
       "levels[1].bond: identity bond needs equal ranks"},
      {R"({"base": "wedge", "levels": [{"rank": 1, "subgroup": {"generators": []}},
                                       {"rank": 1, "subgroup": {"generators": []}, "bond": "twist"}]})",
       "levels[1].bond: unknown bond"},
      {R"({"base": "wedge", "levels": [{"rank": 1, "subgroup": {"generators": []}},
                                       {"rank": 1, "kind": "abelian", "subgroup": {"lattice": []}}]})",
       "levels[1].kind: levels mix"},
      {"{not json", "malformed JSON"},
  };
  for (const auto& c : cases) {
    std::string err = error_of(c.text);
    EXPECT_NE(err.find(c.message), std::string::npos) << c.text << "\n  got: " << err;
  }
}

TEST(ParseTower, MissingFileIsAnInputError) {
  EXPECT_THROW(load_tower_file("/nonexistent/tower.json"), input_error);
}

TEST(Builtins, RoundTripThroughTowerFiles) {
  for (const auto& b : builtin_towers()) {
    std::string text = b.make(5).dump(2);
    CoveringTower t = parse_tower_text(text);
    EXPECT_EQ(t.name, b.name);
    EXPECT_EQ(t.levels.size(), 5u);
    EXPECT_EQ(format_report(t, connectivity_verdict(t)),
              format_report(builtin_tower(b.name, 5), connectivity_verdict(builtin_tower(b.name, 5))));
  }
}

TEST(Builtins, ShippedTowerFilesMatchGenerators) {
  for (const auto& b : builtin_towers()) {
    const std::string path = std::string(COVLIM_SOURCE_DIR) + "/towers/" + b.name + ".json";
    ASSERT_TRUE(std::filesystem::exists(path)) << path;
    CoveringTower shipped = load_tower_file(path);
    EXPECT_EQ(connectivity_verdict(shipped).status, b.expected) << b.name;
  }
}

TEST(Builtins, UnknownNameThrows) { EXPECT_THROW(builtin_tower("moebius"), input_error); }

TEST(Builtins, SolenoidLevelCap) {
  EXPECT_NO_THROW(builtin_tower("solenoid-twist", 61));
  EXPECT_THROW(builtin_tower("solenoid-twist", 62), input_error);
}
