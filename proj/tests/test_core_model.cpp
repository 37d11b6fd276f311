#include <gtest/gtest.h>

#include <random>

#include "kinex/core_model.hpp"
#include "oracles.hpp"

using namespace kinex;

TEST(ResolveLevels, AppendixRows) {
  EXPECT_EQ(resolve_levels(DofGroup::continuous("head yaw", 1, -119.5, 119.5, 0.1)), 2390u);
  EXPECT_EQ(resolve_levels(DofGroup::continuous("asimo", 1, 0, 150, 0.08)), 1875u);
  EXPECT_EQ(resolve_levels(DofGroup::continuous("theta", 100, -1.5, 1.5, 0.1, "rad")), 30u);
  // No endpoint term: span 86.5 at 0.1 is 865, not 866.
  EXPECT_EQ(resolve_levels(DofGroup::continuous("shoulder roll", 2, -88.5, -2, 0.1)), 865u);
}

TEST(ResolveLevels, DiscretePassThrough) {
  EXPECT_EQ(resolve_levels(DofGroup::discrete("gripper", 1, 2)), 2u);
  EXPECT_EQ(resolve_levels(DofGroup::discrete("one", 7, 1)), 1u);
}

TEST(ResolveLevels, NonIntegralSpanStrictAndLenient) {
  auto g = DofGroup::continuous("odd", 1, 0, 10.05, 0.1);
  EXPECT_THROW(resolve_levels(g, Strictness::strict), NonIntegralSpan);
  EXPECT_EQ(resolve_levels(g, Strictness::lenient), 101u);  // 100.5, half rounds away from zero
  try {
    resolve_levels(g);
    FAIL();
  } catch (const NonIntegralSpan& e) {
    EXPECT_EQ(e.label(), "odd");
    EXPECT_NEAR(e.ratio(), 100.5, 1e-9);
  }
}

TEST(DofGroup, RejectsInvariantViolations) {
  EXPECT_THROW(DofGroup::discrete("m0", 0, 2), ModelError);
  EXPECT_THROW(DofGroup::discrete("s0", 1, 0), ModelError);
  EXPECT_THROW(DofGroup::continuous("flat", 1, 10, 10, 0.1), ModelError);
  EXPECT_THROW(DofGroup::continuous("inverted", 1, 10, 5, 0.1), ModelError);
  EXPECT_THROW(DofGroup::continuous("zero res", 1, 0, 5, 0), ModelError);
  EXPECT_THROW(DofGroup::continuous("coarse", 1, 0, 0.05, 0.1), ModelError);
  EXPECT_THROW(DofGroup::continuous("nan", 1, 0, std::nan(""), 0.1), ModelError);
}

TEST(Platform, RejectsEmptyNameAndDuplicateLabels) {
  EXPECT_THROW(Platform("", PlatformKind::artificial, {}), ModelError);
  EXPECT_THROW(Platform("p", PlatformKind::artificial,
                        {DofGroup::discrete("a", 1, 2), DofGroup::discrete("a", 1, 3)}),
               ModelError);
  EXPECT_NO_THROW(Platform("empty", PlatformKind::natural, {}));
}

TEST(MechanicalGroups, DropsNonMechanicalTag) {
  Platform robot("simple-robot", PlatformKind::artificial,
                 {DofGroup::discrete("gripper", 1, 2), DofGroup::continuous("servo", 2, 0, 360, 0.1),
                  DofGroup::discrete("led", 1, 2, {kNonMechanicalTag})});
  auto mech = mechanical_groups(robot);
  ASSERT_EQ(mech.size(), 2u);
  EXPECT_EQ(mech[0].label(), "gripper");
  EXPECT_EQ(mech[1].label(), "servo");
}

TEST(MechanicalGroups, NoTagsIsIdentityAllTaggedIsEmpty) {
  Platform plain("p", PlatformKind::artificial, {DofGroup::discrete("a", 1, 2), DofGroup::discrete("b", 3, 4)});
  EXPECT_EQ(mechanical_groups(plain), plain.groups());
  Platform lights("q", PlatformKind::artificial,
                  {DofGroup::discrete("a", 1, 2, {kNonMechanicalTag}), DofGroup::discrete("b", 1, 2, {kNonMechanicalTag})});
  EXPECT_TRUE(mechanical_groups(lights).empty());
}

TEST(ResolveLevelsProperty, ScaleInvariant) {
  std::mt19937_64 rng(11);
  const double scales[] = {0.001, 0.5, 3.0, 17.0, 1e4};
  for (int i = 0; i < 500; ++i) {
    std::uint64_t levels = 1 + rng() % 5000;
    double res = 0.01 * static_cast<double>(1 + rng() % 100);
    double min = static_cast<double>(static_cast<int>(rng() % 1000) - 500) * res;
    auto base = DofGroup::continuous("g", 1, min, min + static_cast<double>(levels) * res, res);
    ASSERT_EQ(resolve_levels(base), levels);
    for (double s : scales) {
      auto scaled = DofGroup::continuous("g", 1, min * s, (min + static_cast<double>(levels) * res) * s, res * s);
      EXPECT_EQ(resolve_levels(scaled), levels) << "scale " << s;
    }
  }
}

TEST(ResolveLevelsProperty, HalvingResolutionDoubles) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 500; ++i) {
    std::uint64_t levels = 1 + rng() % 5000;
    double res = 0.125 * static_cast<double>(1 + rng() % 16);
    double min = static_cast<double>(static_cast<int>(rng() % 200) - 100);
    double max = min + static_cast<double>(levels) * res;
    EXPECT_EQ(resolve_levels(DofGroup::continuous("g", 1, min, max, res / 2)),
              2 * resolve_levels(DofGroup::continuous("g", 1, min, max, res)));
  }
}

TEST(MechanicalGroupsProperty, SubMultiset) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 200; ++i) {
    std::vector<DofGroup> groups;
    int n = static_cast<int>(rng() % 8);
    for (int k = 0; k < n; ++k) {
      std::set<std::string> tags;
      if (rng() % 3 == 0) tags.insert(kNonMechanicalTag);
      if (rng() % 4 == 0) tags.insert("other");
      groups.push_back(DofGroup::discrete("g" + std::to_string(k), 1 + rng() % 3, 1 + rng() % 9, tags));
    }
    Platform p("p", PlatformKind::artificial, groups);
    auto mech = mechanical_groups(p);
    std::size_t cursor = 0;
    for (const auto& g : mech) {
      EXPECT_FALSE(g.has_tag(kNonMechanicalTag));
      while (cursor < groups.size() && !(groups[cursor] == g)) ++cursor;
      ASSERT_LT(cursor, groups.size()) << "mechanical group not found in order";
      ++cursor;
    }
  }
}
