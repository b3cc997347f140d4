#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "bvroots/cut_select.hpp"
#include "bvroots/field_builder.hpp"

using namespace bvroots;

namespace {

Grid2D square(std::size_t cells) { return Grid2D(-1.0, 1.0, -1.0, 1.0, cells + 1, cells + 1); }

bool is_axis(cplx y) {
  return std::abs(y.real() * y.imag()) < 1e-12;
}

}  // namespace

TEST(ScanDirections, IdentityBestIsAxis) {
  const auto scan = scan_directions(build_field("z", square(256)), 2.0, 16);
  EXPECT_TRUE(is_axis(scan.best.direction));
  EXPECT_NEAR(scan.best.jump_functional, 2.0 / 3.0, 0.03 * 2.0 / 3.0);
  EXPECT_TRUE(scan.best.regular);
  ASSERT_EQ(scan.candidates.size(), 16u);
}

TEST(ScanDirections, Diagonal) {
  const auto scan = scan_directions(build_field("z", square(256)), 2.0, 16);
  const auto& diag = scan.candidates[2];
  EXPECT_NEAR(std::arg(diag.direction), std::numbers::pi / 4.0, 1e-12);
  const double expected = 2.0 / 3.0 * std::pow(2.0, 0.75);
  EXPECT_NEAR(diag.jump_functional, expected, 0.03 * expected);
}

TEST(ScanDirections, TieBreakSmallestIndex) {
  const auto scan = scan_directions(build_field("z", square(256)), 2.0, 16);
  for (std::size_t j = 0; j < scan.best_index; ++j)
    EXPECT_GT(scan.candidates[j].jump_functional, scan.best.jump_functional);
}

TEST(ScanDirections, ConstantField) {
  const auto scan = scan_directions(build_field("const1", square(64)), 3.0, 8);
  EXPECT_EQ(scan.best.jump_functional, 0.0);
  for (const auto& c : scan.candidates) {
    EXPECT_TRUE(c.curve.empty());
    EXPECT_EQ(c.jump_functional, 0.0);
  }
}

TEST(ScanDirections, Preconditions) {
  const auto f = build_field("z", square(32));
  EXPECT_THROW(scan_directions(f, 2.0, 4), std::invalid_argument);
  EXPECT_THROW(scan_directions(build_field("zero", square(32)), 2.0, 16), std::invalid_argument);
}

TEST(ScanDirections, AnchorAndSkipEmpty) {
  const auto f = build_field("z", square(64));
  ScanOptions opt;
  opt.anchor = [](const Segment& s) { return s.midpoint().y > 0.0 || s.midpoint().x < 0.0; };
  opt.skip_empty = true;
  const auto scan = scan_directions(f, 2.0, 16, opt);
  EXPECT_FALSE(scan.best.curve.empty());
}

TEST(LevelTail, IdentityVanishesAboveMax) {
  const auto scan = scan_directions(build_field("z", square(256)), 2.0, 64);
  const auto tail = verify_level_tail(scan, std::numeric_limits<double>::infinity());
  EXPECT_TRUE(tail.monotone);
  for (const auto& e : tail.ladder)
    if (e.threshold > 1.13) EXPECT_EQ(e.fraction, 0.0);
}

TEST(LevelTail, ConstantField) {
  const auto scan = scan_directions(build_field("const1", square(64)), 2.0, 16);
  const auto tail = verify_level_tail(scan, 0.0);
  for (const auto& e : tail.ladder) EXPECT_EQ(e.fraction, 0.0);
  EXPECT_TRUE(tail.passed);
}

TEST(LevelTail, NeedsSixteenCandidates) {
  const auto scan = scan_directions(build_field("z", square(64)), 2.0, 8);
  EXPECT_THROW(verify_level_tail(scan, 1.0), std::invalid_argument);
}

TEST(NormLevelGrowth, Circle) {
  const auto rep = verify_norm_level_growth(build_field("z", square(256)), 2.0, {0.25});
  EXPECT_NEAR(rep.entries[0].value, 0.7854, 0.03 * 0.7854);
}

TEST(NormLevelGrowth, DecreasingLadder) {
  const auto rep = verify_norm_level_growth(build_field("z", square(512)), 2.0, {0.2, 0.1, 0.05});
  for (std::size_t k = 0; k < 3; ++k) {
    const double y = rep.entries[k].level;
    EXPECT_NEAR(rep.entries[k].value, 2.0 * std::numbers::pi * std::pow(y, 1.5), 0.03 * 2.0 * std::numbers::pi * std::pow(y, 1.5));
    if (k) EXPECT_LT(rep.entries[k].value, rep.entries[k - 1].value);
  }
}

TEST(NormLevelGrowth, ConstantFieldEmpty) {
  const auto rep = verify_norm_level_growth(build_field("const1", square(32)), 2.0, {0.5});
  EXPECT_EQ(rep.entries[0].value, 0.0);
}

TEST(NormLevelGrowth, DegenerateLevelThrows) {
  EXPECT_THROW(verify_norm_level_growth(build_field("const1", square(32)), 2.0, {1.0}), Error);
}
