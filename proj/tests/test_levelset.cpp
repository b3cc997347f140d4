#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "bvroots/field_builder.hpp"
#include "bvroots/levelset.hpp"

using namespace bvroots;

namespace {

Grid2D square(std::size_t cells) { return Grid2D(-1.0, 1.0, -1.0, 1.0, cells + 1, cells + 1); }

RealField power_of_abs(const ComplexField& f, double e) {
  return map_field(f, [e](const cplx& v) { return std::pow(std::abs(v), e); });
}

}  // namespace

TEST(SignLevel, PositiveAxis) {
  const auto f = build_field("z", square(256));
  const auto c = extract_sign_level(f, 1.0, default_zero_eps(f));
  EXPECT_NEAR(c.total_length, 1.0, 0.01);
  for (const auto& s : c.segments) {
    ASSERT_NEAR(s.p0.y, 0.0, 1e-12);
    ASSERT_GE(std::min(s.p0.x, s.p1.x), -1e-12);
  }
}

TEST(SignLevel, NegativeAxis) {
  const auto f = build_field("z", square(256));
  const auto c = extract_sign_level(f, -1.0, default_zero_eps(f));
  EXPECT_NEAR(c.total_length, 1.0, 0.01);
  for (const auto& s : c.segments) ASSERT_LE(std::max(s.p0.x, s.p1.x), 1e-12);
}

TEST(SignLevel, ConstantIsEmpty) {
  const auto f = build_field("const1", square(32));
  const auto c = extract_sign_level(f, cplx(0.0, 1.0), default_zero_eps(f));
  EXPECT_TRUE(c.empty());
  EXPECT_EQ(c.total_length, 0.0);
}

TEST(SignLevel, Preconditions) {
  const auto f = build_field("z", square(8));
  EXPECT_THROW(extract_sign_level(f, 2.0, 1e-8), std::invalid_argument);
  EXPECT_THROW(extract_sign_level(f, 1.0, 0.0), std::invalid_argument);
}

TEST(SignLevel, InsideBoundingBox) {
  const auto f = build_field("z^3 - 0.2", square(128));
  for (std::size_t j = 0; j < 8; ++j) {
    const cplx y = std::polar(1.0, 2.0 * std::numbers::pi * j / 8.0 + 0.1);
    const auto c = extract_sign_level(f, y, default_zero_eps(f));
    double sum = 0.0;
    for (const auto& s : c.segments) {
      ASSERT_TRUE(f.grid().contains(s.p0));
      ASSERT_TRUE(f.grid().contains(s.p1));
      sum += s.length();
    }
    EXPECT_NEAR(sum, c.total_length, 1e-12);
  }
}

TEST(NormLevel, Circle) {
  const auto c = extract_norm_level(build_field("z", square(256)), 0.5);
  EXPECT_NEAR(c.total_length, std::numbers::pi, 0.02 * std::numbers::pi);
  EXPECT_FALSE(c.degenerate);
}

TEST(NormLevel, AboveMaximum) {
  EXPECT_TRUE(extract_norm_level(build_field("z", square(64)), 2.0).empty());
}

TEST(NormLevel, DegenerateFlag) {
  const auto c = extract_norm_level(build_field("const1", square(32)), 1.0);
  EXPECT_TRUE(c.empty());
  EXPECT_TRUE(c.degenerate);
}

TEST(NormLevel, RejectsNonPositive) {
  EXPECT_THROW(extract_norm_level(build_field("z", square(8)), 0.0), std::invalid_argument);
}

TEST(CurveIntegral, SqrtAlongAxis) {
  const auto f = build_field("z", square(256));
  const auto c = extract_sign_level(f, 1.0, default_zero_eps(f));
  EXPECT_NEAR(curve_integral(c, power_of_abs(f, 0.5)), 2.0 / 3.0, 0.02 * 2.0 / 3.0);
}

TEST(CurveIntegral, ConstantIntegrands) {
  const auto f = build_field("z", square(128));
  const auto c = extract_norm_level(f, 0.7);
  EXPECT_NEAR(curve_integral(c, RealField(f.grid(), 1.0)), c.total_length, 1e-12);
  EXPECT_EQ(curve_integral(c, RealField(f.grid(), 0.0)), 0.0);
}

TEST(LevelSet, RefinementCauchy) {
  for (const char* name : {"z", "z^2", "z(z-1)"}) {
    std::vector<double> len;
    for (std::size_t cells : {128, 256, 512, 1024})
      len.push_back(extract_norm_level(build_field(name, square(cells)), 0.3).total_length);
    const double g1 = std::abs(len[1] - len[0]), g2 = std::abs(len[2] - len[1]), g3 = std::abs(len[3] - len[2]);
    EXPECT_GE(g1, 1.5 * g2) << name;
    EXPECT_GE(g2, 1.5 * g3) << name;
  }
}

TEST(LevelSet, Coarea) {
  const auto f = build_field("z", square(512));
  const auto u = abs_field(f);
  const auto [ux, uy] = gradient(u);
  const double R = 0.9;
  double bulk = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k)
    if (u[k] < R) bulk += std::hypot(ux[k], uy[k]);
  bulk *= f.grid().cell_area();
  double layered = 0.0;
  const int m = 90;
  for (int q = 0; q < m; ++q) layered += extract_norm_level(f, (q + 0.5) * R / m).total_length * R / m;
  EXPECT_NEAR(bulk / layered, 1.0, 0.03);
}

TEST(ConnectedPieces, TwoRays) {
  const auto f = build_field("z^2", square(64));
  const auto c = extract_sign_level(f, 1.0, default_zero_eps(f));
  EXPECT_EQ(connected_pieces(c).size(), 2u);
}
