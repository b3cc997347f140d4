#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "bvroots/cut_select.hpp"
#include "bvroots/field_builder.hpp"
#include "bvroots/radical.hpp"

using namespace bvroots;

namespace {

Grid2D square(std::size_t cells) { return Grid2D(-1.0, 1.0, -1.0, 1.0, cells + 1, cells + 1); }

BranchCut axis_cut(const ComplexField& f, cplx y) {
  BranchCut c;
  c.direction = y;
  c.curve = extract_sign_level(f, y, default_zero_eps(f));
  return c;
}

}  // namespace

TEST(DetectRational, Cases) {
  EXPECT_EQ(detect_rational(3.0).kind, Rationality::Kind::Integer);
  const auto q = detect_rational(2.0 / 5.0);
  EXPECT_EQ(q.kind, Rationality::Kind::Rational);
  EXPECT_EQ(q.num, 2);
  EXPECT_EQ(q.den, 5);
  EXPECT_EQ(detect_rational(std::sqrt(2.0)).kind, Rationality::Kind::Irrational);
  EXPECT_EQ(detect_rational(std::numbers::pi).kind, Rationality::Kind::Irrational);
  EXPECT_THROW(detect_rational(0.0), std::invalid_argument);
}

TEST(ReduceExponent, PowerOnly) {
  const auto p = reduce_exponent(1.0 / 3.0);
  EXPECT_EQ(p.kind, RadicalCase::PowerOnly);
  EXPECT_EQ(p.prepower, 3);
}

TEST(ReduceExponent, PowerTimesRadical) {
  const auto p = reduce_exponent(2.0 / 5.0);
  EXPECT_EQ(p.kind, RadicalCase::PowerTimesRadical);
  EXPECT_EQ(p.prepower, 2);
  EXPECT_DOUBLE_EQ(p.reduced_r, 2.0);
}

TEST(ReduceExponent, Direct) {
  EXPECT_EQ(reduce_exponent(2.5).kind, RadicalCase::Direct);
  EXPECT_EQ(reduce_exponent(2.0).kind, RadicalCase::Direct);
  EXPECT_THROW(reduce_exponent(-1.0), std::invalid_argument);
  EXPECT_THROW(reduce_exponent(0.0), std::invalid_argument);
}

TEST(Monodromy, Identity) {
  const auto m = classify_monodromy(build_field("z", square(64)), 2.0);
  ASSERT_EQ(m.winding_numbers, std::vector<long long>{1});
  EXPECT_EQ(m.decision, MonodromyDecision::CutRequired);
}

TEST(Monodromy, Square) {
  const auto m = classify_monodromy(build_field("z^2", square(64)), 2.0);
  ASSERT_EQ(m.winding_numbers, std::vector<long long>{2});
  EXPECT_EQ(m.decision, MonodromyDecision::ContinuousExists);
}

TEST(Monodromy, IrrationalExponent) {
  const auto m = classify_monodromy(build_field("z", square(64)), std::sqrt(2.0));
  ASSERT_EQ(m.winding_numbers, std::vector<long long>{1});
  EXPECT_EQ(m.decision, MonodromyDecision::CutRequired);
}

TEST(Monodromy, TwoClusters) {
  const auto m = classify_monodromy(build_field("z*(z-1)", Grid2D(-1.0, 2.0, -1.0, 1.0, 97, 65)), 2.0);
  ASSERT_EQ(m.winding_numbers, (std::vector<long long>{1, 1}));
  EXPECT_EQ(m.decision, MonodromyDecision::CutRequired);
}

TEST(Monodromy, BoundaryClusterThrows) {
  EXPECT_THROW(classify_monodromy(build_field("z-1", square(32)), 2.0), Error);
}

TEST(Monodromy, NoZeros) {
  const auto m = classify_monodromy(build_field("const1", square(32)), std::sqrt(3.0));
  EXPECT_TRUE(m.winding_numbers.empty());
  EXPECT_EQ(m.decision, MonodromyDecision::ContinuousExists);
}

TEST(ConstructRadical, SquareWithoutCut) {
  const auto f = build_field("z^2", square(64));
  const auto sbv = construct_radical(f, 2.0, std::nullopt);
  // one consistent sign: lambda = s z with s fixed
  cplx s{};
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (sbv.zero_mask[k]) continue;
    const cplx z(f.grid().x(k % f.grid().nx()), f.grid().y(k / f.grid().nx()));
    const cplx ratio = sbv.lambda[k] / z;
    if (s == cplx{}) s = ratio;
    ASSERT_LE(std::abs(ratio - s), 1e-12);
    ASSERT_LE(std::abs(sbv.lambda[k] * sbv.lambda[k] - f[k]), 1e-12);
  }
  EXPECT_NEAR(std::abs(std::abs(s) - 1.0), 0.0, 1e-12);
}

TEST(ConstructRadical, JumpAcrossAxisCut) {
  const auto f = build_field("z", square(256));
  const auto sbv = construct_radical(f, 2.0, axis_cut(f, 1.0));
  const Grid2D& g = f.grid();
  // nodes just above and below the positive real axis
  for (std::size_t i = 160; i < 256; i += 16) {
    const double t = g.x(i);
    const cplx up = sbv.lambda(i, 129), down = sbv.lambda(i, 127);
    EXPECT_NEAR(std::abs(up - down), 2.0 * std::sqrt(t), 0.02);
  }
}

TEST(ConstructRadical, PointwiseEquation) {
  for (double r : {2.0, 3.0, 2.5, std::sqrt(2.0)}) {
    const auto f = build_field("z^2 - 0.25", square(128));
    const auto scan = scan_directions(f, reduce_exponent(r).reduced_r, 16);
    const auto sbv = construct_radical(f, r, scan.best);
    double worst = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) {
      if (sbv.zero_mask[k]) continue;
      const double a = std::abs(f[k]);
      worst = std::max(worst, std::abs(std::pow(std::abs(sbv.lambda[k]), r) - a) / a);
      if (r == 2.0 || r == 3.0)
        worst = std::max(worst, std::abs(std::pow(sbv.lambda[k], static_cast<int>(r)) - f[k]) / a);
    }
    EXPECT_LE(worst, 1e-8) << "r=" << r;
  }
}

TEST(ConstructRadical, ZeroField) {
  const auto sbv = construct_radical(build_field("zero", square(16)), 2.0, std::nullopt);
  EXPECT_EQ(max_abs(sbv.lambda), 0.0);
}

TEST(ConstructRadical, MissingCutThrows) {
  EXPECT_THROW(construct_radical(build_field("z", square(32)), 2.0, std::nullopt), Error);
}

TEST(ConstructRadical, PowerOnlyPlan) {
  const auto f = build_field("z", square(16));
  const auto sbv = construct_radical(f, 1.0 / 3.0, std::nullopt);
  for (std::size_t k = 0; k < f.size(); ++k) ASSERT_LE(std::abs(sbv.lambda[k] - f[k] * f[k] * f[k]), 1e-15);
}

TEST(ConstructRadical, PowerTimesRadicalPlan) {
  const auto f = build_field("z", square(64));
  const auto sbv = construct_radical(f, 2.0 / 5.0, axis_cut(f, 1.0));
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (sbv.zero_mask[k]) continue;
    const cplx f5 = f[k] * f[k] * f[k] * f[k] * f[k];
    ASSERT_LE(std::abs(sbv.lambda[k] * sbv.lambda[k] - f5), 1e-12 * (1.0 + std::abs(f5)));
  }
}
