#include <gtest/gtest.h>

#include <cmath>

#include "bvroots/expr.hpp"
#include "bvroots/field_builder.hpp"
#include "bvroots/grid.hpp"

using namespace bvroots;

namespace {

Grid2D square(std::size_t cells) { return Grid2D(-1.0, 1.0, -1.0, 1.0, cells + 1, cells + 1); }

}  // namespace

TEST(BuildField, IdentitySampling) {
  const auto f = build_field("z", square(2));
  EXPECT_EQ(f(2, 1), cplx(1.0, 0.0));
  EXPECT_EQ(f(1, 2), cplx(0.0, 1.0));
}

TEST(BuildField, SquareAtI) {
  const auto f = build_field("z^2", square(2));
  EXPECT_NEAR(std::abs(f(1, 2) - cplx(-1.0, 0.0)), 0.0, 1e-15);
}

TEST(BuildField, DisksBuiltin) {
  const auto g = disks_grid(4);
  const auto a = build_field("disks(4)", g);
  const auto b = build_disks_field(4, g);
  for (std::size_t k = 0; k < a.size(); ++k) ASSERT_EQ(a[k], b[k]);
}

TEST(BuildField, Errors) {
  EXPECT_THROW(build_field(FunctionSpec::builtin("nope"), square(4)), std::invalid_argument);
  EXPECT_THROW(build_field("1/x", square(4)), Error);
  EXPECT_THROW(build_field("z +", square(4)), ExprError);
}

TEST(BuildField, Deterministic) {
  const auto a = build_field("sin(z)*exp(x)", square(16));
  const auto b = build_field("sin(z)*exp(x)", square(16));
  for (std::size_t k = 0; k < a.size(); ++k) ASSERT_EQ(a[k], b[k]);
}

TEST(Expression, Basics) {
  EXPECT_NEAR(std::abs(Expression("i^2")({}) + 1.0), 0.0, 1e-15);
  EXPECT_NEAR(Expression("2*pi")({}).real(), 2.0 * M_PI, 1e-15);
  EXPECT_NEAR(Expression("\xe2\x88\x92t")(ExprVars{{}, {}, {}, 3.0}).real(), -3.0, 0.0);
}

TEST(Gradient, AffineExact) {
  const auto f = build_field("z", square(32));
  const auto [dx, dy] = gradient(f);
  for (std::size_t k = 0; k < f.size(); ++k) {
    ASSERT_LE(std::abs(dx[k] - cplx(1.0, 0.0)), 1e-12);
    ASSERT_LE(std::abs(dy[k] - cplx(0.0, 1.0)), 1e-12);
  }
}

TEST(Gradient, ConstantIsZero) {
  const auto f = build_field("3-2*i", square(16));
  const auto [dx, dy] = gradient(f);
  EXPECT_EQ(max_abs(dx), 0.0);
  EXPECT_EQ(max_abs(dy), 0.0);
}

TEST(Gradient, Quadratic) {
  const auto f = build_field("z^2", square(64));
  const auto dx = derivative_x(f);
  // node 1+i is the top-right corner
  EXPECT_NEAR(std::abs(dx(64, 64) - cplx(2.0, 2.0)), 0.0, 1e-10);
  EXPECT_NEAR(std::abs(dx(48, 48) - cplx(1.0, 1.0)), 0.0, 1e-10);
}

TEST(Gradient, TooSmall) {
  const ComplexField f(Grid2D(0, 1, 0, 1, 2, 2));
  EXPECT_THROW(derivative_x(f), std::invalid_argument);
}

TEST(HolderNorm, LinearCoordinate) {
  const auto h = holder_norm_estimate(build_field("x1", square(64)), 0, 1.0);
  EXPECT_NEAR(h.total, 2.0, 1e-9);
}

TEST(HolderNorm, Constant) {
  const auto f = build_field("3+4*i", square(32));
  for (int k : {0, 1, 2}) EXPECT_NEAR(holder_norm_estimate(f, k, 0.5).total, 5.0, 1e-12);
}

TEST(HolderNorm, Identity) {
  const auto h = holder_norm_estimate(build_field("z", square(64)), 1, 1.0);
  EXPECT_NEAR(h.sup_derivatives, std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(h.hoelder_seminorm, 0.0, 1e-9);
  ASSERT_EQ(h.sup_by_order.size(), 2u);
  EXPECT_NEAR(h.sup_by_order[1], 1.0, 1e-12);
}

TEST(HolderNorm, ScalesLinearly) {
  const auto f = build_field("z^2 + x", square(64));
  const auto a = holder_norm_estimate(f, 1, 1.0);
  const auto b = holder_norm_estimate(scale_field(f, 4.0), 1, 1.0);
  EXPECT_NEAR(b.total / a.total, 4.0, 4.0 * 1e-10);
  const auto c = holder_norm_estimate(scale_field(f, cplx(0.0, -2.5)), 1, 1.0);
  EXPECT_NEAR(c.total / a.total, 2.5, 2.5 * 1e-10);
}

TEST(HolderNorm, Refinement) {
  for (const char* name : {"z", "z^2", "z^3", "z(z-1)"}) {
    double prev = 0.0;
    for (std::size_t cells : {64, 128, 256}) {
      const double t = holder_norm_estimate(build_field(name, square(cells)), 1, 1.0).total;
      if (prev > 0.0) EXPECT_GE(t, prev * 0.98) << name << " at " << cells;
      prev = t;
    }
  }
}

TEST(HolderNorm, Preconditions) {
  const auto f = build_field("z", square(4));
  EXPECT_THROW(holder_norm_estimate(f, 1, 0.0), std::invalid_argument);
  EXPECT_THROW(holder_norm_estimate(f, 1, 1.5), std::invalid_argument);
  EXPECT_THROW(holder_norm_estimate(f, 6, 1.0), std::invalid_argument);
}

TEST(ScaleField, Trivial) {
  const auto f = build_field("z^2", square(8));
  const auto one = scale_field(f, 1.0);
  const auto zero = scale_field(f, 0.0);
  for (std::size_t k = 0; k < f.size(); ++k) {
    ASSERT_EQ(one[k], f[k]);
    ASSERT_EQ(zero[k], cplx(0.0));
  }
}
