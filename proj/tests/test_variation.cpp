#include <gtest/gtest.h>

#include <cmath>

#include "bvroots/cut_select.hpp"
#include "bvroots/field_builder.hpp"
#include "bvroots/variation.hpp"

using namespace bvroots;

namespace {

Grid2D square(std::size_t cells) { return Grid2D(-1.0, 1.0, -1.0, 1.0, cells + 1, cells + 1); }

SbvField sqrt_with_axis_cut(std::size_t cells) {
  const auto f = build_field("z", square(cells));
  BranchCut cut;
  cut.direction = 1.0;
  cut.curve = extract_sign_level(f, 1.0, default_zero_eps(f));
  return construct_radical(f, 2.0, cut);
}

}  // namespace

TEST(Variation, ConstantOnUnitSquare) {
  const ComplexField lambda(Grid2D(0.0, 1.0, 0.0, 1.0, 33, 33), cplx(3.0, 4.0));
  const auto v = variation_decompose(lambda, {}, nullptr, 1.0);
  EXPECT_NEAR(v.l1, 5.0, 1e-12);
  EXPECT_EQ(v.ac_part, 0.0);
  EXPECT_EQ(v.jump_part, 0.0);
  EXPECT_NEAR(v.bv_total, 5.0, 1e-12);
}

TEST(Variation, LinearCoordinate) {
  const auto v = variation_decompose(build_field("x1", square(128)), {}, nullptr, 2.0);
  EXPECT_NEAR(v.ac_part, 4.0, 0.04);
  EXPECT_NEAR(v.l1, 2.0, 0.01);
}

TEST(Variation, SqrtJumpPart) {
  const auto v = variation_decompose(sqrt_with_axis_cut(256), 1.0);
  EXPECT_NEAR(v.jump_part, 4.0 / 3.0, 0.04 * 4.0 / 3.0);
  EXPECT_NEAR(v.bv_total, v.l1 + v.ac_part + v.jump_part, 1e-12);
}

TEST(Variation, Homogeneity) {
  const auto sbv = sqrt_with_axis_cut(128);
  const auto a = variation_decompose(sbv, 2.0);
  for (cplx c : {cplx(3.0, 0.0), cplx(0.0, -0.5), cplx(1.5, 2.0)}) {
    const auto b = variation_decompose(scale_selection(sbv, c), 2.0);
    const double s = std::abs(c);
    EXPECT_NEAR(b.l1, s * a.l1, 1e-10 * s * a.l1);
    EXPECT_NEAR(b.ac_part, s * a.ac_part, 1e-10 * s * a.ac_part);
    EXPECT_NEAR(b.jump_part, s * a.jump_part, 1e-10 * s * a.jump_part);
    EXPECT_NEAR(b.weak_lp, s * a.weak_lp, 1e-10 * s * a.weak_lp);
  }
}

TEST(Variation, RejectsSmallP) {
  EXPECT_THROW(variation_decompose(sqrt_with_axis_cut(32), 0.5), std::invalid_argument);
}

TEST(WeakLp, Zero) {
  const std::vector<double> v(100, 0.0);
  EXPECT_EQ(weak_lp_quasinorm(v, 2.0, 0.01), 0.0);
}

TEST(WeakLp, SingleCell) {
  const std::vector<double> v{3.0};
  EXPECT_NEAR(weak_lp_quasinorm(v, 2.0, 0.25), 3.0 * 0.5, 1e-15);
}

TEST(WeakLp, SqrtDerivative) {
  const auto f = Samples1D::sample([](double t) { return t; }, -1.0, 1.0, 100001);
  const auto d = radical_derivative_1d(f, 2.0);
  EXPECT_NEAR(weak_lp_quasinorm(d, 2.0, f.step()), 1.0 / std::sqrt(2.0), 0.02 / std::sqrt(2.0));
}

TEST(WeakLp, Errors) {
  EXPECT_THROW(weak_lp_quasinorm(std::vector<double>{}, 2.0, 1.0), std::invalid_argument);
  EXPECT_THROW(weak_lp_quasinorm(std::vector<double>{1.0}, 0.9, 1.0), std::invalid_argument);
}

TEST(GGCheck, Identity) {
  const auto rep = gg_check_1d(Samples1D::sample([](double t) { return t; }, -1.0, 1.0, 100001), 2.0, 1, 1.0);
  EXPECT_NEAR(rep.lhs, 1.0 / std::sqrt(2.0), 0.02 / std::sqrt(2.0));
  EXPECT_NEAR(rep.rhs_core, 1.0, 1e-9);
  EXPECT_DOUBLE_EQ(rep.p, 2.0);
}

TEST(GGCheck, Constant) {
  const auto rep = gg_check_1d(Samples1D::sample([](double) { return 1.0; }, -1.0, 1.0, 1001), 2.0, 1, 1.0);
  EXPECT_EQ(rep.lhs, 0.0);
}

TEST(GGCheck, Square) {
  const auto rep = gg_check_1d(Samples1D::sample([](double t) { return t * t; }, -1.0, 1.0, 100001), 2.0, 1, 1.0);
  EXPECT_NEAR(rep.lhs, std::sqrt(2.0), 0.02 * std::sqrt(2.0));
}

TEST(GGCheck, ExponentMismatch) {
  const auto f = Samples1D::sample([](double t) { return t; }, -1.0, 1.0, 101);
  EXPECT_THROW(gg_check_1d(f, 2.5, 1, 1.0), std::invalid_argument);
}

TEST(RadicalBound, ConstantGivesArea) {
  const auto f = build_field("3+4*i", square(64));
  const auto sbv = construct_radical(f, 2.0, std::nullopt);
  const auto rep = verify_radical_bound(sbv, holder_norm_estimate(f, 2, 1.0));
  EXPECT_NEAR(rep.ratio, 4.0, 1e-9);
}

TEST(RadicalBound, Homogeneous) {
  const auto f = build_field("z", square(128));
  const auto scan = scan_directions(f, 2.0, 16);
  const auto a = verify_radical_bound(construct_radical(f, 2.0, scan.best), holder_norm_estimate(f, 2, 1.0));
  const auto g = scale_field(f, 9.0);
  const auto b = verify_radical_bound(construct_radical(g, 2.0, scan.best), holder_norm_estimate(g, 2, 1.0));
  EXPECT_NEAR(b.ratio, a.ratio, 1e-6 * a.ratio);
}

TEST(RadicalBound, NeedsEnoughSmoothness) {
  const auto f = build_field("z", square(32));
  const auto sbv = construct_radical(f, 1.0 / 3.0, std::nullopt);
  EXPECT_THROW(verify_radical_bound(sbv, holder_norm_estimate(f, 0, 1.0)), std::invalid_argument);
}

TEST(OffCutSeminorm, LinearCoordinate) {
  SbvField sbv;
  sbv.lambda = build_field("x1", square(64));
  sbv.zero_mask = Mask(sbv.lambda.grid(), 0);
  const auto s = off_cut_lp_seminorm(sbv, 2.0);
  EXPECT_NEAR(s.energy, 4.0, 1e-9);
  EXPECT_NEAR(s.norm, 2.0, 1e-9);
}
