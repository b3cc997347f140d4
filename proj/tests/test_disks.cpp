#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "bvroots/disks.hpp"

using namespace bvroots;

TEST(DisksSpec, CoveredArea) {
  EXPECT_NEAR(make_disks_spec(16).covered_area(), 4.9773, 1e-4);
  EXPECT_NEAR(make_disks_spec(100000).covered_area(), std::pow(std::numbers::pi, 3) / 6.0, 1e-4);
}

TEST(DisksSpec, Disjoint) {
  const auto spec = make_disks_spec(64);
  for (std::size_t a = 0; a < spec.disks.size(); ++a)
    for (std::size_t b = a + 1; b < spec.disks.size(); ++b) {
      const auto& p = spec.disks[a];
      const auto& q = spec.disks[b];
      ASSERT_GT(distance(p.centre, q.centre), p.radius + q.radius) << p.k << ' ' << q.k;
    }
}

TEST(DisksSpec, InsideRectangle) {
  for (const auto& d : make_disks_spec(64).disks) {
    EXPECT_GE(d.centre.x - d.radius, 0.0);
    EXPECT_LE(d.centre.x + d.radius, 4.0);
    EXPECT_GE(d.centre.y - d.radius, 0.0);
    EXPECT_LE(d.centre.y + d.radius, 2.0);
  }
}

TEST(Smoothstep, Endpoints) {
  EXPECT_EQ(smoothstep5(0.0), 0.0);
  EXPECT_EQ(smoothstep5(1.0), 1.0);
  EXPECT_EQ(smoothstep5(-3.0), 0.0);
  EXPECT_EQ(smoothstep5(7.0), 1.0);
  for (double s = 0.0; s < 1.0; s += 0.01) EXPECT_LE(smoothstep5(s), smoothstep5(s + 0.01));
}

TEST(DisksField, VanishesOutsideDisks) {
  const std::size_t N = 16;
  const auto g = disks_grid(N);
  const auto f = build_disks_field(N, g);
  const auto spec = make_disks_spec(N);
  double outside = 0.0;
  for (std::size_t j = 0; j < g.ny(); ++j)
    for (std::size_t i = 0; i < g.nx(); ++i) {
      bool in = false;
      for (const auto& d : spec.disks) in = in || distance(g.node(i, j), d.centre) < d.radius;
      if (!in) outside = std::max(outside, std::abs(f(i, j)));
    }
  EXPECT_EQ(outside, 0.0);
  EXPECT_GT(max_abs(f), 0.0);
}

TEST(DisksField, Preconditions) {
  EXPECT_THROW(build_disks_field(16, disks_grid(2)), Error);
  EXPECT_THROW(build_disks_field(4, Grid2D(0.0, 1.0, 0.0, 1.0, 65, 65)), std::invalid_argument);
}

TEST(DisksField, GradientDecays) {
  const std::size_t N = 16;
  const auto m = disk_gradient_maxima(N, build_disks_field(N, disks_grid(N)));
  for (std::size_t k = 3; k + 1 < N; ++k) EXPECT_GT(m[k - 1], m[k]) << "k=" << k;
}

TEST(DisksCut, SingleDisk) {
  const auto rep = disks_cut_report(1, build_disks_field(1, disks_grid(1)));
  ASSERT_EQ(rep.disks.size(), 1u);
  EXPECT_EQ(rep.disks[0].winding, 1);
  EXPECT_EQ(rep.disks[0].decision, MonodromyDecision::CutRequired);
  EXPECT_GE(rep.total_length, 0.5);
}

TEST(DisksCut, SixteenDisks) {
  const auto rep = disks_cut_report(16, build_disks_field(16, disks_grid(16)));
  EXPECT_GE(rep.total_length, 1.6904);
  for (const auto& d : rep.disks) {
    EXPECT_EQ(d.winding, 1) << d.k;
    EXPECT_GE(d.length, 0.5 / static_cast<double>(d.k)) << d.k;
  }
}

TEST(DisksCut, LowerBoundGrowth) {
  for (std::size_t N : {4, 16, 64}) {
    const double step = half_harmonic(2 * N) - half_harmonic(N);
    EXPECT_NEAR(step, std::log(2.0) / 2.0, 0.1 * std::log(2.0) / 2.0);
  }
  EXPECT_NEAR(half_harmonic(16), 1.6904, 1e-4);
}

TEST(DisksCut, Increasing) {
  double prev = 0.0;
  for (std::size_t N : {4, 16, 64}) {
    const double len = disks_cut_length(N, build_disks_field(N, disks_grid(N)));
    EXPECT_GE(len, half_harmonic(N));
    EXPECT_GT(len, prev);
    prev = len;
  }
  EXPECT_GT(prev, 2.0);
}
