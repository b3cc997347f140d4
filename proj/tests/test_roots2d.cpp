#include <gtest/gtest.h>

#include <cmath>

#include "bvroots/field_builder.hpp"
#include "bvroots/roots2d.hpp"

using namespace bvroots;

namespace {

Grid2D square(std::size_t cells) { return Grid2D(-1.0, 1.0, -1.0, 1.0, cells + 1, cells + 1); }

std::vector<ComplexField> coefficients(const std::string& name, std::size_t cells) {
  return build_coefficients(find_polynomial(name)->coeffs, square(cells));
}

}  // namespace

TEST(CycleNotation, Formats) {
  EXPECT_EQ(cycle_notation({0, 1, 2}), "()");
  EXPECT_EQ(cycle_notation({1, 0}), "(1 2)");
  EXPECT_EQ(cycle_notation({1, 2, 0, 3, 5, 4}), "(1 2 3)(5 6)");
  EXPECT_TRUE(is_identity({0, 1}));
  EXPECT_FALSE(is_identity({1, 0}));
}

TEST(DiscriminantField, Quadratic) {
  const auto g = square(16);
  const std::vector<ComplexField> a{build_field("x + 2*i*y", g), build_field("z^2 - 3", g)};
  const auto d = discriminant_field(a);
  for (std::size_t k = 0; k < d.size(); ++k) ASSERT_LE(std::abs(d[k] - (a[0][k] * a[0][k] - 4.0 * a[1][k])), 1e-12);
}

TEST(DiscriminantField, SqrtZ) {
  const auto a = coefficients("Z^2-z", 16);
  const auto d = discriminant_field(a);
  const Grid2D& g = d.grid();
  for (std::size_t j = 0; j < g.ny(); ++j)
    for (std::size_t i = 0; i < g.nx(); ++i) ASSERT_LE(std::abs(d(i, j) - 4.0 * cplx(g.x(i), g.y(j))), 1e-12);
}

TEST(DiscriminantField, ConstantSeparable) {
  const auto d = discriminant_field(coefficients("Z^2-1", 8));
  for (std::size_t k = 0; k < d.size(); ++k) ASSERT_EQ(d[k], cplx(4.0));
  EXPECT_THROW(discriminant_field({build_field("z", square(4))}), std::invalid_argument);
}

TEST(PlaquetteHolonomy, AroundOrigin) {
  const auto a = coefficients("Z^2-z", 32);
  const auto p = plaquette_holonomy(a, rectangle_loop(a[0].grid(), 8, 8, 24, 24));
  EXPECT_EQ(cycle_notation(p), "(1 2)");
}

TEST(PlaquetteHolonomy, AwayFromOrigin) {
  const auto a = coefficients("Z^2-z", 32);
  EXPECT_TRUE(is_identity(plaquette_holonomy(a, rectangle_loop(a[0].grid(), 20, 20, 30, 30))));
}

TEST(PlaquetteHolonomy, SingleValuedRoots) {
  const auto a = coefficients("Z^2-z^2", 32);
  EXPECT_TRUE(is_identity(plaquette_holonomy(a, rectangle_loop(a[0].grid(), 8, 8, 24, 24))));
}

TEST(PlaquetteHolonomy, TooCloseThrows) {
  const auto a = coefficients("Z^2-z", 32);
  EXPECT_THROW(plaquette_holonomy(a, rectangle_loop(a[0].grid(), 14, 14, 16, 16), 1.0), Error);
}

TEST(BuildRootField, SqrtZ) {
  const auto rf = build_root_field(coefficients("Z^2-z", 256), 16);
  EXPECT_EQ(rf.cuts.size(), 1u);
  EXPECT_EQ(connected_pieces(rf.cut).size(), 1u);
  EXPECT_TRUE(rf.holonomy.nontrivial);
  EXPECT_LE(rf.max_reconstruction_error, 1e-8);
  EXPECT_EQ(nontrivial_plaquettes(rf), 0u);
  ASSERT_EQ(rf.variation.size(), 2u);
  for (const auto& v : rf.variation) EXPECT_NEAR(v.jump_part, 4.0 / 3.0, 0.04 * 4.0 / 3.0);
  EXPECT_FALSE(rf.cut_edges.empty());
  for (double j : rf.cut_jumps) EXPECT_GT(j, 0.0);
}

TEST(BuildRootField, SmoothFactorization) {
  const auto rf = build_root_field(coefficients("Z^2-z^2", 128), 16);
  EXPECT_TRUE(rf.cuts.empty());
  EXPECT_FALSE(rf.holonomy.nontrivial);
  ASSERT_EQ(rf.variation.size(), 2u);
  for (const auto& v : rf.variation) {
    EXPECT_NEAR(v.ac_part, 4.0, 0.04);
    EXPECT_EQ(v.jump_part, 0.0);
  }
  // sheets are +z and -z
  const Grid2D& g = rf.grid;
  const std::size_t k = g.index(100, 30);
  const cplx z(g.x(100), g.y(30));
  EXPECT_NEAR(std::abs(rf.sheets[0][k] + rf.sheets[1][k]), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(std::abs(rf.sheets[0][k]) - std::abs(z)), 0.0, 1e-12);
}

TEST(BuildRootField, ConstantSeparable) {
  const auto rf = build_root_field(coefficients("Z^2-1", 64), 16);
  EXPECT_TRUE(rf.cuts.empty());
  for (const auto& v : rf.variation) EXPECT_LE(v.ac_part, 1e-12);
}

TEST(BuildRootField, IdentityIsMinimalOnUncutEdges) {
  const auto rf = build_root_field(coefficients("Z^3-z", 64), 16);
  const Grid2D& g = rf.grid;
  std::vector<std::uint8_t> cut(g.edge_count(), 0);
  for (std::size_t e : rf.cut_edges) cut[e] = 1;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if (cut[e]) continue;
    const auto [p, q] = g.edge_nodes(e);
    if (rf.collision[p] || rf.collision[q]) continue;
    const auto a = rf.tuple(p), b = rf.tuple(q);
    const double identity = matching_cost(a, b);
    const double best = matching_cost(a, match_to(a, b));
    ASSERT_LE(identity, best + 1e-9 * std::max(1.0, best)) << "edge " << e;
  }
}

TEST(BuildRootField, Catalog) {
  for (const auto& p : polynomial_catalog()) {
    const auto rf = build_root_field(build_coefficients(p.coeffs, square(128)), 16);
    EXPECT_LE(rf.max_reconstruction_error, 1e-8) << p.name;
    EXPECT_LE(rf.max_magnitude_excess, 1e-8) << p.name;
    EXPECT_EQ(nontrivial_plaquettes(rf), 0u) << p.name;
  }
}

TEST(BuildRootField, DegenerateDiscriminant) {
  const auto g = square(16);
  EXPECT_THROW(build_root_field({build_field("2*z", g), build_field("z^2", g)}, 16), Error);
  EXPECT_THROW(build_root_field({build_field("z", g)}, 16), std::invalid_argument);
}
