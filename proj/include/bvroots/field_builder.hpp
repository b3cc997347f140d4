// Function descriptors (builtin names or expressions) sampled on grids, plus
// the builtin catalogs of scalar fields, polynomial fields and coefficient
// curves.
#pragma once

#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <regex>
#include <stdexcept>
#include <string>
#include <vector>

#include "disks.hpp"
#include "expr.hpp"
#include "grid.hpp"
#include "roots1d.hpp"

namespace bvroots {

struct FunctionSpec {
  enum class Kind { Builtin, Expr };
  Kind kind = Kind::Expr;
  std::string text;  ///< builtin name or expression body

  static FunctionSpec builtin(std::string name) { return {Kind::Builtin, std::move(name)}; }
  static FunctionSpec expr(std::string body) { return {Kind::Expr, std::move(body)}; }
};

namespace detail {

inline const std::map<std::string, std::string>& scalar_catalog() {
  static const std::map<std::string, std::string> c = {
      {"z", "z"},       {"z^2", "z^2"},   {"z^3", "z^3"},         {"x1", "x"},
      {"const1", "1"},  {"zero", "0"},    {"z(z-1)", "z*(z-1)"},  {"conj(z)", "conj(z)"},
  };
  return c;
}

inline std::optional<std::size_t> disks_count(const std::string& name) {
  static const std::regex re(R"(disks\((\d+)\))");
  std::smatch m;
  if (!std::regex_match(name, m, re)) return std::nullopt;
  return static_cast<std::size_t>(std::stoul(m[1].str()));
}

inline void check_finite(const ComplexField& f) {
  for (std::size_t k = 0; k < f.size(); ++k)
    if (!std::isfinite(f[k].real()) || !std::isfinite(f[k].imag()))
      throw Error("build_field: non-finite value at node (" + std::to_string(k % f.grid().nx()) + ", " +
                  std::to_string(k / f.grid().nx()) + ")");
}

}  // namespace detail

inline std::vector<std::string> builtin_field_names() {
  std::vector<std::string> out;
  for (const auto& [name, body] : detail::scalar_catalog()) out.push_back(name);
  out.push_back("disks(16)");
  return out;
}

inline bool is_builtin_field(const std::string& name) {
  return detail::scalar_catalog().count(name) > 0 || detail::disks_count(name).has_value();
}

/// Plain strings name a builtin when one exists and are parsed as expressions
/// otherwise.
inline FunctionSpec parse_function_spec(const std::string& text) {
  return is_builtin_field(text) ? FunctionSpec::builtin(text) : FunctionSpec::expr(text);
}

inline ComplexField sample_expression(const Expression& e, const Grid2D& grid) {
  ComplexField f(grid);
  for (std::size_t j = 0; j < grid.ny(); ++j)
    for (std::size_t i = 0; i < grid.nx(); ++i) {
      const cplx z(grid.x(i), grid.y(j));
      f(i, j) = e(ExprVars{z.real(), z.imag(), z, {}});
    }
  return f;
}

inline ComplexField build_field(const FunctionSpec& spec, const Grid2D& grid) {
  ComplexField f;
  if (spec.kind == FunctionSpec::Kind::Builtin) {
    if (const auto n = detail::disks_count(spec.text)) {
      f = build_disks_field(*n, grid);
    } else {
      const auto it = detail::scalar_catalog().find(spec.text);
      if (it == detail::scalar_catalog().end()) throw std::invalid_argument("build_field: unknown builtin '" + spec.text + "'");
      f = sample_expression(Expression(it->second), grid);
    }
  } else {
    f = sample_expression(Expression(spec.text), grid);
  }
  detail::check_finite(f);
  return f;
}

inline ComplexField build_field(const std::string& text, const Grid2D& grid) {
  return build_field(parse_function_spec(text), grid);
}

/// Monic polynomial Z^n + a_1 Z^{n-1} + ... + a_n with coefficients in x, y, z.
struct PolynomialSpec {
  std::string name;
  std::vector<std::string> coeffs;  ///< a_1..a_n as expressions
};

inline const std::vector<PolynomialSpec>& polynomial_catalog() {
  static const std::vector<PolynomialSpec> c = {
      {"Z^2-z", {"0", "-z"}},
      {"Z^2-z^2", {"0", "-z^2"}},
      {"Z^2-1", {"0", "-1"}},
      {"Z^2-(z^2-1/4)", {"0", "-(z^2-1/4)"}},
      {"Z^3-z", {"0", "0", "-z"}},
      {"(Z-1)(Z+1)(Z-2i)", {"-2*i", "-1", "2*i"}},
  };
  return c;
}

inline std::optional<PolynomialSpec> find_polynomial(const std::string& name) {
  for (const auto& p : polynomial_catalog())
    if (p.name == name) return p;
  return std::nullopt;
}

inline std::vector<ComplexField> build_coefficients(const std::vector<std::string>& coeffs, const Grid2D& grid) {
  if (coeffs.empty()) throw std::invalid_argument("build_coefficients: degree must be at least 1");
  std::vector<ComplexField> out;
  for (const auto& c : coeffs) out.push_back(build_field(FunctionSpec::expr(c), grid));
  return out;
}

/// Coefficient curve a(t), expressions in t.
struct CurveSpec {
  std::string name;
  std::vector<std::string> coeffs;
  double t0 = -1.0, t1 = 1.0;
};

inline const std::vector<CurveSpec>& curve_catalog() {
  static const std::vector<CurveSpec> c = {
      {"Z^2-t", {"0", "-t"}, -1.0, 1.0},
      {"Z^2-t^2", {"0", "-t^2"}, -1.0, 1.0},
      {"Z^3-t", {"0", "0", "-t"}, -1.0, 1.0},
      {"Z^2-2tZ+1", {"-2*t", "1"}, -2.0, 2.0},
  };
  return c;
}

inline std::optional<CurveSpec> find_curve(const std::string& name) {
  for (const auto& c : curve_catalog())
    if (c.name == name) return c;
  return std::nullopt;
}

inline CoeffCurve sample_curve(const std::vector<std::string>& coeffs, double t0, double t1, std::size_t samples) {
  std::vector<std::function<cplx(double)>> fns;
  for (const auto& c : coeffs) {
    Expression e(c);
    fns.emplace_back([e](double t) { return e(ExprVars{{}, {}, {}, cplx(t, 0.0)}); });
  }
  return CoeffCurve::sample(fns, t0, t1, samples);
}

}  // namespace bvroots
