// Frozen verification suite: closed-form oracles, property checks and
// regression baselines. Reports carry no timings so that two runs with the
// same seed serialize identically.
#pragma once

#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <json.hpp>

#include "cut_select.hpp"
#include "disks.hpp"
#include "field_builder.hpp"
#include "io.hpp"
#include "levelset.hpp"
#include "radical.hpp"
#include "roots1d.hpp"
#include "roots2d.hpp"
#include "variation.hpp"

namespace bvroots {

using json = nlohmann::ordered_json;

struct VerifyOptions {
  std::uint64_t seed = 0x5eed;
};

struct CaseResult {
  std::string name;
  std::string title;
  bool passed = false;
  json values = json::object();
};

struct SuiteReport {
  std::uint64_t seed = 0;
  std::vector<CaseResult> cases;

  bool passed() const {
    return std::all_of(cases.begin(), cases.end(), [](const CaseResult& c) { return c.passed; });
  }
  json to_json() const {
    json j;
    j["seed"] = seed;
    j["passed"] = passed();
    j["cases"] = json::array();
    for (const auto& c : cases) j["cases"].push_back({{"name", c.name}, {"passed", c.passed}, {"values", c.values}});
    return j;
  }
};

// Regression baselines, measured once and frozen.
namespace baseline {
inline constexpr double radical_bound_z = 6.095382680;  // f = z, r = 2, 256 cells, axis cut
inline constexpr double gg_identity = 0.7071067812;     // f = t, r = 2, 100001 samples
inline constexpr double sobolev_sqrt_t = 2.0;           // Z^2 - t, p = 1, 2001 samples
inline constexpr double tail_disks16 = 0.2632759887;    // disks(16), r = 2, K = 64
}  // namespace baseline

namespace detail {

inline bool within(double value, double expected, double rel) { return std::abs(value - expected) <= rel * std::abs(expected); }

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

inline Grid2D square(std::size_t cells) { return Grid2D(-1.0, 1.0, -1.0, 1.0, cells + 1, cells + 1); }

inline bool is_axis(cplx y) {
  return (std::abs(std::abs(y.real()) - 1.0) < 1e-12 && std::abs(y.imag()) < 1e-12) ||
         (std::abs(std::abs(y.imag()) - 1.0) < 1e-12 && std::abs(y.real()) < 1e-12);
}

inline HolderOptions holder_options(const VerifyOptions& opt) {
  HolderOptions h;
  h.seed = opt.seed;
  return h;
}

}  // namespace detail

// --- acceptance criteria -------------------------------------------------------

inline CaseResult check_jump_functional(const VerifyOptions&) {
  CaseResult c{"", "radical jump functional J = 2/3 on an axis ray", false};
  const auto t0 = std::chrono::steady_clock::now();
  const ComplexField f = build_field("z", detail::square(256));
  const DirectionScan scan = scan_directions(f, 2.0, 16);
  const double elapsed = detail::seconds_since(t0);
  const double J = scan.best.jump_functional;
  c.values = {{"direction", {scan.best.direction.real(), scan.best.direction.imag()}},
              {"J", J},
              {"expected", 2.0 / 3.0},
              {"diagonal_J", scan.candidates[2].jump_functional}};
  c.passed = detail::is_axis(scan.best.direction) && detail::within(J, 2.0 / 3.0, 0.03) && elapsed < 5.0;
  return c;
}

inline CaseResult check_variation(const VerifyOptions&) {
  CaseResult c{"", "jump part 4/3 and positive homogeneity", false};
  const ComplexField f = build_field("z", detail::square(256));
  const DirectionScan scan = scan_directions(f, 2.0, 16);
  const SbvField sbv = construct_radical(f, 2.0, scan.best);
  const VariationReport v = variation_decompose(sbv, 1.0);
  const cplx k = std::polar(2.5, 0.7);
  const VariationReport w = variation_decompose(scale_selection(sbv, k), 1.0);
  double homog = 0.0;
  for (auto [a, b] : {std::pair{v.l1, w.l1}, {v.ac_part, w.ac_part}, {v.jump_part, w.jump_part}, {v.bv_total, w.bv_total}})
    homog = std::max(homog, std::abs(b - std::abs(k) * a) / (std::abs(k) * a));
  c.values = {{"report", to_json(v)}, {"expected_jump", 4.0 / 3.0}, {"homogeneity_error", homog}};
  c.passed = detail::within(v.jump_part, 4.0 / 3.0, 0.04) && homog <= 1e-10;
  return c;
}

inline CaseResult check_weak_l2(const VerifyOptions& opt) {
  CaseResult c{"", "weak L^2 quasinorm of the derivative of sqrt|t|", false};
  const auto t0 = std::chrono::steady_clock::now();
  const Samples1D f = Samples1D::sample([](double t) { return t; }, -1.0, 1.0, 100001);
  const GGReport g = gg_check_1d(f, 2.0, 1, 1.0, std::numeric_limits<double>::infinity(), detail::holder_options(opt));
  const double elapsed = detail::seconds_since(t0);
  c.values = {{"lhs", g.lhs}, {"expected", 1.0 / std::numbers::sqrt2}, {"rhs_core", g.rhs_core}};
  c.passed = detail::within(g.lhs, 1.0 / std::numbers::sqrt2, 0.02) && elapsed < 1.0;
  return c;
}

inline CaseResult check_sharpness(const VerifyOptions&) {
  CaseResult c{"", "L^1 convergence and L^2 divergence for Z^2 - t", false};
  const auto spec = *find_curve("Z^2-t");
  json rows = json::array();
  std::vector<double> l1, energy;
  for (std::size_t samples : {1000, 10000, 100000}) {
    const CoeffCurve curve = sample_curve(spec.coeffs, spec.t0, spec.t1, samples);
    const RootTrack track = match_continuous(curve);
    const SobolevReport p1 = sobolev_check(track, curve, 1.0);
    const SobolevReport p2 = sobolev_check(track, curve, 2.0);
    l1.push_back(p1.lhs);
    energy.push_back(p2.energy);
    rows.push_back({{"samples", samples}, {"norm_p1", p1.lhs}, {"norm_p2", p2.lhs}, {"energy_p2", p2.energy}});
  }
  const bool converges = detail::within(l1.back(), 2.0, 0.02) && std::abs(l1[2] - l1[1]) < std::abs(l1[1] - l1[0]);
  const bool diverges = energy[1] >= 1.2 * energy[0] && energy[2] >= 1.2 * energy[1];
  c.values = {{"refinement", rows}, {"p1_converges", converges}, {"p2_diverges", diverges}};
  c.passed = converges && diverges;
  return c;
}

inline CaseResult check_monodromy_table(const VerifyOptions&) {
  CaseResult c{"", "monodromy decisions for z^j and r", false};
  const Grid2D g = detail::square(256);
  struct Row {
    const char* f;
    double r;
    MonodromyDecision decision;
    long long winding;
  };
  const Row rows[] = {{"z", 2.0, MonodromyDecision::CutRequired, 1},
                      {"z^2", 2.0, MonodromyDecision::ContinuousExists, 2},
                      {"z^3", 3.0, MonodromyDecision::ContinuousExists, 3},
                      {"z", std::numbers::sqrt2, MonodromyDecision::CutRequired, 1},
                      {"z^2", std::numbers::sqrt2, MonodromyDecision::CutRequired, 2}};
  c.passed = true;
  c.values = json::array();
  for (const auto& row : rows) {
    const MonodromyClass m = classify_monodromy(build_field(row.f, g), row.r);
    const bool ok = m.decision == row.decision && m.winding_numbers == std::vector<long long>{row.winding};
    c.passed = c.passed && ok;
    c.values.push_back({{"f", row.f}, {"r", row.r}, {"decision", to_string(m.decision)}, {"winding", m.winding_numbers}});
  }
  return c;
}

inline CaseResult check_disks_growth(const VerifyOptions&) {
  CaseResult c{"", "cut length over disks(N) against H_N / 2", false};
  json rows = json::array();
  c.passed = true;
  double previous = -1.0;
  for (std::size_t N : {4, 16, 64}) {
    const ComplexField f = build_disks_field(N, disks_grid(N));
    const DisksCutReport rep = disks_cut_report(N, f);
    c.passed = c.passed && rep.total_length >= rep.lower_bound && rep.total_length > previous;
    previous = rep.total_length;
    rows.push_back({{"N", N}, {"cut_length", rep.total_length}, {"lower_bound", rep.lower_bound}});
  }
  c.values = rows;
  return c;
}

inline CaseResult check_root_field(const VerifyOptions&) {
  CaseResult c{"", "root field of Z^2 - z", false};
  const auto t0 = std::chrono::steady_clock::now();
  const Grid2D g = detail::square(256);
  const RootField rf = build_root_field(build_coefficients(find_polynomial("Z^2-z")->coeffs, g), 16);
  const double elapsed = detail::seconds_since(t0);
  const std::size_t pieces = connected_pieces(rf.cut).size();
  const std::size_t bad = nontrivial_plaquettes(rf);
  bool jumps = true;
  json per_sheet = json::array();
  for (const auto& v : rf.variation) {
    jumps = jumps && detail::within(v.jump_part, 4.0 / 3.0, 0.04);
    per_sheet.push_back(to_json(v));
  }
  const bool axis = rf.cuts.size() == 1 && detail::is_axis(rf.cuts.front().direction);
  c.values = {{"cuts", rf.cuts.size()},
              {"cut_pieces", pieces},
              {"nontrivial_plaquettes", bad},
              {"reconstruction_error", rf.max_reconstruction_error},
              {"holonomy", to_json(rf.holonomy)},
              {"sheets", per_sheet}};
  c.passed = rf.cuts.size() == 1 && pieces == 1 && bad == 0 && rf.max_reconstruction_error <= 1e-8 && axis && jumps &&
             elapsed < 30.0;
  return c;
}

inline CaseResult check_magnitude_bound(const VerifyOptions&) {
  CaseResult c{"", "|lambda_i| <= 2 max_j |a_j|^{1/j} over the catalog", false};
  double worst = -std::numeric_limits<double>::infinity();
  json rows = json::array();
  const Grid2D g = detail::square(128);
  for (const auto& p : polynomial_catalog()) {
    const RootField rf = build_root_field(build_coefficients(p.coeffs, g), 16);
    worst = std::max(worst, rf.max_magnitude_excess);
    rows.push_back({{"case", p.name}, {"excess", rf.max_magnitude_excess}});
  }
  for (const auto& s : curve_catalog()) {
    const CoeffCurve curve = sample_curve(s.coeffs, s.t0, s.t1, 2001);
    const RootTrack track = match_continuous(curve);
    double excess = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < curve.samples(); ++k) {
      double m = 0.0;
      for (const auto& v : track.at(k)) m = std::max(m, std::abs(v));
      excess = std::max(excess, m - 2.0 * root_scale(curve.at(k)));
    }
    worst = std::max(worst, excess);
    rows.push_back({{"case", s.name}, {"excess", excess}});
  }
  c.values = {{"cases", rows}, {"worst_excess", worst}};
  c.passed = worst <= 1e-8;
  return c;
}

inline CaseResult check_coarea(const VerifyOptions&) {
  CaseResult c{"", "coarea identity for |z| on {|z| < 0.9}", false};
  const Grid2D g = detail::square(512);
  const ComplexField f = build_field("z", g);
  const RealField m = abs_field(f);
  const auto [dx, dy] = gradient(m);
  const double top = 0.9;
  double bulk = 0.0;
  for (std::size_t j = 0; j < g.ny(); ++j)
    for (std::size_t i = 0; i < g.nx(); ++i) {
      if (m(i, j) >= top) continue;
      const double wx = (i == 0 || i + 1 == g.nx()) ? 0.5 : 1.0;
      const double wy = (j == 0 || j + 1 == g.ny()) ? 0.5 : 1.0;
      bulk += wx * wy * jacobian_norm(dx(i, j), dy(i, j));
    }
  bulk *= g.cell_area();
  const std::size_t levels = 180;
  const double dy_level = top / static_cast<double>(levels);
  double layered = 0.0;
  for (std::size_t q = 0; q < levels; ++q)
    layered += extract_norm_level(f, (static_cast<double>(q) + 0.5) * dy_level).total_length * dy_level;
  c.values = {{"bulk", bulk}, {"levels", layered}, {"exact", std::numbers::pi * top * top}};
  c.passed = detail::within(bulk, layered, 0.03);
  return c;
}

// --- frozen regression cases ---------------------------------------------------

inline CaseResult check_radical_bound(const VerifyOptions& opt) {
  CaseResult c{"", "BV norm over Hölder norm for sqrt z and constants", false};
  const Grid2D g = detail::square(256);
  const ComplexField f = build_field("z", g);
  const DirectionScan scan = scan_directions(f, 2.0, 16);
  const SbvField sbv = construct_radical(f, 2.0, scan.best);
  const HolderEstimate norm = holder_norm_estimate(f, 1, 1.0, detail::holder_options(opt));
  const RatioReport z = verify_radical_bound(sbv, norm, baseline::radical_bound_z * 1.03);

  const ComplexField f2 = scale_field(f, 2.5);
  const SbvField sbv2 = construct_radical(f2, 2.0, scan_directions(f2, 2.0, 16).best);
  const RatioReport z2 = verify_radical_bound(sbv2, holder_norm_estimate(f2, 1, 1.0, detail::holder_options(opt)));

  const ComplexField k = build_field("3", g);
  const RatioReport konst = verify_radical_bound(construct_radical(k, 2.0, std::nullopt),
                                                 holder_norm_estimate(k, 1, 1.0, detail::holder_options(opt)));
  c.values = {{"ratio_z", z.ratio},
              {"baseline_z", baseline::radical_bound_z},
              {"ratio_scaled", z2.ratio},
              {"ratio_constant", konst.ratio}};
  c.passed = detail::within(z.ratio, baseline::radical_bound_z, 0.03) && detail::within(z2.ratio, z.ratio, 1e-6) &&
             detail::within(konst.ratio, 4.0, 1e-9);
  return c;
}

inline CaseResult check_gg_baseline(const VerifyOptions& opt) {
  CaseResult c{"", "weak L^p ratio for t and t^2", false};
  const HolderOptions h = detail::holder_options(opt);
  const GGReport a = gg_check_1d(Samples1D::sample([](double t) { return t; }, -1.0, 1.0, 100001), 2.0, 1, 1.0,
                                 baseline::gg_identity * 1.03, h);
  const GGReport b = gg_check_1d(Samples1D::sample([](double t) { return t * t; }, -1.0, 1.0, 100001), 2.0, 1, 1.0,
                                 std::numeric_limits<double>::infinity(), h);
  const GGReport one = gg_check_1d(Samples1D::sample([](double) { return 1.0; }, -1.0, 1.0, 1001), 2.0, 1, 1.0,
                                   std::numeric_limits<double>::infinity(), h);
  c.values = {{"ratio_t", a.ratio}, {"baseline_t", baseline::gg_identity}, {"lhs_t2", b.lhs}, {"lhs_const", one.lhs}};
  c.passed = a.passed && detail::within(b.lhs, std::numbers::sqrt2, 0.02) && one.lhs == 0.0;
  return c;
}

inline CaseResult check_level_tail(const VerifyOptions&) {
  CaseResult c{"", "Markov tail of J over directions", false};
  const DirectionScan sz = scan_directions(build_field("z", detail::square(256)), 2.0, 64);
  const TailReport tz = verify_level_tail(sz, std::numeric_limits<double>::infinity());
  bool zero_above = true;
  for (const auto& e : tz.ladder)
    if (e.threshold > 1.13) zero_above = zero_above && e.fraction == 0.0;
  const DirectionScan sd = scan_directions(build_field("disks(16)", disks_grid(16)), 2.0, 64);
  const TailReport td = verify_level_tail(sd, baseline::tail_disks16 * 1.03);
  c.values = {{"z_max_product", tz.max_product}, {"disks16_max_product", td.max_product},
              {"baseline_disks16", baseline::tail_disks16}};
  c.passed = tz.monotone && zero_above && td.passed;
  return c;
}

inline CaseResult check_norm_levels(const VerifyOptions&) {
  CaseResult c{"", "y^{1/s} H^1(|f| = y) for f = z", false};
  const ComplexField f = build_field("z", detail::square(256));
  const GrowthReport one = verify_norm_level_growth(f, 2.0, {0.25});
  const GrowthReport ladder = verify_norm_level_growth(f, 2.0, {0.2, 0.1, 0.05});
  const double expected = 0.5 * 2.0 * std::numbers::pi * 0.25;
  bool decreasing = true;
  json values = json::array();
  for (std::size_t q = 0; q < ladder.entries.size(); ++q) {
    values.push_back(ladder.entries[q].value);
    if (q > 0) decreasing = decreasing && ladder.entries[q].value < ladder.entries[q - 1].value;
  }
  c.values = {{"value_0.25", one.entries[0].value}, {"expected", expected}, {"ladder", values}};
  c.passed = detail::within(one.entries[0].value, expected, 0.03) && decreasing;
  return c;
}

inline CaseResult check_sobolev_baseline(const VerifyOptions&) {
  CaseResult c{"", "L^1 norm of tracked roots over coefficient norms", false};
  const auto spec = *find_curve("Z^2-t");
  const CoeffCurve curve = sample_curve(spec.coeffs, spec.t0, spec.t1, 2001);
  const SobolevReport s = sobolev_check(match_continuous(curve), curve, 1.0, baseline::sobolev_sqrt_t * 1.03);
  const CoeffCurve flat = sample_curve({"1", "2"}, -1.0, 1.0, 101);
  const SobolevReport z = sobolev_check(match_continuous(flat), flat, 1.0);
  c.values = {{"ratio", s.ratio}, {"baseline", baseline::sobolev_sqrt_t}, {"lhs_constant", z.lhs}};
  c.passed = s.passed && z.lhs == 0.0;
  return c;
}

inline CaseResult check_root_catalog(const VerifyOptions&) {
  CaseResult c{"", "reconstruction and cut sufficiency over the catalog", false};
  const Grid2D g = detail::square(256);
  c.passed = true;
  c.values = json::array();
  for (const auto& p : polynomial_catalog()) {
    const RootField rf = build_root_field(build_coefficients(p.coeffs, g), 16);
    const std::size_t bad = nontrivial_plaquettes(rf);
    c.passed = c.passed && rf.max_reconstruction_error <= 1e-8 && bad == 0;
    c.values.push_back({{"case", p.name},
                        {"cuts", rf.cuts.size()},
                        {"reconstruction_error", rf.max_reconstruction_error},
                        {"nontrivial_plaquettes", bad},
                        {"holonomy", to_json(rf.holonomy)}});
  }
  return c;
}

using CaseFn = std::function<CaseResult(const VerifyOptions&)>;

struct CaseEntry {
  std::string name;
  CaseFn fn;
};

/// Acceptance criteria 1-9 in order; the tenth (determinism) compares two
/// serialized runs of the suite.
inline const std::vector<CaseEntry>& acceptance_cases() {
  static const std::vector<CaseEntry> cases = {{"jump-functional", check_jump_functional},
                                               {"variation-decomposition", check_variation},
                                               {"weak-l2", check_weak_l2},
                                               {"sharpness-dichotomy", check_sharpness},
                                               {"monodromy-table", check_monodromy_table},
                                               {"disks-growth", check_disks_growth},
                                               {"root-field-sqrt", check_root_field},
                                               {"root-magnitude-bound", check_magnitude_bound},
                                               {"coarea", check_coarea}};
  return cases;
}

inline const std::vector<CaseEntry>& regression_cases() {
  static const std::vector<CaseEntry> cases = {{"radical-bound", check_radical_bound},
                                               {"gg-ratio", check_gg_baseline},
                                               {"level-tail", check_level_tail},
                                               {"norm-level-growth", check_norm_levels},
                                               {"sobolev-ratio", check_sobolev_baseline},
                                               {"root-field-catalog", check_root_catalog}};
  return cases;
}

inline std::vector<std::string> case_names() {
  std::vector<std::string> out;
  for (const auto* list : {&acceptance_cases(), &regression_cases()})
    for (const auto& e : *list) out.push_back(e.name);
  return out;
}

/// Pipeline errors become failed cases carrying the message.
inline CaseResult run_case(const CaseEntry& entry, const VerifyOptions& opt) {
  CaseResult c;
  try {
    c = entry.fn(opt);
  } catch (const std::exception& e) {
    c.passed = false;
    c.values = {{"error", e.what()}};
  }
  c.name = entry.name;
  return c;
}

/// Throws std::invalid_argument for an unknown name.
inline CaseResult run_case(const std::string& name, const VerifyOptions& opt) {
  for (const auto* list : {&acceptance_cases(), &regression_cases()})
    for (const auto& e : *list)
      if (e.name == name) return run_case(e, opt);
  throw std::invalid_argument("unknown verification case '" + name + "'");
}

inline SuiteReport run_suite(const VerifyOptions& opt = {}) {
  SuiteReport rep;
  rep.seed = opt.seed;
  for (const auto* list : {&acceptance_cases(), &regression_cases()})
    for (const auto& e : *list) rep.cases.push_back(run_case(e, opt));
  return rep;
}

}  // namespace bvroots
