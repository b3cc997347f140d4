// bvroots command-line driver.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bvroots/bvroots.hpp"

namespace fs = std::filesystem;
using bvroots::json;

namespace {

constexpr int kExitPipeline = 1;
constexpr int kExitConfig = 2;
constexpr int kExitVerify = 3;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Flags {
  std::string config;
  std::string out;
  std::optional<std::size_t> candidates;
  std::optional<double> r;
  std::optional<std::size_t> N;
  std::string case_name;
  std::optional<std::uint64_t> seed;
  std::string example = "disks";
};

struct Config {
  double xmin = -1.0, xmax = 1.0, ymin = -1.0, ymax = 1.0;
  std::size_t resolution = 256;
  bvroots::FunctionSpec function = bvroots::FunctionSpec::builtin("z");
  double r = 2.0;
  std::size_t K = 16;
  std::vector<double> p{1.0};
  std::vector<double> levels{0.25, 0.5, 0.75};
  std::string out = "out";
  std::uint64_t seed = 0x5eed;
  std::size_t N = 16;
  std::vector<std::string> coeffs{"0", "-z"};
  bvroots::CurveSpec curve{"", {"0", "-t"}, -1.0, 1.0};
  std::size_t samples = 2001;
  json raw = json::object();

  bvroots::Grid2D grid() const {
    return bvroots::Grid2D(xmin, xmax, ymin, ymax, resolution + 1, resolution + 1);
  }
};

bvroots::FunctionSpec parse_descriptor(const json& j) {
  if (j.is_string()) return bvroots::parse_function_spec(j.get<std::string>());
  if (!j.is_object() || !j.contains("kind")) throw ConfigError("function descriptor needs a \"kind\"");
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "builtin") {
    const auto name = j.at("name").get<std::string>();
    if (!bvroots::is_builtin_field(name)) throw ConfigError("unknown builtin '" + name + "'");
    return bvroots::FunctionSpec::builtin(name);
  }
  if (kind == "expr") return bvroots::FunctionSpec::expr(j.at("body").get<std::string>());
  throw ConfigError("unknown descriptor kind '" + kind + "'");
}

std::string coefficient_text(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number()) return bvroots::fmt(j.get<double>());
  if (j.is_object() && j.contains("expr")) return j.at("expr").get<std::string>();
  if (j.is_object() && j.contains("body")) return j.at("body").get<std::string>();
  throw ConfigError("coefficient must be a string, a number or {\"expr\": ...}");
}

Config load_config(const Flags& flags) {
  Config c;
  if (!flags.config.empty()) {
    std::ifstream in(flags.config);
    if (!in) throw ConfigError("cannot read config " + flags.config);
    try {
      c.raw = json::parse(in);
    } catch (const json::exception& e) {
      throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
  }
  const json& j = c.raw;
  try {
    if (j.contains("domain")) {
      const auto d = j.at("domain").get<std::vector<double>>();
      if (d.size() != 4) throw ConfigError("domain must be [xmin, xmax, ymin, ymax]");
      c.xmin = d[0], c.xmax = d[1], c.ymin = d[2], c.ymax = d[3];
    }
    if (j.contains("resolution")) c.resolution = j.at("resolution").get<std::size_t>();
    if (j.contains("function")) c.function = parse_descriptor(j.at("function"));
    if (j.contains("r")) c.r = j.at("r").get<double>();
    if (j.contains("candidates")) c.K = j.at("candidates").get<std::size_t>();
    if (j.contains("p")) c.p = j.at("p").is_array() ? j.at("p").get<std::vector<double>>() : std::vector<double>{j.at("p").get<double>()};
    if (j.contains("levels")) c.levels = j.at("levels").get<std::vector<double>>();
    if (j.contains("out")) c.out = j.at("out").get<std::string>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("N")) c.N = j.at("N").get<std::size_t>();
    if (j.contains("polynomial")) {
      const auto name = j.at("polynomial").get<std::string>();
      const auto p = bvroots::find_polynomial(name);
      if (!p) throw ConfigError("unknown builtin polynomial '" + name + "'");
      c.coeffs = p->coeffs;
    }
    if (j.contains("coeffs")) {
      c.coeffs.clear();
      for (const auto& e : j.at("coeffs")) c.coeffs.push_back(coefficient_text(e));
    }
    if (j.contains("curve")) {
      const json& cv = j.at("curve");
      if (cv.is_string()) {
        const auto s = bvroots::find_curve(cv.get<std::string>());
        if (!s) throw ConfigError("unknown builtin curve '" + cv.get<std::string>() + "'");
        c.curve = *s;
      } else {
        c.curve.coeffs.clear();
        for (const auto& e : cv.at("coeffs")) c.curve.coeffs.push_back(coefficient_text(e));
        if (cv.contains("n") && cv.at("n").get<std::size_t>() != c.curve.coeffs.size())
          throw ConfigError("curve: n does not match the number of coefficients");
        if (cv.contains("t")) {
          const auto t = cv.at("t").get<std::vector<double>>();
          if (t.size() != 3) throw ConfigError("curve: t must be [t0, t1, samples]");
          c.curve.t0 = t[0];
          c.curve.t1 = t[1];
          if (!(t[2] >= 2.0) || t[2] != std::floor(t[2])) throw ConfigError("curve: samples must be an integer >= 2");
          c.samples = static_cast<std::size_t>(t[2]);
        }
      }
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  if (flags.candidates) c.K = *flags.candidates;
  if (flags.r) c.r = *flags.r;
  if (flags.N) c.N = *flags.N;
  if (flags.seed) c.seed = *flags.seed;
  if (!flags.out.empty()) c.out = flags.out;

  if (c.resolution < 32) throw ConfigError("resolution must be at least 32");
  if (c.K < 8) throw ConfigError("candidates must be at least 8");
  if (!(c.r > 0.0)) throw ConfigError("r must be positive");
  if (!(c.xmin < c.xmax && c.ymin < c.ymax)) throw ConfigError("domain must satisfy xmin < xmax and ymin < ymax");
  for (double p : c.p)
    if (!(p >= 1.0)) throw ConfigError("every p must be >= 1");
  if (c.N < 1) throw ConfigError("N must be at least 1");
  if (c.coeffs.empty() || c.curve.coeffs.empty()) throw ConfigError("polynomials need at least one coefficient");
  try {
    for (const auto& e : c.coeffs) bvroots::Expression{e};
    for (const auto& e : c.curve.coeffs) bvroots::Expression{e};
    if (c.function.kind == bvroots::FunctionSpec::Kind::Expr) bvroots::Expression{c.function.text};
  } catch (const bvroots::ExprError& e) {
    throw ConfigError(std::string("expression: ") + e.what());
  }
  return c;
}

fs::path prepare_out(const Config& c) {
  const fs::path dir(c.out);
  fs::create_directories(dir);
  return dir;
}

json variation_list(const bvroots::SbvField& sbv, const std::vector<double>& ps) {
  json out = json::array();
  for (double p : ps) out.push_back(bvroots::to_json(bvroots::variation_decompose(sbv, p)));
  return out;
}

int cmd_radical(const Config& c) {
  const auto grid = c.grid();
  const auto f = bvroots::build_field(c.function, grid);
  const auto plan = bvroots::reduce_exponent(c.r);
  json report;
  report["command"] = "radical";
  report["r"] = c.r;
  report["plan"] = {{"case", bvroots::to_string(plan.kind)},
                    {"ell", plan.ell},
                    {"beta", plan.beta},
                    {"prepower", plan.prepower},
                    {"reduced_r", plan.reduced_r},
                    {"rationality", plan.rationality.to_string()}};
  std::optional<bvroots::BranchCut> cut;
  std::optional<bvroots::DirectionScan> scan;
  if (bvroots::max_abs(f) > 0.0 && plan.kind != bvroots::RadicalCase::PowerOnly) {
    const auto mono = bvroots::classify_monodromy(f, plan.reduced_r);
    report["monodromy"] = bvroots::to_json(mono);
    if (mono.decision == bvroots::MonodromyDecision::CutRequired) {
      scan = bvroots::scan_directions(f, plan.reduced_r, c.K);
      cut = scan->best;
      report["cut"] = bvroots::to_json(*cut);
    }
  }
  const auto sbv = bvroots::construct_radical(f, c.r, cut);
  report["variation"] = variation_list(sbv, c.p);
  const auto dir = prepare_out(c);
  bvroots::write_field_csv(dir / "field.csv", f);
  bvroots::write_lambda_csv(dir / "lambda.csv", sbv);
  bvroots::write_curves_csv(dir / "cuts.csv", sbv.cut_curve());
  if (scan) bvroots::write_scan_csv(dir / "scan.csv", *scan);
  const auto curve = sbv.cut_curve();
  bvroots::write_svg(dir / "plot.svg", f, {&curve}, "radical");
  bvroots::write_json(dir / "report.json", report);
  std::cout << report["variation"].dump() << '\n';
  return 0;
}

int cmd_monodromy(const Config& c) {
  const auto f = bvroots::build_field(c.function, c.grid());
  const auto mono = bvroots::classify_monodromy(f, c.r);
  json report = bvroots::to_json(mono);
  const auto dir = prepare_out(c);
  bvroots::write_field_csv(dir / "field.csv", f);
  bvroots::write_svg(dir / "plot.svg", f, {}, "monodromy");
  bvroots::write_json(dir / "report.json", report);
  std::cout << json{{"decision", report["decision"]}, {"winding", report["winding"]}}.dump() << '\n';
  return 0;
}

int cmd_levelset(const Config& c) {
  const auto f = bvroots::build_field(c.function, c.grid());
  const auto scan = bvroots::scan_directions(f, c.r, c.K);
  json report;
  report["command"] = "levelset";
  report["best"] = bvroots::to_json(scan.best);
  report["regular_candidates"] = scan.regular_count();
  if (scan.regular_count() >= 16) {
    const auto tail = bvroots::verify_level_tail(scan, std::numeric_limits<double>::infinity());
    json ladder = json::array();
    for (const auto& e : tail.ladder) ladder.push_back({{"T", e.threshold}, {"fraction", e.fraction}, {"product", e.product}});
    report["tail"] = {{"ladder", ladder}, {"max_product", tail.max_product}, {"monotone", tail.monotone}};
  }
  const double fmax = bvroots::max_abs(f);
  std::vector<double> levels;
  for (double y : c.levels)
    if (y > 0.0 && y < fmax) levels.push_back(y);
  bvroots::LevelCurveSet norm_curves;
  if (!levels.empty()) {
    const auto growth = bvroots::verify_norm_level_growth(f, c.r, levels);
    json rows = json::array();
    for (const auto& e : growth.entries) rows.push_back({{"level", e.level}, {"length", e.length}, {"value", e.value}});
    report["norm_levels"] = {{"entries", rows}, {"median", growth.median}};
    norm_curves = bvroots::extract_norm_level(f, levels.front());
  }
  const auto dir = prepare_out(c);
  bvroots::write_field_csv(dir / "field.csv", f);
  bvroots::write_curves_csv(dir / "cuts.csv", scan.best.curve);
  bvroots::write_scan_csv(dir / "scan.csv", scan);
  bvroots::write_svg(dir / "plot.svg", f, {&scan.best.curve, &norm_curves}, "level sets");
  bvroots::write_json(dir / "report.json", report);
  std::cout << report["best"].dump() << '\n';
  return 0;
}

int cmd_roots1d(const Config& c) {
  const auto curve = bvroots::sample_curve(c.curve.coeffs, c.curve.t0, c.curve.t1, c.samples);
  const auto track = bvroots::match_continuous(curve);
  json report;
  report["command"] = "roots1d";
  report["n"] = curve.n;
  report["samples"] = curve.samples();
  report["max_step_jump"] = track.max_step_jump;
  double rec = 0.0;
  for (std::size_t k = 0; k < curve.samples(); ++k)
    rec = std::max(rec, bvroots::reconstruction_error(track.at(k), curve.at(k)));
  report["reconstruction_error"] = rec;
  report["sobolev"] = json::array();
  for (double p : c.p) report["sobolev"].push_back(bvroots::to_json(bvroots::sobolev_check(track, curve, p)));
  const auto dir = prepare_out(c);
  bvroots::write_track_csv(dir / "lambda.csv", track);
  bvroots::write_json(dir / "report.json", report);
  std::cout << report["sobolev"].dump() << '\n';
  return 0;
}

int cmd_roots2d(const Config& c) {
  const auto grid = c.grid();
  const auto a = bvroots::build_coefficients(c.coeffs, grid);
  bvroots::RootFieldOptions opt;
  opt.p = c.p.front();
  const auto rf = bvroots::build_root_field(a, c.K, opt);
  json report;
  report["command"] = "roots2d";
  report["n"] = rf.n;
  report["holonomy"] = bvroots::to_json(rf.holonomy);
  report["cuts"] = json::array();
  for (const auto& cut : rf.cuts) report["cuts"].push_back(bvroots::to_json(cut));
  report["cut_edges"] = rf.cut_edges.size();
  report["reconstruction_error"] = rf.max_reconstruction_error;
  report["nontrivial_plaquettes"] = bvroots::nontrivial_plaquettes(rf);
  report["variation"] = json::array();
  for (const auto& v : rf.variation) report["variation"].push_back(bvroots::to_json(v));
  const auto dir = prepare_out(c);
  bvroots::write_field_csv(dir / "field.csv", rf.discriminant);
  for (std::size_t s = 0; s < rf.n; ++s)
    bvroots::write_field_csv(dir / ("lambda_" + std::to_string(s + 1) + ".csv"), rf.sheets[s]);
  bvroots::write_cut_edges_csv(dir / "cuts.csv", rf);
  bvroots::write_svg(dir / "plot.svg", rf.discriminant, {&rf.cut}, "discriminant");
  bvroots::write_json(dir / "report.json", report);
  std::cout << report["holonomy"].dump() << '\n';
  return 0;
}

int cmd_example(const Config& c, const std::string& name) {
  if (name != "disks") throw ConfigError("unknown example '" + name + "'");
  const auto grid = bvroots::disks_grid(c.N);
  const auto f = bvroots::build_disks_field(c.N, grid);
  const auto rep = bvroots::disks_cut_report(c.N, f, c.r, c.K);
  std::vector<bvroots::GrowthRow> rows;
  for (std::size_t n = 1; n < c.N; n *= 2) {
    const auto g = bvroots::disks_grid(n);
    rows.push_back({n, bvroots::disks_cut_length(n, bvroots::build_disks_field(n, g), c.r), bvroots::half_harmonic(n)});
  }
  rows.push_back({c.N, rep.total_length, rep.lower_bound});
  json disks = json::array();
  bvroots::LevelCurveSet all;
  for (const auto& d : rep.disks) {
    disks.push_back({{"k", d.k},
                     {"winding", d.winding},
                     {"decision", bvroots::to_string(d.decision)},
                     {"direction", {d.direction.real(), d.direction.imag()}},
                     {"length", d.length}});
    all.segments.insert(all.segments.end(), d.curve.segments.begin(), d.curve.segments.end());
  }
  all.recompute_length();
  json report = {{"command", "example"},
                 {"example", "disks"},
                 {"N", c.N},
                 {"covered_area", bvroots::make_disks_spec(c.N).covered_area()},
                 {"cut_length", rep.total_length},
                 {"lower_bound", rep.lower_bound},
                 {"disks", disks}};
  const auto dir = prepare_out(c);
  bvroots::write_field_csv(dir / "field.csv", f);
  bvroots::write_curves_csv(dir / "cuts.csv", all);
  bvroots::write_growth_csv(dir / "growth.csv", rows);
  bvroots::write_svg(dir / "plot.svg", f, {&all}, "disks");
  bvroots::write_json(dir / "report.json", report);
  std::cout << json{{"N", c.N}, {"cut_length", rep.total_length}, {"lower_bound", rep.lower_bound}}.dump() << '\n';
  return 0;
}

int cmd_verify(const Config& c, const Flags& flags) {
  bvroots::VerifyOptions opt;
  opt.seed = c.seed;
  bvroots::SuiteReport rep;
  rep.seed = opt.seed;
  if (!flags.case_name.empty()) {
    try {
      rep.cases.push_back(bvroots::run_case(flags.case_name, opt));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  } else {
    rep = bvroots::run_suite(opt);
  }
  for (const auto& k : rep.cases) std::cout << (k.passed ? "PASS " : "FAIL ") << k.name << '\n';
  if (!flags.out.empty() || c.raw.contains("out")) {
    const auto dir = prepare_out(c);
    bvroots::write_json(dir / "report.json", rep.to_json());
  }
  return rep.passed() ? 0 : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bvroots: bounded-variation radicals and polynomial roots on sampled domains"};
  app.require_subcommand(1);
  Flags flags;
  auto common = [&flags](CLI::App* sub) {
    sub->add_option("--config", flags.config, "JSON experiment config");
    sub->add_option("--out", flags.out, "output directory");
    sub->add_option("--candidates", flags.candidates, "number of candidate directions K");
    sub->add_option("--r", flags.r, "radical exponent r");
    sub->add_option("--seed", flags.seed, "seed of the Hölder pair sampler");
  };
  auto* radical = app.add_subcommand("radical", "single-valued radical f^{1/r} with a branch cut");
  auto* roots1d = app.add_subcommand("roots1d", "continuous root tracking along a coefficient curve");
  auto* roots2d = app.add_subcommand("roots2d", "root field of a polynomial family on a grid");
  auto* monodromy = app.add_subcommand("monodromy", "winding numbers and the continuity decision");
  auto* levelset = app.add_subcommand("levelset", "sign-level cut scan and norm-level lengths");
  auto* example = app.add_subcommand("example", "disk packing example");
  auto* verify = app.add_subcommand("verify", "run the frozen verification suite");
  for (auto* s : {radical, roots1d, roots2d, monodromy, levelset, example, verify}) common(s);
  example->add_option("name", flags.example, "example name")->default_val("disks");
  example->add_option("--N", flags.N, "number of disks");
  verify->add_option("--case", flags.case_name, "run a single case");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    const Config c = load_config(flags);
    if (radical->parsed()) return cmd_radical(c);
    if (roots1d->parsed()) return cmd_roots1d(c);
    if (roots2d->parsed()) return cmd_roots2d(c);
    if (monodromy->parsed()) return cmd_monodromy(c);
    if (levelset->parsed()) return cmd_levelset(c);
    if (example->parsed()) return cmd_example(c, flags.example);
    if (verify->parsed()) return cmd_verify(c, flags);
  } catch (const ConfigError& e) {
    std::cerr << "invalid config: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid config: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitPipeline;
  }
  return kExitPipeline;
}
