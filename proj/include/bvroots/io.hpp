// CSV, JSON and SVG emitters. Numbers use the shortest round-trip form with
// '.' as the decimal separator regardless of locale.
#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cut_select.hpp"
#include "disks.hpp"
#include "grid.hpp"
#include "levelset.hpp"
#include "radical.hpp"
#include "roots1d.hpp"
#include "roots2d.hpp"
#include "variation.hpp"

namespace bvroots {

inline std::string fmt(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

class CsvWriter {
 public:
  explicit CsvWriter(const std::filesystem::path& path) : out_(path, std::ios::binary) {
    if (!out_) throw Error("cannot open " + path.string() + " for writing");
  }
  void header(const std::vector<std::string>& cols) {
    for (std::size_t k = 0; k < cols.size(); ++k) out_ << (k ? "," : "") << cols[k];
    out_ << '\n';
  }
  void row(const std::vector<std::string>& cells) {
    for (std::size_t k = 0; k < cells.size(); ++k) out_ << (k ? "," : "") << cells[k];
    out_ << '\n';
  }

 private:
  std::ofstream out_;
};

inline void write_field_csv(const std::filesystem::path& path, const ComplexField& f) {
  CsvWriter w(path);
  w.header({"x", "y", "re", "im"});
  const Grid2D& g = f.grid();
  for (std::size_t j = 0; j < g.ny(); ++j)
    for (std::size_t i = 0; i < g.nx(); ++i) w.row({fmt(g.x(i)), fmt(g.y(j)), fmt(f(i, j).real()), fmt(f(i, j).imag())});
}

inline void write_lambda_csv(const std::filesystem::path& path, const SbvField& sbv) {
  const Grid2D& g = sbv.lambda.grid();
  std::vector<std::uint8_t> on_cut(g.size(), 0);
  for (std::size_t e : sbv.cut_curve().crossed_edges()) {
    const auto [a, b] = g.edge_nodes(e);
    on_cut[a] = on_cut[b] = 1;
  }
  CsvWriter w(path);
  w.header({"x", "y", "re", "im", "on_cut", "on_zero"});
  for (std::size_t j = 0; j < g.ny(); ++j)
    for (std::size_t i = 0; i < g.nx(); ++i) {
      const std::size_t k = g.index(i, j);
      w.row({fmt(g.x(i)), fmt(g.y(j)), fmt(sbv.lambda[k].real()), fmt(sbv.lambda[k].imag()), on_cut[k] ? "1" : "0",
             sbv.zero_mask[k] ? "1" : "0"});
    }
}

inline void write_curves_csv(const std::filesystem::path& path, const LevelCurveSet& curves) {
  CsvWriter w(path);
  w.header({"x0", "y0", "x1", "y1", "len"});
  for (const auto& s : curves.segments) w.row({fmt(s.p0.x), fmt(s.p0.y), fmt(s.p1.x), fmt(s.p1.y), fmt(s.length())});
}

inline void write_scan_csv(const std::filesystem::path& path, const DirectionScan& scan) {
  CsvWriter w(path);
  w.header({"j", "re_y", "im_y", "J", "regular"});
  for (const auto& c : scan.candidates)
    w.row({std::to_string(c.index), fmt(c.direction.real()), fmt(c.direction.imag()), fmt(c.jump_functional),
           c.regular ? "1" : "0"});
}

inline void write_track_csv(const std::filesystem::path& path, const RootTrack& track) {
  CsvWriter w(path);
  std::vector<std::string> cols{"t"};
  for (std::size_t s = 1; s <= track.n; ++s) {
    cols.push_back("re_" + std::to_string(s));
    cols.push_back("im_" + std::to_string(s));
  }
  w.header(cols);
  for (std::size_t k = 0; k < track.t.size(); ++k) {
    std::vector<std::string> row{fmt(track.t[k])};
    for (std::size_t s = 0; s < track.n; ++s) {
      row.push_back(fmt(track(k, s).real()));
      row.push_back(fmt(track(k, s).imag()));
    }
    w.row(row);
  }
}

inline void write_cut_edges_csv(const std::filesystem::path& path, const RootField& rf) {
  CsvWriter w(path);
  w.header({"x0", "y0", "x1", "y1", "jump"});
  for (std::size_t q = 0; q < rf.cut_edges.size(); ++q) {
    const auto [a, b] = rf.grid.edge_nodes(rf.cut_edges[q]);
    const std::size_t nx = rf.grid.nx();
    w.row({fmt(rf.grid.x(a % nx)), fmt(rf.grid.y(a / nx)), fmt(rf.grid.x(b % nx)), fmt(rf.grid.y(b / nx)),
           fmt(rf.cut_jumps[q])});
  }
}

struct GrowthRow {
  std::size_t N = 0;
  double cut_length = 0.0;
  double lower_bound = 0.0;
};

inline void write_growth_csv(const std::filesystem::path& path, const std::vector<GrowthRow>& rows) {
  CsvWriter w(path);
  w.header({"N", "cut_length", "lower_bound"});
  for (const auto& r : rows) w.row({std::to_string(r.N), fmt(r.cut_length), fmt(r.lower_bound)});
}

/// |f| heatmap (at most 160 x 160 blocks) with curves drawn on top.
inline void write_svg(const std::filesystem::path& path, const ComplexField& f,
                      const std::vector<const LevelCurveSet*>& curves, const std::string& title = "") {
  const Grid2D& g = f.grid();
  const double W = 640.0;
  const double H = W * (g.ymax() - g.ymin()) / (g.xmax() - g.xmin());
  auto px = [&](double x) { return (x - g.xmin()) / (g.xmax() - g.xmin()) * W; };
  auto py = [&](double y) { return H - (y - g.ymin()) / (g.ymax() - g.ymin()) * H; };
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(W) << "\" height=\"" << fmt(H)
      << "\" viewBox=\"0 0 " << fmt(W) << ' ' << fmt(H) << "\">\n";
  if (!title.empty()) out << "<title>" << title << "</title>\n";
  const double fmax = max_abs(f);
  const std::size_t bx = std::min<std::size_t>(160, g.nx() - 1), by = std::min<std::size_t>(160, g.ny() - 1);
  for (std::size_t q = 0; q < by; ++q)
    for (std::size_t p = 0; p < bx; ++p) {
      const double x0 = g.xmin() + (g.xmax() - g.xmin()) * static_cast<double>(p) / static_cast<double>(bx);
      const double x1 = g.xmin() + (g.xmax() - g.xmin()) * static_cast<double>(p + 1) / static_cast<double>(bx);
      const double y0 = g.ymin() + (g.ymax() - g.ymin()) * static_cast<double>(q) / static_cast<double>(by);
      const double y1 = g.ymin() + (g.ymax() - g.ymin()) * static_cast<double>(q + 1) / static_cast<double>(by);
      const double v = fmax > 0.0 ? std::abs(interpolate(f, {0.5 * (x0 + x1), 0.5 * (y0 + y1)})) / fmax : 0.0;
      const int shade = 255 - static_cast<int>(std::lround(200.0 * std::clamp(v, 0.0, 1.0)));
      out << "<rect x=\"" << fmt(px(x0)) << "\" y=\"" << fmt(py(y1)) << "\" width=\"" << fmt(px(x1) - px(x0))
          << "\" height=\"" << fmt(py(y0) - py(y1)) << "\" fill=\"rgb(" << shade << ',' << shade << ",255)\"/>\n";
    }
  const char* colours[] = {"#c0392b", "#27ae60", "#8e44ad", "#d35400"};
  for (std::size_t c = 0; c < curves.size(); ++c) {
    out << "<g stroke=\"" << colours[c % 4] << "\" stroke-width=\"1.5\">\n";
    for (const auto& s : curves[c]->segments)
      out << "<line x1=\"" << fmt(px(s.p0.x)) << "\" y1=\"" << fmt(py(s.p0.y)) << "\" x2=\"" << fmt(px(s.p1.x))
          << "\" y2=\"" << fmt(py(s.p1.y)) << "\"/>\n";
    out << "</g>\n";
  }
  out << "</svg>\n";
}

inline void write_json(const std::filesystem::path& path, const nlohmann::ordered_json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << j.dump(2) << '\n';
}

inline nlohmann::ordered_json to_json(const VariationReport& v) {
  return {{"l1", v.l1},           {"ac_part", v.ac_part}, {"jump_part", v.jump_part},
          {"bv_total", v.bv_total}, {"weak_lp", v.weak_lp}, {"p", v.p}};
}

inline nlohmann::ordered_json to_json(const HolderEstimate& h) {
  return {{"k", h.k},
          {"alpha", h.alpha},
          {"sup_derivatives", h.sup_derivatives},
          {"hoelder_seminorm", h.hoelder_seminorm},
          {"total", h.total}};
}

inline nlohmann::ordered_json to_json(const MonodromyClass& m) {
  nlohmann::ordered_json clusters = nlohmann::ordered_json::array();
  for (std::size_t c = 0; c < m.clusters.size(); ++c)
    clusters.push_back({{"centre", {m.clusters[c].centre.x, m.clusters[c].centre.y}},
                        {"loop", {m.clusters[c].i0, m.clusters[c].j0, m.clusters[c].i1, m.clusters[c].j1}},
                        {"winding", m.winding_numbers[c]}});
  return {{"decision", to_string(m.decision)},
          {"winding", m.winding_numbers},
          {"rationality", m.rationality.to_string()},
          {"clusters", clusters}};
}

inline nlohmann::ordered_json to_json(const BranchCut& c) {
  return {{"direction", {c.direction.real(), c.direction.imag()}},
          {"jump_functional", c.jump_functional},
          {"length", c.curve.total_length},
          {"segments", c.curve.segments.size()},
          {"regular", c.regular}};
}

inline nlohmann::ordered_json to_json(const HolonomyReport& h) {
  nlohmann::ordered_json clusters = nlohmann::ordered_json::array();
  for (const auto& e : h.clusters)
    clusters.push_back({{"location", {e.location.x, e.location.y}},
                        {"loop_nodes", e.loop.nodes.size()},
                        {"permutation", e.cycles}});
  return {{"nontrivial", h.nontrivial}, {"clusters", clusters}};
}

inline nlohmann::ordered_json to_json(const SobolevReport& s) {
  return {{"p", s.p},
          {"sheet_norms", s.sheet_norms},
          {"sheet_energy", s.sheet_energy},
          {"lhs", s.lhs},
          {"energy", s.energy},
          {"rhs_core", s.rhs_core},
          {"ratio", s.ratio},
          {"in_theorem_range", s.in_theorem_range}};
}

}  // namespace bvroots
