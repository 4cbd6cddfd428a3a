// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <stdexcept>
#include <vector>

#include "qst/runner.hpp"

namespace qst {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kMarginLeft = 72.0;
constexpr double kMarginRight = 160.0;  // room for the legend
constexpr double kMarginTop = 28.0;
constexpr double kMarginBottom = 56.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                          "#9467bd", "#ff7f0e", "#8c564b"};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string label(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

double metric_value(const SweepRecord& r, Metric m) {
  switch (m) {
    case Metric::kFidelity:
      return r.f_av;
    case Metric::kPurity:
      return r.gamma_av;
    case Metric::kConcurrence:
      return r.c_av;
  }
  return r.f_av;
}

std::string axis_title(Metric m) {
  switch (m) {
    case Metric::kFidelity:
      return "average fidelity";
    case Metric::kPurity:
      return "average purity";
    case Metric::kConcurrence:
      return "average concurrence";
  }
  return "";
}

struct Series {
  std::string name;
  std::vector<std::pair<double, double>> points;  // (sigma, value)
};

}  // namespace

void emit_plot(const std::vector<SweepRecord>& records, Metric metric,
               std::ostream& out, const PlotMeta& meta) {
  if (records.empty()) throw std::invalid_argument("emit_plot: no records");

  std::set<double> sigmas;
  for (const SweepRecord& r : records) sigmas.insert(r.sigma);
  if (sigmas.size() < 2)
    throw std::invalid_argument(
        "emit_plot: need records covering at least 2 sigma points");

  // group by frame, preserving first-appearance order
  std::vector<Series> series;
  for (const SweepRecord& r : records) {
    auto it = std::find_if(series.begin(), series.end(),
                           [&](const Series& s) { return s.name == r.frame; });
    if (it == series.end()) {
      series.push_back(Series{r.frame, {}});
      it = std::prev(series.end());
    }
    it->points.emplace_back(r.sigma, metric_value(r, metric));
  }
  for (Series& s : series)
    std::sort(s.points.begin(), s.points.end());

  const double x_min = *sigmas.begin();
  const double x_max = *sigmas.rbegin();
  double y_min = 1e300, y_max = -1e300;
  for (const Series& s : series)
    for (const auto& [x, y] : s.points) {
      y_min = std::min(y_min, y);
      y_max = std::max(y_max, y);
    }
  const double threshold = 1.0 / std::sqrt(2.0);
  if (metric == Metric::kConcurrence) {
    y_min = std::min(y_min, threshold);
    y_max = std::max(y_max, threshold);
  }
  double pad = 0.06 * (y_max - y_min);
  if (pad <= 0.0) pad = 0.05;
  y_min -= pad;
  y_max += pad;

  const double plot_w = kWidth - kMarginLeft - kMarginRight;
  const double plot_h = kHeight - kMarginTop - kMarginBottom;
  auto map_x = [&](double v) {
    return kMarginLeft + (v - x_min) / (x_max - x_min) * plot_w;
  };
  auto map_y = [&](double v) {
    return kMarginTop + (1.0 - (v - y_min) / (y_max - y_min)) * plot_h;
  };

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
      << kHeight << "\">\n";
  out << "<!-- master_seed=" << meta.master_seed << " config_digest="
      << (meta.config_digest.empty() ? "none" : meta.config_digest)
      << " -->\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // axes
  const double x0 = kMarginLeft, x1 = kMarginLeft + plot_w;
  const double y0 = kMarginTop + plot_h, y1 = kMarginTop;
  out << "<line x1=\"" << num(x0) << "\" y1=\"" << num(y0) << "\" x2=\""
      << num(x1) << "\" y2=\"" << num(y0)
      << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  out << "<line x1=\"" << num(x0) << "\" y1=\"" << num(y0) << "\" x2=\""
      << num(x0) << "\" y2=\"" << num(y1)
      << "\" stroke=\"black\" stroke-width=\"1\"/>\n";

  // x ticks: at the sigma values when few, evenly spaced otherwise
  std::vector<double> x_ticks;
  if (sigmas.size() <= 10) {
    x_ticks.assign(sigmas.begin(), sigmas.end());
  } else {
    for (int i = 0; i <= 6; ++i)
      x_ticks.push_back(x_min + (x_max - x_min) * i / 6.0);
  }
  for (double tx : x_ticks) {
    const double px = map_x(tx);
    out << "<line x1=\"" << num(px) << "\" y1=\"" << num(y0) << "\" x2=\""
        << num(px) << "\" y2=\"" << num(y0 + 5)
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << num(px) << "\" y=\"" << num(y0 + 20)
        << "\" font-size=\"12\" text-anchor=\"middle\">" << label(tx)
        << "</text>\n";
  }
  for (int i = 0; i <= 5; ++i) {
    const double ty = y_min + (y_max - y_min) * i / 5.0;
    const double py = map_y(ty);
    out << "<line x1=\"" << num(x0 - 5) << "\" y1=\"" << num(py) << "\" x2=\""
        << num(x0) << "\" y2=\"" << num(py)
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << num(x0 - 9) << "\" y=\"" << num(py + 4)
        << "\" font-size=\"12\" text-anchor=\"end\">" << label(ty)
        << "</text>\n";
  }
  out << "<text x=\"" << num(x0 + plot_w / 2) << "\" y=\""
      << num(kHeight - 14)
      << "\" font-size=\"14\" text-anchor=\"middle\">sigma (rad)</text>\n";
  out << "<text x=\"18\" y=\"" << num(y1 + plot_h / 2)
      << "\" font-size=\"14\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << num(y1 + plot_h / 2) << ")\">" << axis_title(metric) << "</text>\n";

  // entanglement-detection threshold for concurrence plots
  if (metric == Metric::kConcurrence) {
    const double py = map_y(threshold);
    out << "<line x1=\"" << num(x0) << "\" y1=\"" << num(py) << "\" x2=\""
        << num(x1) << "\" y2=\"" << num(py)
        << "\" stroke=\"gray\" stroke-width=\"1\" stroke-dasharray=\"6,4\"/>"
        << "\n";
    out << "<text x=\"" << num(x1 - 4) << "\" y=\"" << num(py - 6)
        << "\" font-size=\"12\" text-anchor=\"end\" fill=\"gray\">"
        << "1/sqrt(2) = 0.7071</text>\n";
  }

  for (std::size_t i = 0; i < series.size(); ++i) {
    const char* color = kPalette[i % (sizeof(kPalette) / sizeof(*kPalette))];
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"2\" points=\"";
    for (std::size_t p = 0; p < series[i].points.size(); ++p) {
      const auto& [sx, sy] = series[i].points[p];
      out << (p ? " " : "") << num(map_x(sx)) << ',' << num(map_y(sy));
    }
    out << "\"/>\n";
    // legend
    const double ly = y1 + 16 + 20 * static_cast<double>(i);
    out << "<line x1=\"" << num(x1 + 12) << "\" y1=\"" << num(ly) << "\" x2=\""
        << num(x1 + 40) << "\" y2=\"" << num(ly) << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << num(x1 + 46) << "\" y=\"" << num(ly + 4)
        << "\" font-size=\"13\">" << series[i].name << "</text>\n";
  }
  out << "</svg>\n";
}

void emit_plot(const std::vector<SweepRecord>& records, Metric metric,
               const std::string& path, const PlotMeta& meta) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("emit_plot: cannot write " + path);
  emit_plot(records, metric, out, meta);
  if (!out) throw std::runtime_error("emit_plot: write failed for " + path);
}

}  // namespace qst
