#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "whipchain/common.hpp"

namespace whipchain {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct ChartOptions {
  std::string title;
  std::string x_label = "x";
  std::string y_label = "y";
  std::string annotation;  // free-form note drawn in the top-right corner
  bool log_x = false;
  bool log_y = false;
  int width = 640;
  int height = 420;
};

namespace detail {

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

inline double chart_scale(double v, bool log) {
  return log ? std::log10(v) : v;
}

}  // namespace detail

/// Self-contained SVG line chart: inline styles, no external assets. Log
/// axes require strictly positive data. Constant-height series draw as a
/// horizontal line mid-chart.
inline std::string line_chart(const std::vector<Series>& series, const ChartOptions& opt) {
  require(!series.empty(), "chart needs at least one series");
  for (const Series& s : series) {
    require(!s.x.empty(), "series \"" + s.label + "\" is empty");
    require(s.x.size() == s.y.size(), "series \"" + s.label + "\" has mismatched x/y");
    for (size_t i = 0; i < s.x.size(); ++i) {
      require(std::isfinite(s.x[i]) && std::isfinite(s.y[i]), "chart data must be finite");
      if (opt.log_x) require(s.x[i] > 0.0, "log x axis needs positive data");
      if (opt.log_y) require(s.y[i] > 0.0, "log y axis needs positive data");
    }
  }

  double xmin = detail::chart_scale(series[0].x[0], opt.log_x), xmax = xmin;
  double ymin = detail::chart_scale(series[0].y[0], opt.log_y), ymax = ymin;
  for (const Series& s : series)
    for (size_t i = 0; i < s.x.size(); ++i) {
      const double xv = detail::chart_scale(s.x[i], opt.log_x);
      const double yv = detail::chart_scale(s.y[i], opt.log_y);
      xmin = std::min(xmin, xv);
      xmax = std::max(xmax, xv);
      ymin = std::min(ymin, yv);
      ymax = std::max(ymax, yv);
    }
  if (xmax - xmin < 1e-12) {
    xmin -= 0.5;
    xmax += 0.5;
  }
  if (ymax - ymin < 1e-12) {
    ymin -= 0.5;
    ymax += 0.5;
  }

  const double W = opt.width, H = opt.height;
  const double L = 64, R = 16, T = 32, B = 48;  // margins
  const auto px = [&](double xv) { return L + (xv - xmin) / (xmax - xmin) * (W - L - R); };
  const auto py = [&](double yv) { return H - B - (yv - ymin) / (ymax - ymin) * (H - T - B); };

  static const char* palette[] = {"#1b6ca8", "#c23b22", "#2e8b57", "#8a4fbc",
                                  "#b8860b", "#555555"};
  std::string svg;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\" "
                "viewBox=\"0 0 %d %d\" font-family=\"sans-serif\" font-size=\"12\">\n",
                opt.width, opt.height, opt.width, opt.height);
  svg += buf;
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // axes box and ticks (5 per axis, labels in data units)
  std::snprintf(buf, sizeof buf,
                "<rect x=\"%g\" y=\"%g\" width=\"%g\" height=\"%g\" fill=\"none\" "
                "stroke=\"#222\"/>\n",
                L, T, W - L - R, H - T - B);
  svg += buf;
  for (int t = 0; t <= 4; ++t) {
    const double fx = xmin + (xmax - xmin) * t / 4.0;
    const double fy = ymin + (ymax - ymin) * t / 4.0;
    const double gx = px(fx), gy = py(fy);
    const double lx = opt.log_x ? std::pow(10.0, fx) : fx;
    const double ly = opt.log_y ? std::pow(10.0, fy) : fy;
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"#222\"/>"
                  "<text x=\"%g\" y=\"%g\" text-anchor=\"middle\">%s</text>\n",
                  gx, H - B, gx, H - B + 5, gx, H - B + 20, detail::fmt(lx).c_str());
    svg += buf;
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"#222\"/>"
                  "<text x=\"%g\" y=\"%g\" text-anchor=\"end\">%s</text>\n",
                  L - 5, gy, L, gy, L - 8, gy + 4, detail::fmt(ly).c_str());
    svg += buf;
  }

  std::snprintf(buf, sizeof buf,
                "<text x=\"%g\" y=\"%g\" text-anchor=\"middle\" font-size=\"14\">%s</text>\n",
                W / 2, 20.0, opt.title.c_str());
  svg += buf;
  std::snprintf(buf, sizeof buf,
                "<text x=\"%g\" y=\"%g\" text-anchor=\"middle\">%s%s</text>\n", W / 2,
                H - 8, opt.x_label.c_str(), opt.log_x ? " (log)" : "");
  svg += buf;
  std::snprintf(buf, sizeof buf,
                "<text x=\"14\" y=\"%g\" text-anchor=\"middle\" "
                "transform=\"rotate(-90 14 %g)\">%s%s</text>\n",
                H / 2, H / 2, opt.y_label.c_str(), opt.log_y ? " (log)" : "");
  svg += buf;
  if (!opt.annotation.empty()) {
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%g\" y=\"%g\" text-anchor=\"end\" fill=\"#444\">%s</text>\n",
                  W - R - 6, T + 16, opt.annotation.c_str());
    svg += buf;
  }

  for (size_t k = 0; k < series.size(); ++k) {
    const char* color = palette[k % 6];
    std::string pts;
    for (size_t i = 0; i < series[k].x.size(); ++i) {
      const double gx = px(detail::chart_scale(series[k].x[i], opt.log_x));
      const double gy = py(detail::chart_scale(series[k].y[i], opt.log_y));
      pts += detail::fmt(gx) + "," + detail::fmt(gy) + " ";
    }
    svg += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" + color +
           "\" stroke-width=\"1.5\"/>\n";
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%g\" y=\"%g\" fill=\"%s\">%s</text>\n", L + 8,
                  T + 16 + 16.0 * k, color, series[k].label.c_str());
    svg += buf;
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace whipchain
