#include "mcs/cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace mcs::cli {

namespace {

constexpr double kWidth = 720;
constexpr double kHeight = 440;
constexpr double kLeft = 70;
constexpr double kRight = 170;
constexpr double kTop = 40;
constexpr double kBottom = 60;

const char* colour(std::size_t i) {
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                  "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
  return palette[i % 10];
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Extent {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void settle() {
    if (!std::isfinite(lo)) {
      lo = 0.0;
      hi = 1.0;
    }
    if (hi - lo < 1e-12) {
      const double pad = std::max(1e-6, std::abs(lo) * 0.05);
      lo -= pad;
      hi += pad;
    }
  }
};

void frame(std::ostringstream& out, const ChartLabels& labels, const Extent& xs, const Extent& ys, bool x_ticks) {
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth) << "\" height=\"" << num(kHeight)
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << num(kWidth / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
      << escape(labels.title) << "</text>\n";
  out << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(plot_w) << "\" height=\""
      << num(plot_h) << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double v = ys.lo + (ys.hi - ys.lo) * i / 4.0;
    const double y = kTop + plot_h * (1.0 - i / 4.0);
    out << "<line x1=\"" << num(kLeft - 4) << "\" y1=\"" << num(y) << "\" x2=\"" << num(kLeft) << "\" y2=\""
        << num(y) << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(y + 4) << "\" text-anchor=\"end\">" << num(v)
        << "</text>\n";
    if (x_ticks) {
      const double xv = xs.lo + (xs.hi - xs.lo) * i / 4.0;
      const double x = kLeft + plot_w * i / 4.0;
      out << "<text x=\"" << num(x) << "\" y=\"" << num(kTop + plot_h + 16) << "\" text-anchor=\"middle\">"
          << num(xv) << "</text>\n";
    }
  }
  out << "<text x=\"" << num(kLeft + plot_w / 2) << "\" y=\"" << num(kHeight - 18) << "\" text-anchor=\"middle\">"
      << escape(labels.x_label) << "</text>\n";
  out << "<text x=\"16\" y=\"" << num(kTop + plot_h / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << num(kTop + plot_h / 2) << ")\">" << escape(labels.y_label) << "</text>\n";
}

void legend(std::ostringstream& out, const std::vector<Series>& series) {
  const double x = kWidth - kRight + 14;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const double y = kTop + 10 + 18.0 * static_cast<double>(i);
    out << "<line x1=\"" << num(x) << "\" y1=\"" << num(y) << "\" x2=\"" << num(x + 22) << "\" y2=\"" << num(y)
        << "\" stroke=\"" << colour(i) << "\" stroke-width=\"2\"" << (series[i].dashed ? " stroke-dasharray=\"5,3\"" : "")
        << "/>\n";
    out << "<text x=\"" << num(x + 28) << "\" y=\"" << num(y + 4) << "\">" << escape(series[i].name) << "</text>\n";
  }
}

}  // namespace

std::string line_chart(const ChartLabels& labels, const std::vector<Series>& series) {
  Extent xs;
  Extent ys;
  for (const Series& s : series) {
    for (double v : s.x) xs.add(v);
    for (double v : s.y) ys.add(v);
  }
  xs.settle();
  ys.settle();
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;

  std::ostringstream out;
  frame(out, labels, xs, ys, true);
  for (std::size_t i = 0; i < series.size(); ++i) {
    const Series& s = series[i];
    out << "<polyline fill=\"none\" stroke=\"" << colour(i) << "\" stroke-width=\"1.5\""
        << (s.dashed ? " stroke-dasharray=\"5,3\"" : "") << " points=\"";
    const std::size_t n = std::min(s.x.size(), s.y.size());
    for (std::size_t k = 0; k < n; ++k) {
      if (!std::isfinite(s.x[k]) || !std::isfinite(s.y[k])) continue;
      const double px = kLeft + plot_w * (s.x[k] - xs.lo) / (xs.hi - xs.lo);
      const double py = kTop + plot_h * (1.0 - (s.y[k] - ys.lo) / (ys.hi - ys.lo));
      out << num(px) << ',' << num(py) << ' ';
    }
    out << "\"/>\n";
  }
  legend(out, series);
  out << "</svg>\n";
  return out.str();
}

std::string bar_chart(const ChartLabels& labels, const std::vector<std::string>& categories,
                      const std::vector<Series>& series) {
  Extent ys;
  ys.add(0.0);
  for (const Series& s : series) {
    for (double v : s.y) ys.add(v);
  }
  ys.settle();
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;

  std::ostringstream out;
  frame(out, labels, Extent{}, ys, false);
  const double group_w = plot_w / static_cast<double>(std::max<std::size_t>(1, categories.size()));
  const double bar_w = 0.8 * group_w / static_cast<double>(std::max<std::size_t>(1, series.size()));
  const double zero_y = kTop + plot_h * (1.0 - (0.0 - ys.lo) / (ys.hi - ys.lo));
  for (std::size_t c = 0; c < categories.size(); ++c) {
    const double gx = kLeft + group_w * static_cast<double>(c) + 0.1 * group_w;
    for (std::size_t i = 0; i < series.size(); ++i) {
      if (c >= series[i].y.size() || !std::isfinite(series[i].y[c])) continue;
      const double vy = kTop + plot_h * (1.0 - (series[i].y[c] - ys.lo) / (ys.hi - ys.lo));
      out << "<rect x=\"" << num(gx + bar_w * static_cast<double>(i)) << "\" y=\"" << num(std::min(vy, zero_y))
          << "\" width=\"" << num(bar_w) << "\" height=\"" << num(std::abs(zero_y - vy)) << "\" fill=\""
          << colour(i) << "\"/>\n";
    }
    out << "<text x=\"" << num(gx + 0.4 * group_w) << "\" y=\"" << num(kTop + plot_h + 16)
        << "\" text-anchor=\"middle\">" << escape(categories[c]) << "</text>\n";
  }
  legend(out, series);
  out << "</svg>\n";
  return out.str();
}

}  // namespace mcs::cli
