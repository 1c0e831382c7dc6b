#include "svg_chart.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "lfpc/error.hpp"

namespace lfpc::cli {

namespace {

constexpr std::array<const char*, 8> kPalette = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                                 "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

std::string px(double v) { return fmt("%.2f", v); }

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string tick_label(double v, bool percent, bool years) {
  if (years) return fmt("%.0f", v);
  if (std::fabs(v) < 1e-12) v = 0.0;
  if (percent) {
    const double pct = v * 100.0;
    return fmt(std::fabs(pct) < 10.0 && pct != std::round(pct) ? "%.1f%%" : "%.0f%%", pct);
  }
  return fmt("%g", v);
}

}  // namespace

std::vector<double> nice_ticks(double lo, double hi, int target) {
  if (!(hi > lo)) {
    const double pad = lo == 0.0 ? 1.0 : std::fabs(lo) * 0.1;
    lo -= pad;
    hi += pad;
  }
  const double raw = (hi - lo) / std::max(target, 1);
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (m * mag >= raw) {
      step = m * mag;
      break;
    }
  }
  std::vector<double> ticks;
  const double first = std::floor(lo / step) * step;
  for (double t = first; t <= hi + step * 0.5; t += step) ticks.push_back(std::round(t / step) * step);
  return ticks;
}

std::string emit_svg_chart(const ChartSpec& spec) {
  if (spec.series.empty()) throw InputError("chart has no series");
  double xmin = std::numeric_limits<double>::infinity();
  double xmax = -xmin;
  double ymin = xmin;
  double ymax = -xmin;
  for (const auto& s : spec.series) {
    if (s.x.empty() || s.x.size() != s.y.size()) {
      throw InputError("chart series '" + s.label + "' is empty or ragged");
    }
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, s.y[i]);
      ymax = std::max(ymax, s.y[i]);
    }
  }
  if (spec.x_years) {
    xmin = std::floor(xmin);
    xmax = std::ceil(xmax);
  }
  const auto xt = nice_ticks(xmin, xmax);
  const auto yt = nice_ticks(ymin, ymax);
  const double x0 = std::min(xmin, xt.front());
  const double x1 = std::max(xmax, xt.back());
  const double y0 = std::min(ymin, yt.front());
  const double y1 = std::max(ymax, yt.back());

  const double left = 70, right = 20, top = 40, bottom = 55;
  const double legend_h = 18.0 * static_cast<double>(spec.series.size());
  const double pw = spec.width - left - right;
  const double ph = spec.height - top - bottom;
  auto sx = [&](double v) { return left + (x1 > x0 ? (v - x0) / (x1 - x0) : 0.5) * pw; };
  auto sy = [&](double v) { return top + ph - (y1 > y0 ? (v - y0) / (y1 - y0) : 0.5) * ph; };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec.width << "\" height=\""
    << spec.height << "\" viewBox=\"0 0 " << spec.width << ' ' << spec.height << "\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!spec.title.empty()) {
    o << "<text x=\"" << px(spec.width / 2.0) << "\" y=\"22\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"15\">" << escape(spec.title) << "</text>\n";
  }
  o << "<g class=\"grid\" stroke=\"#e0e0e0\" stroke-width=\"1\">\n";
  for (double t : yt) {
    if (t < y0 || t > y1) continue;
    o << "<line x1=\"" << px(left) << "\" y1=\"" << px(sy(t)) << "\" x2=\"" << px(left + pw)
      << "\" y2=\"" << px(sy(t)) << "\"/>\n";
  }
  o << "</g>\n";
  o << "<g class=\"axes\" stroke=\"black\" stroke-width=\"1\">\n"
    << "<line x1=\"" << px(left) << "\" y1=\"" << px(top + ph) << "\" x2=\"" << px(left + pw)
    << "\" y2=\"" << px(top + ph) << "\"/>\n"
    << "<line x1=\"" << px(left) << "\" y1=\"" << px(top) << "\" x2=\"" << px(left)
    << "\" y2=\"" << px(top + ph) << "\"/>\n</g>\n";

  o << "<g class=\"ticks\" font-family=\"sans-serif\" font-size=\"11\">\n";
  for (double t : xt) {
    if (t < x0 || t > x1) continue;
    o << "<line x1=\"" << px(sx(t)) << "\" y1=\"" << px(top + ph) << "\" x2=\"" << px(sx(t))
      << "\" y2=\"" << px(top + ph + 5) << "\" stroke=\"black\"/>"
      << "<text x=\"" << px(sx(t)) << "\" y=\"" << px(top + ph + 18)
      << "\" text-anchor=\"middle\">" << tick_label(t, spec.x_percent, spec.x_years)
      << "</text>\n";
  }
  for (double t : yt) {
    if (t < y0 || t > y1) continue;
    o << "<line x1=\"" << px(left - 5) << "\" y1=\"" << px(sy(t)) << "\" x2=\"" << px(left)
      << "\" y2=\"" << px(sy(t)) << "\" stroke=\"black\"/>"
      << "<text x=\"" << px(left - 8) << "\" y=\"" << px(sy(t) + 4)
      << "\" text-anchor=\"end\">" << tick_label(t, spec.y_percent, false) << "</text>\n";
  }
  o << "</g>\n";
  if (!spec.x_label.empty()) {
    o << "<text x=\"" << px(left + pw / 2) << "\" y=\"" << px(spec.height - 12.0)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
      << escape(spec.x_label) << "</text>\n";
  }
  if (!spec.y_label.empty()) {
    o << "<text transform=\"translate(16," << px(top + ph / 2) << ") rotate(-90)\" "
      << "text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
      << escape(spec.y_label) << "</text>\n";
  }

  for (std::size_t k = 0; k < spec.series.size(); ++k) {
    const auto& s = spec.series[k];
    const char* color = kPalette[k % kPalette.size()];
    if (s.mark == Mark::Line) {
      o << "<polyline class=\"series\" fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.8\" points=\"";
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        o << (i ? " " : "") << px(sx(s.x[i])) << ',' << px(sy(s.y[i]));
      }
      o << "\"/>\n";
    } else {
      o << "<g class=\"series\" fill=\"" << color << "\">\n";
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        o << "<circle cx=\"" << px(sx(s.x[i])) << "\" cy=\"" << px(sy(s.y[i])) << "\" r=\"3\"/>\n";
      }
      o << "</g>\n";
    }
  }

  const double lx = left + pw - 190.0;
  double ly = top + 8.0;
  o << "<g class=\"legend\" font-family=\"sans-serif\" font-size=\"11\">\n";
  o << "<rect x=\"" << px(lx - 6) << "\" y=\"" << px(ly - 4) << "\" width=\"190\" height=\""
    << px(legend_h + 4) << "\" fill=\"white\" fill-opacity=\"0.85\" stroke=\"#999\"/>\n";
  for (std::size_t k = 0; k < spec.series.size(); ++k) {
    const char* color = kPalette[k % kPalette.size()];
    o << "<g class=\"legend-entry\">";
    if (spec.series[k].mark == Mark::Line) {
      o << "<line x1=\"" << px(lx) << "\" y1=\"" << px(ly + 7) << "\" x2=\"" << px(lx + 20)
        << "\" y2=\"" << px(ly + 7) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>";
    } else {
      o << "<rect x=\"" << px(lx + 7) << "\" y=\"" << px(ly + 4) << "\" width=\"6\" height=\"6\" fill=\""
        << color << "\"/>";
    }
    o << "<text x=\"" << px(lx + 26) << "\" y=\"" << px(ly + 11) << "\">"
      << escape(spec.series[k].label) << "</text></g>\n";
    ly += 18.0;
  }
  o << "</g>\n</svg>\n";
  return o.str();
}

ChartSpec scatter_with_line(std::string title, std::string x_label, std::string y_label,
                            const std::vector<double>& x, const std::vector<double>& y,
                            double intercept, double slope) {
  if (x.empty()) throw InputError("scatter needs at least one point");
  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  ChartSpec spec;
  spec.title = std::move(title);
  spec.x_label = std::move(x_label);
  spec.y_label = std::move(y_label);
  spec.x_years = false;
  spec.x_percent = true;
  spec.series.push_back({"observations", x, y, Mark::Points});
  spec.series.push_back({"regression", {*lo, *hi}, {intercept + slope * *lo, intercept + slope * *hi},
                         Mark::Line});
  return spec;
}

}  // namespace lfpc::cli
