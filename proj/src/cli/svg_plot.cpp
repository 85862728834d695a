#include "dp3/cli/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "dp3/core.hpp"

namespace dp3::cli {
namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

std::string coord(double x) { return fmt("%.2f", x); }

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
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

}  // namespace

std::vector<double> nice_ticks(double lo, double hi) {
  if (!(hi > lo)) return {lo};
  const double raw = (hi - lo) / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    step = m * mag;
    if (step >= raw) break;
  }
  std::vector<double> ticks;
  const double first = std::ceil(lo / step - 1e-9) * step;
  for (double t = first; t <= hi + 1e-9 * step; t += step) {
    ticks.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
  }
  return ticks;
}

LinePlot::LinePlot(std::string title, std::string x_label, std::string y_label)
    : title_(std::move(title)), x_label_(std::move(x_label)), y_label_(std::move(y_label)) {}

void LinePlot::add(PlotSeries series) { series_.push_back(std::move(series)); }

void LinePlot::set_y_range(double lo, double hi) {
  if (!(hi > lo)) fail(ErrorCode::InvalidConfig, "empty y range");
  fixed_y_ = true;
  y_lo_ = lo;
  y_hi_ = hi;
}

std::string LinePlot::render() const {
  double x_lo = std::numeric_limits<double>::infinity();
  double x_hi = -x_lo;
  double y_lo = x_lo;
  double y_hi = -x_lo;
  for (const auto& s : series_) {
    for (const auto& [x, y] : s.points) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      x_lo = std::min(x_lo, x);
      x_hi = std::max(x_hi, x);
      y_lo = std::min(y_lo, y);
      y_hi = std::max(y_hi, y);
    }
  }
  if (!std::isfinite(x_lo)) {
    x_lo = 0.0;
    x_hi = 1.0;
    y_lo = 0.0;
    y_hi = 1.0;
  }
  if (fixed_y_) {
    y_lo = y_lo_;
    y_hi = y_hi_;
  }
  if (x_hi <= x_lo) x_hi = x_lo + 1.0;
  if (y_hi <= y_lo) {
    const double pad = std::max(1e-12, std::abs(y_lo) * 0.1);
    y_lo -= pad;
    y_hi += pad;
  }
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * pw; };
  auto py = [&](double y) {
    const double c = std::clamp(y, y_lo, y_hi);
    return kTop + (y_hi - c) / (y_hi - y_lo) * ph;
  };

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + coord(kWidth) +
         "\" height=\"" + coord(kHeight) + "\" viewBox=\"0 0 " + coord(kWidth) + " " +
         coord(kHeight) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<text x=\"" + coord(kWidth / 2) + "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" +
         escape(title_) + "</text>\n";
  out += "<rect x=\"" + coord(kLeft) + "\" y=\"" + coord(kTop) + "\" width=\"" + coord(pw) +
         "\" height=\"" + coord(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";

  for (double t : nice_ticks(x_lo, x_hi)) {
    const double x = px(t);
    out += "<line x1=\"" + coord(x) + "\" y1=\"" + coord(kTop + ph) + "\" x2=\"" + coord(x) +
           "\" y2=\"" + coord(kTop + ph + 5) + "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + coord(x) + "\" y=\"" + coord(kTop + ph + 18) +
           "\" text-anchor=\"middle\">" + fmt("%g", t) + "</text>\n";
  }
  for (double t : nice_ticks(y_lo, y_hi)) {
    const double y = py(t);
    out += "<line x1=\"" + coord(kLeft - 5) + "\" y1=\"" + coord(y) + "\" x2=\"" + coord(kLeft) +
           "\" y2=\"" + coord(y) + "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + coord(kLeft - 8) + "\" y=\"" + coord(y + 4) +
           "\" text-anchor=\"end\">" + fmt("%g", t) + "</text>\n";
  }
  out += "<text x=\"" + coord(kLeft + pw / 2) + "\" y=\"" + coord(kHeight - 16) +
         "\" text-anchor=\"middle\">" + escape(x_label_) + "</text>\n";
  out += "<text x=\"18\" y=\"" + coord(kTop + ph / 2) +
         "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " + coord(kTop + ph / 2) + ")\">" +
         escape(y_label_) + "</text>\n";

  for (const auto& s : series_) {
    out += "<polyline fill=\"none\" stroke=\"" + s.color + "\" stroke-width=\"1.5\"";
    if (s.dashed) out += " stroke-dasharray=\"6 4\"";
    out += " points=\"";
    bool first = true;
    for (const auto& [x, y] : s.points) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      if (!first) out += ' ';
      out += coord(px(x)) + "," + coord(py(y));
      first = false;
    }
    out += "\"/>\n";
  }

  // legend, top right
  const double lx = kLeft + pw - 190.0;
  double ly = kTop + 10.0;
  out += "<rect x=\"" + coord(lx - 8) + "\" y=\"" + coord(ly - 4) + "\" width=\"188\" height=\"" +
         coord(18.0 * static_cast<double>(series_.size()) + 6.0) +
         "\" fill=\"white\" stroke=\"#888888\"/>\n";
  for (const auto& s : series_) {
    out += "<line x1=\"" + coord(lx) + "\" y1=\"" + coord(ly + 8) + "\" x2=\"" + coord(lx + 28) +
           "\" y2=\"" + coord(ly + 8) + "\" stroke=\"" + s.color + "\" stroke-width=\"1.5\"";
    if (s.dashed) out += " stroke-dasharray=\"6 4\"";
    out += "/>\n";
    out += "<text x=\"" + coord(lx + 36) + "\" y=\"" + coord(ly + 12) + "\">" + escape(s.label) +
           "</text>\n";
    ly += 18.0;
  }
  out += "</svg>\n";
  return out;
}

void LinePlot::write(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  out << render();
  if (!out) fail(ErrorCode::IoError, "write failed for " + path.string());
}

}  // namespace dp3::cli
