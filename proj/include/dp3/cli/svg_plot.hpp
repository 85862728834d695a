#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace dp3::cli {

struct PlotSeries {
  std::string label;
  std::string color;
  bool dashed = false;
  std::vector<std::pair<double, double>> points;
};

/// Minimal line plot: frame, ticks, polylines and a legend box.
class LinePlot {
 public:
  LinePlot(std::string title, std::string x_label, std::string y_label);

  void add(PlotSeries series);

  /// Restrict the drawn y range; points outside are clipped.
  void set_y_range(double lo, double hi);

  std::string render() const;
  void write(const std::filesystem::path& path) const;

  std::size_t series_count() const noexcept { return series_.size(); }

 private:
  std::string title_;
  std::string x_label_;
  std::string y_label_;
  std::vector<PlotSeries> series_;
  bool fixed_y_ = false;
  double y_lo_ = 0.0;
  double y_hi_ = 1.0;
};

/// Roughly five tick positions covering [lo, hi] at 1-2-5 spacing.
std::vector<double> nice_ticks(double lo, double hi);

}  // namespace dp3::cli
