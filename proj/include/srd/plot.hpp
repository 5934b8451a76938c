#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "srd/core.hpp"
#include "srd/crossval.hpp"
#include "srd/distribution.hpp"
#include "srd/table.hpp"

namespace srd {

/// Square matrix of normalized SRD distances between labelled columns.
struct DistanceMatrix {
  std::vector<std::string> labels;
  std::vector<std::vector<double>> values;  // values[i][j]
};

/// Entry (i, j) is the normalized SRD of column i with column j as the
/// reference. Every column takes part, the designated reference included.
DistanceMatrix pairwise_srd(const DataTable& table);

/// Ordered #RRGGBB colours; b entries split [0, 1] into b equal buckets.
class Palette {
 public:
  explicit Palette(std::vector<std::string> colors);

  /// Eight-step ramp from red (SRD near 0) to blue (SRD near 1).
  static Palette default_palette();

  /// Parses a comma-separated colour list.
  static Palette parse(std::string_view list);

  std::size_t size() const noexcept { return colors_.size(); }
  const std::string& color(std::size_t i) const { return colors_.at(i); }
  const std::vector<std::string>& colors() const noexcept { return colors_; }

  /// min(floor(value * b), b - 1), with negative values in bucket 0.
  std::size_t bucket(double value) const;

 private:
  std::vector<std::string> colors_;
};

/// A standalone SVG document plus the plotted numbers as delimited text.
struct ChartDocument {
  std::string svg;
  std::string data;
};

/// Bars at x = normalized SRD with height equal to that value, ordered left
/// to right like the legend, over the null pdf (or cdf when `cumulative`),
/// with dashed XX1 / XX19 markers.
ChartDocument plot_perm_test(const SrdResult& result, const SrdDistribution& dist, bool cumulative);

/// Box-and-whisker chart of fold SRD values in median order, with "<" between
/// significantly different neighbours and "~" otherwise.
ChartDocument plot_crossval(const CrossValReport& report);

ChartDocument plot_heatmap(const DistanceMatrix& matrix, const Palette& palette);

}  // namespace srd
