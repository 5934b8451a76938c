#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "srd/table.hpp"

namespace srd {

/// Ascending fractional ranks: the smallest value gets rank 1 and tied values
/// share the mean of the integer ranks they occupy. Ties are detected by exact
/// equality. Throws on empty input or non-finite values.
std::vector<double> fractional_ranks(std::span<const double> values);

/// Same ranking, returned as twice the rank so every entry is an integer.
std::vector<std::int64_t> doubled_ranks(std::span<const double> values);

struct RankMatrix {
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  std::vector<std::vector<double>> ranks;  // column-major
};

/// Ranks every solution column independently. The designated reference
/// column, if any, is left out of the result.
RankMatrix rank_matrix(const DataTable& table);

/// Largest possible L1 distance between two rankings of n objects: floor(n^2 / 2).
std::uint64_t max_srd(std::size_t n);

/// Sum of absolute element-wise differences.
double l1_distance(std::span<const double> a, std::span<const double> b);

struct SrdResult {
  std::vector<std::string> labels;
  std::vector<double> raw;
  std::vector<double> normalized;
  std::size_t n_objects = 0;
};

/// SRD of every solution column against the designated reference, in input
/// column order.
SrdResult srd_values(const DataTable& table);

struct DetailedColumn {
  std::string label;
  std::vector<double> values;
  std::vector<double> ranks;
  std::vector<double> distances;  // empty for the reference
  double raw_srd = 0.0;
};

/// Step-by-step SRD computation: values, ranks and per-row rank distances of
/// each solution plus the reference values and ranks.
struct DetailedSrd {
  std::vector<std::string> row_labels;
  std::vector<DetailedColumn> solutions;
  DetailedColumn reference;
};

DetailedSrd detailed_srd(const DataTable& table);

/// Fraction of the n-1 adjacent slots in sorted order that hold equal values.
double tie_probability(std::span<const double> values);

}  // namespace srd
