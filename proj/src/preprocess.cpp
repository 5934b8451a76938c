#include "srd/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <fmt/format.h>

#include "srd/error.hpp"

namespace srd {

namespace {

std::vector<double> scale_column(std::span<const double> x, Scaler method,
                                 const std::string& label) {
  std::vector<double> out(x.begin(), x.end());
  switch (method) {
    case Scaler::ScaleToUnit: {
      const double norm =
          std::sqrt(std::inner_product(x.begin(), x.end(), x.begin(), 0.0));
      if (norm == 0.0) throw Error(fmt::format("column '{}' has zero norm", label));
      for (auto& v : out) v /= norm;
      break;
    }
    case Scaler::Standardize: {
      if (x.size() < 2) throw Error(fmt::format("column '{}' needs two values to standardize", label));
      const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
      double ss = 0.0;
      for (double v : x) ss += (v - mean) * (v - mean);
      const double sd = std::sqrt(ss / static_cast<double>(x.size() - 1));
      if (sd == 0.0) throw Error(fmt::format("column '{}' is constant", label));
      for (auto& v : out) v = (v - mean) / sd;
      break;
    }
    case Scaler::RangeScale: {
      const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
      const double range = *hi - *lo;
      if (range == 0.0) throw Error(fmt::format("column '{}' is constant", label));
      const double min = *lo;
      for (auto& v : out) v = (v - min) / range;
      break;
    }
    case Scaler::ScaleToMax: {
      const double max = *std::max_element(x.begin(), x.end());
      if (!(max > 0.0)) throw Error(fmt::format("column '{}' has a non-positive maximum", label));
      for (auto& v : out) v /= max;
      break;
    }
  }
  return out;
}

double aggregate_row(std::vector<double> row, RowAggregate how) {
  switch (how) {
    case RowAggregate::Max:
      return *std::max_element(row.begin(), row.end());
    case RowAggregate::Min:
      return *std::min_element(row.begin(), row.end());
    case RowAggregate::Mean:
      return std::accumulate(row.begin(), row.end(), 0.0) / static_cast<double>(row.size());
    case RowAggregate::Median: {
      std::sort(row.begin(), row.end());
      const std::size_t mid = row.size() / 2;
      return row.size() % 2 == 1 ? row[mid] : (row[mid - 1] + row[mid]) / 2.0;
    }
  }
  return 0.0;
}

}  // namespace

Scaler parse_scaler(std::string_view token) {
  if (token == "scale_to_unit") return Scaler::ScaleToUnit;
  if (token == "standardize") return Scaler::Standardize;
  if (token == "range_scale") return Scaler::RangeScale;
  if (token == "scale_to_max") return Scaler::ScaleToMax;
  throw Error(fmt::format("unknown preprocessing method '{}'", token));
}

std::string_view to_string(Scaler s) {
  switch (s) {
    case Scaler::ScaleToUnit: return "scale_to_unit";
    case Scaler::Standardize: return "standardize";
    case Scaler::RangeScale: return "range_scale";
    case Scaler::ScaleToMax: return "scale_to_max";
  }
  return "?";
}

DataTable preprocess_table(const DataTable& table, Scaler method) {
  std::vector<std::vector<double>> cols;
  cols.reserve(table.cols());
  for (std::size_t j = 0; j < table.cols(); ++j) {
    cols.push_back(scale_column(table.column(j), method, table.col_labels()[j]));
  }
  return DataTable(table.row_labels(), table.col_labels(), std::move(cols), table.reference());
}

RowAggregate parse_row_aggregate(std::string_view token) {
  if (token == "max") return RowAggregate::Max;
  if (token == "min") return RowAggregate::Min;
  if (token == "median") return RowAggregate::Median;
  if (token == "mean") return RowAggregate::Mean;
  throw Error(fmt::format("unknown reference method '{}'", token));
}

ReferenceSpec parse_reference_spec(std::string_view token) {
  constexpr std::string_view mixed_prefix = "mixed:";
  if (token.substr(0, mixed_prefix.size()) != mixed_prefix) {
    return ReferenceSpec::uniform(parse_row_aggregate(token));
  }
  std::vector<RowAggregate> per_row;
  auto rest = token.substr(mixed_prefix.size());
  while (true) {
    const auto comma = rest.find(',');
    per_row.push_back(parse_row_aggregate(rest.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  return ReferenceSpec::mixed(std::move(per_row));
}

DataTable create_reference(const DataTable& table, const ReferenceSpec& spec) {
  if (spec.is_mixed && spec.per_row.size() != table.rows()) {
    throw Error(fmt::format("mixed reference lists {} methods for {} rows", spec.per_row.size(),
                            table.rows()));
  }
  const auto solutions = table.solution_indices();
  if (solutions.empty()) throw Error("no solution columns to build a reference from");

  std::vector<std::string> labels;
  std::vector<std::vector<double>> cols;
  for (auto j : solutions) {
    labels.push_back(table.col_labels()[j]);
    cols.emplace_back(table.column(j).begin(), table.column(j).end());
  }

  std::vector<double> ref(table.rows());
  for (std::size_t i = 0; i < table.rows(); ++i) {
    std::vector<double> row;
    row.reserve(solutions.size());
    for (auto j : solutions) row.push_back(table.at(i, j));
    ref[i] = aggregate_row(std::move(row), spec.is_mixed ? spec.per_row[i] : spec.aggregate);
  }
  labels.emplace_back("refCol");
  cols.push_back(std::move(ref));
  const auto ref_index = cols.size() - 1;
  return DataTable(table.row_labels(), std::move(labels), std::move(cols), ref_index);
}

}  // namespace srd
