#pragma once

#include <string_view>
#include <vector>

#include "srd/table.hpp"

namespace srd {

enum class Scaler {
  ScaleToUnit,  // divide by the column's Euclidean norm
  Standardize,  // subtract mean, divide by sample standard deviation
  RangeScale,   // map [min, max] onto [0, 1]
  ScaleToMax,   // divide by the column maximum
};

Scaler parse_scaler(std::string_view token);
std::string_view to_string(Scaler s);

/// Applies `method` to every column independently (the reference included).
/// Each transform is strictly increasing, so ranks are preserved. Throws with
/// the offending column's label when a divisor would be zero.
DataTable preprocess_table(const DataTable& table, Scaler method);

enum class RowAggregate { Max, Min, Median, Mean };

RowAggregate parse_row_aggregate(std::string_view token);

/// How to synthesize a reference column from the solutions. A uniform
/// aggregate applies to every row; a mixed spec lists one aggregate per row.
struct ReferenceSpec {
  static ReferenceSpec uniform(RowAggregate how) { return {false, how, {}}; }
  static ReferenceSpec mixed(std::vector<RowAggregate> per_row) {
    return {true, RowAggregate::Mean, std::move(per_row)};
  }

  bool is_mixed = false;
  RowAggregate aggregate = RowAggregate::Mean;
  std::vector<RowAggregate> per_row;
};

/// Parses "max", "min", "median", "mean" or "mixed:<agg>,<agg>,...".
ReferenceSpec parse_reference_spec(std::string_view token);

/// Returns a copy of the solution columns with an appended "refCol" column
/// holding the per-row aggregate, designated as the reference. A previously
/// designated reference column is dropped. The input is not modified.
DataTable create_reference(const DataTable& table, const ReferenceSpec& spec);

}  // namespace srd
