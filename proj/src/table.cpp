#include "srd/table.hpp"

#include <cmath>
#include <unordered_set>

#include <fmt/format.h>

#include "srd/error.hpp"

namespace srd {

namespace {

void require_unique(const std::vector<std::string>& labels, const char* what) {
  std::unordered_set<std::string> seen;
  for (const auto& label : labels) {
    if (!seen.insert(label).second) {
      throw Error(fmt::format("duplicate {} label '{}'", what, label));
    }
  }
}

}  // namespace

DataTable::DataTable(std::vector<std::string> row_labels, std::vector<std::string> col_labels,
                     std::vector<std::vector<double>> columns,
                     std::optional<std::size_t> reference)
    : row_labels_(std::move(row_labels)),
      col_labels_(std::move(col_labels)),
      columns_(std::move(columns)),
      reference_(reference) {
  if (row_labels_.empty()) throw Error("table has no rows");
  if (col_labels_.empty()) throw Error("table has no columns");
  if (columns_.size() != col_labels_.size()) {
    throw Error(fmt::format("table has {} column labels but {} columns", col_labels_.size(),
                            columns_.size()));
  }
  for (std::size_t j = 0; j < columns_.size(); ++j) {
    if (columns_[j].size() != row_labels_.size()) {
      throw Error(fmt::format("column '{}' has {} entries, expected {}", col_labels_[j],
                              columns_[j].size(), row_labels_.size()));
    }
    for (std::size_t i = 0; i < columns_[j].size(); ++i) {
      if (!std::isfinite(columns_[j][i])) {
        throw Error(fmt::format("non-finite value at row '{}', column '{}'", row_labels_[i],
                                col_labels_[j]));
      }
    }
  }
  require_unique(row_labels_, "row");
  require_unique(col_labels_, "column");
  if (reference_ && *reference_ >= columns_.size()) {
    throw Error(fmt::format("reference column index {} out of range", *reference_));
  }
}

std::optional<std::size_t> DataTable::find_column(const std::string& label) const {
  for (std::size_t j = 0; j < col_labels_.size(); ++j) {
    if (col_labels_[j] == label) return j;
  }
  return std::nullopt;
}

std::vector<std::size_t> DataTable::solution_indices() const {
  std::vector<std::size_t> out;
  out.reserve(cols());
  for (std::size_t j = 0; j < cols(); ++j) {
    if (!reference_ || *reference_ != j) out.push_back(j);
  }
  return out;
}

DataTable DataTable::with_reference(std::optional<std::size_t> reference) const {
  return DataTable(row_labels_, col_labels_, columns_, reference);
}

DataTable DataTable::select_rows(std::span<const std::size_t> rows) const {
  std::vector<std::string> labels;
  labels.reserve(rows.size());
  for (auto r : rows) {
    if (r >= this->rows()) throw Error(fmt::format("row index {} out of range", r));
    labels.push_back(row_labels_[r]);
  }
  std::vector<std::vector<double>> kept(columns_.size());
  for (std::size_t j = 0; j < columns_.size(); ++j) {
    kept[j].reserve(rows.size());
    for (auto r : rows) kept[j].push_back(columns_[j][r]);
  }
  return DataTable(std::move(labels), col_labels_, std::move(kept), reference_);
}

DataTable DataTable::transposed() const {
  std::vector<std::vector<double>> flipped(rows(), std::vector<double>(cols()));
  for (std::size_t j = 0; j < cols(); ++j) {
    for (std::size_t i = 0; i < rows(); ++i) flipped[i][j] = columns_[j][i];
  }
  return DataTable(col_labels_, row_labels_, std::move(flipped), std::nullopt);
}

}  // namespace srd
