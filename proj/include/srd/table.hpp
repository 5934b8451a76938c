#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace srd {

/// Named real-valued matrix. Rows are objects, columns are solutions; one
/// column may be designated as the reference. Storage is column-major.
///
/// The constructor validates every invariant (rectangular, finite, unique
/// labels, reference in range) and throws srd::Error otherwise, so any
/// DataTable value in hand is well formed.
class DataTable {
 public:
  DataTable(std::vector<std::string> row_labels, std::vector<std::string> col_labels,
            std::vector<std::vector<double>> columns, std::optional<std::size_t> reference);

  std::size_t rows() const noexcept { return row_labels_.size(); }
  std::size_t cols() const noexcept { return col_labels_.size(); }

  std::span<const double> column(std::size_t j) const { return columns_.at(j); }
  double at(std::size_t i, std::size_t j) const { return columns_.at(j).at(i); }

  const std::vector<std::string>& row_labels() const noexcept { return row_labels_; }
  const std::vector<std::string>& col_labels() const noexcept { return col_labels_; }
  const std::vector<std::vector<double>>& columns() const noexcept { return columns_; }

  std::optional<std::size_t> reference() const noexcept { return reference_; }

  /// Index of the column labelled `label`, if any.
  std::optional<std::size_t> find_column(const std::string& label) const;

  /// Indices of all non-reference columns, in input order.
  std::vector<std::size_t> solution_indices() const;

  DataTable with_reference(std::optional<std::size_t> reference) const;

  /// Restricts to the given rows (in the given order). Indices are 0-based.
  DataTable select_rows(std::span<const std::size_t> rows) const;

  /// Swaps rows and columns. The result has no designated reference.
  DataTable transposed() const;

  friend bool operator==(const DataTable&, const DataTable&) = default;

 private:
  std::vector<std::string> row_labels_;
  std::vector<std::string> col_labels_;
  std::vector<std::vector<double>> columns_;
  std::optional<std::size_t> reference_;
};

}  // namespace srd
