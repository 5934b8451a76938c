#include "srd/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "srd/error.hpp"

namespace srd {

namespace {

void require_ranked_input(std::span<const double> values) {
  if (values.empty()) throw Error("cannot rank an empty column");
  for (double v : values) {
    if (!std::isfinite(v)) throw Error("cannot rank a non-finite value");
  }
}

void require_reference(const DataTable& table) {
  if (table.cols() < 2) throw Error("SRD needs at least one solution and a reference column");
  if (!table.reference()) throw Error("no reference column designated");
}

}  // namespace

std::vector<std::int64_t> doubled_ranks(std::span<const double> values) {
  require_ranked_input(values);
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

  std::vector<std::int64_t> out(n);
  std::size_t start = 0;
  while (start < n) {
    std::size_t end = start;
    while (end + 1 < n && values[order[end + 1]] == values[order[start]]) ++end;
    // positions start..end (0-based) occupy integer ranks start+1..end+1
    const auto twice_mean = static_cast<std::int64_t>(start + end + 2);
    for (std::size_t k = start; k <= end; ++k) out[order[k]] = twice_mean;
    start = end + 1;
  }
  return out;
}

std::vector<double> fractional_ranks(std::span<const double> values) {
  const auto twice = doubled_ranks(values);
  std::vector<double> out(twice.size());
  std::transform(twice.begin(), twice.end(), out.begin(),
                 [](std::int64_t r) { return static_cast<double>(r) / 2.0; });
  return out;
}

RankMatrix rank_matrix(const DataTable& table) {
  RankMatrix out;
  out.row_labels = table.row_labels();
  for (auto j : table.solution_indices()) {
    out.col_labels.push_back(table.col_labels()[j]);
    out.ranks.push_back(fractional_ranks(table.column(j)));
  }
  return out;
}

std::uint64_t max_srd(std::size_t n) {
  if (n == 0) throw Error("max_srd needs at least one object");
  const auto nn = static_cast<std::uint64_t>(n);
  return nn * nn / 2;
}

double l1_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw Error("l1_distance: length mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(a[i] - b[i]);
  return sum;
}

SrdResult srd_values(const DataTable& table) {
  require_reference(table);
  const auto ref_ranks = fractional_ranks(table.column(*table.reference()));
  const auto f = static_cast<double>(max_srd(table.rows()));

  SrdResult out;
  out.n_objects = table.rows();
  for (auto j : table.solution_indices()) {
    const double raw = l1_distance(fractional_ranks(table.column(j)), ref_ranks);
    out.labels.push_back(table.col_labels()[j]);
    out.raw.push_back(raw);
    // f == 0 only when n == 1, where raw is necessarily 0 as well
    out.normalized.push_back(f > 0 ? raw / f : 0.0);
  }
  return out;
}

DetailedSrd detailed_srd(const DataTable& table) {
  require_reference(table);
  const auto ref = *table.reference();

  DetailedSrd out;
  out.row_labels = table.row_labels();
  out.reference.label = table.col_labels()[ref];
  out.reference.values.assign(table.column(ref).begin(), table.column(ref).end());
  out.reference.ranks = fractional_ranks(table.column(ref));

  for (auto j : table.solution_indices()) {
    DetailedColumn col;
    col.label = table.col_labels()[j];
    col.values.assign(table.column(j).begin(), table.column(j).end());
    col.ranks = fractional_ranks(table.column(j));
    col.distances.resize(table.rows());
    for (std::size_t i = 0; i < table.rows(); ++i) {
      col.distances[i] = std::abs(col.ranks[i] - out.reference.ranks[i]);
    }
    col.raw_srd = std::accumulate(col.distances.begin(), col.distances.end(), 0.0);
    out.solutions.push_back(std::move(col));
  }
  return out;
}

double tie_probability(std::span<const double> values) {
  if (values.size() < 2) throw Error("tie probability needs at least two values");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  std::size_t ties = 0;
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i] == sorted[i - 1]) ++ties;
  }
  return static_cast<double>(ties) / static_cast<double>(sorted.size() - 1);
}

}  // namespace srd
