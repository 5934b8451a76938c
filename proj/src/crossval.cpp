#include "srd/crossval.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "srd/core.hpp"
#include "srd/error.hpp"
#include "srd/random.hpp"
#include "srd/stats.hpp"

namespace srd {

namespace {

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

// Nearest-rank percentile of sorted data, pct in (0, 100].
double nearest_rank(const std::vector<double>& sorted, std::size_t pct) {
  const std::size_t rank = ceil_div(pct * sorted.size(), 100);
  return sorted[std::max<std::size_t>(rank, 1) - 1];
}

struct Replications {
  std::vector<double> first;   // p_i^(1)
  std::vector<double> second;  // p_i^(2)
  double spread = 0.0;         // sum of s_i^2
};

Replications split_replications(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw Error("paired test needs equally many folds on both sides");
  if (a.size() % 2 != 0 || a.size() < 4) {
    throw Error(fmt::format("replication tests need an even fold count >= 4, got {}", a.size()));
  }
  Replications r;
  for (std::size_t i = 0; i < a.size(); i += 2) {
    const double p1 = a[i] - b[i];
    const double p2 = a[i + 1] - b[i + 1];
    const double mean = (p1 + p2) / 2.0;
    r.first.push_back(p1);
    r.second.push_back(p2);
    r.spread += (p1 - mean) * (p1 - mean) + (p2 - mean) * (p2 - mean);
  }
  if (r.spread == 0.0) throw Error("degenerate variance: fold differences do not vary within replications");
  return r;
}

}  // namespace

std::string_view to_string(FoldKind kind) {
  return kind == FoldKind::Subsample ? "subsample" : "half_split";
}

FoldKind parse_fold_kind(std::string_view token) {
  if (token == "subsample") return FoldKind::Subsample;
  if (token == "half_split") return FoldKind::HalfSplit;
  throw Error(fmt::format("unknown fold scheme '{}'", token));
}

FoldScheme make_folds(std::size_t n, std::size_t k, FoldKind kind,
                      std::optional<std::uint64_t> seed) {
  if (k < 2) throw Error(fmt::format("need at least 2 folds, got {}", k));
  FoldScheme scheme;
  scheme.kind = kind;
  scheme.k = k;
  scheme.seed = seed ? *seed : random_seed();
  Rng rng = make_stream(*scheme.seed, 0);

  if (kind == FoldKind::Subsample) {
    const std::size_t drop = ceil_div(n, k);
    if (n < drop + 2) {
      throw Error(fmt::format("{} rows leave fewer than 2 rows per fold with {} folds", n, k));
    }
    for (std::size_t f = 0; f < k; ++f) {
      const auto dropped = sample_without_replacement(n, drop, rng);
      std::vector<bool> keep(n, true);
      for (auto r : dropped) keep[r] = false;
      std::vector<std::size_t> retained;
      for (std::size_t r = 0; r < n; ++r) {
        if (keep[r]) retained.push_back(r);
      }
      scheme.folds.push_back(std::move(retained));
    }
  } else {
    if (k % 2 != 0) throw Error(fmt::format("half-split folds need an even count, got {}", k));
    if (n / 2 < 2) throw Error(fmt::format("{} rows are too few to split into halves of >= 2", n));
    const std::size_t half = ceil_div(n, 2);
    for (std::size_t rep = 0; rep < k / 2; ++rep) {
      std::vector<std::size_t> order(n);
      std::iota(order.begin(), order.end(), std::size_t{0});
      shuffle(std::span<std::size_t>(order), rng);
      std::vector<std::size_t> first(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(half));
      std::vector<std::size_t> second(order.begin() + static_cast<std::ptrdiff_t>(half), order.end());
      std::sort(first.begin(), first.end());
      std::sort(second.begin(), second.end());
      scheme.folds.push_back(std::move(first));
      scheme.folds.push_back(std::move(second));
    }
  }
  return scheme;
}

void validate_scheme(const FoldScheme& scheme, std::size_t n) {
  if (scheme.folds.size() != scheme.k) {
    throw Error(fmt::format("fold scheme declares {} folds but lists {}", scheme.k, scheme.folds.size()));
  }
  if (scheme.kind == FoldKind::HalfSplit && scheme.k % 2 != 0) {
    throw Error("half-split fold scheme needs an even fold count");
  }
  for (std::size_t f = 0; f < scheme.folds.size(); ++f) {
    const auto& fold = scheme.folds[f];
    if (fold.size() < 2) throw Error(fmt::format("fold {} retains fewer than 2 rows", f + 1));
    for (std::size_t i = 0; i < fold.size(); ++i) {
      if (fold[i] >= n) throw Error(fmt::format("fold {} references row {} of {}", f + 1, fold[i] + 1, n));
      if (i > 0 && fold[i] <= fold[i - 1]) {
        throw Error(fmt::format("fold {} rows must be strictly ascending", f + 1));
      }
    }
  }
}

FoldMatrix crossval_srd(const DataTable& table, const FoldScheme& scheme) {
  validate_scheme(scheme, table.rows());
  FoldMatrix out;
  out.reserve(scheme.folds.size());
  for (const auto& fold : scheme.folds) {
    out.push_back(srd_values(table.select_rows(fold)).normalized);
  }
  return out;
}

PairTest parse_pair_test(std::string_view token) {
  if (token == "wilcoxon" || token == "Wilcoxon") return PairTest::Wilcoxon;
  if (token == "dietterich" || token == "Dietterich") return PairTest::Dietterich;
  if (token == "alpaydin" || token == "Alpaydin") return PairTest::Alpaydin;
  throw Error(fmt::format("unknown test '{}' (expected wilcoxon, dietterich or alpaydin)", token));
}

std::string_view to_string(PairTest test) {
  switch (test) {
    case PairTest::Wilcoxon: return "wilcoxon";
    case PairTest::Dietterich: return "dietterich";
    case PairTest::Alpaydin: return "alpaydin";
  }
  return "?";
}

FoldKind fold_kind_for(PairTest test) {
  return test == PairTest::Wilcoxon ? FoldKind::Subsample : FoldKind::HalfSplit;
}

std::size_t default_fold_count(PairTest test) { return test == PairTest::Wilcoxon ? 8 : 10; }

std::string_view label(Significance s) {
  switch (s) {
    case Significance::NotSignificant: return "n.s.";
    case Significance::Below10: return "(p<0.1)";
    case Significance::Below05: return "(p<0.05*)";
  }
  return "?";
}

Significance categorize(double p_value) {
  if (p_value < 0.05) return Significance::Below05;
  if (p_value < 0.1) return Significance::Below10;
  return Significance::NotSignificant;
}

SignedRankSums signed_rank_sums(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw Error("paired test needs equally many folds on both sides");
  // differences of equal SRD gaps can disagree in the last bits
  double scale = 1.0;
  for (std::size_t i = 0; i < a.size(); ++i) scale = std::max({scale, std::abs(a[i]), std::abs(b[i])});
  const double tol = 1e-9 * scale;
  std::vector<double> diffs;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    if (std::abs(d) > tol) diffs.push_back(d);
  }
  SignedRankSums sums;
  sums.effective_n = diffs.size();
  if (diffs.empty()) return sums;
  std::vector<double> magnitudes(diffs.size());
  std::transform(diffs.begin(), diffs.end(), magnitudes.begin(), [](double d) { return std::abs(d); });
  std::vector<std::size_t> order(magnitudes.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](auto x, auto y) { return magnitudes[x] < magnitudes[y]; });
  double anchor = magnitudes[order.front()];
  for (const auto i : order) {
    if (magnitudes[i] - anchor <= tol) {
      magnitudes[i] = anchor;
    } else {
      anchor = magnitudes[i];
    }
  }
  const auto ranks = fractional_ranks(magnitudes);
  for (std::size_t i = 0; i < diffs.size(); ++i) {
    (diffs[i] > 0 ? sums.w_plus : sums.w_minus) += ranks[i];
  }
  return sums;
}

double signed_rank_p_value(std::size_t n, double w) {
  if (n == 0) return 1.0;
  const std::size_t max_sum = n * (n + 1) / 2;
  // ways[s]: number of subsets of {1..n} summing to s
  std::vector<double> ways(max_sum + 1, 0.0);
  ways[0] = 1.0;
  for (std::size_t r = 1; r <= n; ++r) {
    for (std::size_t s = max_sum; s >= r; --s) ways[s] += ways[s - r];
  }
  const double cutoff = std::ceil(w);
  if (cutoff < 0.0) return 0.0;
  const auto last = std::min(max_sum, static_cast<std::size_t>(cutoff));
  double tail = 0.0;
  for (std::size_t s = 0; s <= last; ++s) tail += ways[s];
  return std::min(1.0, 2.0 * tail / std::ldexp(1.0, static_cast<int>(n)));
}

PairTestResult wilcoxon_pair_test(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 5) throw Error(fmt::format("Wilcoxon test needs at least 5 folds, got {}", a.size()));
  const auto sums = signed_rank_sums(a, b);
  PairTestResult out;
  out.statistic = std::abs(sums.w_plus - sums.w_minus);
  out.p_value = signed_rank_p_value(sums.effective_n, std::min(sums.w_plus, sums.w_minus));
  out.category = categorize(out.p_value);
  return out;
}

PairTestResult dietterich_pair_test(std::span<const double> a, std::span<const double> b) {
  const auto reps = split_replications(a, b);
  const auto r = static_cast<double>(reps.first.size());
  PairTestResult out;
  out.statistic = reps.first.front() / std::sqrt(reps.spread / r);
  out.p_value = stats::student_t_two_sided(out.statistic, r);
  out.category = categorize(out.p_value);
  return out;
}

PairTestResult alpaydin_pair_test(std::span<const double> a, std::span<const double> b) {
  const auto reps = split_replications(a, b);
  const auto r = static_cast<double>(reps.first.size());
  double squares = 0.0;
  for (std::size_t i = 0; i < reps.first.size(); ++i) {
    squares += reps.first[i] * reps.first[i] + reps.second[i] * reps.second[i];
  }
  PairTestResult out;
  out.statistic = squares / (2.0 * reps.spread);
  out.p_value = stats::f_upper_tail(out.statistic, 2.0 * r, r);
  out.category = categorize(out.p_value);
  return out;
}

PairTestResult run_pair_test(PairTest test, std::span<const double> a, std::span<const double> b) {
  switch (test) {
    case PairTest::Wilcoxon: return wilcoxon_pair_test(a, b);
    case PairTest::Dietterich: return dietterich_pair_test(a, b);
    case PairTest::Alpaydin: return alpaydin_pair_test(a, b);
  }
  throw Error("unknown pair test");
}

BoxSummary box_summary(std::span<const double> values) {
  if (values.empty()) throw Error("box summary of an empty sample");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  BoxSummary box;
  box.min = sorted.front();
  box.xx1 = nearest_rank(sorted, 5);
  box.q1 = nearest_rank(sorted, 25);
  box.median = nearest_rank(sorted, 50);
  box.q3 = nearest_rank(sorted, 75);
  box.xx19 = nearest_rank(sorted, 95);
  box.max = sorted.back();
  box.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  return box;
}

bool operator==(const CrossValReport& a, const CrossValReport& b) {
  auto same_results = [](const std::vector<PairTestResult>& x, const std::vector<PairTestResult>& y) {
    return std::equal(x.begin(), x.end(), y.begin(), y.end(), [](const auto& p, const auto& q) {
      return p.statistic == q.statistic && p.p_value == q.p_value && p.category == q.category;
    });
  };
  auto same_boxes = [](const std::vector<BoxSummary>& x, const std::vector<BoxSummary>& y) {
    return std::equal(x.begin(), x.end(), y.begin(), y.end(), [](const auto& p, const auto& q) {
      return p.min == q.min && p.xx1 == q.xx1 && p.q1 == q.q1 && p.median == q.median &&
             p.q3 == q.q3 && p.xx19 == q.xx19 && p.max == q.max && p.mean == q.mean;
    });
  };
  return a.test == b.test && a.scheme == b.scheme && a.labels == b.labels &&
         a.fold_srd == b.fold_srd && a.column_order == b.column_order &&
         same_results(a.pair_results, b.pair_results) && same_boxes(a.boxes, b.boxes);
}

CrossValReport assess_folds(std::vector<std::string> labels, FoldMatrix fold_srd, PairTest test,
                            FoldScheme scheme) {
  if (fold_srd.empty()) throw Error("no folds to assess");
  const std::size_t m = labels.size();
  for (const auto& row : fold_srd) {
    if (row.size() != m) throw Error("fold SRD row width does not match the solution count");
  }

  CrossValReport report;
  report.test = test;
  report.scheme = std::move(scheme);
  report.labels = std::move(labels);
  report.fold_srd = std::move(fold_srd);

  std::vector<std::vector<double>> per_solution(m);
  for (std::size_t s = 0; s < m; ++s) {
    for (const auto& row : report.fold_srd) per_solution[s].push_back(row[s]);
    report.boxes.push_back(box_summary(per_solution[s]));
  }

  report.column_order.resize(m);
  std::iota(report.column_order.begin(), report.column_order.end(), std::size_t{0});
  std::stable_sort(report.column_order.begin(), report.column_order.end(),
                   [&](std::size_t x, std::size_t y) {
                     const auto& bx = report.boxes[x];
                     const auto& by = report.boxes[y];
                     if (bx.median != by.median) return bx.median < by.median;
                     return bx.mean < by.mean;
                   });

  for (std::size_t i = 0; i + 1 < m; ++i) {
    const auto lo = report.column_order[i];
    const auto hi = report.column_order[i + 1];
    try {
      report.pair_results.push_back(run_pair_test(test, per_solution[lo], per_solution[hi]));
    } catch (const Error& e) {
      throw Error(fmt::format("{} vs {}: {}", report.labels[lo], report.labels[hi], e.what()));
    }
  }
  return report;
}

CrossValReport cross_validate(const DataTable& table, const FoldScheme& scheme, PairTest test) {
  auto fold_srd = crossval_srd(table, scheme);
  std::vector<std::string> labels;
  for (auto j : table.solution_indices()) labels.push_back(table.col_labels()[j]);
  return assess_folds(std::move(labels), std::move(fold_srd), test, scheme);
}

CrossValReport cross_validate(const DataTable& table, PairTest test, std::optional<std::size_t> k,
                              std::optional<std::uint64_t> seed) {
  const auto scheme =
      make_folds(table.rows(), k.value_or(default_fold_count(test)), fold_kind_for(test), seed);
  return cross_validate(table, scheme, test);
}

}  // namespace srd
