#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "srd/table.hpp"

namespace srd {

enum class FoldKind {
  Subsample,  // each fold drops ceil(n/k) random rows, drawn independently per fold
  HalfSplit,  // k/2 replications, each a random split into complementary halves
};

std::string_view to_string(FoldKind kind);
FoldKind parse_fold_kind(std::string_view token);

struct FoldScheme {
  FoldKind kind = FoldKind::Subsample;
  std::size_t k = 0;
  std::optional<std::uint64_t> seed;
  /// Retained 0-based row indices per fold, ascending. For HalfSplit, folds
  /// 2i and 2i+1 are the two halves of replication i.
  std::vector<std::vector<std::size_t>> folds;

  friend bool operator==(const FoldScheme&, const FoldScheme&) = default;
};

/// Draws a fold scheme over n rows. A missing seed is replaced by a random one
/// and recorded in the result.
FoldScheme make_folds(std::size_t n, std::size_t k, FoldKind kind,
                      std::optional<std::uint64_t> seed);

/// Checks fold structure against a table of n rows; throws on violations.
void validate_scheme(const FoldScheme& scheme, std::size_t n);

/// fold_srd[f][s]: normalized SRD of solution s on fold f.
using FoldMatrix = std::vector<std::vector<double>>;

/// Re-ranks the retained rows of every fold from scratch and normalizes by
/// max_srd of the retained row count.
FoldMatrix crossval_srd(const DataTable& table, const FoldScheme& scheme);

enum class PairTest { Wilcoxon, Dietterich, Alpaydin };

PairTest parse_pair_test(std::string_view token);
std::string_view to_string(PairTest test);
FoldKind fold_kind_for(PairTest test);
std::size_t default_fold_count(PairTest test);

enum class Significance { NotSignificant, Below10, Below05 };

/// "n.s.", "(p<0.1)" or "(p<0.05*)".
std::string_view label(Significance s);
Significance categorize(double p_value);

struct PairTestResult {
  double statistic = 0.0;
  double p_value = 1.0;
  Significance category = Significance::NotSignificant;
};

struct SignedRankSums {
  double w_plus = 0.0;
  double w_minus = 0.0;
  std::size_t effective_n = 0;  // nonzero differences
};

/// Signed-rank sums of a - b, zero differences dropped, ties fractionally ranked.
SignedRankSums signed_rank_sums(std::span<const double> a, std::span<const double> b);

/// Two-sided exact p-value of the signed-rank test for n nonzero differences
/// and the smaller rank sum `w`. The null is the distribution of the positive
/// rank sum over all 2^n sign assignments to ranks 1..n; a half-integer `w`
/// (from tied ranks) is rounded up before the tail is taken.
double signed_rank_p_value(std::size_t n, double w);

/// Statistic |W+ - W-|. All-zero differences give statistic 0, "n.s.".
PairTestResult wilcoxon_pair_test(std::span<const double> a, std::span<const double> b);

/// 5x2cv-style paired t test generalized to k/2 replications; folds 2i and 2i+1
/// form replication i. Throws when the within-replication variance is zero.
PairTestResult dietterich_pair_test(std::span<const double> a, std::span<const double> b);

/// Combined F test over the same replication layout.
PairTestResult alpaydin_pair_test(std::span<const double> a, std::span<const double> b);

PairTestResult run_pair_test(PairTest test, std::span<const double> a, std::span<const double> b);

/// Box-plot summary; xx1/xx19 and the quartiles use the nearest-rank rule.
struct BoxSummary {
  double min = 0.0;
  double xx1 = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double xx19 = 0.0;
  double max = 0.0;
  double mean = 0.0;
};

BoxSummary box_summary(std::span<const double> values);

struct CrossValReport {
  PairTest test = PairTest::Wilcoxon;
  FoldScheme scheme;
  std::vector<std::string> labels;        // solution labels, input order
  FoldMatrix fold_srd;                    // [fold][solution], input order
  std::vector<std::size_t> column_order;  // solution indices by ascending median
  std::vector<PairTestResult> pair_results;  // adjacent pairs along column_order
  std::vector<BoxSummary> boxes;          // input order

  friend bool operator==(const CrossValReport& a, const CrossValReport& b);
};

/// Orders solutions by median fold SRD (then mean, then index) and tests each
/// adjacent pair. This is the part of the pipeline after fold SRD computation.
CrossValReport assess_folds(std::vector<std::string> labels, FoldMatrix fold_srd, PairTest test,
                            FoldScheme scheme);

CrossValReport cross_validate(const DataTable& table, const FoldScheme& scheme, PairTest test);

/// Full pipeline with the fold layout implied by `test`. Defaults: 8 folds for
/// Wilcoxon, 10 otherwise.
CrossValReport cross_validate(const DataTable& table, PairTest test,
                              std::optional<std::size_t> k = {},
                              std::optional<std::uint64_t> seed = {});

}  // namespace srd
