#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "srd/random.hpp"
#include "srd/table.hpp"

namespace srd {

/// How random rankings are drawn for the CRRN null distribution.
enum class NullModel : char {
  FixedReference = 'n',  // tie-free solutions vs the table's reference
  RandomBoth = 'r',      // tie-free solution and reference both random
  TiedBoth = 't',        // solution and reference tied with a given probability
  TiedSolution = 'p',    // solution tied with a given probability, reference fixed
  SolutionTies = 'd',    // solution ties follow a randomly picked solution column
  ReferenceTies = 'f',   // solution ties follow the reference column
};

NullModel parse_null_model(std::string_view token);
char to_char(NullModel m);

struct Thresholds {
  double xx1 = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double xx19 = 0.0;
  double mean = 0.0;
  double std_dev = 0.0;
};

struct DistributionMeta {
  NullModel option = NullModel::ReferenceTies;
  std::optional<double> tie_probability;
  std::uint64_t sample_count = 0;
  std::optional<std::uint64_t> seed;
  bool exact = false;
  std::size_t n_objects = 0;
};

/// Discrete distribution of normalized SRD values. Every attainable value is a
/// multiple of 0.5 / max_srd(n), so the distribution is stored as integer
/// counts indexed by twice the raw SRD; frequencies are counts / total.
class SrdDistribution {
 public:
  /// `counts[h]` is the number of draws whose raw SRD equals h / 2.
  SrdDistribution(std::span<const std::uint64_t> counts, DistributionMeta meta);

  const std::vector<double>& support() const noexcept { return support_; }
  const std::vector<double>& frequency() const noexcept { return frequency_; }
  const std::vector<std::uint64_t>& counts() const noexcept { return counts_; }
  std::uint64_t total() const noexcept { return total_; }
  const Thresholds& thresholds() const noexcept { return thresholds_; }
  const DistributionMeta& meta() const noexcept { return meta_; }

  /// Spacing of the support grid, 0.5 / max_srd(n).
  double grid_step() const noexcept { return step_; }

  friend bool operator==(const SrdDistribution& a, const SrdDistribution& b) {
    return a.support_ == b.support_ && a.counts_ == b.counts_;
  }

 private:
  std::vector<double> support_;
  std::vector<std::uint64_t> counts_;
  std::vector<double> frequency_;
  std::uint64_t total_ = 0;
  double step_ = 0.0;
  Thresholds thresholds_;
  DistributionMeta meta_;
};

/// xx1, q1, median, q3 and xx19 are the smallest support values v with
/// P(D <= v) >= 0.05, 0.25, 0.5, 0.75 and 0.95. Comparisons are done on
/// integer counts.
Thresholds extract_thresholds(const SrdDistribution& dist);

/// One random rank column of length n: sorted positions are merged with the
/// previous group with probability `tie_prob` at each of the n-1 boundaries,
/// groups get fractional ranks, and the ranks are then randomly permuted.
std::vector<double> random_tied_ranking(std::size_t n, double tie_prob, Rng& rng);

struct GenerationConfig {
  NullModel option = NullModel::ReferenceTies;
  std::optional<double> tie_probability;  // required for 't' and 'p'
  std::uint64_t samples = 1'000'000;
  std::optional<std::uint64_t> seed;      // drawn at random and recorded when absent
  unsigned workers = 1;                   // 0 = one per hardware thread
};

/// Monte-Carlo null distribution for the table's size and reference. The
/// result depends only on (table, option, tie probability, samples, seed);
/// the worker count changes speed, never the output.
SrdDistribution generate_distribution(const DataTable& table, const GenerationConfig& config);

/// Exact null distribution over all n! tie-free solution rankings against a
/// fixed reference rank column (the identity when absent). 2 <= n <= 10.
SrdDistribution exact_distribution(std::size_t n,
                                   std::optional<std::span<const double>> reference_ranks = {});

enum class Verdict { SignificantSimilar, NotDistinguishable, SignificantDissimilar };

std::string_view to_string(Verdict v);

/// Inclusive on both thresholds: a value equal to xx1 counts as similar.
Verdict classify(double normalized_srd, const Thresholds& thresholds);

}  // namespace srd
