#include "srd/distribution.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <thread>

#include <fmt/format.h>

#include "srd/core.hpp"
#include "srd/error.hpp"

namespace srd {

namespace {

constexpr std::uint64_t kBlockSize = 1 << 16;

using Ranks = std::vector<std::int64_t>;  // doubled ranks

// Doubled fractional ranks of a random tied ranking, written into `out`.
void fill_tied(std::span<std::int64_t> out, double tie_prob, Rng& rng) {
  const std::size_t n = out.size();
  std::size_t start = 0;
  for (std::size_t i = 1; i <= n; ++i) {
    if (i < n && uniform01(rng) < tie_prob) continue;
    // group covers 0-based positions start..i-1, i.e. integer ranks start+1..i
    const auto twice_mean = static_cast<std::int64_t>(start + 1 + i);
    std::fill(out.begin() + static_cast<std::ptrdiff_t>(start),
              out.begin() + static_cast<std::ptrdiff_t>(i), twice_mean);
    start = i;
  }
  shuffle(out, rng);
}

void fill_permutation(std::span<std::int64_t> out, Rng& rng) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<std::int64_t>(2 * (i + 1));
  shuffle(out, rng);
}

std::uint64_t doubled_distance(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(a[i] - b[i]);
  return static_cast<std::uint64_t>(sum);
}

void require_probability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(fmt::format("tie probability {} outside [0, 1]", p));
}

// Draws one (solution, reference) pair per call according to the null model.
class Sampler {
 public:
  Sampler(const DataTable& table, const GenerationConfig& config)
      : option_(config.option), n_(table.rows()) {
    const bool needs_prob =
        option_ == NullModel::TiedBoth || option_ == NullModel::TiedSolution;
    if (needs_prob) {
      if (!config.tie_probability) {
        throw Error(fmt::format("option '{}' needs a tie probability", to_char(option_)));
      }
      require_probability(*config.tie_probability);
      tie_prob_ = *config.tie_probability;
    }
    const bool fixed_reference =
        option_ != NullModel::RandomBoth && option_ != NullModel::TiedBoth;
    if (fixed_reference) {
      if (!table.reference()) throw Error("no reference column designated");
      reference_ = doubled_ranks(table.column(*table.reference()));
    }
    if (option_ == NullModel::ReferenceTies) {
      tie_prob_ = tie_probability(table.column(*table.reference()));
    }
    if (option_ == NullModel::SolutionTies) {
      for (auto j : table.solution_indices()) donor_probs_.push_back(tie_probability(table.column(j)));
      if (donor_probs_.empty()) throw Error("option 'd' needs at least one solution column");
    }
  }

  std::optional<double> recorded_tie_probability() const {
    if (option_ == NullModel::TiedBoth || option_ == NullModel::TiedSolution ||
        option_ == NullModel::ReferenceTies) {
      return tie_prob_;
    }
    return std::nullopt;
  }

  void run_block(Rng& rng, std::uint64_t draws, std::vector<std::uint64_t>& hist) const {
    Ranks solution(n_);
    Ranks reference = reference_.empty() ? Ranks(n_) : reference_;
    for (std::uint64_t s = 0; s < draws; ++s) {
      switch (option_) {
        case NullModel::FixedReference:
          fill_permutation(solution, rng);
          break;
        case NullModel::RandomBoth:
          fill_permutation(solution, rng);
          fill_permutation(reference, rng);
          break;
        case NullModel::TiedBoth:
          fill_tied(solution, tie_prob_, rng);
          fill_tied(reference, tie_prob_, rng);
          break;
        case NullModel::TiedSolution:
        case NullModel::ReferenceTies:
          fill_tied(solution, tie_prob_, rng);
          break;
        case NullModel::SolutionTies: {
          const auto donor = uniform_below(rng, donor_probs_.size());
          fill_tied(solution, donor_probs_[donor], rng);
          break;
        }
      }
      ++hist[doubled_distance(solution, reference)];
    }
  }

 private:
  NullModel option_;
  std::size_t n_;
  double tie_prob_ = 0.0;
  Ranks reference_;
  std::vector<double> donor_probs_;
};

std::uint64_t histogram_size(std::size_t n) { return 2 * max_srd(n) + 1; }

}  // namespace

NullModel parse_null_model(std::string_view token) {
  if (token.size() == 1) {
    switch (token[0]) {
      case 'n': return NullModel::FixedReference;
      case 'r': return NullModel::RandomBoth;
      case 't': return NullModel::TiedBoth;
      case 'p': return NullModel::TiedSolution;
      case 'd': return NullModel::SolutionTies;
      case 'f': return NullModel::ReferenceTies;
      default: break;
    }
  }
  throw Error(fmt::format("unknown distribution option '{}' (expected one of n, r, t, p, d, f)", token));
}

char to_char(NullModel m) { return static_cast<char>(m); }

SrdDistribution::SrdDistribution(std::span<const std::uint64_t> counts, DistributionMeta meta)
    : meta_(std::move(meta)) {
  if (meta_.n_objects < 2) throw Error("SRD distribution needs at least two objects");
  const auto f = max_srd(meta_.n_objects);
  if (counts.size() > 2 * f + 1) throw Error("distribution counts exceed the attainable range");
  step_ = 0.5 / static_cast<double>(f);
  for (std::size_t h = 0; h < counts.size(); ++h) {
    if (counts[h] == 0) continue;
    // one rounding, so values compare equal to raw / max_srd(n)
    support_.push_back(static_cast<double>(h) / (2.0 * static_cast<double>(f)));
    counts_.push_back(counts[h]);
    total_ += counts[h];
  }
  if (total_ == 0) throw Error("empty SRD distribution");
  frequency_.reserve(counts_.size());
  for (auto c : counts_) frequency_.push_back(static_cast<double>(c) / static_cast<double>(total_));
  thresholds_ = extract_thresholds(*this);
}

Thresholds extract_thresholds(const SrdDistribution& dist) {
  const auto& v = dist.support();
  const auto& c = dist.counts();
  const std::uint64_t total = dist.total();
  if (v.empty() || total == 0) throw Error("cannot extract thresholds from an empty distribution");

  Thresholds t;
  // cumulative counts P(D <= v[i]) * total
  std::vector<std::uint64_t> cum(c.size());
  std::partial_sum(c.begin(), c.end(), cum.begin());

  auto quantile = [&](std::uint64_t num, std::uint64_t den) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (cum[i] * den >= num * total) return v[i];
    }
    return v.back();
  };
  // every threshold is the smallest support value whose cumulative share
  // reaches its level
  t.q1 = quantile(1, 4);
  t.median = quantile(1, 2);
  t.q3 = quantile(3, 4);

  t.xx1 = quantile(1, 20);
  t.xx19 = quantile(19, 20);

  double mean = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) mean += v[i] * dist.frequency()[i];
  double var = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    var += (v[i] - mean) * (v[i] - mean) * dist.frequency()[i];
  }
  t.mean = mean;
  t.std_dev = std::sqrt(var);
  return t;
}

std::vector<double> random_tied_ranking(std::size_t n, double tie_prob, Rng& rng) {
  if (n == 0) throw Error("random ranking needs at least one object");
  require_probability(tie_prob);
  Ranks twice(n);
  fill_tied(twice, tie_prob, rng);
  std::vector<double> out(n);
  std::transform(twice.begin(), twice.end(), out.begin(),
                 [](std::int64_t r) { return static_cast<double>(r) / 2.0; });
  return out;
}

SrdDistribution generate_distribution(const DataTable& table, const GenerationConfig& config) {
  const std::size_t n = table.rows();
  if (n < 2) throw Error("SRD distribution needs at least two objects");
  if (config.samples == 0) throw Error("sample count must be positive");

  const Sampler sampler(table, config);
  const std::uint64_t seed = config.seed ? *config.seed : random_seed();
  const std::uint64_t blocks = (config.samples + kBlockSize - 1) / kBlockSize;
  const auto bins = histogram_size(n);

  unsigned workers = config.workers == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                         : config.workers;
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, blocks));

  // Each block has its own sub-stream, so the merged integer histogram does
  // not depend on which worker ran which block.
  std::atomic<std::uint64_t> next_block{0};
  std::vector<std::vector<std::uint64_t>> partial(workers, std::vector<std::uint64_t>(bins, 0));
  auto work = [&](unsigned w) {
    for (auto b = next_block.fetch_add(1); b < blocks; b = next_block.fetch_add(1)) {
      Rng rng = make_stream(seed, b);
      const auto draws = std::min(kBlockSize, config.samples - b * kBlockSize);
      sampler.run_block(rng, draws, partial[w]);
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
  }

  std::vector<std::uint64_t> hist(bins, 0);
  for (const auto& p : partial) {
    for (std::size_t h = 0; h < bins; ++h) hist[h] += p[h];
  }

  DistributionMeta meta;
  meta.option = config.option;
  meta.tie_probability = sampler.recorded_tie_probability();
  meta.sample_count = config.samples;
  meta.seed = seed;
  meta.exact = false;
  meta.n_objects = n;
  return SrdDistribution(hist, std::move(meta));
}

SrdDistribution exact_distribution(std::size_t n,
                                   std::optional<std::span<const double>> reference_ranks) {
  if (n < 2 || n > 10) {
    throw Error(fmt::format("exact enumeration supports 2 <= n <= 10, got {}", n));
  }
  Ranks reference(n);
  if (reference_ranks) {
    if (reference_ranks->size() != n) throw Error("reference ranking length does not match n");
    for (std::size_t i = 0; i < n; ++i) {
      const double twice = 2.0 * (*reference_ranks)[i];
      if (twice != std::round(twice) || twice < 2.0 || twice > 2.0 * static_cast<double>(n)) {
        throw Error("reference ranks must be half-integers in [1, n]");
      }
      reference[i] = static_cast<std::int64_t>(twice);
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) reference[i] = static_cast<std::int64_t>(2 * (i + 1));
  }

  Ranks perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<std::int64_t>(2 * (i + 1));
  std::vector<std::uint64_t> hist(histogram_size(n), 0);
  std::uint64_t count = 0;
  do {
    ++hist[doubled_distance(perm, reference)];
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));

  DistributionMeta meta;
  meta.option = NullModel::FixedReference;
  meta.sample_count = count;
  meta.exact = true;
  meta.n_objects = n;
  return SrdDistribution(hist, std::move(meta));
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::SignificantSimilar: return "SignificantSimilar";
    case Verdict::NotDistinguishable: return "NotDistinguishable";
    case Verdict::SignificantDissimilar: return "SignificantDissimilar";
  }
  return "?";
}

Verdict classify(double normalized_srd, const Thresholds& thresholds) {
  if (normalized_srd <= thresholds.xx1) return Verdict::SignificantSimilar;
  if (normalized_srd >= thresholds.xx19) return Verdict::SignificantDissimilar;
  return Verdict::NotDistinguishable;
}

}  // namespace srd
