#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace srd {

using Rng = std::mt19937_64;

/// Independent generator for sub-stream `stream` of a master seed. Seeding goes
/// through std::seed_seq, whose algorithm is fixed by the standard, so streams
/// are reproducible across platforms.
Rng make_stream(std::uint64_t seed, std::uint64_t stream);

/// A fresh nondeterministic seed, for callers that did not supply one.
std::uint64_t random_seed();

/// Unbiased integer in [0, bound). `bound` must be positive.
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);

/// Uniform double in [0, 1) with 53 random bits.
double uniform01(Rng& rng);

template <typename T>
void shuffle(std::span<T> items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(uniform_below(rng, i));
    std::swap(items[i - 1], items[j]);
  }
}

/// `count` distinct indices from [0, n), in random order.
std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t count, Rng& rng);

}  // namespace srd
