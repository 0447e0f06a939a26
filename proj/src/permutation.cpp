#include "mleat/permutation.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "mleat/errors.hpp"

namespace mleat {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 step over seed + stream * golden gamma
  std::uint64_t z = seed + stream * 0x9E3779B97F4A7C15ULL + 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t equal_split_count(std::size_t n_first, std::size_t n_second) {
  const std::uint64_t n = n_first + n_second;
  const std::uint64_t k = std::min<std::uint64_t>(n_first, n_second);
  unsigned __int128 c = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    c = c * (n - k + i) / i;  // exact at every step
    if (c > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(c);
}

PermutationStrategy::Mode resolve_mode(const PermutationStrategy& strategy, std::size_t n_first,
                                       std::size_t n_second) {
  using Mode = PermutationStrategy::Mode;
  if (strategy.mode != Mode::auto_select) return strategy.mode;
  if (n_first != n_second) return Mode::monte_carlo;
  return equal_split_count(n_first, n_second) <= strategy.exact_limit ? Mode::exact
                                                                      : Mode::monte_carlo;
}

namespace {

struct TailCounts {
  std::uint64_t greater = 0;
  std::uint64_t less = 0;
  std::uint64_t equal = 0;
};

// Sum over an index combination in ascending index order: the first
// combination (identity) reproduces the observed sum bit for bit.
double combination_sum(std::span<const double> pooled, const std::vector<std::size_t>& idx) {
  double s = 0.0;
  for (std::size_t i : idx) s += pooled[i];
  return s;
}

// Unbiased bounded draw; explicit so results do not depend on the standard
// library's distribution implementation.
std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t threshold = (-bound) % bound;  // 2^64 mod bound
  for (;;) {
    const std::uint64_t x = rng();
    if (x >= threshold) return x % bound;
  }
}

constexpr std::uint64_t kChunkSamples = 16384;

TailCounts run_chunk(std::span<const double> pooled, std::size_t n_first, double observed,
                     std::uint64_t samples, std::uint64_t chunk_seed) {
  TailCounts counts;
  std::mt19937_64 rng(chunk_seed);
  const std::size_t n = pooled.size();
  std::vector<std::size_t> idx(n);
  for (std::uint64_t s = 0; s < samples; ++s) {
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    // partial Fisher-Yates: only the first n_first slots matter
    for (std::size_t k = 0; k < n_first; ++k) {
      const std::size_t j = k + static_cast<std::size_t>(bounded_draw(rng, n - k));
      std::swap(idx[k], idx[j]);
    }
    double sum = 0.0;
    for (std::size_t k = 0; k < n_first; ++k) sum += pooled[idx[k]];
    if (sum > observed)
      ++counts.greater;
    else if (sum < observed)
      ++counts.less;
    else
      ++counts.equal;
  }
  return counts;
}

}  // namespace

PValues exact_split_pvalues(std::span<const double> pooled, std::size_t n_first) {
  const std::size_t n = pooled.size();
  TailCounts counts;
  std::uint64_t total = 0;

  std::vector<std::size_t> idx(n_first);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  const double observed = combination_sum(pooled, idx);

  for (;;) {
    const double sum = combination_sum(pooled, idx);
    if (sum > observed)
      ++counts.greater;
    else if (sum < observed)
      ++counts.less;
    else
      ++counts.equal;
    ++total;

    // advance to the next combination of n_first indices out of n
    std::size_t i = n_first;
    while (i > 0) {
      --i;
      if (idx[i] != i + n - n_first) break;
      if (i == 0) {
        i = n_first;  // signals exhaustion
        break;
      }
    }
    if (i == n_first) break;
    ++idx[i];
    for (std::size_t k = i + 1; k < n_first; ++k) idx[k] = idx[k - 1] + 1;
  }

  PValues out;
  out.resolved_mode = PermutationStrategy::Mode::exact;
  out.draws = total;
  out.p_greater = static_cast<double>(counts.greater) / static_cast<double>(total);
  out.p_less = static_cast<double>(counts.less) / static_cast<double>(total);
  out.p_equal = static_cast<double>(counts.equal) / static_cast<double>(total);
  out.all_ties = counts.equal == total;
  return out;
}

PValues monte_carlo_split_pvalues(std::span<const double> pooled, std::size_t n_first,
                                  std::uint64_t samples, std::uint64_t seed, unsigned threads) {
  std::vector<std::size_t> idx(n_first);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  const double observed = combination_sum(pooled, idx);

  const std::uint64_t n_chunks = (samples + kChunkSamples - 1) / kChunkSamples;
  std::vector<TailCounts> chunk_counts(n_chunks);

  auto chunk_len = [&](std::uint64_t c) {
    return c + 1 == n_chunks ? samples - c * kChunkSamples : kChunkSamples;
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  const unsigned workers =
      static_cast<unsigned>(std::min<std::uint64_t>(threads, n_chunks));

  if (workers <= 1) {
    for (std::uint64_t c = 0; c < n_chunks; ++c)
      chunk_counts[c] = run_chunk(pooled, n_first, observed, chunk_len(c), derive_seed(seed, c));
  } else {
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
      for (;;) {
        const std::uint64_t c = next.fetch_add(1);
        if (c >= n_chunks) return;
        chunk_counts[c] =
            run_chunk(pooled, n_first, observed, chunk_len(c), derive_seed(seed, c));
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  TailCounts counts;
  for (const TailCounts& c : chunk_counts) {
    counts.greater += c.greater;
    counts.less += c.less;
    counts.equal += c.equal;
  }

  PValues out;
  out.resolved_mode = PermutationStrategy::Mode::monte_carlo;
  out.draws = samples;
  out.p_greater = static_cast<double>(counts.greater + 1) / static_cast<double>(samples + 1);
  out.p_less = static_cast<double>(counts.less + 1) / static_cast<double>(samples + 1);
  out.p_equal = static_cast<double>(counts.equal) / static_cast<double>(samples);
  out.all_ties = counts.equal == samples;
  return out;
}

PValues split_pvalues(std::span<const double> pooled, std::size_t n_first,
                      const PermutationStrategy& strategy, unsigned threads) {
  const std::size_t n_second = pooled.size() - n_first;
  const auto mode = resolve_mode(strategy, n_first, n_second);
  if (mode == PermutationStrategy::Mode::exact) {
    const std::uint64_t count = equal_split_count(n_first, n_second);
    if (count > strategy.exact_limit)
      throw PartitionOverflow("exact enumeration needs " + std::to_string(count) +
                              " splits, above the limit of " +
                              std::to_string(strategy.exact_limit));
    return exact_split_pvalues(pooled, n_first);
  }
  return monte_carlo_split_pvalues(pooled, n_first, strategy.samples, strategy.seed, threads);
}

}  // namespace mleat
