#ifndef MLEAT_PERMUTATION_HPP
#define MLEAT_PERMUTATION_HPP

#include <cstddef>
#include <cstdint>
#include <span>

namespace mleat {

struct PermutationStrategy {
  enum class Mode { exact, monte_carlo, auto_select };
  Mode mode = Mode::auto_select;
  std::uint64_t samples = 100000;   // Monte Carlo draws
  std::uint64_t seed = 0;           // Monte Carlo seed
  std::uint64_t exact_limit = 200000;  // max split count exact will enumerate
};

// One-sided tail fractions of the permutation distribution of the first-group
// sum (the pool total is constant, so this orders splits like the group-mean
// difference) using strict comparisons against the observed grouping. Exact
// mode reports
// literal fractions with p_greater + p_less + p_equal == 1; Monte Carlo
// smooths the tails to (count + 1) / (samples + 1) and reports p_equal as the
// plain tie fraction.
struct PValues {
  double p_greater = 0.0;
  double p_less = 0.0;
  double p_equal = 0.0;
  bool all_ties = false;  // every split produced the observed statistic
  PermutationStrategy::Mode resolved_mode = PermutationStrategy::Mode::exact;
  std::uint64_t draws = 0;  // splits enumerated, or samples taken
};

// splitmix64 stream derivation; used to give independent deterministic seeds
// to sub-computations (per level, per chunk).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

// C(n_first + n_second, n_first), saturating at UINT64_MAX on overflow.
std::uint64_t equal_split_count(std::size_t n_first, std::size_t n_second);

// Which mode an auto strategy resolves to for a pool split n_first/n_second:
// exact when sizes are equal and the split count fits exact_limit, otherwise
// Monte Carlo. Explicit modes resolve to themselves.
PermutationStrategy::Mode resolve_mode(const PermutationStrategy& strategy, std::size_t n_first,
                                       std::size_t n_second);

// Full enumeration over all C(n, n_first) splits of pooled (the observed
// grouping is pooled[0 .. n_first) vs the rest).
PValues exact_split_pvalues(std::span<const double> pooled, std::size_t n_first);

// Seeded sampling of splits. Work is cut into fixed 16384-sample chunks with
// seeds derived per chunk, so results are identical no matter how many
// threads execute (threads = 0 picks hardware concurrency).
PValues monte_carlo_split_pvalues(std::span<const double> pooled, std::size_t n_first,
                                  std::uint64_t samples, std::uint64_t seed,
                                  unsigned threads = 1);

// Resolves the strategy and dispatches. Throws PartitionOverflow when exact
// is requested (explicitly) and the split count exceeds exact_limit. Callers
// enforce the equal-sizes precondition of exact mode.
PValues split_pvalues(std::span<const double> pooled, std::size_t n_first,
                      const PermutationStrategy& strategy, unsigned threads = 1);

}  // namespace mleat

#endif
