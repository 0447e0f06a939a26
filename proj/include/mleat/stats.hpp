#ifndef MLEAT_STATS_HPP
#define MLEAT_STATS_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace mleat {

enum class StdConvention { sample, population };

// Pairwise (tree) summation. Deterministic for a given element order.
double pairwise_sum(std::span<const double> values);

// All reductions below sort an owned copy of the values first, so any
// permutation of the same multiset produces bit-identical results.
double sorted_sum(std::vector<double> values);
double sorted_mean(std::vector<double> values);

struct MeanStd {
  double mean = 0.0;
  double std_dev = 0.0;
};

// std_dev uses the n-1 denominator under StdConvention::sample (0 when n == 1)
// and the n denominator under population. A run of identical values yields an
// exact zero std_dev and mean equal to that value.
MeanStd sorted_mean_std(std::vector<double> values, StdConvention convention);

}  // namespace mleat

#endif
