#include "mleat/stats.hpp"

#include <algorithm>
#include <cmath>

namespace mleat {

namespace {

constexpr std::size_t kLinearBlock = 32;

double pairwise_sum_range(const double* v, std::size_t n) {
  if (n <= kLinearBlock) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += v[i];
    return acc;
  }
  const std::size_t half = n / 2;
  return pairwise_sum_range(v, half) + pairwise_sum_range(v + half, n - half);
}

}  // namespace

double pairwise_sum(std::span<const double> values) {
  return pairwise_sum_range(values.data(), values.size());
}

double sorted_sum(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  return pairwise_sum(values);
}

double sorted_mean(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  if (values.front() == values.back()) return values.front();
  return pairwise_sum(values) / static_cast<double>(values.size());
}

MeanStd sorted_mean_std(std::vector<double> values, StdConvention convention) {
  MeanStd out;
  const std::size_t n = values.size();
  if (n == 0) return out;
  std::sort(values.begin(), values.end());
  if (values.front() == values.back()) {
    // All identical: exact mean, exact zero spread.
    out.mean = values.front();
    out.std_dev = 0.0;
    return out;
  }
  out.mean = pairwise_sum(values) / static_cast<double>(n);
  std::vector<double> sq(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double d = values[i] - out.mean;
    sq[i] = d * d;
  }
  std::sort(sq.begin(), sq.end());
  const double denom =
      convention == StdConvention::sample ? static_cast<double>(n - 1) : static_cast<double>(n);
  if (denom <= 0.0) {
    out.std_dev = 0.0;
    return out;
  }
  out.std_dev = std::sqrt(pairwise_sum(sq) / denom);
  return out;
}

}  // namespace mleat
