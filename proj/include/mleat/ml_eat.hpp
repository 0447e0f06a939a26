#ifndef MLEAT_ML_EAT_HPP
#define MLEAT_ML_EAT_HPP

#include <algorithm>
#include <string>
#include <vector>

#include "mleat/association.hpp"
#include "mleat/permutation.hpp"
#include "mleat/stats.hpp"
#include "mleat/stimulus.hpp"

namespace mleat {

// Effect size (Cohen's d over per-stimulus association values) plus the
// permutation tails of its differential-sum statistic. 'significant' is
// direction-aware: a positive d is starred when p_greater < alpha, a negative
// d when p_less < alpha.
struct EffectSize {
  double d = 0.0;
  double p_greater = 1.0;
  double p_less = 1.0;
  double p_equal = 0.0;
  bool significant = false;
  bool all_ties = false;
  PermutationStrategy::Mode resolved_mode = PermutationStrategy::Mode::exact;
  std::uint64_t draws = 0;

  double two_sided_p() const { return std::min(1.0, 2.0 * std::min(p_greater, p_less)); }
};

struct EngineOptions {
  double alpha = 0.05;
  StdConvention std_convention = StdConvention::sample;
  // Permit unequal |X|/|Y| or |A|/|B| when the affected test resolves to
  // Monte Carlo; the imbalance is then reported as a warning.
  bool allow_unequal = false;
  unsigned threads = 1;  // Monte Carlo workers; 0 = hardware concurrency
};

struct QueryMeta {
  std::string x_name, y_name, a_name, b_name;
  std::size_t nx = 0, ny = 0, na = 0, nb = 0;
  PermutationStrategy strategy;
};

// The full three-level readout for one query.
struct MlEatResult {
  EffectSize level1;    // X vs Y differential association with (A, B)
  EffectSize level2_x;  // target X against (A, B)
  EffectSize level2_y;  // target Y against (A, B)
  CellStats cell_xa, cell_xb, cell_ya, cell_yb;
  QueryMeta meta;
};

// Level 1 effect size: standardized differential association of targets X, Y
// with attributes A, B. Throws DegenerateDistribution when every pooled
// association value is identical.
double level1_effect(const ResolvedGroup& x, const ResolvedGroup& y, const ResolvedGroup& a,
                     const ResolvedGroup& b, StdConvention convention = StdConvention::sample);

// Permutation test of the Level 1 statistic over equal splits of X union Y.
// Exact mode requires |X| == |Y| (throws UnequalTargetSizes).
PValues level1_pvalue(const ResolvedGroup& x, const ResolvedGroup& y, const ResolvedGroup& a,
                      const ResolvedGroup& b, const PermutationStrategy& strategy,
                      unsigned threads = 1);

// Level 2 effect size: association of one target group T with attributes A, B
// standardized over the pooled per-attribute values.
double level2_effect(const ResolvedGroup& t, const ResolvedGroup& a, const ResolvedGroup& b,
                     StdConvention convention = StdConvention::sample);

// Permutation test of the Level 2 statistic over splits of A union B.
// Exact mode requires |A| == |B| (throws UnequalAttributeSizes).
PValues level2_pvalue(const ResolvedGroup& t, const ResolvedGroup& a, const ResolvedGroup& b,
                      const PermutationStrategy& strategy, unsigned threads = 1);

// Single-category effect size: Level 2 with a singleton target. Shares the
// level2_effect code path exactly.
double sc_eat(std::span<const float> w, const ResolvedGroup& a, const ResolvedGroup& b,
              StdConvention convention = StdConvention::sample);

// Runs all three levels. The strategy seed is split into independent
// per-level streams. Errors raised by a constituent level are annotated with
// the level name and rethrown. Query-shape warnings (when downgraded via
// options.allow_unequal) are appended to *warning_sink when non-null.
MlEatResult run_ml_eat(const ResolvedGroup& x, const ResolvedGroup& y, const ResolvedGroup& a,
                       const ResolvedGroup& b, const PermutationStrategy& strategy = {},
                       const EngineOptions& options = {},
                       std::vector<std::string>* warning_sink = nullptr);

}  // namespace mleat

#endif
