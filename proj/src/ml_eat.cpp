#include "mleat/ml_eat.hpp"

#include <utility>

#include "mleat/errors.hpp"

namespace mleat {

namespace {

// Per-target differential association values s(w, A, B) in group order.
std::vector<double> target_values(const ResolvedGroup& targets, const ResolvedGroup& a,
                                  const ResolvedGroup& b) {
  std::vector<double> out(targets.size());
  for (std::size_t i = 0; i < targets.size(); ++i)
    out[i] = association_s(targets.item(i), a, b);
  return out;
}

// Per-attribute association values u(T, a) in group order.
std::vector<double> attribute_values(const ResolvedGroup& t, const ResolvedGroup& attrs) {
  std::vector<double> out(attrs.size());
  for (std::size_t i = 0; i < attrs.size(); ++i) out[i] = association_u(t, attrs.item(i));
  return out;
}

// (mean(first) - mean(second)) / std(first union second).
double standardized_difference(std::vector<double> first, std::vector<double> second,
                               StdConvention convention) {
  std::vector<double> pooled;
  pooled.reserve(first.size() + second.size());
  pooled.insert(pooled.end(), first.begin(), first.end());
  pooled.insert(pooled.end(), second.begin(), second.end());
  const MeanStd pooled_ms = sorted_mean_std(std::move(pooled), convention);
  if (pooled_ms.std_dev == 0.0)
    throw DegenerateDistribution("all pooled association values are identical");
  return (sorted_mean(std::move(first)) - sorted_mean(std::move(second))) / pooled_ms.std_dev;
}

// Pooled value vector for the permutation test: each group sorted internally
// so within-group ordering never affects the outcome.
std::vector<double> pool_sorted(std::vector<double> first, std::vector<double> second) {
  std::sort(first.begin(), first.end());
  std::sort(second.begin(), second.end());
  first.insert(first.end(), second.begin(), second.end());
  return first;
}

EffectSize make_effect(double d, const PValues& p, double alpha) {
  EffectSize e;
  e.d = d;
  e.p_greater = p.p_greater;
  e.p_less = p.p_less;
  e.p_equal = p.p_equal;
  e.all_ties = p.all_ties;
  e.resolved_mode = p.resolved_mode;
  e.draws = p.draws;
  if (d > 0.0)
    e.significant = p.p_greater < alpha;
  else if (d < 0.0)
    e.significant = p.p_less < alpha;
  return e;
}

template <typename Fn>
auto with_level(const char* level, Fn&& fn) {
  try {
    return fn();
  } catch (Error& e) {
    e.add_context(level);
    throw;
  }
}

}  // namespace

double level1_effect(const ResolvedGroup& x, const ResolvedGroup& y, const ResolvedGroup& a,
                     const ResolvedGroup& b, StdConvention convention) {
  return standardized_difference(target_values(x, a, b), target_values(y, a, b), convention);
}

PValues level1_pvalue(const ResolvedGroup& x, const ResolvedGroup& y, const ResolvedGroup& a,
                      const ResolvedGroup& b, const PermutationStrategy& strategy,
                      unsigned threads) {
  if (resolve_mode(strategy, x.size(), y.size()) == PermutationStrategy::Mode::exact &&
      x.size() != y.size())
    throw UnequalTargetSizes(x.size(), y.size());
  const auto pooled = pool_sorted(target_values(x, a, b), target_values(y, a, b));
  return split_pvalues(pooled, x.size(), strategy, threads);
}

double level2_effect(const ResolvedGroup& t, const ResolvedGroup& a, const ResolvedGroup& b,
                     StdConvention convention) {
  return standardized_difference(attribute_values(t, a), attribute_values(t, b), convention);
}

PValues level2_pvalue(const ResolvedGroup& t, const ResolvedGroup& a, const ResolvedGroup& b,
                      const PermutationStrategy& strategy, unsigned threads) {
  if (resolve_mode(strategy, a.size(), b.size()) == PermutationStrategy::Mode::exact &&
      a.size() != b.size())
    throw UnequalAttributeSizes(a.size(), b.size());
  const auto pooled = pool_sorted(attribute_values(t, a), attribute_values(t, b));
  return split_pvalues(pooled, a.size(), strategy, threads);
}

double sc_eat(std::span<const float> w, const ResolvedGroup& a, const ResolvedGroup& b,
              StdConvention convention) {
  ResolvedGroup single;
  single.name = "w";
  single.dimension = w.size();
  single.data.assign(w.begin(), w.end());
  single.provenance.push_back("w");
  return level2_effect(single, a, b, convention);
}

MlEatResult run_ml_eat(const ResolvedGroup& x, const ResolvedGroup& y, const ResolvedGroup& a,
                       const ResolvedGroup& b, const PermutationStrategy& strategy,
                       const EngineOptions& options, std::vector<std::string>* warning_sink) {
  const ValidationReport validation = validate_query(x, y, a, b);
  for (const ValidationIssue& issue : validation.errors) {
    if (issue.kind == ValidationIssue::Kind::unequal_targets) {
      const bool mc = resolve_mode(strategy, x.size(), y.size()) ==
                      PermutationStrategy::Mode::monte_carlo;
      if (options.allow_unequal && mc) {
        if (warning_sink) warning_sink->push_back(issue.message);
        continue;
      }
      throw UnequalTargetSizes(x.size(), y.size());
    }
    if (issue.kind == ValidationIssue::Kind::unequal_attributes) {
      const bool mc = resolve_mode(strategy, a.size(), b.size()) ==
                      PermutationStrategy::Mode::monte_carlo;
      if (options.allow_unequal && mc) {
        if (warning_sink) warning_sink->push_back(issue.message);
        continue;
      }
      throw UnequalAttributeSizes(a.size(), b.size());
    }
    if (issue.kind == ValidationIssue::Kind::mixed_dimensions)
      throw DimensionMismatch(issue.message);
  }

  // Independent deterministic seed streams per level.
  auto level_strategy = [&](std::uint64_t stream) {
    PermutationStrategy s = strategy;
    s.seed = derive_seed(strategy.seed, stream);
    return s;
  };

  MlEatResult r;
  r.level1 = with_level("level1", [&] {
    return make_effect(level1_effect(x, y, a, b, options.std_convention),
                       level1_pvalue(x, y, a, b, level_strategy(1), options.threads),
                       options.alpha);
  });
  r.level2_x = with_level("level2_x", [&] {
    return make_effect(level2_effect(x, a, b, options.std_convention),
                       level2_pvalue(x, a, b, level_strategy(2), options.threads),
                       options.alpha);
  });
  r.level2_y = with_level("level2_y", [&] {
    return make_effect(level2_effect(y, a, b, options.std_convention),
                       level2_pvalue(y, a, b, level_strategy(3), options.threads),
                       options.alpha);
  });
  r.cell_xa = with_level("level3 (X,A)", [&] { return cell_stats(x, a); });
  r.cell_xb = with_level("level3 (X,B)", [&] { return cell_stats(x, b); });
  r.cell_ya = with_level("level3 (Y,A)", [&] { return cell_stats(y, a); });
  r.cell_yb = with_level("level3 (Y,B)", [&] { return cell_stats(y, b); });

  r.meta.x_name = x.name;
  r.meta.y_name = y.name;
  r.meta.a_name = a.name;
  r.meta.b_name = b.name;
  r.meta.nx = x.size();
  r.meta.ny = y.size();
  r.meta.na = a.size();
  r.meta.nb = b.size();
  r.meta.strategy = strategy;
  return r;
}

}  // namespace mleat
