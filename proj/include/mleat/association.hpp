#ifndef MLEAT_ASSOCIATION_HPP
#define MLEAT_ASSOCIATION_HPP

#include <cstddef>
#include <span>

#include "mleat/stimulus.hpp"

namespace mleat {

// Cosine similarity, accumulated in double and clamped to [-1, 1]. Throws
// DimensionMismatch on length disagreement and ZeroNormVector when either
// operand has zero norm.
double cosine(std::span<const float> u, std::span<const float> v);

// Differential association of a single stimulus w with attribute groups A, B:
// mean cosine against A minus mean cosine against B.
double association_s(std::span<const float> w, const ResolvedGroup& a_group,
                     const ResolvedGroup& b_group);

// Mean cosine of attribute vector a against every member of target group T.
double association_u(const ResolvedGroup& t_group, std::span<const float> a);

struct CellStats {
  double mean = 0.0;
  double std_dev = 0.0;  // sample (n-1) convention
  std::size_t count = 0;
  bool degenerate = false;  // single pair: std_dev is reported as 0
};

// Mean and spread of all |T|*|A| pairwise cosines between two groups.
CellStats cell_stats(const ResolvedGroup& t_group, const ResolvedGroup& a_group);

}  // namespace mleat

#endif
