#include "mleat/association.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "mleat/errors.hpp"
#include "mleat/stats.hpp"

namespace mleat {

double cosine(std::span<const float> u, std::span<const float> v) {
  if (u.size() != v.size())
    throw DimensionMismatch("cosine of vectors with dimensions " + std::to_string(u.size()) +
                            " and " + std::to_string(v.size()));
  double dot = 0.0, nu = 0.0, nv = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double a = u[i];
    const double b = v[i];
    dot += a * b;
    nu += a * a;
    nv += b * b;
  }
  if (nu == 0.0 || nv == 0.0) throw ZeroNormVector({nu == 0.0 ? "left operand" : "right operand"});
  return std::clamp(dot / (std::sqrt(nu) * std::sqrt(nv)), -1.0, 1.0);
}

double association_s(std::span<const float> w, const ResolvedGroup& a_group,
                     const ResolvedGroup& b_group) {
  std::vector<double> ca(a_group.size());
  for (std::size_t i = 0; i < a_group.size(); ++i) ca[i] = cosine(w, a_group.item(i));
  std::vector<double> cb(b_group.size());
  for (std::size_t i = 0; i < b_group.size(); ++i) cb[i] = cosine(w, b_group.item(i));
  return sorted_mean(std::move(ca)) - sorted_mean(std::move(cb));
}

double association_u(const ResolvedGroup& t_group, std::span<const float> a) {
  std::vector<double> ct(t_group.size());
  for (std::size_t i = 0; i < t_group.size(); ++i) ct[i] = cosine(t_group.item(i), a);
  return sorted_mean(std::move(ct));
}

CellStats cell_stats(const ResolvedGroup& t_group, const ResolvedGroup& a_group) {
  CellStats out;
  out.count = t_group.size() * a_group.size();
  std::vector<double> cosines;
  cosines.reserve(out.count);
  for (std::size_t i = 0; i < t_group.size(); ++i)
    for (std::size_t j = 0; j < a_group.size(); ++j)
      cosines.push_back(cosine(t_group.item(i), a_group.item(j)));
  const MeanStd ms = sorted_mean_std(std::move(cosines), StdConvention::sample);
  out.mean = ms.mean;
  out.std_dev = ms.std_dev;
  out.degenerate = out.count == 1;
  return out;
}

}  // namespace mleat
