#include "lipfree/metric_space.hpp"

#include <algorithm>
#include <cmath>

namespace lipfree {

std::optional<TriangleViolation> find_triangle_violation(const DistanceMatrix& d, double rel_tol) {
  const std::size_t k = d.size();
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      for (std::size_t l = 0; l < k; ++l) {
        if (l == i || l == j) continue;
        const double via = d(i, l) + d(l, j);
        const double excess = d(i, j) - via;
        if (excess > rel_tol * std::max(1.0, d(i, j))) return TriangleViolation{i, l, j, excess};
      }
  return std::nullopt;
}

FinitePointedMetricSpace::FinitePointedMetricSpace(std::vector<std::string> labels, DistanceMatrix dist,
                                                   std::size_t origin)
    : labels_(std::move(labels)), dist_(std::move(dist)), origin_(origin) {
  const std::size_t k = dist_.size();
  if (k == 0) throw MetricError("metric space: at least one point is required");
  if (labels_.empty()) {
    labels_.reserve(k);
    for (std::size_t i = 0; i < k; ++i) labels_.push_back(std::to_string(i));
  }
  if (labels_.size() != k) throw MetricError("metric space: label count differs from matrix size");
  if (origin_ >= k) throw MetricError("metric space: origin index out of range");
  for (std::size_t i = 0; i < k; ++i) {
    if (dist_(i, i) != 0.0) throw MetricError("metric space: nonzero diagonal at " + std::to_string(i));
    for (std::size_t j = 0; j < k; ++j) {
      if (i == j) continue;
      if (!std::isfinite(dist_(i, j)) || dist_(i, j) <= 0.0)
        throw MetricError("metric space: distance between " + std::to_string(i) + " and " + std::to_string(j) +
                          " must be positive");
      if (dist_(i, j) != dist_(j, i))
        throw MetricError("metric space: asymmetric entry (" + std::to_string(i) + ", " + std::to_string(j) + ")");
    }
  }
  if (auto v = find_triangle_violation(dist_)) {
    throw MetricError("metric space: triangle inequality fails for (" + std::to_string(v->i) + ", " +
                      std::to_string(v->l) + ", " + std::to_string(v->j) + "): d(i,j) exceeds d(i,l)+d(l,j) by " +
                      std::to_string(v->excess));
  }
}

FinitePointedMetricSpace FinitePointedMetricSpace::from_l1_embedding(const std::vector<Point>& coords,
                                                                     std::size_t origin) {
  auto metric = [](const Point& a, const Point& b) { return l1_distance(a, b); };
  auto dist = DistanceMatrix::from_points<Point>(coords, metric);
  FinitePointedMetricSpace space({}, std::move(dist), origin);
  space.embedding_ = coords;
  return space;
}

}  // namespace lipfree
