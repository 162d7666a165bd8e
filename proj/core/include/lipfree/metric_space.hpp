#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "lipfree/geometry.hpp"

namespace lipfree {

/// Dense symmetric matrix of pairwise distances, row-major.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t size) : size_(size), data_(size * size, 0.0) {}

  std::size_t size() const noexcept { return size_; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * size_ + j]; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * size_ + j]; }

  void set_symmetric(std::size_t i, std::size_t j, double d) {
    data_[i * size_ + j] = d;
    data_[j * size_ + i] = d;
  }

  template <class P, class Metric>
  static DistanceMatrix from_points(std::span<const P> points, Metric metric) {
    DistanceMatrix m(points.size());
    for (std::size_t i = 0; i < points.size(); ++i)
      for (std::size_t j = i + 1; j < points.size(); ++j) m.set_symmetric(i, j, metric(points[i], points[j]));
    return m;
  }

 private:
  std::size_t size_ = 0;
  std::vector<double> data_;
};

/// Thrown when a distance matrix fails a metric axiom.
class MetricError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Index triple (i, l, j) with d(i,j) > d(i,l) + d(l,j), if any.
struct TriangleViolation {
  std::size_t i, l, j;
  double excess;
};

std::optional<TriangleViolation> find_triangle_violation(const DistanceMatrix& d, double rel_tol = 1e-12);

/// Finite metric space with a distinguished origin.
class FinitePointedMetricSpace {
 public:
  /// Validates symmetry, zero diagonal, positivity and the triangle
  /// inequality; throws MetricError naming the first offending entry.
  FinitePointedMetricSpace(std::vector<std::string> labels, DistanceMatrix dist, std::size_t origin);

  /// Distances from the l1 norm between the given coordinate rows.
  static FinitePointedMetricSpace from_l1_embedding(const std::vector<Point>& coords, std::size_t origin);

  std::size_t size() const noexcept { return dist_.size(); }
  std::size_t origin() const noexcept { return origin_; }
  double operator()(std::size_t i, std::size_t j) const { return dist_(i, j); }
  const DistanceMatrix& distances() const noexcept { return dist_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  /// Coordinates when built from an l1 embedding.
  const std::optional<std::vector<Point>>& embedding() const noexcept { return embedding_; }

 private:
  std::vector<std::string> labels_;
  DistanceMatrix dist_;
  std::size_t origin_;
  std::optional<std::vector<Point>> embedding_;
};

}  // namespace lipfree
