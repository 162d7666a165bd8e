#pragma once

// Multilinear interpolation of vertex data on a hypercube.
//
// For x in C(y, R) put t_i = (x_i - y_i + R/2) / R. The interpolant is
//   Lambda(x) = sum_delta w_delta(x) f(A_delta),
//   w_delta(x) = prod_i (delta_i = +1 ? t_i : 1 - t_i),
// i.e. the closed form of blending coordinate by coordinate. It reproduces
// the vertex values, is affine along every axis-parallel segment, and its
// l1 Lipschitz constant equals that of the vertex data.

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "lipfree/geometry.hpp"
#include "lipfree/metric_space.hpp"

namespace lipfree {

/// Values of a function at the 2^N vertices of a cube, indexed by
/// SignVector::mask().
class VertexData {
 public:
  VertexData(Hypercube cube, std::vector<double> values);

  template <class F>
  static VertexData sample(const Hypercube& cube, F&& f) {
    const std::uint64_t count = std::uint64_t{1} << cube.dim();
    std::vector<double> values(count);
    for (std::uint64_t m = 0; m < count; ++m) values[m] = f(vertex(cube, SignVector::from_mask(m, cube.dim())));
    return VertexData(cube, std::move(values));
  }

  const Hypercube& cube() const noexcept { return cube_; }
  std::span<const double> values() const noexcept { return values_; }
  double value(const SignVector& delta) const { return values_.at(delta.mask()); }

 private:
  Hypercube cube_;
  std::vector<double> values_;
};

struct StencilEntry {
  std::uint64_t mask;
  double weight;
};

/// Barycentric factors t_i, clamped into [0,1]; throws std::out_of_range
/// when x leaves the cube by more than a rounding tolerance.
std::vector<double> barycentric(const Hypercube& cube, std::span<const double> x);

/// Dense weights w_delta(x), indexed by mask.
std::vector<double> interpolation_weights(const Hypercube& cube, std::span<const double> x);

/// Only the vertices with nonzero weight, in increasing mask order. The
/// weights are bitwise identical to the dense ones.
std::vector<StencilEntry> nonzero_weights(const Hypercube& cube, std::span<const double> x);

double lambda_eval(const VertexData& data, std::span<const double> x);

/// Function tabulated on finitely many points, one of which is the origin
/// with value exactly 0.
template <class P>
struct TabulatedFunction {
  std::vector<P> points;
  std::vector<double> values;
  std::size_t origin = 0;

  TabulatedFunction() = default;
  TabulatedFunction(std::vector<P> pts, std::vector<double> vals, std::size_t origin_index)
      : points(std::move(pts)), values(std::move(vals)), origin(origin_index) {
    if (points.size() != values.size()) throw std::invalid_argument("TabulatedFunction: size mismatch");
    if (origin >= points.size()) throw std::invalid_argument("TabulatedFunction: origin index out of range");
    if (values[origin] != 0.0) throw std::invalid_argument("TabulatedFunction: value at the origin must be 0");
  }
};

/// max |v_i - v_j| / d(i,j) over all pairs; throws on a zero distance
/// between distinct indices and when fewer than two values are given.
double lip_constant(std::span<const double> values, const DistanceMatrix& d);

double lip_constant(const TabulatedFunction<Point>& f);
double lip_constant(const TabulatedFunction<SparsePoint>& f);

/// Lipschitz constant of the vertex data under the l1 metric.
double vertex_lip_constant(const VertexData& data);

struct Segment {
  Point a;
  Point b;
};

struct AfReport {
  bool pass = true;
  double worst_deviation = 0.0;
  std::size_t worst_index = 0;
  bool all_axis_parallel = true;
};

/// Midpoint affinity test |Lambda(m) - (Lambda(a) + Lambda(b))/2| <= tol
/// along each segment. Non axis-parallel segments are evaluated too (and
/// flagged), which is how the negative control is run.
AfReport check_af(const VertexData& data, std::span<const Segment> segments, double tol = 1e-10);

}  // namespace lipfree
