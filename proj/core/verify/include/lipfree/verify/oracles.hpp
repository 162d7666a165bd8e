#pragma once

// Independent reference computations. None of these share code paths
// with the routines they check.

#include <cstddef>
#include <span>
#include <vector>

#include "lipfree/geometry.hpp"
#include "lipfree/interp.hpp"
#include "lipfree/metric_space.hpp"

namespace lipfree::verify {

/// The interpolant evaluated by literal coordinate-by-coordinate blending:
/// stage j mixes the two stage j-1 values that differ in sign j, weight
/// t_j = (x_j - y_j + R/2) / R on the + side.
double lambda_recursive(const VertexData& data, std::span<const double> x);

/// Every level-n cube C(x^{eps,0}_{h,n-1}, 2^{1-n}) that contains u, found
/// by scanning the whole tiling.
std::vector<DyadicCubeIndex> containing_cubes(std::span<const double> u, int n);

/// Union of the vertex sets of all level-n cubes, sorted.
std::vector<Point> vertex_union(int n, std::size_t dim);

/// Optimal transport cost between the positive and negative parts of the
/// signed masses (origin absorbing the imbalance), by enumerating every
/// basic feasible plan of the transportation polytope. coeffs[i-1] is the
/// mass at index i; index 0 is the origin. Small instances only.
double transport_norm(std::span<const double> coeffs, const DistanceMatrix& dist);

/// L1 norm of the step function sum_i a_i sgn(p_i) 1[between 0 and p_i],
/// the image of sum_i a_i delta(p_i) under F(R) = L1.
double line_total_variation(std::span<const double> points, std::span<const double> coeffs);

}  // namespace lipfree::verify
