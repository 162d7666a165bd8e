#pragma once

// Dense-tableau primal simplex for
//
//   maximize  c^T x   subject to  A x <= b,  0 <= x <= u,
//
// with b >= 0 so the all-slack basis at x = 0 is feasible. Upper bounds
// are handled by complementing columns (x' = u - x) instead of adding
// rows. Entering and leaving variables follow Bland's smallest-index rule,
// which rules out cycling on the degenerate problems produced by the
// Kantorovich-Rubinstein constraints.

#include <cstddef>
#include <limits>
#include <vector>

namespace lipfree {

struct BoundedLp {
  std::size_t num_vars = 0;
  std::vector<double> objective;          // c, size num_vars
  std::vector<double> upper;              // u, size num_vars; +inf allowed
  std::vector<std::vector<double>> rows;  // A, each of size num_vars
  std::vector<double> rhs;                // b, nonnegative
};

enum class LpStatus { optimal, unbounded, iteration_limit };

struct LpSolution {
  LpStatus status = LpStatus::optimal;
  double objective = 0.0;
  std::vector<double> x;
  std::size_t pivots = 0;
};

struct SimplexOptions {
  double tolerance = 1e-11;
  std::size_t max_iterations = 1'000'000;
};

/// Throws std::invalid_argument on malformed input (negative rhs beyond
/// tolerance, size mismatches, negative or NaN bounds).
LpSolution solve_bounded_simplex(const BoundedLp& lp, const SimplexOptions& options = {});

}  // namespace lipfree
