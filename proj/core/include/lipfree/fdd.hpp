#pragma once

// Finite-rank projections on Lipschitz functions built from the level-n
// dyadic tiling of C(0, 2^n).
//
// R^N mode:  Q_n f(x) = Lambda(f, level-n cube containing r(x)) (r(x)),
//            r = clamp onto C(0^N, 2^n).
// l1 mode:   Q_n f(x) = P_n(f o tau_n)(rho_n(x)), where P_n is the R^n
//            mode operator at level n.
//
// Both evaluate f only on the finite grid V_n, so Q_n f is determined by
// finitely many values, and Q_m Q_n = Q_min(m,n).

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lipfree/geometry.hpp"
#include "lipfree/interp.hpp"

namespace lipfree {

/// Real function vanishing at the origin, with an optional known Lipschitz
/// bound used by the error estimates.
template <class P>
struct LipFunction {
  std::function<double(const P&)> evaluator;
  std::optional<double> declared_lip;

  double operator()(const P& p) const { return evaluator(p); }
};

using LipFunctionN = LipFunction<Point>;
using LipFunctionL1 = LipFunction<SparsePoint>;

/// One corner of the level-n cube that holds a (retracted) point.
struct LevelCorner {
  Point vertex;
  double weight;
};

/// Retracts x onto C(0^D, 2^n), locates its level-n cube and returns the
/// corners with nonzero interpolation weight.
std::vector<LevelCorner> level_stencil(std::span<const double> x, int n);

/// True when x lies outside C(0, 2^n), i.e. the retraction moves it.
bool retraction_active(std::span<const double> x, int n);
bool retraction_active(const SparsePoint& x, int n);

/// Lambda interpolation on the level-n tiling at the retraction of x, for
/// any dimension D = x.size().
double level_interpolate(const LipFunctionN& g, std::span<const double> x, int n);

/// P_n(g)(u) with g on R^n; requires u.size() == n.
double p_n(const LipFunctionN& g, std::span<const double> u, int n);

/// Q_n on l1: P_n(f o tau_n)(rho_n(x)).
double q_n_l1(const LipFunctionL1& f, const SparsePoint& x, int n);

/// Q_n on l1^N given directly on N-dimensional cubes.
double q_n_finite(const LipFunctionN& f, std::span<const double> x, int n);

inline double q_n(const LipFunctionL1& f, const SparsePoint& x, int n) { return q_n_l1(f, x, n); }
inline double q_n(const LipFunctionN& f, const Point& x, int n) { return q_n_finite(f, x, n); }

/// Q_n f as a function in its own right. The closure keeps f alive and
/// evaluates it on V_n on demand; the declared bound is inherited since
/// ||Q_n|| <= 1.
LipFunctionL1 project(const LipFunctionL1& f, int n);
LipFunctionN project(const LipFunctionN& f, int n);

struct CommutingReport {
  int m = 0;
  int n = 0;
  double max_deviation = 0.0;
  bool pass = true;
};

/// Compares Q_m(Q_n f) with Q_min(m,n) f at each sample.
template <class P>
CommutingReport verify_commuting(const LipFunction<P>& f, int m, int n, std::span<const P> samples,
                                 double tol = 1e-10) {
  const auto inner = project(f, n);
  const int lo = m < n ? m : n;
  CommutingReport report{m, n, 0.0, true};
  for (const auto& x : samples) {
    const double lhs = q_n(inner, x, m);
    const double rhs = q_n(f, x, lo);
    const double dev = lhs > rhs ? lhs - rhs : rhs - lhs;
    if (dev > report.max_deviation) report.max_deviation = dev;
  }
  report.pass = report.max_deviation <= tol;
  return report;
}

/// 2 L (tail + dim * 2^{1-n}); dim is n in l1 mode and N in R^N mode.
double convergence_bound_value(double lip, double tail, std::size_t dim, int n);

struct ConvergenceReport {
  double error = 0.0;
  double bound = 0.0;
  bool retraction_active = false;
  /// error <= bound + 1e-9; only meaningful when the retraction is inactive.
  bool within_bound = true;
};

/// |Q_n f(x) - f(x)| against 2L(sum_{i>n}|x_i| + n 2^{1-n}). Requires a
/// declared Lipschitz bound.
ConvergenceReport convergence_bound(const LipFunctionL1& f, const SparsePoint& x, int n);
ConvergenceReport convergence_bound(const LipFunctionN& f, const Point& x, int n);

// Built-in test functions. All vanish at the origin and carry a declared
// Lipschitz bound in l1. Coordinate indices are 1-based.
LipFunctionL1 identity_coordinate_l1(std::size_t index);
LipFunctionN identity_coordinate(std::size_t index, std::size_t dim);
LipFunctionL1 l1_norm_function_l1();
LipFunctionN l1_norm_function(std::size_t dim);
/// sup_i x_i over all coordinates of l1, including the implicit zeros.
LipFunctionL1 max_coordinate_l1();
/// max_i x_i over the N coordinates.
LipFunctionN max_coordinate(std::size_t dim);

/// min_j (v_j + L ||x - p_j||_1) - (same at 0), anchors p_j on the lattice
/// 2^-3 Z^dim within [-4,4]^dim and v_j uniform in [-2,2].
LipFunctionL1 random_lattice_l1(std::uint64_t seed, std::size_t dim, std::size_t anchors = 16, double lip = 1.0);
LipFunctionN random_lattice(std::uint64_t seed, std::size_t dim, std::size_t anchors = 16, double lip = 1.0);

/// Builds one of "identity-coordinate", "l1-norm", "max-coordinate",
/// "random-lattice"; throws std::invalid_argument on unknown names.
LipFunctionL1 builtin_function_l1(const std::string& name, std::size_t dim, std::uint64_t seed);
LipFunctionN builtin_function(const std::string& name, std::size_t dim, std::uint64_t seed);

/// McShane extension x -> min_i (v_i + L d(x, p_i)) with L the exact
/// Lipschitz constant of the table; agrees with the table and keeps L.
LipFunctionN mcshane_extension(const TabulatedFunction<Point>& f);
LipFunctionL1 mcshane_extension(const TabulatedFunction<SparsePoint>& f);

}  // namespace lipfree
