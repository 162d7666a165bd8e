#pragma once

// Restriction/extension operators S = E R on a finite pointed metric space.
//
// R restricts a function to a subset X containing the origin. E extends
// back with a partition of unity psi(omega, x), omega in X, anchored at
// omega itself (counting measure on X):
//
//   E f(x) = f(x)                          for x in X,
//   E f(x) = sum_omega f(omega) psi(omega, x)  otherwise.
//
// The gentleness constant of psi is
//   K = max_{x != y} sum_omega |psi(omega,x) - psi(omega,y)| d(omega,x) / d(x,y)
// (psi extended by 0 on X), and Lip(E f) <= 3 K Lip(f).

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "lipfree/interp.hpp"
#include "lipfree/metric_space.hpp"

namespace lipfree {

enum class WeightScheme {
  /// raw(omega, x) = max(0, 2 d(x,X) - d(x,omega))^2, supported near x.
  inverse_distance,
  /// raw(omega, x) = d(x,omega)^-p over all of X.
  shepard,
};

struct SchemeSpec {
  WeightScheme scheme = WeightScheme::inverse_distance;
  double p = 1.0;  // exponent for shepard

  std::string id() const;
  /// Accepts "inv-dist" and "shepard-p" / "shepard".
  static SchemeSpec parse(const std::string& name, double p = 1.0);
};

class GentlePartition {
 public:
  GentlePartition(std::vector<std::size_t> subset, std::vector<std::size_t> outside, std::vector<double> weights,
                  SchemeSpec scheme);

  const std::vector<std::size_t>& subset() const noexcept { return subset_; }
  const std::vector<std::size_t>& outside() const noexcept { return outside_; }
  const SchemeSpec& scheme() const noexcept { return scheme_; }
  bool vacuous() const noexcept { return outside_.empty(); }

  /// psi(subset()[w], outside()[o]).
  double weight(std::size_t o, std::size_t w) const { return weights_[o * subset_.size() + w]; }

 private:
  std::vector<std::size_t> subset_;
  std::vector<std::size_t> outside_;
  std::vector<double> weights_;  // outside x subset
  SchemeSpec scheme_;
};

/// Values indexed by point of the space (size == space.size()), value 0 at
/// the origin.
using SpaceFunction = TabulatedFunction<std::size_t>;

SpaceFunction make_space_function(const FinitePointedMetricSpace& space, std::vector<double> values);

double lip_constant(const SpaceFunction& f, const FinitePointedMetricSpace& space);

/// Throws std::invalid_argument if X misses the origin or has bad indices.
SpaceFunction restrict_to(const SpaceFunction& f, const std::vector<std::size_t>& subset);

GentlePartition build_partition(const FinitePointedMetricSpace& space, const std::vector<std::size_t>& subset,
                                const SchemeSpec& scheme);

/// Extension of a function tabulated on the partition's subset to the
/// whole space, ordered by point index.
SpaceFunction extend(const SpaceFunction& on_subset, const GentlePartition& part,
                     const FinitePointedMetricSpace& space);

struct GentlenessEstimate {
  double k_hat = 0.0;
  std::pair<std::size_t, std::size_t> worst_pair{0, 0};
};

GentlenessEstimate gentleness(const GentlePartition& part, const FinitePointedMetricSpace& space);

/// E(R(f)) for the given subset and scheme.
SpaceFunction bap_operator(const SpaceFunction& f, const std::vector<std::size_t>& subset,
                           const FinitePointedMetricSpace& space, const SchemeSpec& scheme);

/// Greedy upper estimate of the doubling constant: for every center p and
/// every radius just above (and at) each pairwise distance, cover the ball
/// with half-radius balls centered at uncovered ball points, always taking
/// the one that covers most (lowest index on ties).
std::size_t doubling_estimate(const FinitePointedMetricSpace& space);

/// Origin first, then repeatedly the point farthest from the chosen set
/// (lowest index on ties).
std::vector<std::size_t> farthest_point_order(const FinitePointedMetricSpace& space);

/// max_x d(x, X).
double covering_radius(const FinitePointedMetricSpace& space, const std::vector<std::size_t>& subset);

struct BapRow {
  std::size_t size = 0;  // |X_n|
  double k_hat = 0.0;
  double lip_ratio = 0.0;  // Lip(S f) / Lip(f)
  double max_error = 0.0;  // max_x |S f(x) - f(x)|
  double covering_radius = 0.0;
  bool fixes_subset = true;  // S f = f on X_n exactly
  bool normalized = true;    // partition rows sum to 1 within 1e-12
};

/// One row per prefix X_n = {0, x_1, ..., x_n} of the farthest-point order,
/// n = 1 .. |M| - 1.
std::vector<BapRow> bap_chain(const SpaceFunction& f, const FinitePointedMetricSpace& space, const SchemeSpec& scheme);

}  // namespace lipfree
