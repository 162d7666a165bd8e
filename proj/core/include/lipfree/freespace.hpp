#pragma once

// Finitely supported elements of the Lipschitz-free space F(M) and their
// norms.
//
// For mu = sum_i a_i delta(p_i) the norm is the value of the linear program
//
//   maximize sum_i a_i f_i   s.t.  f_0 = 0,  f_i - f_j <= d(p_i, p_j),
//
// over support plus origin. Any feasible f is 1-Lipschitz on that finite
// set and extends to all of M with the same constant (McShane), so the LP
// value is the supremum of <f, mu> over the unit ball of Lip_0(M).

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "lipfree/fdd.hpp"
#include "lipfree/geometry.hpp"
#include "lipfree/metric_space.hpp"

namespace lipfree {

/// Raised when the norm LP does not reach optimality.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class P>
struct Term {
  P point;
  double coeff;
};

/// Finite combination of Diracs, always kept canonical: points sorted and
/// distinct, no zero coefficients, no Dirac at the origin (delta(0) = 0).
template <class P>
class Molecule {
 public:
  explicit Molecule(P origin) : origin_(std::move(origin)) {}
  Molecule(P origin, std::vector<Term<P>> terms) : origin_(std::move(origin)), terms_(std::move(terms)) {
    canonicalize();
  }

  static Molecule dirac(P origin, P p) { return Molecule(std::move(origin), {{std::move(p), 1.0}}); }

  const P& origin() const noexcept { return origin_; }
  const std::vector<Term<P>>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool empty() const noexcept { return terms_.empty(); }

  /// Sum of |a_i|.
  double mass() const noexcept {
    double s = 0.0;
    for (const auto& t : terms_) s += std::abs(t.coeff);
    return s;
  }

  friend Molecule operator+(const Molecule& a, const Molecule& b) {
    std::vector<Term<P>> t = a.terms_;
    t.insert(t.end(), b.terms_.begin(), b.terms_.end());
    return Molecule(a.origin_, std::move(t));
  }
  friend Molecule operator*(double s, const Molecule& a) {
    std::vector<Term<P>> t = a.terms_;
    for (auto& x : t) x.coeff *= s;
    return Molecule(a.origin_, std::move(t));
  }
  friend Molecule operator-(const Molecule& a, const Molecule& b) { return a + (-1.0) * b; }

 private:
  void canonicalize() {
    std::stable_sort(terms_.begin(), terms_.end(), [](const Term<P>& a, const Term<P>& b) { return a.point < b.point; });
    std::vector<Term<P>> merged;
    merged.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!std::isfinite(t.coeff)) throw std::invalid_argument("Molecule: non-finite coefficient");
      if (!merged.empty() && merged.back().point == t.point)
        merged.back().coeff += t.coeff;
      else
        merged.push_back(std::move(t));
    }
    std::erase_if(merged, [this](const Term<P>& t) { return t.coeff == 0.0 || t.point == origin_; });
    terms_ = std::move(merged);
  }

  P origin_;
  std::vector<Term<P>> terms_;
};

using MoleculeN = Molecule<Point>;
using MoleculeL1 = Molecule<SparsePoint>;
/// Molecule over a FinitePointedMetricSpace; points are indices.
using MoleculeFinite = Molecule<std::size_t>;

inline MoleculeN zero_molecule(std::size_t dim) { return MoleculeN(Point(dim, 0.0)); }
inline MoleculeL1 zero_molecule_l1() { return MoleculeL1(SparsePoint{}); }

/// Optimal value and maximizing 1-Lipschitz potential.
template <class P>
struct NormCertificate {
  double value = 0.0;
  /// (point, f(point)) for the origin followed by every support point.
  std::vector<std::pair<P, double>> witness;
};

struct KrSolution {
  double value = 0.0;
  /// f at index 0 (origin, always 0) and at each support point 1..k.
  std::vector<double> potential;
  std::size_t rounds = 0;
  std::size_t constraints = 0;
  std::size_t pivots = 0;
};

/// Core solver. dist is (k+1)x(k+1) with index 0 the origin and coeffs[i-1]
/// the mass at index i. Pairwise constraints are generated lazily: solve
/// with the active rows, add every violated pair, repeat until the
/// potential is feasible for all pairs.
KrSolution kr_norm(std::span<const double> coeffs, const DistanceMatrix& dist);

template <class P, class Metric>
NormCertificate<P> free_norm(const Molecule<P>& mu, Metric metric) {
  std::vector<P> pts;
  pts.reserve(mu.size() + 1);
  pts.push_back(mu.origin());
  std::vector<double> coeffs;
  coeffs.reserve(mu.size());
  for (const auto& t : mu.terms()) {
    pts.push_back(t.point);
    coeffs.push_back(t.coeff);
  }
  const auto dist = DistanceMatrix::from_points<P>(pts, metric);
  const KrSolution sol = kr_norm(coeffs, dist);
  NormCertificate<P> cert;
  cert.value = sol.value;
  cert.witness.reserve(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) cert.witness.emplace_back(pts[i], sol.potential[i]);
  return cert;
}

NormCertificate<Point> free_norm(const MoleculeN& mu);
NormCertificate<SparsePoint> free_norm(const MoleculeL1& mu);
NormCertificate<std::size_t> free_norm(const MoleculeFinite& mu, const FinitePointedMetricSpace& space);

/// <f, mu> = sum_i a_i f(p_i).
template <class P>
double pairing(const LipFunction<P>& f, const Molecule<P>& mu) {
  double s = 0.0;
  for (const auto& t : mu.terms()) s += t.coeff * f(t.point);
  return s;
}

/// Predual projection S_n with <f, S_n mu> = <Q_n f, mu>: each Dirac is
/// replaced by the interpolation weights of its level-n cube corners.
MoleculeL1 s_n_apply(const MoleculeL1& mu, int n);
MoleculeN s_n_apply(const MoleculeN& mu, int n);

/// Largest coefficient difference after aligning supports.
template <class P>
double coefficient_distance(const Molecule<P>& a, const Molecule<P>& b) {
  const auto diff = a - b;
  double worst = 0.0;
  for (const auto& t : diff.terms()) worst = std::max(worst, std::abs(t.coeff));
  return worst;
}

struct FddRow {
  int n = 0;
  double norm_projected = 0.0;  // ||S_n mu||
  double error = 0.0;           // ||S_n mu - mu||
  double bound = 0.0;           // sum_i |a_i| 2 (tail_i + dim 2^{1-n})
  std::size_t support_size = 0;
  bool retraction_active = false;
};

struct FddReport {
  double norm = 0.0;
  std::vector<FddRow> rows;
  bool monotone = true;      // ||S_n mu|| <= ||mu|| (1 + 1e-7) for all n
  bool error_trend = true;   // last error <= first error
  bool within_bound = true;  // error <= bound + 1e-7 where no retraction occurs
  bool lattice = true;       // S_m S_n mu = S_min mu coefficientwise
  double lattice_worst = 0.0;
  bool pass() const { return monotone && error_trend && within_bound && lattice; }
};

FddReport verify_fdd(const MoleculeL1& mu, int n_max);
FddReport verify_fdd(const MoleculeN& mu, int n_max);

}  // namespace lipfree
