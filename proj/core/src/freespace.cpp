#include "lipfree/freespace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <tuple>

#include "lipfree/simplex.hpp"

namespace lipfree {

KrSolution kr_norm(std::span<const double> coeffs, const DistanceMatrix& dist) {
  const std::size_t k = coeffs.size();
  if (dist.size() != k + 1) throw std::invalid_argument("kr_norm: distance matrix must be (k+1)x(k+1)");
  KrSolution out;
  out.potential.assign(k + 1, 0.0);
  if (k == 0) return out;

  // Shifted variables g_i = f_i + d(i,0) live in [0, 2 d(i,0)], so the
  // origin constraints become bounds and g = 0 is a feasible start.
  BoundedLp lp;
  lp.num_vars = k;
  lp.objective.assign(coeffs.begin(), coeffs.end());
  lp.upper.resize(k);
  for (std::size_t i = 0; i < k; ++i) lp.upper[i] = 2.0 * dist(i + 1, 0);

  std::vector<std::vector<bool>> active(k, std::vector<bool>(k, false));
  std::vector<double> f(k, 0.0);
  const std::size_t max_rounds = k * k + 2;
  for (;;) {
    if (out.rounds++ > max_rounds) throw SolverError("kr_norm: constraint generation did not converge");
    const LpSolution sol = solve_bounded_simplex(lp);
    out.pivots += sol.pivots;
    if (sol.status != LpStatus::optimal)
      throw SolverError(sol.status == LpStatus::unbounded ? "kr_norm: LP reported unbounded"
                                                          : "kr_norm: simplex iteration limit reached");
    for (std::size_t i = 0; i < k; ++i) f[i] = sol.x[i] - dist(i + 1, 0);

    std::size_t added = 0;
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) {
        if (i == j || active[i][j]) continue;
        const double d = dist(i + 1, j + 1);
        if (f[i] - f[j] <= d + 1e-12 * std::max(1.0, d)) continue;
        active[i][j] = true;
        std::vector<double> row(k, 0.0);
        row[i] = 1.0;
        row[j] = -1.0;
        lp.rows.push_back(std::move(row));
        lp.rhs.push_back(std::max(0.0, d + dist(i + 1, 0) - dist(j + 1, 0)));
        ++added;
      }
    if (added == 0) break;
  }

  out.constraints = lp.rows.size();
  double value = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    out.potential[i + 1] = f[i];
    value += coeffs[i] * f[i];
  }
  out.value = value;
  return out;
}

NormCertificate<Point> free_norm(const MoleculeN& mu) {
  return free_norm(mu, [](const Point& a, const Point& b) { return l1_distance(a, b); });
}

NormCertificate<SparsePoint> free_norm(const MoleculeL1& mu) {
  return free_norm(mu, [](const SparsePoint& a, const SparsePoint& b) { return l1_distance(a, b); });
}

NormCertificate<std::size_t> free_norm(const MoleculeFinite& mu, const FinitePointedMetricSpace& space) {
  if (mu.origin() != space.origin()) throw std::invalid_argument("free_norm: molecule origin differs from space origin");
  for (const auto& t : mu.terms())
    if (t.point >= space.size()) throw std::invalid_argument("free_norm: support index out of range");
  return free_norm(mu, [&space](std::size_t a, std::size_t b) { return space(a, b); });
}

MoleculeL1 s_n_apply(const MoleculeL1& mu, int n) {
  check_level(n);
  std::vector<Term<SparsePoint>> out;
  for (const auto& t : mu.terms()) {
    const Point u = rho(t.point, static_cast<std::size_t>(n));
    for (const auto& c : level_stencil(u, n)) out.push_back({tau(c.vertex), t.coeff * c.weight});
  }
  return MoleculeL1(mu.origin(), std::move(out));
}

MoleculeN s_n_apply(const MoleculeN& mu, int n) {
  check_level(n);
  std::vector<Term<Point>> out;
  for (const auto& t : mu.terms()) {
    if (t.point.size() != mu.origin().size()) throw std::invalid_argument("s_n_apply: dimension mismatch");
    for (const auto& c : level_stencil(t.point, n)) out.push_back({c.vertex, t.coeff * c.weight});
  }
  return MoleculeN(mu.origin(), std::move(out));
}

namespace {

double tail_of(const SparsePoint& p, int n) { return p.tail_l1(static_cast<std::size_t>(n)); }
double tail_of(const Point&, int) { return 0.0; }
std::size_t cube_dim(const MoleculeL1&, int n) { return static_cast<std::size_t>(n); }
std::size_t cube_dim(const MoleculeN& mu, int) { return mu.origin().size(); }

template <class P>
FddReport verify_fdd_impl(const Molecule<P>& mu, int n_max) {
  check_level(n_max);
  FddReport report;
  report.norm = free_norm(mu).value;
  const double norm_cap = report.norm * (1.0 + 1e-7) + 1e-12;

  std::vector<Molecule<P>> projected;
  for (int n = 1; n <= n_max; ++n) {
    FddRow row;
    row.n = n;
    auto sn = s_n_apply(mu, n);
    row.support_size = sn.size();
    row.norm_projected = free_norm(sn).value;
    row.error = free_norm(sn - mu).value;
    for (const auto& t : mu.terms()) {
      row.bound += std::abs(t.coeff) * convergence_bound_value(1.0, tail_of(t.point, n), cube_dim(mu, n), n);
      row.retraction_active = row.retraction_active || retraction_active(t.point, n);
    }
    if (row.norm_projected > norm_cap) report.monotone = false;
    if (!row.retraction_active && row.error > row.bound + 1e-7) report.within_bound = false;
    report.rows.push_back(row);
    projected.push_back(std::move(sn));
  }
  if (!report.rows.empty() && report.rows.back().error > report.rows.front().error * (1.0 + 1e-7) + 1e-12)
    report.error_trend = false;

  for (int m = 1; m <= n_max; ++m)
    for (int n = 1; n <= n_max; ++n) {
      const auto lhs = s_n_apply(projected[n - 1], m);
      const auto& rhs = projected[std::min(m, n) - 1];
      report.lattice_worst = std::max(report.lattice_worst, coefficient_distance(lhs, rhs));
    }
  report.lattice = report.lattice_worst <= 1e-10;
  return report;
}

}  // namespace

FddReport verify_fdd(const MoleculeL1& mu, int n_max) { return verify_fdd_impl(mu, n_max); }
FddReport verify_fdd(const MoleculeN& mu, int n_max) { return verify_fdd_impl(mu, n_max); }

}  // namespace lipfree
