#include "lipfree/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lipfree {

namespace {

class Tableau {
 public:
  Tableau(const BoundedLp& lp, double tol) : m_(lp.rows.size()), n_(lp.num_vars), cols_(n_ + m_), tol_(tol) {
    t_.assign(m_ * cols_, 0.0);
    beta_.resize(m_);
    basis_.resize(m_);
    reduced_.assign(cols_, 0.0);
    upper_.assign(cols_, std::numeric_limits<double>::infinity());
    flipped_.assign(cols_, false);
    is_basic_.assign(cols_, false);
    for (std::size_t j = 0; j < n_; ++j) {
      reduced_[j] = lp.objective[j];
      upper_[j] = lp.upper[j];
    }
    for (std::size_t i = 0; i < m_; ++i) {
      std::copy(lp.rows[i].begin(), lp.rows[i].end(), row(i));
      row(i)[n_ + i] = 1.0;
      beta_[i] = std::max(0.0, lp.rhs[i]);
      basis_[i] = n_ + i;
      is_basic_[n_ + i] = true;
    }
  }

  LpSolution run(std::size_t max_iterations) {
    LpSolution sol;
    for (;;) {
      if (sol.pivots >= max_iterations) {
        sol.status = LpStatus::iteration_limit;
        break;
      }
      const std::size_t q = entering();
      if (q == cols_) {
        sol.status = LpStatus::optimal;
        break;
      }
      if (!step(q)) {
        sol.status = LpStatus::unbounded;
        break;
      }
      ++sol.pivots;
    }
    sol.x = values();
    return sol;
  }

 private:
  double* row(std::size_t i) { return t_.data() + i * cols_; }
  double& at(std::size_t i, std::size_t j) { return t_[i * cols_ + j]; }

  // Bland: the smallest index with a strictly improving reduced cost.
  std::size_t entering() const {
    for (std::size_t j = 0; j < cols_; ++j)
      if (!is_basic_[j] && reduced_[j] > tol_) return j;
    return cols_;
  }

  bool step(std::size_t q) {
    double theta = upper_[q];
    std::size_t leave = m_;
    for (std::size_t i = 0; i < m_; ++i) {
      const double a = at(i, q);
      double ratio;
      if (a > tol_) {
        ratio = beta_[i] / a;
      } else if (a < -tol_ && std::isfinite(upper_[basis_[i]])) {
        ratio = std::max(0.0, upper_[basis_[i]] - beta_[i]) / -a;
      } else {
        continue;
      }
      if (leave == m_) {
        if (ratio <= theta) {
          theta = ratio;
          leave = i;
        }
      } else if (ratio < theta || (ratio == theta && basis_[i] < basis_[leave])) {
        theta = ratio;
        leave = i;
      }
    }
    if (!std::isfinite(theta)) return false;

    if (leave == m_) {
      // Bound flip: x_q moves from 0 to u_q without a basis change.
      const double u = upper_[q];
      for (std::size_t i = 0; i < m_; ++i) {
        beta_[i] = std::max(0.0, beta_[i] - at(i, q) * u);
        at(i, q) = -at(i, q);
      }
      reduced_[q] = -reduced_[q];
      flipped_[q] = !flipped_[q];
      return true;
    }

    if (at(leave, q) < 0.0) {
      // The leaving variable hits its upper bound: complement it so it
      // leaves at zero like any other.
      const std::size_t b = basis_[leave];
      double* r = row(leave);
      for (std::size_t j = 0; j < cols_; ++j)
        if (j != b) r[j] = -r[j];
      beta_[leave] = std::max(0.0, upper_[b] - beta_[leave]);
      flipped_[b] = !flipped_[b];
    }
    pivot(leave, q);
    return true;
  }

  void pivot(std::size_t p, std::size_t q) {
    double* pr = row(p);
    const double inv = 1.0 / pr[q];
    for (std::size_t j = 0; j < cols_; ++j) pr[j] *= inv;
    beta_[p] *= inv;
    pr[q] = 1.0;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == p) continue;
      double* r = row(i);
      const double f = r[q];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < cols_; ++j) r[j] -= f * pr[j];
      r[q] = 0.0;
      beta_[i] = std::max(0.0, beta_[i] - f * beta_[p]);
    }
    const double f = reduced_[q];
    for (std::size_t j = 0; j < cols_; ++j) reduced_[j] -= f * pr[j];
    reduced_[q] = 0.0;
    is_basic_[basis_[p]] = false;
    basis_[p] = q;
    is_basic_[q] = true;
  }

  std::vector<double> values() const {
    std::vector<double> val(cols_, 0.0);
    for (std::size_t i = 0; i < m_; ++i) val[basis_[i]] = beta_[i];
    std::vector<double> x(n_);
    for (std::size_t j = 0; j < n_; ++j) x[j] = flipped_[j] ? upper_[j] - val[j] : val[j];
    return x;
  }

  std::size_t m_, n_, cols_;
  double tol_;
  std::vector<double> t_;
  std::vector<double> beta_;
  std::vector<std::size_t> basis_;
  std::vector<double> reduced_;
  std::vector<double> upper_;
  std::vector<bool> flipped_;
  std::vector<bool> is_basic_;
};

}  // namespace

LpSolution solve_bounded_simplex(const BoundedLp& lp, const SimplexOptions& options) {
  if (lp.objective.size() != lp.num_vars || lp.upper.size() != lp.num_vars)
    throw std::invalid_argument("simplex: objective/bounds size mismatch");
  if (lp.rows.size() != lp.rhs.size()) throw std::invalid_argument("simplex: row/rhs count mismatch");
  for (const auto& r : lp.rows)
    if (r.size() != lp.num_vars) throw std::invalid_argument("simplex: row length mismatch");
  for (double u : lp.upper)
    if (!(u >= 0.0)) throw std::invalid_argument("simplex: upper bounds must be nonnegative");
  for (double b : lp.rhs)
    if (!(b >= -options.tolerance)) throw std::invalid_argument("simplex: rhs must be nonnegative");

  Tableau tableau(lp, options.tolerance);
  LpSolution sol = tableau.run(options.max_iterations);
  sol.objective = 0.0;
  for (std::size_t j = 0; j < lp.num_vars; ++j) sol.objective += lp.objective[j] * sol.x[j];
  return sol;
}

}  // namespace lipfree
