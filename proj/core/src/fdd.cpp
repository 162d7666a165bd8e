#include "lipfree/fdd.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace lipfree {

std::vector<LevelCorner> level_stencil(std::span<const double> x, int n) {
  check_level(n);
  if (x.empty()) throw std::invalid_argument("level_stencil: empty point");
  const Point u = retract(x, std::ldexp(1.0, n));
  const Hypercube cube = dyadic_cube(locate_cube(u, n));
  const auto weights = nonzero_weights(cube, u);
  std::vector<LevelCorner> out;
  out.reserve(weights.size());
  for (const auto& [mask, w] : weights) out.push_back({vertex(cube, SignVector::from_mask(mask, u.size())), w});
  return out;
}

bool retraction_active(std::span<const double> x, int n) { return linf_norm(x) > level_half_extent(n); }

bool retraction_active(const SparsePoint& x, int n) {
  const double half = level_half_extent(n);
  for (const auto& [i, v] : x.entries()) {
    if (i > static_cast<std::size_t>(n)) break;
    if (std::abs(v) > half) return true;
  }
  return false;
}

double level_interpolate(const LipFunctionN& g, std::span<const double> x, int n) {
  double s = 0.0;
  for (const auto& c : level_stencil(x, n)) s += c.weight * g(c.vertex);
  return s;
}

double p_n(const LipFunctionN& g, std::span<const double> u, int n) {
  if (u.size() != static_cast<std::size_t>(n)) throw std::invalid_argument("p_n: point must have n coordinates");
  return level_interpolate(g, u, n);
}

double q_n_l1(const LipFunctionL1& f, const SparsePoint& x, int n) {
  check_level(n);
  const Point u = rho(x, static_cast<std::size_t>(n));
  double s = 0.0;
  for (const auto& c : level_stencil(u, n)) s += c.weight * f(tau(c.vertex));
  return s;
}

double q_n_finite(const LipFunctionN& f, std::span<const double> x, int n) {
  if (x.size() > kMaxAmbientDim) throw std::invalid_argument("q_n_finite: dimension above cap");
  return level_interpolate(f, x, n);
}

LipFunctionL1 project(const LipFunctionL1& f, int n) {
  check_level(n);
  auto inner = std::make_shared<const LipFunctionL1>(f);
  return {[inner, n](const SparsePoint& x) { return q_n_l1(*inner, x, n); }, f.declared_lip};
}

LipFunctionN project(const LipFunctionN& f, int n) {
  check_level(n);
  auto inner = std::make_shared<const LipFunctionN>(f);
  return {[inner, n](const Point& x) { return q_n_finite(*inner, x, n); }, f.declared_lip};
}

double convergence_bound_value(double lip, double tail, std::size_t dim, int n) {
  return 2.0 * lip * (tail + static_cast<double>(dim) * level_cell_edge(n));
}

ConvergenceReport convergence_bound(const LipFunctionL1& f, const SparsePoint& x, int n) {
  if (!f.declared_lip) throw std::invalid_argument("convergence_bound: declared Lipschitz bound required");
  ConvergenceReport r;
  r.error = std::abs(q_n_l1(f, x, n) - f(x));
  r.bound = convergence_bound_value(*f.declared_lip, x.tail_l1(static_cast<std::size_t>(n)),
                                    static_cast<std::size_t>(n), n);
  r.retraction_active = retraction_active(x, n);
  r.within_bound = r.error <= r.bound + 1e-9;
  return r;
}

ConvergenceReport convergence_bound(const LipFunctionN& f, const Point& x, int n) {
  if (!f.declared_lip) throw std::invalid_argument("convergence_bound: declared Lipschitz bound required");
  ConvergenceReport r;
  r.error = std::abs(q_n_finite(f, x, n) - f(x));
  r.bound = convergence_bound_value(*f.declared_lip, 0.0, x.size(), n);
  r.retraction_active = retraction_active(x, n);
  r.within_bound = r.error <= r.bound + 1e-9;
  return r;
}

LipFunctionL1 identity_coordinate_l1(std::size_t index) {
  if (index == 0) throw std::invalid_argument("identity_coordinate: indices start at 1");
  return {[index](const SparsePoint& x) { return x[index]; }, 1.0};
}

LipFunctionN identity_coordinate(std::size_t index, std::size_t dim) {
  if (index == 0 || index > dim) throw std::invalid_argument("identity_coordinate: index out of range");
  return {[index, dim](const Point& x) {
            if (x.size() != dim) throw std::invalid_argument("identity_coordinate: dimension mismatch");
            return x[index - 1];
          },
          1.0};
}

LipFunctionL1 l1_norm_function_l1() {
  return {[](const SparsePoint& x) { return x.l1_norm(); }, 1.0};
}

LipFunctionN l1_norm_function(std::size_t dim) {
  return {[dim](const Point& x) {
            if (x.size() != dim) throw std::invalid_argument("l1_norm_function: dimension mismatch");
            return l1_norm(x);
          },
          1.0};
}

LipFunctionL1 max_coordinate_l1() {
  return {[](const SparsePoint& x) {
            double m = 0.0;
            for (const auto& [i, v] : x.entries()) m = std::max(m, v);
            return m;
          },
          1.0};
}

LipFunctionN max_coordinate(std::size_t dim) {
  if (dim == 0) throw std::invalid_argument("max_coordinate: dimension must be positive");
  return {[dim](const Point& x) {
            if (x.size() != dim) throw std::invalid_argument("max_coordinate: dimension mismatch");
            return *std::max_element(x.begin(), x.end());
          },
          1.0};
}

namespace {

struct LatticeAnchors {
  std::vector<Point> points;
  std::vector<double> values;
};

LatticeAnchors draw_anchors(std::uint64_t seed, std::size_t dim, std::size_t anchors) {
  if (dim == 0 || anchors == 0) throw std::invalid_argument("random_lattice: dim and anchors must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> cell(-32, 32);  // 2^-3 * [-32, 32] = [-4, 4]
  std::uniform_real_distribution<double> value(-2.0, 2.0);
  LatticeAnchors a;
  for (std::size_t j = 0; j < anchors; ++j) {
    Point p(dim);
    for (auto& c : p) c = std::ldexp(static_cast<double>(cell(rng)), -3);
    a.points.push_back(std::move(p));
    a.values.push_back(value(rng));
  }
  return a;
}

}  // namespace

LipFunctionL1 random_lattice_l1(std::uint64_t seed, std::size_t dim, std::size_t anchors, double lip) {
  auto drawn = draw_anchors(seed, dim, anchors);
  auto pts = std::make_shared<std::vector<SparsePoint>>();
  for (const auto& p : drawn.points) pts->push_back(tau(p));
  auto vals = std::make_shared<std::vector<double>>(std::move(drawn.values));
  auto raw = [pts, vals, lip](const SparsePoint& x) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < pts->size(); ++j) best = std::min(best, (*vals)[j] + lip * l1_distance(x, (*pts)[j]));
    return best;
  };
  const double offset = raw(SparsePoint{});
  return {[raw, offset](const SparsePoint& x) { return raw(x) - offset; }, lip};
}

LipFunctionN random_lattice(std::uint64_t seed, std::size_t dim, std::size_t anchors, double lip) {
  auto drawn = std::make_shared<LatticeAnchors>(draw_anchors(seed, dim, anchors));
  auto raw = [drawn, lip](const Point& x) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < drawn->points.size(); ++j)
      best = std::min(best, drawn->values[j] + lip * l1_distance(x, drawn->points[j]));
    return best;
  };
  const double offset = raw(Point(dim, 0.0));
  return {[raw, offset](const Point& x) { return raw(x) - offset; }, lip};
}

LipFunctionL1 builtin_function_l1(const std::string& name, std::size_t dim, std::uint64_t seed) {
  if (name == "identity-coordinate") return identity_coordinate_l1(1);
  if (name == "l1-norm") return l1_norm_function_l1();
  if (name == "max-coordinate") return max_coordinate_l1();
  if (name == "random-lattice") return random_lattice_l1(seed, std::max<std::size_t>(dim, 1));
  throw std::invalid_argument("unknown built-in function '" + name + "'");
}

LipFunctionN builtin_function(const std::string& name, std::size_t dim, std::uint64_t seed) {
  if (name == "identity-coordinate") return identity_coordinate(1, dim);
  if (name == "l1-norm") return l1_norm_function(dim);
  if (name == "max-coordinate") return max_coordinate(dim);
  if (name == "random-lattice") return random_lattice(seed, dim);
  throw std::invalid_argument("unknown built-in function '" + name + "'");
}

namespace {

template <class P>
LipFunction<P> mcshane_impl(const TabulatedFunction<P>& f, double lip) {
  auto table = std::make_shared<TabulatedFunction<P>>(f);
  return {[table, lip](const P& x) {
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < table->points.size(); ++i)
              best = std::min(best, table->values[i] + lip * l1_distance(x, table->points[i]));
            return best;
          },
          lip};
}

}  // namespace

LipFunctionN mcshane_extension(const TabulatedFunction<Point>& f) {
  const double lip = f.points.size() < 2 ? 0.0 : lip_constant(f);
  return mcshane_impl(f, lip);
}

LipFunctionL1 mcshane_extension(const TabulatedFunction<SparsePoint>& f) {
  const double lip = f.points.size() < 2 ? 0.0 : lip_constant(f);
  return mcshane_impl(f, lip);
}

}  // namespace lipfree
