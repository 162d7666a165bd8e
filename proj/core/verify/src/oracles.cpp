#include "lipfree/verify/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>

namespace lipfree::verify {

double lambda_recursive(const VertexData& data, std::span<const double> x) {
  const Hypercube& cube = data.cube();
  const std::size_t n = cube.dim();
  if (x.size() != n) throw std::invalid_argument("lambda_recursive: dimension mismatch");
  const double R = cube.edge();

  // signs holds (delta_{j+1}, ..., delta_N) once stage j is reached.
  std::vector<signed char> signs(n, 1);
  std::function<double(std::size_t)> stage = [&](std::size_t j) -> double {
    if (j == 0) return data.value(SignVector(signs));
    const double t = (x[j - 1] - cube.center()[j - 1] + R / 2.0) / R;
    signs[j - 1] = 1;
    const double plus = stage(j - 1);
    signs[j - 1] = -1;
    const double minus = stage(j - 1);
    return t * plus + (1.0 - t) * minus;
  };
  return stage(n);
}

std::vector<DyadicCubeIndex> containing_cubes(std::span<const double> u, int n) {
  const std::size_t dim = u.size();
  const std::uint64_t slabs = std::uint64_t{1} << (2 * n - 2);
  std::uint64_t total_h = 1;
  for (std::size_t i = 0; i < dim; ++i) total_h *= slabs;
  std::vector<DyadicCubeIndex> out;
  const Point origin(dim, 0.0);
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << dim); ++m)
    for (std::uint64_t code = 0; code < total_h; ++code) {
      DyadicCubeIndex idx{SignVector::from_mask(m, dim), std::vector<std::uint64_t>(dim), n - 1};
      std::uint64_t c = code;
      for (std::size_t i = 0; i < dim; ++i) {
        idx.h[i] = c % slabs;
        c /= slabs;
      }
      const Point center = grid_point(origin, idx);
      const double half = std::ldexp(1.0, -n);
      bool inside = true;
      for (std::size_t i = 0; i < dim && inside; ++i) inside = std::abs(u[i] - center[i]) <= half;
      if (inside) out.push_back(std::move(idx));
    }
  return out;
}

std::vector<Point> vertex_union(int n, std::size_t dim) {
  const std::uint64_t slabs = std::uint64_t{1} << (2 * n - 2);
  std::uint64_t total_h = 1;
  for (std::size_t i = 0; i < dim; ++i) total_h *= slabs;
  std::vector<Point> out;
  const Point origin(dim, 0.0);
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << dim); ++m)
    for (std::uint64_t code = 0; code < total_h; ++code) {
      DyadicCubeIndex idx{SignVector::from_mask(m, dim), std::vector<std::uint64_t>(dim), n - 1};
      std::uint64_t c = code;
      for (std::size_t i = 0; i < dim; ++i) {
        idx.h[i] = c % slabs;
        c /= slabs;
      }
      const Point center = grid_point(origin, idx);
      const double half = std::ldexp(1.0, -n);
      for (std::uint64_t v = 0; v < (std::uint64_t{1} << dim); ++v) {
        Point p(center);
        for (std::size_t i = 0; i < dim; ++i) p[i] += ((v >> i) & 1U) ? half : -half;
        out.push_back(std::move(p));
      }
    }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double transport_norm(std::span<const double> coeffs, const DistanceMatrix& dist) {
  const std::size_t k = coeffs.size();
  if (dist.size() != k + 1) throw std::invalid_argument("transport_norm: distance matrix size mismatch");
  std::vector<double> net(k + 1, 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    net[i + 1] = coeffs[i];
    total += coeffs[i];
  }
  net[0] = -total;

  std::vector<std::size_t> sources, sinks;
  for (std::size_t i = 0; i <= k; ++i) {
    if (net[i] > 0.0) sources.push_back(i);
    if (net[i] < 0.0) sinks.push_back(i);
  }
  if (sources.empty() || sinks.empty()) return 0.0;

  struct Arc {
    std::size_t s, t;
  };
  std::vector<Arc> arcs;
  for (std::size_t a = 0; a < sources.size(); ++a)
    for (std::size_t b = 0; b < sinks.size(); ++b) arcs.push_back({a, b});
  const std::size_t nodes = sources.size() + sinks.size();
  const std::size_t tree_size = nodes - 1;
  if (arcs.size() > 30) throw std::invalid_argument("transport_norm: instance too large for enumeration");

  double best = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> pick(tree_size);
  // Enumerate every arc subset of size |nodes|-1 and keep the spanning
  // trees whose unique flow is nonnegative.
  std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t start, std::size_t depth) {
    if (depth == tree_size) {
      std::vector<double> remaining(nodes);
      for (std::size_t a = 0; a < sources.size(); ++a) remaining[a] = net[sources[a]];
      for (std::size_t b = 0; b < sinks.size(); ++b) remaining[sources.size() + b] = -net[sinks[b]];
      std::vector<bool> used(tree_size, false);
      std::vector<std::size_t> degree(nodes, 0);
      for (auto p : pick) {
        ++degree[arcs[p].s];
        ++degree[sources.size() + arcs[p].t];
      }
      double cost = 0.0;
      for (std::size_t step = 0; step < tree_size; ++step) {
        std::size_t leaf_arc = tree_size;
        bool leaf_is_source = false;
        for (std::size_t e = 0; e < tree_size && leaf_arc == tree_size; ++e) {
          if (used[e]) continue;
          const auto& arc = arcs[pick[e]];
          if (degree[arc.s] == 1) {
            leaf_arc = e;
            leaf_is_source = true;
          } else if (degree[sources.size() + arc.t] == 1) {
            leaf_arc = e;
            leaf_is_source = false;
          }
        }
        if (leaf_arc == tree_size) return;  // contains a cycle
        const auto& arc = arcs[pick[leaf_arc]];
        const std::size_t s_node = arc.s;
        const std::size_t t_node = sources.size() + arc.t;
        const double flow = leaf_is_source ? remaining[s_node] : remaining[t_node];
        if (flow < -1e-12) return;
        remaining[s_node] -= flow;
        remaining[t_node] -= flow;
        --degree[s_node];
        --degree[t_node];
        used[leaf_arc] = true;
        cost += flow * dist(sources[arc.s], sinks[arc.t]);
      }
      for (double r : remaining)
        if (std::abs(r) > 1e-9) return;
      best = std::min(best, cost);
      return;
    }
    for (std::size_t e = start; e < arcs.size(); ++e) {
      pick[depth] = e;
      choose(e + 1, depth + 1);
    }
  };
  choose(0, 0);
  if (!std::isfinite(best)) throw std::runtime_error("transport_norm: no feasible plan found");
  return best;
}

double line_total_variation(std::span<const double> points, std::span<const double> coeffs) {
  if (points.size() != coeffs.size()) throw std::invalid_argument("line_total_variation: size mismatch");
  std::vector<double> cuts(points.begin(), points.end());
  cuts.push_back(0.0);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  double total = 0.0;
  for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
    const double mid = 0.5 * (cuts[c] + cuts[c + 1]);
    double g = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (points[i] > 0.0 && mid > 0.0 && mid < points[i]) g += coeffs[i];
      if (points[i] < 0.0 && mid < 0.0 && mid > points[i]) g -= coeffs[i];
    }
    total += std::abs(g) * (cuts[c + 1] - cuts[c]);
  }
  return total;
}

}  // namespace lipfree::verify
