#include "lipfree/verify/random.hpp"

#include <algorithm>
#include <cmath>

namespace lipfree::verify {

double Rng::dyadic(int bits, double range) {
  const auto steps = static_cast<std::int64_t>(std::ldexp(range, bits));
  return std::ldexp(static_cast<double>(integer(-steps, steps)), -bits);
}

Point random_point(Rng& rng, std::size_t dim, double lo, double hi) {
  Point p(dim);
  for (auto& c : p) c = rng.uniform(lo, hi);
  return p;
}

Point random_point_in(Rng& rng, const Hypercube& cube) {
  Point p(cube.dim());
  const double half = cube.edge() / 2.0;
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = cube.center()[i] + rng.uniform(-half, half);
  return p;
}

Hypercube random_cube(Rng& rng, std::size_t dim) {
  // Dyadic centers keep vertex coordinates exact.
  Point center(dim);
  for (auto& c : center) c = rng.dyadic(10, 2.0);
  return Hypercube(std::move(center), std::ldexp(1.0, static_cast<int>(rng.integer(-3, 2))));
}

VertexData random_vertex_data(Rng& rng, std::size_t dim) {
  const Hypercube cube = random_cube(rng, dim);
  std::vector<double> values(std::size_t{1} << dim);
  for (auto& v : values) v = rng.uniform(-1.0, 1.0);
  return VertexData(cube, std::move(values));
}

SparsePoint random_sparse_point(Rng& rng, std::size_t max_index, std::size_t max_nnz, double range) {
  const std::size_t nnz = 1 + rng.index(std::min(max_nnz, max_index));
  std::vector<std::size_t> idx(max_index);
  for (std::size_t i = 0; i < max_index; ++i) idx[i] = i + 1;
  for (std::size_t i = 0; i < nnz; ++i) std::swap(idx[i], idx[i + rng.index(max_index - i)]);
  std::vector<SparsePoint::Entry> entries;
  for (std::size_t i = 0; i < nnz; ++i) entries.emplace_back(idx[i], rng.uniform(-range, range));
  return SparsePoint(std::move(entries));
}

MoleculeL1 random_molecule_l1(Rng& rng, std::size_t max_support, std::size_t max_index, std::size_t max_nnz,
                              double range) {
  const std::size_t k = 1 + rng.index(max_support);
  std::vector<Term<SparsePoint>> terms;
  for (std::size_t i = 0; i < k; ++i)
    terms.push_back({random_sparse_point(rng, max_index, max_nnz, range), rng.uniform(-1.0, 1.0)});
  return MoleculeL1(SparsePoint{}, std::move(terms));
}

MoleculeN random_molecule_n(Rng& rng, std::size_t dim, std::size_t max_support, double range) {
  const std::size_t k = 1 + rng.index(max_support);
  std::vector<Term<Point>> terms;
  for (std::size_t i = 0; i < k; ++i) terms.push_back({random_point(rng, dim, -range, range), rng.uniform(-1.0, 1.0)});
  return MoleculeN(Point(dim, 0.0), std::move(terms));
}

FinitePointedMetricSpace random_metric_space(Rng& rng, std::size_t k) {
  DistanceMatrix d(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) d.set_symmetric(i, j, rng.uniform(0.5, 3.0));
  for (std::size_t l = 0; l < k; ++l)
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        if (d(i, l) + d(l, j) < d(i, j)) d(i, j) = d(i, l) + d(l, j);
  // Floyd-Warshall keeps symmetry up to rounding; enforce it exactly.
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) d.set_symmetric(i, j, std::min(d(i, j), d(j, i)));
  return FinitePointedMetricSpace({}, std::move(d), rng.index(k));
}

FinitePointedMetricSpace random_l1_space(Rng& rng, std::size_t k, std::size_t dim, double range) {
  std::vector<Point> pts;
  while (pts.size() < k) {
    Point p = random_point(rng, dim, -range, range);
    if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(std::move(p));
  }
  return FinitePointedMetricSpace::from_l1_embedding(pts, 0);
}

}  // namespace lipfree::verify
