#pragma once

// Seeded generators for property checks. Everything derives from one
// std::mt19937_64 so a run is reproducible from its seed.

#include <cstddef>
#include <cstdint>
#include <random>

#include "lipfree/freespace.hpp"
#include "lipfree/geometry.hpp"
#include "lipfree/interp.hpp"
#include "lipfree/metric_space.hpp"

namespace lipfree::verify {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(engine_);
  }
  std::size_t index(std::size_t count) { return static_cast<std::size_t>(integer(0, static_cast<std::int64_t>(count) - 1)); }
  bool coin() { return integer(0, 1) == 1; }
  /// Integer multiple of 2^-bits in [-range, range].
  double dyadic(int bits, double range);
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

Point random_point(Rng& rng, std::size_t dim, double lo, double hi);
Point random_point_in(Rng& rng, const Hypercube& cube);
Hypercube random_cube(Rng& rng, std::size_t dim);
VertexData random_vertex_data(Rng& rng, std::size_t dim);

/// Up to max_nnz nonzero coordinates with indices in [1, max_index].
SparsePoint random_sparse_point(Rng& rng, std::size_t max_index, std::size_t max_nnz, double range);

MoleculeL1 random_molecule_l1(Rng& rng, std::size_t max_support, std::size_t max_index, std::size_t max_nnz,
                              double range);
MoleculeN random_molecule_n(Rng& rng, std::size_t dim, std::size_t max_support, double range);

/// Shortest-path metric of a complete graph with random edge weights.
FinitePointedMetricSpace random_metric_space(Rng& rng, std::size_t k);
FinitePointedMetricSpace random_l1_space(Rng& rng, std::size_t k, std::size_t dim, double range);

}  // namespace lipfree::verify
