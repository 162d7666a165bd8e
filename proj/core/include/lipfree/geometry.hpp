#pragma once

// Dyadic hypercube grids, retractions and the l1 coordinate maps.
//
// A point of R^N is a plain std::vector<double>. Points of l1 with finitely
// many nonzero coordinates are SparsePoint (1-based indices). Every level-n
// tiling coordinate is an integer multiple of 2^-n, so for n <= kMaxLevel all
// grid arithmetic below is exact in binary64.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lipfree {

using Point = std::vector<double>;

inline constexpr int kMaxLevel = 20;
// Dimension cap for the R^N mode; each evaluation touches up to 2^N corners.
inline constexpr std::size_t kMaxAmbientDim = 16;
// Product n*N allowed for full grid enumeration.
inline constexpr std::size_t kMaxEnumerationBits = 60;
// Largest vertex set enumerate_vertices will materialize.
inline constexpr std::uint64_t kMaxEnumeratedVertices = std::uint64_t{1} << 24;

/// Sign vector over {-1,+1}. Bit i of mask() is set iff entry i is +1.
class SignVector {
 public:
  SignVector() = default;
  explicit SignVector(std::vector<signed char> signs);

  static SignVector from_mask(std::uint64_t mask, std::size_t size);
  /// Parses strings such as "+-+"; throws std::invalid_argument otherwise.
  static SignVector from_string(std::string_view text);

  std::size_t size() const noexcept { return signs_.size(); }
  int operator[](std::size_t i) const { return signs_[i]; }
  std::uint64_t mask() const noexcept;
  std::string to_string() const;

  friend bool operator==(const SignVector&, const SignVector&) = default;

 private:
  std::vector<signed char> signs_;
};

/// Axis-aligned cube C(center, edge) = { x : max_i |x_i - center_i| <= edge/2 }.
class Hypercube {
 public:
  Hypercube(Point center, double edge);

  const Point& center() const noexcept { return center_; }
  double edge() const noexcept { return edge_; }
  std::size_t dim() const noexcept { return center_.size(); }

  bool contains(std::span<const double> x, double tol = 0.0) const;

 private:
  Point center_;
  double edge_;
};

/// Address (eps, h, k) of the dyadic point y + 2^{-k-1} eps + 2^{-k} (eps_i h_i).
struct DyadicCubeIndex {
  SignVector eps;
  std::vector<std::uint64_t> h;
  int k = 0;

  friend bool operator==(const DyadicCubeIndex&, const DyadicCubeIndex&) = default;
};

/// Element of l1 with finite support. Entries are kept sorted by index and
/// never store a zero, so equality is equality of points.
class SparsePoint {
 public:
  using Entry = std::pair<std::size_t, double>;

  SparsePoint() = default;
  /// Indices must be >= 1 and distinct. Zero values are dropped.
  explicit SparsePoint(std::vector<Entry> entries);

  std::span<const Entry> entries() const noexcept { return entries_; }
  double operator[](std::size_t index) const;
  std::size_t nnz() const noexcept { return entries_.size(); }
  /// Largest index carrying a nonzero, 0 for the origin.
  std::size_t max_index() const noexcept;
  bool is_zero() const noexcept { return entries_.empty(); }

  double l1_norm() const noexcept;
  /// sum_{i > n} |x_i|, exact over the stored support.
  double tail_l1(std::size_t n) const noexcept;

  friend bool operator==(const SparsePoint&, const SparsePoint&) = default;
  friend std::partial_ordering operator<=>(const SparsePoint& a, const SparsePoint& b) {
    return a.entries_ <=> b.entries_;
  }

 private:
  std::vector<Entry> entries_;
};

double l1_norm(std::span<const double> x) noexcept;
double linf_norm(std::span<const double> x) noexcept;
double l1_distance(std::span<const double> x, std::span<const double> y);
double l1_distance(const SparsePoint& x, const SparsePoint& y) noexcept;

/// A_delta(y, R) = y + (R/2) delta.
Point vertex(const Hypercube& cube, const SignVector& delta);

Point grid_point(std::span<const double> y, const DyadicCubeIndex& idx);

/// Cube of edge 2^-k centered at grid_point(0, idx); dimension is idx.eps.size().
Hypercube dyadic_cube(const DyadicCubeIndex& idx);

/// Nearest point to t in [-R/2, R/2].
double clamp_scalar(double t, double R);

/// Coordinatewise clamp_scalar: the nearest-point retraction onto C(0, R).
Point retract(std::span<const double> x, double R);

/// First n coordinates of x.
Point rho(const SparsePoint& x, std::size_t n);

/// Zero-padded injection of R^n into l1.
SparsePoint tau(std::span<const double> x);

/// Half edge 2^{n-1} of the big cube C(0, 2^n) tiled at level n.
double level_half_extent(int n);
/// Edge 2^{1-n} of the small cubes of the level-n tiling.
double level_cell_edge(int n);

/// Finds the level-n cube C(x^{eps,0}_{h,n-1}, 2^{1-n}) containing u.
/// Ties on shared faces go to the slab [lower, upper) with eps_i = +1 at 0,
/// except on the outer face where the last slab is used.
DyadicCubeIndex locate_cube(std::span<const double> u, int n);

/// |V_n| = (2^{2n-1} + 1)^dim; throws std::overflow_error past 64 bits.
std::uint64_t vertex_count(int n, std::size_t dim);

/// True iff x lies on the level-n vertex grid V_n in R^dim.
bool on_level_grid(std::span<const double> x, int n);

/// V_n in lexicographic order; throws std::length_error (with the
/// cardinality in the message) when the set exceeds the enumeration caps.
std::vector<Point> enumerate_vertices(int n, std::size_t dim);

void check_level(int n);

}  // namespace lipfree
