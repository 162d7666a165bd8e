#include "lipfree/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace lipfree {

SignVector::SignVector(std::vector<signed char> signs) : signs_(std::move(signs)) {
  for (auto s : signs_) {
    if (s != 1 && s != -1) throw std::invalid_argument("SignVector: entries must be -1 or +1");
  }
}

SignVector SignVector::from_mask(std::uint64_t mask, std::size_t size) {
  if (size > 64) throw std::invalid_argument("SignVector: at most 64 entries");
  std::vector<signed char> s(size);
  for (std::size_t i = 0; i < size; ++i) s[i] = ((mask >> i) & 1U) ? 1 : -1;
  return SignVector(std::move(s));
}

SignVector SignVector::from_string(std::string_view text) {
  std::vector<signed char> s;
  s.reserve(text.size());
  for (char c : text) {
    if (c == '+')
      s.push_back(1);
    else if (c == '-')
      s.push_back(-1);
    else
      throw std::invalid_argument("SignVector: expected '+' or '-' in \"" + std::string(text) + "\"");
  }
  return SignVector(std::move(s));
}

std::uint64_t SignVector::mask() const noexcept {
  std::uint64_t m = 0;
  for (std::size_t i = 0; i < signs_.size(); ++i)
    if (signs_[i] > 0) m |= std::uint64_t{1} << i;
  return m;
}

std::string SignVector::to_string() const {
  std::string out;
  out.reserve(signs_.size());
  for (auto s : signs_) out.push_back(s > 0 ? '+' : '-');
  return out;
}

Hypercube::Hypercube(Point center, double edge) : center_(std::move(center)), edge_(edge) {
  if (!(edge_ > 0.0) || !std::isfinite(edge_)) throw std::invalid_argument("Hypercube: edge must be positive");
  if (center_.empty()) throw std::invalid_argument("Hypercube: dimension must be positive");
}

bool Hypercube::contains(std::span<const double> x, double tol) const {
  if (x.size() != center_.size()) return false;
  const double half = edge_ / 2.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (std::abs(x[i] - center_[i]) > half + tol) return false;
  return true;
}

SparsePoint::SparsePoint(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.first < b.first; });
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].first == 0) throw std::invalid_argument("SparsePoint: indices start at 1");
    if (i > 0 && entries[i].first == entries[i - 1].first)
      throw std::invalid_argument("SparsePoint: duplicate index " + std::to_string(entries[i].first));
    if (!std::isfinite(entries[i].second)) throw std::invalid_argument("SparsePoint: non-finite coordinate");
  }
  std::erase_if(entries, [](const Entry& e) { return e.second == 0.0; });
  entries_ = std::move(entries);
}

double SparsePoint::operator[](std::size_t index) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), index,
                             [](const Entry& e, std::size_t i) { return e.first < i; });
  return (it != entries_.end() && it->first == index) ? it->second : 0.0;
}

std::size_t SparsePoint::max_index() const noexcept { return entries_.empty() ? 0 : entries_.back().first; }

double SparsePoint::l1_norm() const noexcept {
  double s = 0.0;
  for (const auto& [i, v] : entries_) s += std::abs(v);
  return s;
}

double SparsePoint::tail_l1(std::size_t n) const noexcept {
  double s = 0.0;
  for (const auto& [i, v] : entries_)
    if (i > n) s += std::abs(v);
  return s;
}

double l1_norm(std::span<const double> x) noexcept {
  double s = 0.0;
  for (double v : x) s += std::abs(v);
  return s;
}

double linf_norm(std::span<const double> x) noexcept {
  double s = 0.0;
  for (double v : x) s = std::max(s, std::abs(v));
  return s;
}

double l1_distance(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("l1_distance: dimension mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += std::abs(x[i] - y[i]);
  return s;
}

double l1_distance(const SparsePoint& x, const SparsePoint& y) noexcept {
  auto a = x.entries();
  auto b = y.entries();
  std::size_t i = 0, j = 0;
  double s = 0.0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      s += std::abs(a[i++].second);
    } else if (i == a.size() || b[j].first < a[i].first) {
      s += std::abs(b[j++].second);
    } else {
      s += std::abs(a[i++].second - b[j++].second);
    }
  }
  return s;
}

Point vertex(const Hypercube& cube, const SignVector& delta) {
  if (delta.size() != cube.dim()) throw std::invalid_argument("vertex: sign vector length differs from cube dimension");
  Point out(cube.center());
  const double half = cube.edge() / 2.0;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += half * delta[i];
  return out;
}

Point grid_point(std::span<const double> y, const DyadicCubeIndex& idx) {
  const std::size_t n = y.size();
  if (idx.eps.size() != n || idx.h.size() != n) throw std::invalid_argument("grid_point: dimension mismatch");
  const double half_step = std::ldexp(1.0, -idx.k - 1);
  const double step = std::ldexp(1.0, -idx.k);
  Point out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = y[i] + half_step * idx.eps[i] + step * (idx.eps[i] * static_cast<double>(idx.h[i]));
  return out;
}

Hypercube dyadic_cube(const DyadicCubeIndex& idx) {
  const Point origin(idx.eps.size(), 0.0);
  return Hypercube(grid_point(origin, idx), std::ldexp(1.0, -idx.k));
}

double clamp_scalar(double t, double R) {
  const double half = R / 2.0;
  return std::clamp(t, -half, half);
}

Point retract(std::span<const double> x, double R) {
  Point out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = clamp_scalar(x[i], R);
  return out;
}

Point rho(const SparsePoint& x, std::size_t n) {
  Point out(n, 0.0);
  for (const auto& [i, v] : x.entries()) {
    if (i > n) break;
    out[i - 1] = v;
  }
  return out;
}

SparsePoint tau(std::span<const double> x) {
  std::vector<SparsePoint::Entry> entries;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0.0) entries.emplace_back(i + 1, x[i]);
  return SparsePoint(std::move(entries));
}

void check_level(int n) {
  if (n < 1 || n > kMaxLevel)
    throw std::invalid_argument("level n must lie in [1, " + std::to_string(kMaxLevel) + "], got " + std::to_string(n));
}

double level_half_extent(int n) { return std::ldexp(1.0, n - 1); }
double level_cell_edge(int n) { return std::ldexp(1.0, 1 - n); }

DyadicCubeIndex locate_cube(std::span<const double> u, int n) {
  check_level(n);
  const double half = level_half_extent(n);
  const double edge = level_cell_edge(n);
  const std::uint64_t slabs = std::uint64_t{1} << (2 * n - 2);
  const double tol = 1e-12 * half;

  std::vector<signed char> eps(u.size());
  std::vector<std::uint64_t> h(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double a = std::abs(u[i]);
    if (!(a <= half + tol))
      throw std::out_of_range("locate_cube: coordinate " + std::to_string(u[i]) + " outside C(0, 2^n)");
    eps[i] = u[i] >= 0.0 ? 1 : -1;
    const double slab = std::floor(a / edge);
    h[i] = std::min<std::uint64_t>(static_cast<std::uint64_t>(slab), slabs - 1);
  }
  return DyadicCubeIndex{SignVector(std::move(eps)), std::move(h), n - 1};
}

std::uint64_t vertex_count(int n, std::size_t dim) {
  check_level(n);
  const std::uint64_t per_axis = (std::uint64_t{1} << (2 * n - 1)) + 1;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < dim; ++i) {
    if (total > std::numeric_limits<std::uint64_t>::max() / per_axis)
      throw std::overflow_error("vertex_count: |V_n| exceeds 64 bits");
    total *= per_axis;
  }
  return total;
}

bool on_level_grid(std::span<const double> x, int n) {
  check_level(n);
  const double half = level_half_extent(n);
  const double edge = level_cell_edge(n);
  for (double v : x) {
    if (std::abs(v) > half) return false;
    const double q = v / edge;
    if (q != std::floor(q)) return false;
  }
  return true;
}

std::vector<Point> enumerate_vertices(int n, std::size_t dim) {
  check_level(n);
  if (dim == 0) throw std::invalid_argument("enumerate_vertices: dimension must be positive");
  std::uint64_t count = 0;
  bool too_big = static_cast<std::size_t>(n) * dim > kMaxEnumerationBits;
  if (!too_big) {
    count = vertex_count(n, dim);
    too_big = count > kMaxEnumeratedVertices;
  }
  if (too_big) {
    std::string card = count ? std::to_string(count)
                             : "(2^" + std::to_string(2 * n - 1) + "+1)^" + std::to_string(dim);
    throw std::length_error("enumerate_vertices: |V_n| = " + card + " exceeds the enumeration cap");
  }

  const std::uint64_t per_axis = (std::uint64_t{1} << (2 * n - 1)) + 1;
  const double half = level_half_extent(n);
  const double edge = level_cell_edge(n);
  std::vector<Point> out;
  out.reserve(count);
  std::vector<std::uint64_t> digits(dim, 0);
  for (std::uint64_t c = 0; c < count; ++c) {
    Point p(dim);
    for (std::size_t i = 0; i < dim; ++i) p[i] = -half + edge * static_cast<double>(digits[i]);
    out.push_back(std::move(p));
    for (std::size_t i = dim; i-- > 0;) {
      if (++digits[i] < per_axis) break;
      digits[i] = 0;
    }
  }
  return out;
}

}  // namespace lipfree
