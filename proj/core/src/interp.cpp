#include "lipfree/interp.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

namespace lipfree {

VertexData::VertexData(Hypercube cube, std::vector<double> values) : cube_(std::move(cube)), values_(std::move(values)) {
  if (cube_.dim() >= 63) throw std::invalid_argument("VertexData: dimension too large");
  if (values_.size() != (std::uint64_t{1} << cube_.dim()))
    throw std::invalid_argument("VertexData: need exactly 2^N vertex values");
  for (double v : values_)
    if (!std::isfinite(v)) throw std::invalid_argument("VertexData: non-finite vertex value");
}

std::vector<double> barycentric(const Hypercube& cube, std::span<const double> x) {
  if (x.size() != cube.dim()) throw std::invalid_argument("barycentric: dimension mismatch");
  const double R = cube.edge();
  const double tol = 1e-12 * std::max(1.0, R);
  std::vector<double> t(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double off = x[i] - cube.center()[i];
    if (!(std::abs(off) <= R / 2.0 + tol))
      throw std::out_of_range("point outside cube in coordinate " + std::to_string(i));
    t[i] = std::clamp((off + R / 2.0) / R, 0.0, 1.0);
  }
  return t;
}

namespace {

double corner_weight(std::span<const double> t, std::uint64_t mask) {
  double w = 1.0;
  for (std::size_t i = 0; i < t.size(); ++i) w *= ((mask >> i) & 1U) ? t[i] : 1.0 - t[i];
  return w;
}

}  // namespace

std::vector<double> interpolation_weights(const Hypercube& cube, std::span<const double> x) {
  const auto t = barycentric(cube, x);
  const std::uint64_t count = std::uint64_t{1} << t.size();
  std::vector<double> w(count);
  for (std::uint64_t m = 0; m < count; ++m) w[m] = corner_weight(t, m);
  return w;
}

std::vector<StencilEntry> nonzero_weights(const Hypercube& cube, std::span<const double> x) {
  const auto t = barycentric(cube, x);
  std::uint64_t fixed = 0;
  std::uint64_t free = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] == 1.0)
      fixed |= std::uint64_t{1} << i;
    else if (t[i] != 0.0)
      free |= std::uint64_t{1} << i;
  }
  std::vector<StencilEntry> out;
  out.reserve(std::size_t{1} << std::popcount(free));
  std::uint64_t sub = 0;
  do {
    const std::uint64_t m = fixed | sub;
    out.push_back({m, corner_weight(t, m)});
    sub = (sub - free) & free;
  } while (sub != 0);
  return out;
}

double lambda_eval(const VertexData& data, std::span<const double> x) {
  double s = 0.0;
  for (const auto& [m, w] : nonzero_weights(data.cube(), x)) s += w * data.values()[m];
  return s;
}

double lip_constant(std::span<const double> values, const DistanceMatrix& d) {
  if (values.size() != d.size()) throw std::invalid_argument("lip_constant: size mismatch");
  if (values.size() < 2) throw std::invalid_argument("lip_constant: need at least two points");
  double best = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i)
    for (std::size_t j = i + 1; j < values.size(); ++j) {
      if (!(d(i, j) > 0.0))
        throw std::invalid_argument("lip_constant: points " + std::to_string(i) + " and " + std::to_string(j) +
                                    " coincide");
      best = std::max(best, std::abs(values[i] - values[j]) / d(i, j));
    }
  return best;
}

double lip_constant(const TabulatedFunction<Point>& f) {
  auto metric = [](const Point& a, const Point& b) { return l1_distance(a, b); };
  return lip_constant(f.values, DistanceMatrix::from_points<Point>(f.points, metric));
}

double lip_constant(const TabulatedFunction<SparsePoint>& f) {
  auto metric = [](const SparsePoint& a, const SparsePoint& b) { return l1_distance(a, b); };
  return lip_constant(f.values, DistanceMatrix::from_points<SparsePoint>(f.points, metric));
}

double vertex_lip_constant(const VertexData& data) {
  const std::size_t n = data.cube().dim();
  const std::uint64_t count = std::uint64_t{1} << n;
  // Vertices differing in a set S of coordinates are at l1 distance R*|S|.
  double best = 0.0;
  for (std::uint64_t a = 0; a < count; ++a)
    for (std::uint64_t b = a + 1; b < count; ++b) {
      const double dist = data.cube().edge() * std::popcount(a ^ b);
      best = std::max(best, std::abs(data.values()[a] - data.values()[b]) / dist);
    }
  return best;
}

AfReport check_af(const VertexData& data, std::span<const Segment> segments, double tol) {
  AfReport report;
  for (std::size_t s = 0; s < segments.size(); ++s) {
    const auto& seg = segments[s];
    if (seg.a.size() != seg.b.size()) throw std::invalid_argument("check_af: segment endpoint dimensions differ");
    std::size_t moving = 0;
    Point mid(seg.a.size());
    for (std::size_t i = 0; i < mid.size(); ++i) {
      mid[i] = 0.5 * (seg.a[i] + seg.b[i]);
      if (seg.a[i] != seg.b[i]) ++moving;
    }
    if (moving > 1) report.all_axis_parallel = false;
    const double dev =
        std::abs(lambda_eval(data, mid) - 0.5 * (lambda_eval(data, seg.a) + lambda_eval(data, seg.b)));
    if (dev > report.worst_deviation) {
      report.worst_deviation = dev;
      report.worst_index = s;
    }
  }
  report.pass = report.worst_deviation <= tol;
  return report;
}

}  // namespace lipfree
