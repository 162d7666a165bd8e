#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "lipfree/fdd.hpp"

using namespace lipfree;

namespace {

LipFunctionN on_line(double (*g)(double)) {
  return {[g](const Point& x) { return g(x[0]); }, std::nullopt};
}

}  // namespace

TEST_CASE("P_n examples on the line") {
  const auto id = on_line([](double t) { return t; });
  CHECK(p_n(id, Point{0.4}, 1) == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(p_n(id, Point{3}, 1) == 1.0);
  const auto abs = on_line([](double t) { return std::abs(t); });
  CHECK(p_n(abs, Point{-0.5}, 1) == 0.5);
  CHECK_THROWS_AS(p_n(id, Point{0.1, 0.2}, 1), std::invalid_argument);
}

TEST_CASE("Q_n on l1") {
  const auto x1 = identity_coordinate_l1(1);
  const SparsePoint x({{1, 0.4}, {2, 7.0}, {3, -2.0}});
  CHECK(q_n(x1, x, 1) == doctest::Approx(0.4).epsilon(1e-15));

  const auto f = random_lattice_l1(7, 4);
  for (int n = 1; n <= 6; ++n) CHECK(q_n(f, SparsePoint{}, n) == 0.0);

  const LipFunctionL1 sum12{[](const SparsePoint& p) { return p[1] + p[2]; }, 1.0};
  CHECK(q_n(sum12, SparsePoint({{1, 0.25}, {2, 0.25}}), 2) == 0.5);
}

TEST_CASE("Q_n on l1^N") {
  CHECK(q_n(l1_norm_function(2), Point{0.25, -0.25}, 2) == 0.5);
  const LipFunctionN square{[](const Point& p) { return p[0] * p[0]; }, std::nullopt};
  CHECK(q_n(square, Point{0.5}, 1) == 0.5);
  const auto f = random_lattice(3, 1);
  CHECK(q_n(f, Point{0.0}, 1) == 0.0);
  CHECK_THROWS_AS(q_n_finite(l1_norm_function(17), Point(17, 0.0), 1), std::invalid_argument);
}

TEST_CASE("commuting report") {
  const auto f = l1_norm_function(2);
  std::vector<Point> samples;
  for (int i = 0; i < 100; ++i) samples.push_back({std::sin(i * 1.3) * 2.5, std::cos(i * 0.7) * 2.5});
  CHECK(verify_commuting<Point>(f, 2, 2, samples).max_deviation == 0.0);
  const auto a = verify_commuting<Point>(f, 1, 3, samples);
  const auto b = verify_commuting<Point>(f, 3, 1, samples);
  CHECK(a.pass);
  CHECK(b.pass);
  CHECK(a.max_deviation <= 1e-10);
}

TEST_CASE("convergence bound examples") {
  const auto r = convergence_bound(identity_coordinate_l1(1), SparsePoint({{1, 0.3}}), 4);
  CHECK(r.error <= 1e-15);
  CHECK(r.bound == 1.0);
  CHECK(r.within_bound);

  const int n = 3;
  const auto tail = convergence_bound(identity_coordinate_l1(n + 1), SparsePoint({{n + 1, 1.0}}), n);
  CHECK(tail.error == 1.0);
  CHECK(tail.bound >= 2.0);
  CHECK(tail.within_bound);

  // The bound shrinks to 0 once n passes the support.
  const SparsePoint x({{1, 0.3}, {2, -0.1}});
  double prev = convergence_bound_value(1, x.tail_l1(3), 3, 3);
  for (int m = 4; m <= 20; ++m) {
    const double b = convergence_bound_value(1, x.tail_l1(m), m, m);
    CHECK(b < prev);
    prev = b;
  }
  CHECK(prev < 1e-4);

  const LipFunctionL1 no_lip{[](const SparsePoint&) { return 0.0; }, std::nullopt};
  CHECK_THROWS_AS(convergence_bound(no_lip, x, 2), std::invalid_argument);
}

TEST_CASE("project keeps the function alive") {
  LipFunctionN q;
  {
    const auto f = random_lattice(11, 2);
    q = project(f, 3);
  }
  const Point x{0.3, -0.7};
  CHECK(q(x) == q_n(random_lattice(11, 2), x, 3));
  CHECK(q.declared_lip == 1.0);
}

TEST_CASE("built-in functions") {
  CHECK(builtin_function_l1("max-coordinate", 0, 0)(SparsePoint({{3, -1.0}})) == 0.0);
  CHECK(builtin_function("max-coordinate", 2, 0)(Point{-1, -2}) == -1.0);
  CHECK(builtin_function("l1-norm", 2, 0)(Point{-1, 2}) == 3.0);
  CHECK(builtin_function("random-lattice", 3, 5)(Point{0, 0, 0}) == 0.0);
  CHECK_THROWS_AS(builtin_function("nope", 2, 0), std::invalid_argument);
  CHECK_THROWS_AS(identity_coordinate(3, 2), std::invalid_argument);
}

TEST_CASE("McShane extension agrees with the table") {
  const TabulatedFunction<Point> t({{0, 0}, {1, 0}, {0, 2}}, {0, 1, -1}, 0);
  const auto e = mcshane_extension(t);
  CHECK(e.declared_lip == 1.0);
  for (std::size_t i = 0; i < t.points.size(); ++i) CHECK(e(t.points[i]) == t.values[i]);
}

TEST_CASE("level stencil") {
  const auto s = level_stencil(Point{0.5, 0.0}, 1);
  double total = 0.0;
  for (const auto& c : s) total += c.weight;
  CHECK(total == 1.0);
  CHECK(s.size() == 2);
  CHECK(retraction_active(Point{1.5}, 1));
  CHECK_FALSE(retraction_active(Point{1.0}, 1));
  CHECK(retraction_active(SparsePoint({{1, 1.5}}), 1));
  CHECK_FALSE(retraction_active(SparsePoint({{2, 9.0}}), 1));
}
