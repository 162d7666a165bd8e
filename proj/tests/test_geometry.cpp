#include <doctest.h>

#include <stdexcept>

#include "lipfree/geometry.hpp"

using namespace lipfree;

TEST_CASE("vertex of a cube") {
  CHECK(vertex(Hypercube({0, 0}, 2), SignVector::from_string("+-")) == Point{1, -1});
  CHECK(vertex(Hypercube({0.5}, 1), SignVector::from_string("-")) == Point{0});
  CHECK(vertex(Hypercube({1, 1, 1}, 4), SignVector::from_string("++-")) == Point{3, 3, -1});
  CHECK_THROWS_AS(vertex(Hypercube({0, 0}, 2), SignVector::from_string("+")), std::invalid_argument);
}

TEST_CASE("all eight vertices of C((1,1,1),4) are at l-inf distance 2") {
  const Hypercube c({1, 1, 1}, 4);
  for (std::uint64_t m = 0; m < 8; ++m) {
    const Point v = vertex(c, SignVector::from_mask(m, 3));
    for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(v[i] - 1.0) == 2.0);
  }
}

TEST_CASE("dyadic grid points") {
  CHECK(grid_point(Point{0}, {SignVector::from_string("+"), {0}, 0}) == Point{0.5});
  CHECK(grid_point(Point{0}, {SignVector::from_string("-"), {1}, 1}) == Point{-0.75});
  CHECK(grid_point(Point{0, 0}, {SignVector::from_string("+-"), {0, 0}, 0}) == Point{0.5, -0.5});
  CHECK_THROWS_AS(grid_point(Point{0, 0}, {SignVector::from_string("+"), {0}, 0}), std::invalid_argument);
}

TEST_CASE("clamp and retraction") {
  CHECK(clamp_scalar(3, 2) == 1);
  CHECK(clamp_scalar(-0.3, 2) == -0.3);
  CHECK(clamp_scalar(-5, 1) == -0.5);
  CHECK(retract(Point{3, 0.2}, 2) == Point{1, 0.2});
  CHECK(retract(Point{0}, 2) == Point{0});
}

TEST_CASE("rho and tau") {
  const SparsePoint x({{1, 1.0}, {2, 2.0}, {3, 3.0}});
  CHECK(rho(x, 2) == Point{1, 2});
  CHECK(rho(SparsePoint{}, 3) == Point{0, 0, 0});
  const SparsePoint t = tau(Point{1, -2});
  CHECK(t == SparsePoint({{1, 1.0}, {2, -2.0}}));
  CHECK(t[3] == 0.0);
  CHECK(tau(Point{0, 0}).is_zero());
}

TEST_CASE("sparse points") {
  const SparsePoint x({{5, -1.0}, {2, 0.5}, {3, 0.0}});
  CHECK(x.nnz() == 2);
  CHECK(x.max_index() == 5);
  CHECK(x.l1_norm() == 1.5);
  CHECK(x.tail_l1(2) == 1.0);
  CHECK(x.tail_l1(5) == 0.0);
  CHECK(l1_distance(x, SparsePoint({{2, 1.0}})) == 1.5);
  CHECK_THROWS_AS(SparsePoint({{0, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(SparsePoint({{1, 1.0}, {1, 2.0}}), std::invalid_argument);
}

TEST_CASE("locate_cube examples") {
  const auto a = locate_cube(Point{0.4}, 1);
  CHECK(a.eps == SignVector::from_string("+"));
  CHECK(a.h == std::vector<std::uint64_t>{0});
  CHECK(a.k == 0);

  const auto b = locate_cube(Point{0.0}, 1);
  CHECK(b.eps == SignVector::from_string("+"));
  CHECK(b.h == std::vector<std::uint64_t>{0});

  const auto c = locate_cube(Point{0.75, -0.25}, 2);
  CHECK(c.eps == SignVector::from_string("+-"));
  CHECK(c.h == std::vector<std::uint64_t>{1, 0});
  CHECK(dyadic_cube(c).contains(Point{0.75, -0.25}));
}

TEST_CASE("locate_cube on the outer face uses the last slab") {
  const auto idx = locate_cube(Point{4.0, -4.0}, 3);
  CHECK(idx.h == std::vector<std::uint64_t>{15, 15});
  CHECK(dyadic_cube(idx).contains(Point{4.0, -4.0}));
}

TEST_CASE("locate_cube rejects points outside the tiled cube") {
  CHECK_THROWS_AS(locate_cube(Point{1.5}, 1), std::out_of_range);
  CHECK_THROWS_AS(locate_cube(Point{0.1}, 0), std::invalid_argument);
  CHECK_THROWS_AS(locate_cube(Point{0.1}, 21), std::invalid_argument);
}

TEST_CASE("level vertex sets") {
  CHECK(enumerate_vertices(1, 1) == std::vector<Point>{{-1}, {0}, {1}});
  const auto v21 = enumerate_vertices(2, 1);
  REQUIRE(v21.size() == 9);
  CHECK(v21.front() == Point{-2});
  CHECK(v21[1] == Point{-1.5});
  CHECK(v21.back() == Point{2});
  CHECK(enumerate_vertices(1, 2).size() == 9);
  CHECK(vertex_count(3, 3) == 33 * 33 * 33);
  CHECK(on_level_grid(Point{0.5, -2}, 2));
  CHECK_FALSE(on_level_grid(Point{0.25}, 2));
  CHECK_FALSE(on_level_grid(Point{2.5}, 2));
}

TEST_CASE("enumeration caps report the cardinality") {
  CHECK_THROWS_AS(vertex_count(20, 16), std::overflow_error);
  try {
    enumerate_vertices(10, 3);
    FAIL("expected length_error");
  } catch (const std::length_error& e) {
    CHECK(std::string(e.what()).find("144116012711149569") != std::string::npos);
  }
}

TEST_CASE("sign vectors") {
  const auto s = SignVector::from_string("+-+");
  CHECK(s.mask() == 0b101);
  CHECK(s.to_string() == "+-+");
  CHECK(SignVector::from_mask(0b10, 2).to_string() == "-+");
  CHECK_THROWS_AS(SignVector::from_string("+0"), std::invalid_argument);
}

TEST_CASE("hypercube validation") {
  CHECK_THROWS_AS(Hypercube({0}, 0), std::invalid_argument);
  CHECK_THROWS_AS(Hypercube({}, 1), std::invalid_argument);
  CHECK(Hypercube({0}, 2).contains(Point{1}));
  CHECK_FALSE(Hypercube({0}, 2).contains(Point{1.0001}));
}
