#include <doctest.h>

#include <string>

#include "lipfree/bap.hpp"
#include "lipfree/verify/random.hpp"

using namespace lipfree;

namespace {

FinitePointedMetricSpace line_space(std::size_t k, double spacing = 1.0) {
  std::vector<Point> pts;
  for (std::size_t i = 0; i < k; ++i) pts.push_back({spacing * static_cast<double>(i)});
  return FinitePointedMetricSpace::from_l1_embedding(pts, 0);
}

FinitePointedMetricSpace uniform_space(std::size_t k) {
  DistanceMatrix d(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j) d.set_symmetric(i, j, 1.0);
  return FinitePointedMetricSpace({}, d, 0);
}

}  // namespace

TEST_CASE("three points on a line") {
  const auto m = line_space(3);
  for (const auto& scheme : {SchemeSpec::parse("shepard-p", 1.0), SchemeSpec::parse("inv-dist")}) {
    const auto part = build_partition(m, {0, 2}, scheme);
    REQUIRE(part.outside() == std::vector<std::size_t>{1});
    CHECK(part.weight(0, 0) == 0.5);
    CHECK(part.weight(0, 1) == 0.5);

    const SpaceFunction on_x({0, 2}, {0.0, 2.0}, 0);
    const auto e = extend(on_x, part, m);
    CHECK(e.values == std::vector<double>{0.0, 1.0, 2.0});
    CHECK(gentleness(part, m).k_hat == 1.0);
  }
}

TEST_CASE("extension edge cases") {
  const auto m = line_space(4);
  const auto f = make_space_function(m, {0, 1, -1, 2});
  CHECK(bap_operator(f, {0, 1, 2, 3}, m, {}).values == f.values);
  for (double v : bap_operator(f, {0}, m, {}).values) CHECK(v == 0.0);

  const auto vac = build_partition(m, {0, 1, 2, 3}, {});
  CHECK(vac.vacuous());
  CHECK(gentleness(vac, m).k_hat == 0.0);

  const SpaceFunction zero({0, 3}, {0.0, 0.0}, 0);
  for (double v : extend(zero, build_partition(m, {0, 3}, {}), m).values) CHECK(v == 0.0);

  CHECK_THROWS_AS(build_partition(m, {1, 2}, {}), std::invalid_argument);
  CHECK_THROWS_AS(restrict_to(f, {1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(build_partition(m, {0, 0}, {}), std::invalid_argument);
}

TEST_CASE("shepard weights are scale invariant") {
  verify::Rng rng(5);
  const auto m = verify::random_l1_space(rng, 12, 2, 3.0);
  std::vector<Point> scaled = *m.embedding();
  for (auto& p : scaled)
    for (auto& c : p) c *= 10.0;
  const auto m10 = FinitePointedMetricSpace::from_l1_embedding(scaled, 0);
  const std::vector<std::size_t> x{0, 3, 7, 9};
  for (double p : {1.0, 2.0}) {
    const SchemeSpec s{WeightScheme::shepard, p};
    const auto a = build_partition(m, x, s), b = build_partition(m10, x, s);
    for (std::size_t o = 0; o < a.outside().size(); ++o)
      for (std::size_t w = 0; w < x.size(); ++w) CHECK(a.weight(o, w) == doctest::Approx(b.weight(o, w)).epsilon(1e-12));
    CHECK(gentleness(a, m).k_hat == doctest::Approx(gentleness(b, m10).k_hat).epsilon(1e-12));
  }
}

TEST_CASE("doubling estimate") {
  CHECK(doubling_estimate(line_space(1)) == 1);
  CHECK(doubling_estimate(uniform_space(5)) == 5);
  for (std::size_t k = 2; k <= 12; ++k) CHECK(doubling_estimate(line_space(k, 0.5)) <= 3);
}

TEST_CASE("farthest point order and covering radius") {
  const auto m = line_space(5);
  CHECK(farthest_point_order(m) == std::vector<std::size_t>{0, 4, 2, 1, 3});
  CHECK(covering_radius(m, {0, 4}) == 2.0);
  CHECK(covering_radius(m, {0, 1, 2, 3, 4}) == 0.0);
}

TEST_CASE("chain on 20 random points in the plane ends exactly") {
  verify::Rng rng(11);
  const auto m = verify::random_l1_space(rng, 20, 2, 4.0);
  std::vector<double> v(20);
  for (std::size_t i = 1; i < 20; ++i) v[i] = (*m.embedding())[i][0] - (*m.embedding())[0][0];
  const auto f = make_space_function(m, v);
  const auto rows = bap_chain(f, m, {});
  REQUIRE(rows.size() == 19);
  CHECK(rows.back().size == 20);
  CHECK(rows.back().max_error == 0.0);
  for (const auto& r : rows) {
    CHECK(r.fixes_subset);
    CHECK(r.normalized);
  }
}

TEST_CASE("uniform space reports a finite gentleness constant") {
  const auto m = uniform_space(5);
  const auto f = make_space_function(m, {0, 1, 0.5, -1, 0.25});
  for (const auto& r : bap_chain(f, m, SchemeSpec::parse("shepard-p", 2.0))) CHECK(std::isfinite(r.k_hat));
}

TEST_CASE("scheme ids") {
  CHECK(SchemeSpec::parse("inv-dist").id() == "inv-dist");
  CHECK(SchemeSpec::parse("shepard-p", 2.0).id() == "shepard-2");
  CHECK(SchemeSpec::parse("shepard-1.5").p == 1.5);
  CHECK_THROWS_AS(SchemeSpec::parse("shepard-p", 0.0), std::invalid_argument);
  CHECK_THROWS_AS(SchemeSpec::parse("gaussian"), std::invalid_argument);
}

TEST_CASE("metric validation names the violating triple") {
  DistanceMatrix d(3);
  d.set_symmetric(0, 1, 1);
  d.set_symmetric(1, 2, 1);
  d.set_symmetric(0, 2, 3);
  try {
    FinitePointedMetricSpace({}, d, 0);
    FAIL("expected MetricError");
  } catch (const MetricError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("(0, 1, 2)") != std::string::npos);
  }
  DistanceMatrix asym(2);
  asym(0, 1) = 1;
  asym(1, 0) = 2;
  CHECK_THROWS_AS(FinitePointedMetricSpace({}, asym, 0), MetricError);
  DistanceMatrix zero(2);
  CHECK_THROWS_AS(FinitePointedMetricSpace({}, zero, 0), MetricError);
  CHECK_THROWS_AS(FinitePointedMetricSpace({}, DistanceMatrix(2), 5), std::invalid_argument);
}
