#include <doctest.h>

#include <cmath>

#include "lipfree/freespace.hpp"
#include "lipfree/simplex.hpp"
#include "lipfree/verify/oracles.hpp"

using namespace lipfree;

TEST_CASE("norms of Diracs in l1^2") {
  const Point o{0, 0};
  CHECK(free_norm(MoleculeN::dirac(o, {1, 0})).value == doctest::Approx(1.0).epsilon(1e-12));
  const auto mu = MoleculeN::dirac(o, {1, 0}) - MoleculeN::dirac(o, {0, 1});
  const auto cert = free_norm(mu);
  CHECK(cert.value == doctest::Approx(2.0).epsilon(1e-12));
  // The witness is 1-Lipschitz and attains the value.
  REQUIRE(cert.witness.size() == 3);
  CHECK(cert.witness[0].second == 0.0);
  double paired = 0.0;
  for (std::size_t i = 1; i < cert.witness.size(); ++i) paired += mu.terms()[i - 1].coeff * cert.witness[i].second;
  CHECK(paired == doctest::Approx(cert.value));
}

TEST_CASE("three-term molecule on the line") {
  const MoleculeN mu(Point{0}, {{{1}, 1.0}, {{2}, -2.0}, {{3}, 1.0}});
  CHECK(free_norm(mu).value == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(verify::line_total_variation(std::vector<double>{1, 2, 3}, std::vector<double>{1, -2, 1}) == 2.0);
}

TEST_CASE("empty and cancelling molecules") {
  CHECK(free_norm(zero_molecule(3)).value == 0.0);
  const auto mu = MoleculeL1::dirac(SparsePoint{}, SparsePoint({{2, 1.0}}));
  CHECK((mu - mu).empty());
  CHECK(MoleculeL1::dirac(SparsePoint{}, SparsePoint{}).empty());
}

TEST_CASE("canonical form merges and sorts") {
  const MoleculeN mu(Point{0}, {{{2}, 1.0}, {{1}, 0.5}, {{2}, -1.0}, {{0}, 3.0}});
  REQUIRE(mu.size() == 1);
  CHECK(mu.terms()[0].point == Point{1});
  CHECK(mu.terms()[0].coeff == 0.5);
  CHECK_THROWS_AS(MoleculeN(Point{0}, {{{1}, NAN}}), std::invalid_argument);
}

TEST_CASE("S_n examples") {
  const auto mu = MoleculeL1::dirac(SparsePoint{}, SparsePoint({{1, 0.5}}));
  const auto s1 = s_n_apply(mu, 1);
  REQUIRE(s1.size() == 1);
  CHECK(s1.terms()[0].point == SparsePoint({{1, 1.0}}));
  CHECK(s1.terms()[0].coeff == 0.5);

  const MoleculeL1 grid(SparsePoint{}, {{SparsePoint({{1, 0.5}, {2, -1.0}}), 2.0}, {SparsePoint({{2, 1.5}}), -1.0}});
  CHECK(coefficient_distance(s_n_apply(grid, 2), grid) == 0.0);
  CHECK(s_n_apply(grid, 2).size() == grid.size());
}

TEST_CASE("pairing") {
  const auto f = random_lattice_l1(3, 3);
  const SparsePoint p({{1, 0.7}, {3, -0.2}});
  CHECK(pairing(f, MoleculeL1::dirac(SparsePoint{}, p)) == f(p));
  CHECK(pairing(f, zero_molecule_l1()) == 0.0);
}

TEST_CASE("FDD table for a non-dyadic point") {
  const auto mu = MoleculeL1::dirac(SparsePoint{}, SparsePoint({{1, 1.0 / 3.0}}));
  const auto r = verify_fdd(mu, 12);
  CHECK(r.pass());
  CHECK(r.rows.back().error < 1e-3);
  for (const auto& row : r.rows) CHECK(row.error > 0.0);
}

TEST_CASE("FDD table for a grid-supported molecule") {
  const MoleculeL1 mu(SparsePoint{}, {{SparsePoint({{1, 0.5}, {2, 0.75}}), 1.0}});
  const auto r = verify_fdd(mu, 5);
  CHECK(r.pass());
  // 0.75 lies on V_n from n = 3 on.
  for (const auto& row : r.rows)
    if (row.n >= 3) CHECK(row.error == 0.0);
}

TEST_CASE("empty molecule FDD report") {
  const auto r = verify_fdd(zero_molecule_l1(), 4);
  CHECK(r.pass());
  for (const auto& row : r.rows) {
    CHECK(row.norm_projected == 0.0);
    CHECK(row.error == 0.0);
  }
}

TEST_CASE("finite metric space norms") {
  DistanceMatrix d(3);
  d.set_symmetric(0, 1, 1);
  d.set_symmetric(0, 2, 2);
  d.set_symmetric(1, 2, 1);
  const FinitePointedMetricSpace line({"a", "b", "c"}, d, 0);
  const MoleculeFinite mu(0, {{2, 1.0}, {1, -1.0}});
  CHECK(free_norm(mu, line).value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(free_norm(MoleculeFinite(0, {{5, 1.0}}), line), std::invalid_argument);
}

TEST_CASE("transport oracle agrees with the LP on a hand instance") {
  DistanceMatrix d(4);
  d.set_symmetric(0, 1, 1);
  d.set_symmetric(0, 2, 1);
  d.set_symmetric(0, 3, 2);
  d.set_symmetric(1, 2, 2);
  d.set_symmetric(1, 3, 1);
  d.set_symmetric(2, 3, 1);
  const std::vector<double> a{1.0, -2.0, 0.5};
  const double lp = kr_norm(a, d).value;
  CHECK(lp == doctest::Approx(verify::transport_norm(a, d)).epsilon(1e-12));
}

TEST_CASE("bounded simplex") {
  // max x + y s.t. x + 2y <= 4, 0 <= x <= 3, 0 <= y <= 3.
  BoundedLp lp{2, {1, 1}, {3, 3}, {{1, 2}}, {4}};
  const auto s = solve_bounded_simplex(lp);
  REQUIRE(s.status == LpStatus::optimal);
  CHECK(s.objective == doctest::Approx(3.5));
  CHECK(s.x[0] == doctest::Approx(3));
  CHECK(s.x[1] == doctest::Approx(0.5));
}
