#include "lipfree/verify/suites.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "lipfree/bap.hpp"
#include "lipfree/fdd.hpp"
#include "lipfree/freespace.hpp"
#include "lipfree/interp.hpp"
#include "lipfree/io.hpp"
#include "lipfree/verify/oracles.hpp"
#include "lipfree/verify/random.hpp"

namespace lipfree::verify {

bool VerifyReport::pass() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.pass; });
}

namespace {

// Each suite gets its own stream, so adding a suite never perturbs another.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view name) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : name) h = (h ^ static_cast<unsigned char>(c)) * 0x100000001b3ULL;
  std::uint64_t z = seed + h + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Tracks the worst observed quantity against a limit.
class Tally {
 public:
  explicit Tally(std::string name) { result_.name = std::move(name); }

  // value is a deviation; the check fails once it exceeds limit.
  void observe(double value, double limit, const std::string& where) {
    if (value > result_.worst_case || (std::isnan(value) && !std::isnan(result_.worst_case))) {
      result_.worst_case = value;
      worst_at_ = where;
    }
    if (!(value <= limit)) fail(where + ": " + io::format_double(value) + " > " + io::format_double(limit));
  }

  void require(bool ok, const std::string& what) {
    if (!ok) fail(what);
  }

  SuiteResult finish() {
    if (result_.pass && !worst_at_.empty()) result_.detail = "worst at " + worst_at_;
    return result_;
  }

 private:
  void fail(const std::string& what) {
    if (result_.pass) result_.detail = what;
    result_.pass = false;
  }

  SuiteResult result_;
  std::string worst_at_;
};

std::string describe(const Point& x) { return io::to_json(x).dump(); }
std::string describe(const SparsePoint& x) { return io::to_json(x).dump(); }

// ---- geometry --------------------------------------------------------------

SuiteResult retract_suite(const VerifyOptions& opt) {
  Tally t("geometry.retract");
  Rng rng(derive_seed(opt.seed, "geometry.retract"));
  for (std::size_t dim = 1; dim <= 4; ++dim)
    for (int n = 1; n <= 4; ++n) {
      const double R = std::ldexp(1.0, n);
      for (int s = 0; s < 625; ++s) {
        const Point x = random_point(rng, dim, -1.5 * R, 1.5 * R);
        const Point y = random_point(rng, dim, -1.5 * R, 1.5 * R);
        const Point px = retract(x, R), py = retract(y, R);
        t.require(retract(px, R) == px, "retract not idempotent at " + describe(x));
        t.observe(l1_distance(px, py) - l1_distance(x, y), 0.0, "pair " + describe(x) + " " + describe(y));
      }
    }
  return t.finish();
}

SuiteResult locate_suite(const VerifyOptions& opt) {
  Tally t("geometry.locate-cube");
  Rng rng(derive_seed(opt.seed, "geometry.locate-cube"));
  for (std::size_t dim = 1; dim <= 3; ++dim)
    for (int n = 1; n <= 3; ++n) {
      const double half = level_half_extent(n);
      for (int s = 0; s < 12; ++s) {
        // Generic point: exactly one cube contains it.
        const Point u = random_point(rng, dim, -half, half);
        const auto found = containing_cubes(u, n);
        t.require(found.size() == 1, "generic point " + describe(u) + " lies in " + std::to_string(found.size()) +
                                         " cubes");
        if (found.size() == 1) t.require(locate_cube(u, n) == found.front(), "locate_cube disagrees at " + describe(u));

        // Grid point: the located cube must be one of the containing cubes.
        Point g(dim);
        for (auto& c : g) c = rng.dyadic(n - 1, half);
        const auto idx = locate_cube(g, n);
        const auto all = containing_cubes(g, n);
        t.require(std::find(all.begin(), all.end(), idx) != all.end(), "grid point " + describe(g) + " mislocated");
      }
    }
  return t.finish();
}

SuiteResult vertex_count_suite(const VerifyOptions&) {
  Tally t("geometry.vertex-count");
  for (std::size_t dim = 1; dim <= 3; ++dim)
    for (int n = 1; n <= 3; ++n) {
      const auto listed = enumerate_vertices(n, dim);
      const auto brute = vertex_union(n, dim);
      const std::string at = "n=" + std::to_string(n) + " N=" + std::to_string(dim);
      t.require(listed.size() == vertex_count(n, dim), "enumerate_vertices size differs from formula at " + at);
      t.require(listed == brute, "enumerate_vertices differs from the union of cube vertices at " + at);
      for (const auto& v : listed) t.require(on_level_grid(v, n), "vertex off the grid at " + at);
    }
  return t.finish();
}

SuiteResult grid_exact_suite(const VerifyOptions& opt) {
  Tally t("geometry.grid-exact");
  Rng rng(derive_seed(opt.seed, "geometry.grid-exact"));
  for (int s = 0; s < 2000; ++s) {
    const std::size_t dim = 1 + rng.index(4);
    const int k = static_cast<int>(rng.integer(0, kMaxLevel - 1));
    const std::uint64_t slabs = std::uint64_t{1} << (2 * k);
    DyadicCubeIndex idx{SignVector::from_mask(rng.next(), dim), std::vector<std::uint64_t>(dim), k};
    for (auto& h : idx.h) h = rng.next() % slabs;
    const Point p = grid_point(Point(dim, 0.0), idx);
    // Exact iff scaling by 2^{k+1} yields the odd integer eps (2h + 1).
    for (std::size_t i = 0; i < dim; ++i) {
      const double scaled = std::ldexp(p[i], k + 1);
      const double expected = idx.eps[i] * (2.0 * static_cast<double>(idx.h[i]) + 1.0);
      t.require(scaled == expected, "grid_point inexact at k=" + std::to_string(k));
    }
    const Hypercube c = dyadic_cube(idx);
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << dim); ++m) {
      const Point v = vertex(c, SignVector::from_mask(m, dim));
      for (double x : v) t.require(std::ldexp(x, k) == std::trunc(std::ldexp(x, k)), "cube vertex off the 2^-k grid");
    }
    const SparsePoint sp = tau(p);
    t.require(rho(sp, dim) == p, "rho(tau(x)) != x");
  }
  return t.finish();
}

// ---- interp ----------------------------------------------------------------

SuiteResult node_suite(const VerifyOptions& opt) {
  Tally t("interp.node-reproduction");
  Rng rng(derive_seed(opt.seed, "interp.node-reproduction"));
  for (std::size_t dim = 1; dim <= 6; ++dim)
    for (int s = 0; s < 20; ++s) {
      const auto data = random_vertex_data(rng, dim);
      for (std::uint64_t m = 0; m < data.values().size(); ++m) {
        const auto delta = SignVector::from_mask(m, dim);
        const double got = lambda_eval(data, vertex(data.cube(), delta));
        t.observe(std::abs(got - data.values()[m]), 0.0, "vertex " + delta.to_string());
      }
    }
  return t.finish();
}

SuiteResult weight_suite(const VerifyOptions& opt) {
  Tally t("interp.weight-simplex");
  Rng rng(derive_seed(opt.seed, "interp.weight-simplex"));
  const WeightFunction weights = opt.weight_function ? opt.weight_function : WeightFunction(interpolation_weights);
  for (std::size_t dim = 1; dim <= 5; ++dim)
    for (int s = 0; s < 200; ++s) {
      const Hypercube cube = random_cube(rng, dim);
      const Point x = random_point_in(rng, cube);
      const auto w = weights(cube, x);
      t.require(w.size() == (std::size_t{1} << dim), "wrong number of weights");
      if (w.size() != (std::size_t{1} << dim)) continue;
      double sum = 0.0;
      for (std::uint64_t m = 0; m < w.size(); ++m) {
        t.require(w[m] >= 0.0, "negative weight");
        sum += w[m];
        double product = 1.0;
        for (std::size_t i = 0; i < dim; ++i) {
          const double ti = (x[i] - cube.center()[i] + cube.edge() / 2.0) / cube.edge();
          product *= ((m >> i) & 1U) ? ti : 1.0 - ti;
        }
        t.observe(std::abs(w[m] - product), 1e-14, "weight product, N=" + std::to_string(dim));
      }
      t.observe(std::abs(sum - 1.0), 1e-12, "weight sum, N=" + std::to_string(dim));
    }
  return t.finish();
}

SuiteResult recursion_suite(const VerifyOptions& opt) {
  Tally t("interp.recursion-oracle");
  Rng rng(derive_seed(opt.seed, "interp.recursion-oracle"));
  for (std::size_t dim = 1; dim <= 5; ++dim)
    for (int s = 0; s < 200; ++s) {
      const auto data = random_vertex_data(rng, dim);
      const Point x = random_point_in(rng, data.cube());
      t.observe(std::abs(lambda_eval(data, x) - lambda_recursive(data, x)), 1e-12, describe(x));
    }
  return t.finish();
}

SuiteResult lambda_lip_suite(const VerifyOptions& opt) {
  Tally t("interp.lambda-lipschitz");
  Rng rng(derive_seed(opt.seed, "interp.lambda-lipschitz"));
  for (std::size_t dim = 1; dim <= 4; ++dim)
    for (int s = 0; s < 50; ++s) {
      const auto data = random_vertex_data(rng, dim);
      const double lv = vertex_lip_constant(data);
      double empirical = 0.0;
      for (int p = 0; p < 10000; ++p) {
        const Point x = random_point_in(rng, data.cube());
        Point y = random_point_in(rng, data.cube());
        if (p % 2 == 1) {
          // Axis moves are where the constant is approached.
          const std::size_t keep = rng.index(dim);
          for (std::size_t i = 0; i < dim; ++i)
            if (i != keep) y[i] = x[i];
        }
        const double d = l1_distance(x, y);
        // Closer pairs measure cancellation error, not the constant.
        if (d < 1e-6 * data.cube().edge()) continue;
        const double q = std::abs(lambda_eval(data, x) - lambda_eval(data, y)) / d;
        empirical = std::max(empirical, q);
        t.observe(q - lv, 1e-9 * std::max(1.0, lv), "N=" + std::to_string(dim) + " pair ratio over L_V");
      }
      // Attained at vertex pairs.
      double at_vertices = 0.0;
      const std::uint64_t count = std::uint64_t{1} << dim;
      for (std::uint64_t a = 0; a < count; ++a)
        for (std::uint64_t b = a + 1; b < count; ++b) {
          const Point va = vertex(data.cube(), SignVector::from_mask(a, dim));
          const Point vb = vertex(data.cube(), SignVector::from_mask(b, dim));
          at_vertices = std::max(at_vertices, std::abs(lambda_eval(data, va) - lambda_eval(data, vb)) / l1_distance(va, vb));
        }
      t.observe(std::abs(std::max(empirical, at_vertices) - lv), 1e-9 * std::max(1.0, lv),
                "N=" + std::to_string(dim) + " empirical vs vertex constant");
    }
  return t.finish();
}

SuiteResult lambda_linear_suite(const VerifyOptions& opt) {
  Tally t("interp.linearity");
  Rng rng(derive_seed(opt.seed, "interp.linearity"));
  for (std::size_t dim = 1; dim <= 5; ++dim)
    for (int s = 0; s < 100; ++s) {
      const auto f = random_vertex_data(rng, dim);
      std::vector<double> gv(f.values().size());
      for (auto& v : gv) v = rng.uniform(-1.0, 1.0);
      const VertexData g(f.cube(), gv);
      const double a = rng.uniform(-3.0, 3.0), b = rng.uniform(-3.0, 3.0);
      std::vector<double> hv(gv.size());
      for (std::size_t m = 0; m < hv.size(); ++m) hv[m] = a * f.values()[m] + b * gv[m];
      const VertexData h(f.cube(), hv);
      const Point x = random_point_in(rng, f.cube());
      t.observe(std::abs(lambda_eval(h, x) - (a * lambda_eval(f, x) + b * lambda_eval(g, x))), 1e-12, describe(x));
    }
  return t.finish();
}

SuiteResult af_suite(const VerifyOptions& opt) {
  Tally t("interp.af-property");
  Rng rng(derive_seed(opt.seed, "interp.af-property"));
  for (std::size_t dim = 1; dim <= 4; ++dim)
    for (int s = 0; s < 50; ++s) {
      const auto data = random_vertex_data(rng, dim);
      std::vector<Segment> segs;
      for (int k = 0; k < 20; ++k) {
        Point a = random_point_in(rng, data.cube());
        Point b = a;
        const std::size_t axis = rng.index(dim);
        const double half = data.cube().edge() / 2.0;
        b[axis] = data.cube().center()[axis] + rng.uniform(-half, half);
        // Also test off-midpoint parameters directly.
        const double lam = rng.uniform(0.0, 1.0);
        Point m = a;
        m[axis] = (1.0 - lam) * a[axis] + lam * b[axis];
        const double affine = (1.0 - lam) * lambda_eval(data, a) + lam * lambda_eval(data, b);
        t.observe(std::abs(lambda_eval(data, m) - affine), 1e-10, "axis segment, N=" + std::to_string(dim));
        segs.push_back({std::move(a), std::move(b)});
      }
      const auto report = check_af(data, segs);
      t.require(report.pass && report.all_axis_parallel, "check_af rejected axis-parallel segments");
    }
  // Negative control: the diagonal of a saddle is not affine.
  const Hypercube unit(Point{0.5, 0.5}, 1.0);
  const auto saddle = VertexData::sample(unit, [](const Point& p) { return p[0] * p[1]; });
  const std::vector<Segment> diag{{Point{0.0, 0.0}, Point{1.0, 1.0}}};
  const auto control = check_af(saddle, diag);
  t.require(!control.pass && !control.all_axis_parallel, "diagonal negative control was not detected");
  return t.finish();
}

// ---- fdd -------------------------------------------------------------------

// max over stored coordinates of distance to the level-n grid; vanishes on
// tau_n(V_n) and is 1-Lipschitz in l1.
double grid_gap(std::span<const double> x, int n) {
  const double s = level_cell_edge(n);
  double worst = 0.0;
  for (double v : x) worst += std::abs(v - s * std::round(v / s));
  return worst;
}

double grid_gap(const SparsePoint& x, int n) {
  const double s = level_cell_edge(n);
  double worst = 0.0;
  for (const auto& [i, v] : x.entries())
    worst += (i <= static_cast<std::size_t>(n)) ? std::abs(v - s * std::round(v / s)) : std::abs(v);
  return worst;
}

SuiteResult contractive_suite(const VerifyOptions& opt) {
  Tally t("fdd.contractive");
  Rng rng(derive_seed(opt.seed, "fdd.contractive"));
  for (int n = 1; n <= 4; ++n) {
    const double R = std::ldexp(1.0, n);
    for (std::size_t dim = 1; dim <= 3; ++dim) {
      const auto f = random_lattice(rng.next(), dim);
      for (int s = 0; s < 800; ++s) {
        const Point x = random_point(rng, dim, -R, R);
        const Point y = random_point(rng, dim, -R, R);
        const double d = l1_distance(x, y);
        t.observe(std::abs(q_n(f, x, n) - q_n(f, y, n)) - d * (1.0 + 1e-9), 1e-12, "R^N pair");
      }
    }
    const auto g = random_lattice_l1(rng.next(), 6);
    for (int s = 0; s < 800; ++s) {
      const SparsePoint x = random_sparse_point(rng, 6, 3, R);
      const SparsePoint y = random_sparse_point(rng, 6, 3, R);
      t.observe(std::abs(q_n(g, x, n) - q_n(g, y, n)) - l1_distance(x, y) * (1.0 + 1e-9), 1e-12, "l1 pair");
    }
  }
  return t.finish();
}

SuiteResult finite_rank_suite(const VerifyOptions& opt) {
  Tally t("fdd.finite-rank");
  Rng rng(derive_seed(opt.seed, "fdd.finite-rank"));
  for (int inst = 0; inst < 20; ++inst) {
    const int n = 1 + static_cast<int>(rng.index(5));
    const double bump = rng.uniform(0.5, 3.0);
    const std::size_t dim = 1 + rng.index(3);
    const auto f = random_lattice(rng.next(), dim);
    const LipFunctionN g{[f, bump, n](const Point& x) { return f(x) + bump * grid_gap(x, n); }, std::nullopt};
    const auto fl = random_lattice_l1(rng.next(), 4);
    const LipFunctionL1 gl{[fl, bump, n](const SparsePoint& x) { return fl(x) + bump * grid_gap(x, n); }, std::nullopt};
    for (int s = 0; s < 50; ++s) {
      const Point x = random_point(rng, dim, -3.0, 3.0);
      t.require(q_n(f, x, n) == q_n(g, x, n), "Q_n f changed off the grid at " + describe(x));
      const SparsePoint y = random_sparse_point(rng, 7, 3, 3.0);
      t.require(q_n(fl, y, n) == q_n(gl, y, n), "Q_n f changed off the grid at " + describe(y));
    }
    // S_n support and placement. In l1 mode with points of l1^N the stencil
    // has at most 2^min(n,N) corners; in R^N mode it can use all 2^N.
    const std::size_t span_n = 1 + rng.index(4);
    const auto mu = random_molecule_l1(rng, 6, span_n, span_n, 3.0);
    const auto sn = s_n_apply(mu, n);
    const std::size_t cap = (std::size_t{1} << std::min<std::size_t>(static_cast<std::size_t>(n), span_n)) * mu.size();
    t.require(sn.size() <= cap, "S_n support " + std::to_string(sn.size()) + " exceeds " + std::to_string(cap));
    for (const auto& term : sn.terms())
      t.require(term.point.max_index() <= static_cast<std::size_t>(n) &&
                    on_level_grid(rho(term.point, static_cast<std::size_t>(n)), n),
                "S_n output point outside tau_n(V_n)");
    const auto mun = random_molecule_n(rng, dim, 6, 3.0);
    const auto snn = s_n_apply(mun, n);
    t.require(snn.size() <= (std::size_t{1} << dim) * mun.size(), "S_n support exceeds 2^N times input support");
    for (const auto& term : snn.terms()) t.require(on_level_grid(term.point, n), "S_n output point outside V_n");
  }
  return t.finish();
}

SuiteResult commuting_suite(const VerifyOptions& opt) {
  Tally t("fdd.commuting");
  Rng rng(derive_seed(opt.seed, "fdd.commuting"));
  std::vector<SparsePoint> l1_samples;
  for (int s = 0; s < 100; ++s) l1_samples.push_back(random_sparse_point(rng, 7, 3, 3.0));
  const auto fl = random_lattice_l1(rng.next(), 5);
  std::vector<std::vector<Point>> samples(4);
  std::vector<LipFunctionN> fs(4);
  for (std::size_t dim = 1; dim <= 3; ++dim) {
    for (int s = 0; s < 100; ++s) samples[dim].push_back(random_point(rng, dim, -3.0, 3.0));
    fs[dim] = random_lattice(rng.next(), dim);
  }
  for (int m = 1; m <= 5; ++m)
    for (int n = 1; n <= 5; ++n) {
      const std::string at = "m=" + std::to_string(m) + " n=" + std::to_string(n);
      for (std::size_t dim = 1; dim <= 3; ++dim) {
        const auto r = verify_commuting<Point>(fs[dim], m, n, samples[dim]);
        t.observe(r.max_deviation, 1e-10, at + " N=" + std::to_string(dim));
      }
      const auto r = verify_commuting<SparsePoint>(fl, m, n, l1_samples);
      t.observe(r.max_deviation, 1e-10, at + " l1");
    }
  return t.finish();
}

SuiteResult q_linear_suite(const VerifyOptions& opt) {
  Tally t("fdd.linearity");
  Rng rng(derive_seed(opt.seed, "fdd.linearity"));
  for (int s = 0; s < 200; ++s) {
    const int n = 1 + static_cast<int>(rng.index(5));
    const double a = rng.uniform(-2.0, 2.0), b = rng.uniform(-2.0, 2.0);
    const auto f = random_lattice_l1(rng.next(), 4), g = random_lattice_l1(rng.next(), 4);
    const LipFunctionL1 h{[=](const SparsePoint& x) { return a * f(x) + b * g(x); }, std::nullopt};
    const SparsePoint x = random_sparse_point(rng, 6, 3, 3.0);
    t.observe(std::abs(q_n(h, x, n) - (a * q_n(f, x, n) + b * q_n(g, x, n))), 1e-12, "l1 " + describe(x));

    const std::size_t dim = 1 + rng.index(3);
    const auto fn = random_lattice(rng.next(), dim), gn = random_lattice(rng.next(), dim);
    const LipFunctionN hn{[=](const Point& y) { return a * fn(y) + b * gn(y); }, std::nullopt};
    const Point y = random_point(rng, dim, -3.0, 3.0);
    t.observe(std::abs(q_n(hn, y, n) - (a * q_n(fn, y, n) + b * q_n(gn, y, n))), 1e-12, "R^N " + describe(y));
  }
  return t.finish();
}

SuiteResult convergence_suite(const VerifyOptions& opt) {
  Tally t("fdd.convergence-bound");
  Rng rng(derive_seed(opt.seed, "fdd.convergence-bound"));
  for (int s = 0; s < 50; ++s) {
    const int n = 1 + static_cast<int>(rng.index(8));
    const double lip = rng.uniform(0.5, 2.0);
    const auto f = random_lattice_l1(rng.next(), 10, 16, lip);
    const SparsePoint x = random_sparse_point(rng, 12, 4, std::min(level_half_extent(n), 3.0));
    const auto r = convergence_bound(f, x, n);
    t.require(!r.retraction_active, "sample needed retraction");
    t.observe(r.error - r.bound, 1e-9, "l1 n=" + std::to_string(n) + " at " + describe(x));

    const std::size_t dim = 1 + rng.index(3);
    const auto fn = random_lattice(rng.next(), dim, 16, lip);
    const Point y = random_point(rng, dim, -level_half_extent(n), level_half_extent(n));
    const auto rn = convergence_bound(fn, y, n);
    t.observe(rn.error - rn.bound, 1e-9, "R^N n=" + std::to_string(n) + " at " + describe(y));
  }
  return t.finish();
}

SuiteResult mode_consistency_suite(const VerifyOptions& opt) {
  Tally t("fdd.mode-consistency");
  Rng rng(derive_seed(opt.seed, "fdd.mode-consistency"));
  for (std::size_t dim = 1; dim <= 3; ++dim)
    for (int n = static_cast<int>(dim); n <= 5; ++n) {
      const std::uint64_t seed = rng.next();
      const auto fn = random_lattice(seed, dim);
      const auto fl = random_lattice_l1(seed, dim);
      for (int s = 0; s < 40; ++s) {
        const Point x = random_point(rng, dim, -5.0, 5.0);
        t.observe(std::abs(q_n(fn, x, n) - q_n(fl, tau(x), n)), 1e-12, "n=" + std::to_string(n) + " " + describe(x));
      }
    }
  return t.finish();
}

SuiteResult p_af_suite(const VerifyOptions& opt) {
  Tally t("fdd.af-finer-cubes");
  Rng rng(derive_seed(opt.seed, "fdd.af-finer-cubes"));
  for (int n = 1; n <= 3; ++n) {
    const auto g = random_lattice(rng.next(), static_cast<std::size_t>(n));
    for (int m = n + 1; m <= n + 2; ++m) {
      const std::uint64_t slabs = std::uint64_t{1} << (2 * m - 2);
      const std::uint64_t boundary = std::uint64_t{1} << (n + m - 2);  // slab index at 2^{n-1}
      for (int s = 0; s < 60; ++s) {
        // Level-m cube touching or outside the boundary of C(0^n, 2^n).
        DyadicCubeIndex idx{SignVector::from_mask(rng.next(), static_cast<std::size_t>(n)),
                            std::vector<std::uint64_t>(static_cast<std::size_t>(n)), m - 1};
        for (auto& h : idx.h) h = rng.next() % slabs;
        const std::size_t pin = rng.index(static_cast<std::size_t>(n));
        idx.h[pin] = boundary - 1 + rng.index(2);
        const Hypercube cube = dyadic_cube(idx);
        for (int k = 0; k < 8; ++k) {
          const Point a = random_point_in(rng, cube);
          Point b = a;
          const std::size_t axis = rng.index(static_cast<std::size_t>(n));
          b[axis] = cube.center()[axis] + rng.uniform(-cube.edge() / 2.0, cube.edge() / 2.0);
          const double lam = rng.uniform(0.0, 1.0);
          Point c = a;
          c[axis] = (1.0 - lam) * a[axis] + lam * b[axis];
          const double affine = (1.0 - lam) * p_n(g, a, n) + lam * p_n(g, b, n);
          t.observe(std::abs(p_n(g, c, n) - affine), 1e-10, "n=" + std::to_string(n) + " m=" + std::to_string(m));
        }
      }
    }
  }
  return t.finish();
}

// ---- freespace -------------------------------------------------------------

SuiteResult norm_axioms_suite(const VerifyOptions& opt) {
  Tally t("freespace.norm-axioms");
  Rng rng(derive_seed(opt.seed, "freespace.norm-axioms"));
  for (int s = 0; s < 40; ++s) {
    const auto mu = random_molecule_l1(rng, 5, 5, 3, 3.0);
    const auto nu = random_molecule_l1(rng, 5, 5, 3, 3.0);
    const double a = rng.uniform(-3.0, 3.0);
    const double nm = free_norm(mu).value, nn = free_norm(nu).value;
    t.observe(std::abs(free_norm(a * mu).value - std::abs(a) * nm), 1e-9 * std::max(1.0, nm), "homogeneity");
    t.observe(free_norm(mu + nu).value - (nm + nn), 1e-9 * std::max(1.0, nm + nn), "triangle inequality");
    t.require(nm > 0.0, "nonzero molecule has zero norm");
    const auto zero = mu - mu;
    t.require(zero.empty() && free_norm(zero).value == 0.0, "mu - mu is not the zero molecule");

    const std::size_t dim = 1 + rng.index(3);
    const auto p = random_molecule_n(rng, dim, 5, 3.0);
    const auto q = random_molecule_n(rng, dim, 5, 3.0);
    const double np = free_norm(p).value, nq = free_norm(q).value;
    t.observe(std::abs(free_norm(a * p).value - std::abs(a) * np), 1e-9 * std::max(1.0, np), "homogeneity R^N");
    t.observe(free_norm(p + q).value - (np + nq), 1e-9 * std::max(1.0, np + nq), "triangle inequality R^N");
  }
  return t.finish();
}

SuiteResult dirac_suite(const VerifyOptions& opt) {
  Tally t("freespace.dirac-isometry");
  Rng rng(derive_seed(opt.seed, "freespace.dirac-isometry"));
  for (int s = 0; s < 100; ++s) {
    const Point p = random_point(rng, 3, -4.0, 4.0), q = random_point(rng, 3, -4.0, 4.0);
    const auto mu = MoleculeN::dirac(Point(3, 0.0), p) - MoleculeN::dirac(Point(3, 0.0), q);
    t.observe(std::abs(free_norm(mu).value - l1_distance(p, q)), 1e-9, "l1^3 pair");
  }
  for (int s = 0; s < 20; ++s) {
    const auto space = random_metric_space(rng, 3 + rng.index(6));
    for (int r = 0; r < 5; ++r) {
      const std::size_t i = rng.index(space.size()), j = rng.index(space.size());
      const auto mu = MoleculeFinite::dirac(space.origin(), i) - MoleculeFinite::dirac(space.origin(), j);
      t.observe(std::abs(free_norm(mu, space).value - space(i, j)), 1e-9, "finite space pair");
    }
  }
  return t.finish();
}

SuiteResult adjoint_suite(const VerifyOptions& opt) {
  Tally t("freespace.adjointness");
  Rng rng(derive_seed(opt.seed, "freespace.adjointness"));
  for (int s = 0; s < 200; ++s) {
    const int n = 1 + static_cast<int>(rng.index(5));
    if (s % 2 == 0) {
      const auto f = random_lattice_l1(rng.next(), 5);
      const auto mu = random_molecule_l1(rng, 6, 6, 3, 3.0);
      t.observe(std::abs(pairing(project(f, n), mu) - pairing(f, s_n_apply(mu, n))), 1e-12, "l1 n=" + std::to_string(n));
    } else {
      const std::size_t dim = 1 + rng.index(3);
      const auto f = random_lattice(rng.next(), dim);
      const auto mu = random_molecule_n(rng, dim, 6, 3.0);
      t.observe(std::abs(pairing(project(f, n), mu) - pairing(f, s_n_apply(mu, n))), 1e-12, "R^N n=" + std::to_string(n));
    }
  }
  return t.finish();
}

SuiteResult monotone_suite(const VerifyOptions& opt) {
  Tally t("freespace.monotone");
  Rng rng(derive_seed(opt.seed, "freespace.monotone"));
  for (int s = 0; s < 50; ++s) {
    const auto mu = random_molecule_l1(rng, 6, 6, 3, 3.0);
    const double norm = free_norm(mu).value;
    for (int n = 1; n <= 6; ++n) {
      const double projected = free_norm(s_n_apply(mu, n)).value;
      t.observe(projected - norm * (1.0 + 1e-7), 0.0, "n=" + std::to_string(n));
    }
  }
  for (int s = 0; s < 10; ++s) {
    const auto mu = random_molecule_n(rng, 1 + rng.index(3), 6, 3.0);
    const double norm = free_norm(mu).value;
    for (int n = 1; n <= 6; ++n)
      t.observe(free_norm(s_n_apply(mu, n)).value - norm * (1.0 + 1e-7), 0.0, "R^N n=" + std::to_string(n));
  }
  return t.finish();
}

SuiteResult lattice_suite(const VerifyOptions& opt) {
  Tally t("freespace.projection-lattice");
  Rng rng(derive_seed(opt.seed, "freespace.projection-lattice"));
  for (int s = 0; s < 20; ++s) {
    const auto mu = random_molecule_l1(rng, 6, 7, 3, 3.0);
    const auto mun = random_molecule_n(rng, 1 + rng.index(3), 6, 3.0);
    for (int m = 1; m <= 5; ++m)
      for (int n = 1; n <= 5; ++n) {
        const int lo = std::min(m, n);
        t.observe(coefficient_distance(s_n_apply(s_n_apply(mu, n), m), s_n_apply(mu, lo)), 1e-10, "l1");
        t.observe(coefficient_distance(s_n_apply(s_n_apply(mun, n), m), s_n_apply(mun, lo)), 1e-10, "R^N");
      }
  }
  return t.finish();
}

SuiteResult transport_suite(const VerifyOptions& opt) {
  Tally t("freespace.transport-oracle");
  Rng rng(derive_seed(opt.seed, "freespace.transport-oracle"));
  for (int s = 0; s < 20; ++s) {
    const auto space = random_metric_space(rng, 5);
    std::vector<Term<std::size_t>> terms;
    const std::size_t support = 1 + rng.index(4);
    for (std::size_t i = 0; i < support; ++i) terms.push_back({rng.index(5), rng.uniform(-2.0, 2.0)});
    const MoleculeFinite mu(space.origin(), terms);
    std::vector<std::size_t> pts{space.origin()};
    std::vector<double> coeffs;
    for (const auto& term : mu.terms()) {
      pts.push_back(term.point);
      coeffs.push_back(term.coeff);
    }
    const auto dist = DistanceMatrix::from_points<std::size_t>(pts, [&](std::size_t a, std::size_t b) { return space(a, b); });
    t.observe(std::abs(free_norm(mu, space).value - transport_norm(coeffs, dist)), 1e-6, "5-point space");
  }
  return t.finish();
}

SuiteResult line_suite(const VerifyOptions& opt) {
  Tally t("freespace.line-total-variation");
  Rng rng(derive_seed(opt.seed, "freespace.line-total-variation"));
  for (int s = 0; s < 100; ++s) {
    const auto mu = random_molecule_n(rng, 1, 8, 5.0);
    std::vector<double> pts, coeffs;
    for (const auto& term : mu.terms()) {
      pts.push_back(term.point[0]);
      coeffs.push_back(term.coeff);
    }
    t.observe(std::abs(free_norm(mu).value - line_total_variation(pts, coeffs)), 1e-9, "molecule on R");
  }
  return t.finish();
}

// The error sequence is not monotone in general (it can rise while tail
// coordinates are still dropped); last <= first is only forced once the
// bound at n_max falls below the first error.
bool trend_forced(const FddReport& r) { return r.rows.back().bound < r.rows.front().error; }

SuiteResult fdd_suite(const VerifyOptions& opt) {
  Tally t("freespace.fdd");
  Rng rng(derive_seed(opt.seed, "freespace.fdd"));
  for (int s = 0; s < 10; ++s) {
    // Mix in tails beyond index n so the tail term of the bound matters.
    const auto mu = random_molecule_l1(rng, 4, 9, 3, 1.0);
    const auto r = verify_fdd(mu, 6);
    t.require(r.monotone, "||S_n mu|| exceeded ||mu||");
    t.require(r.error_trend || !trend_forced(r), "||S_n mu - mu|| did not decrease");
    t.require(r.within_bound, "||S_n mu - mu|| above the duality bound");
    t.observe(r.lattice_worst, 1e-10, "lattice");
    for (const auto& row : r.rows)
      if (!row.retraction_active) t.observe(row.error - row.bound, 1e-7, "bound n=" + std::to_string(row.n));
  }
  for (int s = 0; s < 5; ++s) {
    const auto mu = random_molecule_n(rng, 1 + rng.index(3), 4, 1.0);
    const auto r = verify_fdd(mu, 6);
    t.require(r.monotone && r.within_bound && r.lattice && (r.error_trend || !trend_forced(r)),
              "R^N FDD report failed");
  }
  return t.finish();
}

// ---- bap -------------------------------------------------------------------

std::vector<std::size_t> random_subset(Rng& rng, const FinitePointedMetricSpace& space) {
  std::vector<std::size_t> subset{space.origin()};
  for (std::size_t i = 0; i < space.size(); ++i)
    if (i != space.origin() && rng.coin()) subset.push_back(i);
  std::sort(subset.begin(), subset.end());
  return subset;
}

SpaceFunction random_space_function(Rng& rng, const FinitePointedMetricSpace& space) {
  // 1-Lipschitz by construction: distance to a random point, shifted.
  const std::size_t anchor = rng.index(space.size());
  std::vector<double> v(space.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = space(i, anchor) - space(space.origin(), anchor);
  const double w = rng.uniform(-1.0, 1.0);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += w * (space(i, space.origin()));
  v[space.origin()] = 0.0;
  return make_space_function(space, std::move(v));
}

std::vector<SchemeSpec> schemes() {
  return {{WeightScheme::inverse_distance, 1.0}, {WeightScheme::shepard, 1.0}, {WeightScheme::shepard, 2.0}};
}

FinitePointedMetricSpace random_bap_space(Rng& rng, int s) {
  return s % 2 == 0 ? random_l1_space(rng, 6 + rng.index(15), 2, 4.0) : random_metric_space(rng, 6 + rng.index(15));
}

SuiteResult partition_suite(const VerifyOptions& opt) {
  Tally t("bap.partition-normalized");
  Rng rng(derive_seed(opt.seed, "bap.partition-normalized"));
  for (int s = 0; s < 30; ++s) {
    const auto space = random_bap_space(rng, s);
    const auto subset = random_subset(rng, space);
    for (const auto& scheme : schemes()) {
      const auto part = build_partition(space, subset, scheme);
      for (std::size_t o = 0; o < part.outside().size(); ++o) {
        double total = 0.0;
        for (std::size_t w = 0; w < subset.size(); ++w) {
          t.require(part.weight(o, w) >= 0.0, "negative partition weight");
          total += part.weight(o, w);
        }
        t.observe(std::abs(total - 1.0), 1e-12, scheme.id());
      }
    }
  }
  return t.finish();
}

SuiteResult extend_suite(const VerifyOptions& opt) {
  Tally t("bap.extend-linear-positive");
  Rng rng(derive_seed(opt.seed, "bap.extend-linear-positive"));
  for (int s = 0; s < 30; ++s) {
    const auto space = random_bap_space(rng, s);
    const auto subset = random_subset(rng, space);
    for (const auto& scheme : schemes()) {
      const auto part = build_partition(space, subset, scheme);
      std::vector<double> fv(subset.size()), gv(subset.size());
      std::size_t origin_pos = 0;
      for (std::size_t i = 0; i < subset.size(); ++i) {
        if (subset[i] == space.origin()) {
          origin_pos = i;
          continue;
        }
        fv[i] = rng.uniform(-2.0, 2.0);
        gv[i] = fv[i] + rng.uniform(0.0, 1.0);  // g >= f on X
      }
      const double a = rng.uniform(-2.0, 2.0), b = rng.uniform(-2.0, 2.0);
      std::vector<double> hv(subset.size());
      for (std::size_t i = 0; i < hv.size(); ++i) hv[i] = a * fv[i] + b * gv[i];
      const SpaceFunction f(subset, fv, origin_pos), g(subset, gv, origin_pos), h(subset, hv, origin_pos);
      const auto ef = extend(f, part, space), eg = extend(g, part, space), eh = extend(h, part, space);
      for (std::size_t x = 0; x < space.size(); ++x) {
        t.observe(std::abs(eh.values[x] - (a * ef.values[x] + b * eg.values[x])), 1e-12, scheme.id() + " linearity");
        t.observe(ef.values[x] - eg.values[x], 1e-12, scheme.id() + " positivity");
      }
    }
  }
  return t.finish();
}

SuiteResult chain_suite(const VerifyOptions& opt) {
  Tally t("bap.fix-and-exhaust");
  Rng rng(derive_seed(opt.seed, "bap.fix-and-exhaust"));
  for (int s = 0; s < 10; ++s) {
    const auto space = random_bap_space(rng, s);
    const auto f = random_space_function(rng, space);
    for (const auto& scheme : schemes()) {
      const auto rows = bap_chain(f, space, scheme);
      for (const auto& row : rows) {
        t.require(row.fixes_subset, scheme.id() + ": S_n f differs from f on X_n");
        t.require(row.normalized, scheme.id() + ": partition not normalized");
      }
      t.require(!rows.empty() && rows.back().max_error == 0.0, scheme.id() + ": full chain does not reproduce f");
    }
  }
  return t.finish();
}

SuiteResult lip_ratio_suite(const VerifyOptions& opt) {
  Tally t("bap.lip-ratio");
  Rng rng(derive_seed(opt.seed, "bap.lip-ratio"));
  constexpr double kCap = 10.0;
  for (int s = 0; s < 6; ++s) {
    const auto space = random_l1_space(rng, 10 + rng.index(31), 2, 4.0);
    const auto f = random_space_function(rng, space);
    for (const auto& row : bap_chain(f, space, SchemeSpec{})) {
      t.observe(row.lip_ratio, kCap, "|X_n|=" + std::to_string(row.size));
      // Lip(E f) <= 3 K Lip(f) for the measured K.
      t.observe(row.lip_ratio - std::max(1.0, 3.0 * row.k_hat) * (1.0 + 1e-9), 0.0, "3K bound");
    }
  }
  return t.finish();
}

SuiteResult shape_suite(const VerifyOptions& opt) {
  Tally t("bap.convergence-shape");
  Rng rng(derive_seed(opt.seed, "bap.convergence-shape"));
  for (int s = 0; s < 6; ++s) {
    const auto space = random_l1_space(rng, 20, 2, 4.0);
    const auto f = random_space_function(rng, space);
    const double lip = lip_constant(f, space);
    for (const auto& scheme : schemes()) {
      const auto rows = bap_chain(f, space, scheme);
      for (const auto& row : rows) {
        const double bound = (1.0 + 3.0 * row.k_hat) * row.covering_radius * lip * (1.0 + 1e-6);
        t.observe(row.max_error - bound, 0.0, scheme.id() + " |X_n|=" + std::to_string(row.size));
      }
      t.require(rows.back().max_error == 0.0, scheme.id() + ": error does not reach 0");
    }
  }
  return t.finish();
}

// ---- io --------------------------------------------------------------------

SuiteResult roundtrip_suite(const VerifyOptions& opt) {
  Tally t("io.json-roundtrip");
  Rng rng(derive_seed(opt.seed, "io.json-roundtrip"));
  auto reparse = [](const io::json& j) { return io::json::parse(j.dump()); };
  for (int s = 0; s < 30; ++s) {
    const auto mu = random_molecule_l1(rng, 6, 8, 3, 3.0);
    const auto back = std::get<MoleculeL1>(io::molecule_from_json(reparse(io::to_json(mu))));
    t.require(coefficient_distance(mu, back) == 0.0 && back.size() == mu.size(), "l1 molecule changed");

    const auto mun = random_molecule_n(rng, 1 + rng.index(4), 6, 3.0);
    const auto backn = std::get<MoleculeN>(io::molecule_from_json(reparse(io::to_json(mun))));
    t.require(coefficient_distance(mun, backn) == 0.0 && backn.size() == mun.size(), "l1N molecule changed");

    const auto space = random_metric_space(rng, 3 + rng.index(5));
    const MoleculeFinite muf(space.origin(), {{rng.index(space.size()), rng.uniform(-1.0, 1.0)}});
    const auto fin = std::get<io::FiniteMolecule>(io::molecule_from_json(reparse(io::to_json(muf, space))));
    t.require(coefficient_distance(muf, fin.molecule) == 0.0, "finite molecule changed");
    for (std::size_t i = 0; i < space.size(); ++i)
      for (std::size_t j = 0; j < space.size(); ++j) t.require(fin.space(i, j) == space(i, j), "metric changed");

    const auto data = random_vertex_data(rng, 1 + rng.index(4));
    const auto vd = io::vertex_data_from_json(reparse(io::to_json(data)));
    t.require(vd.cube().center() == data.cube().center() && vd.cube().edge() == data.cube().edge() &&
                  std::equal(vd.values().begin(), vd.values().end(), data.values().begin(), data.values().end()),
              "vertex data changed");

    const auto cert = free_norm(mu);
    const auto cb = io::certificate_l1_from_json(reparse(io::to_json(cert)));
    t.require(cb.value == cert.value && cb.witness == cert.witness, "certificate changed");
    const auto certn = free_norm(mun);
    const auto cbn = io::certificate_n_from_json(reparse(io::to_json(certn)));
    t.require(cbn.value == certn.value && cbn.witness == certn.witness, "R^N certificate changed");
  }
  return t.finish();
}

}  // namespace

const std::vector<Suite>& all_suites() {
  static const std::vector<Suite> suites{
      {"geometry.retract", retract_suite},
      {"geometry.locate-cube", locate_suite},
      {"geometry.vertex-count", vertex_count_suite},
      {"geometry.grid-exact", grid_exact_suite},
      {"interp.node-reproduction", node_suite},
      {"interp.weight-simplex", weight_suite},
      {"interp.recursion-oracle", recursion_suite},
      {"interp.lambda-lipschitz", lambda_lip_suite},
      {"interp.linearity", lambda_linear_suite},
      {"interp.af-property", af_suite},
      {"fdd.contractive", contractive_suite},
      {"fdd.finite-rank", finite_rank_suite},
      {"fdd.commuting", commuting_suite},
      {"fdd.linearity", q_linear_suite},
      {"fdd.convergence-bound", convergence_suite},
      {"fdd.mode-consistency", mode_consistency_suite},
      {"fdd.af-finer-cubes", p_af_suite},
      {"freespace.norm-axioms", norm_axioms_suite},
      {"freespace.dirac-isometry", dirac_suite},
      {"freespace.adjointness", adjoint_suite},
      {"freespace.monotone", monotone_suite},
      {"freespace.projection-lattice", lattice_suite},
      {"freespace.transport-oracle", transport_suite},
      {"freespace.line-total-variation", line_suite},
      {"freespace.fdd", fdd_suite},
      {"bap.partition-normalized", partition_suite},
      {"bap.extend-linear-positive", extend_suite},
      {"bap.fix-and-exhaust", chain_suite},
      {"bap.lip-ratio", lip_ratio_suite},
      {"bap.convergence-shape", shape_suite},
      {"io.json-roundtrip", roundtrip_suite},
  };
  return suites;
}

VerifyReport run_all(const VerifyOptions& options) {
  VerifyReport report;
  report.seed = options.seed;
  for (const auto& suite : all_suites()) {
    try {
      report.suites.push_back(suite.run(options));
    } catch (const std::exception& e) {
      report.suites.push_back({suite.name, false, 0.0, std::string("exception: ") + e.what()});
    }
  }
  return report;
}

}  // namespace lipfree::verify
