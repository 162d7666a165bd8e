// One line per acceptance criterion: PASS/FAIL, the worst observed value
// against its tolerance, and wall time against its budget.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "lipfree/bap.hpp"
#include "lipfree/fdd.hpp"
#include "lipfree/freespace.hpp"
#include "lipfree/interp.hpp"
#include "lipfree/verify/oracles.hpp"
#include "lipfree/verify/random.hpp"
#include "lipfree/verify/suites.hpp"

using namespace lipfree;
using verify::Rng;

namespace {

struct Outcome {
  bool pass = true;
  std::string summary;
};

// Largest value seen for one named quantity and its allowed limit.
struct Measure {
  std::string label;
  double limit;
  double worst = 0.0;
  bool ok = true;

  void see(double v) {
    worst = std::max(worst, v);
    if (!(v <= limit)) ok = false;
  }
  std::string str() const {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s %.3g (limit %.3g)", label.c_str(), worst, limit);
    return buf;
  }
};

Outcome combine(std::initializer_list<const Measure*> ms, bool extra_ok = true, const std::string& extra = "") {
  Outcome o;
  o.pass = extra_ok;
  for (const auto* m : ms) {
    o.pass = o.pass && m->ok;
    if (!o.summary.empty()) o.summary += "; ";
    o.summary += m->str();
  }
  if (!extra.empty()) o.summary += (o.summary.empty() ? "" : "; ") + extra;
  return o;
}

// 1. Empirical Lipschitz constant of Lambda equals the vertex constant.
Outcome criterion1() {
  Rng rng(101);
  Measure above{"ratio above L_V", 1e-9};
  Measure gap{"|max ratio - L_V|", 1e-9};
  for (std::size_t dim = 1; dim <= 4; ++dim)
    for (int s = 0; s < 50; ++s) {
      const auto data = verify::random_vertex_data(rng, dim);
      const double lv = vertex_lip_constant(data);
      std::vector<std::pair<Point, Point>> pairs;
      const std::uint64_t count = std::uint64_t{1} << dim;
      for (std::uint64_t a = 0; a < count; ++a)
        for (std::uint64_t b = a + 1; b < count; ++b)
          pairs.emplace_back(vertex(data.cube(), SignVector::from_mask(a, dim)),
                             vertex(data.cube(), SignVector::from_mask(b, dim)));
      while (pairs.size() < 10000) {
        Point x = verify::random_point_in(rng, data.cube());
        Point y = verify::random_point_in(rng, data.cube());
        if (rng.coin()) {
          const std::size_t axis = rng.index(dim);
          for (std::size_t i = 0; i < dim; ++i)
            if (i != axis) y[i] = x[i];
        }
        if (l1_distance(x, y) >= 1e-6 * data.cube().edge()) pairs.emplace_back(std::move(x), std::move(y));
      }
      double best = 0.0;
      for (const auto& [x, y] : pairs) {
        const double r = std::abs(lambda_eval(data, x) - lambda_eval(data, y)) / l1_distance(x, y);
        best = std::max(best, r);
        above.see((r - lv) / std::max(1.0, lv));
      }
      gap.see(std::abs(best - lv));
    }
  return combine({&above, &gap});
}

// 2. Q_m Q_n = Q_min(m,n).
Outcome criterion2() {
  Rng rng(202);
  Measure dev{"max deviation", 1e-10};
  for (std::size_t dim = 1; dim <= 3; ++dim) {
    const auto f = random_lattice(rng.next(), dim);
    std::vector<Point> xs;
    for (int s = 0; s < 100; ++s) xs.push_back(verify::random_point(rng, dim, -3.0, 3.0));
    for (int m = 1; m <= 5; ++m)
      for (int n = 1; n <= 5; ++n) dev.see(verify_commuting<Point>(f, m, n, xs).max_deviation);
  }
  const auto f = random_lattice_l1(rng.next(), 6);
  std::vector<SparsePoint> xs;
  for (int s = 0; s < 100; ++s) xs.push_back(verify::random_sparse_point(rng, 8, 4, 3.0));
  for (int m = 1; m <= 5; ++m)
    for (int n = 1; n <= 5; ++n) dev.see(verify_commuting<SparsePoint>(f, m, n, xs).max_deviation);
  return combine({&dev});
}

// 3. ||S_n mu|| <= ||mu|| (1 + 1e-7).
Outcome criterion3() {
  Rng rng(303);
  Measure excess{"relative excess", 1e-7};
  for (int s = 0; s < 50; ++s) {
    const auto mu = verify::random_molecule_l1(rng, 6, 8, 4, 3.0);
    const double norm = free_norm(mu).value;
    for (int n = 1; n <= 6; ++n) excess.see((free_norm(s_n_apply(mu, n)).value - norm) / norm);
  }
  return combine({&excess});
}

// 4. <Q_n f, mu> = <f, S_n mu>.
Outcome criterion4() {
  Rng rng(404);
  Measure dev{"max |difference|", 1e-12};
  for (int s = 0; s < 200; ++s) {
    const int n = 1 + static_cast<int>(rng.index(5));
    const auto f = random_lattice_l1(rng.next(), 6);
    const auto mu = verify::random_molecule_l1(rng, 6, 7, 3, 3.0);
    double lhs = 0.0;
    for (const auto& t : mu.terms()) lhs += t.coeff * q_n(f, t.point, n);
    dev.see(std::abs(lhs - pairing(f, s_n_apply(mu, n))));
  }
  return combine({&dev});
}

// 5. Pointwise and dual convergence bounds.
Outcome criterion5() {
  Rng rng(505);
  Measure point{"pointwise error - bound", 1e-9};
  Measure dual{"||S_n mu - mu|| - bound", 1e-7};
  int tested = 0;
  while (tested < 50) {
    const int n = 1 + static_cast<int>(rng.index(8));
    const double lip = rng.uniform(0.25, 3.0);
    const auto f = random_lattice_l1(rng.next(), 10, 16, lip);
    const SparsePoint x = verify::random_sparse_point(rng, 12, 4, 3.0);
    if (retraction_active(x, n)) continue;
    const double err = std::abs(q_n(f, x, n) - f(x));
    point.see(err - 2.0 * lip * (x.tail_l1(static_cast<std::size_t>(n)) + n * std::ldexp(1.0, 1 - n)));
    ++tested;
  }
  for (int s = 0; s < 20; ++s) {
    const auto mu = verify::random_molecule_l1(rng, 4, 10, 3, 1.0);
    for (int n = 1; n <= 6; ++n) {
      double bound = 0.0;
      bool inside = true;
      for (const auto& t : mu.terms()) {
        bound += std::abs(t.coeff) * 2.0 * (t.point.tail_l1(static_cast<std::size_t>(n)) + n * std::ldexp(1.0, 1 - n));
        inside = inside && !retraction_active(t.point, n);
      }
      if (inside) dual.see(free_norm(s_n_apply(mu, n) - mu).value - bound);
    }
  }
  return combine({&point, &dual});
}

// 6. Dirac isometry, F(R) = L1, transport oracle.
Outcome criterion6() {
  Rng rng(606);
  Measure iso{"Dirac isometry", 1e-9};
  Measure tv{"TV oracle", 1e-9};
  Measure tr{"transport oracle", 1e-6};
  for (int s = 0; s < 100; ++s) {
    const SparsePoint p = verify::random_sparse_point(rng, 6, 4, 3.0);
    const SparsePoint q = verify::random_sparse_point(rng, 6, 4, 3.0);
    const auto mu = MoleculeL1::dirac(SparsePoint{}, p) - MoleculeL1::dirac(SparsePoint{}, q);
    iso.see(std::abs(free_norm(mu).value - l1_distance(p, q)));
  }
  for (int s = 0; s < 100; ++s) {
    const auto mu = verify::random_molecule_n(rng, 1, 8, 5.0);
    std::vector<double> pts, a;
    for (const auto& t : mu.terms()) {
      pts.push_back(t.point[0]);
      a.push_back(t.coeff);
    }
    tv.see(std::abs(free_norm(mu).value - verify::line_total_variation(pts, a)));
  }
  for (int s = 0; s < 20; ++s) {
    const auto space = verify::random_metric_space(rng, 5);
    std::vector<Term<std::size_t>> terms;
    for (std::size_t i = 0, k = 1 + rng.index(4); i < k; ++i) terms.push_back({rng.index(5), rng.uniform(-2.0, 2.0)});
    const MoleculeFinite mu(space.origin(), terms);
    std::vector<std::size_t> pts{space.origin()};
    std::vector<double> a;
    for (const auto& t : mu.terms()) {
      pts.push_back(t.point);
      a.push_back(t.coeff);
    }
    const auto d = DistanceMatrix::from_points<std::size_t>(pts, [&](std::size_t i, std::size_t j) { return space(i, j); });
    tr.see(std::abs(free_norm(mu, space).value - verify::transport_norm(a, d)));
  }
  return combine({&iso, &tv, &tr});
}

double off_grid_bump(const SparsePoint& x, int n) {
  const double s = std::ldexp(1.0, 1 - n);
  double b = 0.0;
  for (const auto& [i, v] : x.entries()) b += i <= static_cast<std::size_t>(n) ? std::abs(v - s * std::round(v / s)) : std::abs(v);
  return b;
}

// 7. Finite rank of Q_n and support of S_n.
Outcome criterion7() {
  Rng rng(707);
  bool unchanged = true, support_ok = true, on_grid = true;
  std::size_t worst_ratio_num = 0, worst_ratio_den = 1;
  for (int inst = 0; inst < 20; ++inst) {
    const int n = 1 + static_cast<int>(rng.index(6));
    const auto f = random_lattice_l1(rng.next(), 5);
    const double c = rng.uniform(0.5, 2.0);
    const LipFunctionL1 g{[f, c, n](const SparsePoint& x) { return f(x) + c * off_grid_bump(x, n); }, std::nullopt};
    for (int s = 0; s < 50; ++s) {
      const SparsePoint x = verify::random_sparse_point(rng, 8, 4, 3.0);
      unchanged = unchanged && q_n(f, x, n) == q_n(g, x, n);
    }
    // Molecules in l1^N: supports inside {1, ..., N}.
    const std::size_t dim = 1 + rng.index(4);
    const auto mu = verify::random_molecule_l1(rng, 6, dim, dim, 3.0);
    const auto sn = s_n_apply(mu, n);
    const std::size_t cap = (std::size_t{1} << std::min<std::size_t>(static_cast<std::size_t>(n), dim)) * mu.size();
    support_ok = support_ok && sn.size() <= cap;
    if (sn.size() * worst_ratio_den > worst_ratio_num * cap) {
      worst_ratio_num = sn.size();
      worst_ratio_den = cap;
    }
    for (const auto& t : sn.terms())
      on_grid = on_grid && t.point.max_index() <= static_cast<std::size_t>(n) &&
                on_level_grid(rho(t.point, static_cast<std::size_t>(n)), n);
  }
  Outcome o;
  o.pass = unchanged && support_ok && on_grid;
  o.summary = std::string("Q_n f unchanged off grid: ") + (unchanged ? "yes" : "NO") +
              "; worst support/cap " + std::to_string(worst_ratio_num) + "/" + std::to_string(worst_ratio_den) +
              "; points in tau_n(V_n): " + (on_grid ? "yes" : "NO");
  return o;
}

// 8. BAP harness along the farthest-point chain.
Outcome criterion8() {
  Rng rng(808);
  Measure norm{"partition row sum deviation", 1e-12};
  Measure shape{"max error - (1+3K) d_H Lip(f)", 0.0};
  bool fixes = true, exhausts = true;
  const std::vector<SchemeSpec> schemes{{WeightScheme::inverse_distance, 1.0},
                                        {WeightScheme::shepard, 1.0},
                                        {WeightScheme::shepard, 2.0}};
  for (int s = 0; s < 10; ++s) {
    const auto space = verify::random_l1_space(rng, 20, 2, 4.0);
    std::vector<double> v(space.size());
    const std::size_t anchor = 1 + rng.index(space.size() - 1);
    const double tilt = rng.uniform(-1.0, 1.0);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = space(i, anchor) - space(0, anchor) + tilt * space(i, 0);
    const auto f = make_space_function(space, v);
    const double lip = lip_constant(f, space);
    for (const auto& scheme : schemes) {
      const auto order = farthest_point_order(space);
      for (std::size_t n = 1; n < order.size(); ++n) {
        std::vector<std::size_t> x(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n + 1));
        std::sort(x.begin(), x.end());
        const auto part = build_partition(space, x, scheme);
        for (std::size_t o = 0; o < part.outside().size(); ++o) {
          double total = 0.0;
          for (std::size_t w = 0; w < x.size(); ++w) total += part.weight(o, w);
          norm.see(std::abs(total - 1.0));
        }
        const auto sf = extend(restrict_to(f, x), part, space);
        for (auto i : x) fixes = fixes && sf.values[i] == f.values[i];
        double err = 0.0;
        for (std::size_t i = 0; i < space.size(); ++i) err = std::max(err, std::abs(sf.values[i] - f.values[i]));
        const double k = gentleness(part, space).k_hat;
        shape.see(err - (1.0 + 3.0 * k) * covering_radius(space, x) * lip * (1.0 + 1e-6));
        if (n + 1 == order.size()) exhausts = exhausts && err == 0.0;
      }
    }
  }
  return combine({&norm, &shape}, fixes && exhausts,
                 std::string("S_n f = f on X_n: ") + (fixes ? "yes" : "NO") + "; final error 0: " +
                     (exhausts ? "yes" : "NO"));
}

// 9. Full verify run, default seed plus ten more.
Outcome criterion9(double& default_seconds) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto base = verify::run_all({});
  default_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::string failing;
  for (const auto& s : base.suites)
    if (!s.pass) failing += " " + s.name;
  bool identical = true;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    verify::VerifyOptions opt;
    opt.seed = seed * 7919;
    const auto r = verify::run_all(opt);
    for (std::size_t i = 0; i < r.suites.size(); ++i)
      if (r.suites[i].pass != base.suites[i].pass) {
        identical = false;
        failing += " [seed " + std::to_string(opt.seed) + "] " + r.suites[i].name;
      }
  }
  Outcome o;
  o.pass = base.pass() && identical && default_seconds < 180.0;
  char buf[128];
  std::snprintf(buf, sizeof buf, "%zu suites, default seed %s in %.2f s (limit 180 s); 10 seeds %s", base.suites.size(),
                base.pass() ? "all PASS" : "FAIL", default_seconds, identical ? "identical" : "DIFFER");
  o.summary = buf;
  if (!failing.empty()) o.summary += "; failing:" + failing;
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget;
    std::function<Outcome()> run;
  };
  double verify_seconds = 0.0;
  const std::vector<Criterion> criteria{
      {1, "Lambda Lipschitz constant equals the vertex constant", 10, criterion1},
      {2, "Q_m Q_n = Q_min(m,n)", 30, criterion2},
      {3, "||S_n mu|| <= ||mu||", 30, criterion3},
      {4, "<Q_n f, mu> = <f, S_n mu>", 5, criterion4},
      {5, "convergence bounds", 20, criterion5},
      {6, "free-norm correctness", 60, criterion6},
      {7, "finite rank", 5, criterion7},
      {8, "BAP harness", 20, criterion8},
      {9, "verify run and seed robustness", 1e9, [&] { return criterion9(verify_seconds); }},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < c.budget;
    const bool pass = o.pass && in_time;
    failures += pass ? 0 : 1;
    if (c.id == 9)
      std::printf("[%s] criterion %d: %s -- %s (total %.2f s)\n", pass ? "PASS" : "FAIL", c.id, c.name,
                  o.summary.c_str(), secs);
    else
      std::printf("[%s] criterion %d: %s -- %s; %.2f s (limit %.0f s)\n", pass ? "PASS" : "FAIL", c.id, c.name,
                  o.summary.c_str(), secs, c.budget);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
