#include "commands.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>
#include <type_traits>
#include <variant>

#include "lipfree/bap.hpp"
#include "lipfree/fdd.hpp"
#include "lipfree/freespace.hpp"
#include "lipfree/io.hpp"
#include "lipfree/verify/random.hpp"

namespace lipfree::cli {

using io::format_double;
using io::json;

namespace {

// Maps library exceptions to exit codes.
template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const SolverError& e) {
    err << "solver error: " << e.what() << '\n';
    return kSolverError;
  } catch (const std::exception& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string csv_quote(const std::string& s) {
  std::string q = "\"";
  for (char c : s) q += (c == '"') ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

// CSV cell holding a JSON value; quoted because it may contain commas.
std::string json_cell(const json& j) { return csv_quote(j.dump()); }

std::string bool_cell(bool b) { return b ? "1" : "0"; }

template <class P, class Enc>
std::string certificate_csv(const NormCertificate<P>& c, Enc encode) {
  std::ostringstream out;
  out << "# value=" << format_double(c.value) << "\npoint,potential\n";
  for (const auto& [p, v] : c.witness) out << encode(p) << ',' << format_double(v) << '\n';
  return out.str();
}

}  // namespace

int cmd_norm(const RunConfig& cfg, std::ostream& err) {
  return guarded(err, [&] {
    const auto mol = io::molecule_from_json(io::read_json_file(cfg.input));
    std::string text;
    if (const auto* fm = std::get_if<io::FiniteMolecule>(&mol)) {
      const auto c = free_norm(fm->molecule, fm->space);
      text = cfg.format == Format::json ? dump(io::to_json(c))
                                        : certificate_csv(c, [](std::size_t i) { return std::to_string(i); });
    } else if (const auto* mn = std::get_if<MoleculeN>(&mol)) {
      const auto c = free_norm(*mn);
      text = cfg.format == Format::json ? dump(io::to_json(c))
                                        : certificate_csv(c, [](const Point& p) { return json_cell(io::to_json(p)); });
    } else {
      const auto c = free_norm(std::get<MoleculeL1>(mol));
      text = cfg.format == Format::json
                 ? dump(io::to_json(c))
                 : certificate_csv(c, [](const SparsePoint& p) { return json_cell(io::to_json(p)); });
    }
    io::write_output(cfg.output, text);
    return kOk;
  });
}

namespace {

struct ProjectRow {
  json point;
  double value = 0.0;
  double exact = 0.0;
  ConvergenceReport report;
};

template <class P>
std::vector<ProjectRow> project_rows(const LipFunction<P>& f, const std::vector<P>& pts, int n, double tol) {
  std::vector<ProjectRow> rows;
  for (const auto& x : pts) {
    ProjectRow r{io::to_json(x), q_n(f, x, n), f(x), {}};
    r.report = convergence_bound(f, x, n);
    r.report.within_bound = r.report.error <= r.report.bound + tol;
    rows.push_back(std::move(r));
  }
  return rows;
}

// {"points": [...], "values": [...]} with the origin among the points.
template <class P, class Parse>
TabulatedFunction<P> tabulated_from_json(const json& j, const P& origin, Parse parse) {
  if (!j.contains("points") || !j.contains("values"))
    throw io::ParseError("tabulated function needs \"points\" and \"values\"");
  std::vector<P> pts;
  for (const auto& p : j.at("points")) pts.push_back(parse(p));
  std::vector<double> vals;
  for (const auto& v : j.at("values")) {
    if (!v.is_number()) throw io::ParseError("tabulated values must be numbers");
    vals.push_back(v.get<double>());
  }
  if (vals.size() != pts.size()) throw io::ParseError("tabulated function: one value per point required");
  std::size_t at = pts.size();
  for (std::size_t i = 0; i < pts.size(); ++i)
    if (pts[i] == origin) at = i;
  if (at == pts.size()) throw io::ParseError("tabulated function must list the origin");
  return TabulatedFunction<P>(std::move(pts), std::move(vals), at);
}

template <class P, class Parse>
std::vector<P> points_from_file(const std::string& path, Parse parse) {
  const json j = io::read_json_file(path);
  if (!j.is_array()) throw io::ParseError("points file must hold a JSON array of points");
  std::vector<P> out;
  for (const auto& p : j) out.push_back(parse(p));
  return out;
}

std::string project_output(const RunConfig& cfg, const std::string& mode, const std::string& fname,
                           std::optional<double> lip, const std::vector<ProjectRow>& rows) {
  if (cfg.format == Format::csv) {
    std::ostringstream out;
    out << "point,value,exact,error,bound,retraction_active\n";
    for (const auto& r : rows)
      out << json_cell(r.point) << ',' << format_double(r.value) << ',' << format_double(r.exact) << ','
          << format_double(r.report.error) << ',' << format_double(r.report.bound) << ','
          << bool_cell(r.report.retraction_active) << '\n';
    return out.str();
  }
  json results = json::array();
  for (const auto& r : rows)
    results.push_back({{"point", r.point},
                       {"value", r.value},
                       {"exact", r.exact},
                       {"error", r.report.error},
                       {"bound", r.report.bound},
                       {"retraction_active", r.report.retraction_active},
                       {"within_bound", r.report.within_bound}});
  json doc{{"mode", mode}, {"n", cfg.n}, {"function", fname}, {"results", results}};
  doc["declared_lip"] = lip ? json(*lip) : json(nullptr);
  return dump(doc);
}

}  // namespace

int cmd_project(const RunConfig& cfg, std::ostream& err) {
  return guarded(err, [&] {
    check_level(cfg.n);
    verify::Rng rng(cfg.seed);
    const double range = std::min(level_half_extent(cfg.n), 4.0);
    std::string text;
    if (cfg.dim) {
      const std::size_t dim = *cfg.dim;
      if (dim == 0 || dim > kMaxAmbientDim) throw std::invalid_argument("--dim must lie in [1, 16]");
      const auto parse = [dim](const json& p) {
        Point x = io::point_from_json(p);
        if (x.size() != dim) throw io::ParseError("point " + p.dump() + " does not have --dim coordinates");
        return x;
      };
      LipFunctionN f;
      std::string fname = cfg.function;
      if (!cfg.input.empty()) {
        f = mcshane_extension(tabulated_from_json<Point>(io::read_json_file(cfg.input), Point(dim, 0.0), parse));
        fname = "tabulated";
      } else {
        f = builtin_function(cfg.function, dim, cfg.seed);
      }
      std::vector<Point> pts;
      if (!cfg.points.empty())
        pts = points_from_file<Point>(cfg.points, parse);
      else
        for (std::size_t s = 0; s < cfg.samples; ++s) pts.push_back(verify::random_point(rng, dim, -range, range));
      text = project_output(cfg, "l1N", fname, f.declared_lip, project_rows(f, pts, cfg.n, cfg.tol));
    } else {
      LipFunctionL1 f;
      std::string fname = cfg.function;
      if (!cfg.input.empty()) {
        f = mcshane_extension(
            tabulated_from_json<SparsePoint>(io::read_json_file(cfg.input), SparsePoint{}, io::sparse_point_from_json));
        fname = "tabulated";
      } else {
        f = builtin_function_l1(cfg.function, 4, cfg.seed);
      }
      std::vector<SparsePoint> pts;
      if (!cfg.points.empty())
        pts = points_from_file<SparsePoint>(cfg.points, io::sparse_point_from_json);
      else
        for (std::size_t s = 0; s < cfg.samples; ++s)
          pts.push_back(verify::random_sparse_point(rng, static_cast<std::size_t>(cfg.n) + 2, 3, range));
      text = project_output(cfg, "l1", fname, f.declared_lip, project_rows(f, pts, cfg.n, cfg.tol));
    }
    io::write_output(cfg.output, text);
    return kOk;
  });
}

int cmd_fdd_table(const RunConfig& cfg, std::ostream& err) {
  return guarded(err, [&] {
    check_level(cfg.n_max);
    const auto mol = io::molecule_from_json(io::read_json_file(cfg.input));
    FddReport report;
    if (const auto* mn = std::get_if<MoleculeN>(&mol))
      report = verify_fdd(*mn, cfg.n_max);
    else if (const auto* ml = std::get_if<MoleculeL1>(&mol))
      report = verify_fdd(*ml, cfg.n_max);
    else
      throw std::invalid_argument("fdd-table needs an \"l1\" or \"l1N\" molecule");

    std::string text;
    if (cfg.format == Format::csv) {
      std::ostringstream out;
      out << "n,norm_projected,error,bound,support_size,retraction_active\n";
      for (const auto& r : report.rows)
        out << r.n << ',' << format_double(r.norm_projected) << ',' << format_double(r.error) << ','
            << format_double(r.bound) << ',' << r.support_size << ',' << bool_cell(r.retraction_active) << '\n';
      text = out.str();
    } else {
      json rows = json::array();
      for (const auto& r : report.rows)
        rows.push_back({{"n", r.n},
                        {"norm_projected", r.norm_projected},
                        {"error", r.error},
                        {"bound", r.bound},
                        {"support_size", r.support_size},
                        {"retraction_active", r.retraction_active}});
      text = dump({{"norm", report.norm},
                   {"rows", rows},
                   {"monotone", report.monotone},
                   {"error_trend", report.error_trend},
                   {"within_bound", report.within_bound},
                   {"lattice", report.lattice},
                   {"lattice_worst", report.lattice_worst}});
    }
    io::write_output(cfg.output, text);
    return kOk;
  });
}

int cmd_verify(const RunConfig& cfg, std::ostream& err) {
  return guarded(err, [&] {
    verify::VerifyOptions opt;
    opt.seed = cfg.seed;
    verify::VerifyReport report;
    report.seed = cfg.seed;
    bool matched = false;
    for (const auto& suite : verify::all_suites()) {
      if (suite.name.rfind(cfg.suite, 0) != 0) continue;
      matched = true;
      try {
        report.suites.push_back(suite.run(opt));
      } catch (const std::exception& e) {
        report.suites.push_back({suite.name, false, 0.0, std::string("exception: ") + e.what()});
      }
    }
    if (!matched) throw std::invalid_argument("no suite matches '" + cfg.suite + "'");

    std::string text;
    if (cfg.format == Format::csv) {
      std::ostringstream out;
      out << "# seed=" << report.seed << "\nsuite,pass,worst_case,detail\n";
      for (const auto& s : report.suites)
        out << s.name << ',' << bool_cell(s.pass) << ',' << format_double(s.worst_case) << ',' << csv_quote(s.detail)
            << '\n';
      text = out.str();
    } else {
      json suites = json::array();
      for (const auto& s : report.suites)
        suites.push_back({{"suite", s.name}, {"pass", s.pass}, {"worst_case", s.worst_case}, {"detail", s.detail}});
      text = dump({{"seed", report.seed}, {"pass", report.pass()}, {"suites", suites}});
    }
    io::write_output(cfg.output, text);
    for (const auto& s : report.suites)
      if (!s.pass) err << "FAIL " << s.name << ": " << s.detail << '\n';
    return report.pass() ? kOk : kSuiteFailure;
  });
}

int cmd_bap(const RunConfig& cfg, std::ostream& err) {
  return guarded(err, [&] {
    const json doc = io::read_json_file(cfg.input);
    const auto space = io::metric_space_from_json(doc);
    const auto scheme = SchemeSpec::parse(cfg.scheme, cfg.p);

    SpaceFunction f;
    if (doc.contains("values")) {
      std::vector<double> v;
      for (const auto& x : doc.at("values")) {
        if (!x.is_number()) throw io::ParseError("\"values\" must be numbers");
        v.push_back(x.get<double>());
      }
      f = make_space_function(space, std::move(v));
    } else {
      // Default test function: distance to the point farthest from the origin.
      std::size_t far = space.origin();
      for (std::size_t i = 0; i < space.size(); ++i)
        if (space(i, space.origin()) > space(far, space.origin())) far = i;
      std::vector<double> v(space.size());
      for (std::size_t i = 0; i < v.size(); ++i) v[i] = space(i, far) - space(space.origin(), far);
      f = make_space_function(space, std::move(v));
    }
    if (space.size() < 2) throw std::invalid_argument("bap needs at least two points");

    const auto rows = bap_chain(f, space, scheme);
    const std::size_t doubling = doubling_estimate(space);
    const double lip = lip_constant(f, space);
    std::string text;
    if (cfg.format == Format::csv) {
      std::ostringstream out;
      out << "# scheme=" << scheme.id() << " points=" << space.size() << " doubling_estimate=" << doubling
          << " lip_f=" << format_double(lip) << '\n';
      out << "n,k_hat,lip_ratio,max_error,covering_radius\n";
      for (const auto& r : rows)
        out << r.size << ',' << format_double(r.k_hat) << ',' << format_double(r.lip_ratio) << ','
            << format_double(r.max_error) << ',' << format_double(r.covering_radius) << '\n';
      text = out.str();
    } else {
      json jr = json::array();
      for (const auto& r : rows)
        jr.push_back({{"n", r.size},
                      {"k_hat", r.k_hat},
                      {"lip_ratio", r.lip_ratio},
                      {"max_error", r.max_error},
                      {"covering_radius", r.covering_radius},
                      {"fixes_subset", r.fixes_subset},
                      {"normalized", r.normalized}});
      text = dump({{"scheme", scheme.id()},
                   {"points", space.size()},
                   {"doubling_estimate", doubling},
                   {"lip_f", lip},
                   {"rows", jr}});
    }
    io::write_output(cfg.output, text);
    return kOk;
  });
}

}  // namespace lipfree::cli
