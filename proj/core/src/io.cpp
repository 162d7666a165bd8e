#include "lipfree/io.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace lipfree::io {

namespace {

template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  // Library errors usually name their context already.
  const auto wrap = [what](const char* msg) {
    const std::string m(msg), prefix = std::string(what) + ": ";
    return ParseError(m.rfind(prefix, 0) == 0 ? m : prefix + m);
  };
  try {
    return f();
  } catch (const ParseError&) {
    throw;
  } catch (const json::exception& e) {
    throw wrap(e.what());
  } catch (const std::invalid_argument& e) {
    throw wrap(e.what());
  } catch (const std::out_of_range& e) {
    throw wrap(e.what());
  }
}

double real_from_json(const json& j) {
  if (!j.is_number()) throw ParseError("expected a number, got " + j.dump());
  return j.get<double>();
}

}  // namespace

json to_json(const Point& p) { return json(p); }

json to_json(const SparsePoint& p) {
  json coords = json::object();
  for (const auto& [i, v] : p.entries()) coords[std::to_string(i)] = v;
  return json{{"coords", coords}};
}

json to_json(const Hypercube& c) { return json{{"center", c.center()}, {"edge", c.edge()}}; }

json to_json(const VertexData& v) {
  json values = json::object();
  const std::size_t n = v.cube().dim();
  for (std::size_t m = 0; m < v.values().size(); ++m) values[SignVector::from_mask(m, n).to_string()] = v.values()[m];
  return json{{"cube", to_json(v.cube())}, {"values", values}};
}

json to_json(const FinitePointedMetricSpace& m) {
  if (m.embedding()) return json{{"embed_l1", *m.embedding()}, {"origin", m.origin()}};
  json dist = json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.size(); ++j) row.push_back(m(i, j));
    dist.push_back(row);
  }
  return json{{"points", m.labels()}, {"dist", dist}, {"origin", m.origin()}};
}

json to_json(const MoleculeN& mu) {
  json terms = json::array();
  for (const auto& t : mu.terms()) terms.push_back({{"point", t.point}, {"coeff", t.coeff}});
  return json{{"space", "l1N"}, {"dim", mu.origin().size()}, {"terms", terms}};
}

json to_json(const MoleculeL1& mu) {
  json terms = json::array();
  for (const auto& t : mu.terms()) terms.push_back({{"point", to_json(t.point)}, {"coeff", t.coeff}});
  return json{{"space", "l1"}, {"terms", terms}};
}

json to_json(const MoleculeFinite& mu, const FinitePointedMetricSpace& space) {
  json terms = json::array();
  for (const auto& t : mu.terms()) terms.push_back({{"point", t.point}, {"coeff", t.coeff}});
  return json{{"space", "finite"}, {"metric", to_json(space)}, {"terms", terms}};
}

namespace {

template <class P, class Enc>
json certificate_json(const NormCertificate<P>& c, Enc enc) {
  json w = json::array();
  for (const auto& [p, v] : c.witness) w.push_back({{"point", enc(p)}, {"value", v}});
  return json{{"value", c.value}, {"witness", w}};
}

}  // namespace

json to_json(const NormCertificate<Point>& c) {
  return certificate_json(c, [](const Point& p) { return to_json(p); });
}
json to_json(const NormCertificate<SparsePoint>& c) {
  return certificate_json(c, [](const SparsePoint& p) { return to_json(p); });
}
json to_json(const NormCertificate<std::size_t>& c) {
  return certificate_json(c, [](std::size_t p) { return json(p); });
}

Point point_from_json(const json& j) {
  return guarded("point", [&] {
    if (!j.is_array()) throw ParseError("point must be an array of numbers");
    Point p;
    p.reserve(j.size());
    for (const auto& v : j) p.push_back(real_from_json(v));
    return p;
  });
}

SparsePoint sparse_point_from_json(const json& j) {
  return guarded("sparse point", [&] {
    if (j.is_array()) return tau(point_from_json(j));
    if (!j.is_object() || !j.contains("coords") || !j.at("coords").is_object())
      throw ParseError("sparse point must be {\"coords\": {\"index\": value, ...}}");
    std::vector<SparsePoint::Entry> entries;
    for (const auto& [key, val] : j.at("coords").items()) {
      std::size_t idx = 0;
      auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), idx);
      if (ec != std::errc{} || ptr != key.data() + key.size() || idx == 0)
        throw ParseError("sparse point index must be a positive integer, got \"" + key + "\"");
      entries.emplace_back(idx, real_from_json(val));
    }
    return SparsePoint(std::move(entries));
  });
}

Hypercube hypercube_from_json(const json& j) {
  return guarded("hypercube", [&] {
    return Hypercube(point_from_json(j.at("center")), real_from_json(j.at("edge")));
  });
}

VertexData vertex_data_from_json(const json& j) {
  return guarded("vertex data", [&] {
    Hypercube cube = hypercube_from_json(j.at("cube"));
    const std::size_t n = cube.dim();
    if (n >= 32) throw ParseError("vertex data dimension too large");
    std::vector<double> values(std::size_t{1} << n, 0.0);
    std::vector<bool> seen(values.size(), false);
    for (const auto& [key, val] : j.at("values").items()) {
      const SignVector s = SignVector::from_string(key);
      if (s.size() != n) throw ParseError("sign string \"" + key + "\" has the wrong length");
      if (seen[s.mask()]) throw ParseError("duplicate sign string \"" + key + "\"");
      seen[s.mask()] = true;
      values[s.mask()] = real_from_json(val);
    }
    for (bool b : seen)
      if (!b) throw ParseError("vertex data must list all 2^N vertices");
    return VertexData(std::move(cube), std::move(values));
  });
}

FinitePointedMetricSpace metric_space_from_json(const json& j) {
  return guarded("metric space", [&] {
    const std::size_t origin = j.value("origin", std::size_t{0});
    if (j.contains("embed_l1")) {
      std::vector<Point> coords;
      for (const auto& p : j.at("embed_l1")) coords.push_back(point_from_json(p));
      if (coords.empty()) throw ParseError("embed_l1 must list at least one point");
      for (const auto& c : coords)
        if (c.size() != coords.front().size()) throw ParseError("embed_l1 rows must share one dimension");
      return FinitePointedMetricSpace::from_l1_embedding(coords, origin);
    }
    const auto& rows = j.at("dist");
    DistanceMatrix d(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows.size()) throw ParseError("dist must be a square matrix");
      for (std::size_t k = 0; k < rows.size(); ++k) d(i, k) = real_from_json(rows[i][k]);
    }
    std::vector<std::string> labels;
    if (j.contains("points"))
      for (const auto& l : j.at("points")) labels.push_back(l.is_string() ? l.get<std::string>() : l.dump());
    return FinitePointedMetricSpace(std::move(labels), std::move(d), origin);
  });
}

AnyMolecule molecule_from_json(const json& j) {
  return guarded("molecule", [&]() -> AnyMolecule {
    const std::string space = j.at("space").get<std::string>();
    const auto& terms = j.at("terms");
    if (!terms.is_array()) throw ParseError("terms must be an array");
    if (space == "l1") {
      std::vector<Term<SparsePoint>> t;
      for (const auto& e : terms) t.push_back({sparse_point_from_json(e.at("point")), real_from_json(e.at("coeff"))});
      return MoleculeL1(SparsePoint{}, std::move(t));
    }
    if (space == "l1N") {
      std::size_t dim = j.value("dim", std::size_t{0});
      std::vector<Term<Point>> t;
      for (const auto& e : terms) {
        Point p = point_from_json(e.at("point"));
        if (dim == 0) dim = p.size();
        if (p.size() != dim) throw ParseError("l1N molecule points must all have dimension " + std::to_string(dim));
        t.push_back({std::move(p), real_from_json(e.at("coeff"))});
      }
      if (dim == 0) throw ParseError("l1N molecule needs \"dim\" when it has no terms");
      return MoleculeN(Point(dim, 0.0), std::move(t));
    }
    if (space == "finite") {
      auto metric = metric_space_from_json(j.at("metric"));
      std::vector<Term<std::size_t>> t;
      for (const auto& e : terms) {
        const auto idx = e.at("point").get<std::size_t>();
        if (idx >= metric.size()) throw ParseError("finite molecule point index out of range");
        t.push_back({idx, real_from_json(e.at("coeff"))});
      }
      const std::size_t origin = metric.origin();
      return FiniteMolecule{MoleculeFinite(origin, std::move(t)), std::move(metric)};
    }
    throw ParseError("unknown molecule space \"" + space + "\"");
  });
}

NormCertificate<Point> certificate_n_from_json(const json& j) {
  return guarded("certificate", [&] {
    NormCertificate<Point> c;
    c.value = real_from_json(j.at("value"));
    for (const auto& w : j.at("witness")) c.witness.emplace_back(point_from_json(w.at("point")), real_from_json(w.at("value")));
    return c;
  });
}

NormCertificate<SparsePoint> certificate_l1_from_json(const json& j) {
  return guarded("certificate", [&] {
    NormCertificate<SparsePoint> c;
    c.value = real_from_json(j.at("value"));
    for (const auto& w : j.at("witness"))
      c.witness.emplace_back(sparse_point_from_json(w.at("point")), real_from_json(w.at("value")));
    return c;
  });
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open input file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    return;
  }
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp + "'");
    out << text;
    if (!out) throw std::runtime_error("write to '" + tmp + "' failed");
  }
  std::filesystem::rename(tmp, path);
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) return std::to_string(v);
  return std::string(buf, ptr);
}

}  // namespace lipfree::io
