#pragma once

// JSON encodings shared by the command-line tool.
//
//   point            [x1, ..., xN]
//   sparse point     {"coords": {"1": v1, "7": v7}}
//   hypercube        {"center": [...], "edge": R}
//   vertex data      {"cube": <hypercube>, "values": {"+-": v, ...}}
//   molecule         {"space": "l1" | "l1N" | "finite", "terms": [{"point": p, "coeff": a}, ...]}
//                    ("finite" molecules carry "metric": <metric space> and
//                    integer points)
//   metric space     {"points": [labels], "dist": [[...]], "origin": i}
//                    or {"embed_l1": [[coords], ...], "origin": i}
//   certificate      {"value": v, "witness": [{"point": p, "value": f}, ...]}

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

#include <json.hpp>

#include "lipfree/bap.hpp"
#include "lipfree/freespace.hpp"
#include "lipfree/geometry.hpp"
#include "lipfree/interp.hpp"
#include "lipfree/metric_space.hpp"

namespace lipfree::io {

using nlohmann::json;

/// Malformed or semantically invalid input document.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json to_json(const Point& p);
json to_json(const SparsePoint& p);
json to_json(const Hypercube& c);
json to_json(const VertexData& v);
json to_json(const FinitePointedMetricSpace& m);
json to_json(const MoleculeN& mu);
json to_json(const MoleculeL1& mu);
json to_json(const MoleculeFinite& mu, const FinitePointedMetricSpace& space);
json to_json(const NormCertificate<Point>& c);
json to_json(const NormCertificate<SparsePoint>& c);
json to_json(const NormCertificate<std::size_t>& c);

Point point_from_json(const json& j);
/// Accepts {"coords": {...}} or a dense array (read through tau).
SparsePoint sparse_point_from_json(const json& j);
Hypercube hypercube_from_json(const json& j);
VertexData vertex_data_from_json(const json& j);
FinitePointedMetricSpace metric_space_from_json(const json& j);

struct FiniteMolecule {
  MoleculeFinite molecule;
  FinitePointedMetricSpace space;
};

using AnyMolecule = std::variant<MoleculeN, MoleculeL1, FiniteMolecule>;

/// "l1N" molecules take their dimension from "dim" or the first point.
AnyMolecule molecule_from_json(const json& j);

/// Certificate parsers, used to round-trip command output.
NormCertificate<Point> certificate_n_from_json(const json& j);
NormCertificate<SparsePoint> certificate_l1_from_json(const json& j);

/// Reads a whole file and parses it; throws ParseError.
json read_json_file(const std::string& path);

/// Writes text to path via a temporary file and rename; "-" or empty means stdout.
void write_output(const std::string& path, const std::string& text);

/// Shortest decimal text that reads back to the same double.
std::string format_double(double v);

}  // namespace lipfree::io
