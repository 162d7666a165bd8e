#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "lipfree/io.hpp"

using namespace lipfree;
using io::json;

TEST_CASE("molecule documents") {
  const auto l1 = io::molecule_from_json(json::parse(R"({"space": "l1", "terms": [
      {"point": {"coords": {"1": 0.5, "4": -1}}, "coeff": 2},
      {"point": [0, 0.25], "coeff": -1}]})"));
  const auto& mu = std::get<MoleculeL1>(l1);
  REQUIRE(mu.size() == 2);
  const auto has = [&](const SparsePoint& p, double a) {
    return std::any_of(mu.terms().begin(), mu.terms().end(), [&](const auto& t) { return t.point == p && t.coeff == a; });
  };
  CHECK(has(SparsePoint({{1, 0.5}, {4, -1.0}}), 2.0));
  CHECK(has(SparsePoint({{2, 0.25}}), -1.0));

  const auto n = io::molecule_from_json(json::parse(R"({"space": "l1N", "dim": 2, "terms": []})"));
  CHECK(std::get<MoleculeN>(n).origin().size() == 2);

  const auto fin = io::molecule_from_json(json::parse(R"({"space": "finite",
      "metric": {"points": ["o", "a"], "dist": [[0, 1.5], [1.5, 0]], "origin": 0},
      "terms": [{"point": 1, "coeff": 2}]})"));
  const auto& fm = std::get<io::FiniteMolecule>(fin);
  CHECK(free_norm(fm.molecule, fm.space).value == doctest::Approx(3.0));
}

TEST_CASE("malformed input raises ParseError") {
  CHECK_THROWS_AS(io::molecule_from_json(json::parse(R"({"space": "l2", "terms": []})")), io::ParseError);
  CHECK_THROWS_AS(io::molecule_from_json(json::parse(R"({"terms": []})")), io::ParseError);
  CHECK_THROWS_AS(io::molecule_from_json(json::parse(R"({"space": "l1N", "terms": [{"point": [1], "coeff": "x"}]})")),
                  io::ParseError);
  CHECK_THROWS_AS(io::molecule_from_json(json::parse(R"({"space": "l1N", "terms": [
      {"point": [1], "coeff": 1}, {"point": [1, 2], "coeff": 1}]})")),
                  io::ParseError);
  CHECK_THROWS_AS(io::sparse_point_from_json(json::parse(R"({"coords": {"0": 1}})")), io::ParseError);
  CHECK_THROWS_AS(io::sparse_point_from_json(json::parse(R"({"coords": {"x": 1}})")), io::ParseError);
  CHECK_THROWS_AS(io::metric_space_from_json(json::parse(R"({"dist": [[0, 1], [1]]})")), io::ParseError);
  CHECK_THROWS_AS(io::metric_space_from_json(json::parse(R"({"dist": [[0, 1, 5], [1, 0, 1], [5, 1, 0]]})")),
                  io::ParseError);
  CHECK_THROWS_AS(io::vertex_data_from_json(json::parse(R"({"cube": {"center": [0], "edge": 1}, "values": {"+": 1}})")),
                  io::ParseError);
  CHECK_THROWS_AS(io::read_json_file("/nonexistent/file.json"), io::ParseError);
}

TEST_CASE("vertex data document") {
  const auto v = io::vertex_data_from_json(
      json::parse(R"({"cube": {"center": [0, 0], "edge": 2}, "values": {"++": 1, "+-": 0, "-+": 0, "--": 0}})"));
  CHECK(lambda_eval(v, Point{0, 0}) == 0.25);
  CHECK(io::to_json(v)["values"]["++"] == 1.0);
}

TEST_CASE("embedded metric space round trip") {
  const auto m = io::metric_space_from_json(json::parse(R"({"embed_l1": [[0, 0], [1, 2], [-1, 0.5]], "origin": 0})"));
  CHECK(m(1, 2) == 3.5);
  const auto back = io::metric_space_from_json(io::to_json(m));
  CHECK(back(1, 2) == 3.5);
}

TEST_CASE("shortest round-trip doubles") {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, -2.5, 123456789.125}) CHECK(std::stod(io::format_double(v)) == v);
}

TEST_CASE("atomic output") {
  const auto dir = std::filesystem::temp_directory_path() / "lipfree_io_test";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "out.txt").string();
  io::write_output(path, "first\n");
  io::write_output(path, "second\n");
  std::ifstream in(path);
  std::string line;
  std::getline(in, line);
  CHECK(line == "second");
  CHECK_FALSE(std::filesystem::exists(path + ".tmp"));
  std::filesystem::remove_all(dir);
}
