#include <doctest.h>

#include <fstream>
#include <sstream>

#include "dcomp/dot.hpp"
#include "dcomp/fixtures.hpp"
#include "dcomp/json_io.hpp"
#include "support.hpp"

using namespace dcomp;
using nlohmann::json;

TEST_CASE("complex json round trip") {
  testing::Rng rng(47);
  for (int t = 0; t < 20; ++t) {
    auto k = testing::random_complex(rng);
    CHECK(complex_from_json(complex_to_json(k)) == k);
  }
  CHECK(complex_from_json(complex_to_json(boundary_cube(3))) == boundary_cube(3));
}

TEST_CASE("complex json rejects malformed input") {
  json good = complex_to_json(standard_cube(1));
  auto dup = good;
  dup["faces"].push_back(dup["faces"][0]);
  CHECK_THROWS_AS(complex_from_json(dup), FormatError);
  auto gap = good;
  gap["faces"].erase(gap["faces"].begin());
  CHECK_THROWS_AS(complex_from_json(gap), FormatError);
  auto range = good;
  range["faces"][0][4] = 7;
  CHECK_THROWS_AS(complex_from_json(range), FormatError);
  CHECK_THROWS_AS(complex_from_json(json::parse("{\"faces\": []}")), FormatError);
  auto labels = good;
  labels["labels"] = json::array({json::array({"x"})});
  CHECK_THROWS_AS(complex_from_json(labels), FormatError);
  auto nolabels = good;
  nolabels.erase("labels");
  CHECK_FALSE(complex_from_json(nolabels).has_labels());
}

TEST_CASE("cell references") {
  auto k = standard_cube(2);
  CHECK(cell_from_json(json::parse("[1, 2]"), k) == CellId{1, 2});
  CHECK_THROWS_AS(cell_from_json(json::parse("[2, 1]"), k), FormatError);
  CHECK_THROWS_AS(cell_from_json(json::parse("[1]"), k), FormatError);
  CHECK(cell_to_json({1, 2}) == json::parse("[1, 2]"));
}

TEST_CASE("shipped fixture files match the builders") {
  const std::string dir = DCOMP_FIXTURE_DIR;
  for (const auto& fx : {ex_x1(), ex_x2(), ex_x3()}) {
    CAPTURE(fx.name);
    CHECK(complex_from_json(read_json_file(dir + "/" + fx.name + ".json")) == fx.complex);
    auto expected = read_json_file(dir + "/" + fx.name + ".coarsest.json");
    CHECK(system_from_json(expected["total"], fx.complex) == fx.system(Flavor::Total, {"A", "B", "C", "D"}));
  }
  CHECK(complex_from_json(read_json_file(dir + "/boundary_cube3.json")) == boundary_cube(3));
}

TEST_CASE("dot output") {
  auto k = standard_cube(1);
  auto dot = complex_to_dot(k);
  CHECK(dot.find("digraph") == 0);
  CHECK(dot.find("c1_0 -> c0_0") != std::string::npos);
  auto sys = system_to_dot(k, canonical_total(k));
  CHECK(sys.find("fillcolor=\"#") != std::string::npos);
}
