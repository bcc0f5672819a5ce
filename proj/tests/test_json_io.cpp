#include "support.hpp"
#include "torus_census/errors.hpp"
#include "torus_census/json_io.hpp"

#include <doctest.h>

using namespace torus_census;
using namespace torus_census::json_io;
using support::R;
using support::Rs;

TEST_CASE("rationals are written in lowest terms") {
  CHECK(to_json(make_rational(6, -4)) == "-3/2");
  CHECK(to_json(R("4")) == "4");
  CHECK(rational_from_json("10/4") == R("5/2"));
  CHECK_THROWS_AS(rational_from_json("1/0"), ParseError);
  CHECK_THROWS_AS(rational_from_json("x"), ParseError);
  CHECK_THROWS_AS(rational_from_json(json::array()), ParseError);
}

TEST_CASE("symplectic data round trip") {
  auto w = lattice::SymplecticData::rational(R("1"), Rs({"1/3", "1/4"}));
  CHECK(symplectic_from_json(to_json(w)) == w);
  auto r = lattice::SymplecticData::ruled(true, 2, R("5/2"), Rs({"1/5"}), R("3/2"));
  CHECK(symplectic_from_json(to_json(r)) == r);
  CHECK(symplectic_from_json(json::parse(R"({"lambda":"1","capacities":["1/3","1/4"]})")) == w);
}

TEST_CASE("homology classes round trip") {
  auto b = lattice::Basis::rational(3);
  lattice::HomologyClass c(b, {1, -1, -1, 0});
  auto j = to_json(c);
  CHECK(class_from_json(j) == c);
  CHECK(j["symbolic"] == c.to_string());
}

TEST_CASE("polygon and graph round trip") {
  for (const auto& p : support::polygon_corpus()) {
    CHECK(polygon_from_json(to_json(p)) == p);
    auto g = circle::graph_from_polygon(p, {1, 2});
    CHECK(graph_from_json(to_json(g)) == g);
  }
  auto s = circle::ruled_base_graph(2, 0, R("5/2"), false);
  CHECK(graph_from_json(to_json(s)) == s);
}

TEST_CASE("graph schema from the documentation parses") {
  auto g = graph_from_json(json::parse(
      R"({"vertices":[{"id":0,"moment":"0","surface":{"genus":2,"area":"5/2"}},{"id":1,"moment":"1","weights":[1,-1]}],"edges":[]})"));
  CHECK(g.vertices.size() == 2);
  CHECK(g.vertex(0).surface);
  CHECK(g.vertex(0).genus == 2);
  CHECK(g.vertex(1).weights == std::array<long, 2>{1, -1});
}

TEST_CASE("spec round trip") {
  auto a = census::ManifoldSpec::cp2(R("1"), Rs({"1/3", "1/4"}));
  CHECK(spec_from_json(to_json(a)) == a);
  auto b = census::ManifoldSpec::ruled(false, 1, R("3/2"), Rs({"1/4"}), R("1"));
  CHECK(spec_from_json(to_json(b)) == b);
  CHECK(spec_from_json(json::parse(R"({"base":{"kind":"cp2","lambda":"1"},"capacities":["1/3","1/4"]})")) == a);
}

TEST_CASE("census result round trip") {
  auto r = census::run_census(census::ManifoldSpec::ruled(false, 1, R("3/2"), Rs({"1/4"})));
  auto j = to_json(r);
  auto back = census_from_json(j);
  CHECK(to_json(back) == j);
  CHECK(j["counts"]["total"] == r.toric.size() + r.maximal_circles.size());
}

TEST_CASE("documents load inline or from files and fail cleanly") {
  CHECK(load_document(R"({"a":1})")["a"] == 1);
  CHECK_THROWS_AS(load_document("/nonexistent/file.json"), ParseError);
  CHECK_THROWS_AS(load_document("{not json"), ParseError);
  CHECK_THROWS_AS(polygon_from_json(json::parse(R"({"vertices":[["0"]]})")), ParseError);
  CHECK_THROWS_AS(spec_from_json(json::parse(R"({"base":{"kind":"torus"}})")), ParseError);
}
