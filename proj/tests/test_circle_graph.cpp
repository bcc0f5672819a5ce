#include "support.hpp"
#include "torus_census/errors.hpp"

#include <doctest.h>

using namespace torus_census;
using namespace torus_census::circle;
using support::R;

namespace {

// every Z_k edge: moment drop equals k times the area, and k matches the weights at both poles
void check_edges(const S1Graph& g) {
  for (const auto& e : g.edges) {
    const auto& n = g.vertex(e.north);
    const auto& s = g.vertex(e.south);
    Rational area = edge_area(g, e);
    CHECK(area > 0);
    CHECK(n.moment - s.moment == Rational(e.k) * area);
    CHECK((n.weights[0] == -e.k || n.weights[1] == -e.k));
    CHECK((s.weights[0] == e.k || s.weights[1] == e.k));
  }
}

std::vector<S1Graph> base_graphs() {
  std::vector<S1Graph> out;
  for (const auto& p : support::polygon_corpus())
    for (std::array<long, 2> xi : {std::array<long, 2>{1, 0}, {0, 1}, {1, 2}, {2, -1}, {3, 1}}) out.push_back(graph_from_polygon(p, xi));
  out.push_back(ruled_base_graph(0, 0, R("2"), false));
  out.push_back(ruled_base_graph(1, 2, R("5/2"), false));
  out.push_back(ruled_base_graph(2, 1, R("3/2"), true));
  out.push_back(ruled_base_graph(3, 0, R("1"), false));
  return out;
}

Rational base_volume(const S1Graph& g) { return support::duistermaat_heckman(g).volume; }

}  // namespace

TEST_CASE("graphs from polygons are valid and carry the polygon volume") {
  for (const auto& p : support::polygon_corpus()) {
    for (std::array<long, 2> xi : {std::array<long, 2>{1, 0}, {0, 1}, {1, 2}, {2, -1}, {3, 1}, {1, -3}}) {
      auto g = graph_from_polygon(p, xi);
      auto check = validate(g);
      CHECK_MESSAGE(check.ok, to_string(g));
      check_edges(g);
      auto dh = support::duistermaat_heckman(g);
      CHECK(dh.volume == support::shoelace(p));
      CHECK(dh.positive_inside);
      const auto& top = *std::max_element(g.vertices.begin(), g.vertices.end(),
                                          [](const auto& a, const auto& b) { return a.moment < b.moment; });
      CHECK(dh.top_value == (top.surface ? top.area : Rational(0)));
    }
  }
}

TEST_CASE("graph of the triangle along (2,1)") {
  auto g = graph_from_polygon(polygon::delzant_triangle(R("1")), {2, 1});
  REQUIRE(g.vertices.size() == 3);
  REQUIRE(g.edges.size() == 1);
  CHECK(g.edges[0].k == 2);
  CHECK(edge_area(g, g.edges[0]) == 1);
  CHECK(g.min_moment() == 0);
  CHECK(g.max_moment() == 2);
}

TEST_CASE("ruled base graph volume") {
  auto g = ruled_base_graph(1, 2, R("5/2"), false);
  CHECK(validate(g).ok);
  CHECK(base_volume(g) == R("5/2"));
  CHECK_THROWS_AS(ruled_base_graph(1, 1, R("5/2"), false), PreconditionError);
  CHECK_THROWS_AS(ruled_base_graph(1, 6, R("5/2"), false), PreconditionError);
}

TEST_CASE("validation diagnostics") {
  S1Graph g;
  g.vertices.push_back(FixedComponent::isolated(0, R("0"), 1, 1));
  g.vertices.push_back(FixedComponent::isolated(1, R("0"), -1, -1));
  CHECK_FALSE(validate(g).ok);
  S1Graph h;
  h.vertices.push_back(FixedComponent::isolated(0, R("0"), 2, 1));
  h.vertices.push_back(FixedComponent::isolated(1, R("1"), -1, -1));
  auto c = validate(h);
  CHECK_FALSE(c.ok);
  CHECK_FALSE(c.diagnostics.empty());
}

TEST_CASE("blow-up at an isolated minimum") {
  auto g = graph_from_polygon(polygon::delzant_triangle(R("1")), {1, 2});
  int low = -1;
  for (const auto& v : g.vertices)
    if (v.moment == g.min_moment()) low = v.id;
  REQUIRE(low >= 0);
  REQUIRE(can_blow_up(g, low, R("1/4")).ok);
  auto h = blow_up(g, low, R("1/4"));
  CHECK(validate(h).ok);
  CHECK(h.vertices.size() == g.vertices.size() + 1);
  CHECK(base_volume(h) == base_volume(g) - R("1/32"));
}

TEST_CASE("blow-up at a fixed surface") {
  auto g = ruled_base_graph(2, 0, R("2"), false);
  REQUIRE(can_blow_up(g, 0, R("1/3")).ok);
  auto h = blow_up(g, 0, R("1/3"));
  CHECK(validate(h).ok);
  CHECK(h.vertex(0).area == R("5/3"));
  CHECK(base_volume(h) == R("2") - R("1/18"));
  CHECK_FALSE(can_blow_up(g, 0, R("2")).ok);
  CHECK_FALSE(can_blow_up(g, 0, R("1")).ok);
}

TEST_CASE("canonical form is invariant under translation, flip and relabelling") {
  std::mt19937_64 rng(99);
  for (const auto& g : base_graphs()) {
    auto c = canonical_form(g);
    CHECK(canonical_form(c) == c);
    for (int trial = 0; trial < 100; ++trial) {
      auto image = support::random_image(g, rng);
      REQUIRE(validate(image).ok);
      REQUIRE(canonical_form(image) == c);
    }
  }
}

TEST_CASE("canonical form separates inequivalent graphs") {
  auto a = graph_from_polygon(polygon::delzant_triangle(R("1")), {1, 0});
  auto b = graph_from_polygon(polygon::delzant_triangle(R("1")), {1, 2});
  CHECK_FALSE(canonical_form(a) == canonical_form(b));
  auto c = ruled_base_graph(1, 0, R("2"), false);
  auto d = ruled_base_graph(1, 2, R("2"), false);
  CHECK_FALSE(canonical_form(c) == canonical_form(d));
}

TEST_CASE("randomized blow-up fuzz keeps graphs valid") {
  std::mt19937_64 rng(314159);
  const auto bases = base_graphs();
  std::uniform_int_distribution<std::size_t> pick_base(0, bases.size() - 1);
  std::uniform_int_distribution<int> pick_den(3, 12);

  S1Graph g = bases[pick_base(rng)];
  Rational volume = base_volume(g);
  int steps = 0, stuck = 0, restarts = 0;
  while (steps < 200) {
    std::uniform_int_distribution<std::size_t> pick_vertex(0, g.vertices.size() - 1);
    int id = g.vertices[pick_vertex(rng)].id;
    Rational delta = (g.max_moment() - g.min_moment()) / Rational(pick_den(rng) * pick_den(rng));
    if (!can_blow_up(g, id, delta).ok) {
      if (++stuck > 40) {
        g = bases[pick_base(rng)];
        volume = base_volume(g);
        stuck = 0;
        ++restarts;
      }
      continue;
    }
    stuck = 0;
    g = blow_up(g, id, delta);
    ++steps;
    auto check = validate(g);
    REQUIRE_MESSAGE(check.ok, to_string(g));
    check_edges(g);
    volume -= delta * delta / 2;
    auto dh = support::duistermaat_heckman(g);
    CHECK(dh.volume == volume);
    CHECK(dh.positive_inside);
  }
  CHECK(steps == 200);
  MESSAGE("restarts: " << restarts);
}

TEST_CASE("extends-to-toric criterion") {
  CHECK(extends_to_toric(graph_from_polygon(polygon::delzant_triangle(R("1")), {1, 0})));
  CHECK_FALSE(extends_to_toric(ruled_base_graph(1, 0, R("1"), false)));
  CHECK(extends_to_toric(ruled_base_graph(0, 0, R("1"), false)));
}

TEST_CASE("equivariant blow-ups are deduplicated") {
  auto g = ruled_base_graph(1, 0, R("2"), false);
  auto ups = enumerate_equivariant_blowups(g, R("1/4"));
  CHECK(ups.size() == 1);
  for (const auto& u : ups) CHECK(validate(u).ok);
}
