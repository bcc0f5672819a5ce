#include "support.hpp"
#include "torus_census/errors.hpp"

#include <doctest.h>

using namespace torus_census;
using namespace torus_census::polygon;
using support::R;

TEST_CASE("corpus is large enough and Delzant") {
  auto corpus = support::polygon_corpus();
  CHECK(corpus.size() >= 20);
  for (const auto& p : corpus) CHECK(is_delzant(p).ok);
}

TEST_CASE("square invariants") {
  auto sq = hirzebruch(R("1"), R("1"), 0);
  auto inv = invariants(sq);
  CHECK(inv.edge_count == 4);
  CHECK(inv.b2 == 2);
  CHECK(inv.euclidean_area == 1);
  CHECK(inv.perimeter == 4);
  CHECK(inv.self_intersections == std::vector<long>{0, 0, 0, 0});
}

TEST_CASE("triangle invariants") {
  auto t = delzant_triangle(R("2"));
  auto inv = invariants(t);
  CHECK(inv.euclidean_area == 2);
  CHECK(inv.perimeter == 6);
  CHECK(inv.self_intersections == std::vector<long>{1, 1, 1});
}

TEST_CASE("non-Delzant and malformed polygons are rejected") {
  RationalPolygon bad{{{R("0"), R("0")}, {R("2"), R("0")}, {R("0"), R("1")}}};
  auto c = is_delzant(bad);
  CHECK_FALSE(c.ok);
  CHECK_FALSE(c.diagnostics.empty());
  RationalPolygon irrational_slope{{{R("0"), R("0")}, {R("1"), R("0")}, {R("1/3"), R("1/2")}}};
  CHECK_FALSE(is_delzant(irrational_slope).ok);
  CHECK_THROWS(make_polygon({{R("0"), R("0")}, {R("1"), R("0")}}));
}

TEST_CASE("area and perimeter match independent formulas on the corpus") {
  for (const auto& p : support::polygon_corpus()) {
    auto inv = invariants(p);
    CHECK(inv.euclidean_area == support::shoelace(p));
    CHECK(inv.perimeter == support::lattice_perimeter(p));
    CHECK(inv.b2 == inv.edge_count - 2);
  }
}

TEST_CASE("self-intersections satisfy the Noether identity") {
  for (const auto& p : support::polygon_corpus()) {
    auto inv = invariants(p);
    long sum = 0;
    for (long s : inv.self_intersections) sum += s;
    CHECK(sum == 12 - 3 * static_cast<long>(inv.edge_count));
  }
}

TEST_CASE("adjunction row sums of the intersection matrix") {
  for (const auto& p : support::polygon_corpus()) {
    auto m = intersection_matrix(p);
    for (std::size_t i = 0; i < m.size(); ++i) {
      long row = 0;
      for (long x : m[i]) row += x;
      // D_i . (-K) = D_i^2 + 2 for an invariant sphere
      CHECK(row == self_intersection(p, i) + 2);
    }
  }
}

TEST_CASE("blow-up bookkeeping on the corpus") {
  int checked = 0;
  for (const auto& p : support::polygon_corpus()) {
    auto es = edges(p);
    auto before = invariants(p);
    for (std::size_t v = 0; v < p.size(); ++v) {
      Rational room = std::min(es[v].length, es[(v + p.size() - 1) % p.size()].length);
      for (Rational delta : {Rational(room / 3), Rational(room / 2)}) {
        auto q = blow_up(p, v, delta);
        auto after = invariants(q);
        CHECK(is_delzant(q).ok);
        CHECK(after.euclidean_area == before.euclidean_area - delta * delta / 2);
        CHECK(after.perimeter == before.perimeter - delta);
        CHECK(after.edge_count == before.edge_count + 1);
        // some -1 edge of length delta blows down to the original
        bool found = false;
        for (std::size_t e = 0; e < q.size(); ++e)
          if (self_intersection(q, e) == -1 && edges(q)[e].length == delta && equivalent(blow_down(q, e), p)) found = true;
        CHECK(found);
        ++checked;
      }
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("blow-up preconditions") {
  auto t = delzant_triangle(R("1"));
  CHECK_THROWS_AS(blow_up(t, 0, R("1")), PreconditionError);
  CHECK_THROWS_AS(blow_up(t, 0, R("0")), PreconditionError);
  CHECK_THROWS_AS(blow_up(t, 7, R("1/4")), PreconditionError);
  CHECK_THROWS_AS(blow_down(t, 0), PreconditionError);
}

TEST_CASE("canonical form is invariant under random unimodular images") {
  std::mt19937_64 rng(20261018);
  for (const auto& p : support::polygon_corpus()) {
    auto c = canonical_form(p);
    auto moved = c.map.apply(p).vertices;
    CHECK(std::set<Point>(moved.begin(), moved.end()) == std::set<Point>(c.polygon.vertices.begin(), c.polygon.vertices.end()));
    CHECK(canonical_form(c.polygon).polygon == c.polygon);
    for (int trial = 0; trial < 100; ++trial) {
      auto g = support::random_unimodular(rng);
      CHECK(g.det() * g.det() == 1);
      auto image = g.apply(p);
      REQUIRE(canonical_form(image).polygon == c.polygon);
    }
  }
}

TEST_CASE("affine maps compose and invert") {
  std::mt19937_64 rng(7);
  auto t = delzant_triangle(R("1"));
  for (int i = 0; i < 20; ++i) {
    auto a = support::random_unimodular(rng);
    auto b = support::random_unimodular(rng);
    CHECK(a.inverse().apply(a.apply(t)) == t);
    CHECK(a.compose(b).apply(t) == a.apply(b.apply(t)));
  }
}

TEST_CASE("distinct Hirzebruch trapezoids are inequivalent") {
  CHECK_FALSE(equivalent(hirzebruch(R("2"), R("1"), 0), hirzebruch(R("3/2"), R("1"), 1)));
  CHECK_FALSE(equivalent(hirzebruch(R("2"), R("1"), 0), hirzebruch(R("2"), R("1"), 2)));
  auto tall = make_polygon({{R("0"), R("0")}, {R("1"), R("0")}, {R("1"), R("2")}, {R("0"), R("2")}});
  CHECK(equivalent(tall, hirzebruch(R("2"), R("1"), 0)));
}

TEST_CASE("quadrilateral identification recovers the parameters") {
  auto id = identify_quadrilateral(hirzebruch(R("5/2"), R("1"), 2));
  CHECK(id.kind == ModelKind::Product);
  CHECK(id.m == 2);
  CHECK(id.a == R("5/2"));
  CHECK(id.b == R("1"));
  auto tw = identify_quadrilateral(hirzebruch(R("2"), R("1"), 1));
  CHECK(tw.kind == ModelKind::Twisted);
  CHECK(tw.line_area() == R("5/2"));
  CHECK(tw.exceptional_area() == R("3/2"));
}

TEST_CASE("model identification of blown-up triangles") {
  // one chop already gives a trapezoid: the twisted bundle with line 1 and exceptional 1/3
  auto once = blow_up(delzant_triangle(R("1")), 0, R("1/3"));
  auto ids = classify_model(once);
  REQUIRE(ids.size() == 1);
  CHECK(ids[0].kind == ModelKind::Twisted);
  CHECK(ids[0].blowdowns == 0);
  CHECK(ids[0].line_area() == 1);
  CHECK(ids[0].exceptional_area() == R("1/3"));

  auto twice = blow_up(once, 2, R("1/4"));
  bool twisted_with_one = false;
  for (const auto& m : classify_model(twice)) {
    CHECK(m.blowdowns == 1);
    if (m.kind == ModelKind::Twisted && m.line_area() == 1 && m.exceptional_area() == R("1/3")) twisted_with_one = true;
  }
  CHECK(twisted_with_one);
}

TEST_CASE("equivariant blow-ups of the triangle") {
  auto ups = enumerate_equivariant_blowups(delzant_triangle(R("1")), R("1/4"));
  CHECK(ups.size() == 1);
  auto sq = enumerate_equivariant_blowups(hirzebruch(R("2"), R("1"), 0), R("1/4"));
  CHECK(sq.size() == 1);
  auto tz = enumerate_equivariant_blowups(hirzebruch(R("3"), R("1"), 2), R("1/4"));
  CHECK(tz.size() == 2);
}

TEST_CASE("toric actions on ruled surfaces count the trapezoids") {
  struct Row {
    const char* ratio;
    long product, twisted;
  };
  for (Row r : std::initializer_list<Row>{{"1", 1, 1}, {"3/2", 2, 1}, {"2", 2, 2}, {"5/2", 3, 2}, {"3", 3, 3}, {"10/3", 4, 3}}) {
    CHECK(count_toric_actions_ruled(R(r.ratio), R("1"), false) == r.product);
    CHECK(count_toric_actions_ruled(R(r.ratio), R("1"), true) == r.twisted);
    CHECK(count_toric_actions_ruled(R(r.ratio) * 3, R("3"), false) == r.product);
  }
}
