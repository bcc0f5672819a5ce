// Acceptance run: one PASS/FAIL line per criterion, judged by exact equality.
// Exit status is 0 once every criterion has been evaluated; --strict turns any FAIL into exit 1.

#include "support.hpp"
#include "torus_census/census.hpp"

#include <cstring>
#include <functional>
#include <iostream>
#include <sstream>

using namespace torus_census;
using support::R;
using support::Rs;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;
  void expect(bool ok, const std::string& what) {
    if (!ok) {
      if (!pass) detail << "; ";
      pass = false;
      detail << what;
    }
  }
};

std::string str(const Rational& q) { return to_string(q); }

Verdict ruled_toric_counts() {
  Verdict v;
  for (const char* ratio : {"1", "3/2", "2", "5/2", "3", "10/3"})
    for (const char* b : {"1", "1/2", "3"}) {
      Rational a = R(ratio) * R(b);
      long want_p = ceil(R(ratio)).get_si();
      long want_t = ceil(R(ratio) - R("1/2")).get_si();
      long got_p = static_cast<long>(census::toric_census(census::ManifoldSpec::ruled(false, 0, a, {}, R(b))).size());
      long got_t = static_cast<long>(census::toric_census(census::ManifoldSpec::ruled(true, 0, a, {}, R(b))).size());
      v.expect(got_p == want_p, "product a/b=" + std::string(ratio) + " got " + std::to_string(got_p));
      v.expect(got_t == want_t, "twisted a/b=" + std::string(ratio) + " got " + std::to_string(got_t));
    }
  return v;
}

Verdict plane_uniqueness() {
  Verdict v;
  for (const char* l : {"1", "2", "7/3"}) {
    auto n = census::toric_census(census::ManifoldSpec::cp2(R(l))).size();
    v.expect(n == 1, "lambda=" + std::string(l) + " got " + std::to_string(n));
  }
  return v;
}

Verdict equal_blowup_grid() {
  Verdict v;
  int cells = 0;
  for (int k = 1; k <= 5; ++k)
    for (const char* d : {"1/5", "1/4", "3/10", "1/3", "2/5"}) {
      auto r = census::feasibility_report(k, R(d));
      if (!r.realizable) continue;  // no symplectic form with these capacities
      ++cells;
      std::string cell = "k=" + std::to_string(k) + " delta=" + d;
      v.expect(r.toric_agrees, cell + ": toric count " + std::to_string(r.toric_count) + " vs expected " +
                                   (r.toric_formula ? "nonempty" : "empty"));
      v.expect(r.circle_agrees, cell + ": maximal circle count " + std::to_string(r.maximal_circle_count) + " vs expected " +
                                    (r.circle_formula ? "nonempty" : "empty") +
                                    (r.circle_existence_agrees ? " (any circle action: agrees)" : " (any circle action: disagrees)"));
    }
  v.detail << (v.pass ? "" : "; ") << cells << " realizable cells";
  return v;
}

Verdict irrational_ruled_circles() {
  Verdict v;
  for (int g : {1, 2})
    for (const char* mu : {"1", "3/2", "5/2"}) {
      auto n = census::circle_census(census::ManifoldSpec::ruled(false, g, R(mu), {}, R("1"))).size();
      long want = ceil(R(mu)).get_si();
      v.expect(static_cast<long>(n) == want, "g=" + std::to_string(g) + " mu=" + mu + " got " + std::to_string(n));
    }
  return v;
}

Verdict small_rational_no_circles() {
  Verdict v;
  for (const char* x : {"1", "2", "7/3"}) {
    v.expect(census::circle_census(census::ManifoldSpec::cp2(R(x))).empty(), std::string("CP2 ") + x);
    v.expect(census::circle_census(census::ManifoldSpec::ruled(false, 0, R(x), {}, R("1"))).empty(), std::string("product ") + x);
    v.expect(census::circle_census(census::ManifoldSpec::ruled(true, 0, R(x), {}, R("1"))).empty(), std::string("twisted ") + x);
  }
  return v;
}

Verdict one_third_chain() {
  Verdict v;
  auto w = lattice::SymplecticData::rational(R("1"), Rs({"1/3", "1/4", "1/5"}));
  auto chains = lattice::minimal_blowdown_chains(w);
  v.expect(chains.size() == 1, std::to_string(chains.size()) + " chains");
  if (chains.size() == 1) {
    const auto& ch = chains[0];
    v.expect(ch.steps.size() == 3, "chain length");
    for (std::size_t i = 0; i < ch.steps.size() && i < 3; ++i)
      v.expect(ch.steps[i].original == lattice::HomologyClass::exceptional(w.basis, 3 - static_cast<int>(i)),
               "step " + std::to_string(i) + " is " + ch.steps[i].original.to_string());
    v.expect(ch.terminal.basis == lattice::Basis::rational(0) && ch.terminal.base_area == 1, "terminal " + ch.terminal.basis.describe());
  }
  // brute force: each stage has exactly one class of least area, the last capacity
  std::vector<Rational> caps = w.capacities;
  while (!caps.empty()) {
    auto s = lattice::SymplecticData::rational(R("1"), caps);
    auto all = support::box_scan(s, R("3"));
    Rational best = 100;
    std::size_t at_best = 0;
    for (const auto& c : all) {
      Rational a = lattice::area(lattice::HomologyClass(s.basis, std::vector<Integer>(c.begin(), c.end())), s);
      if (a < best) {
        best = a;
        at_best = 0;
      }
      at_best += a == best;
    }
    v.expect(at_best == 1 && best == caps.back(), "brute force at k=" + std::to_string(caps.size()));
    caps.pop_back();
  }
  return v;
}

Verdict exceptional_oracle() {
  Verdict v;
  const std::size_t expected[] = {1, 3, 6, 10, 16};
  for (int k = 1; k <= 5; ++k) {
    auto w = lattice::SymplecticData::rational(R("1"), std::vector<Rational>(k, R("1/10")));
    auto mine = lattice::enumerate_exceptional_candidates(w, R("2"));
    std::set<std::vector<long>> got;
    for (const auto& c : mine) got.insert(support::as_longs(c));
    auto oracle = support::box_scan(w, R("2"));
    v.expect(got == oracle, "k=" + std::to_string(k) + " differs from box scan");
    v.expect(got.size() == expected[k - 1], "k=" + std::to_string(k) + " size " + std::to_string(got.size()));
  }
  return v;
}

Verdict polygon_bookkeeping() {
  Verdict v;
  auto corpus = support::polygon_corpus();
  v.expect(corpus.size() >= 20, "corpus too small");
  for (std::size_t n = 0; n < corpus.size(); ++n) {
    const auto& p = corpus[n];
    std::string tag = "polygon " + std::to_string(n);
    auto before = polygon::invariants(p);
    auto es = polygon::edges(p);
    for (std::size_t i = 0; i < p.size(); ++i) {
      Rational delta = std::min(es[i].length, es[(i + p.size() - 1) % p.size()].length) / 2;
      auto q = polygon::blow_up(p, i, delta);
      auto after = polygon::invariants(q);
      v.expect(after.euclidean_area - before.euclidean_area == -delta * delta / 2, tag + " area");
      v.expect(after.perimeter - before.perimeter == -delta, tag + " perimeter");
      v.expect(after.edge_count == before.edge_count + 1, tag + " edge count");
      bool round_trip = false;
      for (std::size_t e = 0; e < q.size(); ++e)
        if (polygon::self_intersection(q, e) == -1 && polygon::edges(q)[e].length == delta &&
            polygon::equivalent(polygon::blow_down(q, e), p))
          round_trip = true;
      v.expect(round_trip, tag + " new -1 edge / blow-down round trip");
    }
    auto m = polygon::intersection_matrix(p);
    for (std::size_t i = 0; i < m.size(); ++i) {
      long row = 0;
      for (long x : m[i]) row += x;
      v.expect(row == polygon::self_intersection(p, i) + 2, tag + " adjunction row " + std::to_string(i));
    }
  }
  return v;
}

Verdict canonical_forms() {
  Verdict v;
  std::mt19937_64 rng(2718);
  auto corpus = support::polygon_corpus();
  for (std::size_t n = 0; n < corpus.size(); ++n) {
    auto c = polygon::canonical_form(corpus[n]).polygon;
    v.expect(polygon::canonical_form(c).polygon == c, "polygon idempotence " + std::to_string(n));
    for (int t = 0; t < 100; ++t)
      v.expect(polygon::canonical_form(support::random_unimodular(rng).apply(corpus[n])).polygon == c,
               "polygon " + std::to_string(n) + " image " + std::to_string(t));
  }
  std::vector<circle::S1Graph> graphs;
  for (const auto& p : corpus)
    for (std::array<long, 2> xi : {std::array<long, 2>{1, 0}, {1, 2}, {3, -1}}) graphs.push_back(circle::graph_from_polygon(p, xi));
  graphs.push_back(circle::ruled_base_graph(1, 2, R("5/2"), false));
  graphs.push_back(circle::ruled_base_graph(2, 1, R("3/2"), true));
  for (std::size_t n = 0; n < graphs.size(); ++n) {
    auto c = circle::canonical_form(graphs[n]);
    v.expect(circle::canonical_form(c) == c, "graph idempotence " + std::to_string(n));
    for (int t = 0; t < 100; ++t)
      v.expect(circle::canonical_form(support::random_image(graphs[n], rng)) == c,
               "graph " + std::to_string(n) + " image " + std::to_string(t));
  }
  return v;
}

Verdict graph_fuzz() {
  Verdict v;
  std::mt19937_64 rng(161803);
  std::vector<circle::S1Graph> bases;
  for (const auto& p : support::polygon_corpus()) bases.push_back(circle::graph_from_polygon(p, {1, 2}));
  bases.push_back(circle::ruled_base_graph(1, 2, R("5/2"), false));
  bases.push_back(circle::ruled_base_graph(2, 1, R("3/2"), true));
  bases.push_back(circle::ruled_base_graph(0, 0, R("2"), false));
  std::uniform_int_distribution<std::size_t> pick_base(0, bases.size() - 1);
  std::uniform_int_distribution<int> pick_den(3, 12);

  auto g = bases[pick_base(rng)];
  Rational volume = support::duistermaat_heckman(g).volume;
  int steps = 0, stuck = 0;
  while (steps < 200) {
    std::uniform_int_distribution<std::size_t> pick_vertex(0, g.vertices.size() - 1);
    int id = g.vertices[pick_vertex(rng)].id;
    Rational delta = (g.max_moment() - g.min_moment()) / Rational(pick_den(rng) * pick_den(rng));
    if (!circle::can_blow_up(g, id, delta).ok) {
      if (++stuck > 40) {
        g = bases[pick_base(rng)];
        volume = support::duistermaat_heckman(g).volume;
        stuck = 0;
      }
      continue;
    }
    stuck = 0;
    g = circle::blow_up(g, id, delta);
    ++steps;
    std::string tag = "step " + std::to_string(steps);
    v.expect(circle::validate(g).ok, tag + " invalid graph");
    for (const auto& e : g.edges) {
      const auto& n = g.vertex(e.north);
      const auto& s = g.vertex(e.south);
      v.expect(n.moment - s.moment == Rational(e.k) * circle::edge_area(g, e), tag + " edge moment spread");
      v.expect((n.weights[0] == -e.k || n.weights[1] == -e.k) && (s.weights[0] == e.k || s.weights[1] == e.k),
               tag + " edge weight mismatch");
    }
    volume -= delta * delta / 2;
    v.expect(support::duistermaat_heckman(g).volume == volume, tag + " volume " + str(volume));
  }
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  bool strict = argc > 1 && std::strcmp(argv[1], "--strict") == 0;
  const std::pair<const char*, std::function<Verdict()>> criteria[] = {
      {"ruled toric counts", ruled_toric_counts},
      {"CP2 uniqueness", plane_uniqueness},
      {"equal blow-up grid", equal_blowup_grid},
      {"maximal circles on irrational ruled surfaces", irrational_ruled_circles},
      {"no maximal circles on small rational manifolds", small_rational_no_circles},
      {"one-third chain", one_third_chain},
      {"exceptional-class oracle", exceptional_oracle},
      {"polygon bookkeeping", polygon_bookkeeping},
      {"canonical-form invariance", canonical_forms},
      {"graph blow-up invariant", graph_fuzz},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, run] : criteria) {
    ++index;
    Verdict v = run();
    failures += !v.pass;
    std::cout << (v.pass ? "PASS" : "FAIL") << " " << index << " " << name;
    std::string d = v.detail.str();
    if (!d.empty()) std::cout << ": " << d;
    std::cout << std::endl;
  }
  std::cout << (10 - failures) << "/10 criteria pass" << std::endl;
  return strict && failures ? 1 : 0;
}
