#pragma once

// Shared fixtures and independent oracles for the test binaries.

#include "torus_census/circle_graph.hpp"
#include "torus_census/lattice.hpp"
#include "torus_census/polygon.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <vector>

namespace support {

using namespace torus_census;

inline Rational R(const char* s) { return parse_rational(s); }

inline std::vector<Rational> Rs(std::initializer_list<const char*> xs) {
  std::vector<Rational> out;
  for (const char* x : xs) out.push_back(R(x));
  return out;
}

// Shoelace area, independent of the library.
inline Rational shoelace(const polygon::RationalPolygon& p) {
  Rational s = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto& a = p.vertex(i);
    const auto& b = p.vertex(i + 1);
    s += a[0] * b[1] - a[1] * b[0];
  }
  return s / 2;
}

inline Rational lattice_length(const polygon::Point& a, const polygon::Point& b) {
  Rational dx = b[0] - a[0], dy = b[1] - a[1];
  mpz_class l = lcm(mpz_class(dx.get_den()), mpz_class(dy.get_den()));
  mpz_class x = mpz_class(dx * l), y = mpz_class(dy * l);
  return Rational(gcd(x, y)) / Rational(l);
}

inline Rational lattice_perimeter(const polygon::RationalPolygon& p) {
  Rational s = 0;
  for (std::size_t i = 0; i < p.size(); ++i) s += lattice_length(p.vertex(i), p.vertex(i + 1));
  return s;
}

// At least twenty Delzant polygons of assorted shapes.
inline std::vector<polygon::RationalPolygon> polygon_corpus() {
  std::vector<polygon::RationalPolygon> out;
  for (const char* l : {"1", "2", "7/3"}) out.push_back(polygon::delzant_triangle(R(l)));
  struct H {
    const char *a, *b;
    long m;
  };
  for (H h : std::initializer_list<H>{{"1", "1", 0},
                                      {"2", "1", 0},
                                      {"5/2", "1/2", 0},
                                      {"1", "1", 1},
                                      {"3/2", "1", 1},
                                      {"3", "1/2", 1},
                                      {"2", "1", 2},
                                      {"3/2", "1/2", 2},
                                      {"5/2", "1", 3},
                                      {"1", "1/2", 3}})
    out.push_back(polygon::hirzebruch(R(h.a), R(h.b), h.m));
  auto tri = polygon::delzant_triangle(R("1"));
  auto one = polygon::blow_up(tri, 0, R("1/3"));
  auto two = polygon::blow_up(one, 2, R("1/4"));
  out.push_back(one);
  out.push_back(two);
  out.push_back(polygon::blow_up(two, 4, R("1/5")));
  auto sq = polygon::hirzebruch(R("2"), R("1"), 0);
  auto sq1 = polygon::blow_up(sq, 1, R("1/2"));
  out.push_back(sq1);
  out.push_back(polygon::blow_up(sq1, 3, R("1/3")));
  auto tz = polygon::hirzebruch(R("3"), R("1"), 2);
  out.push_back(polygon::blow_up(tz, 0, R("1/2")));
  out.push_back(polygon::blow_up(polygon::blow_up(tz, 0, R("1/2")), 3, R("1/4")));
  out.push_back(polygon::blow_up(polygon::delzant_triangle(R("2")), 1, R("3/4")));
  return out;
}

inline polygon::UnimodularAffineMap random_unimodular(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, 3), shift(-3, 3), den(1, 6);
  polygon::UnimodularAffineMap m;
  for (int s = 0; s < 6; ++s) {
    polygon::UnimodularAffineMap e;
    switch (pick(rng)) {
      case 0:
        e.matrix = {{{1, 1}, {0, 1}}};
        break;
      case 1:
        e.matrix = {{{1, 0}, {-1, 1}}};
        break;
      case 2:
        e.matrix = {{{0, 1}, {1, 0}}};
        break;
      default:
        e.matrix = {{{-1, 0}, {0, 1}}};
        break;
    }
    m = e.compose(m);
  }
  m.translation = {make_rational(shift(rng), den(rng)), make_rational(shift(rng), den(rng))};
  return m;
}

// Random translate, optional flip, random relabelling of ids.
inline circle::S1Graph random_image(const circle::S1Graph& g, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> shift(-7, 7), den(1, 5), coin(0, 1);
  const Rational t = make_rational(shift(rng), den(rng));
  const bool flip = coin(rng);
  std::vector<int> ids;
  for (const auto& v : g.vertices) ids.push_back(v.id);
  std::vector<int> fresh = ids;
  for (int& x : fresh) x += 100;
  std::shuffle(fresh.begin(), fresh.end(), rng);
  std::map<int, int> rename;
  for (std::size_t i = 0; i < ids.size(); ++i) rename[ids[i]] = fresh[i];

  circle::S1Graph out;
  for (const auto& v : g.vertices) {
    auto w = v;
    w.id = rename[v.id];
    if (flip) {
      w.moment = -w.moment;
      w.weights = {-v.weights[1], -v.weights[0]};
    }
    w.moment += t;
    out.vertices.push_back(w);
  }
  for (const auto& e : g.edges) {
    circle::GraphEdge f{rename[e.north], rename[e.south], e.k};
    if (flip) std::swap(f.north, f.south);
    out.edges.push_back(f);
  }
  std::shuffle(out.vertices.begin(), out.vertices.end(), rng);
  std::shuffle(out.edges.begin(), out.edges.end(), rng);
  return out;
}

// Duistermaat-Heckman profile rebuilt from fixed-point data alone. The slope
// jumps by 1/(w1 w2) at each isolated fixed point. A surface minimum does not
// record its self-intersection, so its opening slope is solved from the top label
// and only the volume is an independent check there.
struct DHProfile {
  Rational volume;
  Rational top_value;
  bool positive_inside = true;
};

inline DHProfile duistermaat_heckman(const circle::S1Graph& g) {
  std::vector<circle::FixedComponent> vs = g.vertices;
  std::sort(vs.begin(), vs.end(), [](const auto& a, const auto& b) { return a.moment < b.moment; });
  const Rational lo = vs.front().moment, hi = vs.back().moment;
  std::map<Rational, Rational> jumps;
  for (const auto& v : vs)
    if (!v.surface) jumps[v.moment] += Rational(1) / Rational(v.weights[0] * v.weights[1]);

  Rational value = vs.front().surface ? vs.front().area : Rational(0);
  Rational slope = 0;
  if (vs.front().surface) {
    Rational reach = value;
    for (const auto& [m, j] : jumps)
      if (m < hi) reach += j * (hi - m);
    slope = (vs.back().area - reach) / (hi - lo);
  }
  DHProfile out;
  Rational t = lo;
  auto it = jumps.begin();
  while (t < hi) {
    while (it != jumps.end() && it->first <= t) slope += (it++)->second;
    Rational next = it == jumps.end() ? hi : std::min(hi, it->first);
    Rational v_next = value + slope * (next - t);
    out.volume += (value + v_next) * (next - t) / 2;
    if (next < hi && v_next <= 0) out.positive_inside = false;
    value = v_next;
    t = next;
  }
  out.top_value = value;
  return out;
}

// Brute-force exceptional classes of Rational(k) in the box |c| <= 4: E^2 = -1, c1 = 1, area in (0, bound], E.L >= 0.
inline std::set<std::vector<long>> box_scan(const lattice::SymplecticData& omega, const Rational& bound) {
  const int k = omega.basis.blowups;
  std::set<std::vector<long>> out;
  std::vector<long> c(k + 1, -4);
  while (true) {
    long sq = c[0] * c[0], ch = 3 * c[0];
    Rational area = Rational(c[0]) * omega.base_area;
    for (int i = 1; i <= k; ++i) {
      sq -= c[i] * c[i];
      ch += c[i];
      area += Rational(c[i]) * omega.capacities[i - 1];
    }
    if (c[0] >= 0 && sq == -1 && ch == 1 && area > 0 && area <= bound) out.insert(c);
    int i = 0;
    while (i <= k && c[i] == 4) c[i++] = -4;
    if (i > k) break;
    ++c[i];
  }
  return out;
}

inline std::vector<long> as_longs(const lattice::HomologyClass& c) {
  std::vector<long> out;
  for (const auto& x : c.coeffs) out.push_back(x.get_si());
  return out;
}

}  // namespace support
