#include "torus_census/polygon.hpp"

#include "torus_census/errors.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace torus_census::polygon {

using torus_census::to_string;

namespace {

Point sub(const Point& a, const Point& b) { return {a[0] - b[0], a[1] - b[1]}; }
Point add(const Point& a, const Point& b) { return {a[0] + b[0], a[1] + b[1]}; }
Point scale(const IntVec& v, const Rational& t) { return {t * v[0], t * v[1]}; }
Rational cross(const Point& a, const Point& b) { return a[0] * b[1] - a[1] * b[0]; }
Integer cross(const IntVec& a, const IntVec& b) { return a[0] * b[1] - a[1] * b[0]; }

std::size_t prev(std::size_t i, std::size_t n) { return (i + n - 1) % n; }
std::size_t next(std::size_t i, std::size_t n) { return (i + 1) % n; }

IntVec outward_normal(const IntVec& d) { return {d[1], -d[0]}; }

void require_delzant(const RationalPolygon& poly) {
  auto check = is_delzant(poly);
  if (!check.ok) {
    std::string msg = "polygon is not Delzant";
    for (const auto& d : check.diagnostics) msg += "; " + d;
    throw PreconditionError(msg);
  }
}

std::string point_string(const Point& p) { return "(" + to_string(p[0]) + ", " + to_string(p[1]) + ")"; }

}  // namespace

std::vector<Rational> RationalPolygon::flattened() const {
  std::vector<Rational> out;
  out.reserve(2 * vertices.size());
  for (const auto& v : vertices) {
    out.push_back(v[0]);
    out.push_back(v[1]);
  }
  return out;
}

bool operator<(const RationalPolygon& a, const RationalPolygon& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return compare_lex(a.flattened(), b.flattened()) < 0;
}

RationalPolygon make_polygon(std::vector<Point> vertices) {
  const std::size_t n = vertices.size();
  if (n < 3) throw PreconditionError("polygon needs at least 3 vertices");
  for (std::size_t i = 0; i < n; ++i) {
    Point e_in = sub(vertices[i], vertices[prev(i, n)]);
    Point e_out = sub(vertices[next(i, n)], vertices[i]);
    Rational turn = cross(e_in, e_out);
    if (turn == 0) throw PreconditionError("vertices collinear or repeated at " + point_string(vertices[i]));
    if (turn < 0) throw PreconditionError("polygon is not convex and counterclockwise at " + point_string(vertices[i]));
  }
  RationalPolygon p{std::move(vertices)};
  // a star-shaped self-overlapping loop turns left everywhere but winds more than once
  if (euclidean_area(p) <= 0) throw PreconditionError("polygon is not counterclockwise");
  std::size_t upward_switches = 0;
  for (std::size_t i = 0; i < n; ++i) {
    Point e1 = sub(p.vertex(i + 1), p.vertex(i));
    Point e2 = sub(p.vertex(i + 2), p.vertex(i + 1));
    bool up1 = e1[1] > 0 || (e1[1] == 0 && e1[0] < 0);
    bool up2 = e2[1] > 0 || (e2[1] == 0 && e2[0] < 0);
    if (up1 != up2) ++upward_switches;
  }
  if (upward_switches != 2) throw PreconditionError("polygon winds more than once");
  return p;
}

// ---------------------------------------------------------------- maps

Integer UnimodularAffineMap::det() const { return matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0]; }

Point UnimodularAffineMap::apply(const Point& p) const {
  return {matrix[0][0] * p[0] + matrix[0][1] * p[1] + translation[0],
          matrix[1][0] * p[0] + matrix[1][1] * p[1] + translation[1]};
}

RationalPolygon UnimodularAffineMap::apply(const RationalPolygon& poly) const {
  RationalPolygon out;
  for (const auto& v : poly.vertices) out.vertices.push_back(apply(v));
  if (det() < 0) std::reverse(out.vertices.begin(), out.vertices.end());
  return out;
}

UnimodularAffineMap UnimodularAffineMap::inverse() const {
  Integer d = det();
  if (d != 1 && d != -1) throw PreconditionError("map is not unimodular");
  UnimodularAffineMap inv;
  inv.matrix = {{{matrix[1][1] * d, -matrix[0][1] * d}, {-matrix[1][0] * d, matrix[0][0] * d}}};
  Point t = inv.apply(translation);
  inv.translation = {-(t[0]), -(t[1])};
  return inv;
}

UnimodularAffineMap UnimodularAffineMap::compose(const UnimodularAffineMap& other) const {
  UnimodularAffineMap out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.matrix[i][j] = matrix[i][0] * other.matrix[0][j] + matrix[i][1] * other.matrix[1][j];
  out.translation = apply(other.translation);
  return out;
}

std::pair<IntVec, Rational> primitive_direction(const Point& v) {
  if (v[0] == 0 && v[1] == 0) throw PreconditionError("zero vector has no direction");
  Integer den;
  mpz_lcm(den.get_mpz_t(), v[0].get_den_mpz_t(), v[1].get_den_mpz_t());
  Integer x = v[0].get_num() * (den / v[0].get_den());
  Integer y = v[1].get_num() * (den / v[1].get_den());
  Integer g = gcd(x, y);
  IntVec dir{x / g, y / g};
  Rational t(g, den);
  t.canonicalize();
  return {dir, t};
}

// ---------------------------------------------------------------- edge calculus

DelzantCheck is_delzant(const RationalPolygon& poly) {
  DelzantCheck out;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    IntVec u = primitive_direction(sub(poly.vertex(i + 1), poly.vertex(i))).first;
    IntVec w = primitive_direction(sub(poly.vertex(i + n - 1), poly.vertex(i))).first;
    Integer d = cross(u, w);
    if (d != 1 && d != -1) {
      out.ok = false;
      out.diagnostics.push_back("vertex " + std::to_string(i) + " " + point_string(poly.vertex(i)) +
                                ": edge directions (" + u[0].get_str() + "," + u[1].get_str() + "), (" +
                                w[0].get_str() + "," + w[1].get_str() + ") have determinant " + d.get_str());
    }
  }
  return out;
}

std::vector<EdgeData> edges(const RationalPolygon& poly) {
  std::vector<EdgeData> out;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    auto [dir, len] = primitive_direction(sub(poly.vertex(i + 1), poly.vertex(i)));
    out.push_back({i, dir, outward_normal(dir), len});
  }
  return out;
}

long self_intersection(const RationalPolygon& poly, std::size_t edge) {
  const std::size_t n = poly.size();
  if (edge >= n) throw PreconditionError("edge index " + std::to_string(edge) + " out of range");
  auto e = edges(poly);
  const IntVec& a = e[next(edge, n)].normal;
  const IntVec& b = e[prev(edge, n)].normal;
  return cross(a, b).get_si();
}

std::vector<std::vector<long>> intersection_matrix(const RationalPolygon& poly) {
  const std::size_t n = poly.size();
  std::vector<std::vector<long>> m(n, std::vector<long>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    m[i][i] = self_intersection(poly, i);
    m[i][next(i, n)] = m[next(i, n)][i] = 1;
  }
  return m;
}

Rational euclidean_area(const RationalPolygon& poly) {
  Rational twice = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) twice += cross(poly.vertex(i), poly.vertex(i + 1));
  return twice / 2;
}

PolygonInvariants invariants(const RationalPolygon& poly) {
  PolygonInvariants inv;
  inv.edge_count = poly.size();
  inv.b2 = poly.size() - 2;
  inv.euclidean_area = euclidean_area(poly);
  inv.perimeter = 0;
  for (const auto& e : edges(poly)) {
    inv.edge_areas.push_back(e.length);
    inv.perimeter += e.length;
  }
  for (std::size_t i = 0; i < poly.size(); ++i) inv.self_intersections.push_back(self_intersection(poly, i));
  return inv;
}

// ---------------------------------------------------------------- canonical form

CanonicalPolygon canonical_form(const RationalPolygon& poly) {
  require_delzant(poly);
  const std::size_t n = poly.size();
  bool have = false;
  CanonicalPolygon best;
  std::vector<Rational> best_key;
  for (std::size_t i = 0; i < n; ++i) {
    IntVec forward = primitive_direction(sub(poly.vertex(i + 1), poly.vertex(i))).first;
    IntVec backward = primitive_direction(sub(poly.vertex(i + n - 1), poly.vertex(i))).first;
    for (int orientation = 0; orientation < 2; ++orientation) {
      const IntVec& u = orientation == 0 ? forward : backward;
      const IntVec& w = orientation == 0 ? backward : forward;
      // A with A u = e1, A w = e2 is the inverse of [u w]
      UnimodularAffineMap cols;
      cols.matrix = {{{u[0], w[0]}, {u[1], w[1]}}};
      UnimodularAffineMap a = cols.inverse();
      Point moved = a.apply(poly.vertex(i));
      a.translation = {-moved[0], -moved[1]};
      RationalPolygon cand;
      for (std::size_t s = 0; s < n; ++s) {
        std::size_t idx = orientation == 0 ? (i + s) % n : (i + n - s) % n;
        cand.vertices.push_back(a.apply(poly.vertex(idx)));
      }
      auto key = cand.flattened();
      if (!have || compare_lex(key, best_key) < 0) {
        have = true;
        best_key = std::move(key);
        best = {std::move(cand), a};
      }
    }
  }
  return best;
}

bool equivalent(const RationalPolygon& p, const RationalPolygon& q) {
  if (p.size() != q.size()) return false;
  return canonical_form(p).polygon == canonical_form(q).polygon;
}

// ---------------------------------------------------------------- blow-ups

RationalPolygon blow_up(const RationalPolygon& poly, std::size_t vertex, const Rational& delta) {
  require_delzant(poly);
  const std::size_t n = poly.size();
  if (vertex >= n) throw PreconditionError("vertex index " + std::to_string(vertex) + " out of range");
  if (delta <= 0) throw PreconditionError("capacity must be positive");
  auto [u, out_len] = primitive_direction(sub(poly.vertex(vertex + 1), poly.vertex(vertex)));
  auto [w, in_len] = primitive_direction(sub(poly.vertex(vertex + n - 1), poly.vertex(vertex)));
  if (delta >= in_len)
    throw PreconditionError("capacity too large: " + to_string(delta) + " >= rational length " + to_string(in_len) +
                            " of edge " + std::to_string(prev(vertex, n)));
  if (delta >= out_len)
    throw PreconditionError("capacity too large: " + to_string(delta) + " >= rational length " +
                            to_string(out_len) + " of edge " + std::to_string(vertex));
  RationalPolygon out;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == vertex) {
      out.vertices.push_back(add(poly.vertex(i), scale(w, delta)));
      out.vertices.push_back(add(poly.vertex(i), scale(u, delta)));
    } else {
      out.vertices.push_back(poly.vertex(i));
    }
  }
  return out;
}

RationalPolygon blow_down(const RationalPolygon& poly, std::size_t edge) {
  require_delzant(poly);
  const std::size_t n = poly.size();
  if (edge >= n) throw PreconditionError("edge index " + std::to_string(edge) + " out of range");
  long si = self_intersection(poly, edge);
  if (si != -1) throw PreconditionError("edge not exceptional: self-intersection " + std::to_string(si));
  if (n <= 3) throw PreconditionError("edge not exceptional: triangle cannot be blown down");
  const Point& p = poly.vertex(edge);
  const Point& q = poly.vertex(edge + 1);
  Point d_in = sub(p, poly.vertex(edge + n - 1));
  Point d_out = sub(poly.vertex(edge + 2), q);
  // p + s d_in = q - t d_out
  Rational denom = cross(d_in, d_out);
  Point qp = sub(q, p);
  Rational s = cross(qp, d_out) / denom;
  Point x = {p[0] + s * d_in[0], p[1] + s * d_in[1]};
  RationalPolygon out;
  for (std::size_t i = 0; i < n; ++i) {
    if (i == edge) {
      out.vertices.push_back(x);
    } else if (i != next(edge, n)) {
      out.vertices.push_back(poly.vertex(i));
    }
  }
  if (edge == n - 1) {
    // vertex 0 was the far end of the removed edge
    out.vertices.erase(out.vertices.begin());
  }
  return out;
}

RationalPolygon delzant_triangle(const Rational& lambda) {
  if (lambda <= 0) throw PreconditionError("triangle size must be positive");
  return RationalPolygon{{{Rational(0), Rational(0)}, {lambda, Rational(0)}, {Rational(0), lambda}}};
}

RationalPolygon hirzebruch(const Rational& a, const Rational& b, long m) {
  if (m < 0) throw PreconditionError("slope m must be nonnegative");
  if (b <= 0) throw PreconditionError("height b must be positive");
  Rational half = Rational(m) * b / 2;
  if (a <= half) throw PreconditionError("need a > mb/2");
  if (m % 2 == 0 && a < b) throw PreconditionError("need a >= b");
  return RationalPolygon{{{Rational(0), Rational(0)}, {a + half, Rational(0)}, {a - half, b}, {Rational(0), b}}};
}

std::vector<RationalPolygon> enumerate_equivariant_blowups(const RationalPolygon& poly, const Rational& delta) {
  require_delzant(poly);
  std::set<RationalPolygon> out;
  auto e = edges(poly);
  const std::size_t n = poly.size();
  for (std::size_t v = 0; v < n; ++v) {
    if (delta >= e[v].length || delta >= e[prev(v, n)].length) continue;
    out.insert(canonical_form(blow_up(poly, v, delta)).polygon);
  }
  return {out.begin(), out.end()};
}

// ---------------------------------------------------------------- models

Rational ModelIdentification::line_area() const { return a + b / 2; }
Rational ModelIdentification::exceptional_area() const { return a - b / 2; }

std::string ModelIdentification::describe() const {
  std::ostringstream os;
  switch (kind) {
    case ModelKind::ProjectivePlane:
      os << "CP2(lambda=" << to_string(a) << ")";
      break;
    case ModelKind::Product:
      os << "S2xS2(a=" << to_string(a) << ", b=" << to_string(b) << ")";
      break;
    case ModelKind::Twisted:
      os << "CP2#-CP2(a=" << to_string(a) << ", b=" << to_string(b) << ", line=" << to_string(line_area())
         << ", exceptional=" << to_string(exceptional_area()) << ")";
      break;
  }
  os << " after " << blowdowns << " blow-down" << (blowdowns == 1 ? "" : "s");
  return os.str();
}

bool operator<(const ModelIdentification& x, const ModelIdentification& y) {
  if (x.blowdowns != y.blowdowns) return x.blowdowns < y.blowdowns;
  if (x.kind != y.kind) return x.kind < y.kind;
  if (x.a != y.a) return x.a < y.a;
  if (x.b != y.b) return x.b < y.b;
  return x.m < y.m;
}

ModelIdentification identify_quadrilateral(const RationalPolygon& poly) {
  if (poly.size() != 4) throw PreconditionError("not a quadrilateral");
  auto inv = invariants(poly);
  const auto& si = inv.self_intersections;
  for (std::size_t j = 0; j < 4; ++j) {
    long m = si[j];
    if (m < 0 || si[(j + 2) % 4] != -m || si[(j + 1) % 4] != 0 || si[(j + 3) % 4] != 0) continue;
    ModelIdentification id;
    id.m = m;
    id.a = (inv.edge_areas[j] + inv.edge_areas[(j + 2) % 4]) / 2;
    id.b = inv.edge_areas[(j + 1) % 4];
    if (m % 2 == 0) {
      id.kind = ModelKind::Product;
      if (m == 0 && id.a < id.b) std::swap(id.a, id.b);
    } else {
      id.kind = ModelKind::Twisted;
    }
    return id;
  }
  throw PreconditionError("no -1 edge and not a model polygon");
}

namespace {

std::set<ModelIdentification> classify_rec(const RationalPolygon& canon,
                                           std::map<RationalPolygon, std::set<ModelIdentification>>& memo) {
  if (auto it = memo.find(canon); it != memo.end()) return it->second;
  std::set<ModelIdentification> out;
  if (canon.size() == 3) {
    ModelIdentification id;
    id.kind = ModelKind::ProjectivePlane;
    id.a = edges(canon)[0].length;
    id.b = 0;
    out.insert(id);
  } else if (canon.size() == 4) {
    out.insert(identify_quadrilateral(canon));
  } else {
    bool any = false;
    for (std::size_t i = 0; i < canon.size(); ++i) {
      if (self_intersection(canon, i) != -1) continue;
      any = true;
      RationalPolygon down = canonical_form(blow_down(canon, i)).polygon;
      for (auto id : classify_rec(down, memo)) {
        ++id.blowdowns;
        out.insert(id);
      }
    }
    if (!any) throw PreconditionError("no -1 edge and not a model polygon");
  }
  memo[canon] = out;
  return out;
}

}  // namespace

std::vector<ModelIdentification> classify_model(const RationalPolygon& poly) {
  std::map<RationalPolygon, std::set<ModelIdentification>> memo;
  auto ids = classify_rec(canonical_form(poly).polygon, memo);
  return {ids.begin(), ids.end()};
}

std::vector<RationalPolygon> ruled_trapezoids(const Rational& a, const Rational& b, bool twisted) {
  if (b <= 0 || a <= 0) throw PreconditionError("trapezoid sides must be positive");
  if (!twisted && a < b) throw PreconditionError("need a >= b");
  std::vector<RationalPolygon> out;
  for (long m = twisted ? 1 : 0; Rational(m) * b / 2 < a; m += 2) out.push_back(hirzebruch(a, b, m));
  return out;
}

long count_toric_actions_ruled(const Rational& a, const Rational& b, bool twisted) {
  if (b <= 0 || a <= 0) throw PreconditionError("need a, b > 0");
  if (!twisted && a < b) throw PreconditionError("need a >= b");
  if (twisted && a <= b / 2) throw PreconditionError("need a > b/2");
  Rational ratio = a / b;
  if (twisted) ratio -= Rational(1, 2);
  long formula = ceil(ratio).get_si();
  std::set<RationalPolygon> distinct;
  for (const auto& t : ruled_trapezoids(a, b, twisted)) distinct.insert(canonical_form(t).polygon);
  if (static_cast<long>(distinct.size()) != formula)
    throw std::logic_error("trapezoid enumeration disagrees with the count formula");
  return formula;
}

std::string to_string(const RationalPolygon& poly) {
  std::string s = "[";
  for (std::size_t i = 0; i < poly.size(); ++i) {
    if (i) s += ", ";
    s += point_string(poly.vertices[i]);
  }
  return s + "]";
}

}  // namespace torus_census::polygon
