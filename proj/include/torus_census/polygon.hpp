#pragma once

// Delzant polygons: moment images of toric actions on symplectic 4-manifolds.
// Vertices are exact rational points in counterclockwise order; edge i runs
// from vertex i to vertex i+1.

#include "torus_census/rational.hpp"

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace torus_census::polygon {

using Point = std::array<Rational, 2>;
using IntVec = std::array<Integer, 2>;

struct RationalPolygon {
  std::vector<Point> vertices;

  std::size_t size() const { return vertices.size(); }
  const Point& vertex(std::size_t i) const { return vertices[i % vertices.size()]; }

  /// Flattened coordinates x0, y0, x1, y1, ...
  std::vector<Rational> flattened() const;

  friend bool operator==(const RationalPolygon&, const RationalPolygon&) = default;
  friend bool operator<(const RationalPolygon& a, const RationalPolygon& b);
};

/// Checks N >= 3, counterclockwise order and strict convexity. Throws PreconditionError.
RationalPolygon make_polygon(std::vector<Point> vertices);

struct EdgeData {
  std::size_t index = 0;
  IntVec direction;
  IntVec normal;  // outward: clockwise rotation of the direction
  Rational length;
};

/// x -> matrix * x + translation, with |det matrix| = 1.
struct UnimodularAffineMap {
  std::array<std::array<Integer, 2>, 2> matrix{{{Integer(1), Integer(0)}, {Integer(0), Integer(1)}}};
  Point translation{Rational(0), Rational(0)};

  static UnimodularAffineMap identity() { return {}; }
  Integer det() const;
  Point apply(const Point& p) const;
  /// Image polygon, re-ordered counterclockwise when the map reverses orientation.
  RationalPolygon apply(const RationalPolygon& poly) const;
  UnimodularAffineMap inverse() const;
  /// (*this) after other.
  UnimodularAffineMap compose(const UnimodularAffineMap& other) const;

  friend bool operator==(const UnimodularAffineMap&, const UnimodularAffineMap&) = default;
};

/// Primitive integer vector parallel to a nonzero rational vector, and the
/// rational factor t with v = t * primitive.
std::pair<IntVec, Rational> primitive_direction(const Point& v);

struct DelzantCheck {
  bool ok = true;
  std::vector<std::string> diagnostics;
};

DelzantCheck is_delzant(const RationalPolygon& poly);

std::vector<EdgeData> edges(const RationalPolygon& poly);

long self_intersection(const RationalPolygon& poly, std::size_t edge);

std::vector<std::vector<long>> intersection_matrix(const RationalPolygon& poly);

struct PolygonInvariants {
  std::size_t edge_count = 0;
  std::size_t b2 = 0;
  Rational euclidean_area;
  Rational perimeter;
  std::vector<Rational> edge_areas;
  std::vector<long> self_intersections;
};

PolygonInvariants invariants(const RationalPolygon& poly);

Rational euclidean_area(const RationalPolygon& poly);

struct CanonicalPolygon {
  RationalPolygon polygon;
  UnimodularAffineMap map;  // map.apply(input) has the same vertex cycle as polygon
};

CanonicalPolygon canonical_form(const RationalPolygon& poly);
bool equivalent(const RationalPolygon& p, const RationalPolygon& q);

/// Corner chop of rational size delta at the given vertex.
RationalPolygon blow_up(const RationalPolygon& poly, std::size_t vertex, const Rational& delta);
/// Glues a triangle along a -1 edge.
RationalPolygon blow_down(const RationalPolygon& poly, std::size_t edge);

RationalPolygon delzant_triangle(const Rational& lambda);
/// Trapezoid (0,0), (a+mb/2,0), (a-mb/2,b), (0,b).
RationalPolygon hirzebruch(const Rational& a, const Rational& b, long m);

/// Canonical forms of all admissible corner chops of size delta, sorted.
std::vector<RationalPolygon> enumerate_equivariant_blowups(const RationalPolygon& poly, const Rational& delta);

enum class ModelKind { ProjectivePlane, Product, Twisted };

/// A toric model reached by blowing down -1 edges. For the projective plane
/// a is the line area; for trapezoids a is the width and b the height.
/// For the twisted model line_area = a + b/2 and exceptional_area = a - b/2.
struct ModelIdentification {
  ModelKind kind = ModelKind::ProjectivePlane;
  Rational a;
  Rational b;
  long m = 0;
  int blowdowns = 0;

  Rational line_area() const;
  Rational exceptional_area() const;
  std::string describe() const;

  friend bool operator==(const ModelIdentification&, const ModelIdentification&) = default;
  friend bool operator<(const ModelIdentification& x, const ModelIdentification& y);
};

/// Identifies a Delzant quadrilateral as a trapezoid; throws if it is not one.
ModelIdentification identify_quadrilateral(const RationalPolygon& poly);

/// All distinct identifications reachable through any sequence of -1 edge blow-downs.
std::vector<ModelIdentification> classify_model(const RationalPolygon& poly);

/// Trapezoids Delta(a, b, m) with m of the parity of the bundle and a > mb/2.
std::vector<RationalPolygon> ruled_trapezoids(const Rational& a, const Rational& b, bool twisted);

/// ceil(a/b) for product, ceil(a/b - 1/2) for twisted; cross-checked against the trapezoid count.
long count_toric_actions_ruled(const Rational& a, const Rational& b, bool twisted);

std::string to_string(const RationalPolygon& poly);

}  // namespace torus_census::polygon
