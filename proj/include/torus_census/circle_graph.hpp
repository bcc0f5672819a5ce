#pragma once

// Labelled graphs of Hamiltonian circle actions on symplectic 4-manifolds.
// Vertices are fixed components labelled by their moment value; edges are
// Z_k-spheres (k >= 2) joining two isolated fixed points.

#include "torus_census/polygon.hpp"
#include "torus_census/rational.hpp"

#include <array>
#include <string>
#include <vector>

namespace torus_census::circle {

struct FixedComponent {
  int id = 0;
  Rational moment;
  bool surface = false;
  // surface data
  int genus = 0;
  Rational area;
  // isolated point data, stored in decreasing order
  std::array<long, 2> weights{0, 0};

  static FixedComponent isolated(int id, Rational moment, long w1, long w2);
  static FixedComponent fixed_surface(int id, Rational moment, int genus, Rational area);

  friend bool operator==(const FixedComponent&, const FixedComponent&) = default;
};

struct GraphEdge {
  int north = 0;
  int south = 0;
  long k = 2;

  friend bool operator==(const GraphEdge&, const GraphEdge&) = default;
};

struct S1Graph {
  std::vector<FixedComponent> vertices;
  std::vector<GraphEdge> edges;

  const FixedComponent& vertex(int id) const;
  bool has_vertex(int id) const;
  Rational min_moment() const;
  Rational max_moment() const;
  int next_id() const;
  /// Number of edges at a vertex.
  int degree(int id) const;

  friend bool operator==(const S1Graph&, const S1Graph&) = default;
};

/// Serialization independent of vertex numbering; equal for isomorphic graphs
/// in the same position.
std::vector<Rational> graph_key(const S1Graph& g);

/// Lexicographic order on graph keys; meaningful for canonical forms.
bool graph_less(const S1Graph& a, const S1Graph& b);

struct GraphCheck {
  bool ok = true;
  std::vector<std::string> diagnostics;
};

GraphCheck validate(const S1Graph& g);

/// Sphere area of an edge, (moment difference) / k.
Rational edge_area(const S1Graph& g, const GraphEdge& e);

/// Restriction of the toric action of a Delzant polygon to the circle generated by xi.
S1Graph graph_from_polygon(const polygon::RationalPolygon& poly, const std::array<long, 2>& xi);

/// Two genus-g sections of self-intersection -k and +k at moments 0 and 1.
/// Product bundles take k even, twisted bundles k odd.
S1Graph ruled_base_graph(int genus, long k, const Rational& mu, bool twisted);

struct Feasibility {
  bool ok = true;
  std::string reason;
};

Feasibility can_blow_up(const S1Graph& g, int vertex, const Rational& delta);
S1Graph blow_up(const S1Graph& g, int vertex, const Rational& delta);

bool extends_to_toric(const S1Graph& g);

/// Representative under translations and the flip mu -> -mu, with the
/// minimum moment at 0 and vertices renumbered in canonical order.
S1Graph canonical_form(const S1Graph& g);

std::vector<S1Graph> enumerate_equivariant_blowups(const S1Graph& g, const Rational& delta);

std::string to_string(const S1Graph& g);

}  // namespace torus_census::circle
