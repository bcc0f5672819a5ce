#pragma once

// Census of maximal torus actions on a blow-up recipe: reduce to a minimal
// model along a chain of minimal blow-downs, list the actions on the model,
// then perform every equivariant blow-up with the chain's capacities.

#include "torus_census/circle_graph.hpp"
#include "torus_census/lattice.hpp"
#include "torus_census/polygon.hpp"

#include <optional>
#include <string>
#include <vector>

namespace torus_census::census {

enum class BaseType { CP2, ProductRuled, TwistedRuled };

/// Blow-up recipe. For CP2 only lambda is used. For ruled bases a is the
/// trapezoid width and fiber the fibre area; the B section has area a
/// (product) or a - fiber/2 (twisted).
struct ManifoldSpec {
  BaseType base = BaseType::CP2;
  int genus = 0;
  Rational lambda = 1;
  Rational a = 1;
  Rational fiber = 1;
  std::vector<Rational> capacities;

  static ManifoldSpec cp2(Rational lambda, std::vector<Rational> capacities = {});
  static ManifoldSpec ruled(bool twisted, int genus, Rational a, std::vector<Rational> capacities = {},
                            Rational fiber = 1);

  /// Throws PreconditionError on nonpositive data or unsorted capacities.
  void validate() const;
  lattice::SymplecticData symplectic() const;
  std::string describe() const;

  friend bool operator==(const ManifoldSpec&, const ManifoldSpec&) = default;
};

/// A recipe without blow-ups, as reached at the end of a blow-down chain.
struct BaseModel {
  BaseType type = BaseType::CP2;
  int genus = 0;
  Rational lambda;  // CP2
  Rational a;       // ruled: trapezoid width
  Rational b;       // ruled: fibre area

  static BaseModel from_terminal(const lattice::SymplecticData& terminal);
  /// Area of the B section.
  Rational section_area() const;
  std::string describe() const;

  friend bool operator==(const BaseModel&, const BaseModel&) = default;
};

/// Toric actions on a model without blow-ups; empty for irrational bases.
std::vector<polygon::RationalPolygon> base_toric_actions(const BaseModel& base);

/// Maximal circle actions on an irrational ruled model.
std::vector<circle::S1Graph> base_ruled_graphs(const BaseModel& base);

struct BlowupStep {
  std::size_t at = 0;  // polygon vertex index, or graph vertex id, in the canonical parent
  Rational delta;
  friend bool operator==(const BlowupStep&, const BlowupStep&) = default;
};

struct PolygonProvenance {
  polygon::RationalPolygon base;
  std::vector<BlowupStep> steps;
};

struct GraphProvenance {
  enum class Origin { RuledBase, Projection };
  Origin origin = Origin::RuledBase;
  // ruled base
  long degree = 0;
  // projection of a toric polygon after polygon.steps blow-ups
  PolygonProvenance polygon;
  std::array<long, 2> xi{0, 0};
  std::vector<BlowupStep> steps;
};

polygon::RationalPolygon replay(const PolygonProvenance& p);
circle::S1Graph replay(const GraphProvenance& p, const BaseModel& base);

struct ToricEntry {
  polygon::RationalPolygon polygon;
  PolygonProvenance provenance;
};

struct CircleEntry {
  circle::S1Graph graph;
  GraphProvenance provenance;
};

struct CensusResult {
  ManifoldSpec spec;
  bool realizable = true;
  std::optional<BaseModel> model;
  std::vector<Rational> folded_capacities;  // blow-up sizes applied to the model
  std::vector<ToricEntry> toric;
  std::vector<CircleEntry> maximal_circles;
  std::vector<std::string> warnings;
  std::vector<std::string> notes;
};

struct CensusOptions {
  bool toric = true;
  bool circles = true;
  /// Worker threads; 0 reads TORUS_CENSUS_THREADS, else the hardware count.
  unsigned threads = 0;
};

CensusResult run_census(const ManifoldSpec& spec, const CensusOptions& options = {});

std::vector<polygon::RationalPolygon> toric_census(const ManifoldSpec& spec);
std::vector<circle::S1Graph> circle_census(const ManifoldSpec& spec);

struct ConjugacyCounts {
  std::size_t toric = 0;
  std::size_t maximal_circles = 0;
  std::size_t total = 0;
};

ConjugacyCounts count_conjugacy_classes(const ManifoldSpec& spec);

/// Closed-form criteria for k equal blow-ups of size delta on CP2(1), set
/// against the census.
struct FeasibilityReport {
  int k = 0;
  Rational delta;
  bool toric_formula = false;     // k <= 3 and delta < 1/3
  bool circle_formula = false;    // (k - 1) delta < 1
  bool realizable = false;
  std::size_t toric_count = 0;
  std::size_t maximal_circle_count = 0;
  bool toric_agrees = false;      // census nonempty == toric_formula
  bool circle_agrees = false;     // maximal circle census nonempty == circle_formula
  bool circle_existence_agrees = false;  // (toric or maximal circle nonempty) == circle_formula
  std::vector<std::string> warnings;
};

FeasibilityReport feasibility_report(int k, const Rational& delta);

unsigned thread_count(unsigned requested);

}  // namespace torus_census::census
