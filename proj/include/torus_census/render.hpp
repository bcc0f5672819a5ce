#pragma once

// Human-readable tables and SVG drawings.

#include "torus_census/census.hpp"
#include "torus_census/circle_graph.hpp"
#include "torus_census/lattice.hpp"
#include "torus_census/polygon.hpp"

#include <string>
#include <vector>

namespace torus_census::render {

std::string polygon_table(const polygon::RationalPolygon& poly);
std::string invariants_table(const polygon::PolygonInvariants& inv);
std::string polygon_svg(const polygon::RationalPolygon& poly);

std::string graph_table(const circle::S1Graph& g);
std::string graph_svg(const circle::S1Graph& g);

std::string census_table(const census::CensusResult& r);
std::string feasibility_table(const census::FeasibilityReport& r);

std::string classes_table(const std::vector<lattice::HomologyClass>& classes, const lattice::SymplecticData& omega);
std::string chains_table(const std::vector<lattice::BlowdownChain>& chains);
std::string threshold_table(const lattice::CapacityThreshold& t);

}  // namespace torus_census::render
