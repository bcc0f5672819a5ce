#pragma once

// JSON encodings. Rationals are "p/q" strings in lowest terms; integers that
// are not areas (ids, weights, genus) are plain numbers.

#include "torus_census/census.hpp"
#include "torus_census/circle_graph.hpp"
#include "torus_census/lattice.hpp"
#include "torus_census/polygon.hpp"

#include <json.hpp>

#include <string>

namespace torus_census::json_io {

using nlohmann::json;

/// Inline JSON when the text starts with '{' or '[', otherwise a file path. Throws ParseError.
json load_document(const std::string& text_or_path);

json to_json(const Rational& value);
Rational rational_from_json(const json& j);

json to_json(const lattice::Basis& basis);
lattice::Basis basis_from_json(const json& j);

json to_json(const lattice::HomologyClass& c);
lattice::HomologyClass class_from_json(const json& j);

json to_json(const lattice::SymplecticData& omega);
lattice::SymplecticData symplectic_from_json(const json& j);

json to_json(const polygon::RationalPolygon& poly);
polygon::RationalPolygon polygon_from_json(const json& j);

json to_json(const circle::S1Graph& g);
circle::S1Graph graph_from_json(const json& j);

json to_json(const census::ManifoldSpec& spec);
census::ManifoldSpec spec_from_json(const json& j);

json to_json(const census::BaseModel& model);
census::BaseModel model_from_json(const json& j);

json to_json(const census::PolygonProvenance& p);
census::PolygonProvenance polygon_provenance_from_json(const json& j);

json to_json(const census::GraphProvenance& p);
census::GraphProvenance graph_provenance_from_json(const json& j);

json to_json(const census::CensusResult& r);
census::CensusResult census_from_json(const json& j);

json to_json(const census::FeasibilityReport& r);

json to_json(const polygon::PolygonInvariants& inv);
json to_json(const polygon::ModelIdentification& id);
json to_json(const lattice::BlowdownChain& chain);
json to_json(const lattice::CapacityThreshold& t);

}  // namespace torus_census::json_io
