#include "torus_census/json_io.hpp"

#include "torus_census/errors.hpp"

#include <fstream>
#include <sstream>

namespace torus_census::json_io {

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object()) throw ParseError(std::string("expected an object holding '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string("missing field '") + key + "'");
  return *it;
}

template <typename T>
T number(const json& j, const char* what) {
  if (!j.is_number_integer()) throw ParseError(std::string(what) + " must be an integer");
  return j.get<T>();
}

std::string text(const json& j, const char* what) {
  if (!j.is_string()) throw ParseError(std::string(what) + " must be a string");
  return j.get<std::string>();
}

json rationals(const std::vector<Rational>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

std::vector<Rational> rationals_from(const json& j) {
  if (!j.is_array()) throw ParseError("expected an array of rationals");
  std::vector<Rational> out;
  for (const auto& x : j) out.push_back(rational_from_json(x));
  return out;
}

template <typename Fn>
auto guarded(Fn fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed JSON value: ") + e.what());
  }
}

const char* kind_name(lattice::BaseKind k) {
  switch (k) {
    case lattice::BaseKind::Rational:
      return "rational";
    case lattice::BaseKind::ProductRuled:
      return "product_ruled";
    case lattice::BaseKind::TwistedRuled:
      return "twisted_ruled";
  }
  return "?";
}

lattice::BaseKind kind_from(const std::string& s) {
  if (s == "rational") return lattice::BaseKind::Rational;
  if (s == "product_ruled") return lattice::BaseKind::ProductRuled;
  if (s == "twisted_ruled") return lattice::BaseKind::TwistedRuled;
  throw ParseError("unknown basis kind '" + s + "'");
}

const char* base_name(census::BaseType t) {
  switch (t) {
    case census::BaseType::CP2:
      return "cp2";
    case census::BaseType::ProductRuled:
      return "product_ruled";
    case census::BaseType::TwistedRuled:
      return "twisted_ruled";
  }
  return "?";
}

census::BaseType base_from(const std::string& s) {
  if (s == "cp2") return census::BaseType::CP2;
  if (s == "product_ruled") return census::BaseType::ProductRuled;
  if (s == "twisted_ruled") return census::BaseType::TwistedRuled;
  throw ParseError("unknown base kind '" + s + "'");
}

json steps_json(const std::vector<census::BlowupStep>& steps) {
  json a = json::array();
  for (const auto& s : steps) a.push_back({{"at", s.at}, {"delta", to_json(s.delta)}});
  return a;
}

std::vector<census::BlowupStep> steps_from(const json& j) {
  if (!j.is_array()) throw ParseError("steps must be an array");
  std::vector<census::BlowupStep> out;
  for (const auto& s : j) out.push_back({number<std::size_t>(field(s, "at"), "at"), rational_from_json(field(s, "delta"))});
  return out;
}

}  // namespace

json load_document(const std::string& text_or_path) {
  std::string body = text_or_path;
  auto first = body.find_first_not_of(" \t\r\n");
  if (first == std::string::npos || (body[first] != '{' && body[first] != '[')) {
    std::ifstream in(text_or_path);
    if (!in) throw ParseError("cannot read '" + text_or_path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    body = ss.str();
  }
  try {
    return json::parse(body);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

json to_json(const Rational& value) { return to_string(value); }

Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw ParseError("rational must be a \"p/q\" string or an integer");
}

// ---------------------------------------------------------------- lattice

json to_json(const lattice::Basis& basis) {
  json j{{"kind", kind_name(basis.kind)}, {"k", basis.blowups}};
  if (basis.is_ruled()) j["genus"] = basis.genus;
  return j;
}

lattice::Basis basis_from_json(const json& j) {
  return guarded([&] {
    auto kind = kind_from(text(field(j, "kind"), "kind"));
    int k = number<int>(field(j, "k"), "k");
    int genus = j.contains("genus") ? number<int>(j["genus"], "genus") : 0;
    switch (kind) {
      case lattice::BaseKind::Rational:
        return lattice::Basis::rational(k);
      case lattice::BaseKind::ProductRuled:
        return lattice::Basis::product_ruled(genus, k);
      case lattice::BaseKind::TwistedRuled:
        return lattice::Basis::twisted_ruled(genus, k);
    }
    throw ParseError("unknown basis kind");
  });
}

json to_json(const lattice::HomologyClass& c) {
  json coeffs = json::array();
  for (const auto& x : c.coeffs) coeffs.push_back(x.get_str());
  return {{"basis", to_json(c.basis)}, {"coeffs", coeffs}, {"symbolic", c.to_string()}};
}

lattice::HomologyClass class_from_json(const json& j) {
  return guarded([&] {
    auto basis = basis_from_json(field(j, "basis"));
    const json& cj = field(j, "coeffs");
    if (!cj.is_array()) throw ParseError("coeffs must be an array");
    std::vector<Integer> coeffs;
    for (const auto& x : cj) {
      if (x.is_string()) {
        coeffs.push_back(parse_integer(x.get<std::string>()));
      } else {
        coeffs.emplace_back(number<long>(x, "coefficient"));
      }
    }
    if (coeffs.size() != basis.rank()) throw ParseError("coefficient count does not match the basis rank");
    return lattice::HomologyClass(basis, coeffs);
  });
}

json to_json(const lattice::SymplecticData& omega) {
  if (!omega.basis.is_ruled()) return {{"kind", "rational"}, {"lambda", to_json(omega.base_area)}, {"capacities", rationals(omega.capacities)}};
  return {{"kind", kind_name(omega.basis.kind)},
          {"genus", omega.basis.genus},
          {"mu", to_json(omega.base_area)},
          {"fiber", to_json(omega.fiber_area)},
          {"capacities", rationals(omega.capacities)}};
}

lattice::SymplecticData symplectic_from_json(const json& j) {
  return guarded([&] {
    std::string kind = j.contains("kind") ? text(j["kind"], "kind") : "rational";
    auto caps = j.contains("capacities") ? rationals_from(j["capacities"]) : std::vector<Rational>{};
    auto k = kind_from(kind);
    if (k == lattice::BaseKind::Rational) return lattice::SymplecticData::rational(rational_from_json(field(j, "lambda")), caps);
    int genus = j.contains("genus") ? number<int>(j["genus"], "genus") : 0;
    Rational fiber = j.contains("fiber") ? rational_from_json(j["fiber"]) : Rational(1);
    return lattice::SymplecticData::ruled(k == lattice::BaseKind::TwistedRuled, genus, rational_from_json(field(j, "mu")),
                                          caps, fiber);
  });
}

json to_json(const lattice::BlowdownChain& chain) {
  json steps = json::array();
  for (const auto& s : chain.steps)
    steps.push_back({{"stage", s.stage}, {"class", to_json(s.chosen)}, {"original", to_json(s.original)}, {"area", to_json(s.area)}});
  return {{"steps", steps}, {"terminal", to_json(chain.terminal)}};
}

json to_json(const lattice::CapacityThreshold& t) {
  json binding = json::array();
  for (const auto& c : t.binding) binding.push_back(to_json(c));
  return {{"threshold", to_json(t.threshold)}, {"binding", binding}};
}

// ---------------------------------------------------------------- polygons

json to_json(const polygon::RationalPolygon& poly) {
  json vs = json::array();
  for (const auto& v : poly.vertices) vs.push_back(json::array({to_json(v[0]), to_json(v[1])}));
  return {{"vertices", vs}};
}

polygon::RationalPolygon polygon_from_json(const json& j) {
  return guarded([&] {
    const json& vs = field(j, "vertices");
    if (!vs.is_array()) throw ParseError("vertices must be an array");
    std::vector<polygon::Point> pts;
    for (const auto& v : vs) {
      if (!v.is_array() || v.size() != 2) throw ParseError("vertex must be a pair of rationals");
      pts.push_back({rational_from_json(v[0]), rational_from_json(v[1])});
    }
    return polygon::make_polygon(std::move(pts));
  });
}

json to_json(const polygon::PolygonInvariants& inv) {
  json si = json::array();
  for (long s : inv.self_intersections) si.push_back(s);
  return {{"edge_count", inv.edge_count},
          {"b2", inv.b2},
          {"area", to_json(inv.euclidean_area)},
          {"perimeter", to_json(inv.perimeter)},
          {"edge_areas", rationals(inv.edge_areas)},
          {"self_intersections", si}};
}

json to_json(const polygon::ModelIdentification& id) {
  json j{{"blowdowns", id.blowdowns}, {"description", id.describe()}};
  switch (id.kind) {
    case polygon::ModelKind::ProjectivePlane:
      j["model"] = "cp2";
      j["lambda"] = to_json(id.a);
      break;
    case polygon::ModelKind::Product:
      j["model"] = "product_ruled";
      j["a"] = to_json(id.a);
      j["b"] = to_json(id.b);
      j["m"] = id.m;
      break;
    case polygon::ModelKind::Twisted:
      j["model"] = "twisted_ruled";
      j["a"] = to_json(id.a);
      j["b"] = to_json(id.b);
      j["m"] = id.m;
      j["line_area"] = to_json(id.line_area());
      j["exceptional_area"] = to_json(id.exceptional_area());
      break;
  }
  return j;
}

// ---------------------------------------------------------------- graphs

json to_json(const circle::S1Graph& g) {
  json vs = json::array();
  for (const auto& v : g.vertices) {
    json jv{{"id", v.id}, {"moment", to_json(v.moment)}};
    if (v.surface) {
      jv["surface"] = {{"genus", v.genus}, {"area", to_json(v.area)}};
    } else {
      jv["weights"] = json::array({v.weights[0], v.weights[1]});
    }
    vs.push_back(jv);
  }
  json es = json::array();
  for (const auto& e : g.edges) es.push_back({{"north", e.north}, {"south", e.south}, {"k", e.k}});
  return {{"vertices", vs}, {"edges", es}};
}

circle::S1Graph graph_from_json(const json& j) {
  return guarded([&] {
    circle::S1Graph g;
    const json& vs = field(j, "vertices");
    if (!vs.is_array()) throw ParseError("vertices must be an array");
    for (const auto& v : vs) {
      int id = number<int>(field(v, "id"), "id");
      Rational moment = rational_from_json(field(v, "moment"));
      if (v.contains("surface")) {
        const json& s = v["surface"];
        g.vertices.push_back(circle::FixedComponent::fixed_surface(id, moment, number<int>(field(s, "genus"), "genus"),
                                                                   rational_from_json(field(s, "area"))));
      } else {
        const json& w = field(v, "weights");
        if (!w.is_array() || w.size() != 2) throw ParseError("weights must be a pair of integers");
        g.vertices.push_back(circle::FixedComponent::isolated(id, moment, number<long>(w[0], "weight"), number<long>(w[1], "weight")));
      }
    }
    if (j.contains("edges")) {
      const json& es = j["edges"];
      if (!es.is_array()) throw ParseError("edges must be an array");
      for (const auto& e : es)
        g.edges.push_back({number<int>(field(e, "north"), "north"), number<int>(field(e, "south"), "south"),
                           number<long>(field(e, "k"), "k")});
    }
    return g;
  });
}

// ---------------------------------------------------------------- census

json to_json(const census::ManifoldSpec& spec) {
  json base{{"kind", base_name(spec.base)}};
  if (spec.base == census::BaseType::CP2) {
    base["lambda"] = to_json(spec.lambda);
  } else {
    base["genus"] = spec.genus;
    base["a"] = to_json(spec.a);
    base["fiber"] = to_json(spec.fiber);
  }
  return {{"base", base}, {"capacities", rationals(spec.capacities)}};
}

census::ManifoldSpec spec_from_json(const json& j) {
  return guarded([&] {
    const json& b = field(j, "base");
    auto type = base_from(text(field(b, "kind"), "kind"));
    auto caps = j.contains("capacities") ? rationals_from(j["capacities"]) : std::vector<Rational>{};
    if (type == census::BaseType::CP2) return census::ManifoldSpec::cp2(rational_from_json(field(b, "lambda")), caps);
    int genus = b.contains("genus") ? number<int>(b["genus"], "genus") : 0;
    Rational fiber = b.contains("fiber") ? rational_from_json(b["fiber"]) : Rational(1);
    return census::ManifoldSpec::ruled(type == census::BaseType::TwistedRuled, genus, rational_from_json(field(b, "a")),
                                       caps, fiber);
  });
}

json to_json(const census::BaseModel& m) {
  json j{{"kind", base_name(m.type)}, {"description", m.describe()}};
  if (m.type == census::BaseType::CP2) {
    j["lambda"] = to_json(m.lambda);
  } else {
    j["genus"] = m.genus;
    j["a"] = to_json(m.a);
    j["b"] = to_json(m.b);
  }
  return j;
}

census::BaseModel model_from_json(const json& j) {
  return guarded([&] {
    census::BaseModel m;
    m.type = base_from(text(field(j, "kind"), "kind"));
    if (m.type == census::BaseType::CP2) {
      m.lambda = rational_from_json(field(j, "lambda"));
    } else {
      m.genus = number<int>(field(j, "genus"), "genus");
      m.a = rational_from_json(field(j, "a"));
      m.b = rational_from_json(field(j, "b"));
    }
    return m;
  });
}

json to_json(const census::PolygonProvenance& p) { return {{"base", to_json(p.base)}, {"steps", steps_json(p.steps)}}; }

census::PolygonProvenance polygon_provenance_from_json(const json& j) {
  return guarded([&] {
    census::PolygonProvenance p;
    p.base = polygon_from_json(field(j, "base"));
    p.steps = steps_from(field(j, "steps"));
    return p;
  });
}

json to_json(const census::GraphProvenance& p) {
  json j{{"steps", steps_json(p.steps)}};
  if (p.origin == census::GraphProvenance::Origin::RuledBase) {
    j["origin"] = "ruled_base";
    j["degree"] = p.degree;
  } else {
    j["origin"] = "projection";
    j["polygon"] = to_json(p.polygon);
    j["xi"] = json::array({p.xi[0], p.xi[1]});
  }
  return j;
}

census::GraphProvenance graph_provenance_from_json(const json& j) {
  return guarded([&] {
    census::GraphProvenance p;
    std::string origin = text(field(j, "origin"), "origin");
    if (origin == "ruled_base") {
      p.origin = census::GraphProvenance::Origin::RuledBase;
      p.degree = number<long>(field(j, "degree"), "degree");
    } else if (origin == "projection") {
      p.origin = census::GraphProvenance::Origin::Projection;
      p.polygon = polygon_provenance_from_json(field(j, "polygon"));
      const json& xi = field(j, "xi");
      if (!xi.is_array() || xi.size() != 2) throw ParseError("xi must be a pair of integers");
      p.xi = {number<long>(xi[0], "xi"), number<long>(xi[1], "xi")};
    } else {
      throw ParseError("unknown provenance origin '" + origin + "'");
    }
    p.steps = steps_from(field(j, "steps"));
    return p;
  });
}

json to_json(const census::CensusResult& r) {
  json toric = json::array();
  for (const auto& e : r.toric) toric.push_back({{"polygon", to_json(e.polygon)}, {"provenance", to_json(e.provenance)}});
  json circles = json::array();
  for (const auto& e : r.maximal_circles)
    circles.push_back({{"graph", to_json(e.graph)}, {"provenance", to_json(e.provenance)}});
  return {{"spec", to_json(r.spec)},
          {"realizable", r.realizable},
          {"model", r.model ? to_json(*r.model) : json(nullptr)},
          {"folded_capacities", rationals(r.folded_capacities)},
          {"counts",
           {{"toric", r.toric.size()},
            {"maximal_circles", r.maximal_circles.size()},
            {"total", r.toric.size() + r.maximal_circles.size()}}},
          {"toric", toric},
          {"maximal_circles", circles},
          {"warnings", r.warnings},
          {"notes", r.notes}};
}

census::CensusResult census_from_json(const json& j) {
  return guarded([&] {
    census::CensusResult r;
    r.spec = spec_from_json(field(j, "spec"));
    r.realizable = field(j, "realizable").get<bool>();
    const json& m = field(j, "model");
    if (!m.is_null()) r.model = model_from_json(m);
    r.folded_capacities = rationals_from(field(j, "folded_capacities"));
    for (const auto& e : field(j, "toric"))
      r.toric.push_back({polygon_from_json(field(e, "polygon")), polygon_provenance_from_json(field(e, "provenance"))});
    for (const auto& e : field(j, "maximal_circles"))
      r.maximal_circles.push_back({graph_from_json(field(e, "graph")), graph_provenance_from_json(field(e, "provenance"))});
    r.warnings = field(j, "warnings").get<std::vector<std::string>>();
    r.notes = field(j, "notes").get<std::vector<std::string>>();
    return r;
  });
}

json to_json(const census::FeasibilityReport& r) {
  return {{"k", r.k},
          {"delta", to_json(r.delta)},
          {"toric_formula", r.toric_formula},
          {"circle_formula", r.circle_formula},
          {"realizable", r.realizable},
          {"toric_count", r.toric_count},
          {"maximal_circle_count", r.maximal_circle_count},
          {"toric_agrees", r.toric_agrees},
          {"circle_agrees", r.circle_agrees},
          {"circle_existence_agrees", r.circle_existence_agrees},
          {"warnings", r.warnings}};
}

}  // namespace torus_census::json_io
