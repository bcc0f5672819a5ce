// Command-line front end for the torus census library.

#include "torus_census/census.hpp"
#include "torus_census/circle_graph.hpp"
#include "torus_census/errors.hpp"
#include "torus_census/json_io.hpp"
#include "torus_census/lattice.hpp"
#include "torus_census/polygon.hpp"
#include "torus_census/render.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

using namespace torus_census;
using json_io::json;

namespace {

struct Options {
  std::string polygon;
  std::string graph;
  std::string spec;
  std::string symplectic;
  std::string klass;
  std::string delta;
  std::string xi;
  std::string bound;
  long ceiling = lattice::kDefaultSearchCeiling;
  std::optional<long> vertex;
  std::optional<long> edge;
  int k = 0;
  std::size_t max_chains = 0;
  unsigned threads = 0;
  std::string format = "table";
};

void emit_json(const json& j) { std::cout << j.dump(2) << "\n"; }

[[noreturn]] void usage(const std::string& msg) { throw ParseError(msg); }

void require_svg_allowed(const Options& o, bool drawable) {
  if (o.format == "svg" && !drawable) usage("--format svg is only available for polygon and graph output");
}

void emit_polygon(const Options& o, const polygon::RationalPolygon& p) {
  if (o.format == "json") {
    emit_json(json_io::to_json(p));
  } else if (o.format == "svg") {
    std::cout << render::polygon_svg(p);
  } else {
    std::cout << polygon::to_string(p) << "\n" << render::polygon_table(p);
  }
}

void emit_graph(const Options& o, const circle::S1Graph& g) {
  if (o.format == "json") {
    emit_json(json_io::to_json(g));
  } else if (o.format == "svg") {
    std::cout << render::graph_svg(g);
  } else {
    std::cout << render::graph_table(g);
  }
}

polygon::RationalPolygon load_polygon(const Options& o) {
  return json_io::polygon_from_json(json_io::load_document(o.polygon));
}

circle::S1Graph load_graph(const Options& o) { return json_io::graph_from_json(json_io::load_document(o.graph)); }

lattice::SymplecticData load_symplectic(const Options& o) {
  if (o.symplectic.empty()) usage("--symplectic is required");
  return json_io::symplectic_from_json(json_io::load_document(o.symplectic));
}

Rational require_delta(const Options& o) {
  if (o.delta.empty()) usage("--delta is required");
  return parse_rational(o.delta);
}

bool exactly_one(const Options& o) {
  if (o.polygon.empty() == o.graph.empty()) usage("give exactly one of --polygon or --graph");
  return !o.polygon.empty();
}

int run_check(const Options& o) {
  require_svg_allowed(o, false);
  bool is_polygon = exactly_one(o);
  bool ok;
  std::vector<std::string> diagnostics;
  if (is_polygon) {
    auto r = polygon::is_delzant(load_polygon(o));
    ok = r.ok;
    diagnostics = r.diagnostics;
  } else {
    auto r = circle::validate(load_graph(o));
    ok = r.ok;
    diagnostics = r.diagnostics;
  }
  if (o.format == "json") {
    emit_json({{"valid", ok}, {"diagnostics", diagnostics}});
  } else {
    std::cout << (ok ? "valid" : "invalid") << "\n";
    for (const auto& d : diagnostics) std::cout << "  " << d << "\n";
  }
  return ok ? 0 : 2;
}

int run_canon(const Options& o) {
  if (exactly_one(o)) {
    emit_polygon(o, polygon::canonical_form(load_polygon(o)).polygon);
  } else {
    auto g = load_graph(o);
    auto check = circle::validate(g);
    if (!check.ok) throw PreconditionError("invalid graph: " + check.diagnostics.front());
    emit_graph(o, circle::canonical_form(g));
  }
  return 0;
}

int run_invariants(const Options& o) {
  require_svg_allowed(o, false);
  if (o.polygon.empty()) usage("--polygon is required");
  auto p = load_polygon(o);
  auto check = polygon::is_delzant(p);
  if (!check.ok) throw PreconditionError("polygon is not Delzant: " + check.diagnostics.front());
  auto inv = polygon::invariants(p);
  auto models = polygon::classify_model(p);
  if (o.format == "json") {
    json j = json_io::to_json(inv);
    json ms = json::array();
    for (const auto& m : models) ms.push_back(json_io::to_json(m));
    j["models"] = ms;
    emit_json(j);
  } else {
    std::cout << render::invariants_table(inv);
    for (const auto& m : models) std::cout << "model: " << m.describe() << "\n";
  }
  return 0;
}

int run_blowup(const Options& o) {
  if (!o.vertex) usage("--vertex is required");
  Rational delta = require_delta(o);
  if (exactly_one(o)) {
    emit_polygon(o, polygon::blow_up(load_polygon(o), static_cast<std::size_t>(*o.vertex), delta));
  } else {
    auto g = load_graph(o);
    auto check = circle::validate(g);
    if (!check.ok) throw PreconditionError("invalid graph: " + check.diagnostics.front());
    auto f = circle::can_blow_up(g, static_cast<int>(*o.vertex), delta);
    if (!f.ok) throw PreconditionError("blow-up not feasible: " + f.reason);
    emit_graph(o, circle::blow_up(g, static_cast<int>(*o.vertex), delta));
  }
  return 0;
}

int run_blowdown(const Options& o) {
  if (!o.polygon.empty()) {
    if (!o.edge) usage("--edge is required");
    emit_polygon(o, polygon::blow_down(load_polygon(o), static_cast<std::size_t>(*o.edge)));
    return 0;
  }
  require_svg_allowed(o, false);
  auto omega = load_symplectic(o);
  if (o.klass.empty()) usage("--class is required with --symplectic");
  auto c = json_io::class_from_json(json_io::load_document(o.klass));
  auto t = lattice::blow_down_transport(omega, c);
  if (o.format == "json") {
    json images = json::array();
    for (const auto& img : t.images) images.push_back(json_io::to_json(img));
    emit_json({{"result", json_io::to_json(t.result)}, {"images", images}});
  } else {
    std::cout << "result: " << t.result.basis.describe() << " areas";
    for (const auto& a : t.result.area_vector()) std::cout << " " << to_string(a);
    std::cout << "\n";
    for (std::size_t s = 0; s < t.images.size(); ++s)
      std::cout << "  " << t.result.basis.symbol(s) << " = " << t.images[s].to_string() << "\n";
  }
  return 0;
}

int run_project(const Options& o) {
  if (o.polygon.empty()) usage("--polygon is required");
  if (o.xi.empty()) usage("--xi is required");
  auto comma = o.xi.find(',');
  if (comma == std::string::npos) usage("--xi must look like a,b");
  std::array<long, 2> xi{};
  try {
    xi = {std::stol(o.xi.substr(0, comma)), std::stol(o.xi.substr(comma + 1))};
  } catch (const std::exception&) {
    usage("--xi must look like a,b");
  }
  emit_graph(o, circle::graph_from_polygon(load_polygon(o), xi));
  return 0;
}

int run_census(const Options& o) {
  require_svg_allowed(o, false);
  if (o.spec.empty()) usage("--spec is required");
  auto spec = json_io::spec_from_json(json_io::load_document(o.spec));
  census::CensusOptions opt;
  opt.threads = o.threads;
  auto r = census::run_census(spec, opt);
  if (o.format == "json") {
    emit_json(json_io::to_json(r));
  } else {
    std::cout << render::census_table(r);
  }
  return 0;
}

int run_feasibility(const Options& o) {
  require_svg_allowed(o, false);
  if (o.k < 1) usage("--k must be at least 1");
  auto r = census::feasibility_report(o.k, require_delta(o));
  if (o.format == "json") {
    emit_json(json_io::to_json(r));
  } else {
    std::cout << render::feasibility_table(r);
  }
  return 0;
}

int run_exceptional(const Options& o) {
  require_svg_allowed(o, false);
  auto omega = load_symplectic(o);
  std::vector<lattice::HomologyClass> classes;
  std::optional<Rational> epsilon;
  if (!o.bound.empty()) {
    classes = lattice::enumerate_exceptional_candidates(omega, parse_rational(o.bound), o.ceiling);
  } else {
    auto m = lattice::minimal_exceptional_classes(omega, o.ceiling);
    classes = m.classes;
    epsilon = m.epsilon;
  }
  if (o.format == "json") {
    json list = json::array();
    for (const auto& c : classes) {
      json j = json_io::to_json(c);
      j["area"] = json_io::to_json(lattice::area(c, omega));
      list.push_back(j);
    }
    json out{{"classes", list}};
    if (epsilon) out["epsilon"] = json_io::to_json(*epsilon);
    emit_json(out);
  } else {
    if (epsilon) std::cout << "minimal area = " << to_string(*epsilon) << "\n";
    std::cout << render::classes_table(classes, omega);
  }
  return 0;
}

int run_chains(const Options& o) {
  require_svg_allowed(o, false);
  auto chains = lattice::minimal_blowdown_chains(load_symplectic(o), o.max_chains, o.ceiling);
  if (o.format == "json") {
    json list = json::array();
    for (const auto& c : chains) list.push_back(json_io::to_json(c));
    emit_json({{"chains", list}});
  } else {
    std::cout << render::chains_table(chains);
  }
  return 0;
}

int run_threshold(const Options& o) {
  require_svg_allowed(o, false);
  auto t = lattice::min_capacity_threshold(load_symplectic(o), o.ceiling);
  if (o.format == "json") {
    emit_json(json_io::to_json(t));
  } else {
    std::cout << render::threshold_table(t);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Census of maximal Hamiltonian torus actions on symplectic 4-manifolds"};
  app.require_subcommand(1);
  Options o;

  auto format = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "table", "svg"}));
  };
  auto shape = [&](CLI::App* sub) {
    sub->add_option("--polygon", o.polygon, "Polygon JSON file or inline JSON");
    sub->add_option("--graph", o.graph, "Circle graph JSON file or inline JSON");
  };

  auto* check = app.add_subcommand("check", "Validate a polygon or circle graph");
  shape(check);
  format(check);

  auto* canon = app.add_subcommand("canon", "Canonical form of a polygon or circle graph");
  shape(canon);
  format(canon);

  auto* inv = app.add_subcommand("invariants", "Homological invariants of a Delzant polygon");
  inv->add_option("--polygon", o.polygon, "Polygon JSON")->required();
  format(inv);

  auto* up = app.add_subcommand("blowup", "Equivariant blow-up at a vertex");
  shape(up);
  up->add_option("--vertex", o.vertex, "Vertex index (polygon) or id (graph)");
  up->add_option("--delta", o.delta, "Blow-up size");
  format(up);

  auto* down = app.add_subcommand("blowdown", "Blow down a -1 edge or an exceptional class");
  down->add_option("--polygon", o.polygon, "Polygon JSON");
  down->add_option("--edge", o.edge, "Edge index");
  down->add_option("--symplectic", o.symplectic, "Symplectic data JSON");
  down->add_option("--class", o.klass, "Homology class JSON");
  format(down);

  auto* project = app.add_subcommand("project", "Circle graph of the subcircle generated by xi");
  project->add_option("--polygon", o.polygon, "Polygon JSON")->required();
  project->add_option("--xi", o.xi, "Primitive integer vector a,b")->required();
  format(project);

  auto* census_cmd = app.add_subcommand("census", "Census of maximal torus actions");
  census_cmd->add_option("--spec", o.spec, "Manifold spec JSON")->required();
  census_cmd->add_option("--threads", o.threads, "Worker threads");
  format(census_cmd);

  auto* feas = app.add_subcommand("feasibility", "Closed-form criteria for k equal blow-ups of CP2(1)");
  feas->add_option("--k", o.k, "Number of blow-ups")->required();
  feas->add_option("--delta", o.delta, "Blow-up size")->required();
  format(feas);

  auto* exc = app.add_subcommand("exceptional", "Exceptional classes of a blow-up recipe");
  exc->add_option("--symplectic", o.symplectic, "Symplectic data JSON")->required();
  exc->add_option("--bound", o.bound, "Area bound (default: minimal classes only)");
  exc->add_option("--ceiling", o.ceiling, "Search ceiling for the leading coefficient");
  format(exc);

  auto* chains = app.add_subcommand("chains", "Chains of minimal blow-downs");
  chains->add_option("--symplectic", o.symplectic, "Symplectic data JSON")->required();
  chains->add_option("--max", o.max_chains, "Stop after this many chains (0: all)");
  chains->add_option("--ceiling", o.ceiling, "Search ceiling for the leading coefficient");
  format(chains);

  auto* thr = app.add_subcommand("threshold", "Largest last capacity keeping E_k the unique minimal class");
  thr->add_option("--symplectic", o.symplectic, "Symplectic data JSON")->required();
  thr->add_option("--ceiling", o.ceiling, "Search ceiling for the leading coefficient");
  format(thr);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (check->parsed()) return run_check(o);
    if (canon->parsed()) return run_canon(o);
    if (inv->parsed()) return run_invariants(o);
    if (up->parsed()) return run_blowup(o);
    if (down->parsed()) return run_blowdown(o);
    if (project->parsed()) return run_project(o);
    if (census_cmd->parsed()) return run_census(o);
    if (feas->parsed()) return run_feasibility(o);
    if (exc->parsed()) return run_exceptional(o);
    if (chains->parsed()) return run_chains(o);
    if (thr->parsed()) return run_threshold(o);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
