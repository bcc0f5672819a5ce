#include "torus_census/census.hpp"

#include "torus_census/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <map>
#include <sstream>
#include <thread>

namespace torus_census::census {

using torus_census::to_string;

namespace {

// Runs fn over items on up to `threads` workers; results keep input order.
template <typename T, typename Fn>
auto parallel_map(const std::vector<T>& items, unsigned threads, Fn fn) -> std::vector<decltype(fn(items[0]))> {
  using R = decltype(fn(items[0]));
  std::vector<R> out(items.size());
  if (items.empty()) return out;
  unsigned workers = std::min<unsigned>(threads, static_cast<unsigned>(items.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < items.size(); ++i) out[i] = fn(items[i]);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = next++; i < items.size(); i = next++) out[i] = fn(items[i]);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

std::string join_rationals(const std::vector<Rational>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
  return s;
}

circle::S1Graph scaled(circle::S1Graph g, const Rational& factor) {
  for (auto& v : g.vertices) {
    v.moment *= factor;
    v.area *= factor;
  }
  return g;
}

circle::S1Graph ruled_graph(const BaseModel& base, long degree) {
  return scaled(circle::ruled_base_graph(base.genus, degree, base.section_area() / base.b,
                                         base.type == BaseType::TwistedRuled),
                base.b);
}

}  // namespace

unsigned thread_count(unsigned requested) {
  unsigned n = requested;
  if (n == 0) {
    n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
  }
  if (const char* env = std::getenv("TORUS_CENSUS_THREADS")) {
    long cap = std::strtol(env, nullptr, 10);
    if (cap > 0 && static_cast<unsigned long>(cap) < n) n = static_cast<unsigned>(cap);
  }
  return n;
}

// ---------------------------------------------------------------- specs

ManifoldSpec ManifoldSpec::cp2(Rational lambda, std::vector<Rational> capacities) {
  ManifoldSpec s;
  s.base = BaseType::CP2;
  s.lambda = std::move(lambda);
  s.capacities = std::move(capacities);
  return s;
}

ManifoldSpec ManifoldSpec::ruled(bool twisted, int genus, Rational a, std::vector<Rational> capacities,
                                 Rational fiber) {
  ManifoldSpec s;
  s.base = twisted ? BaseType::TwistedRuled : BaseType::ProductRuled;
  s.genus = genus;
  s.a = std::move(a);
  s.fiber = std::move(fiber);
  s.capacities = std::move(capacities);
  return s;
}

void ManifoldSpec::validate() const {
  if (base == BaseType::CP2) {
    if (lambda <= 0) throw PreconditionError("lambda must be positive");
  } else {
    if (genus < 0) throw PreconditionError("genus must be nonnegative");
    if (fiber <= 0) throw PreconditionError("fiber area must be positive");
    if (a <= 0) throw PreconditionError("a must be positive");
    if (base == BaseType::TwistedRuled && a <= fiber / 2)
      throw PreconditionError("twisted bundle needs a > fiber/2");
  }
  symplectic().validate();
}

lattice::SymplecticData ManifoldSpec::symplectic() const {
  switch (base) {
    case BaseType::CP2:
      return lattice::SymplecticData::rational(lambda, capacities);
    case BaseType::ProductRuled:
      return lattice::SymplecticData::ruled(false, genus, a, capacities, fiber);
    case BaseType::TwistedRuled:
      return lattice::SymplecticData::ruled(true, genus, a - fiber / 2, capacities, fiber);
  }
  throw std::logic_error("unknown base");
}

std::string ManifoldSpec::describe() const {
  std::ostringstream os;
  switch (base) {
    case BaseType::CP2:
      os << "CP2(lambda=" << to_string(lambda) << ")";
      break;
    case BaseType::ProductRuled:
      os << "ProductRuled(genus=" << genus << ", a=" << to_string(a) << ", fiber=" << to_string(fiber) << ")";
      break;
    case BaseType::TwistedRuled:
      os << "TwistedRuled(genus=" << genus << ", a=" << to_string(a) << ", fiber=" << to_string(fiber) << ")";
      break;
  }
  if (!capacities.empty()) os << " blown up at (" << join_rationals(capacities) << ")";
  return os.str();
}

BaseModel BaseModel::from_terminal(const lattice::SymplecticData& terminal) {
  if (terminal.basis.blowups != 0) throw PreconditionError("terminal recipe still has blow-ups");
  BaseModel m;
  m.genus = terminal.basis.genus;
  switch (terminal.basis.kind) {
    case lattice::BaseKind::Rational:
      m.type = BaseType::CP2;
      m.lambda = terminal.base_area;
      break;
    case lattice::BaseKind::ProductRuled:
      m.type = BaseType::ProductRuled;
      m.a = terminal.base_area;
      m.b = terminal.fiber_area;
      if (m.genus == 0 && m.a < m.b) std::swap(m.a, m.b);
      break;
    case lattice::BaseKind::TwistedRuled:
      m.type = BaseType::TwistedRuled;
      m.a = terminal.base_area + terminal.fiber_area / 2;
      m.b = terminal.fiber_area;
      break;
  }
  return m;
}

Rational BaseModel::section_area() const {
  if (type == BaseType::TwistedRuled) return a - b / 2;
  return a;
}

std::string BaseModel::describe() const {
  switch (type) {
    case BaseType::CP2:
      return "CP2(lambda=" + to_string(lambda) + ")";
    case BaseType::ProductRuled:
      return "ProductRuled(genus=" + std::to_string(genus) + ", a=" + to_string(a) + ", b=" + to_string(b) + ")";
    case BaseType::TwistedRuled:
      return "TwistedRuled(genus=" + std::to_string(genus) + ", a=" + to_string(a) + ", b=" + to_string(b) + ")";
  }
  return "?";
}

std::vector<polygon::RationalPolygon> base_toric_actions(const BaseModel& base) {
  if (base.type == BaseType::CP2) return {polygon::delzant_triangle(base.lambda)};
  if (base.genus != 0) return {};
  return polygon::ruled_trapezoids(base.a, base.b, base.type == BaseType::TwistedRuled);
}

std::vector<circle::S1Graph> base_ruled_graphs(const BaseModel& base) {
  std::vector<circle::S1Graph> out;
  if (base.type == BaseType::CP2) return out;
  const bool twisted = base.type == BaseType::TwistedRuled;
  const Rational mu = base.section_area() / base.b;
  for (long k = twisted ? 1 : 0;; k += 2) {
    Rational bottom = twisted ? mu - make_rational(k - 1, 2) : mu - make_rational(k, 2);
    if (bottom <= 0) break;
    out.push_back(ruled_graph(base, k));
  }
  return out;
}

// ---------------------------------------------------------------- provenance

polygon::RationalPolygon replay(const PolygonProvenance& p) {
  polygon::RationalPolygon cur = polygon::canonical_form(p.base).polygon;
  for (const auto& s : p.steps) cur = polygon::canonical_form(polygon::blow_up(cur, s.at, s.delta)).polygon;
  return cur;
}

circle::S1Graph replay(const GraphProvenance& p, const BaseModel& base) {
  circle::S1Graph cur;
  if (p.origin == GraphProvenance::Origin::RuledBase) {
    cur = circle::canonical_form(ruled_graph(base, p.degree));
  } else {
    cur = circle::canonical_form(circle::graph_from_polygon(replay(p.polygon), p.xi));
  }
  for (const auto& s : p.steps)
    cur = circle::canonical_form(circle::blow_up(cur, static_cast<int>(s.at), s.delta));
  return cur;
}

// ---------------------------------------------------------------- census

namespace {

struct Reduction {
  BaseModel model;
  std::vector<Rational> capacities;
};

Reduction reduce_to_model(const lattice::SymplecticData& omega, CensusResult& result) {
  const int k = omega.basis.blowups;
  if (k == 0) return {BaseModel::from_terminal(omega), {}};
  auto chains = lattice::minimal_blowdown_chains(omega, 1);
  const lattice::BlowdownChain& chain = chains.front();

  for (std::size_t j = 0; j < chain.steps.size(); ++j) {
    const auto& step = chain.steps[j];
    auto idx = step.original.as_exceptional_symbol();
    const std::size_t expected = omega.basis.first_exceptional() + static_cast<std::size_t>(k - 1) - j;
    if (!idx || *idx != expected) {
      result.warnings.push_back("case-analysis regime: minimal blow-down chain differs from the recipe (step " +
                                std::to_string(j + 1) + " blows down " + step.original.to_string() + ")");
      break;
    }
  }

  Reduction red;
  lattice::SymplecticData cur = omega;
  std::vector<Rational> sizes;
  for (const auto& step : chain.steps) {
    if (cur.basis == lattice::Basis::rational(1) && 2 * cur.capacities[0] >= cur.base_area) {
      // the complement of the exceptional curve is not the minimal model: stop at the Hirzebruch surface
      const Rational& lambda = cur.base_area;
      const Rational& d = cur.capacities[0];
      red.model.type = BaseType::TwistedRuled;
      red.model.genus = 0;
      red.model.a = (lambda + d) / 2;
      red.model.b = lambda - d;
      red.capacities.assign(sizes.rbegin(), sizes.rend());
      result.notes.push_back("chain stops at the twisted Hirzebruch model: blow-up of size " + to_string(d) +
                             " >= half the line");
      return red;
    }
    sizes.push_back(step.area);
    cur = lattice::blow_down_class(cur, step.chosen);
  }
  red.model = BaseModel::from_terminal(chain.terminal);
  red.capacities.assign(sizes.rbegin(), sizes.rend());
  return red;
}

using PolygonFrontier = std::map<polygon::RationalPolygon, PolygonProvenance>;
using GraphFrontier = std::map<std::vector<Rational>, CircleEntry>;

PolygonFrontier blow_up_polygons(const PolygonFrontier& frontier, const Rational& delta, unsigned threads) {
  std::vector<std::pair<polygon::RationalPolygon, PolygonProvenance>> items(frontier.begin(), frontier.end());
  auto children = parallel_map(items, threads, [&](const auto& item) {
    std::vector<std::pair<polygon::RationalPolygon, PolygonProvenance>> out;
    const auto& poly = item.first;
    auto e = polygon::edges(poly);
    const std::size_t n = poly.size();
    for (std::size_t v = 0; v < n; ++v) {
      if (delta >= e[v].length || delta >= e[(v + n - 1) % n].length) continue;
      PolygonProvenance prov = item.second;
      prov.steps.push_back({v, delta});
      out.emplace_back(polygon::canonical_form(polygon::blow_up(poly, v, delta)).polygon, std::move(prov));
    }
    return out;
  });
  PolygonFrontier next;
  for (auto& list : children)
    for (auto& [poly, prov] : list) next.emplace(std::move(poly), std::move(prov));
  return next;
}

void add_graph(GraphFrontier& frontier, circle::S1Graph g, GraphProvenance prov) {
  g = circle::canonical_form(g);
  auto key = circle::graph_key(g);
  frontier.emplace(std::move(key), CircleEntry{std::move(g), std::move(prov)});
}

void add_projections(GraphFrontier& frontier, const PolygonFrontier& polygons) {
  for (const auto& [poly, prov] : polygons) {
    for (const auto& e : polygon::edges(poly)) {
      for (long sign : {1L, -1L}) {
        std::array<long, 2> xi{sign * e.normal[0].get_si(), sign * e.normal[1].get_si()};
        GraphProvenance gp;
        gp.origin = GraphProvenance::Origin::Projection;
        gp.polygon = prov;
        gp.xi = xi;
        add_graph(frontier, circle::graph_from_polygon(poly, xi), std::move(gp));
      }
    }
  }
}

GraphFrontier blow_up_graphs(const GraphFrontier& frontier, const Rational& delta, unsigned threads) {
  std::vector<CircleEntry> items;
  for (const auto& [key, entry] : frontier) items.push_back(entry);
  auto children = parallel_map(items, threads, [&](const CircleEntry& item) {
    std::vector<std::pair<circle::S1Graph, GraphProvenance>> out;
    for (const auto& v : item.graph.vertices) {
      if (!circle::can_blow_up(item.graph, v.id, delta).ok) continue;
      GraphProvenance prov = item.provenance;
      prov.steps.push_back({static_cast<std::size_t>(v.id), delta});
      out.emplace_back(circle::blow_up(item.graph, v.id, delta), std::move(prov));
    }
    return out;
  });
  GraphFrontier next;
  for (auto& list : children)
    for (auto& [g, prov] : list) add_graph(next, std::move(g), std::move(prov));
  return next;
}

}  // namespace

CensusResult run_census(const ManifoldSpec& spec, const CensusOptions& options) {
  spec.validate();
  const unsigned threads = thread_count(options.threads);
  CensusResult result;
  result.spec = spec;
  const lattice::SymplecticData omega = spec.symplectic();

  if (!spec.capacities.empty()) {
    Rational total = 0;
    for (const auto& c : spec.capacities) total += c;
    auto bad = lattice::exceptional_classes_in_range(omega, -total, Rational(0));
    if (!bad.empty()) {
      result.realizable = false;
      result.notes.push_back("not realizable: exceptional class " + bad.front().to_string() + " has area " +
                             to_string(lattice::area(bad.front(), omega)));
      return result;
    }
  }
  if (spec.base == BaseType::CP2 && spec.capacities.size() > 8) {
    for (const auto& c : spec.capacities)
      if (c > spec.lambda / 3) {
        result.warnings.push_back("outside validity regime: k > 8 with a capacity above lambda/3");
        break;
      }
  }

  Reduction red = reduce_to_model(omega, result);
  result.model = red.model;
  result.folded_capacities = red.capacities;
  const bool irrational = red.model.type != BaseType::CP2 && red.model.genus > 0;
  if (irrational) result.notes.push_back("no toric actions on ruled surfaces over a base of positive genus");

  // toric frontier, kept per stage for the circle projections
  std::vector<PolygonFrontier> stages;
  {
    PolygonFrontier f;
    for (const auto& p : base_toric_actions(red.model)) {
      auto c = polygon::canonical_form(p).polygon;
      f.emplace(c, PolygonProvenance{c, {}});
    }
    stages.push_back(std::move(f));
    for (const auto& delta : red.capacities) stages.push_back(blow_up_polygons(stages.back(), delta, threads));
  }
  if (options.toric)
    for (const auto& [poly, prov] : stages.back()) result.toric.push_back({poly, prov});

  if (options.circles) {
    GraphFrontier frontier;
    if (irrational) {
      const bool twisted = red.model.type == BaseType::TwistedRuled;
      for (long k = twisted ? 1 : 0;; k += 2) {
        Rational mu = red.model.section_area() / red.model.b;
        Rational bottom = twisted ? mu - make_rational(k - 1, 2) : mu - make_rational(k, 2);
        if (bottom <= 0) break;
        GraphProvenance gp;
        gp.degree = k;
        add_graph(frontier, ruled_graph(red.model, k), std::move(gp));
      }
    }
    add_projections(frontier, stages[0]);
    for (std::size_t i = 0; i < red.capacities.size(); ++i) {
      frontier = blow_up_graphs(frontier, red.capacities[i], threads);
      add_projections(frontier, stages[i + 1]);
    }
    for (auto& [key, entry] : frontier)
      if (!circle::extends_to_toric(entry.graph)) result.maximal_circles.push_back(std::move(entry));
  }
  return result;
}

std::vector<polygon::RationalPolygon> toric_census(const ManifoldSpec& spec) {
  CensusOptions opt;
  opt.circles = false;
  std::vector<polygon::RationalPolygon> out;
  for (auto& e : run_census(spec, opt).toric) out.push_back(std::move(e.polygon));
  return out;
}

std::vector<circle::S1Graph> circle_census(const ManifoldSpec& spec) {
  CensusOptions opt;
  opt.toric = false;
  std::vector<circle::S1Graph> out;
  for (auto& e : run_census(spec, opt).maximal_circles) out.push_back(std::move(e.graph));
  return out;
}

ConjugacyCounts count_conjugacy_classes(const ManifoldSpec& spec) {
  auto r = run_census(spec);
  return {r.toric.size(), r.maximal_circles.size(), r.toric.size() + r.maximal_circles.size()};
}

FeasibilityReport feasibility_report(int k, const Rational& delta) {
  if (k < 1) throw PreconditionError("need k >= 1");
  if (delta <= 0) throw PreconditionError("delta must be positive");
  FeasibilityReport r;
  r.k = k;
  r.delta = delta;
  r.toric_formula = k <= 3 && delta < make_rational(1, 3);
  r.circle_formula = Rational(k - 1) * delta < 1;
  ManifoldSpec spec = ManifoldSpec::cp2(1, std::vector<Rational>(static_cast<std::size_t>(k), delta));
  bool volume_ok = 1 - Rational(k) * delta * delta > 0;
  if (volume_ok) {
    auto census = run_census(spec);
    r.realizable = census.realizable;
    r.toric_count = census.toric.size();
    r.maximal_circle_count = census.maximal_circles.size();
    r.warnings = census.warnings;
    for (const auto& n : census.notes) r.warnings.push_back(n);
  } else {
    r.warnings.push_back("not realizable: volume is not positive");
  }
  r.toric_agrees = (r.toric_count > 0) == r.toric_formula;
  r.circle_agrees = (r.maximal_circle_count > 0) == r.circle_formula;
  r.circle_existence_agrees = (r.toric_count + r.maximal_circle_count > 0) == r.circle_formula;
  return r;
}

}  // namespace torus_census::census
