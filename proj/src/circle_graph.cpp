#include "torus_census/circle_graph.hpp"

#include "torus_census/errors.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace torus_census::circle {

using torus_census::to_string;

FixedComponent FixedComponent::isolated(int id, Rational moment, long w1, long w2) {
  FixedComponent c;
  c.id = id;
  c.moment = std::move(moment);
  c.surface = false;
  c.area = 0;
  c.weights = {std::max(w1, w2), std::min(w1, w2)};
  return c;
}

FixedComponent FixedComponent::fixed_surface(int id, Rational moment, int genus, Rational area) {
  FixedComponent c;
  c.id = id;
  c.moment = std::move(moment);
  c.surface = true;
  c.genus = genus;
  c.area = std::move(area);
  return c;
}

const FixedComponent& S1Graph::vertex(int id) const {
  for (const auto& v : vertices)
    if (v.id == id) return v;
  throw PreconditionError("unknown vertex " + std::to_string(id));
}

bool S1Graph::has_vertex(int id) const {
  return std::any_of(vertices.begin(), vertices.end(), [&](const FixedComponent& v) { return v.id == id; });
}

Rational S1Graph::min_moment() const {
  if (vertices.empty()) throw PreconditionError("empty graph");
  Rational m = vertices[0].moment;
  for (const auto& v : vertices) m = std::min(m, v.moment);
  return m;
}

Rational S1Graph::max_moment() const {
  if (vertices.empty()) throw PreconditionError("empty graph");
  Rational m = vertices[0].moment;
  for (const auto& v : vertices) m = std::max(m, v.moment);
  return m;
}

int S1Graph::next_id() const {
  int n = 0;
  for (const auto& v : vertices) n = std::max(n, v.id + 1);
  return n;
}

int S1Graph::degree(int id) const {
  int d = 0;
  for (const auto& e : edges) d += (e.north == id) + (e.south == id);
  return d;
}

Rational edge_area(const S1Graph& g, const GraphEdge& e) {
  return (g.vertex(e.north).moment - g.vertex(e.south).moment) / Rational(e.k);
}

// ---------------------------------------------------------------- validation

GraphCheck validate(const S1Graph& g) {
  GraphCheck out;
  auto fail = [&](std::string msg) {
    out.ok = false;
    out.diagnostics.push_back(std::move(msg));
  };
  if (g.vertices.size() < 2) {
    fail("graph needs at least two fixed components");
    return out;
  }
  std::set<int> ids;
  for (const auto& v : g.vertices)
    if (!ids.insert(v.id).second) fail("duplicate vertex id " + std::to_string(v.id));
  for (const auto& e : g.edges) {
    if (!ids.count(e.north) || !ids.count(e.south)) {
      fail("edge refers to an unknown vertex");
      return out;
    }
  }
  const Rational lo = g.min_moment();
  const Rational hi = g.max_moment();
  int at_min = 0, at_max = 0;
  for (const auto& v : g.vertices) {
    at_min += v.moment == lo;
    at_max += v.moment == hi;
  }
  if (at_min != 1) fail("minimum moment attained on " + std::to_string(at_min) + " components");
  if (at_max != 1) fail("maximum moment attained on " + std::to_string(at_max) + " components");

  for (const auto& v : g.vertices) {
    const std::string name = "vertex " + std::to_string(v.id);
    const bool extremal = v.moment == lo || v.moment == hi;
    if (g.degree(v.id) > 2) fail(name + " is reached by more than two edges");
    if (v.surface) {
      if (!extremal) fail(name + ": fixed surface away from the extrema");
      if (g.degree(v.id) > 0) fail(name + ": fixed surface carries an edge");
      if (v.area <= 0) fail(name + ": surface area must be positive");
      if (v.genus < 0) fail(name + ": negative genus");
      continue;
    }
    long m = v.weights[0], n = v.weights[1];
    if (m == 0 || n == 0) {
      fail(name + ": zero weight");
      continue;
    }
    if (std::gcd(m, n) != 1) fail(name + ": weights " + std::to_string(m) + ", " + std::to_string(n) + " not coprime");
    if (v.moment == hi && (m > 0 || n > 0)) fail(name + ": maximum needs two negative weights");
    if (v.moment == lo && (m < 0 || n < 0)) fail(name + ": minimum needs two positive weights");
    if (!extremal && !(m > 0 && n < 0)) fail(name + ": interior point needs weights of both signs");
    // every weight of size >= 2 is carried by exactly one matching edge
    std::multiset<long> carried;
    for (const auto& e : g.edges) {
      if (e.north == v.id) carried.insert(-e.k);
      if (e.south == v.id) carried.insert(e.k);
    }
    std::multiset<long> needed;
    for (long w : v.weights)
      if (w >= 2 || w <= -2) needed.insert(w);
    if (carried != needed) fail(name + ": edges do not match the isotropy weights");
  }
  for (const auto& e : g.edges) {
    const std::string name = "edge " + std::to_string(e.north) + "->" + std::to_string(e.south);
    if (e.k < 2) fail(name + ": weight must be at least 2");
    if (g.vertex(e.north).surface || g.vertex(e.south).surface) fail(name + ": touches a fixed surface");
    if (g.vertex(e.north).moment <= g.vertex(e.south).moment) fail(name + ": north pole is not above south pole");
  }
  return out;
}

// ---------------------------------------------------------------- constructors

S1Graph graph_from_polygon(const polygon::RationalPolygon& poly, const std::array<long, 2>& xi) {
  if (std::gcd(xi[0], xi[1]) != 1) throw PreconditionError("xi is not primitive");
  if (!polygon::is_delzant(poly).ok) throw PreconditionError("polygon is not Delzant");
  const std::size_t n = poly.size();
  auto pair = [&](const polygon::IntVec& d) { return Integer(d[0] * xi[0] + d[1] * xi[1]).get_si(); };
  auto moment = [&](const polygon::Point& p) { return Rational(p[0] * xi[0] + p[1] * xi[1]); };
  auto e = polygon::edges(poly);
  std::vector<bool> orthogonal(n);
  for (std::size_t i = 0; i < n; ++i) orthogonal[i] = pair(e[i].direction) == 0;

  S1Graph g;
  std::vector<int> vid(n, -1);
  int next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (orthogonal[i] || orthogonal[(i + n - 1) % n]) continue;
    long w_out = pair(e[i].direction);
    long w_in = -pair(e[(i + n - 1) % n].direction);
    vid[i] = next;
    g.vertices.push_back(FixedComponent::isolated(next++, moment(poly.vertex(i)), w_out, w_in));
  }
  for (std::size_t i = 0; i < n; ++i)
    if (orthogonal[i]) g.vertices.push_back(FixedComponent::fixed_surface(next++, moment(poly.vertex(i)), 0, e[i].length));
  for (std::size_t i = 0; i < n; ++i) {
    long k = pair(e[i].direction);
    if (k >= 2) g.edges.push_back({vid[(i + 1) % n], vid[i], k});
    if (k <= -2) g.edges.push_back({vid[i], vid[(i + 1) % n], -k});
  }
  return g;
}

S1Graph ruled_base_graph(int genus, long k, const Rational& mu, bool twisted) {
  if (genus < 0 || k < 0) throw PreconditionError("genus and degree must be nonnegative");
  if (twisted != (k % 2 == 1))
    throw PreconditionError(std::string("degree must be ") + (twisted ? "odd" : "even") + " for this bundle");
  Rational bottom = twisted ? mu - make_rational(k - 1, 2) : mu - make_rational(k, 2);
  if (bottom <= 0) throw PreconditionError("section area nonpositive: " + to_string(bottom));
  S1Graph g;
  g.vertices.push_back(FixedComponent::fixed_surface(0, Rational(0), genus, bottom));
  g.vertices.push_back(FixedComponent::fixed_surface(1, Rational(1), genus, bottom + k));
  return g;
}

// ---------------------------------------------------------------- blow-ups

S1Graph blow_up(const S1Graph& g, int vertex, const Rational& delta) {
  const FixedComponent p = g.vertex(vertex);
  const Rational lo = g.min_moment();
  S1Graph out;
  for (const auto& v : g.vertices)
    if (v.id != vertex) out.vertices.push_back(v);

  if (p.surface) {
    const Rational inward = p.moment == lo ? delta : -delta;
    out.vertices.push_back(FixedComponent::fixed_surface(p.id, p.moment, p.genus, p.area - delta));
    out.vertices.push_back(FixedComponent::isolated(g.next_id(), p.moment + inward, 1, -1));
    out.edges = g.edges;
    return out;
  }

  const long m = p.weights[0], n = p.weights[1];
  if (m == n) {
    if (m != 1 && m != -1) throw PreconditionError("invalid weights at vertex " + std::to_string(vertex));
    out.vertices.push_back(FixedComponent::fixed_surface(p.id, p.moment + Rational(m) * delta, 0, delta));
    out.edges = g.edges;
    return out;
  }
  if (m == 0 || n == 0) throw PreconditionError("zero weight at vertex " + std::to_string(vertex));

  const int low_id = p.id;
  const int high_id = g.next_id();
  out.vertices.push_back(FixedComponent::isolated(low_id, p.moment + Rational(n) * delta, n, m - n));
  out.vertices.push_back(FixedComponent::isolated(high_id, p.moment + Rational(m) * delta, m, n - m));
  for (auto e : g.edges) {
    if (e.north == vertex) {
      long w = -e.k;
      e.north = w == n ? low_id : high_id;
    } else if (e.south == vertex) {
      long w = e.k;
      e.south = w == n ? low_id : high_id;
    }
    out.edges.push_back(e);
  }
  if (m - n >= 2) out.edges.push_back({high_id, low_id, m - n});
  return out;
}

Feasibility can_blow_up(const S1Graph& g, int vertex, const Rational& delta) {
  const FixedComponent& p = g.vertex(vertex);
  if (delta <= 0) return {false, "capacity must be positive"};
  const Rational lo = g.min_moment();
  const Rational hi = g.max_moment();
  if (p.surface) {
    if (!(p.area > delta)) return {false, "surface area " + to_string(p.area) + " is not larger than " + to_string(delta)};
    if (!(delta < hi - lo))
      return {false, "new fixed point at distance " + to_string(delta) + " leaves the moment interval"};
  } else {
    for (const auto& e : g.edges) {
      if (e.north != vertex && e.south != vertex) continue;
      Rational a = edge_area(g, e);
      if (!(a > delta))
        return {false, "Z_" + std::to_string(e.k) + "-sphere of area " + to_string(a) + " is not larger than " +
                           to_string(delta)};
    }
    if (p.moment == lo || p.moment == hi) {
      for (const auto& q : g.vertices) {
        if (q.id == vertex) continue;
        Rational d = abs(p.moment - q.moment);
        if (!(d > delta))
          return {false, "fixed point " + std::to_string(q.id) + " lies within " + to_string(delta)};
      }
    } else if (!(lo < p.moment - delta && p.moment + delta < hi)) {
      return {false, "interval around the moment value leaves (min, max)"};
    }
  }
  S1Graph result = blow_up(g, vertex, delta);
  auto check = validate(result);
  if (!check.ok) return {false, "blown-up graph is invalid: " + check.diagnostics.front()};
  return {true, ""};
}

// ---------------------------------------------------------------- maximality

bool extends_to_toric(const S1Graph& g) {
  bool all_isolated = std::none_of(g.vertices.begin(), g.vertices.end(), [](const FixedComponent& v) { return v.surface; });
  if (all_isolated) return true;
  for (const auto& v : g.vertices)
    if (v.surface && v.genus > 0) return false;
  const Rational lo = g.min_moment();
  const Rational hi = g.max_moment();
  std::set<Rational> critical;
  for (const auto& v : g.vertices) critical.insert(v.moment);
  std::vector<Rational> levels;
  Rational previous = lo;
  for (const auto& c : critical) {
    if (c != lo) levels.push_back((previous + c) / 2);
    if (c != lo && c != hi) levels.push_back(c);
    previous = c;
  }
  for (const auto& t : levels) {
    int count = 0;
    for (const auto& v : g.vertices) count += v.moment == t;
    for (const auto& e : g.edges)
      count += g.vertex(e.south).moment < t && t < g.vertex(e.north).moment;
    if (count > 2) return false;
  }
  return true;
}

// ---------------------------------------------------------------- canonical form

namespace {

struct Encoded {
  std::vector<Rational> key;
  std::vector<int> order;  // vertex ids along the component
};

void append_vertex(std::vector<Rational>& key, const FixedComponent& v) {
  key.push_back(v.moment);
  key.emplace_back(v.surface ? 1 : 0);
  key.emplace_back(v.genus);
  key.push_back(v.area);
  key.emplace_back(v.weights[0]);
  key.emplace_back(v.weights[1]);
}

long edge_between(const S1Graph& g, int a, int b) {
  for (const auto& e : g.edges)
    if ((e.north == a && e.south == b) || (e.north == b && e.south == a)) return e.k;
  return 0;
}

Encoded encode_sequence(const S1Graph& g, const std::vector<int>& seq, bool cycle) {
  Encoded out;
  out.order = seq;
  out.key.emplace_back(cycle ? 1 : 0);
  out.key.emplace_back(static_cast<long>(seq.size()));
  for (std::size_t i = 0; i < seq.size(); ++i) {
    append_vertex(out.key, g.vertex(seq[i]));
    if (i + 1 < seq.size()) out.key.emplace_back(edge_between(g, seq[i], seq[i + 1]));
  }
  if (cycle) out.key.emplace_back(edge_between(g, seq.back(), seq.front()));
  return out;
}

bool key_less(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

std::vector<Encoded> components(const S1Graph& g) {
  std::map<int, std::vector<int>> adj;
  for (const auto& v : g.vertices) adj[v.id];
  for (const auto& e : g.edges) {
    adj[e.north].push_back(e.south);
    adj[e.south].push_back(e.north);
  }
  std::set<int> seen;
  std::vector<Encoded> out;
  for (const auto& v : g.vertices) {
    if (seen.count(v.id)) continue;
    // collect the component
    std::vector<int> comp{v.id};
    seen.insert(v.id);
    for (std::size_t i = 0; i < comp.size(); ++i)
      for (int w : adj[comp[i]])
        if (seen.insert(w).second) comp.push_back(w);
    int start = -1;
    for (int id : comp)
      if (adj[id].size() <= 1) {
        start = id;
        break;
      }
    bool cycle = start < 0;
    if (cycle) start = comp.front();
    std::vector<int> walk{start};
    int before = -1, cur = start;
    while (walk.size() < comp.size()) {
      int nxt = -1;
      for (int w : adj[cur])
        if (w != before && std::find(walk.begin(), walk.end(), w) == walk.end()) {
          nxt = w;
          break;
        }
      if (nxt < 0) break;
      walk.push_back(nxt);
      before = cur;
      cur = nxt;
    }
    std::vector<std::vector<int>> candidates;
    if (cycle) {
      for (std::size_t r = 0; r < walk.size(); ++r) {
        std::vector<int> rot(walk.begin() + static_cast<long>(r), walk.end());
        rot.insert(rot.end(), walk.begin(), walk.begin() + static_cast<long>(r));
        candidates.push_back(rot);
        std::reverse(rot.begin(), rot.end());
        candidates.push_back(rot);
      }
    } else {
      candidates.push_back(walk);
      std::reverse(walk.begin(), walk.end());
      candidates.push_back(walk);
    }
    Encoded best = encode_sequence(g, candidates[0], cycle);
    for (std::size_t c = 1; c < candidates.size(); ++c) {
      Encoded cand = encode_sequence(g, candidates[c], cycle);
      if (key_less(cand.key, best.key)) best = std::move(cand);
    }
    out.push_back(std::move(best));
  }
  std::sort(out.begin(), out.end(), [](const Encoded& a, const Encoded& b) { return key_less(a.key, b.key); });
  return out;
}

std::vector<Rational> serialize(const S1Graph& g) {
  std::vector<Rational> key;
  for (const auto& c : components(g)) key.insert(key.end(), c.key.begin(), c.key.end());
  return key;
}

S1Graph renumber(const S1Graph& g) {
  std::map<int, int> ids;
  S1Graph out;
  for (const auto& c : components(g)) {
    for (int id : c.order) {
      FixedComponent v = g.vertex(id);
      v.id = static_cast<int>(ids.size());
      ids[id] = v.id;
      out.vertices.push_back(v);
    }
  }
  for (auto e : g.edges) {
    e.north = ids.at(e.north);
    e.south = ids.at(e.south);
    out.edges.push_back(e);
  }
  std::sort(out.edges.begin(), out.edges.end(), [](const GraphEdge& a, const GraphEdge& b) {
    return std::tie(a.north, a.south, a.k) < std::tie(b.north, b.south, b.k);
  });
  return out;
}

S1Graph translated(S1Graph g, const Rational& shift) {
  for (auto& v : g.vertices) v.moment += shift;
  return g;
}

S1Graph flipped(S1Graph g) {
  for (auto& v : g.vertices) {
    v.moment = -v.moment;
    v.weights = {-v.weights[1], -v.weights[0]};
  }
  for (auto& e : g.edges) std::swap(e.north, e.south);
  return g;
}

}  // namespace

std::vector<Rational> graph_key(const S1Graph& g) { return serialize(g); }

bool graph_less(const S1Graph& a, const S1Graph& b) { return key_less(serialize(a), serialize(b)); }

S1Graph canonical_form(const S1Graph& g) {
  S1Graph up = renumber(translated(g, -g.min_moment()));
  S1Graph f = flipped(g);
  S1Graph down = renumber(translated(f, -f.min_moment()));
  return graph_less(down, up) ? down : up;
}

std::vector<S1Graph> enumerate_equivariant_blowups(const S1Graph& g, const Rational& delta) {
  std::vector<S1Graph> out;
  for (const auto& v : g.vertices) {
    if (!can_blow_up(g, v.id, delta).ok) continue;
    S1Graph c = canonical_form(blow_up(g, v.id, delta));
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), graph_less);
  return out;
}

std::string to_string(const S1Graph& g) {
  std::ostringstream os;
  std::vector<FixedComponent> vs = g.vertices;
  std::stable_sort(vs.begin(), vs.end(), [](const FixedComponent& a, const FixedComponent& b) { return a.moment > b.moment; });
  for (const auto& v : vs) {
    os << "  [" << v.id << "] moment " << to_string(v.moment);
    if (v.surface) {
      os << "  surface genus " << v.genus << " area " << to_string(v.area);
    } else {
      os << "  weights (" << v.weights[0] << ", " << v.weights[1] << ")";
    }
    os << "\n";
  }
  for (const auto& e : g.edges)
    os << "    Z_" << e.k << " sphere " << e.north << " -> " << e.south << "  area " << to_string(edge_area(g, e)) << "\n";
  return os.str();
}

}  // namespace torus_census::circle
