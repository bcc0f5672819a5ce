#include "torus_census/render.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

namespace torus_census::render {

using torus_census::to_string;

namespace {

std::string fixed(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string vec(const polygon::IntVec& v) { return "(" + v[0].get_str() + "," + v[1].get_str() + ")"; }

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

}  // namespace

std::string polygon_table(const polygon::RationalPolygon& poly) {
  std::ostringstream os;
  os << pad("edge", 6) << pad("normal", 12) << pad("length", 12) << "self-int\n";
  auto es = polygon::edges(poly);
  for (const auto& e : es)
    os << pad(std::to_string(e.index), 6) << pad(vec(e.normal), 12) << pad(to_string(e.length), 12)
       << polygon::self_intersection(poly, e.index) << "\n";
  return os.str();
}

std::string invariants_table(const polygon::PolygonInvariants& inv) {
  std::ostringstream os;
  os << "N = " << inv.edge_count << "\n";
  os << "b2 = " << inv.b2 << "\n";
  os << "area = " << to_string(inv.euclidean_area) << "\n";
  os << "perimeter = " << to_string(inv.perimeter) << "\n";
  os << "edge areas:";
  for (const auto& a : inv.edge_areas) os << " " << to_string(a);
  os << "\nself-intersections:";
  for (long s : inv.self_intersections) os << " " << s;
  os << "\n";
  return os.str();
}

std::string polygon_svg(const polygon::RationalPolygon& poly) {
  double minx = 0, maxx = 0, miny = 0, maxy = 0;
  bool first = true;
  for (const auto& v : poly.vertices) {
    double x = v[0].get_d(), y = v[1].get_d();
    if (first) {
      minx = maxx = x;
      miny = maxy = y;
      first = false;
    }
    minx = std::min(minx, x);
    maxx = std::max(maxx, x);
    miny = std::min(miny, y);
    maxy = std::max(maxy, y);
  }
  double extent = std::max({maxx - minx, maxy - miny, 1e-9});
  double s = 360.0 / extent;
  auto px = [&](const polygon::Point& p) { return 20.0 + (p[0].get_d() - minx) * s; };
  auto py = [&](const polygon::Point& p) { return 380.0 - (p[1].get_d() - miny) * s; };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"400\" height=\"400\" viewBox=\"0 0 400 400\">\n";
  os << "  <polygon fill=\"#dde8f4\" stroke=\"#1f3b5a\" stroke-width=\"2\" points=\"";
  for (std::size_t i = 0; i < poly.size(); ++i) os << (i ? " " : "") << fixed(px(poly.vertices[i])) << "," << fixed(py(poly.vertices[i]));
  os << "\"/>\n";
  auto es = polygon::edges(poly);
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const auto& a = poly.vertex(i);
    const auto& b = poly.vertex(i + 1);
    double mx = (px(a) + px(b)) / 2, my = (py(a) + py(b)) / 2;
    os << "  <text x=\"" << fixed(mx) << "\" y=\"" << fixed(my) << "\" font-size=\"11\">" << to_string(es[i].length)
       << " [" << polygon::self_intersection(poly, i) << "]</text>\n";
  }
  for (const auto& v : poly.vertices)
    os << "  <circle cx=\"" << fixed(px(v)) << "\" cy=\"" << fixed(py(v)) << "\" r=\"3\" fill=\"#1f3b5a\"/>\n";
  os << "</svg>\n";
  return os.str();
}

std::string graph_table(const circle::S1Graph& g) { return circle::to_string(g); }

std::string graph_svg(const circle::S1Graph& g) {
  double lo = g.min_moment().get_d(), hi = g.max_moment().get_d();
  double span = std::max(hi - lo, 1e-9);
  auto y = [&](const Rational& m) { return 380.0 - (m.get_d() - lo) / span * 360.0; };
  std::map<Rational, int> used;
  std::map<int, double> xs;
  std::vector<circle::FixedComponent> vs = g.vertices;
  std::stable_sort(vs.begin(), vs.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  for (const auto& v : vs) xs[v.id] = 80.0 + 90.0 * used[v.moment]++;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"400\" height=\"400\" viewBox=\"0 0 400 400\">\n";
  for (const auto& e : g.edges) {
    const auto& n = g.vertex(e.north);
    const auto& s = g.vertex(e.south);
    os << "  <line x1=\"" << fixed(xs[n.id]) << "\" y1=\"" << fixed(y(n.moment)) << "\" x2=\"" << fixed(xs[s.id])
       << "\" y2=\"" << fixed(y(s.moment)) << "\" stroke=\"#7a2e2e\" stroke-width=\"2\"/>\n";
    os << "  <text x=\"" << fixed((xs[n.id] + xs[s.id]) / 2 + 4) << "\" y=\"" << fixed((y(n.moment) + y(s.moment)) / 2)
       << "\" font-size=\"11\">" << e.k << "</text>\n";
  }
  for (const auto& v : vs) {
    if (v.surface) {
      os << "  <rect x=\"" << fixed(xs[v.id] - 30) << "\" y=\"" << fixed(y(v.moment) - 5)
         << "\" width=\"60\" height=\"10\" fill=\"#2e5a7a\"/>\n";
      os << "  <text x=\"" << fixed(xs[v.id] + 36) << "\" y=\"" << fixed(y(v.moment) + 4) << "\" font-size=\"11\">g="
         << v.genus << " A=" << to_string(v.area) << "</text>\n";
    } else {
      os << "  <circle cx=\"" << fixed(xs[v.id]) << "\" cy=\"" << fixed(y(v.moment)) << "\" r=\"4\" fill=\"#2e5a7a\"/>\n";
    }
    os << "  <text x=\"4\" y=\"" << fixed(y(v.moment) + 4) << "\" font-size=\"10\">" << to_string(v.moment) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string census_table(const census::CensusResult& r) {
  std::ostringstream os;
  os << "manifold: " << r.spec.describe() << "\n";
  if (!r.realizable) os << "realizable: no\n";
  if (r.model) {
    os << "minimal model: " << r.model->describe();
    if (!r.folded_capacities.empty()) {
      os << " with blow-ups";
      for (const auto& c : r.folded_capacities) os << " " << to_string(c);
    }
    os << "\n";
  }
  os << "toric count: " << r.toric.size() << "\n";
  os << "maximal circle count: " << r.maximal_circles.size() << "\n";
  os << "total maximal tori: " << r.toric.size() + r.maximal_circles.size() << "\n";
  for (std::size_t i = 0; i < r.toric.size(); ++i) {
    const auto& e = r.toric[i];
    auto inv = polygon::invariants(e.polygon);
    os << "\ntoric #" << i + 1 << ": " << polygon::to_string(e.polygon) << "\n";
    os << "  N=" << inv.edge_count << " area=" << to_string(inv.euclidean_area) << " perimeter=" << to_string(inv.perimeter)
       << " self-intersections";
    for (long s : inv.self_intersections) os << " " << s;
    os << "\n  provenance: " << polygon::to_string(e.provenance.base);
    for (const auto& s : e.provenance.steps) os << " -> chop vertex " << s.at << " by " << to_string(s.delta);
    os << "\n";
  }
  for (std::size_t i = 0; i < r.maximal_circles.size(); ++i) {
    const auto& e = r.maximal_circles[i];
    os << "\ncircle #" << i + 1 << ":\n" << circle::to_string(e.graph);
    os << "  provenance: ";
    if (e.provenance.origin == census::GraphProvenance::Origin::RuledBase) {
      os << "ruled base graph of degree " << e.provenance.degree;
    } else {
      os << "projection along (" << e.provenance.xi[0] << "," << e.provenance.xi[1] << ") of "
         << polygon::to_string(e.provenance.polygon.base);
      for (const auto& s : e.provenance.polygon.steps) os << " -> chop vertex " << s.at << " by " << to_string(s.delta);
    }
    for (const auto& s : e.provenance.steps) os << " -> blow up vertex " << s.at << " by " << to_string(s.delta);
    os << "\n";
  }
  for (const auto& w : r.warnings) os << "warning: " << w << "\n";
  for (const auto& n : r.notes) os << "note: " << n << "\n";
  return os.str();
}

std::string feasibility_table(const census::FeasibilityReport& r) {
  auto yn = [](bool b) { return b ? "yes" : "no"; };
  std::ostringstream os;
  os << "k = " << r.k << ", delta = " << to_string(r.delta) << "\n";
  os << "toric: " << yn(r.toric_formula) << "\n";
  os << "circle: " << yn(r.circle_formula) << "\n";
  os << "census: toric " << r.toric_count << ", maximal circles " << r.maximal_circle_count
     << (r.realizable ? "" : " (not realizable)") << "\n";
  os << "agreement: toric " << yn(r.toric_agrees) << ", maximal circles " << yn(r.circle_agrees)
     << ", circle existence " << yn(r.circle_existence_agrees) << "\n";
  for (const auto& w : r.warnings) os << "warning: " << w << "\n";
  return os.str();
}

std::string classes_table(const std::vector<lattice::HomologyClass>& classes, const lattice::SymplecticData& omega) {
  std::ostringstream os;
  os << pad("class", 36) << "area\n";
  for (const auto& c : classes) os << pad(c.to_string(), 36) << to_string(lattice::area(c, omega)) << "\n";
  os << classes.size() << " classes\n";
  return os.str();
}

std::string chains_table(const std::vector<lattice::BlowdownChain>& chains) {
  std::ostringstream os;
  for (std::size_t i = 0; i < chains.size(); ++i) {
    const auto& ch = chains[i];
    os << "chain " << i + 1 << ":";
    for (const auto& s : ch.steps) os << " " << s.original.to_string() << " (" << to_string(s.area) << ")";
    os << " -> " << ch.terminal.basis.describe();
    os << " areas";
    for (const auto& a : ch.terminal.area_vector()) os << " " << to_string(a);
    os << "\n";
  }
  os << chains.size() << " chains\n";
  return os.str();
}

std::string threshold_table(const lattice::CapacityThreshold& t) {
  std::ostringstream os;
  os << "threshold = " << to_string(t.threshold) << "\n";
  os << "binding:";
  for (const auto& c : t.binding) os << " " << c.to_string();
  os << "\n";
  return os.str();
}

}  // namespace torus_census::render
