#include "torus_census/lattice.hpp"

#include "torus_census/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace torus_census::lattice {

namespace {

using RMatrix = std::vector<std::vector<Rational>>;

RMatrix to_rational(const Matrix& m) {
  RMatrix out(m.size(), std::vector<Rational>(m.empty() ? 0 : m[0].size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j) out[i][j] = Rational(m[i][j]);
  return out;
}

// Gauss-Jordan inverse over Q. The input must be nonsingular.
RMatrix inverse(RMatrix a) {
  const std::size_t n = a.size();
  RMatrix inv(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) throw std::logic_error("singular matrix");
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    Rational scale = a[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] /= scale;
      inv[col][j] /= scale;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rational f = a[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

// Smallest integer x with (x - c)^2 <= t, and the largest; empty when lo > hi.
std::pair<Integer, Integer> integer_window(const Rational& c, const Rational& t) {
  double cd = c.get_d();
  double rd = std::sqrt(std::max(0.0, t.get_d()));
  auto inside = [&](const Integer& x) {
    Rational d = Rational(x) - c;
    return d * d <= t;
  };
  // floating estimate, then exact correction in both directions
  Integer lo(std::floor(cd - rd));
  Integer hi(std::ceil(cd + rd));
  while (inside(lo - 1)) --lo;
  while (inside(hi + 1)) ++hi;
  while (lo <= hi && !inside(lo)) ++lo;
  while (hi >= lo && !inside(hi)) --hi;
  return {lo, hi};
}

// Lattice points x with x^T Q x <= bound for a positive definite rational Q
// (Fincke-Pohst, exact). Calls visit for every point.
void enumerate_ellipsoid(const RMatrix& q, const Rational& bound,
                         const std::function<void(const std::vector<Integer>&)>& visit) {
  const std::size_t n = q.size();
  // q(x) = sum_i d_i (x_i + sum_{j>i} u_ij x_j)^2
  RMatrix a = q;
  std::vector<Rational> d(n);
  RMatrix u(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = a[i][i];
    if (d[i] <= 0) throw std::logic_error("majorant is not positive definite");
    for (std::size_t j = i + 1; j < n; ++j) u[i][j] = a[i][j] / d[i];
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t l = i + 1; l < n; ++l) a[j][l] -= a[j][i] * a[i][l] / d[i];
  }
  std::vector<Integer> x(n, Integer(0));
  std::function<void(std::size_t, const Rational&)> rec = [&](std::size_t level, const Rational& used) {
    // level counts down from n to 1; coordinate index is level - 1
    const std::size_t i = level - 1;
    Rational center = 0;
    for (std::size_t j = i + 1; j < n; ++j) center -= u[i][j] * x[j];
    Rational room = (bound - used) / d[i];
    if (room < 0) return;
    auto [lo, hi] = integer_window(center, room);
    for (Integer v = lo; v <= hi; ++v) {
      x[i] = v;
      Rational diff = Rational(v) - center;
      Rational next = used + d[i] * diff * diff;
      if (i == 0) {
        visit(x);
      } else {
        rec(level - 1, next);
      }
    }
    x[i] = 0;
  };
  if (n > 0) rec(n, Rational(0));
}

std::vector<Rational> mat_vec(const Matrix& m, const std::vector<Rational>& v) {
  std::vector<Rational> out(m.size(), Rational(0));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += Rational(m[i][j]) * v[j];
  return out;
}

Rational dot(const std::vector<Rational>& a, const std::vector<Integer>& x) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * x[i];
  return s;
}

void require_same_basis(const HomologyClass& a, const HomologyClass& b) {
  if (!(a.basis == b.basis))
    throw PreconditionError("basis mismatch: " + a.basis.describe() + " vs " + b.basis.describe());
}

// Homological surrogate for positivity of intersections with the fibre (or
// line) class and with the exceptional divisors of the recipe.
bool passes_positivity(const HomologyClass& x) {
  const Basis& basis = x.basis;
  if (x.coeffs[0] < 0) return false;  // X.L = a for rational, X.F = coefficient of B for ruled
  if (basis.is_ruled() && basis.genus >= 1 && x.coeffs[0] != 0) return false;
  auto own = x.as_exceptional_symbol();
  for (std::size_t i = basis.first_exceptional(); i < basis.rank(); ++i) {
    if (own && *own == i) continue;
    if (x.coeffs[i] > 0) return false;  // X.E_i = -coefficient
  }
  return true;
}

struct SearchSpec {
  int square;
  int chern_value;
  Rational lo;
  Rational hi;
  bool lo_strict;
};

std::vector<HomologyClass> enumerate_classes(const SymplecticData& omega, const SearchSpec& spec, long ceiling) {
  const Basis& basis = omega.basis;
  const std::size_t n = basis.rank();
  Matrix g = gram_matrix(basis);
  std::vector<Rational> pd = poincare_dual(omega);
  std::vector<Rational> p = mat_vec(g, pd);  // P.X = p . x
  Rational p2 = 0;
  for (std::size_t i = 0; i < n; ++i) p2 += pd[i] * p[i];
  if (p2 <= 0) throw PreconditionError("symplectic volume is not positive");

  // Majorant 2 (P.X)^2 / P^2 - X.X is positive definite since P is timelike.
  RMatrix q(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) q[i][j] = 2 * p[i] * p[j] / p2 - Rational(g[i][j]);
  Rational reach = std::max(spec.lo * spec.lo, spec.hi * spec.hi);
  Rational bound = 2 * reach / p2 - spec.square;

  RMatrix qinv = inverse(q);
  Integer leading = floor_sqrt(bound * qinv[0][0]);
  if (leading > ceiling) {
    throw CertificationError("bound not certified: leading coefficient may reach " + leading.get_str() +
                             " > search ceiling " + std::to_string(ceiling));
  }

  std::vector<Integer> chern_v = chern_vector(basis);
  std::vector<Rational> areas = omega.area_vector();
  std::set<HomologyClass> found;
  enumerate_ellipsoid(q, bound, [&](const std::vector<Integer>& x) {
    HomologyClass c(basis, x);
    if (intersect(c, c) != spec.square) return;
    Integer c1 = 0;
    for (std::size_t i = 0; i < n; ++i) c1 += chern_v[i] * x[i];
    if (c1 != spec.chern_value) return;
    Rational a = dot(areas, x);
    if (a > spec.hi || a < spec.lo || (spec.lo_strict && a == spec.lo)) return;
    if (!passes_positivity(c)) return;
    found.insert(std::move(c));
  });
  return {found.begin(), found.end()};
}

HomologyClass combine(const std::vector<HomologyClass>& images, const HomologyClass& x) {
  HomologyClass out = HomologyClass::zero(images.at(0).basis);
  for (std::size_t s = 0; s < images.size(); ++s) {
    if (x.coeffs[s] == 0) continue;
    out = out + images[s] * x.coeffs[s];
  }
  return out;
}

// Coordinates of x (source basis) in the sublattice spanned by images, whose
// Gram matrix equals that of target.
HomologyClass coordinates(const std::vector<HomologyClass>& images, const Basis& target, const HomologyClass& x) {
  RMatrix ginv = inverse(to_rational(gram_matrix(target)));
  std::vector<Rational> pairings;
  for (const auto& img : images) pairings.emplace_back(intersect(img, x));
  std::vector<Integer> coeffs(images.size());
  for (std::size_t i = 0; i < images.size(); ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < images.size(); ++j) s += ginv[i][j] * pairings[j];
    if (s.get_den() != 1) throw UnsupportedBlowdown("class " + x.to_string() + " is not in the image lattice");
    coeffs[i] = s.get_num();
  }
  HomologyClass out(target, coeffs);
  if (!(combine(images, out) == x))
    throw UnsupportedBlowdown("class " + x.to_string() + " is not in the image lattice");
  return out;
}

BlowdownTransport finish_transport(const SymplecticData& omega, const Basis& target,
                                   std::vector<HomologyClass> images, const HomologyClass* removed) {
  const Matrix gt = gram_matrix(target);
  const std::vector<Integer> ct = chern_vector(target);
  if (images.size() != target.rank()) throw std::logic_error("transport rank mismatch");
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (removed && intersect(images[i], *removed) != 0) throw std::logic_error("transport image not orthogonal");
    if (chern(images[i]) != ct[i]) throw std::logic_error("transport does not preserve c1");
    for (std::size_t j = 0; j < images.size(); ++j)
      if (intersect(images[i], images[j]) != gt[i][j]) throw std::logic_error("transport is not an isometry");
  }
  // capacities sorted decreasingly, images permuted along
  const std::size_t first = target.first_exceptional();
  std::vector<std::size_t> order(target.blowups);
  std::iota(order.begin(), order.end(), first);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return area(images[a], omega) > area(images[b], omega);
  });
  std::vector<HomologyClass> sorted(images.begin(), images.begin() + static_cast<long>(first));
  for (auto idx : order) sorted.push_back(images[idx]);

  SymplecticData out;
  out.basis = target;
  if (target.is_ruled()) {
    out.base_area = area(sorted[0], omega);
    out.fiber_area = area(sorted[1], omega);
  } else {
    out.base_area = area(sorted[0], omega);
    out.fiber_area = 0;
  }
  for (std::size_t i = first; i < sorted.size(); ++i) out.capacities.push_back(area(sorted[i], omega));
  try {
    out.validate();
  } catch (const PreconditionError& e) {
    std::string what = removed ? removed->to_string() : std::string("conversion");
    throw UnsupportedBlowdown("unsupported blow-down class " + what + ": transported data invalid (" + e.what() + ")");
  }
  return {out, sorted};
}

HomologyClass from_coeffs(const Basis& b, std::initializer_list<std::pair<std::size_t, long>> entries) {
  HomologyClass c = HomologyClass::zero(b);
  for (auto [i, v] : entries) c.coeffs.at(i) += v;
  return c;
}

// Cremona reduction on Rational(k), k >= 3: compose reflections in the roots
// E_i - E_j and L - E_i - E_j - E_l until the class becomes E_k.
BlowdownTransport cremona_blow_down(const SymplecticData& omega, const HomologyClass& e) {
  const Basis& basis = omega.basis;
  const std::size_t n = basis.rank();
  const std::size_t k = static_cast<std::size_t>(basis.blowups);
  const Matrix g = gram_matrix(basis);

  Matrix phi_inv(n, std::vector<Integer>(n, Integer(0)));
  for (std::size_t i = 0; i < n; ++i) phi_inv[i][i] = 1;
  std::vector<Integer> x = e.coeffs;

  auto reflect = [&](const std::vector<Integer>& root) {
    std::vector<Integer> groot(n, Integer(0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) groot[i] += g[i][j] * root[j];
    Integer xr = 0;
    for (std::size_t i = 0; i < n; ++i) xr += x[i] * groot[i];
    for (std::size_t i = 0; i < n; ++i) x[i] += xr * root[i];
    // phi_inv <- phi_inv * S with S = I + root groot^T
    for (std::size_t r = 0; r < n; ++r) {
      Integer t = 0;
      for (std::size_t i = 0; i < n; ++i) t += phi_inv[r][i] * root[i];
      for (std::size_t j = 0; j < n; ++j) phi_inv[r][j] += t * groot[j];
    }
  };

  constexpr int kMaxReflections = 512;
  for (int iter = 0;; ++iter) {
    if (iter > kMaxReflections) throw UnsupportedBlowdown("unsupported blow-down class " + e.to_string());
    HomologyClass cur(basis, x);
    if (auto idx = cur.as_exceptional_symbol()) {
      if (*idx != k) {
        std::vector<Integer> root(n, Integer(0));
        root[*idx] = 1;
        root[k] = -1;
        reflect(root);
      }
      break;
    }
    if (x[0] <= 0) throw UnsupportedBlowdown("unsupported blow-down class " + e.to_string());
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), 1);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return -x[a] > -x[b]; });
    Integer defect = x[0] + x[idx[0]] + x[idx[1]] + x[idx[2]];  // a - b_i - b_j - b_l
    if (defect >= 0) throw UnsupportedBlowdown("unsupported blow-down class " + e.to_string());
    std::vector<Integer> root(n, Integer(0));
    root[0] = 1;
    root[idx[0]] = root[idx[1]] = root[idx[2]] = -1;
    reflect(root);
  }

  std::vector<HomologyClass> images;
  for (std::size_t s = 0; s < k; ++s) {
    std::vector<Integer> col(n);
    for (std::size_t r = 0; r < n; ++r) col[r] = phi_inv[r][s];
    images.emplace_back(basis, col);
  }
  return finish_transport(omega, Basis::rational(basis.blowups - 1), images, &e);
}

}  // namespace

// ---------------------------------------------------------------- Basis

Basis Basis::rational(int k) {
  if (k < 0) throw PreconditionError("negative number of blow-ups");
  return {BaseKind::Rational, 0, k};
}

Basis Basis::product_ruled(int genus, int k) {
  if (k < 0 || genus < 0) throw PreconditionError("negative genus or number of blow-ups");
  return {BaseKind::ProductRuled, genus, k};
}

Basis Basis::twisted_ruled(int genus, int k) {
  if (k < 0 || genus < 0) throw PreconditionError("negative genus or number of blow-ups");
  return {BaseKind::TwistedRuled, genus, k};
}

std::string Basis::symbol(std::size_t index) const {
  if (index >= rank()) throw PreconditionError("symbol index out of range");
  if (!is_ruled()) return index == 0 ? "L" : "E" + std::to_string(index);
  if (index == 0) return "B";
  if (index == 1) return "F";
  return "E" + std::to_string(index - 1);
}

std::string Basis::describe() const {
  switch (kind) {
    case BaseKind::Rational:
      return "Rational(" + std::to_string(blowups) + ")";
    case BaseKind::ProductRuled:
      return "ProductRuled(" + std::to_string(genus) + ", " + std::to_string(blowups) + ")";
    case BaseKind::TwistedRuled:
      return "TwistedRuled(" + std::to_string(genus) + ", " + std::to_string(blowups) + ")";
  }
  return "?";
}

Matrix gram_matrix(const Basis& basis) {
  const std::size_t n = basis.rank();
  Matrix g(n, std::vector<Integer>(n, Integer(0)));
  switch (basis.kind) {
    case BaseKind::Rational:
      g[0][0] = 1;
      break;
    case BaseKind::ProductRuled:
      g[0][1] = g[1][0] = 1;
      break;
    case BaseKind::TwistedRuled:
      g[0][0] = -1;
      g[0][1] = g[1][0] = 1;
      break;
  }
  for (std::size_t i = basis.first_exceptional(); i < n; ++i) g[i][i] = -1;
  return g;
}

std::vector<Integer> chern_vector(const Basis& basis) {
  std::vector<Integer> c(basis.rank(), Integer(1));
  switch (basis.kind) {
    case BaseKind::Rational:
      c[0] = 3;
      break;
    case BaseKind::ProductRuled:
      c[0] = 2 - 2 * basis.genus;
      c[1] = 2;
      break;
    case BaseKind::TwistedRuled:
      c[0] = 1 - 2 * basis.genus;
      c[1] = 2;
      break;
  }
  return c;
}

// ---------------------------------------------------------------- HomologyClass

HomologyClass::HomologyClass(Basis b, std::vector<Integer> c) : basis(b), coeffs(std::move(c)) {
  if (coeffs.size() != basis.rank())
    throw PreconditionError("class has " + std::to_string(coeffs.size()) + " coefficients, basis " +
                            basis.describe() + " has rank " + std::to_string(basis.rank()));
}

HomologyClass HomologyClass::zero(const Basis& basis) {
  return HomologyClass(basis, std::vector<Integer>(basis.rank(), Integer(0)));
}

HomologyClass HomologyClass::unit(const Basis& basis, std::size_t index) {
  HomologyClass c = zero(basis);
  c.coeffs.at(index) = 1;
  return c;
}

HomologyClass HomologyClass::exceptional(const Basis& basis, int i) {
  if (i < 1 || i > basis.blowups) throw PreconditionError("no exceptional symbol E" + std::to_string(i));
  return unit(basis, basis.first_exceptional() + static_cast<std::size_t>(i - 1));
}

std::optional<std::size_t> HomologyClass::as_exceptional_symbol() const {
  std::optional<std::size_t> hit;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == 0) continue;
    if (coeffs[i] != 1 || i < basis.first_exceptional() || hit) return std::nullopt;
    hit = i;
  }
  return hit;
}

HomologyClass HomologyClass::operator+(const HomologyClass& other) const {
  require_same_basis(*this, other);
  HomologyClass out = *this;
  for (std::size_t i = 0; i < coeffs.size(); ++i) out.coeffs[i] += other.coeffs[i];
  return out;
}

HomologyClass HomologyClass::operator-(const HomologyClass& other) const {
  require_same_basis(*this, other);
  HomologyClass out = *this;
  for (std::size_t i = 0; i < coeffs.size(); ++i) out.coeffs[i] -= other.coeffs[i];
  return out;
}

HomologyClass HomologyClass::operator*(const Integer& scalar) const {
  HomologyClass out = *this;
  for (auto& c : out.coeffs) c *= scalar;
  return out;
}

std::string HomologyClass::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    const Integer& c = coeffs[i];
    if (c == 0) continue;
    if (c < 0) {
      os << (first ? "-" : " - ");
    } else if (!first) {
      os << " + ";
    }
    Integer mag = abs(c);
    if (mag != 1) os << mag.get_str();
    os << basis.symbol(i);
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

bool operator==(const HomologyClass& a, const HomologyClass& b) {
  return a.basis == b.basis && a.coeffs == b.coeffs;
}

bool operator<(const HomologyClass& a, const HomologyClass& b) {
  if (!(a.basis == b.basis)) return a.basis.describe() < b.basis.describe();
  return std::lexicographical_compare(a.coeffs.begin(), a.coeffs.end(), b.coeffs.begin(), b.coeffs.end());
}

Integer intersect(const HomologyClass& a, const HomologyClass& b) {
  require_same_basis(a, b);
  const Basis& basis = a.basis;
  Integer s = 0;
  switch (basis.kind) {
    case BaseKind::Rational:
      s = a.coeffs[0] * b.coeffs[0];
      break;
    case BaseKind::ProductRuled:
      s = a.coeffs[0] * b.coeffs[1] + a.coeffs[1] * b.coeffs[0];
      break;
    case BaseKind::TwistedRuled:
      s = -a.coeffs[0] * b.coeffs[0] + a.coeffs[0] * b.coeffs[1] + a.coeffs[1] * b.coeffs[0];
      break;
  }
  for (std::size_t i = basis.first_exceptional(); i < basis.rank(); ++i) s -= a.coeffs[i] * b.coeffs[i];
  return s;
}

Integer chern(const HomologyClass& a) {
  auto c = chern_vector(a.basis);
  Integer s = 0;
  for (std::size_t i = 0; i < c.size(); ++i) s += c[i] * a.coeffs[i];
  return s;
}

// ---------------------------------------------------------------- SymplecticData

SymplecticData SymplecticData::rational(Rational lambda, std::vector<Rational> capacities) {
  SymplecticData d;
  d.basis = Basis::rational(static_cast<int>(capacities.size()));
  d.base_area = std::move(lambda);
  d.fiber_area = 0;
  d.capacities = std::move(capacities);
  d.validate();
  return d;
}

SymplecticData SymplecticData::ruled(bool twisted, int genus, Rational mu, std::vector<Rational> capacities,
                                     Rational fiber) {
  SymplecticData d;
  const int k = static_cast<int>(capacities.size());
  d.basis = twisted ? Basis::twisted_ruled(genus, k) : Basis::product_ruled(genus, k);
  d.base_area = std::move(mu);
  d.fiber_area = std::move(fiber);
  d.capacities = std::move(capacities);
  d.validate();
  return d;
}

void SymplecticData::validate() const {
  if (capacities.size() != static_cast<std::size_t>(basis.blowups))
    throw PreconditionError("capacity count does not match the basis");
  if (base_area <= 0) throw PreconditionError("base area must be positive");
  if (basis.is_ruled() && fiber_area <= 0) throw PreconditionError("fiber area must be positive");
  for (std::size_t i = 0; i < capacities.size(); ++i) {
    if (capacities[i] <= 0) throw PreconditionError("capacities must be positive");
    if (i > 0 && capacities[i] > capacities[i - 1])
      throw PreconditionError("capacities must be weakly decreasing");
  }
  if (volume_quantity(*this) <= 0) throw PreconditionError("symplectic volume must be positive");
}

std::vector<Rational> SymplecticData::area_vector() const {
  std::vector<Rational> v;
  v.push_back(base_area);
  if (basis.is_ruled()) v.push_back(fiber_area);
  for (const auto& c : capacities) v.push_back(c);
  return v;
}

Rational area(const HomologyClass& a, const SymplecticData& omega) {
  if (!(a.basis == omega.basis))
    throw PreconditionError("basis mismatch: " + a.basis.describe() + " vs " + omega.basis.describe());
  auto v = omega.area_vector();
  return dot(v, a.coeffs);
}

std::vector<Rational> poincare_dual(const SymplecticData& omega) {
  std::vector<Rational> pd;
  const Rational& f = omega.fiber_area;
  switch (omega.basis.kind) {
    case BaseKind::Rational:
      pd.push_back(omega.base_area);
      break;
    case BaseKind::ProductRuled:
      pd.push_back(f);
      pd.push_back(omega.base_area);
      break;
    case BaseKind::TwistedRuled:
      pd.push_back(f);
      pd.push_back(omega.base_area + f);
      break;
  }
  for (const auto& c : omega.capacities) pd.push_back(-c);
  return pd;
}

Rational volume_quantity(const SymplecticData& omega) {
  auto pd = poincare_dual(omega);
  auto g = gram_matrix(omega.basis);
  Rational s = 0;
  for (std::size_t i = 0; i < pd.size(); ++i)
    for (std::size_t j = 0; j < pd.size(); ++j) s += pd[i] * pd[j] * g[i][j];
  return s;
}

Rational chern_pairing(const SymplecticData& omega) {
  auto pd = poincare_dual(omega);
  auto c = chern_vector(omega.basis);
  Rational s = 0;
  for (std::size_t i = 0; i < pd.size(); ++i) s += pd[i] * c[i];
  return s;
}

// ---------------------------------------------------------------- enumeration

std::vector<HomologyClass> enumerate_exceptional_candidates(const SymplecticData& omega, const Rational& area_bound,
                                                            long search_ceiling) {
  if (area_bound <= 0) throw PreconditionError("area bound must be positive");
  return enumerate_classes(omega, {-1, 1, Rational(0), area_bound, true}, search_ceiling);
}

std::vector<HomologyClass> exceptional_classes_in_range(const SymplecticData& omega, const Rational& lo,
                                                        const Rational& hi, long search_ceiling) {
  if (lo > hi) throw PreconditionError("empty area range");
  return enumerate_classes(omega, {-1, 1, lo, hi, false}, search_ceiling);
}

MinimalClasses minimal_exceptional_classes(const SymplecticData& omega, long search_ceiling) {
  if (omega.basis.blowups < 1) throw PreconditionError("no exceptional divisor: recipe has no blow-ups");
  auto all = enumerate_exceptional_candidates(omega, omega.capacities.back(), search_ceiling);
  MinimalClasses out;
  bool first = true;
  for (auto& c : all) {
    Rational a = area(c, omega);
    if (first || a < out.epsilon) {
      out.epsilon = a;
      out.classes.clear();
      first = false;
    }
    if (a == out.epsilon) out.classes.push_back(c);
  }
  if (first) throw std::logic_error("E_k missing from exceptional candidates");
  return out;
}

std::vector<HomologyClass> enumerate_bounded_classes(const Basis& basis, const std::vector<Rational>& a_coeffs,
                                                     const Rational& lo, const Rational& hi, const Rational& p,
                                                     const Rational& q) {
  if (a_coeffs.size() != basis.rank()) throw PreconditionError("class A does not match the basis");
  if (lo > hi) throw PreconditionError("empty pairing interval: a > b");
  if (p <= 0 || p > q) throw PreconditionError("need 0 < p <= q");
  const std::size_t n = basis.rank();
  Matrix g = gram_matrix(basis);
  std::vector<Rational> ga = mat_vec(g, a_coeffs);
  Rational a2 = 0;
  for (std::size_t i = 0; i < n; ++i) a2 += a_coeffs[i] * ga[i];
  if (a2 < 0) throw PreconditionError("A.A must be nonnegative");
  if (a2 == 0) throw PreconditionError("A.A = 0: the bounded set is not compact");

  RMatrix m(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m[i][j] = 2 * ga[i] * ga[j] / a2 - Rational(g[i][j]);
  Rational bound = 2 * std::max(lo * lo, hi * hi) / a2 + q;

  std::set<HomologyClass> found;
  enumerate_ellipsoid(m, bound, [&](const std::vector<Integer>& x) {
    HomologyClass c(basis, x);
    Integer sq = intersect(c, c);
    if (Rational(sq) < -q || Rational(sq) > -p) return;
    Rational ax = 0;
    for (std::size_t i = 0; i < n; ++i) ax += ga[i] * x[i];
    if (ax < lo || ax > hi) return;
    found.insert(std::move(c));
  });
  return {found.begin(), found.end()};
}

// ---------------------------------------------------------------- blow-downs

BlowdownTransport to_rational_model(const SymplecticData& omega) {
  const Basis& b = omega.basis;
  if (!b.is_ruled() || b.genus != 0) throw PreconditionError("only genus-0 ruled recipes are rational");
  std::vector<HomologyClass> images;
  const std::size_t first = b.first_exceptional();
  if (b.kind == BaseKind::ProductRuled) {
    if (b.blowups < 1) throw PreconditionError("S2 x S2 is not a blow-up of CP2");
    images.push_back(from_coeffs(b, {{0, 1}, {1, 1}, {first, -1}}));  // L = B + F - E1
    images.push_back(from_coeffs(b, {{1, 1}, {first, -1}}));          // F - E1
    images.push_back(from_coeffs(b, {{0, 1}, {first, -1}}));          // B - E1
    for (int j = 2; j <= b.blowups; ++j) images.push_back(HomologyClass::exceptional(b, j));
  } else {
    images.push_back(from_coeffs(b, {{0, 1}, {1, 1}}));  // L = B + F
    images.push_back(from_coeffs(b, {{0, 1}}));          // B
    for (int j = 1; j <= b.blowups; ++j) images.push_back(HomologyClass::exceptional(b, j));
  }
  return finish_transport(omega, Basis::rational(static_cast<int>(images.size()) - 1), images, nullptr);
}

BlowdownTransport blow_down_transport(const SymplecticData& omega, const HomologyClass& e) {
  const Basis& b = omega.basis;
  if (!(e.basis == b)) throw PreconditionError("basis mismatch");
  if (b.blowups < 1) throw PreconditionError("no exceptional divisor: recipe has no blow-ups");
  if (intersect(e, e) != -1 || chern(e) != 1 || area(e, omega) <= 0)
    throw PreconditionError("class " + e.to_string() + " is not an exceptional candidate");

  const std::size_t first = b.first_exceptional();
  const Basis reduced = [&] {
    switch (b.kind) {
      case BaseKind::Rational:
        return Basis::rational(b.blowups - 1);
      case BaseKind::ProductRuled:
        return Basis::product_ruled(b.genus, b.blowups - 1);
      case BaseKind::TwistedRuled:
        return Basis::twisted_ruled(b.genus, b.blowups - 1);
    }
    return b;
  }();

  if (auto idx = e.as_exceptional_symbol()) {
    std::vector<HomologyClass> images;
    for (std::size_t s = 0; s < b.rank(); ++s)
      if (s != *idx) images.push_back(HomologyClass::unit(b, s));
    return finish_transport(omega, reduced, images, &e);
  }

  if (b.is_ruled()) {
    // F - E_i: elementary transformation, flips the bundle parity.
    for (std::size_t i = first; i < b.rank(); ++i) {
      if (!(e == from_coeffs(b, {{1, 1}, {i, -1}}))) continue;
      std::vector<HomologyClass> images;
      Basis target;
      if (b.kind == BaseKind::ProductRuled) {
        target = Basis::twisted_ruled(b.genus, b.blowups - 1);
        images.push_back(from_coeffs(b, {{0, 1}, {i, -1}}));
      } else {
        target = Basis::product_ruled(b.genus, b.blowups - 1);
        images.push_back(from_coeffs(b, {{0, 1}, {1, 1}, {i, -1}}));
      }
      images.push_back(HomologyClass::unit(b, 1));
      for (std::size_t s = first; s < b.rank(); ++s)
        if (s != i) images.push_back(HomologyClass::unit(b, s));
      return finish_transport(omega, target, images, &e);
    }
    if (b.genus != 0) throw UnsupportedBlowdown("unsupported blow-down class " + e.to_string());
    BlowdownTransport model = to_rational_model(omega);
    HomologyClass e_rat = coordinates(model.images, model.result.basis, e);
    BlowdownTransport inner = blow_down_transport(model.result, e_rat);
    for (auto& img : inner.images) img = combine(model.images, img);
    return finish_transport(omega, inner.result.basis, inner.images, &e);
  }

  if (b.blowups == 2) {
    if (!(e == from_coeffs(b, {{0, 1}, {1, -1}, {2, -1}})))
      throw UnsupportedBlowdown("unsupported blow-down class " + e.to_string());
    // L - E1 - E2 on CP2 # 2 CP2-bar: the complement is S2 x S2.
    std::vector<HomologyClass> images{from_coeffs(b, {{0, 1}, {2, -1}}), from_coeffs(b, {{0, 1}, {1, -1}})};
    return finish_transport(omega, Basis::product_ruled(0, 0), images, &e);
  }
  if (b.blowups < 2) throw UnsupportedBlowdown("unsupported blow-down class " + e.to_string());
  return cremona_blow_down(omega, e);
}

SymplecticData blow_down_class(const SymplecticData& omega, const HomologyClass& e) {
  return blow_down_transport(omega, e).result;
}

namespace {

void chains_dfs(const SymplecticData& omega, const std::vector<HomologyClass>& embedding,
                std::vector<BlowdownStep>& steps, std::vector<BlowdownChain>& out, std::size_t max_chains,
                long ceiling) {
  if (max_chains && out.size() >= max_chains) return;
  if (omega.basis.blowups == 0) {
    out.push_back({steps, omega});
    return;
  }
  MinimalClasses mins = minimal_exceptional_classes(omega, ceiling);
  // recipe divisors first, latest first, so the recipe itself is the first chain when it is minimal
  std::vector<HomologyClass> ordered;
  for (auto it = mins.classes.rbegin(); it != mins.classes.rend(); ++it)
    if (it->as_exceptional_symbol()) ordered.push_back(*it);
  std::sort(ordered.begin(), ordered.end(),
            [](const HomologyClass& a, const HomologyClass& b) {
              return *a.as_exceptional_symbol() > *b.as_exceptional_symbol();
            });
  for (const auto& c : mins.classes)
    if (!c.as_exceptional_symbol()) ordered.push_back(c);

  for (const auto& e : ordered) {
    BlowdownTransport t = blow_down_transport(omega, e);
    std::vector<HomologyClass> next;
    next.reserve(t.images.size());
    for (const auto& img : t.images) next.push_back(combine(embedding, img));
    steps.push_back({omega.basis.blowups, e, combine(embedding, e), mins.epsilon});
    chains_dfs(t.result, next, steps, out, max_chains, ceiling);
    steps.pop_back();
    if (max_chains && out.size() >= max_chains) return;
  }
}

}  // namespace

std::vector<BlowdownChain> minimal_blowdown_chains(const SymplecticData& omega, std::size_t max_chains,
                                                   long search_ceiling) {
  omega.validate();
  if (omega.basis.blowups < 1) throw PreconditionError("no exceptional divisor: recipe has no blow-ups");
  std::vector<HomologyClass> embedding;
  for (std::size_t s = 0; s < omega.basis.rank(); ++s) embedding.push_back(HomologyClass::unit(omega.basis, s));
  std::vector<BlowdownStep> steps;
  std::vector<BlowdownChain> out;
  chains_dfs(omega, embedding, steps, out, max_chains, search_ceiling);
  return out;
}

CapacityThreshold min_capacity_threshold(const SymplecticData& omega, long search_ceiling) {
  omega.validate();
  const Basis& b = omega.basis;
  const int k = b.blowups;
  if (k < 1) throw PreconditionError("no exceptional divisor: recipe has no blow-ups");
  const std::size_t last = b.first_exceptional() + static_cast<std::size_t>(k - 1);

  // Known competitors give a first upper bound: E_{k-1}, and the fibre class
  // through the last blow-up (L - E_k or F - E_k), which beats E_k at half the line or fibre.
  Rational upper = b.is_ruled() ? omega.fiber_area / 2 : omega.base_area / 2;
  if (k >= 2) upper = std::min(upper, omega.capacities[static_cast<std::size_t>(k - 2)]);

  SymplecticData probe = omega;
  probe.capacities.back() = upper;
  if (volume_quantity(probe) <= 0)
    throw PreconditionError("volume bound binds before any competing class: last capacity cannot reach " +
                            to_string(upper));
  Rational total = 0;
  for (const auto& c : probe.capacities) total += c;

  // A competitor X = A - s E_k beats E_k at delta iff omega(A) < (s + 1) delta, so every
  // competitor with ratio below `upper` has probe area below upper; probe areas are >= -total.
  std::vector<HomologyClass> candidates = enumerate_classes(probe, {-1, 1, -total, upper, false}, search_ceiling);
  auto fibres = enumerate_classes(probe, {0, 2, -total, upper, false}, search_ceiling);
  candidates.insert(candidates.end(), fibres.begin(), fibres.end());

  const HomologyClass ek = HomologyClass::unit(b, last);
  CapacityThreshold out{upper, {}};
  std::set<HomologyClass> binding;
  for (const auto& x : candidates) {
    if (x == ek) continue;
    Integer s = intersect(x, ek);
    if (s < 0) continue;
    Rational a_part = area(x, probe) + Rational(s) * upper;
    Rational ratio = a_part / Rational(s + 1);
    if (ratio < out.threshold) {
      out.threshold = ratio;
      binding.clear();
    }
    if (ratio == out.threshold) binding.insert(x);
  }
  out.binding.assign(binding.begin(), binding.end());
  return out;
}

}  // namespace torus_census::lattice
