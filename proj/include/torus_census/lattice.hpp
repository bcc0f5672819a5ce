#pragma once

// Second homology of blow-ups of CP^2 and of ruled surfaces over a genus-g
// curve: intersection form, first Chern class, symplectic areas, and the
// exceptional-class machinery used to find minimal blow-down chains.
//
// All arithmetic is exact. Areas are measured in units where 2*pi = 1.

#include "torus_census/rational.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace torus_census::lattice {

enum class BaseKind { Rational, ProductRuled, TwistedRuled };

/// Ordered symbol basis of H_2.
///   Rational(k):        L, E1..Ek
///   ProductRuled(g, k): B, F, E1..Ek   (B.B = 0)
///   TwistedRuled(g, k): B, F, E1..Ek   (B.B = -1)
struct Basis {
  BaseKind kind = BaseKind::Rational;
  int genus = 0;
  int blowups = 0;

  static Basis rational(int k);
  static Basis product_ruled(int genus, int k);
  static Basis twisted_ruled(int genus, int k);

  bool is_ruled() const { return kind != BaseKind::Rational; }
  /// Index of E1 in the coefficient vector.
  std::size_t first_exceptional() const { return is_ruled() ? 2 : 1; }
  std::size_t rank() const { return first_exceptional() + static_cast<std::size_t>(blowups); }
  std::string symbol(std::size_t index) const;
  std::string describe() const;

  friend bool operator==(const Basis&, const Basis&) = default;
};

using Matrix = std::vector<std::vector<Integer>>;

Matrix gram_matrix(const Basis& basis);
std::vector<Integer> chern_vector(const Basis& basis);

struct HomologyClass {
  Basis basis;
  std::vector<Integer> coeffs;

  HomologyClass() = default;
  HomologyClass(Basis b, std::vector<Integer> c);

  static HomologyClass zero(const Basis& basis);
  static HomologyClass unit(const Basis& basis, std::size_t index);
  /// E_i, 1-based as in the symbol names.
  static HomologyClass exceptional(const Basis& basis, int i);

  /// Index of the basis symbol if this class is exactly E_i (coefficient +1), else nullopt.
  std::optional<std::size_t> as_exceptional_symbol() const;

  HomologyClass operator+(const HomologyClass& other) const;
  HomologyClass operator-(const HomologyClass& other) const;
  HomologyClass operator*(const Integer& scalar) const;

  std::string to_string() const;

  friend bool operator==(const HomologyClass& a, const HomologyClass& b);
  friend bool operator<(const HomologyClass& a, const HomologyClass& b);
};

Integer intersect(const HomologyClass& a, const HomologyClass& b);
Integer chern(const HomologyClass& a);

/// Cohomology class of the symplectic form, encoded by the area of each
/// basis symbol. Rational bases use base_area = lambda (area of L); ruled
/// bases use base_area = mu (area of B) and fiber_area (area of F, normally 1).
struct SymplecticData {
  Basis basis;
  Rational base_area;
  Rational fiber_area;
  std::vector<Rational> capacities;

  static SymplecticData rational(Rational lambda, std::vector<Rational> capacities);
  static SymplecticData ruled(bool twisted, int genus, Rational mu, std::vector<Rational> capacities,
                              Rational fiber = 1);

  /// Checks positivity, decreasing capacities and positive volume. Throws PreconditionError.
  void validate() const;

  /// Area of each basis symbol, in basis order.
  std::vector<Rational> area_vector() const;

  friend bool operator==(const SymplecticData&, const SymplecticData&) = default;
};

Rational area(const HomologyClass& a, const SymplecticData& omega);

/// Coefficients of PD[omega]: the rational class P with P.X = omega(X).
std::vector<Rational> poincare_dual(const SymplecticData& omega);
/// PD[omega]^2, twice the symplectic volume.
Rational volume_quantity(const SymplecticData& omega);
/// <omega, c_1>.
Rational chern_pairing(const SymplecticData& omega);

inline constexpr long kDefaultSearchCeiling = 1000;

/// All classes with E.E = -1, c1(E) = 1, 0 < omega(E) <= area_bound that pair
/// nonnegatively with L (rational) or F (ruled) and with every E_i other than
/// themselves. Over an irrational base only fibre-type classes (E.F = 0) are kept.
/// Sorted by coefficient vector. Throws CertificationError when the leading
/// coefficient of the certified search region exceeds search_ceiling.
std::vector<HomologyClass> enumerate_exceptional_candidates(const SymplecticData& omega,
                                                            const Rational& area_bound,
                                                            long search_ceiling = kDefaultSearchCeiling);

/// Same filters as above with lo <= omega(E) <= hi; lo may be negative.
std::vector<HomologyClass> exceptional_classes_in_range(const SymplecticData& omega, const Rational& lo,
                                                        const Rational& hi,
                                                        long search_ceiling = kDefaultSearchCeiling);

struct MinimalClasses {
  Rational epsilon;
  std::vector<HomologyClass> classes;
};

MinimalClasses minimal_exceptional_classes(const SymplecticData& omega,
                                           long search_ceiling = kDefaultSearchCeiling);

/// All integral X with -q <= X.X <= -p and lo <= A.X <= hi, for a rational
/// class A of positive square (the set is compact). A is given by its coefficients.
std::vector<HomologyClass> enumerate_bounded_classes(const Basis& basis, const std::vector<Rational>& a_coeffs,
                                                     const Rational& lo, const Rational& hi, const Rational& p,
                                                     const Rational& q);

/// Result of blowing down an exceptional class together with the lattice
/// embedding it induces: images[s] is the class, in the source basis, that
/// the new basis symbol s corresponds to. All images are orthogonal to the
/// blown-down class, and the map preserves the form and c1.
struct BlowdownTransport {
  SymplecticData result;
  std::vector<HomologyClass> images;
};

BlowdownTransport blow_down_transport(const SymplecticData& omega, const HomologyClass& e);
SymplecticData blow_down_class(const SymplecticData& omega, const HomologyClass& e);

/// Rewrites a genus-0 ruled blow-up in the Rational(k+1) basis.
BlowdownTransport to_rational_model(const SymplecticData& omega);

struct BlowdownStep {
  int stage = 0;                // number of blow-ups before this step
  HomologyClass chosen;         // in the basis of that stage
  HomologyClass original;       // the same class in the starting basis
  Rational area;
};

struct BlowdownChain {
  std::vector<BlowdownStep> steps;
  SymplecticData terminal;
};

/// Depth-first enumeration of all chains of minimal blow-downs ending at a
/// recipe without blow-ups. Ties branch. max_chains = 0 means unlimited.
std::vector<BlowdownChain> minimal_blowdown_chains(const SymplecticData& omega, std::size_t max_chains = 0,
                                                   long search_ceiling = kDefaultSearchCeiling);

struct CapacityThreshold {
  Rational threshold;
  std::vector<HomologyClass> binding;
};

/// Supremum delta0 such that E_min = {E_k} for every last capacity below delta0,
/// the other capacities held fixed.
CapacityThreshold min_capacity_threshold(const SymplecticData& omega,
                                         long search_ceiling = kDefaultSearchCeiling);

}  // namespace torus_census::lattice
