#pragma once

#include "torilang/gmodule.hpp"

#include <optional>
#include <string>
#include <vector>

namespace torilang {

/// A 1-cochain on a subgroup S of the acting group; values[i] belongs to
/// S.elements()[i] and is a reduced coordinate vector of the module.
struct Cocycle1 {
  Subgroup domain;
  std::vector<IntVector> values;

  const IntVector& at(std::size_t g) const { return values[domain.position(g)]; }
};

bool is_cocycle(const GammaModule& m, const Cocycle1& z);
/// g -> g.x - x on S.
Cocycle1 coboundary(const GammaModule& m, const Subgroup& s, const IntVector& x);
Cocycle1 zero_cocycle(const GammaModule& m, const Subgroup& s);
Cocycle1 add(const GammaModule& m, const Cocycle1& a, const Cocycle1& b);
Cocycle1 scale(const GammaModule& m, const Cocycle1& a, const Integer& k);

/// H^1(S, M) for a subgroup S of the group acting on M.
///
/// A cocycle is determined by its values on a fixed generating set of S;
/// the cocycle lattice is cut out by the relations those values must satisfy
/// and H^1 is its quotient by coboundaries.
class H1Result {
public:
  H1Result() = default;
  H1Result(const GammaModule& m, const Subgroup& s);

  const FinAbGroup& group() const { return quotient_.group(); }
  const GammaModule& module() const { return module_; }
  const Subgroup& subgroup() const { return subgroup_; }
  const std::vector<std::size_t>& generators() const { return gens_; }

  /// One cocycle per canonical generator of group().
  std::vector<Cocycle1> representatives() const;
  /// Canonical coordinates of the class of z; throws AlgebraError("not-a-cocycle").
  IntVector class_of(const Cocycle1& z) const;
  /// A cocycle in the class with the given coordinates.
  Cocycle1 cocycle(const IntVector& coords) const;
  /// Every class, as coordinate vectors (finite groups only).
  std::vector<IntVector> all_classes() const;
  bool same_class(const Cocycle1& a, const Cocycle1& b) const;
  IntVector normalize(const IntVector& coords) const { return quotient_.normalize(coords); }

private:
  Cocycle1 from_generator_values(const IntVector& x) const;

  GammaModule module_;
  Subgroup subgroup_;
  std::vector<std::size_t> gens_;
  std::vector<IntMatrix> forms_;  // z(g) = forms_[pos(g)] * (z(s_1), ..., z(s_k))
  Subquotient quotient_;
};

/// ker N / (sigma - 1)M for S cyclic generated by `generator`.
FinAbGroup tate_h1_cyclic(const GammaModule& m, const Subgroup& s, std::size_t generator);
/// M^S / N M for S cyclic.
FinAbGroup tate_h2_cyclic(const GammaModule& m, const Subgroup& s);

/// The restriction of a cocycle to T <= S.
Cocycle1 restrict_cocycle(const Cocycle1& z, const Subgroup& t);
/// Matrix of res: H^1(S) -> H^1(T) on canonical generators.
AbHom restriction_map(const H1Result& from, const H1Result& to);

enum class CorFormula { DoubleCoset, Normal };

/// cor: H^1(T, M) -> H^1(S, M) for T <= S, at the cocycle level.
/// `reps` are left coset representatives of S/T (default: smallest index).
/// The Normal variant requires T normal in S.
Cocycle1 corestrict_cocycle(const GammaModule& m, const Cocycle1& z, const Subgroup& s,
                            CorFormula formula = CorFormula::DoubleCoset,
                            std::optional<std::vector<std::size_t>> reps = std::nullopt);
AbHom corestriction_map(const H1Result& from, const H1Result& to, CorFormula formula = CorFormula::DoubleCoset);

/// (g.z)(w) = g z(g^-1 w g) for g normalizing the domain of z.
Cocycle1 conjugate_cocycle(const GammaModule& m, const Cocycle1& z, std::size_t g);
AbHom conjugation_map(const H1Result& h, std::size_t g);

/// w -> sum over g in G/H_E of g z(g^-1 w g), for z on H_K normal in G with
/// H_K <= H_E <= G (G the acting group of the module).
Cocycle1 averaging_map(const GammaModule& m, const Cocycle1& z, const Subgroup& h_e,
                       std::optional<std::vector<std::size_t>> reps = std::nullopt);
AbHom averaging_class_map(const H1Result& h_k, const Subgroup& h_e);

/// H^1(H_K) modulo the span of (c_g - 1) for g in `by`.
Subquotient conjugation_coinvariants(const H1Result& h, const Subgroup& by);

struct Prop18Failure {
  IntVector class_coords;
  Cocycle1 cocycle;
  Cocycle1 lhs;
  Cocycle1 rhs;
};

struct Prop18Report {
  std::size_t classes_checked = 0;
  FinAbGroup h1_k;
  std::vector<Prop18Failure> failures;
  bool ok() const { return failures.empty(); }
};

/// For every class z of H^1(H_K, M): cor_{K->E}(averaging(z)) = res_E(cor_{K->G}(z)).
Prop18Report verify_prop18(const GammaModule& m, const Subgroup& h_e, const Subgroup& h_k);

/// Checks chain conditions H_K normal in G and H_K <= H_E; throws AlgebraError otherwise.
void check_chain(const FiniteGroup& g, const Subgroup& h_e, const Subgroup& h_k);

/// delta: H^0(S, C) -> H^1(S, A) for 0 -> A -> B -> C -> 0.
struct ConnectingMap {
  Subquotient h0_c;
  H1Result h1_a;
  AbHom delta;
};

ConnectingMap connecting_delta0(const ShortExactSeq& ses, const Subgroup& s);

/// H^0(A) -> H^0(B) -> H^0(C) -> H^1(A) -> H^1(B) -> H^1(C) with exactness checks.
struct SixTermSequence {
  std::vector<FinAbGroup> groups;  // six entries
  std::vector<AbHom> maps;         // five maps
  std::vector<bool> exact_at;      // at H^0(B), H^0(C), H^1(A), H^1(B)
  bool injective_start = false;
  bool ok() const;
};

SixTermSequence six_term_sequence(const ShortExactSeq& ses, const Subgroup& s);

/// H^2(S, L) for a lattice L via normalized 2-cochains; throws
/// AlgebraError("resource-cap") when |S| exceeds max_order.
FinAbGroup h2_lattice(const GammaModule& l, const Subgroup& s, std::size_t max_order = 12);

/// H^1(S, Hom(C, C^x)) for a finitely generated module C.
///
/// Computed at a finite level N as H^1(S, Hom(C, Z/N)) modulo the classes that
/// become coboundaries in Hom(C, Q/Z); the result is checked against a second,
/// larger level.
class CharacterH1 {
public:
  CharacterH1() = default;
  CharacterH1(const GammaModule& c, const Subgroup& s, std::optional<Integer> level = std::nullopt);

  const FinAbGroup& group() const { return quotient_.group(); }
  const Integer& level() const { return level_; }
  /// Hom(C, Z/level) in canonical coordinates.
  const GammaModule& coefficients() const { return h1_.module(); }
  const H1Result& level_h1() const { return h1_; }

  /// Level large enough for every class, with the stabilization multiple.
  static Integer natural_level(const GammaModule& c, const Subgroup& s);

  /// A cocycle with values in coefficients() representing the class.
  Cocycle1 cocycle(const IntVector& coords) const;
  IntVector class_of(const Cocycle1& z) const;
  /// Value vector (f(c_1), ..., f(c_n)) mod level of a coefficient element.
  IntVector values(const IntVector& a) const;
  /// Inverse of values().
  IntVector from_values(const IntVector& v) const;

private:
  Integer level_;
  IntVector gcds_;
  H1Result h1_;
  Subquotient quotient_;  // on H^1(A_N) coordinates
};

/// Hom(C, Z/n) with g acting by f -> f o g^-1; generator i sends c_i to n / gcd(o_i, n).
GammaModule hom_to_cyclic(const GammaModule& c, const Integer& n);

/// Map induced on CharacterH1 by an equivariant phi: X -> C (classes pull back along phi).
/// Both sides must use the same level.
AbHom character_h1_pullback(const ModuleMap& phi, const CharacterH1& on_c, const CharacterH1& on_x);

struct TorusH1 {
  FinAbGroup group;
  FinAbGroup via_h2;
  FinAbGroup via_levels;
};

/// H^1(S, Hom(L, C^x)) for a lattice L, computed both as H^2(S, Hom(L, Z)) and
/// through finite levels; throws AlgebraError("path-mismatch") if they differ.
TorusH1 h1_torus_coeffs(const GammaModule& l, const Subgroup& s, std::size_t max_order = 12);

} // namespace torilang
