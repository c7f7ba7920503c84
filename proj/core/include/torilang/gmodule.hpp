#pragma once

#include "torilang/abelian.hpp"
#include "torilang/finite_group.hpp"

#include <string>
#include <vector>

namespace torilang {

/// A finitely generated abelian group with an action of a finite group.
///
/// Generator i has order `orders()[i]` (0 for a free generator). Modules built
/// from presentations are in canonical form (torsion generators first, orders
/// forming a divisor chain). Elements are coordinate vectors reduced modulo
/// the orders, and every group element carries its own action matrix (columns
/// are images of generators).
class GammaModule {
public:
  GammaModule() = default;

  /// Normalizes an arbitrary presentation. `actions[g]` acts on the
  /// presentation generators; relations, identity and composition are checked.
  static GammaModule from_presentation(const FiniteGroup& g, const Presentation& p,
                                       const std::vector<IntMatrix>& actions);
  /// Like from_presentation, but actions are given only on `generators` and
  /// extended multiplicatively.
  static GammaModule from_generator_actions(const FiniteGroup& g, const Presentation& p,
                                            const std::vector<std::size_t>& generators,
                                            const std::vector<IntMatrix>& images);
  /// Keeps the given cyclic generators as coordinates (orders need not form a
  /// divisor chain, and order 1 is allowed); the action is checked as above.
  static GammaModule from_cyclic_generators(const FiniteGroup& g, const IntVector& orders,
                                            const std::vector<IntMatrix>& actions);
  static GammaModule lattice(const FiniteGroup& g, const std::vector<IntMatrix>& actions);
  static GammaModule trivial(const FiniteGroup& g, const FinAbGroup& a);

  const FiniteGroup& acting_group() const { return group_; }
  const IntVector& orders() const { return orders_; }
  std::size_t dim() const { return orders_.size(); }
  const IntMatrix& action(std::size_t g) const { return actions_[g]; }
  const std::vector<IntMatrix>& actions() const { return actions_; }
  FinAbGroup underlying() const { return FinAbGroup::from_cyclic_orders(orders_); }
  bool is_free() const;
  bool is_finite() const;
  /// Number of elements; throws for infinite modules.
  Integer size() const;

  IntVector reduce(const IntVector& x) const;
  IntVector act(std::size_t g, const IntVector& x) const;
  IntVector add(const IntVector& a, const IntVector& b) const;
  IntVector sub(const IntVector& a, const IntVector& b) const;
  IntVector zero() const { return IntVector(dim(), Integer(0)); }
  bool is_zero(const IntVector& x) const;
  /// All elements of a finite module, in lexicographic coordinate order.
  std::vector<IntVector> elements() const;

  /// Relation rows o_i e_i for the torsion generators.
  IntMatrix relations() const;
  Presentation presentation() const { return {dim(), relations()}; }

  /// Does g act trivially?
  bool acts_trivially(std::size_t g) const;

  friend bool operator==(const GammaModule& a, const GammaModule& b) {
    return a.orders_ == b.orders_ && a.actions_ == b.actions_ && a.group_ == b.group_;
  }

private:
  void check_action() const;

  FiniteGroup group_;
  IntVector orders_;
  std::vector<IntMatrix> actions_;
};

/// Equivariant homomorphism given on canonical generators (target.dim x source.dim).
struct ModuleMap {
  GammaModule source;
  GammaModule target;
  IntMatrix matrix;

  IntVector apply(const IntVector& x) const { return target.reduce(matrix.apply(x)); }
  AbHom as_hom() const { return {source.presentation(), target.presentation(), matrix}; }
  bool is_well_defined() const;
  bool is_equivariant() const;
  /// Throws AlgebraError("ill-defined-homomorphism" / "not-equivariant").
  void check() const;
};

struct ShortExactSeq {
  ModuleMap inclusion;   // A -> B
  ModuleMap projection;  // B -> C

  /// Throws AlgebraError("not-exact") naming the failing position.
  void check() const;
  bool is_exact() const;
};

/// Z[G/H] with G permuting the left cosets (basis ordered by coset_reps).
GammaModule permutation_module(const FiniteGroup& g, const Subgroup& h);

/// Z or Z/n on which the given index-2 subgroup acts trivially and the rest by -1.
GammaModule sign_module(const FiniteGroup& g, const Subgroup& index_two, long n = 0);

/// M^S together with its inclusion (lifts land in the coordinates of M).
Subquotient invariants(const GammaModule& m, const Subgroup& s);
/// M_S; `coordinates` is the projection M -> M_S.
Subquotient coinvariants(const GammaModule& m, const Subgroup& s);

struct NormMap {
  /// Sum over left coset representatives of the action matrices.
  IntMatrix raw;
  /// The induced map M_H -> M_G on canonical generators.
  AbHom on_coinvariants;
};

NormMap norm_sum(const GammaModule& m, const Subgroup& h);

/// M as a module over S (re-indexed as in FiniteGroup::restrict_to).
GammaModule restrict_action(const GammaModule& m, const Subgroup& s);
/// A G/N-module viewed as a G-module through the projection.
GammaModule inflate_action(const GammaModule& m, const FiniteGroup& g, const QuotientGroup& q);
/// A G-module on which N acts trivially, viewed as a G/N-module.
/// Throws AlgebraError("nontrivial-on-kernel") otherwise.
GammaModule descend_action(const GammaModule& m, const Subgroup& n, const QuotientGroup& q);

/// M (x) Z/m with the induced action.
GammaModule tensor_mod(const GammaModule& m, const Integer& modulus);
/// Hom(L, Z) for a lattice L, with g acting by the inverse transpose.
GammaModule dual_lattice(const GammaModule& l);
GammaModule direct_sum(const GammaModule& a, const GammaModule& b);

struct NamedMatrix {
  std::string name;
  IntMatrix matrix;
};

/// Finite-order elements of GL_r(Z) for r = 1..max_rank, up to conjugacy and
/// repetition: sums of +-1 blocks, rank-2 rotations of order 2, 3, 4, 6, the
/// swap, and the 3-cycle with its negative.
std::vector<NamedMatrix> finite_order_matrices(std::size_t max_rank = 3);
/// Order of a finite-order integer matrix (throws past `bound`).
std::size_t matrix_order(const IntMatrix& a, std::size_t bound = 64);

struct NamedModule {
  std::string name;
  GammaModule module;
};

/// Test family over g: trivial Z and Z/n, sign modules from index-two
/// subgroups, permutation modules Z[G/H] (integral and mod 2, mod 3) and,
/// for cyclic g, lattices and finite modules from finite-order matrices.
/// Finite members have at most `max_finite_order` elements.
std::vector<NamedModule> module_catalog(const FiniteGroup& g, long max_finite_order = 27);

} // namespace torilang
