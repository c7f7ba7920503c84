#pragma once

#include "torilang/integer_matrix.hpp"

#include <string>
#include <vector>

namespace torilang {

/// A finitely generated abelian group Z^r + Z/d1 + ... + Z/dk in elementary
/// divisor form (each di >= 2, d1 | d2 | ...). Equality is structural.
///
/// When a FinAbGroup stands for a character group Hom(A, C^x) (see
/// `dual_group`), each unit of free rank encodes a factor C^x rather than Z.
struct FinAbGroup {
  std::size_t free_rank = 0;
  IntVector torsion;

  /// Normalizes an arbitrary list of cyclic orders (0 means Z, 1 is dropped).
  static FinAbGroup from_cyclic_orders(const IntVector& orders);
  static FinAbGroup trivial() { return {}; }
  static FinAbGroup cyclic(long n) { return from_cyclic_orders({Integer(n)}); }
  static FinAbGroup free(std::size_t rank) { return {rank, {}}; }

  bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
  bool is_finite() const { return free_rank == 0; }
  /// Order of a finite group; throws for infinite groups.
  Integer order() const;
  Integer exponent() const;
  /// Number of canonical generators (torsion first, then free).
  std::size_t generator_count() const { return torsion.size() + free_rank; }
  /// Cyclic orders of the canonical generators, 0 for free ones.
  IntVector generator_orders() const;

  FinAbGroup direct_sum(const FinAbGroup& other) const;
  std::string to_string() const;

  friend bool operator==(const FinAbGroup&, const FinAbGroup&) = default;
};

/// Z^generators modulo the row span of `relations`.
struct Presentation {
  std::size_t generators = 0;
  IntMatrix relations;

  static Presentation free(std::size_t n) { return {n, IntMatrix(0, n)}; }
  static Presentation of(const FinAbGroup& g);
  FinAbGroup group() const;
};

/// L / N for lattices N <= L <= Z^n, with explicit coordinates on the
/// canonical generators of the quotient.
class Subquotient {
public:
  Subquotient() = default;
  /// `lattice_gens` and `sub_gens` are generating rows in Z^ambient_dim.
  Subquotient(const IntMatrix& lattice_gens, const IntMatrix& sub_gens, std::size_t ambient_dim);

  const FinAbGroup& group() const { return group_; }
  std::size_t ambient_dim() const { return ambient_; }
  const IntMatrix& lattice_basis() const { return basis_; }

  bool contains(const IntVector& x) const;
  /// Canonical coordinates of x (torsion coordinates reduced); throws if x is not in L.
  IntVector coordinates(const IntVector& x) const;
  /// An element of L with the given canonical coordinates.
  IntVector lift(const IntVector& coords) const;
  /// Lifts of the canonical generators.
  std::vector<IntVector> generator_lifts() const;
  /// Reduce coordinates modulo the generator orders.
  IntVector normalize(const IntVector& coords) const;
  bool is_zero(const IntVector& x) const;

private:
  std::size_t ambient_ = 0;
  IntMatrix basis_;              // echelon basis of L
  IntMatrix v_;                  // quotient change of basis on L-coefficients
  IntMatrix v_inv_;
  std::vector<std::size_t> kept_;  // columns of v_ giving canonical generators
  IntVector orders_;
  FinAbGroup group_;
};

/// Z^cols / (row span of A).
FinAbGroup cokernel(const IntMatrix& a);
Subquotient cokernel_map(const IntMatrix& a);

/// Homomorphism between finitely presented groups. Generators map to the
/// columns of `matrix` (target.generators x source.generators).
struct AbHom {
  Presentation source;
  Presentation target;
  IntMatrix matrix;

  /// Throws AlgebraError when some source relation is not sent to a target relation.
  void check_well_defined() const;
  bool is_well_defined() const;
};

struct KernelImage {
  FinAbGroup kernel;
  FinAbGroup image;
  FinAbGroup cokernel;
};

KernelImage hom_kernel_image(const AbHom& f);

/// Sublattice of Z^source.generators mapping into the target relations.
IntMatrix hom_kernel_lattice(const AbHom& f);

/// Character group Hom(G, C^x): torsion is self-dual, free rank r encodes (C^x)^r.
FinAbGroup dual_group(const FinAbGroup& g);

/// L (x) Z/m for a presented group L.
FinAbGroup tensor_mod_m(const Presentation& l, const Integer& m);

} // namespace torilang
