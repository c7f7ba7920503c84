#pragma once

#include "torilang/integer_matrix.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace torilang {

/// Sorted list of element indices closed under the group law.
class Subgroup {
public:
  Subgroup() = default;
  /// Elements must already form a subgroup; see FiniteGroup::subgroup.
  Subgroup(std::vector<std::size_t> elements, std::size_t group_order);

  const std::vector<std::size_t>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool contains(std::size_t g) const { return g < position_.size() && position_[g] >= 0; }
  /// Index of g within elements(); throws if g is not a member.
  std::size_t position(std::size_t g) const;

  friend bool operator==(const Subgroup& a, const Subgroup& b) { return a.elements_ == b.elements_; }

private:
  std::vector<std::size_t> elements_;
  std::vector<long> position_;
};

/// A finite group given by its multiplication table.
///
/// Group axioms are checked exhaustively at construction; elements are the
/// indices 0..n-1 and `identity()` need not be 0.
class FiniteGroup {
public:
  FiniteGroup() : FiniteGroup(std::vector<std::vector<std::size_t>>{{0}}, 0, "1") {}
  FiniteGroup(std::vector<std::vector<std::size_t>> table, std::size_t identity, std::string name = "");

  std::size_t order() const { return order_; }
  std::size_t identity() const { return identity_; }
  const std::string& name() const { return name_; }

  std::size_t mul(std::size_t a, std::size_t b) const { return table_[a * order_ + b]; }
  std::size_t inv(std::size_t a) const { return inverse_[a]; }
  std::size_t power(std::size_t a, long k) const;
  std::size_t element_order(std::size_t a) const;
  /// g x g^-1
  std::size_t conjugate(std::size_t g, std::size_t x) const { return mul(mul(g, x), inv(g)); }
  bool is_abelian() const;
  bool is_cyclic() const;

  Subgroup whole() const;
  Subgroup trivial() const;
  /// Validates that `elements` is a subgroup; throws AlgebraError("not-a-subgroup") otherwise.
  Subgroup subgroup(std::vector<std::size_t> elements) const;
  Subgroup generated(const std::vector<std::size_t>& generators) const;
  bool is_normal(const Subgroup& h) const;
  bool is_subgroup_of(const Subgroup& small, const Subgroup& big) const;
  /// Every subgroup, sorted by (size, elements).
  std::vector<Subgroup> all_subgroups() const;
  /// A short generating set of h, chosen greedily by increasing index.
  std::vector<std::size_t> generators_of(const Subgroup& h) const;

  /// Smallest-index representative of each left coset gH with g in `ambient`.
  std::vector<std::size_t> coset_reps(const Subgroup& ambient, const Subgroup& h) const;
  std::vector<std::size_t> coset_reps(const Subgroup& h) const { return coset_reps(whole(), h); }
  /// Index into `reps` of the left coset containing g.
  std::size_t coset_of(const std::vector<std::size_t>& reps, const Subgroup& h, std::size_t g) const;

  /// The group structure on the elements of h, re-indexed by position.
  FiniteGroup restrict_to(const Subgroup& h) const;

  friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
    return a.identity_ == b.identity_ && a.table_ == b.table_;
  }

private:
  std::size_t order_ = 0;
  std::size_t identity_ = 0;
  std::vector<std::size_t> table_;
  std::vector<std::size_t> inverse_;
  std::string name_;
};

/// Partition of G into double cosets H1 g H2, each block sorted.
std::vector<std::vector<std::size_t>> double_cosets(const FiniteGroup& g, const Subgroup& h1,
                                                    const Subgroup& h2);

/// G/N with the projection G -> G/N (cosets indexed in order of smallest member).
struct QuotientGroup {
  FiniteGroup group;
  std::vector<std::size_t> projection;
  std::vector<std::size_t> representatives;
};

QuotientGroup quotient_group(const FiniteGroup& g, const Subgroup& n);

namespace catalog {

FiniteGroup cyclic(std::size_t n);
FiniteGroup dihedral(std::size_t n); // order 2n; elements r^a s^b at index a + n*b
FiniteGroup klein_four();
FiniteGroup symmetric3();
FiniteGroup quaternion8();
FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);
/// Named groups of order <= max_order: cyclic groups, Klein four, S3, D4, Q8, Z/2 x Z/4, D6, Z/2 x Z/6.
std::vector<FiniteGroup> groups_up_to(std::size_t max_order);
FiniteGroup by_name(const std::string& name);

} // namespace catalog

/// Finite-level model of a Weil group with its ramification filtration:
/// wild <= inertia <= gamma, a Frobenius element, residue characteristic p and
/// residue field size q.
struct LocalGaloisDatum {
  FiniteGroup gamma;
  Subgroup inertia;
  Subgroup wild;
  std::size_t frobenius = 0;
  long p = 2;
  long q = 2;

  /// Unramified datum with cyclic Galois group of order k, Frobenius = generator.
  static LocalGaloisDatum unramified(std::size_t k, long p, long q);
};

struct DatumCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct DatumReport {
  std::vector<DatumCheck> checks;
  bool ok() const;
  /// First failing check name, empty when ok.
  std::string first_violation() const;
};

/// Checks normality, p-power wild order, prime-to-p tame order, cyclicity of
/// gamma/inertia (generated by Frobenius) and of inertia/wild, and the
/// q-power relation for Frobenius conjugation on inertia/wild.
DatumReport validate_local_datum(const LocalGaloisDatum& d);

bool is_prime(long n);
/// Largest power of p dividing n.
long p_part(long n, long p);

} // namespace torilang
