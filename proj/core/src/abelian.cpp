#include "torilang/abelian.hpp"

#include "torilang/errors.hpp"

#include <sstream>

namespace torilang {

FinAbGroup FinAbGroup::from_cyclic_orders(const IntVector& orders) {
  IntMatrix d(orders.size(), orders.size());
  for (std::size_t i = 0; i < orders.size(); ++i) d(i, i) = abs(orders[i]);
  return cokernel(d);
}

Integer FinAbGroup::order() const {
  if (free_rank != 0) throw AlgebraError("infinite-group", "order of " + to_string());
  Integer n = 1;
  for (const auto& d : torsion) n *= d;
  return n;
}

Integer FinAbGroup::exponent() const {
  if (free_rank != 0) throw AlgebraError("infinite-group", "exponent of " + to_string());
  return torsion.empty() ? Integer(1) : torsion.back();
}

IntVector FinAbGroup::generator_orders() const {
  IntVector out = torsion;
  out.resize(torsion.size() + free_rank, Integer(0));
  return out;
}

FinAbGroup FinAbGroup::direct_sum(const FinAbGroup& other) const {
  IntVector orders = generator_orders();
  const IntVector more = other.generator_orders();
  orders.insert(orders.end(), more.begin(), more.end());
  return from_cyclic_orders(orders);
}

std::string FinAbGroup::to_string() const {
  if (is_trivial()) return "0";
  std::ostringstream os;
  bool first = true;
  if (free_rank) {
    os << "Z";
    if (free_rank > 1) os << '^' << free_rank;
    first = false;
  }
  for (const auto& d : torsion) {
    if (!first) os << " + ";
    os << "Z/" << d.get_str();
    first = false;
  }
  return os.str();
}

Presentation Presentation::of(const FinAbGroup& g) {
  const IntVector orders = g.generator_orders();
  Presentation p{orders.size(), IntMatrix(0, orders.size())};
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (sgn(orders[i]) == 0) continue;
    IntVector r(orders.size(), Integer(0));
    r[i] = orders[i];
    p.relations.append_row(r);
  }
  return p;
}

FinAbGroup Presentation::group() const {
  if (relations.rows() > 0 && relations.cols() != generators)
    throw std::invalid_argument("Presentation: relation width differs from generator count");
  IntMatrix r = relations;
  if (r.rows() == 0) r = IntMatrix(0, generators);
  return cokernel(r);
}

Subquotient::Subquotient(const IntMatrix& lattice_gens, const IntMatrix& sub_gens,
                         std::size_t ambient_dim)
    : ambient_(ambient_dim) {
  basis_ = lattice_gens.rows() ? row_echelon(lattice_gens) : IntMatrix(0, ambient_dim);
  const std::size_t ell = basis_.rows();
  IntMatrix rel(0, ell);
  for (std::size_t r = 0; r < sub_gens.rows(); ++r) {
    const IntVector v = sub_gens.row(r);
    if (ell == 0) {
      for (const auto& x : v)
        if (sgn(x) != 0) throw AlgebraError("not-a-sublattice", "relation outside the lattice");
      continue;
    }
    auto c = lattice_coordinates(basis_, v);
    if (!c) throw AlgebraError("not-a-sublattice", "relation " + to_string(v) + " outside the lattice");
    rel.append_row(*c);
  }
  if (rel.rows() == 0) rel = IntMatrix(0, ell);
  const SmithForm s = snf(rel);
  v_ = s.v;
  v_inv_ = s.v_inv;
  IntVector torsion;
  std::size_t free_rank = 0;
  for (std::size_t i = 0; i < ell; ++i) {
    if (i < s.rank) {
      if (s.d(i, i) == 1) continue;
      kept_.push_back(i);
      orders_.push_back(s.d(i, i));
      torsion.push_back(s.d(i, i));
    } else {
      kept_.push_back(i);
      orders_.emplace_back(0);
      ++free_rank;
    }
  }
  group_ = FinAbGroup{free_rank, torsion};
}

bool Subquotient::contains(const IntVector& x) const {
  for (const auto& e : x)
    if (sgn(e) != 0) return basis_.rows() > 0 && lattice_coordinates(basis_, x).has_value();
  return true;
}

IntVector Subquotient::coordinates(const IntVector& x) const {
  if (x.size() != ambient_) throw std::invalid_argument("Subquotient::coordinates: dimension mismatch");
  IntVector out(kept_.size(), Integer(0));
  if (basis_.rows() == 0) {
    if (!contains(x)) throw AlgebraError("not-in-lattice", to_string(x));
    return out;
  }
  auto c = lattice_coordinates(basis_, x);
  if (!c) throw AlgebraError("not-in-lattice", to_string(x));
  for (std::size_t k = 0; k < kept_.size(); ++k) {
    Integer y = 0;
    for (std::size_t i = 0; i < c->size(); ++i)
      if (sgn((*c)[i]) != 0) y += (*c)[i] * v_(i, kept_[k]);
    out[k] = reduce_mod(y, orders_[k]);
  }
  return out;
}

IntVector Subquotient::lift(const IntVector& coords) const {
  if (coords.size() != kept_.size()) throw std::invalid_argument("Subquotient::lift: wrong coordinate count");
  const std::size_t ell = basis_.rows();
  IntVector y(ell, Integer(0));
  for (std::size_t k = 0; k < kept_.size(); ++k) y[kept_[k]] = coords[k];
  IntVector c(ell, Integer(0));
  for (std::size_t i = 0; i < ell; ++i) {
    if (sgn(y[i]) == 0) continue;
    for (std::size_t j = 0; j < ell; ++j) c[j] += y[i] * v_inv_(i, j);
  }
  IntVector x(ambient_, Integer(0));
  for (std::size_t i = 0; i < ell; ++i) {
    if (sgn(c[i]) == 0) continue;
    for (std::size_t j = 0; j < ambient_; ++j) x[j] += c[i] * basis_(i, j);
  }
  return x;
}

std::vector<IntVector> Subquotient::generator_lifts() const {
  std::vector<IntVector> out;
  for (std::size_t k = 0; k < kept_.size(); ++k) {
    IntVector e(kept_.size(), Integer(0));
    e[k] = 1;
    out.push_back(lift(e));
  }
  return out;
}

IntVector Subquotient::normalize(const IntVector& coords) const {
  IntVector out(coords.size());
  for (std::size_t k = 0; k < coords.size(); ++k) out[k] = reduce_mod(coords[k], orders_[k]);
  return out;
}

bool Subquotient::is_zero(const IntVector& x) const {
  for (const auto& c : coordinates(x))
    if (sgn(c) != 0) return false;
  return true;
}

FinAbGroup cokernel(const IntMatrix& a) { return cokernel_map(a).group(); }

Subquotient cokernel_map(const IntMatrix& a) {
  const std::size_t n = a.cols();
  return Subquotient(IntMatrix::identity(n), a, n);
}

namespace {

IntMatrix relations_or_empty(const Presentation& p) {
  return p.relations.rows() ? p.relations : IntMatrix(0, p.generators);
}

} // namespace

bool AbHom::is_well_defined() const {
  if (matrix.rows() != target.generators || matrix.cols() != source.generators) return false;
  const IntMatrix src = relations_or_empty(source);
  const IntMatrix tgt = relations_or_empty(target);
  IntMatrix images(0, target.generators);
  for (std::size_t r = 0; r < src.rows(); ++r) images.append_row(matrix.apply(src.row(r)));
  return lattice_contains(tgt, images);
}

void AbHom::check_well_defined() const {
  if (!is_well_defined())
    throw AlgebraError("ill-defined-homomorphism", "matrix does not respect the source relations");
}

IntMatrix hom_kernel_lattice(const AbHom& f) {
  const IntMatrix tgt = relations_or_empty(f.target);
  if (tgt.rows() == 0) return kernel_basis(f.matrix);
  const IntMatrix aug = IntMatrix::hstack(f.matrix, Integer(-1) * tgt.transpose());
  const IntMatrix k = kernel_basis(aug);
  IntMatrix proj(k.rows(), f.source.generators);
  for (std::size_t r = 0; r < k.rows(); ++r)
    for (std::size_t c = 0; c < f.source.generators; ++c) proj(r, c) = k(r, c);
  return proj.rows() ? row_echelon(proj) : IntMatrix(0, f.source.generators);
}

KernelImage hom_kernel_image(const AbHom& f) {
  f.check_well_defined();
  const IntMatrix src = relations_or_empty(f.source);
  const IntMatrix tgt = relations_or_empty(f.target);
  const IntMatrix images = f.matrix.transpose();
  KernelImage out;
  out.image = Subquotient(IntMatrix::vstack(images, tgt), tgt, f.target.generators).group();
  out.cokernel = cokernel(IntMatrix::vstack(tgt, images));
  out.kernel = Subquotient(hom_kernel_lattice(f), src, f.source.generators).group();
  return out;
}

FinAbGroup dual_group(const FinAbGroup& g) { return g; }

FinAbGroup tensor_mod_m(const Presentation& l, const Integer& m) {
  if (m < 2) throw AlgebraError("modulus-too-small", "tensor_mod_m requires m >= 2");
  IntMatrix rel = IntMatrix::vstack(relations_or_empty(l), m * IntMatrix::identity(l.generators));
  return cokernel(rel);
}

} // namespace torilang
