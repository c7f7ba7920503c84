#include "torilang/cohomology.hpp"

#include "torilang/errors.hpp"

#include <algorithm>

namespace torilang {

namespace {

IntMatrix reduce_rows(IntMatrix a, const IntVector& orders) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = reduce_mod(a(i, j), orders[i]);
  return a;
}

IntMatrix orders_relations(const FinAbGroup& g) { return Presentation::of(g).relations; }

IntMatrix columns_to_matrix(const std::vector<IntVector>& cols, std::size_t rows) {
  IntMatrix out(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < rows; ++i) out(i, j) = cols[j][i];
  return out;
}

AbHom class_map(const FinAbGroup& from, const FinAbGroup& to, const std::vector<IntVector>& images) {
  AbHom f{Presentation::of(from), Presentation::of(to), columns_to_matrix(images, to.generator_count())};
  f.check_well_defined();
  return f;
}

std::size_t cyclic_generator(const FiniteGroup& g, const Subgroup& s) {
  for (std::size_t x : s.elements())
    if (g.element_order(x) == s.size()) return x;
  throw AlgebraError("not-cyclic", "subgroup is not cyclic");
}

bool exact_between(const AbHom& in, const AbHom& out) {
  const IntMatrix rel = in.target.relations.rows() ? in.target.relations : IntMatrix(0, in.target.generators);
  const IntMatrix image = IntMatrix::vstack(in.matrix.transpose(), rel);
  const IntMatrix kernel = IntMatrix::vstack(hom_kernel_lattice(out), rel);
  return same_lattice(image, kernel);
}

IntVector unit_vector(std::size_t n, std::size_t i) {
  IntVector e(n, Integer(0));
  e[i] = 1;
  return e;
}

} // namespace

bool is_cocycle(const GammaModule& m, const Cocycle1& z) {
  const FiniteGroup& g = m.acting_group();
  const auto& el = z.domain.elements();
  if (z.values.size() != el.size()) return false;
  for (std::size_t a : el)
    for (std::size_t b : el) {
      const IntVector rhs = m.add(z.at(a), m.act(a, z.at(b)));
      if (!m.is_zero(m.sub(z.at(g.mul(a, b)), rhs))) return false;
    }
  return true;
}

Cocycle1 coboundary(const GammaModule& m, const Subgroup& s, const IntVector& x) {
  Cocycle1 z{s, {}};
  for (std::size_t g : s.elements()) z.values.push_back(m.sub(m.act(g, x), x));
  return z;
}

Cocycle1 zero_cocycle(const GammaModule& m, const Subgroup& s) {
  return Cocycle1{s, std::vector<IntVector>(s.size(), m.zero())};
}

Cocycle1 add(const GammaModule& m, const Cocycle1& a, const Cocycle1& b) {
  Cocycle1 z{a.domain, {}};
  for (std::size_t i = 0; i < a.values.size(); ++i) z.values.push_back(m.add(a.values[i], b.values[i]));
  return z;
}

Cocycle1 scale(const GammaModule& m, const Cocycle1& a, const Integer& k) {
  Cocycle1 z{a.domain, {}};
  for (const auto& v : a.values) {
    IntVector w(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) w[i] = k * v[i];
    z.values.push_back(m.reduce(w));
  }
  return z;
}

H1Result::H1Result(const GammaModule& m, const Subgroup& s) : module_(m), subgroup_(s) {
  const FiniteGroup& g = m.acting_group();
  const std::size_t n = m.dim();
  gens_ = g.generators_of(s);
  const std::size_t k = gens_.size();
  const std::size_t vars = k * n;
  const IntVector& ord = m.orders();

  auto block = [&](std::size_t j) {
    IntMatrix e(n, vars);
    for (std::size_t i = 0; i < n; ++i) e(i, j * n + i) = 1;
    return e;
  };

  forms_.assign(s.size(), IntMatrix());
  std::vector<char> seen(s.size(), 0);
  forms_[s.position(g.identity())] = IntMatrix(n, vars);
  seen[s.position(g.identity())] = 1;
  std::vector<std::size_t> queue{g.identity()};
  for (std::size_t q = 0; q < queue.size(); ++q)
    for (std::size_t j = 0; j < k; ++j) {
      const std::size_t y = g.mul(gens_[j], queue[q]);
      const std::size_t py = s.position(y);
      if (seen[py]) continue;
      seen[py] = 1;
      forms_[py] = reduce_rows(block(j) + m.action(gens_[j]) * forms_[s.position(queue[q])], ord);
      queue.push_back(y);
    }

  IntMatrix constraints(0, vars);
  IntVector moduli;
  for (std::size_t x : s.elements())
    for (std::size_t j = 0; j < k; ++j) {
      const IntMatrix c = reduce_rows(forms_[s.position(g.mul(gens_[j], x))] - block(j) -
                                          m.action(gens_[j]) * forms_[s.position(x)],
                                      ord);
      for (std::size_t i = 0; i < n; ++i) {
        bool nonzero = false;
        for (std::size_t v = 0; v < vars && !nonzero; ++v) nonzero = sgn(c(i, v)) != 0;
        if (!nonzero) continue;
        constraints.append_row(c.row(i));
        moduli.push_back(ord[i]);
      }
    }
  const IntMatrix cocycles = constraints.rows() ? preimage_basis(constraints, moduli) : IntMatrix::identity(vars);

  IntMatrix trivial(0, vars);
  for (std::size_t i = 0; i < n; ++i) {
    IntVector row(vars, Integer(0));
    for (std::size_t j = 0; j < k; ++j) {
      const IntMatrix& a = m.action(gens_[j]);
      for (std::size_t r = 0; r < n; ++r) row[j * n + r] = a(r, i) - (r == i ? 1 : 0);
    }
    trivial.append_row(row);
    for (std::size_t j = 0; j < k; ++j)
      if (sgn(ord[i]) != 0) trivial.append_row([&] {
        IntVector e(vars, Integer(0));
        e[j * n + i] = ord[i];
        return e;
      }());
  }
  quotient_ = Subquotient(cocycles, trivial, vars);
}

Cocycle1 H1Result::from_generator_values(const IntVector& x) const {
  Cocycle1 z{subgroup_, {}};
  for (const auto& f : forms_) z.values.push_back(module_.reduce(f.apply(x)));
  return z;
}

std::vector<Cocycle1> H1Result::representatives() const {
  std::vector<Cocycle1> out;
  for (const auto& lift : quotient_.generator_lifts()) out.push_back(from_generator_values(lift));
  return out;
}

IntVector H1Result::class_of(const Cocycle1& z) const {
  if (!(z.domain == subgroup_)) throw AlgebraError("domain-mismatch", "cocycle lives on a different subgroup");
  if (!is_cocycle(module_, z)) throw AlgebraError("not-a-cocycle", "table violates the cocycle identity");
  IntVector x;
  for (std::size_t s : gens_) {
    const IntVector& v = z.at(s);
    x.insert(x.end(), v.begin(), v.end());
  }
  return quotient_.coordinates(x);
}

Cocycle1 H1Result::cocycle(const IntVector& coords) const { return from_generator_values(quotient_.lift(coords)); }

std::vector<IntVector> H1Result::all_classes() const {
  const FinAbGroup& grp = group();
  if (!grp.is_finite()) throw AlgebraError("infinite-group", "cannot enumerate classes");
  const IntVector ord = grp.generator_orders();
  std::vector<IntVector> out{IntVector(ord.size(), Integer(0))};
  for (std::size_t i = ord.size(); i-- > 0;) {
    std::vector<IntVector> next;
    for (const auto& v : out)
      for (Integer c = 0; c < ord[i]; ++c) {
        IntVector w = v;
        w[i] = c;
        next.push_back(std::move(w));
      }
    out.swap(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool H1Result::same_class(const Cocycle1& a, const Cocycle1& b) const { return class_of(a) == class_of(b); }

FinAbGroup tate_h1_cyclic(const GammaModule& m, const Subgroup& s, std::size_t generator) {
  const FiniteGroup& g = m.acting_group();
  if (!s.contains(generator) || g.element_order(generator) != s.size())
    throw AlgebraError("not-cyclic", "element does not generate the subgroup");
  const std::size_t n = m.dim();
  if (n == 0) return FinAbGroup::trivial();
  IntMatrix norm(n, n);
  for (std::size_t x : s.elements()) norm = norm + m.action(x);
  const IntMatrix ker = preimage_basis(norm, m.orders());
  IntMatrix sub = (m.action(generator) - IntMatrix::identity(n)).transpose();
  sub = IntMatrix::vstack(sub, m.relations());
  return Subquotient(ker, sub, n).group();
}

FinAbGroup tate_h2_cyclic(const GammaModule& m, const Subgroup& s) {
  const std::size_t n = m.dim();
  if (n == 0) return FinAbGroup::trivial();
  const std::size_t gen = cyclic_generator(m.acting_group(), s);
  IntMatrix norm(n, n);
  for (std::size_t x : s.elements()) norm = norm + m.action(x);
  const IntMatrix inv = preimage_basis(m.action(gen) - IntMatrix::identity(n), m.orders());
  return Subquotient(inv, IntMatrix::vstack(norm.transpose(), m.relations()), n).group();
}

Cocycle1 restrict_cocycle(const Cocycle1& z, const Subgroup& t) {
  Cocycle1 out{t, {}};
  for (std::size_t x : t.elements()) {
    if (!z.domain.contains(x)) throw AlgebraError("not-a-subgroup", "restriction to a subgroup outside the domain");
    out.values.push_back(z.at(x));
  }
  return out;
}

AbHom restriction_map(const H1Result& from, const H1Result& to) {
  std::vector<IntVector> images;
  for (const auto& z : from.representatives()) images.push_back(to.class_of(restrict_cocycle(z, to.subgroup())));
  return class_map(from.group(), to.group(), images);
}

Cocycle1 corestrict_cocycle(const GammaModule& m, const Cocycle1& z, const Subgroup& s, CorFormula formula,
                            std::optional<std::vector<std::size_t>> reps) {
  const FiniteGroup& g = m.acting_group();
  const Subgroup& t = z.domain;
  if (!g.is_subgroup_of(t, s)) throw AlgebraError("not-a-subgroup", "corestriction needs T <= S");
  std::vector<std::size_t> r = reps ? *reps : g.coset_reps(s, t);
  if (r.size() * t.size() != s.size()) throw AlgebraError("bad-representatives", "wrong number of coset representatives");
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!s.contains(r[i])) throw AlgebraError("bad-representatives", "representative outside S");
    for (std::size_t j = 0; j < i; ++j)
      if (t.contains(g.mul(g.inv(r[j]), r[i]))) throw AlgebraError("bad-representatives", "two representatives share a coset");
  }

  Cocycle1 out{s, {}};
  if (formula == CorFormula::DoubleCoset) {
    for (std::size_t w : s.elements()) {
      IntVector sum = m.zero();
      for (std::size_t r1 : r)
        for (std::size_t r2 : r) {
          const std::size_t u = g.mul(g.mul(g.inv(r1), w), r2);
          if (t.contains(u)) sum = m.add(sum, m.act(r1, z.at(u)));
        }
      out.values.push_back(sum);
    }
    return out;
  }

  for (std::size_t x : s.elements())
    for (std::size_t y : t.elements())
      if (!t.contains(g.conjugate(x, y))) throw AlgebraError("not-normal", "the normal formula needs T normal in S");
  for (std::size_t w : s.elements()) {
    const std::size_t r4 = r[g.coset_of(r, t, g.inv(w))];
    IntVector sum = m.zero();
    for (std::size_t r3 : r) {
      const std::size_t r43 = r[g.coset_of(r, t, g.mul(r4, r3))];
      const std::size_t u = g.mul(g.mul(g.inv(r3), w), r43);
      if (!t.contains(u)) throw AlgebraError("not-normal", "coset product left T");
      sum = m.add(sum, m.act(r3, z.at(u)));
    }
    out.values.push_back(sum);
  }
  return out;
}

AbHom corestriction_map(const H1Result& from, const H1Result& to, CorFormula formula) {
  std::vector<IntVector> images;
  for (const auto& z : from.representatives())
    images.push_back(to.class_of(corestrict_cocycle(from.module(), z, to.subgroup(), formula)));
  return class_map(from.group(), to.group(), images);
}

Cocycle1 conjugate_cocycle(const GammaModule& m, const Cocycle1& z, std::size_t g) {
  const FiniteGroup& grp = m.acting_group();
  Cocycle1 out{z.domain, {}};
  for (std::size_t w : z.domain.elements()) {
    const std::size_t u = grp.mul(grp.mul(grp.inv(g), w), g);
    if (!z.domain.contains(u)) throw AlgebraError("not-normal", "conjugating element does not normalize the domain");
    out.values.push_back(m.act(g, z.at(u)));
  }
  return out;
}

AbHom conjugation_map(const H1Result& h, std::size_t g) {
  std::vector<IntVector> images;
  for (const auto& z : h.representatives()) images.push_back(h.class_of(conjugate_cocycle(h.module(), z, g)));
  return class_map(h.group(), h.group(), images);
}

Cocycle1 averaging_map(const GammaModule& m, const Cocycle1& z, const Subgroup& h_e,
                       std::optional<std::vector<std::size_t>> reps) {
  const FiniteGroup& g = m.acting_group();
  check_chain(g, h_e, z.domain);
  const std::vector<std::size_t> r = reps ? *reps : g.coset_reps(h_e);
  if (r.size() * h_e.size() != g.order()) throw AlgebraError("bad-representatives", "wrong number of coset representatives");
  Cocycle1 out{z.domain, {}};
  for (std::size_t w : z.domain.elements()) {
    IntVector sum = m.zero();
    for (std::size_t x : r) sum = m.add(sum, m.act(x, z.at(g.mul(g.mul(g.inv(x), w), x))));
    out.values.push_back(sum);
  }
  return out;
}

AbHom averaging_class_map(const H1Result& h_k, const Subgroup& h_e) {
  std::vector<IntVector> images;
  for (const auto& z : h_k.representatives()) images.push_back(h_k.class_of(averaging_map(h_k.module(), z, h_e)));
  return class_map(h_k.group(), h_k.group(), images);
}

Subquotient conjugation_coinvariants(const H1Result& h, const Subgroup& by) {
  const std::size_t k = h.group().generator_count();
  IntMatrix sub = orders_relations(h.group());
  if (sub.rows() == 0) sub = IntMatrix(0, k);
  for (std::size_t g : by.elements()) {
    const IntMatrix c = conjugation_map(h, g).matrix - IntMatrix::identity(k);
    sub = IntMatrix::vstack(sub, c.transpose());
  }
  return Subquotient(IntMatrix::identity(k), sub, k);
}

void check_chain(const FiniteGroup& g, const Subgroup& h_e, const Subgroup& h_k) {
  if (!g.is_subgroup_of(h_k, h_e)) throw AlgebraError("chain-not-nested", "H_K is not contained in H_E");
  if (!g.is_normal(h_k)) throw AlgebraError("not-normal", "H_K is not normal in G");
}

Prop18Report verify_prop18(const GammaModule& m, const Subgroup& h_e, const Subgroup& h_k) {
  const FiniteGroup& g = m.acting_group();
  check_chain(g, h_e, h_k);
  const H1Result on_k(m, h_k);
  const H1Result on_e(m, h_e);
  const Subgroup whole = g.whole();
  Prop18Report report;
  report.h1_k = on_k.group();
  for (const auto& c : on_k.all_classes()) {
    const Cocycle1 z = on_k.cocycle(c);
    const Cocycle1 lhs = corestrict_cocycle(m, averaging_map(m, z, h_e), h_e);
    const Cocycle1 rhs = restrict_cocycle(corestrict_cocycle(m, z, whole), h_e);
    ++report.classes_checked;
    if (on_e.class_of(lhs) != on_e.class_of(rhs)) report.failures.push_back({c, z, lhs, rhs});
  }
  return report;
}

namespace {

IntVector solve_mod(const IntMatrix& a, const IntVector& orders, const IntVector& b, const char* what) {
  IntMatrix aug = a;
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (sgn(orders[i]) == 0) continue;
    IntMatrix col(a.rows(), 1);
    col(i, 0) = orders[i];
    aug = IntMatrix::hstack(aug, col);
  }
  auto x = solve_integer_system(aug, b);
  if (!x) throw AlgebraError("not-exact", what);
  x->resize(a.cols());
  return *x;
}

Subquotient h0(const GammaModule& m, const Subgroup& s) { return invariants(m, s); }

AbHom h0_map(const ModuleMap& f, const Subquotient& from, const Subquotient& to) {
  std::vector<IntVector> images;
  for (const auto& v : from.generator_lifts()) images.push_back(to.coordinates(f.matrix.apply(v)));
  return class_map(from.group(), to.group(), images);
}

Cocycle1 push(const ModuleMap& f, const Cocycle1& z) {
  Cocycle1 out{z.domain, {}};
  for (const auto& v : z.values) out.values.push_back(f.apply(v));
  return out;
}

AbHom h1_map(const ModuleMap& f, const H1Result& from, const H1Result& to) {
  std::vector<IntVector> images;
  for (const auto& z : from.representatives()) images.push_back(to.class_of(push(f, z)));
  return class_map(from.group(), to.group(), images);
}

} // namespace

ConnectingMap connecting_delta0(const ShortExactSeq& ses, const Subgroup& s) {
  ses.check();
  const GammaModule& a = ses.inclusion.source;
  const GammaModule& b = ses.inclusion.target;
  const GammaModule& c = ses.projection.target;
  ConnectingMap out{h0(c, s), H1Result(a, s), {}};
  std::vector<IntVector> images;
  for (const auto& cv : out.h0_c.generator_lifts()) {
    const IntVector lift = solve_mod(ses.projection.matrix, c.orders(), cv, "element of C has no preimage in B");
    Cocycle1 z{s, {}};
    for (std::size_t g : s.elements()) {
      const IntVector d = b.sub(b.act(g, lift), lift);
      z.values.push_back(a.reduce(solve_mod(ses.inclusion.matrix, b.orders(), d, "g.b - b is not in the image of A")));
    }
    images.push_back(out.h1_a.class_of(z));
  }
  out.delta = class_map(out.h0_c.group(), out.h1_a.group(), images);
  return out;
}

bool SixTermSequence::ok() const {
  return injective_start && std::all_of(exact_at.begin(), exact_at.end(), [](bool b) { return b; });
}

SixTermSequence six_term_sequence(const ShortExactSeq& ses, const Subgroup& s) {
  const ConnectingMap cm = connecting_delta0(ses, s);
  const GammaModule& a = ses.inclusion.source;
  const GammaModule& b = ses.inclusion.target;
  const GammaModule& c = ses.projection.target;
  const Subquotient h0a = h0(a, s), h0b = h0(b, s);
  const H1Result h1b(b, s), h1c(c, s);
  SixTermSequence out;
  out.groups = {h0a.group(), h0b.group(), cm.h0_c.group(), cm.h1_a.group(), h1b.group(), h1c.group()};
  out.maps = {h0_map(ses.inclusion, h0a, h0b), h0_map(ses.projection, h0b, cm.h0_c), cm.delta,
              h1_map(ses.inclusion, cm.h1_a, h1b), h1_map(ses.projection, h1b, h1c)};
  out.injective_start = hom_kernel_image(out.maps[0]).kernel.is_trivial();
  for (std::size_t i = 0; i + 1 < out.maps.size(); ++i) out.exact_at.push_back(exact_between(out.maps[i], out.maps[i + 1]));
  return out;
}

FinAbGroup h2_lattice(const GammaModule& l, const Subgroup& s, std::size_t max_order) {
  if (!l.is_free()) throw AlgebraError("not-a-lattice", "h2_lattice needs free coefficients");
  if (s.size() > max_order)
    throw AlgebraError("resource-cap", "group order " + std::to_string(s.size()) + " exceeds cap " + std::to_string(max_order));
  const FiniteGroup& g = l.acting_group();
  const std::size_t n = l.dim();
  std::vector<std::size_t> ne;
  for (std::size_t x : s.elements())
    if (x != g.identity()) ne.push_back(x);
  const std::size_t m = ne.size();
  const std::size_t vars = m * m * n;
  if (vars == 0) return FinAbGroup::trivial();
  std::vector<long> idx(g.order(), -1);
  for (std::size_t i = 0; i < m; ++i) idx[ne[i]] = static_cast<long>(i);
  auto var = [&](std::size_t x, std::size_t y, std::size_t c) -> long {
    if (idx[x] < 0 || idx[y] < 0) return -1;
    return static_cast<long>((static_cast<std::size_t>(idx[x]) * m + static_cast<std::size_t>(idx[y])) * n + c);
  };

  // g f(h,k) - f(gh,k) + f(g,hk) - f(g,h) = 0
  IntMatrix eq(0, vars);
  for (std::size_t x : ne)
    for (std::size_t y : ne)
      for (std::size_t z : ne) {
        const IntMatrix& a = l.action(x);
        for (std::size_t i = 0; i < n; ++i) {
          IntVector row(vars, Integer(0));
          for (std::size_t c = 0; c < n; ++c) {
            const long v = var(y, z, c);
            if (v >= 0) row[static_cast<std::size_t>(v)] += a(i, c);
          }
          if (long v = var(g.mul(x, y), z, i); v >= 0) row[static_cast<std::size_t>(v)] -= 1;
          if (long v = var(x, g.mul(y, z), i); v >= 0) row[static_cast<std::size_t>(v)] += 1;
          if (long v = var(x, y, i); v >= 0) row[static_cast<std::size_t>(v)] -= 1;
          if (std::any_of(row.begin(), row.end(), [](const Integer& e) { return sgn(e) != 0; })) eq.append_row(row);
        }
      }
  const IntMatrix cocycles = eq.rows() ? kernel_basis(eq) : IntMatrix::identity(vars);

  // (dc)(x,y) = x c(y) - c(xy) + c(x)
  IntMatrix bnd(0, vars);
  for (std::size_t h : ne)
    for (std::size_t i = 0; i < n; ++i) {
      IntVector row(vars, Integer(0));
      for (std::size_t x : ne)
        for (std::size_t y : ne) {
          if (y == h)
            for (std::size_t r = 0; r < n; ++r) row[static_cast<std::size_t>(var(x, y, r))] += l.action(x)(r, i);
          if (g.mul(x, y) == h) row[static_cast<std::size_t>(var(x, y, i))] -= 1;
          if (x == h) row[static_cast<std::size_t>(var(x, y, i))] += 1;
        }
      bnd.append_row(row);
    }
  return Subquotient(cocycles, bnd, vars).group();
}

GammaModule hom_to_cyclic(const GammaModule& c, const Integer& n) {
  if (n < 1) throw AlgebraError("modulus-too-small", "level must be positive");
  const FiniteGroup& g = c.acting_group();
  const std::size_t dim = c.dim();
  IntVector gcds(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    Integer o = c.orders()[i];
    if (sgn(o) == 0) gcds[i] = n;
    else mpz_gcd(gcds[i].get_mpz_t(), o.get_mpz_t(), n.get_mpz_t());
  }
  std::vector<IntMatrix> actions;
  for (std::size_t x = 0; x < g.order(); ++x) {
    const IntMatrix& b = c.action(g.inv(x));
    IntMatrix a(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) {
        const Integer w = reduce_mod(b(i, j) * (n / gcds[i]), n);
        const Integer step = n / gcds[j];
        if (w % step != 0) throw AlgebraError("internal", "dual action does not preserve the level");
        a(j, i) = w / step;
      }
    actions.push_back(std::move(a));
  }
  return GammaModule::from_cyclic_generators(g, gcds, actions);
}

namespace {

Integer torsion_exponent(const FinAbGroup& a) { return a.torsion.empty() ? Integer(1) : a.torsion.back(); }

} // namespace

Integer CharacterH1::natural_level(const GammaModule& c, const Subgroup& s) {
  const Integer t = torsion_exponent(coinvariants(c, s).group());
  return Integer(static_cast<unsigned long>(s.size())) * t * torsion_exponent(c.underlying());
}

CharacterH1::CharacterH1(const GammaModule& c, const Subgroup& s, std::optional<Integer> level) {
  level_ = level ? *level : natural_level(c, s);
  const GammaModule a = hom_to_cyclic(c, level_);
  gcds_ = a.orders();
  h1_ = H1Result(a, s);
  const FiniteGroup& g = c.acting_group();
  const std::size_t n = c.dim();

  const Integer t = torsion_exponent(coinvariants(c, s).group());
  const Integer big = level_ * t;
  const GammaModule ab = hom_to_cyclic(c, big);
  IntMatrix cond(0, n);
  IntVector moduli;
  for (std::size_t x : g.generators_of(s)) {
    const IntMatrix d = ab.action(x) - IntMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i) {
      IntVector row = d.row(i);
      for (auto& e : row) e *= big / ab.orders()[i];
      cond.append_row(row);
      moduli.push_back(t);
    }
  }
  const IntMatrix us = cond.rows() ? preimage_basis(cond, moduli) : IntMatrix::identity(n);

  const std::size_t k = h1_.group().generator_count();
  IntMatrix sub = Presentation::of(h1_.group()).relations;
  if (sub.rows() == 0) sub = IntMatrix(0, k);
  for (std::size_t r = 0; r < us.rows(); ++r) {
    const IntVector u = us.row(r);
    Cocycle1 z{s, {}};
    for (std::size_t x : s.elements()) {
      IntVector w = (ab.action(x) - IntMatrix::identity(n)).apply(u);
      IntVector v(n);
      for (std::size_t i = 0; i < n; ++i) {
        v[i] = reduce_mod(w[i] * (big / ab.orders()[i]), big);
        if (v[i] % t != 0) throw AlgebraError("internal", "coboundary values not divisible by t");
        v[i] /= t;
      }
      z.values.push_back(from_values(v));
    }
    sub.append_row(h1_.class_of(z));
  }
  quotient_ = Subquotient(IntMatrix::identity(k), sub, k);

  if (!level) {
    const CharacterH1 check(c, s, level_ * Integer(static_cast<unsigned long>(std::max<std::size_t>(s.size(), 2))));
    if (!(check.group() == group()))
      throw AlgebraError("no-stabilization", "levels " + level_.get_str() + " and " + check.level().get_str() +
                                                 " give " + group().to_string() + " and " + check.group().to_string());
  }
}

IntVector CharacterH1::values(const IntVector& a) const {
  IntVector v(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) v[i] = reduce_mod(a[i] * (level_ / gcds_[i]), level_);
  return v;
}

IntVector CharacterH1::from_values(const IntVector& v) const {
  IntVector a(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Integer step = level_ / gcds_[i];
    const Integer w = reduce_mod(v[i], level_);
    if (w % step != 0) throw AlgebraError("not-in-level", "value vector is not a homomorphism at this level");
    a[i] = w / step;
  }
  return a;
}

Cocycle1 CharacterH1::cocycle(const IntVector& coords) const { return h1_.cocycle(quotient_.lift(coords)); }

IntVector CharacterH1::class_of(const Cocycle1& z) const { return quotient_.coordinates(h1_.class_of(z)); }

AbHom character_h1_pullback(const ModuleMap& phi, const CharacterH1& on_c, const CharacterH1& on_x) {
  phi.check();
  if (on_c.level() != on_x.level()) throw AlgebraError("level-mismatch", "both sides need the same level");
  const IntMatrix phit = phi.matrix.transpose();
  std::vector<IntVector> images;
  for (std::size_t j = 0; j < on_c.group().generator_count(); ++j) {
    const Cocycle1 z = on_c.cocycle(unit_vector(on_c.group().generator_count(), j));
    Cocycle1 w{z.domain, {}};
    for (const auto& a : z.values) w.values.push_back(on_x.from_values(phit.apply(on_c.values(a))));
    images.push_back(on_x.class_of(w));
  }
  return class_map(on_c.group(), on_x.group(), images);
}

TorusH1 h1_torus_coeffs(const GammaModule& l, const Subgroup& s, std::size_t max_order) {
  if (!l.is_free()) throw AlgebraError("not-a-lattice", "torus coefficients need a free character lattice");
  TorusH1 out;
  out.via_h2 = h2_lattice(dual_lattice(l), s, max_order);
  out.via_levels = CharacterH1(l, s).group();
  if (!(out.via_h2 == out.via_levels))
    throw AlgebraError("path-mismatch", "H^2 gives " + out.via_h2.to_string() + ", finite levels give " + out.via_levels.to_string());
  out.group = out.via_h2;
  return out;
}

} // namespace torilang
