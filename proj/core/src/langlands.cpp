#include "torilang/langlands.hpp"

#include "torilang/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace torilang {

namespace {

void require_valid(const LocalGaloisDatum& d) {
  const DatumReport r = validate_local_datum(d);
  if (!r.ok()) throw AlgebraError(r.first_violation(), "invalid local Galois datum");
}

IntMatrix empty_rows(const IntMatrix& m, std::size_t cols) { return m.rows() ? m : IntMatrix(0, cols); }

IntMatrix rows_of(const std::vector<IntVector>& v, std::size_t cols) {
  return v.empty() ? IntMatrix(0, cols) : IntMatrix::from_rows(cols, v);
}

IntMatrix reduce_entries(IntMatrix a, const Integer& m) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = reduce_mod(a(i, j), m);
  return a;
}

/// sum_{i < j} t^i with entries reduced mod m.
IntMatrix geometric_sum(const IntMatrix& t, const Integer& j, const Integer& m) {
  const std::size_t n = t.rows();
  IntMatrix sum(n, n), power = IntMatrix::identity(n);  // running S_a and t^a
  IntMatrix base_sum = IntMatrix::identity(n), base = reduce_entries(t, m);  // S_b and t^b for b = 2^i
  for (Integer rest = j; rest > 0; rest /= 2) {
    if (rest % 2 == 1) {
      sum = reduce_entries(sum + power * base_sum, m);
      power = reduce_entries(power * base, m);
    }
    base_sum = reduce_entries(base_sum + base * base_sum, m);
    base = reduce_entries(base * base, m);
  }
  return sum;
}

Integer torsion_exponent(const FinAbGroup& a) { return a.torsion.empty() ? Integer(1) : a.torsion.back(); }

/// Subgroup of the quotient fixed by the endomorphism induced by `a`.
FinAbGroup fixed_part(const Subquotient& q, const IntMatrix& a) {
  const Presentation pres = Presentation::of(q.group());
  const std::size_t k = q.group().generator_count();
  IntMatrix f(k, k);
  const auto lifts = q.generator_lifts();
  for (std::size_t j = 0; j < k; ++j) {
    const IntVector c = q.coordinates(a.apply(lifts[j]));
    for (std::size_t i = 0; i < k; ++i) f(i, j) = c[i];
  }
  const AbHom h{pres, pres, f - IntMatrix::identity(k)};
  return Subquotient(hom_kernel_lattice(h), empty_rows(pres.relations, k), k).group();
}

void require_tame(const GammaModule& c, const LocalGaloisDatum& d) {
  for (std::size_t x : d.wild.elements())
    if (!c.acts_trivially(x)) throw AlgebraError("wild-action", "wild inertia acts nontrivially");
}

/// Lambda_level: value vectors of homomorphisms C -> Z/level, as a diagonal.
IntVector value_steps(const GammaModule& c, const Integer& level) {
  IntVector out;
  for (const auto& o : c.orders()) {
    Integer g;
    if (o == 0) {
      g = level;
    } else {
      mpz_gcd(g.get_mpz_t(), o.get_mpz_t(), level.get_mpz_t());
    }
    out.push_back(level / g);
  }
  return out;
}

Integer smallest_prime_not(long p) { return p == 2 ? Integer(3) : Integer(2); }

bool contains_vector(const std::vector<IntVector>& set, const IntVector& v) {
  return std::find(set.begin(), set.end(), v) != set.end();
}

Integer pair(const IntMatrix& p, const IntVector& x, const IntVector& y) {
  Integer s = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) s += x[i] * p(i, j) * y[j];
  return s;
}

IntVector axpy(const IntVector& y, const Integer& a, const IntVector& x) {
  IntVector out = y;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= a * x[i];
  return out;
}

} // namespace

void TorusDatum::check() const {
  require_valid(field);
  if (!(cochar.acting_group() == field.gamma))
    throw AlgebraError("group-mismatch", "cocharacter lattice is not a module over the Galois group");
  if (!cochar.is_free()) throw AlgebraError("not-a-lattice", "cocharacters must form a lattice");
}

bool TorusDatum::is_unramified() const {
  for (std::size_t x : field.inertia.elements())
    if (!cochar.acts_trivially(x)) return false;
  return true;
}

bool TorusDatum::is_tame() const {
  for (std::size_t x : field.wild.elements())
    if (!cochar.acts_trivially(x)) return false;
  return true;
}

TorusDatum unramified_torus(const IntMatrix& sigma, long p, long q) {
  const std::size_t k = matrix_order(sigma);
  LocalGaloisDatum d = LocalGaloisDatum::unramified(k, p, q);
  GammaModule x = GammaModule::from_generator_actions(d.gamma, Presentation::free(sigma.rows()), {d.frobenius}, {sigma});
  TorusDatum t{std::move(d), std::move(x)};
  t.check();
  return t;
}

namespace {

LocalGaloisDatum totally_ramified_quadratic(long p, long q) {
  LocalGaloisDatum d;
  d.gamma = catalog::cyclic(2);
  d.inertia = d.gamma.whole();
  d.wild = d.gamma.trivial();
  d.frobenius = d.gamma.identity();
  d.p = p;
  d.q = q;
  return d;
}

/// S3 with inertia A3 and Frobenius a transposition (needs q = 2 mod 3).
LocalGaloisDatum s3_datum(long p, long q) {
  LocalGaloisDatum d;
  d.gamma = catalog::symmetric3();
  d.inertia = d.gamma.subgroup({0, 1, 2});
  d.wild = d.gamma.trivial();
  d.frobenius = 3;
  d.p = p;
  d.q = q;
  return d;
}

/// Z/4 with inertia of order 2.
LocalGaloisDatum z4_datum(long p, long q) {
  LocalGaloisDatum d;
  d.gamma = catalog::cyclic(4);
  d.inertia = d.gamma.subgroup({0, 2});
  d.wild = d.gamma.trivial();
  d.frobenius = 1;
  d.p = p;
  d.q = q;
  return d;
}

} // namespace

std::vector<NamedTorus> torus_catalog(long p, long q) {
  std::vector<NamedTorus> out;
  for (const auto& m : finite_order_matrices(3)) out.push_back({"unr:" + m.name, unramified_torus(m.matrix, p, q)});
  auto add = [&](const std::string& name, LocalGaloisDatum d, GammaModule x) {
    TorusDatum t{std::move(d), std::move(x)};
    if (!validate_local_datum(t.field).ok()) return;
    out.push_back({name, std::move(t)});
  };
  if (p != 2) {
    const LocalGaloisDatum d = totally_ramified_quadratic(p, q);
    add("ram:norm-one", d, sign_module(d.gamma, d.gamma.trivial()));
    add("ram:restriction", d, permutation_module(d.gamma, d.gamma.trivial()));
    const LocalGaloisDatum z4 = z4_datum(p, q);
    add("tame-z4:regular", z4, permutation_module(z4.gamma, z4.gamma.trivial()));
    add("tame-z4:rot4", z4,
        GammaModule::from_generator_actions(z4.gamma, Presentation::free(2), {1}, {IntMatrix::from_rows({{0, -1}, {1, 0}})}));
  }
  if (p != 3 && q % 3 == 2) {
    const LocalGaloisDatum d = s3_datum(p, q);
    add("tame-s3:cosets", d, permutation_module(d.gamma, d.gamma.subgroup({0, 3})));
    add("tame-s3:sign", d, sign_module(d.gamma, d.inertia));
    add("tame-s3:regular", d, permutation_module(d.gamma, d.gamma.trivial()));
  }
  return out;
}

NamedTorus torus_by_name(const std::string& name, long p, long q) {
  for (auto& t : torus_catalog(p, q))
    if (t.name == name) return t;
  throw AlgebraError("unknown-torus", name + " (not available for p = " + std::to_string(p) +
                                          ", q = " + std::to_string(q) + ")");
}

FinAbGroup kottwitz_quotient(const TorusDatum& t) {
  t.check();
  const Subquotient co = coinvariants(t.cochar, t.field.inertia);
  return fixed_part(co, t.cochar.action(t.field.frobenius));
}

WeaklyUnramified weakly_unramified_chars(const TorusDatum& t) {
  WeaklyUnramified w;
  w.way1 = dual_group(kottwitz_quotient(t));

  const std::size_t n = t.cochar.dim();
  const IntMatrix id = IntMatrix::identity(n);
  IntMatrix r(0, n);
  for (std::size_t x : t.field.inertia.elements()) {
    const IntMatrix d = (t.cochar.action(x) - id).transpose();
    for (std::size_t i = 0; i < n; ++i) r.append_row(d.row(i));
  }
  const AbHom f{Presentation::free(n), Presentation{n, r}, t.cochar.action(t.field.frobenius) - id};
  w.way2 = dual_group(Subquotient(hom_kernel_lattice(f), r, n).group());
  if (!(w.way1 == w.way2))
    throw AlgebraError("convention-mismatch", "weakly unramified characters: " + w.way1.to_string() + " vs " +
                                                  w.way2.to_string());
  w.group = w.way1;
  return w;
}

FinAbGroup special_fiber_points(const TorusDatum& t) { return special_fiber_points(t, t.field.q); }

FinAbGroup special_fiber_points(const TorusDatum& t, long q) {
  t.check();
  if (!t.is_unramified()) throw AlgebraError("not-unramified", "inertia acts nontrivially on cocharacters");
  const IntMatrix& s = t.cochar.action(t.field.frobenius);
  const IntMatrix b = Integer(q) * s - IntMatrix::identity(s.rows());
  return cokernel(b.transpose());
}

std::size_t order_mod_wild(const LocalGaloisDatum& d, std::size_t g) {
  std::size_t x = g;
  for (std::size_t j = 1; j <= d.gamma.order(); ++j) {
    if (d.wild.contains(x)) return j;
    x = d.gamma.mul(x, g);
  }
  throw AlgebraError("internal", "element order exceeds group order");
}

std::size_t tame_generator(const LocalGaloisDatum& d) {
  const std::size_t e = d.inertia.size() / d.wild.size();
  for (std::size_t x : d.inertia.elements())
    if (order_mod_wild(d, x) == e) return x;
  throw AlgebraError("tame-quotient-cyclic", "inertia modulo wild inertia is not cyclic");
}

Integer default_tame_level(const LocalGaloisDatum& d) {
  const std::size_t k = order_mod_wild(d, d.frobenius);
  const std::size_t e = d.inertia.size() / d.wild.size();
  Integer m;
  mpz_ui_pow_ui(m.get_mpz_t(), static_cast<unsigned long>(d.q), k);
  return Integer(static_cast<unsigned long>(e)) * (m - 1);
}

FinAbGroup tame_stable_classes(const GammaModule& c, const LocalGaloisDatum& d, const Integer& m) {
  require_valid(d);
  if (!(c.acting_group() == d.gamma)) throw AlgebraError("group-mismatch", "module is over a different group");
  require_tame(c, d);
  const FiniteGroup& g = d.gamma;
  const std::size_t tau = tame_generator(d);
  const std::size_t e = order_mod_wild(d, tau);
  Integer gq;
  const Integer qz(d.q);
  mpz_gcd(gq.get_mpz_t(), qz.get_mpz_t(), m.get_mpz_t());
  if (m <= 0 || m % Integer(static_cast<unsigned long>(e)) != 0 || gq != 1)
    throw AlgebraError("bad-tame-level", "tame level " + m.get_str() + " must be prime to q and divisible by " +
                                             std::to_string(e));

  const std::size_t n = c.dim();
  const IntMatrix id = IntMatrix::identity(n);
  const IntMatrix t = c.action(g.inv(tau)).transpose();
  const IntMatrix f = c.action(g.inv(d.frobenius)).transpose();
  const Integer& level = m;

  IntMatrix ne(n, n);
  IntMatrix pw = id;
  for (std::size_t i = 0; i < e; ++i) {
    ne = ne + pw;
    pw = pw * t;
  }
  const IntMatrix norm = (m / Integer(static_cast<unsigned long>(e))) * ne;
  const IntMatrix dl = IntMatrix::diagonal(value_steps(c, level));

  const IntMatrix coeffs = preimage_basis(norm * dl, IntVector(n, level));
  const IntMatrix ker = empty_rows(coeffs * dl, n);

  IntMatrix sub = IntMatrix::vstack(((t - id) * dl).transpose(), level * id);
  const Integer texp = torsion_exponent(coinvariants(c, d.inertia).group());
  if (texp > 1) {
    const IntMatrix dlt = IntMatrix::diagonal(value_steps(c, level * texp));
    const IntMatrix us = preimage_basis((t - id) * dlt, IntVector(n, texp));
    for (std::size_t r = 0; r < us.rows(); ++r) {
      IntVector w = (t - id).apply(dlt.apply(us.row(r)));
      for (auto& x : w) {
        if (x % texp != 0) throw AlgebraError("internal", "tame coboundary not divisible");
        x /= texp;
      }
      sub.append_row(w);
    }
  }

  Integer qinv;
  if (m == 1) {
    qinv = 1;
  } else {
    mpz_invert(qinv.get_mpz_t(), qz.get_mpz_t(), m.get_mpz_t());
  }
  const IntMatrix phi = f * geometric_sum(t, qinv, level);

  const AbHom h{Presentation::free(ker.rows()), Presentation{n, sub}, (phi - id) * ker.transpose()};
  const IntMatrix stable = empty_rows(hom_kernel_lattice(h), ker.rows());
  return Subquotient(empty_rows(stable * ker, n), sub, n).group();
}

FinAbGroup tame_stable_classes(const GammaModule& c, const LocalGaloisDatum& d) {
  const Integer m = default_tame_level(d);
  const FinAbGroup a = tame_stable_classes(c, d, m);
  const Integer m2 = m * smallest_prime_not(d.p);
  const FinAbGroup b = tame_stable_classes(c, d, m2);
  if (!(a == b))
    throw AlgebraError("no-stabilization", "tame levels " + m.get_str() + " and " + m2.get_str() + " give " +
                                               a.to_string() + " and " + b.to_string());
  return a;
}

FinAbGroup depth_zero_inertial_params(const TorusDatum& t) {
  t.check();
  if (!t.is_tame()) throw AlgebraError("wild-action", "wild inertia acts nontrivially on cocharacters");
  return tame_stable_classes(t.cochar, t.field);
}

FinAbGroup prime_to_p_part(const FinAbGroup& g, long p) {
  if (!is_prime(p)) throw AlgebraError("not-prime", std::to_string(p));
  IntVector orders(g.free_rank, Integer(0));
  for (Integer d : g.torsion) {
    while (d % p == 0) d /= p;
    orders.push_back(d);
  }
  return FinAbGroup::from_cyclic_orders(orders);
}

bool DepthZeroReport::ok() const {
  return std::all_of(pieces.begin(), pieces.end(), [](const DepthZeroPiece& x) { return x.pass; });
}

DepthZeroReport verify_depth_zero_match(const TorusDatum& t) {
  t.check();
  if (!t.is_tame()) throw AlgebraError("wild-action", "wild inertia acts nontrivially on cocharacters");
  DepthZeroReport r;

  DepthZeroPiece wur{"weakly-unramified", {}, {}, true, false};
  wur.character_side = dual_group(kottwitz_quotient(t));
  wur.parameter_side = weakly_unramified_chars(t).way2;
  wur.pass = wur.character_side == wur.parameter_side;
  r.pieces.push_back(wur);

  DepthZeroPiece dz{"depth-zero", {}, {}, true, false};
  dz.parameter_side = depth_zero_inertial_params(t);
  if (t.is_unramified()) {
    dz.character_side = prime_to_p_part(dual_group(special_fiber_points(t)), t.field.p);
    dz.pass = dz.character_side == dz.parameter_side;
  } else {
    dz.compared = false;
    dz.pass = true;
  }
  r.pieces.push_back(dz);
  return r;
}

void RootDatumGamma::check() const {
  if (!(x_star.acting_group() == x_costar.acting_group()))
    throw AlgebraError("group-mismatch", "characters and cocharacters over different groups");
  if (!x_star.is_free() || !x_costar.is_free()) throw AlgebraError("not-a-lattice", "root datum lattices must be free");
  const std::size_t n = x_star.dim();
  if (x_costar.dim() != n || pairing.rows() != n || pairing.cols() != n)
    throw AlgebraError("rank-mismatch", "characters, cocharacters and pairing disagree in rank");
  const Integer det = determinant(pairing);
  if (det != 1 && det != -1) throw AlgebraError("pairing-not-perfect", "pairing determinant " + det.get_str());
  if (roots.size() != coroots.size()) throw AlgebraError("root-count-mismatch", "roots and coroots differ in number");
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (roots[i].size() != n || coroots[i].size() != n)
      throw AlgebraError("rank-mismatch", "root " + std::to_string(i) + " has the wrong length");
    if (pair(pairing, roots[i], coroots[i]) != 2)
      throw AlgebraError("pairing-not-two", "<a, a^vee> != 2 for root " + std::to_string(i));
  }
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = 0; j < roots.size(); ++j) {
      if (!contains_vector(roots, axpy(roots[j], pair(pairing, roots[j], coroots[i]), roots[i])))
        throw AlgebraError("reflection-not-closed", "s_" + std::to_string(i) + " does not permute the roots");
      if (!contains_vector(coroots, axpy(coroots[j], pair(pairing, roots[i], coroots[j]), coroots[i])))
        throw AlgebraError("reflection-not-closed", "s_" + std::to_string(i) + " does not permute the coroots");
    }
  const FiniteGroup& g = group();
  for (std::size_t x = 0; x < g.order(); ++x) {
    const IntMatrix& a = x_star.action(x);
    const IntMatrix& b = x_costar.action(x);
    for (const auto& r : coroots)
      if (!contains_vector(coroots, b.apply(r)))
        throw AlgebraError("coroots-not-stable", "element " + std::to_string(x) + " moves a coroot outside the coroots");
    if (!(a.transpose() * pairing * b == pairing))
      throw AlgebraError("pairing-not-invariant", "element " + std::to_string(x) + " does not preserve the pairing");
    for (const auto& r : roots)
      if (!contains_vector(roots, a.apply(r)))
        throw AlgebraError("roots-not-stable", "element " + std::to_string(x) + " moves a root outside the roots");
  }
}

namespace {

RootDatumGamma make_root_datum(const FiniteGroup& g, std::size_t n, const std::vector<std::vector<long>>& roots,
                               const std::vector<std::vector<long>>& coroots, const std::vector<IntMatrix>& actions) {
  RootDatumGamma r;
  r.x_star = GammaModule::lattice(g, actions);
  r.x_costar = GammaModule::lattice(g, actions);
  for (const auto& v : roots) {
    r.roots.push_back(to_int_vector(v));
    IntVector neg = r.roots.back();
    for (auto& x : neg) x = -x;
    r.roots.push_back(neg);
  }
  for (const auto& v : coroots) {
    r.coroots.push_back(to_int_vector(v));
    IntVector neg = r.coroots.back();
    for (auto& x : neg) x = -x;
    r.coroots.push_back(neg);
  }
  r.pairing = IntMatrix::identity(n);
  r.check();
  return r;
}

} // namespace

RootDatumGamma split_root_datum(const std::string& name, const FiniteGroup& g) {
  auto trivial = [&](std::size_t n) { return std::vector<IntMatrix>(g.order(), IntMatrix::identity(n)); };
  if (name == "GL1") return make_root_datum(g, 1, {}, {}, trivial(1));
  if (name == "SL2") return make_root_datum(g, 1, {{2}}, {{1}}, trivial(1));
  if (name == "PGL2") return make_root_datum(g, 1, {{1}}, {{2}}, trivial(1));
  if (name == "GL2") return make_root_datum(g, 2, {{1, -1}}, {{1, -1}}, trivial(2));
  if (name == "SL3") return make_root_datum(g, 2, {{2, -1}, {-1, 2}, {1, 1}}, {{1, 0}, {0, 1}, {1, 1}}, trivial(2));
  if (name == "PGL3") return make_root_datum(g, 2, {{1, 0}, {0, 1}, {1, 1}}, {{2, -1}, {-1, 2}, {1, 1}}, trivial(2));
  throw AlgebraError("unknown-root-datum", name);
}

RootDatumGamma unitary_pgl3(const FiniteGroup& g, const Subgroup& index_two) {
  if (index_two.size() * 2 != g.order() || !g.is_normal(index_two))
    throw AlgebraError("not-index-two", "the diagram automorphism needs a subgroup of index two");
  const IntMatrix swap = IntMatrix::from_rows({{0, 1}, {1, 0}});
  std::vector<IntMatrix> actions;
  for (std::size_t x = 0; x < g.order(); ++x) actions.push_back(index_two.contains(x) ? IntMatrix::identity(2) : swap);
  return make_root_datum(g, 2, {{1, 0}, {0, 1}, {1, 1}}, {{2, -1}, {-1, 2}, {1, 1}}, actions);
}

GammaModule center_dual(const RootDatumGamma& r) {
  r.check();
  const std::size_t n = r.x_costar.dim();
  return GammaModule::from_presentation(r.group(), Presentation{n, rows_of(r.coroots, n)}, r.x_costar.actions());
}

ModuleMap cochar_to_pi1(const RootDatumGamma& r) {
  const GammaModule pi1 = center_dual(r);
  const std::size_t n = r.x_costar.dim();
  const Subquotient q(IntMatrix::identity(n), rows_of(r.coroots, n), n);
  IntMatrix m(pi1.dim(), n);
  for (std::size_t j = 0; j < n; ++j) {
    IntVector e(n, Integer(0));
    e[j] = 1;
    const IntVector c = pi1.reduce(q.coordinates(e));
    for (std::size_t i = 0; i < pi1.dim(); ++i) m(i, j) = c[i];
  }
  ModuleMap f{r.x_costar, pi1, m};
  f.check();
  return f;
}

CenterToTorus center_to_torus_map(const RootDatumGamma& r, const GammaModule& torus_cochar, const IntMatrix& to_pi1,
                                  const Subgroup& s) {
  const GammaModule pi1 = center_dual(r);
  const ModuleMap phi{torus_cochar, pi1, to_pi1};
  phi.check();
  if (!torus_cochar.is_free()) throw AlgebraError("not-a-lattice", "torus cocharacters must form a lattice");
  if (!hom_kernel_image(phi.as_hom()).cokernel.is_trivial())
    throw AlgebraError("not-surjective", "X_*(T) -> pi_1 must be onto");

  const CharacterH1 c0(pi1, s);
  const CharacterH1 t0(torus_cochar, s);
  Integer level;
  mpz_lcm(level.get_mpz_t(), c0.level().get_mpz_t(), t0.level().get_mpz_t());
  CharacterH1 c(pi1, s, level);
  CharacterH1 t(torus_cochar, s, level);
  if (!(c.group() == c0.group()) || !(t.group() == t0.group()))
    throw AlgebraError("no-stabilization", "common level changes the groups");
  AbHom m = character_h1_pullback(phi, c, t);
  return {std::move(c), std::move(t), std::move(m)};
}

WeilModel weil_model(long tame_level, long frob_order, long q) {
  if (tame_level < 1 || frob_order < 1) throw AlgebraError("bad-weil-level", "levels must be positive");
  if (std::gcd(tame_level, q) != 1) throw AlgebraError("bad-weil-level", "q must be a unit modulo the tame level");
  std::vector<long> qpow(frob_order + 1, 1 % tame_level);
  for (long b = 1; b <= frob_order; ++b) qpow[b] = (qpow[b - 1] * (q % tame_level)) % tame_level;
  if (qpow[frob_order] != 1 % tame_level)
    throw AlgebraError("bad-weil-level", "q^K must be 1 modulo the tame level");
  const auto m = static_cast<std::size_t>(tame_level);
  const auto k = static_cast<std::size_t>(frob_order);
  std::vector<std::vector<std::size_t>> table(m * k, std::vector<std::size_t>(m * k));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < k; ++b)
      for (std::size_t c = 0; c < m; ++c)
        for (std::size_t d = 0; d < k; ++d) {
          const std::size_t x = (a + static_cast<std::size_t>(qpow[b]) * c) % m;
          const std::size_t y = (b + d) % k;
          table[a + m * b][c + m * d] = x + m * y;
        }
  WeilModel w;
  w.group = FiniteGroup(std::move(table), 0, "W(" + std::to_string(tame_level) + "," + std::to_string(frob_order) + ")");
  w.tame_level = tame_level;
  w.frob_order = frob_order;
  w.tau = m > 1 ? 1 : 0;
  w.frob = k > 1 ? m : 0;
  return w;
}

GammaModule pull_back_to_weil(const GammaModule& c, const LocalGaloisDatum& d, const WeilModel& w) {
  require_valid(d);
  require_tame(c, d);
  const std::size_t tau = tame_generator(d);
  if (w.tame_level % static_cast<long>(order_mod_wild(d, tau)) != 0 ||
      w.frob_order % static_cast<long>(order_mod_wild(d, d.frobenius)) != 0)
    throw AlgebraError("bad-weil-level", "model levels must be multiples of the tame and Frobenius orders");
  std::vector<std::size_t> gens;
  std::vector<IntMatrix> images;
  if (w.tau != w.group.identity()) {
    gens.push_back(w.tau);
    images.push_back(c.action(tau));
  }
  if (w.frob != w.group.identity()) {
    gens.push_back(w.frob);
    images.push_back(c.action(d.frobenius));
  }
  return GammaModule::from_generator_actions(w.group, c.presentation(), gens, images);
}

CenterClasses depth_zero_center_classes(const RootDatumGamma& r, const LocalGaloisDatum& d,
                                        std::optional<long> tame_level, std::optional<long> frob_order) {
  require_valid(d);
  if (!(r.group() == d.gamma)) throw AlgebraError("group-mismatch", "root datum is over a different group");
  const GammaModule c = center_dual(r);
  const std::size_t n = c.dim();
  IntMatrix rel = c.relations();
  for (std::size_t x : d.wild.elements()) {
    const IntMatrix dx = (c.action(x) - IntMatrix::identity(n)).transpose();
    for (std::size_t i = 0; i < n; ++i) rel.append_row(dx.row(i));
  }
  const GammaModule cp = GammaModule::from_presentation(d.gamma, Presentation{n, empty_rows(rel, n)}, c.actions());

  CenterClasses out;
  out.unramified = dual_group(fixed_part(coinvariants(cp, d.inertia), cp.action(d.frobenius)));
  out.tame = tame_stable_classes(cp, d);

  if (cp.is_finite()) {
    const long k = static_cast<long>(order_mod_wild(d, d.frobenius));
    const long m = tame_level ? *tame_level : default_tame_level(d).get_si();
    const long kk = frob_order ? *frob_order : k * torsion_exponent(cp.underlying()).get_si();
    if (tame_level || frob_order || m * kk <= 600) {
      WeilModel w = weil_model(m, kk, d.q);
      const GammaModule cw = pull_back_to_weil(cp, d, w);
      out.total = CharacterH1(cw, w.group.whole()).group();
      out.model = std::move(w);
    }
  }
  if (out.total) {
    out.group = *out.total;
    if (out.unramified.is_finite() && out.tame.is_finite())
      out.orders_consistent = out.total->order() == out.unramified.order() * out.tame.order();
  } else {
    out.group = out.unramified.direct_sum(out.tame);
  }
  return out;
}

void ArchimedeanCharDatum::check(double tol) const {
  auto fail = [](const std::string& why) { throw AlgebraError("invalid-archimedean-datum", why); };
  if (sigma.rows() != rank || sigma.cols() != rank) fail("sigma must be rank x rank");
  if (mu.size() != rank || nu.size() != rank || h.size() != rank) fail("mu, nu, h must have length rank");
  if (!(sigma * sigma == IntMatrix::identity(rank))) fail("sigma must be an involution");
  for (std::size_t i = 0; i < rank; ++i) {
    std::complex<double> s = 0.0;
    for (std::size_t j = 0; j < rank; ++j) s += sigma(j, i).get_d() * mu[j];
    if (std::abs(s - nu[i]) > tol * (1.0 + std::abs(nu[i]))) fail("nu must equal sigma applied to mu");
    const std::complex<double> diff = mu[i] - nu[i];
    if (std::abs(diff.imag()) > tol || std::abs(diff.real() - std::round(diff.real())) > tol)
      fail("mu - nu must be integral");
  }
}

ArchimedeanReport archimedean_norm_check(const ArchimedeanCharDatum& a,
                                         const std::vector<std::vector<std::complex<double>>>& samples, double tol) {
  a.check();
  using C = std::complex<double>;
  const std::size_t r = a.rank;
  auto apply_sigma = [&](const std::vector<C>& v) {
    std::vector<C> out(r, 0.0);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) out[i] += a.sigma(i, j).get_d() * v[j];
    return out;
  };
  auto conj = [](std::vector<C> v) {
    for (auto& x : v) x = std::conj(x);
    return v;
  };
  auto dot = [&](const std::vector<C>& u, const std::vector<C>& v) {
    C s = 0.0;
    for (std::size_t i = 0; i < r; ++i) s += u[i] * v[i];
    return s;
  };

  ArchimedeanReport rep;
  for (const auto& y : samples) {
    if (y.size() != r) throw AlgebraError("invalid-archimedean-datum", "sample has the wrong length");
    const std::vector<C> sy = apply_sigma(conj(y));
    std::vector<C> x(r), minus(r), plus(r), half(r);
    for (std::size_t i = 0; i < r; ++i) x[i] = y[i] + sy[i];
    const std::vector<C> sx = apply_sigma(conj(x));
    for (std::size_t i = 0; i < r; ++i) {
      minus[i] = x[i] - sx[i];
      plus[i] = x[i] + sx[i];
      half[i] = 0.5 * a.mu[i];
    }
    const C lhs = std::exp(dot(a.h, minus) + dot(half, plus));
    const C rhs = std::exp(dot(a.mu, y) + dot(a.nu, conj(y)));
    double dev = std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-300);
    if (!std::isfinite(dev)) dev = std::numeric_limits<double>::infinity();
    rep.max_relative_deviation = std::max(rep.max_relative_deviation, dev);
    ++rep.samples;
  }
  rep.pass = rep.max_relative_deviation <= tol;
  return rep;
}

} // namespace torilang
