#include "torilang/gmodule.hpp"

#include "torilang/errors.hpp"

#include <algorithm>
#include <numeric>

namespace torilang {

namespace {

IntMatrix reduce_rows(IntMatrix a, const IntVector& orders) {
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = reduce_mod(a(i, j), orders[i]);
  return a;
}

IntMatrix block_diag(const IntMatrix& a, const IntMatrix& b) {
  IntMatrix out(a.rows() + b.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) out(a.rows() + i, a.cols() + j) = b(i, j);
  return out;
}

bool same_mod(const IntMatrix& a, const IntMatrix& b, const IntVector& orders) {
  return reduce_rows(a, orders) == reduce_rows(b, orders);
}

bool conjugate_subgroups(const FiniteGroup& g, const Subgroup& a, const Subgroup& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t x = 0; x < g.order(); ++x) {
    bool all = true;
    for (std::size_t h : a.elements())
      if (!b.contains(g.conjugate(x, h))) {
        all = false;
        break;
      }
    if (all) return true;
  }
  return false;
}

} // namespace

GammaModule GammaModule::from_presentation(const FiniteGroup& g, const Presentation& p,
                                           const std::vector<IntMatrix>& actions) {
  const std::size_t k = p.generators;
  if (actions.size() != g.order())
    throw AlgebraError("action-count", "need one action matrix per group element");
  const IntMatrix rel = p.relations.rows() ? p.relations : IntMatrix(0, k);
  if (rel.cols() != k) throw AlgebraError("presentation-shape", "relation width differs from generator count");
  for (std::size_t x = 0; x < g.order(); ++x) {
    const IntMatrix& a = actions[x];
    if (a.rows() != k || a.cols() != k)
      throw AlgebraError("action-shape", "action of element " + std::to_string(x) + " is not square of size " + std::to_string(k));
    IntMatrix images(0, k);
    for (std::size_t r = 0; r < rel.rows(); ++r) images.append_row(a.apply(rel.row(r)));
    if (!lattice_contains(rel, images))
      throw AlgebraError("action-relations", "element " + std::to_string(x) + " does not preserve the relations");
  }

  const Subquotient sq(IntMatrix::identity(k), rel, k);
  GammaModule m;
  m.group_ = g;
  m.orders_ = sq.group().generator_orders();
  const std::size_t n = m.orders_.size();
  const auto lifts = sq.generator_lifts();
  m.actions_.reserve(g.order());
  for (std::size_t x = 0; x < g.order(); ++x) {
    IntMatrix a(n, n);
    for (std::size_t j = 0; j < n; ++j) {
      const IntVector c = sq.coordinates(actions[x].apply(lifts[j]));
      for (std::size_t i = 0; i < n; ++i) a(i, j) = c[i];
    }
    m.actions_.push_back(std::move(a));
  }

  m.check_action();
  return m;
}

GammaModule GammaModule::from_cyclic_generators(const FiniteGroup& g, const IntVector& orders,
                                                const std::vector<IntMatrix>& actions) {
  if (actions.size() != g.order())
    throw AlgebraError("action-count", "need one action matrix per group element");
  const std::size_t n = orders.size();
  GammaModule m;
  m.group_ = g;
  m.orders_ = orders;
  for (std::size_t x = 0; x < g.order(); ++x) {
    const IntMatrix& a = actions[x];
    if (a.rows() != n || a.cols() != n)
      throw AlgebraError("action-shape", "action of element " + std::to_string(x) + " has the wrong size");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (sgn(reduce_mod(orders[j] * a(i, j), orders[i])) != 0)
          throw AlgebraError("action-relations", "element " + std::to_string(x) + " does not preserve the relations");
    m.actions_.push_back(reduce_rows(a, orders));
  }
  m.check_action();
  return m;
}

void GammaModule::check_action() const {
  const std::size_t n = dim();
  if (!same_mod(actions_[group_.identity()], IntMatrix::identity(n), orders_))
    throw AlgebraError("action-identity", "identity element acts nontrivially");
  for (std::size_t x = 0; x < group_.order(); ++x)
    for (std::size_t y = 0; y < group_.order(); ++y)
      if (!same_mod(actions_[group_.mul(x, y)], actions_[x] * actions_[y], orders_))
        throw AlgebraError("action-homomorphism", "action(" + std::to_string(x) + "*" + std::to_string(y) +
                                                      ") differs from the product of actions");
}

GammaModule GammaModule::from_generator_actions(const FiniteGroup& g, const Presentation& p,
                                                const std::vector<std::size_t>& generators,
                                                const std::vector<IntMatrix>& images) {
  if (generators.size() != images.size()) throw AlgebraError("action-count", "one image per generator");
  if (g.generated(generators).size() != g.order())
    throw AlgebraError("not-generating", "listed elements do not generate the group");
  std::vector<IntMatrix> actions(g.order());
  std::vector<char> seen(g.order(), 0);
  std::vector<std::size_t> queue{g.identity()};
  actions[g.identity()] = IntMatrix::identity(p.generators);
  seen[g.identity()] = 1;
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (std::size_t s = 0; s < generators.size(); ++s) {
      const std::size_t y = g.mul(generators[s], queue[i]);
      if (seen[y]) continue;
      seen[y] = 1;
      actions[y] = images[s] * actions[queue[i]];
      queue.push_back(y);
    }
  return from_presentation(g, p, actions);
}

GammaModule GammaModule::lattice(const FiniteGroup& g, const std::vector<IntMatrix>& actions) {
  const std::size_t k = actions.empty() ? 0 : actions.front().rows();
  return from_presentation(g, Presentation::free(k), actions);
}

GammaModule GammaModule::trivial(const FiniteGroup& g, const FinAbGroup& a) {
  const Presentation p = Presentation::of(a);
  return from_presentation(g, p, std::vector<IntMatrix>(g.order(), IntMatrix::identity(p.generators)));
}

bool GammaModule::is_free() const {
  return std::all_of(orders_.begin(), orders_.end(), [](const Integer& o) { return sgn(o) == 0; });
}

bool GammaModule::is_finite() const {
  return std::all_of(orders_.begin(), orders_.end(), [](const Integer& o) { return sgn(o) != 0; });
}

Integer GammaModule::size() const {
  if (!is_finite()) throw AlgebraError("infinite-module", "size of an infinite module");
  Integer n = 1;
  for (const auto& o : orders_) n *= o;
  return n;
}

IntVector GammaModule::reduce(const IntVector& x) const {
  IntVector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = reduce_mod(x[i], orders_[i]);
  return out;
}

IntVector GammaModule::act(std::size_t g, const IntVector& x) const { return reduce(actions_[g].apply(x)); }

IntVector GammaModule::add(const IntVector& a, const IntVector& b) const {
  IntVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = reduce_mod(a[i] + b[i], orders_[i]);
  return out;
}

IntVector GammaModule::sub(const IntVector& a, const IntVector& b) const {
  IntVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = reduce_mod(a[i] - b[i], orders_[i]);
  return out;
}

bool GammaModule::is_zero(const IntVector& x) const {
  for (std::size_t i = 0; i < x.size(); ++i)
    if (sgn(reduce_mod(x[i], orders_[i])) != 0) return false;
  return true;
}

std::vector<IntVector> GammaModule::elements() const {
  if (!is_finite()) throw AlgebraError("infinite-module", "cannot enumerate an infinite module");
  std::vector<IntVector> out{zero()};
  for (std::size_t i = dim(); i-- > 0;) {
    std::vector<IntVector> next;
    for (const auto& v : out)
      for (long c = 0; c < orders_[i].get_si(); ++c) {
        IntVector w = v;
        w[i] = c;
        next.push_back(std::move(w));
      }
    out.swap(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

IntMatrix GammaModule::relations() const {
  IntMatrix r(0, dim());
  for (std::size_t i = 0; i < dim(); ++i)
    if (sgn(orders_[i]) != 0) {
      IntVector row(dim(), Integer(0));
      row[i] = orders_[i];
      r.append_row(row);
    }
  return r;
}

bool GammaModule::acts_trivially(std::size_t g) const {
  return same_mod(actions_[g], IntMatrix::identity(dim()), orders_);
}

bool ModuleMap::is_well_defined() const {
  if (matrix.rows() != target.dim() || matrix.cols() != source.dim()) return false;
  return as_hom().is_well_defined();
}

bool ModuleMap::is_equivariant() const {
  if (!(source.acting_group() == target.acting_group())) return false;
  for (std::size_t g = 0; g < source.acting_group().order(); ++g)
    if (!same_mod(target.action(g) * matrix, matrix * source.action(g), target.orders())) return false;
  return true;
}

void ModuleMap::check() const {
  if (!is_well_defined()) throw AlgebraError("ill-defined-homomorphism", "map does not respect relations");
  if (!is_equivariant()) throw AlgebraError("not-equivariant", "map does not commute with the action");
}

bool ShortExactSeq::is_exact() const {
  try {
    check();
    return true;
  } catch (const AlgebraError&) {
    return false;
  }
}

void ShortExactSeq::check() const {
  inclusion.check();
  projection.check();
  if (!(inclusion.target.orders() == projection.source.orders()) ||
      !(inclusion.target.actions() == projection.source.actions()))
    throw AlgebraError("not-exact", "middle modules differ");
  const KernelImage ki = hom_kernel_image(inclusion.as_hom());
  if (!ki.kernel.is_trivial()) throw AlgebraError("not-exact", "inclusion is not injective");
  const KernelImage kp = hom_kernel_image(projection.as_hom());
  if (!kp.cokernel.is_trivial()) throw AlgebraError("not-exact", "projection is not surjective");
  const GammaModule& b = inclusion.target;
  const IntMatrix image = IntMatrix::vstack(inclusion.matrix.transpose(), b.relations());
  const IntMatrix kernel = IntMatrix::vstack(hom_kernel_lattice(projection.as_hom()), b.relations());
  if (!same_lattice(image, kernel))
    throw AlgebraError("not-exact", "image of the inclusion differs from the kernel of the projection");
}

GammaModule permutation_module(const FiniteGroup& g, const Subgroup& h) {
  const auto reps = g.coset_reps(h);
  const std::size_t k = reps.size();
  std::vector<IntMatrix> actions;
  for (std::size_t x = 0; x < g.order(); ++x) {
    IntMatrix a(k, k);
    for (std::size_t i = 0; i < k; ++i) a(g.coset_of(reps, h, g.mul(x, reps[i])), i) = 1;
    actions.push_back(std::move(a));
  }
  return GammaModule::lattice(g, actions);
}

GammaModule sign_module(const FiniteGroup& g, const Subgroup& index_two, long n) {
  if (index_two.size() * 2 != g.order()) throw AlgebraError("not-index-two", "sign module needs an index-two subgroup");
  std::vector<IntMatrix> actions;
  for (std::size_t x = 0; x < g.order(); ++x) actions.push_back(IntMatrix::from_rows({{index_two.contains(x) ? 1L : -1L}}));
  Presentation p = Presentation::free(1);
  if (n != 0) p.relations = IntMatrix::from_rows({{n}});
  return GammaModule::from_presentation(g, p, actions);
}

Subquotient invariants(const GammaModule& m, const Subgroup& s) {
  const std::size_t n = m.dim();
  const FiniteGroup& g = m.acting_group();
  IntMatrix stacked(0, n);
  IntVector moduli;
  for (std::size_t x : g.generators_of(s)) {
    const IntMatrix d = m.action(x) - IntMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i) {
      stacked.append_row(d.row(i));
      moduli.push_back(m.orders()[i]);
    }
  }
  const IntMatrix lattice = stacked.rows() ? preimage_basis(stacked, moduli) : IntMatrix::identity(n);
  return Subquotient(lattice, m.relations(), n);
}

Subquotient coinvariants(const GammaModule& m, const Subgroup& s) {
  const std::size_t n = m.dim();
  IntMatrix rel = m.relations();
  for (std::size_t x : s.elements()) {
    const IntMatrix d = (m.action(x) - IntMatrix::identity(n)).transpose();
    for (std::size_t i = 0; i < n; ++i) rel.append_row(d.row(i));
  }
  return Subquotient(IntMatrix::identity(n), rel, n);
}

NormMap norm_sum(const GammaModule& m, const Subgroup& h) {
  const FiniteGroup& g = m.acting_group();
  const std::size_t n = m.dim();
  NormMap out;
  out.raw = IntMatrix(n, n);
  for (std::size_t r : g.coset_reps(h)) out.raw = out.raw + m.action(r);
  out.raw = reduce_rows(out.raw, m.orders());
  const Subquotient src = coinvariants(m, h);
  const Subquotient tgt = coinvariants(m, g.whole());
  const auto lifts = src.generator_lifts();
  IntMatrix f(tgt.group().generator_count(), lifts.size());
  for (std::size_t j = 0; j < lifts.size(); ++j) {
    const IntVector c = tgt.coordinates(out.raw.apply(lifts[j]));
    for (std::size_t i = 0; i < c.size(); ++i) f(i, j) = c[i];
  }
  out.on_coinvariants = AbHom{Presentation::of(src.group()), Presentation::of(tgt.group()), f};
  out.on_coinvariants.check_well_defined();
  return out;
}

GammaModule restrict_action(const GammaModule& m, const Subgroup& s) {
  const FiniteGroup& g = m.acting_group();
  std::vector<IntMatrix> actions;
  for (std::size_t x : s.elements()) actions.push_back(m.action(x));
  return GammaModule::from_presentation(g.restrict_to(s), m.presentation(), actions);
}

GammaModule inflate_action(const GammaModule& m, const FiniteGroup& g, const QuotientGroup& q) {
  if (!(m.acting_group() == q.group)) throw AlgebraError("group-mismatch", "module is not over the quotient group");
  std::vector<IntMatrix> actions;
  for (std::size_t x = 0; x < g.order(); ++x) actions.push_back(m.action(q.projection[x]));
  return GammaModule::from_presentation(g, m.presentation(), actions);
}

GammaModule descend_action(const GammaModule& m, const Subgroup& n, const QuotientGroup& q) {
  for (std::size_t x : n.elements())
    if (!m.acts_trivially(x))
      throw AlgebraError("nontrivial-on-kernel", "element " + std::to_string(x) + " of the normal subgroup acts nontrivially");
  std::vector<IntMatrix> actions;
  for (std::size_t c : q.representatives) actions.push_back(m.action(c));
  return GammaModule::from_presentation(q.group, m.presentation(), actions);
}

GammaModule tensor_mod(const GammaModule& m, const Integer& modulus) {
  if (modulus < 1) throw AlgebraError("modulus-too-small", "tensor_mod requires a positive modulus");
  Presentation p = m.presentation();
  p.relations = IntMatrix::vstack(p.relations, modulus * IntMatrix::identity(m.dim()));
  return GammaModule::from_presentation(m.acting_group(), p, m.actions());
}

GammaModule dual_lattice(const GammaModule& l) {
  if (!l.is_free()) throw AlgebraError("not-a-lattice", "dual_lattice needs a free module");
  const FiniteGroup& g = l.acting_group();
  std::vector<IntMatrix> actions;
  for (std::size_t x = 0; x < g.order(); ++x) actions.push_back(l.action(g.inv(x)).transpose());
  return GammaModule::lattice(g, actions);
}

GammaModule direct_sum(const GammaModule& a, const GammaModule& b) {
  if (!(a.acting_group() == b.acting_group())) throw AlgebraError("group-mismatch", "direct sum over different groups");
  Presentation p{a.dim() + b.dim(), IntMatrix(0, a.dim() + b.dim())};
  for (std::size_t r = 0; r < a.relations().rows(); ++r) {
    IntVector row = a.relations().row(r);
    row.resize(p.generators, Integer(0));
    p.relations.append_row(row);
  }
  for (std::size_t r = 0; r < b.relations().rows(); ++r) {
    IntVector row(a.dim(), Integer(0));
    const IntVector tail = b.relations().row(r);
    row.insert(row.end(), tail.begin(), tail.end());
    p.relations.append_row(row);
  }
  std::vector<IntMatrix> actions;
  for (std::size_t x = 0; x < a.acting_group().order(); ++x) actions.push_back(block_diag(a.action(x), b.action(x)));
  return GammaModule::from_presentation(a.acting_group(), p, actions);
}

std::size_t matrix_order(const IntMatrix& a, std::size_t bound) {
  const IntMatrix id = IntMatrix::identity(a.rows());
  IntMatrix x = a;
  for (std::size_t k = 1; k <= bound; ++k) {
    if (x == id) return k;
    x = x * a;
  }
  throw AlgebraError("infinite-order", "matrix has no finite order up to " + std::to_string(bound));
}

std::vector<NamedMatrix> finite_order_matrices(std::size_t max_rank) {
  const std::vector<NamedMatrix> rank1 = {{"1", IntMatrix::from_rows({{1}})}, {"-1", IntMatrix::from_rows({{-1}})}};
  const std::vector<NamedMatrix> rank2 = {
      {"1+1", IntMatrix::from_rows({{1, 0}, {0, 1}})},
      {"-1-1", IntMatrix::from_rows({{-1, 0}, {0, -1}})},
      {"1-1", IntMatrix::from_rows({{1, 0}, {0, -1}})},
      {"swap", IntMatrix::from_rows({{0, 1}, {1, 0}})},
      {"rot3", IntMatrix::from_rows({{0, -1}, {1, -1}})},
      {"rot4", IntMatrix::from_rows({{0, -1}, {1, 0}})},
      {"rot6", IntMatrix::from_rows({{1, -1}, {1, 0}})},
  };
  std::vector<NamedMatrix> out;
  if (max_rank >= 1) out.insert(out.end(), rank1.begin(), rank1.end());
  if (max_rank >= 2) out.insert(out.end(), rank2.begin(), rank2.end());
  if (max_rank >= 3) {
    for (const auto& a : rank1)
      for (std::size_t i = 1; i < rank2.size(); ++i)
        out.push_back({a.name + "+" + rank2[i].name, block_diag(a.matrix, rank2[i].matrix)});
    out.push_back({"1+1+1", IntMatrix::identity(3)});
    out.push_back({"cycle3", IntMatrix::from_rows({{0, 0, 1}, {1, 0, 0}, {0, 1, 0}})});
    out.push_back({"-cycle3", IntMatrix::from_rows({{0, 0, -1}, {-1, 0, 0}, {0, -1, 0}})});
  }
  return out;
}

std::vector<NamedModule> module_catalog(const FiniteGroup& g, long max_finite_order) {
  std::vector<NamedModule> out;
  auto add = [&](std::string name, GammaModule m) {
    if (m.is_finite() && m.size() > max_finite_order) return;
    out.push_back({std::move(name), std::move(m)});
  };
  add("Z", GammaModule::trivial(g, FinAbGroup::free(1)));
  for (long n : {2L, 3L, 4L}) add("Z/" + std::to_string(n), GammaModule::trivial(g, FinAbGroup::cyclic(n)));

  const auto subgroups = g.all_subgroups();
  std::size_t sign_count = 0;
  for (const auto& h : subgroups) {
    if (h.size() * 2 != g.order()) continue;
    const std::string tag = "sign" + std::to_string(sign_count++) + ":";
    add(tag + "Z", sign_module(g, h));
    add(tag + "Z/3", sign_module(g, h, 3));
    add(tag + "Z/4", sign_module(g, h, 4));
  }

  std::vector<Subgroup> classes;
  for (const auto& h : subgroups) {
    if (std::any_of(classes.begin(), classes.end(), [&](const Subgroup& k) { return conjugate_subgroups(g, k, h); }))
      continue;
    classes.push_back(h);
  }
  for (const auto& h : classes) {
    const std::size_t index = g.order() / h.size();
    if (index < 2) continue;
    const GammaModule perm = permutation_module(g, h);
    const std::string tag = "Z[G/H" + std::to_string(h.size()) + "]";
    if (index <= 3) add(tag, perm);
    add(tag + "/2", tensor_mod(perm, 2));
    add(tag + "/3", tensor_mod(perm, 3));
  }

  if (g.is_cyclic() && g.order() > 1) {
    std::size_t gen = 0;
    while (g.element_order(gen) != g.order()) ++gen;
    for (const auto& nm : finite_order_matrices(3)) {
      if (g.order() % matrix_order(nm.matrix) != 0) continue;
      const bool scalar_trivial = nm.matrix == IntMatrix::identity(nm.matrix.rows());
      if (scalar_trivial && nm.matrix.rows() == 1) continue;
      const GammaModule lat = GammaModule::from_generator_actions(g, Presentation::free(nm.matrix.rows()), {gen}, {nm.matrix});
      add("lat(" + nm.name + ")", lat);
      if (!scalar_trivial) {
        add("lat(" + nm.name + ")/2", tensor_mod(lat, 2));
        add("lat(" + nm.name + ")/3", tensor_mod(lat, 3));
      }
    }
    const std::vector<std::pair<long, long>> units = {{3, 2}, {4, 3}, {5, 4}, {5, 2}, {7, 2}, {7, 3}, {8, 3},
                                                      {8, 5}, {9, 2}, {9, 8}, {13, 5}, {27, 26}, {27, 10}};
    for (const auto& [mod, u] : units) {
      Integer acc = 1;
      for (std::size_t k = 0; k < g.order(); ++k) acc = acc * u % mod;
      if (acc != 1) continue;
      Presentation p{1, IntMatrix::from_rows({{mod}})};
      add("Z/" + std::to_string(mod) + "(x" + std::to_string(u) + ")",
          GammaModule::from_generator_actions(g, p, {gen}, {IntMatrix::from_rows({{u}})}));
    }
  }
  return out;
}

} // namespace torilang
