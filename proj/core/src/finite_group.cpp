#include "torilang/finite_group.hpp"

#include "torilang/errors.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace torilang {

Subgroup::Subgroup(std::vector<std::size_t> elements, std::size_t group_order)
    : elements_(std::move(elements)), position_(group_order, -1) {
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (elements_[i] >= group_order) throw AlgebraError("not-a-subgroup", "element index out of range");
    position_[elements_[i]] = static_cast<long>(i);
  }
}

std::size_t Subgroup::position(std::size_t g) const {
  if (!contains(g)) throw AlgebraError("not-a-member", "element " + std::to_string(g) + " not in subgroup");
  return static_cast<std::size_t>(position_[g]);
}

FiniteGroup::FiniteGroup(std::vector<std::vector<std::size_t>> table, std::size_t identity, std::string name)
    : order_(table.size()), identity_(identity), name_(std::move(name)) {
  const std::size_t n = order_;
  if (n == 0) throw AlgebraError("empty-group", "a group needs at least one element");
  if (identity >= n) throw AlgebraError("identity", "identity index out of range");
  table_.resize(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    if (table[a].size() != n) throw AlgebraError("table-shape", "row " + std::to_string(a) + " has wrong length");
    for (std::size_t b = 0; b < n; ++b) {
      if (table[a][b] >= n) throw AlgebraError("table-range", "entry out of range");
      table_[a * n + b] = table[a][b];
    }
  }
  for (std::size_t a = 0; a < n; ++a)
    if (mul(identity, a) != a || mul(a, identity) != a)
      throw AlgebraError("identity", "identity law fails at element " + std::to_string(a));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (mul(mul(a, b), c) != mul(a, mul(b, c))) {
          std::ostringstream os;
          os << "(" << a << ", " << b << ", " << c << ")";
          throw AlgebraError("associativity", "fails at triple " + os.str());
        }
  inverse_.assign(n, n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b)
      if (mul(a, b) == identity && mul(b, a) == identity) {
        inverse_[a] = b;
        break;
      }
    if (inverse_[a] == n) throw AlgebraError("inverse", "element " + std::to_string(a) + " has no inverse");
  }
}

std::size_t FiniteGroup::power(std::size_t a, long k) const {
  std::size_t base = k < 0 ? inv(a) : a;
  unsigned long e = static_cast<unsigned long>(k < 0 ? -k : k);
  std::size_t result = identity_;
  while (e) {
    if (e & 1UL) result = mul(result, base);
    base = mul(base, base);
    e >>= 1UL;
  }
  return result;
}

std::size_t FiniteGroup::element_order(std::size_t a) const {
  std::size_t k = 1;
  std::size_t x = a;
  while (x != identity_) {
    x = mul(x, a);
    ++k;
  }
  return k;
}

bool FiniteGroup::is_abelian() const {
  for (std::size_t a = 0; a < order_; ++a)
    for (std::size_t b = 0; b < a; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

bool FiniteGroup::is_cyclic() const {
  for (std::size_t a = 0; a < order_; ++a)
    if (element_order(a) == order_) return true;
  return false;
}

Subgroup FiniteGroup::whole() const {
  std::vector<std::size_t> all(order_);
  std::iota(all.begin(), all.end(), std::size_t{0});
  return Subgroup(std::move(all), order_);
}

Subgroup FiniteGroup::trivial() const { return Subgroup({identity_}, order_); }

Subgroup FiniteGroup::subgroup(std::vector<std::size_t> elements) const {
  Subgroup h(std::move(elements), order_);
  if (!h.contains(identity_)) throw AlgebraError("not-a-subgroup", "identity missing");
  for (std::size_t a : h.elements()) {
    if (!h.contains(inv(a))) throw AlgebraError("not-a-subgroup", "not closed under inverses");
    for (std::size_t b : h.elements())
      if (!h.contains(mul(a, b))) throw AlgebraError("not-a-subgroup", "not closed under multiplication");
  }
  return h;
}

Subgroup FiniteGroup::generated(const std::vector<std::size_t>& generators) const {
  std::vector<char> seen(order_, 0);
  std::vector<std::size_t> members{identity_};
  seen[identity_] = 1;
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t g : generators) {
      const std::size_t x = mul(g, members[i]);
      if (!seen[x]) {
        seen[x] = 1;
        members.push_back(x);
      }
    }
  return Subgroup(std::move(members), order_);
}

bool FiniteGroup::is_normal(const Subgroup& h) const {
  for (std::size_t g = 0; g < order_; ++g)
    for (std::size_t x : h.elements())
      if (!h.contains(conjugate(g, x))) return false;
  return true;
}

bool FiniteGroup::is_subgroup_of(const Subgroup& small, const Subgroup& big) const {
  return std::all_of(small.elements().begin(), small.elements().end(),
                     [&](std::size_t x) { return big.contains(x); });
}

std::vector<Subgroup> FiniteGroup::all_subgroups() const {
  std::set<std::vector<std::size_t>> found;
  std::vector<Subgroup> frontier{trivial()};
  found.insert(trivial().elements());
  for (std::size_t i = 0; i < frontier.size(); ++i) {
    const Subgroup h = frontier[i];
    for (std::size_t g = 0; g < order_; ++g) {
      if (h.contains(g)) continue;
      std::vector<std::size_t> gens = generators_of(h);
      gens.push_back(g);
      Subgroup k = generated(gens);
      if (found.insert(k.elements()).second) frontier.push_back(k);
    }
  }
  std::sort(frontier.begin(), frontier.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.elements() < b.elements();
  });
  return frontier;
}

std::vector<std::size_t> FiniteGroup::generators_of(const Subgroup& h) const {
  std::vector<std::size_t> gens;
  Subgroup current = trivial();
  for (std::size_t x : h.elements()) {
    if (current.contains(x)) continue;
    gens.push_back(x);
    current = generated(gens);
    if (current.size() == h.size()) break;
  }
  return gens;
}

std::vector<std::size_t> FiniteGroup::coset_reps(const Subgroup& ambient, const Subgroup& h) const {
  if (!is_subgroup_of(h, ambient)) throw AlgebraError("not-a-subgroup", "coset_reps: H is not contained in the ambient group");
  std::vector<char> covered(order_, 0);
  std::vector<std::size_t> reps;
  for (std::size_t g : ambient.elements()) {
    if (covered[g]) continue;
    reps.push_back(g);
    for (std::size_t x : h.elements()) covered[mul(g, x)] = 1;
  }
  return reps;
}

std::size_t FiniteGroup::coset_of(const std::vector<std::size_t>& reps, const Subgroup& h, std::size_t g) const {
  for (std::size_t i = 0; i < reps.size(); ++i)
    if (h.contains(mul(inv(reps[i]), g))) return i;
  throw AlgebraError("not-a-member", "element lies in no listed coset");
}

FiniteGroup FiniteGroup::restrict_to(const Subgroup& h) const {
  const std::size_t n = h.size();
  std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[i][j] = h.position(mul(h.elements()[i], h.elements()[j]));
  return FiniteGroup(std::move(t), h.position(identity_), name_.empty() ? "" : "sub(" + name_ + ")");
}

std::vector<std::vector<std::size_t>> double_cosets(const FiniteGroup& g, const Subgroup& h1, const Subgroup& h2) {
  std::vector<char> covered(g.order(), 0);
  std::vector<std::vector<std::size_t>> blocks;
  for (std::size_t x = 0; x < g.order(); ++x) {
    if (covered[x]) continue;
    std::vector<std::size_t> block;
    for (std::size_t a : h1.elements())
      for (std::size_t b : h2.elements()) {
        const std::size_t y = g.mul(g.mul(a, x), b);
        if (!covered[y]) {
          covered[y] = 1;
          block.push_back(y);
        }
      }
    std::sort(block.begin(), block.end());
    blocks.push_back(std::move(block));
  }
  return blocks;
}

QuotientGroup quotient_group(const FiniteGroup& g, const Subgroup& n) {
  if (!g.is_normal(n)) throw AlgebraError("not-normal", "quotient by a non-normal subgroup");
  const std::vector<std::size_t> reps = g.coset_reps(n);
  std::vector<std::size_t> proj(g.order());
  for (std::size_t x = 0; x < g.order(); ++x) proj[x] = g.coset_of(reps, n, x);
  std::vector<std::vector<std::size_t>> t(reps.size(), std::vector<std::size_t>(reps.size()));
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (std::size_t j = 0; j < reps.size(); ++j) t[i][j] = proj[g.mul(reps[i], reps[j])];
  FiniteGroup q(std::move(t), proj[g.identity()], g.name().empty() ? "" : g.name() + "/N");
  return QuotientGroup{std::move(q), std::move(proj), reps};
}

namespace catalog {

FiniteGroup cyclic(std::size_t n) {
  std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) t[a][b] = (a + b) % n;
  return FiniteGroup(std::move(t), 0, "Z/" + std::to_string(n));
}

FiniteGroup dihedral(std::size_t n) {
  // r^a s^b * r^c s^d = r^(a + (-1)^b c) s^(b+d)
  const std::size_t order = 2 * n;
  std::vector<std::vector<std::size_t>> t(order, std::vector<std::size_t>(order));
  for (std::size_t x = 0; x < order; ++x)
    for (std::size_t y = 0; y < order; ++y) {
      const std::size_t a = x % n, b = x / n, c = y % n, d = y / n;
      const std::size_t rot = b == 0 ? (a + c) % n : (a + n - c) % n;
      t[x][y] = rot + n * ((b + d) % 2);
    }
  std::string name = n == 3 ? "S3" : "D" + std::to_string(n);
  return FiniteGroup(std::move(t), 0, name);
}

FiniteGroup klein_four() {
  FiniteGroup g = direct_product(cyclic(2), cyclic(2));
  std::vector<std::vector<std::size_t>> t(4, std::vector<std::size_t>(4));
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b) t[a][b] = g.mul(a, b);
  return FiniteGroup(std::move(t), 0, "V4");
}

FiniteGroup symmetric3() { return dihedral(3); }

FiniteGroup quaternion8() {
  // index = 4*s + u with u in {1,i,j,k} and sign s
  static const int unit_mul[4][4][2] = {
      {{0, 0}, {1, 0}, {2, 0}, {3, 0}},
      {{1, 0}, {0, 1}, {3, 0}, {2, 1}},
      {{2, 0}, {3, 1}, {0, 1}, {1, 0}},
      {{3, 0}, {2, 0}, {1, 1}, {0, 1}},
  };
  std::vector<std::vector<std::size_t>> t(8, std::vector<std::size_t>(8));
  for (std::size_t x = 0; x < 8; ++x)
    for (std::size_t y = 0; y < 8; ++y) {
      const auto& r = unit_mul[x % 4][y % 4];
      const std::size_t sign = (x / 4 + y / 4 + static_cast<std::size_t>(r[1])) % 2;
      t[x][y] = static_cast<std::size_t>(r[0]) + 4 * sign;
    }
  return FiniteGroup(std::move(t), 0, "Q8");
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const std::size_t n = a.order() * b.order();
  std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      const std::size_t xa = x % a.order(), xb = x / a.order();
      const std::size_t ya = y % a.order(), yb = y / a.order();
      t[x][y] = a.mul(xa, ya) + a.order() * b.mul(xb, yb);
    }
  const std::size_t id = a.identity() + a.order() * b.identity();
  return FiniteGroup(std::move(t), id, a.name() + "x" + b.name());
}

std::vector<FiniteGroup> groups_up_to(std::size_t max_order) {
  std::vector<FiniteGroup> out;
  for (std::size_t n = 1; n <= max_order; ++n) {
    out.push_back(cyclic(n));
    if (n == 4) out.push_back(klein_four());
    if (n == 6) out.push_back(symmetric3());
    if (n == 8) {
      out.push_back(dihedral(4));
      out.push_back(quaternion8());
      FiniteGroup g = direct_product(cyclic(2), cyclic(4));
      out.push_back(g);
    }
    if (n == 12) {
      out.push_back(dihedral(6));
      out.push_back(direct_product(cyclic(2), cyclic(6)));
    }
  }
  return out;
}

FiniteGroup by_name(const std::string& name) {
  if (name == "V4") return klein_four();
  if (name == "S3") return symmetric3();
  if (name == "Q8") return quaternion8();
  if (name == "D4") return dihedral(4);
  if (name == "D6") return dihedral(6);
  if (name == "Z/2xZ/4") return direct_product(cyclic(2), cyclic(4));
  if (name == "Z/2xZ/6") return direct_product(cyclic(2), cyclic(6));
  if (name.rfind("Z/", 0) == 0) {
    const std::string digits = name.substr(2);
    if (!digits.empty() && std::all_of(digits.begin(), digits.end(), ::isdigit)) {
      const auto n = std::stoul(digits);
      if (n >= 1 && n <= 64) return cyclic(n);
    }
  }
  if (name.rfind("D", 0) == 0 && name.size() > 1) {
    const std::string digits = name.substr(1);
    if (std::all_of(digits.begin(), digits.end(), ::isdigit)) {
      const auto n = std::stoul(digits);
      if (n >= 2 && n <= 32) return dihedral(n);
    }
  }
  throw AlgebraError("unknown-group", "no catalog group named '" + name + "'");
}

} // namespace catalog

LocalGaloisDatum LocalGaloisDatum::unramified(std::size_t k, long p, long q) {
  FiniteGroup g = catalog::cyclic(k);
  Subgroup t = g.trivial();
  return LocalGaloisDatum{g, t, t, k > 1 ? 1U : 0U, p, q};
}

bool DatumReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const DatumCheck& c) { return c.passed; });
}

std::string DatumReport::first_violation() const {
  for (const auto& c : checks)
    if (!c.passed) return c.name;
  return {};
}

bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

long p_part(long n, long p) {
  long out = 1;
  while (n % p == 0) {
    n /= p;
    out *= p;
  }
  return out;
}

DatumReport validate_local_datum(const LocalGaloisDatum& d) {
  DatumReport rep;
  const FiniteGroup& g = d.gamma;
  auto add = [&](std::string name, bool ok, std::string detail = {}) {
    rep.checks.push_back(DatumCheck{std::move(name), ok, std::move(detail)});
    return ok;
  };
  auto valid_subgroup = [&](const Subgroup& h) {
    for (std::size_t a : h.elements())
      for (std::size_t b : h.elements())
        if (!h.contains(g.mul(a, b))) return false;
    return h.contains(g.identity());
  };

  add("residue-characteristic", is_prime(d.p), "p = " + std::to_string(d.p));
  bool q_ok = d.q >= 2 && is_prime(d.p) && p_part(d.q, d.p) == d.q;
  add("residue-cardinality", q_ok, "q = " + std::to_string(d.q));
  add("frobenius-range", d.frobenius < g.order());
  const bool subgroups_ok = add("inertia-subgroup", valid_subgroup(d.inertia)) &&
                            add("wild-subgroup", valid_subgroup(d.wild));
  if (!subgroups_ok || d.frobenius >= g.order()) return rep;

  add("wild-in-inertia", g.is_subgroup_of(d.wild, d.inertia));
  add("inertia-normal", g.is_normal(d.inertia));
  add("wild-normal", g.is_normal(d.wild));
  const long wild_order = static_cast<long>(d.wild.size());
  add("wild-inertia-order", is_prime(d.p) && p_part(wild_order, d.p) == wild_order,
      "|P| = " + std::to_string(wild_order));
  const long tame = static_cast<long>(d.inertia.size() / std::max<std::size_t>(d.wild.size(), 1));
  add("tame-order-prime-to-p", is_prime(d.p) && tame % d.p != 0, "[I:P] = " + std::to_string(tame));
  if (!rep.ok()) return rep;

  // gamma / inertia cyclic, generated by Frobenius
  const auto reps_i = g.coset_reps(d.inertia);
  std::set<std::size_t> frob_cosets;
  std::size_t x = g.identity();
  for (std::size_t k = 0; k < reps_i.size(); ++k) {
    frob_cosets.insert(g.coset_of(reps_i, d.inertia, x));
    x = g.mul(x, d.frobenius);
  }
  add("frobenius-generates-unramified-quotient", frob_cosets.size() == reps_i.size());

  // inertia / wild cyclic
  const QuotientGroup iq = quotient_group(g.restrict_to(d.inertia),
                                          g.restrict_to(d.inertia).subgroup([&] {
                                            std::vector<std::size_t> pos;
                                            for (std::size_t w : d.wild.elements()) pos.push_back(d.inertia.position(w));
                                            return pos;
                                          }()));
  add("tame-quotient-cyclic", iq.group.is_cyclic());

  // Frobenius conjugation acts on inertia / wild as the q-th power map
  bool q_power = true;
  for (std::size_t t : d.inertia.elements()) {
    const std::size_t lhs = g.conjugate(d.frobenius, t);
    const std::size_t rhs = g.power(t, d.q);
    if (!d.wild.contains(g.mul(g.inv(rhs), lhs))) {
      q_power = false;
      break;
    }
  }
  add("tame-frobenius-relation", q_power);
  return rep;
}

} // namespace torilang
