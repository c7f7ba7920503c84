// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "support.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

using namespace torilang;
using namespace testing_support;

namespace {

constexpr int kSnfMatrices = 500;
constexpr long kSnfEntryBound = 20;
constexpr std::size_t kSnfMaxDim = 6;
constexpr double kSnfSeconds = 5.0;
constexpr std::size_t kMinCyclicModules = 50;
constexpr std::size_t kMaxGroupOrder = 12;
constexpr long kMaxFiniteModule = 27;
constexpr double kDepthZeroSeconds = 60.0;
constexpr int kArchimedeanData = 1000;
constexpr double kArchimedeanTol = 1e-9;
constexpr double kMaxAbsY = 5.0;
const std::vector<long> kResidueFields = {2, 3, 4, 5, 7};

struct Outcome {
  bool pass = true;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

long char_of(long q) {
  for (long p = 2; p <= q; ++p)
    if (q % p == 0) return p;
  return q;
}

bool divisor_chain(const IntVector& d) {
  for (std::size_t i = 0; i + 1 < d.size(); ++i) {
    if (d[i] < 0) return false;
    if (d[i] == 0 ? d[i + 1] != 0 : d[i + 1] % d[i] != 0) return false;
  }
  return true;
}

Outcome snf_contract() {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<long> entry(-kSnfEntryBound, kSnfEntryBound);
  std::uniform_int_distribution<std::size_t> dim(1, kSnfMaxDim);
  const auto t0 = Clock::now();
  int bad = 0;
  for (int trial = 0; trial < kSnfMatrices; ++trial) {
    IntMatrix a(dim(rng), dim(rng));
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = entry(rng);
    const SmithForm s = snf(a);
    const bool ok = s.u * a * s.v == s.d && abs(determinant(s.u)) == 1 && abs(determinant(s.v)) == 1 &&
                    divisor_chain(s.diagonal());
    IntVector expected;
    for (long long d : oracle::elementary_divisors(to_mat(a))) expected.push_back(Integer(static_cast<long>(d)));
    if (!ok || s.diagonal() != expected) ++bad;
  }
  const double secs = seconds_since(t0);
  std::ostringstream os;
  os << kSnfMatrices << " matrices, " << bad << " bad, " << secs << " s";
  return {bad == 0 && secs < kSnfSeconds, os.str()};
}

Outcome cyclic_closed_forms() {
  std::size_t modules = 0, bad = 0;
  for (std::size_t n = 2; n <= 8; ++n) {
    const FiniteGroup g = catalog::cyclic(n);
    std::size_t gen = 0;
    while (g.element_order(gen) != n) ++gen;
    for (const auto& nm : module_catalog(g, kMaxFiniteModule)) {
      oracle::Vec orders;
      for (const auto& o : nm.module.orders()) orders.push_back(o.get_si());
      const bool mixed = !nm.module.is_free() && !nm.module.is_finite();
      if (mixed) continue;
      ++modules;
      const auto closed = oracle::cyclic_norm_quotient(orders, to_mat(nm.module.action(gen)), static_cast<int>(n));
      if (H1Result(nm.module, g.whole()).group() != from_invariants(closed)) {
        ++bad;
        std::fprintf(stderr, "  cyclic %zu %s\n", n, nm.name.c_str());
      }
    }
  }
  std::ostringstream os;
  os << modules << " modules over Z/2..Z/8, " << bad << " mismatches";
  return {bad == 0 && modules >= kMinCyclicModules, os.str()};
}

Outcome shapiro() {
  std::size_t groups = 0, bad = 0;
  for (const auto& g : catalog::groups_up_to(kMaxGroupOrder)) {
    ++groups;
    if (!H1Result(permutation_module(g, g.trivial()), g.whole()).group().is_trivial()) ++bad;
  }
  std::ostringstream os;
  os << groups << " groups, " << bad << " nonzero";
  return {bad == 0, os.str()};
}

Outcome corestriction() {
  std::size_t pairs = 0, classes = 0, bad_index = 0, bad_formula = 0;
  for (const auto& g : catalog::groups_up_to(kMaxGroupOrder)) {
    const Subgroup whole = g.whole();
    const auto modules = module_catalog(g, kMaxFiniteModule);
    for (const auto& h : g.all_subgroups()) {
      const Integer index = Integer(static_cast<long>(g.order() / h.size()));
      const bool normal = g.is_normal(h);
      for (const auto& nm : modules) {
        if (!nm.module.is_finite()) continue;
        ++pairs;
        const H1Result on_g(nm.module, whole), on_h(nm.module, h);
        for (const auto& c : on_g.all_classes()) {
          ++classes;
          const Cocycle1 z = on_g.cocycle(c);
          const Cocycle1 back = corestrict_cocycle(nm.module, restrict_cocycle(z, h), whole);
          if (!on_g.same_class(back, scale(nm.module, z, index))) ++bad_index;
        }
        if (!normal) continue;
        for (const auto& c : on_h.all_classes()) {
          const Cocycle1 z = on_h.cocycle(c);
          const Cocycle1 a = corestrict_cocycle(nm.module, z, whole, CorFormula::DoubleCoset);
          const Cocycle1 b = corestrict_cocycle(nm.module, z, whole, CorFormula::Normal);
          if (!on_g.same_class(a, b)) ++bad_formula;
        }
      }
    }
  }
  std::ostringstream os;
  os << pairs << " (H <= G, M) pairs, " << classes << " classes, " << bad_index << " index failures, " << bad_formula
     << " formula disagreements";
  return {bad_index == 0 && bad_formula == 0, os.str()};
}

Outcome averaging_identity() {
  std::size_t chains = 0, checked = 0, failures = 0;
  for (const auto& g : catalog::groups_up_to(kMaxGroupOrder)) {
    const auto subgroups = g.all_subgroups();
    const auto modules = module_catalog(g, kMaxFiniteModule);
    for (const auto& h_k : subgroups) {
      if (!g.is_normal(h_k)) continue;
      for (const auto& h_e : subgroups) {
        if (!g.is_subgroup_of(h_k, h_e)) continue;
        ++chains;
        for (const auto& nm : modules) {
          const Prop18Report r = verify_prop18(nm.module, h_e, h_k);
          checked += r.classes_checked;
          failures += r.failures.size();
        }
      }
    }
  }
  std::ostringstream os;
  os << chains << " chains, " << checked << " classes, " << failures << " counterexamples";
  return {failures == 0, os.str()};
}

Outcome depth_zero_match() {
  const auto t0 = Clock::now();
  std::size_t cases = 0, bad = 0;
  for (long q : kResidueFields) {
    const long p = char_of(q);
    for (const auto& nm : finite_order_matrices(3)) {
      ++cases;
      const oracle::Mat sigma = to_mat(nm.matrix);
      const TorusDatum t = unramified_torus(nm.matrix, p, q);
      const FinAbGroup points = special_fiber_points(t);
      const FinAbGroup lang = from_invariants(oracle::lang_kernel(sigma, q, oracle::matrix_order(sigma)));
      const FinAbGroup params = depth_zero_inertial_params(t);
      const bool ok = points == lang && dual_group(points) == params && verify_depth_zero_match(t).ok();
      if (!ok) {
        ++bad;
        std::fprintf(stderr, "  q=%ld %s: %s / %s / %s\n", q, nm.name.c_str(), points.to_string().c_str(),
                     lang.to_string().c_str(), params.to_string().c_str());
      }
    }
  }
  const double secs = seconds_since(t0);
  std::ostringstream os;
  os << cases << " (sigma, q) cases, " << bad << " mismatches, " << secs << " s";
  return {bad == 0 && secs < kDepthZeroSeconds, os.str()};
}

Outcome weakly_unramified() {
  std::size_t tori = 0, bad = 0;
  for (long q : kResidueFields)
    for (const auto& t : torus_catalog(char_of(q), q)) {
      ++tori;
      try {
        const WeaklyUnramified w = weakly_unramified_chars(t.torus);
        if (w.way1 != w.way2) ++bad;
      } catch (const AlgebraError& e) {
        ++bad;
        std::fprintf(stderr, "  %s: %s\n", t.name.c_str(), e.what());
      }
    }
  const bool split = weakly_unramified_chars(torus_by_name("unr:1", 3, 3).torus).group == FinAbGroup::free(1);
  const bool unr_norm_one = weakly_unramified_chars(torus_by_name("unr:-1", 3, 3).torus).group.is_trivial();
  const bool ram_norm_one =
      weakly_unramified_chars(torus_by_name("ram:norm-one", 3, 3).torus).group == FinAbGroup::cyclic(2);
  std::ostringstream os;
  os << tori << " tori, " << bad << " disagreements; split " << (split ? "Z" : "wrong") << ", unramified norm-one "
     << (unr_norm_one ? "0" : "wrong") << ", ramified norm-one " << (ram_norm_one ? "Z/2" : "wrong");
  return {bad == 0 && split && unr_norm_one && ram_norm_one, os.str()};
}

Outcome archimedean() {
  std::mt19937_64 rng(77);
  std::vector<IntMatrix> involutions;
  for (const auto& nm : finite_order_matrices(3))
    if (nm.matrix * nm.matrix == IntMatrix::identity(nm.matrix.rows())) involutions.push_back(nm.matrix);
  const double side = kMaxAbsY / std::sqrt(2.0);
  std::uniform_real_distribution<double> coord(-side, side);
  double worst = 0.0;
  std::size_t bad = 0;
  for (int i = 0; i < kArchimedeanData; ++i) {
    const IntMatrix& sigma = involutions[rng() % involutions.size()];
    const ArchimedeanCharDatum a = random_archimedean_datum(sigma, rng);
    std::vector<std::vector<std::complex<double>>> ys(1, std::vector<std::complex<double>>(a.rank));
    for (auto& c : ys[0]) c = {coord(rng), coord(rng)};
    const ArchimedeanReport r = archimedean_norm_check(a, ys, kArchimedeanTol);
    worst = std::max(worst, r.max_relative_deviation);
    if (!r.pass) ++bad;
  }
  std::ostringstream os;
  os << kArchimedeanData << " data over " << involutions.size() << " involutions, max relative deviation " << worst;
  return {bad == 0 && worst <= kArchimedeanTol, os.str()};
}

Outcome center() {
  const FiniteGroup one = catalog::cyclic(1);
  bool ok = center_dual(split_root_datum("SL2", one)).underlying().is_trivial() &&
            center_dual(split_root_datum("PGL2", one)).underlying() == FinAbGroup::cyclic(2) &&
            center_dual(split_root_datum("GL2", one)).underlying() == FinAbGroup::free(1);
  std::size_t levels = 0, bad = 0;
  const std::vector<std::pair<long, std::vector<std::pair<long, long>>>> plan = {
      {3, {{2, 2}, {2, 4}, {4, 2}, {2, 6}}},
      {5, {{2, 2}, {4, 1}, {4, 2}, {2, 4}, {6, 2}, {3, 2}}},
      {7, {{2, 2}, {3, 1}, {6, 1}, {6, 2}, {3, 2}, {4, 2}, {2, 6}}}};
  for (const auto& [q, pairs] : plan) {
    const LocalGaloisDatum d = LocalGaloisDatum::unramified(1, q, q);
    if (!depth_zero_center_classes(split_root_datum("SL2", d.gamma), d).group.is_trivial()) ok = false;
    for (const auto& [m, k] : pairs) {
      ++levels;
      const CenterClasses c = depth_zero_center_classes(split_root_datum("PGL2", d.gamma), d, m, k);
      if (!c.total) {
        ++bad;
        continue;
      }
      const FiniteGroup& w = c.model->group;
      const oracle::FiniteModule mu2{{2}, std::vector<oracle::Mat>(w.order(), oracle::Mat{{1}})};
      const FinAbGroup enumerated = from_invariants(oracle::h1_bruteforce(to_table(w), to_ints(w.whole()), mu2));
      const TorusH1 cx = h1_torus_coeffs(GammaModule::trivial(w, FinAbGroup::free(1)), w.whole());
      std::size_t even = 0;
      for (const auto& t : cx.group.torsion)
        if (t % 2 == 0) ++even;
      FinAbGroup two_torsion = FinAbGroup::trivial();
      for (std::size_t i = 0; i < even; ++i) two_torsion = two_torsion.direct_sum(FinAbGroup::cyclic(2));
      if (*c.total != enumerated || *c.total != two_torsion) {
        ++bad;
        std::fprintf(stderr, "  q=%ld (%ld, %ld): %s / %s / %s\n", q, m, k, c.total->to_string().c_str(),
                     enumerated.to_string().c_str(), two_torsion.to_string().c_str());
      }
    }
  }
  std::ostringstream os;
  os << "pi_1 examples " << (ok ? "ok" : "wrong") << ", " << levels << " PGL2 levels, " << bad << " mismatches";
  return {ok && bad == 0, os.str()};
}

} // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"smith-normal-form", snf_contract},  {"cyclic-closed-forms", cyclic_closed_forms},
      {"shapiro", shapiro},                 {"corestriction", corestriction},
      {"averaging-identity", averaging_identity}, {"depth-zero-match", depth_zero_match},
      {"weakly-unramified", weakly_unramified},   {"archimedean-norm", archimedean},
      {"center", center}};
  bool all = true;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    const auto t0 = Clock::now();
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    all = all && o.pass;
    std::printf("%s %-20s %s (%.0f ms)\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str(),
                1000.0 * seconds_since(t0));
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
