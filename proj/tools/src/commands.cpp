#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <sstream>

namespace torilang::cli {

namespace {

constexpr double kArchimedeanTol = 1e-9;
constexpr double kMaxAbsY = 5.0;
constexpr long kDefaultArchimedeanSamples = 100;

Json integer_json(const Integer& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

Json vector_json(const IntVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(integer_json(x));
  return out;
}

Json elements_json(const Subgroup& s) { return s.elements(); }

Json cocycle_json(const Cocycle1& z) {
  Json values = Json::array();
  for (const auto& v : z.values) values.push_back(vector_json(v));
  return {{"domain", elements_json(z.domain)}, {"values", values}};
}

Json complex_json(const std::vector<std::complex<double>>& v) {
  Json out = Json::array();
  for (const auto& c : v) out.push_back({c.real(), c.imag()});
  return out;
}

Json make_case(const std::string& key) { return {{"key", key}}; }

void set_verdict(Json& c, bool pass, Json counterexample = nullptr) {
  c["verdict"] = pass ? "pass" : "fail";
  if (!pass) c["counterexample"] = counterexample.is_null() ? Json::object() : std::move(counterexample);
}

std::string subgroup_key(const Subgroup& s) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s.elements()[i];
  os << "]";
  return os.str();
}

std::string group_label(const FiniteGroup& g) {
  return g.name().empty() ? "order" + std::to_string(g.order()) : g.name();
}

long characteristic_of(long q) {
  for (long p = 2; p * p <= q; ++p)
    if (q % p == 0) return p;
  return q;
}

Json finish(const std::string& task, Json inputs, std::vector<Json> cases) {
  std::stable_sort(cases.begin(), cases.end(),
                   [](const Json& a, const Json& b) { return a["key"].get<std::string>() < b["key"].get<std::string>(); });
  bool pass = true;
  for (const auto& c : cases) pass = pass && c["verdict"] == "pass";
  Json out{{"task", task}, {"inputs", std::move(inputs)}, {"cases", Json(cases)}, {"verdict", pass ? "pass" : "fail"}};
  return out;
}

[[noreturn]] void engine_failure(const std::string& where, const AlgebraError& e) {
  throw InputError(e.violation(), where, e.what());
}

// Checks on one (G, H, M) triple; returns the first failure as a counterexample.
Json corestriction_failure(const GammaModule& m, const Subgroup& h, std::size_t& classes) {
  const FiniteGroup& g = m.acting_group();
  const Subgroup whole = g.whole();
  const Integer index = Integer(static_cast<unsigned long>(g.order() / h.size()));
  const H1Result on_g(m, whole), on_h(m, h);
  for (const auto& c : on_g.all_classes()) {
    ++classes;
    const Cocycle1 z = on_g.cocycle(c);
    const Cocycle1 lhs = corestrict_cocycle(m, restrict_cocycle(z, h), whole);
    const Cocycle1 rhs = scale(m, z, index);
    if (!on_g.same_class(lhs, rhs))
      return {{"check", "cor-res-index"}, {"class", vector_json(c)}, {"cocycle", cocycle_json(z)},
              {"lhs", cocycle_json(lhs)}, {"rhs", cocycle_json(rhs)}};
  }
  if (!g.is_normal(h)) return nullptr;
  for (const auto& c : on_h.all_classes()) {
    ++classes;
    const Cocycle1 z = on_h.cocycle(c);
    const Cocycle1 a = corestrict_cocycle(m, z, whole, CorFormula::DoubleCoset);
    const Cocycle1 b = corestrict_cocycle(m, z, whole, CorFormula::Normal);
    if (!on_g.same_class(a, b))
      return {{"check", "formulas-agree"}, {"class", vector_json(c)}, {"cocycle", cocycle_json(z)},
              {"lhs", cocycle_json(a)}, {"rhs", cocycle_json(b)}};
    const Cocycle1 back = restrict_cocycle(a, h);
    Cocycle1 sum = zero_cocycle(m, h);
    for (std::size_t r : g.coset_reps(h)) sum = add(m, sum, conjugate_cocycle(m, z, r));
    if (!on_h.same_class(back, sum))
      return {{"check", "res-cor-conjugates"}, {"class", vector_json(c)}, {"cocycle", cocycle_json(z)},
              {"lhs", cocycle_json(back)}, {"rhs", cocycle_json(sum)}};
  }
  return nullptr;
}

Json prop18_failures_json(const Prop18Report& r) {
  Json out = Json::array();
  for (const auto& f : r.failures)
    out.push_back({{"class", vector_json(f.class_coords)}, {"cocycle", cocycle_json(f.cocycle)},
                   {"lhs", cocycle_json(f.lhs)}, {"rhs", cocycle_json(f.rhs)}});
  return out;
}

Json pieces_json(const DepthZeroReport& r, Json& failing) {
  Json pieces = Json::array();
  failing = Json::array();
  for (const auto& p : r.pieces) {
    Json j{{"name", p.name}, {"character_side", group_json(p.character_side)},
           {"parameter_side", group_json(p.parameter_side)}, {"compared", p.compared}, {"pass", p.pass}};
    if (!p.pass) failing.push_back(j);
    pieces.push_back(std::move(j));
  }
  return pieces;
}

Json depth_zero_case(const std::string& key, const TorusDatum& t) {
  Json c = make_case(key);
  Json failing;
  const DepthZeroReport r = verify_depth_zero_match(t);
  c["pieces"] = pieces_json(r, failing);
  set_verdict(c, r.ok(), Json{{"pieces", failing}});
  return c;
}

Json wur_case(const std::string& key, const TorusDatum& t) {
  Json c = make_case(key);
  c["kottwitz_quotient"] = group_json(kottwitz_quotient(t));
  try {
    const WeaklyUnramified w = weakly_unramified_chars(t);
    c["way1"] = group_json(w.way1);
    c["way2"] = group_json(w.way2);
    c["group"] = group_json(w.group);
    set_verdict(c, true);
  } catch (const AlgebraError& e) {
    if (e.violation() != "convention-mismatch") throw;
    set_verdict(c, false, Json{{"violation", e.violation()}, {"detail", e.what()}});
  }
  return c;
}

Json center_case(const std::string& key, const RootDatumGamma& r, const LocalGaloisDatum& d,
                 std::optional<long> tame_level, std::optional<long> frob_order) {
  Json c = make_case(key);
  const CenterClasses cc = depth_zero_center_classes(r, d, tame_level, frob_order);
  c["pi_1"] = group_json(center_dual(r).underlying());
  c["unramified"] = group_json(cc.unramified);
  c["tame"] = group_json(cc.tame);
  if (cc.total) c["total"] = group_json(*cc.total);
  if (cc.model) c["model"] = {{"tame_level", cc.model->tame_level}, {"frob_order", cc.model->frob_order}};
  c["group"] = group_json(cc.group);
  c["orders_consistent"] = cc.orders_consistent;
  set_verdict(c, true);
  return c;
}

std::vector<std::vector<std::complex<double>>> random_samples(std::size_t rank, std::size_t count, std::mt19937_64& rng) {
  const double side = kMaxAbsY / std::sqrt(2.0);
  std::uniform_real_distribution<double> coord(-side, side);
  std::vector<std::vector<std::complex<double>>> ys(count, std::vector<std::complex<double>>(rank));
  for (auto& y : ys)
    for (auto& v : y) v = {coord(rng), coord(rng)};
  return ys;
}

Json archimedean_case(const std::string& key, const ArchimedeanCharDatum& a,
                      const std::vector<std::vector<std::complex<double>>>& ys) {
  Json c = make_case(key);
  const ArchimedeanReport r = archimedean_norm_check(a, ys, kArchimedeanTol);
  c["samples"] = r.samples;
  c["max_relative_deviation"] = r.max_relative_deviation;
  c["tolerance"] = kArchimedeanTol;
  Json ce;
  if (!r.pass) {
    for (const auto& y : ys) {
      const ArchimedeanReport one = archimedean_norm_check(a, {y}, kArchimedeanTol);
      if (one.pass) continue;
      ce = {{"sigma", Json::array()}, {"mu", complex_json(a.mu)}, {"nu", complex_json(a.nu)}, {"h", complex_json(a.h)},
            {"y", complex_json(y)}, {"relative_deviation", one.max_relative_deviation}};
      for (std::size_t i = 0; i < a.sigma.rows(); ++i) ce["sigma"].push_back(vector_json(a.sigma.row(i)));
      break;
    }
  }
  set_verdict(c, r.pass, ce);
  return c;
}

// Tori named by the document: an explicit (local_datum, module) pair or a catalog name.
std::vector<std::pair<std::string, TorusDatum>> document_tori(const InputDocument& doc, const Options& opt) {
  std::vector<std::pair<std::string, TorusDatum>> out;
  if (doc.module || doc.local_datum) {
    TorusDatum t{doc.require_local_datum(), doc.require_module()};
    try {
      t.check();
    } catch (const AlgebraError& e) {
      engine_failure("/module", e);
    }
    out.emplace_back("torus", t);
    return out;
  }
  const auto name = doc.string_param("torus");
  if (!name) throw InputError("missing-section", "/module", "give local_datum and module, or params.torus");
  std::vector<long> qs = opt.q;
  if (!opt.q_given) {
    const auto q = doc.int_param("q");
    qs = {q.value_or(3)};
  }
  for (long q : qs) {
    try {
      out.emplace_back(*name + "/q=" + std::to_string(q), torus_by_name(*name, characteristic_of(q), q).torus);
    } catch (const AlgebraError& e) {
      engine_failure("/params/torus", e);
    }
  }
  return out;
}

Json cmd_h1(const InputDocument& doc) {
  const GammaModule& m = doc.require_module();
  const Subgroup s = doc.params.contains("subgroup") ? doc.subgroup_param("subgroup") : doc.require_group().whole();
  const H1Result h(m, s);
  Json c = make_case("h1");
  c["subgroup"] = elements_json(s);
  c["module_orders"] = vector_json(m.orders());
  c["group"] = group_json(h.group());
  c["generators"] = h.generators();
  Json reps = Json::array();
  for (const auto& z : h.representatives()) reps.push_back(cocycle_json(z));
  c["representatives"] = reps;
  bool pass = true;
  for (const auto& z : h.representatives()) pass = pass && is_cocycle(m, z);
  const FiniteGroup sg = m.acting_group().restrict_to(s);
  if (sg.is_cyclic() && s.size() > 1) {
    std::size_t gen = 0;
    while (sg.element_order(gen) != sg.order()) ++gen;
    const FinAbGroup closed = tate_h1_cyclic(m, s, s.elements()[gen]);
    c["closed_form"] = group_json(closed);
    pass = pass && closed == h.group();
  }
  set_verdict(c, pass, Json{{"representatives", reps}});
  return finish("h1", doc.source, {c});
}

Json cmd_cor_check(const InputDocument& doc) {
  const FiniteGroup& g = doc.require_group();
  const GammaModule& m = doc.require_module();
  if (!m.is_finite()) throw InputError("infinite-module", "/module", "cor-check enumerates classes of a finite module");
  std::vector<Subgroup> hs;
  if (doc.params.contains("subgroup")) hs.push_back(doc.subgroup_param("subgroup"));
  else hs = g.all_subgroups();
  std::vector<Json> cases;
  for (const auto& h : hs) {
    Json c = make_case("H=" + subgroup_key(h));
    std::size_t classes = 0;
    const Json failure = corestriction_failure(m, h, classes);
    c["index"] = g.order() / h.size();
    c["normal"] = g.is_normal(h);
    c["h1_G"] = group_json(H1Result(m, g.whole()).group());
    c["h1_H"] = group_json(H1Result(m, h).group());
    c["classes_checked"] = classes;
    set_verdict(c, failure.is_null(), failure);
    cases.push_back(std::move(c));
  }
  return finish("cor-check", doc.source, std::move(cases));
}

Json cmd_prop18(const InputDocument& doc) {
  const GammaModule& m = doc.require_module();
  const Subgroup h_e = doc.subgroup_param("h_e");
  const Subgroup h_k = doc.subgroup_param("h_k");
  const Prop18Report r = verify_prop18(m, h_e, h_k);
  Json c = make_case("chain");
  c["h_e"] = elements_json(h_e);
  c["h_k"] = elements_json(h_k);
  c["h1_k"] = group_json(r.h1_k);
  c["classes_checked"] = r.classes_checked;
  set_verdict(c, r.failures.empty(), Json{{"failures", prop18_failures_json(r)}});
  return finish("prop18-check", doc.source, {c});
}

Json cmd_center(const InputDocument& doc) {
  return finish("center", doc.source,
                {center_case("center", doc.require_root_datum(), doc.require_local_datum(), doc.int_param("tame_level"),
                             doc.int_param("frob_order"))});
}

Json cmd_arch(const InputDocument& doc, const Options& opt) {
  const ArchimedeanCharDatum& a = doc.require_archimedean();
  auto ys = doc.archimedean_samples;
  if (ys.empty()) {
    const long n = doc.int_param("samples").value_or(kDefaultArchimedeanSamples);
    if (n < 0) throw InputError("negative-count", "/params/samples", "");
    std::mt19937_64 rng(opt.seed);
    ys = random_samples(a.rank, static_cast<std::size_t>(n), rng);
  }
  return finish("arch-check", doc.source, {archimedean_case("archimedean", a, ys)});
}

} // namespace

Json group_json(const FinAbGroup& g) {
  return {{"rank", g.free_rank}, {"divisors", vector_json(g.torsion)}};
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {"h1", "cor-check", "prop18-check", "depth-zero",
                                                 "wur", "center",    "arch-check",   "sweep"};
  return names;
}

Json run_command(const std::string& cmd, const InputDocument& doc, const Options& opt) {
  try {
    if (cmd == "h1") return cmd_h1(doc);
    if (cmd == "cor-check") return cmd_cor_check(doc);
    if (cmd == "prop18-check") return cmd_prop18(doc);
    if (cmd == "center") return cmd_center(doc);
    if (cmd == "arch-check") return cmd_arch(doc, opt);
    if (cmd == "depth-zero" || cmd == "wur") {
      std::vector<Json> cases;
      for (const auto& [key, t] : document_tori(doc, opt))
        cases.push_back(cmd == "wur" ? wur_case(key, t) : depth_zero_case(key, t));
      return finish(cmd, doc.source, std::move(cases));
    }
  } catch (const AlgebraError& e) {
    engine_failure("/" + cmd, e);
  }
  throw InputError("unknown-command", "", cmd);
}

Json sweep(const Options& opt) {
  if (opt.max_order > kMaxSweepOrder)
    throw InputError("resource-cap", "--max-order",
                     std::to_string(opt.max_order) + " exceeds the cap of " + std::to_string(kMaxSweepOrder));
  for (long q : opt.q)
    if (q < 2 || !is_prime(characteristic_of(q)) || p_part(q, characteristic_of(q)) != q)
      throw InputError("residue-cardinality", "--q", std::to_string(q) + " is not a prime power");

  std::vector<Json> cases;
  auto guarded = [&](const std::string& key, const std::function<Json()>& run) {
    try {
      cases.push_back(run());
    } catch (const AlgebraError& e) {
      Json c = make_case(key);
      set_verdict(c, false, Json{{"violation", e.violation()}, {"detail", e.what()}});
      cases.push_back(std::move(c));
    }
  };

  for (const auto& g : catalog::groups_up_to(opt.max_order)) {
    const std::string label = group_label(g);
    const auto modules = module_catalog(g);
    guarded("shapiro/" + label, [&] {
      Json c = make_case("shapiro/" + label);
      const H1Result h(permutation_module(g, g.trivial()), g.whole());
      c["group"] = group_json(h.group());
      Json reps = Json::array();
      for (const auto& z : h.representatives()) reps.push_back(cocycle_json(z));
      set_verdict(c, h.group().is_trivial(), Json{{"representatives", reps}});
      return c;
    });
    if (g.is_cyclic() && g.order() > 1) {
      guarded("closed-form/" + label, [&] {
        Json c = make_case("closed-form/" + label);
        std::size_t gen = 0;
        while (g.element_order(gen) != g.order()) ++gen;
        Json ce;
        for (const auto& nm : modules) {
          const H1Result h(nm.module, g.whole());
          const FinAbGroup closed = tate_h1_cyclic(nm.module, g.whole(), gen);
          if (closed == h.group() || !ce.is_null()) continue;
          Json reps = Json::array();
          for (const auto& z : h.representatives()) reps.push_back(cocycle_json(z));
          ce = {{"module", nm.name}, {"engine", group_json(h.group())}, {"closed_form", group_json(closed)},
                {"representatives", reps}};
        }
        c["modules"] = modules.size();
        set_verdict(c, ce.is_null(), ce);
        return c;
      });
    }
    guarded("cor/" + label, [&] {
      Json c = make_case("cor/" + label);
      std::size_t pairs = 0, classes = 0;
      Json ce;
      for (const auto& h : g.all_subgroups())
        for (const auto& nm : modules) {
          if (!nm.module.is_finite()) continue;
          ++pairs;
          Json f = corestriction_failure(nm.module, h, classes);
          if (!f.is_null() && ce.is_null()) {
            f["module"] = nm.name;
            f["subgroup"] = elements_json(h);
            ce = std::move(f);
          }
        }
      c["pairs"] = pairs;
      c["classes_checked"] = classes;
      set_verdict(c, ce.is_null(), ce);
      return c;
    });
    guarded("prop18/" + label, [&] {
      Json c = make_case("prop18/" + label);
      std::size_t chains = 0, classes = 0;
      Json ce;
      const auto subgroups = g.all_subgroups();
      for (const auto& h_k : subgroups) {
        if (!g.is_normal(h_k)) continue;
        for (const auto& h_e : subgroups) {
          if (!g.is_subgroup_of(h_k, h_e)) continue;
          ++chains;
          for (const auto& nm : modules) {
            const Prop18Report r = verify_prop18(nm.module, h_e, h_k);
            classes += r.classes_checked;
            if (!r.failures.empty() && ce.is_null())
              ce = {{"module", nm.name}, {"h_e", elements_json(h_e)}, {"h_k", elements_json(h_k)},
                    {"failures", prop18_failures_json(r)}};
          }
        }
      }
      c["chains"] = chains;
      c["classes_checked"] = classes;
      set_verdict(c, ce.is_null(), ce);
      return c;
    });
  }

  for (long q : opt.q) {
    const long p = characteristic_of(q);
    const std::string tag = "q=" + std::to_string(q) + "/";
    for (const auto& t : torus_catalog(p, q)) {
      guarded("depth-zero/" + tag + t.name, [&] { return depth_zero_case("depth-zero/" + tag + t.name, t.torus); });
      guarded("wur/" + tag + t.name, [&] { return wur_case("wur/" + tag + t.name, t.torus); });
    }
    const LocalGaloisDatum split = LocalGaloisDatum::unramified(1, p, q);
    for (const char* name : {"SL2", "PGL2", "GL2", "SL3", "PGL3"})
      guarded("center/" + tag + name, [&] {
        return center_case("center/" + tag + name, split_root_datum(name, split.gamma), split, std::nullopt, std::nullopt);
      });
    const LocalGaloisDatum quadratic = LocalGaloisDatum::unramified(2, p, q);
    guarded("center/" + tag + "PU3", [&] {
      return center_case("center/" + tag + "PU3", unitary_pgl3(quadratic.gamma, quadratic.gamma.trivial()), quadratic,
                         std::nullopt, std::nullopt);
    });
  }

  if (opt.samples > 0) {
    std::mt19937_64 rng(opt.seed);
    std::vector<IntMatrix> involutions;
    for (const auto& nm : finite_order_matrices(3))
      if (nm.matrix * nm.matrix == IntMatrix::identity(nm.matrix.rows())) involutions.push_back(nm.matrix);
    Json c = make_case("archimedean/seed=" + std::to_string(opt.seed));
    double worst = 0.0;
    Json ce;
    for (std::size_t i = 0; i < opt.samples; ++i) {
      const IntMatrix& sigma = involutions[rng() % involutions.size()];
      const ArchimedeanCharDatum a = random_archimedean_datum(sigma, rng);
      const Json one = archimedean_case("sample", a, random_samples(a.rank, 1, rng));
      worst = std::max(worst, one["max_relative_deviation"].get<double>());
      if (one["verdict"] != "pass" && ce.is_null()) ce = one["counterexample"];
    }
    c["samples"] = opt.samples;
    c["max_relative_deviation"] = worst;
    c["tolerance"] = kArchimedeanTol;
    set_verdict(c, ce.is_null(), ce);
    cases.push_back(std::move(c));
  }

  Json inputs{{"max_order", opt.max_order}, {"q", opt.q}, {"seed", opt.seed}, {"samples", opt.samples}};
  Json out = finish("sweep", std::move(inputs), std::move(cases));
  out["vacuous"] = out["cases"].empty();
  return out;
}

Json error_report(const std::string& cmd, const std::vector<InputIssue>& issues) {
  Json errors = Json::array();
  for (const auto& i : issues) errors.push_back({{"violation", i.violation}, {"location", i.location}, {"detail", i.detail}});
  return {{"task", cmd}, {"cases", Json::array()}, {"verdict", "invalid"}, {"errors", errors}};
}

bool report_passed(const Json& report) { return report.value("verdict", "") == "pass"; }

namespace {

std::string group_text(const Json& g) {
  std::ostringstream os;
  const std::size_t rank = g["rank"].get<std::size_t>();
  bool first = true;
  for (std::size_t i = 0; i < rank; ++i) {
    os << (first ? "" : " + ") << "Z";
    first = false;
  }
  for (const auto& d : g["divisors"]) {
    os << (first ? "" : " + ") << "Z/" << (d.is_string() ? d.get<std::string>() : d.dump());
    first = false;
  }
  return first ? "0" : os.str();
}

bool is_group(const Json& v) { return v.is_object() && v.size() == 2 && v.contains("rank") && v.contains("divisors"); }

} // namespace

std::string render_pretty(const Json& report) {
  std::ostringstream os;
  const std::string verdict = report.value("verdict", "");
  std::string upper = verdict;
  std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char ch) { return std::toupper(ch); });
  os << report.value("task", "") << ": " << upper;
  if (report.value("vacuous", false)) os << " (vacuous: no cases)";
  os << "\n";
  if (report.contains("errors"))
    for (const auto& e : report["errors"])
      os << "  error " << e["violation"].get<std::string>() << " at " << e["location"].get<std::string>() << ": "
         << e["detail"].get<std::string>() << "\n";
  for (const auto& c : report["cases"]) {
    os << (c["verdict"] == "pass" ? "  PASS " : "  FAIL ") << c["key"].get<std::string>();
    for (const auto& [k, v] : c.items()) {
      if (k == "key" || k == "verdict" || k == "counterexample" || k == "representatives") continue;
      if (is_group(v)) os << "  " << k << "=" << group_text(v);
      else if (v.is_primitive()) os << "  " << k << "=" << v.dump();
    }
    if (c.contains("pieces"))
      for (const auto& p : c["pieces"])
        os << "\n      " << p["name"].get<std::string>() << ": " << group_text(p["character_side"]) << " vs "
           << group_text(p["parameter_side"]) << (p["compared"].get<bool>() ? "" : " (not compared)");
    os << "\n";
    if (c.contains("counterexample")) os << "    counterexample: " << c["counterexample"].dump(2) << "\n";
  }
  if (report.contains("timing_ms")) os << "time: " << report["timing_ms"].dump() << " ms\n";
  return os.str();
}

} // namespace torilang::cli
