#include "input.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace torilang::cli {

namespace {

std::string summarize(const std::vector<InputIssue>& issues) {
  std::ostringstream os;
  for (std::size_t i = 0; i < issues.size(); ++i) {
    if (i) os << "; ";
    os << issues[i].violation << " at " << (issues[i].location.empty() ? "/" : issues[i].location);
    if (!issues[i].detail.empty()) os << " (" << issues[i].detail << ")";
  }
  return os.str();
}

[[noreturn]] void fail(const std::string& violation, const std::string& where, const std::string& detail) {
  throw InputError(violation, where, detail);
}

const Json& field(const Json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) fail("missing-field", where + "/" + key, "required");
  return obj.at(key);
}

long as_long(const Json& v, const std::string& where) {
  if (!v.is_number_integer()) fail("not-an-integer", where, v.dump());
  return v.get<long>();
}

std::size_t as_index(const Json& v, const std::string& where, std::size_t bound) {
  const long x = as_long(v, where);
  if (x < 0 || static_cast<std::size_t>(x) >= bound)
    fail("index-range", where, std::to_string(x) + " not in [0, " + std::to_string(bound) + ")");
  return static_cast<std::size_t>(x);
}

IntMatrix as_matrix(const Json& v, const std::string& where) {
  if (!v.is_array()) fail("not-a-matrix", where, "expected an array of rows");
  std::vector<IntVector> rows;
  std::size_t cols = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::string w = where + "/" + std::to_string(i);
    if (!v[i].is_array()) fail("not-a-matrix", w, "row is not an array");
    if (i == 0) cols = v[i].size();
    if (v[i].size() != cols) fail("ragged-matrix", w, "rows differ in length");
    IntVector row;
    for (std::size_t j = 0; j < v[i].size(); ++j) row.push_back(Integer(as_long(v[i][j], w + "/" + std::to_string(j))));
    rows.push_back(row);
  }
  return IntMatrix::from_rows(cols, rows);
}

IntVector as_vector(const Json& v, const std::string& where) {
  if (!v.is_array()) fail("not-a-vector", where, "expected an array of integers");
  IntVector out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(Integer(as_long(v[i], where + "/" + std::to_string(i))));
  return out;
}

std::complex<double> as_complex(const Json& v, const std::string& where) {
  if (v.is_number()) return {v.get<double>(), 0.0};
  if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number())
    return {v[0].get<double>(), v[1].get<double>()};
  fail("not-a-complex-number", where, "expected a number or [re, im]");
}

std::vector<std::complex<double>> as_complex_vector(const Json& v, const std::string& where) {
  if (!v.is_array()) fail("not-a-vector", where, "expected an array");
  std::vector<std::complex<double>> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(as_complex(v[i], where + "/" + std::to_string(i)));
  return out;
}

void only_keys(const Json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) fail("not-an-object", where, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    (void)value;
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
      fail("unknown-field", where + "/" + key, "not part of the schema");
  }
}

FiniteGroup parse_group(const Json& g) {
  const std::string where = "/group";
  only_keys(g, where, {"catalog", "order", "table", "identity", "name"});
  if (g.contains("catalog")) {
    if (!g["catalog"].is_string()) fail("not-a-string", where + "/catalog", "");
    try {
      return catalog::by_name(g["catalog"].get<std::string>());
    } catch (const AlgebraError& e) {
      fail(e.violation(), where + "/catalog", e.what());
    }
  }
  const long order = as_long(field(g, "order", where), where + "/order");
  const Json& table = field(g, "table", where);
  if (order < 1) fail("empty-group", where + "/order", "order must be positive");
  if (!table.is_array() || table.size() != static_cast<std::size_t>(order))
    fail("table-shape", where + "/table", "expected " + std::to_string(order) + " rows");
  std::vector<std::vector<std::size_t>> rows;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const std::string w = where + "/table/" + std::to_string(i);
    if (!table[i].is_array() || table[i].size() != table.size())
      fail("table-shape", w, "expected " + std::to_string(order) + " entries");
    std::vector<std::size_t> row;
    for (std::size_t j = 0; j < table[i].size(); ++j)
      row.push_back(as_index(table[i][j], w + "/" + std::to_string(j), table.size()));
    rows.push_back(row);
  }
  const std::size_t identity = as_index(field(g, "identity", where), where + "/identity", table.size());
  const std::string name = g.contains("name") && g["name"].is_string() ? g["name"].get<std::string>() : "";
  try {
    return FiniteGroup(rows, identity, name);
  } catch (const AlgebraError& e) {
    fail(e.violation(), where + "/table", e.what());
  }
}

Subgroup resolve_subgroup(const FiniteGroup& g, const std::map<std::string, Subgroup>& named, const Json& ref,
                          const std::string& where) {
  if (ref.is_string()) {
    const std::string name = ref.get<std::string>();
    if (name == "G") return g.whole();
    if (name == "1") return g.trivial();
    const auto it = named.find(name);
    if (it == named.end()) fail("unresolved-name", where, "no subgroup named '" + name + "'");
    return it->second;
  }
  if (!ref.is_array()) fail("not-a-subgroup-reference", where, "expected a name or an element list");
  std::vector<std::size_t> elems;
  for (std::size_t i = 0; i < ref.size(); ++i) elems.push_back(as_index(ref[i], where + "/" + std::to_string(i), g.order()));
  std::sort(elems.begin(), elems.end());
  if (std::adjacent_find(elems.begin(), elems.end()) != elems.end()) fail("duplicate-element", where, "");
  try {
    return g.subgroup(elems);
  } catch (const AlgebraError& e) {
    fail(e.violation(), where, e.what());
  }
}

// Actions for every element from actions on chosen elements, extended along products.
std::vector<IntMatrix> extend_actions(const FiniteGroup& g, const IntVector& orders,
                                      const std::map<std::size_t, IntMatrix>& given, const std::string& where) {
  const std::size_t n = orders.size();
  auto reduce = [&](IntMatrix a) {
    for (std::size_t i = 0; i < n; ++i)
      if (orders[i] > 0)
        for (std::size_t j = 0; j < n; ++j) {
          a(i, j) %= orders[i];
          if (a(i, j) < 0) a(i, j) += orders[i];
        }
    return a;
  };
  std::vector<std::optional<IntMatrix>> acts(g.order());
  acts[g.identity()] = IntMatrix::identity(n);
  std::vector<std::size_t> frontier{g.identity()};
  while (!frontier.empty()) {
    std::vector<std::size_t> next;
    for (std::size_t x : frontier)
      for (const auto& [s, a] : given) {
        const std::size_t y = g.mul(x, s);
        if (acts[y]) continue;
        acts[y] = reduce(*acts[x] * a);
        next.push_back(y);
      }
    frontier = std::move(next);
  }
  std::vector<IntMatrix> out;
  for (std::size_t x = 0; x < g.order(); ++x) {
    if (!acts[x]) fail("not-generating", where, "element " + std::to_string(x) + " is not reached by the given generators");
    out.push_back(*acts[x]);
  }
  return out;
}

GammaModule parse_module(const Json& m, const FiniteGroup& g, const std::string& where) {
  only_keys(m, where, {"rank", "orders", "actions", "generator_actions"});
  IntVector orders;
  if (m.contains("orders")) {
    orders = as_vector(m["orders"], where + "/orders");
    for (std::size_t i = 0; i < orders.size(); ++i)
      if (orders[i] < 0) fail("negative-order", where + "/orders/" + std::to_string(i), "");
  } else {
    const long rank = as_long(field(m, "rank", where), where + "/rank");
    if (rank < 0) fail("negative-rank", where + "/rank", "");
    orders.assign(static_cast<std::size_t>(rank), Integer(0));
  }
  const std::size_t n = orders.size();
  auto check_shape = [&](const IntMatrix& a, const std::string& w) {
    if (a.rows() != n || (a.cols() != n && n > 0)) fail("action-shape", w, "expected " + std::to_string(n) + "x" + std::to_string(n));
  };
  std::vector<IntMatrix> actions;
  if (m.contains("actions")) {
    const Json& list = m["actions"];
    if (!list.is_array() || list.size() != g.order())
      fail("action-count", where + "/actions", "expected one matrix per group element");
    for (std::size_t x = 0; x < list.size(); ++x) {
      const std::string w = where + "/actions/" + std::to_string(x);
      IntMatrix a = n == 0 ? IntMatrix(0, 0) : as_matrix(list[x], w);
      check_shape(a, w);
      actions.push_back(a);
    }
  } else if (m.contains("generator_actions")) {
    const Json& gens = m["generator_actions"];
    if (!gens.is_object()) fail("not-an-object", where + "/generator_actions", "keys are element indices");
    std::map<std::size_t, IntMatrix> given;
    for (const auto& [key, value] : gens.items()) {
      const std::string w = where + "/generator_actions/" + key;
      std::size_t idx = 0;
      try {
        std::size_t used = 0;
        const long v = std::stol(key, &used);
        if (used != key.size() || v < 0 || static_cast<std::size_t>(v) >= g.order()) throw std::out_of_range(key);
        idx = static_cast<std::size_t>(v);
      } catch (const std::exception&) {
        fail("index-range", w, "keys must be element indices");
      }
      IntMatrix a = n == 0 ? IntMatrix(0, 0) : as_matrix(value, w);
      check_shape(a, w);
      given.emplace(idx, a);
    }
    actions = extend_actions(g, orders, given, where + "/generator_actions");
  } else {
    actions.assign(g.order(), IntMatrix::identity(n));
  }
  try {
    return GammaModule::from_cyclic_generators(g, orders, actions);
  } catch (const AlgebraError& e) {
    fail(e.violation(), where, e.what());
  }
}

LocalGaloisDatum parse_local_datum(const Json& d, const FiniteGroup& g, const std::map<std::string, Subgroup>& named) {
  const std::string where = "/local_datum";
  only_keys(d, where, {"inertia", "wild", "frobenius", "p", "q"});
  LocalGaloisDatum out;
  out.gamma = g;
  out.inertia = resolve_subgroup(g, named, field(d, "inertia", where), where + "/inertia");
  out.wild = resolve_subgroup(g, named, field(d, "wild", where), where + "/wild");
  out.frobenius = as_index(field(d, "frobenius", where), where + "/frobenius", g.order());
  out.p = as_long(field(d, "p", where), where + "/p");
  out.q = as_long(field(d, "q", where), where + "/q");
  const DatumReport r = validate_local_datum(out);
  if (!r.ok()) {
    std::vector<InputIssue> issues;
    for (const auto& c : r.checks)
      if (!c.passed) issues.push_back({c.name, where, c.detail});
    throw InputError(issues);
  }
  return out;
}

RootDatumGamma parse_root_datum(const Json& r, const FiniteGroup& g, const std::map<std::string, Subgroup>& named) {
  const std::string where = "/root_datum";
  only_keys(r, where, {"name", "index_two", "characters", "cocharacters", "roots", "coroots", "pairing"});
  try {
    if (r.contains("name")) {
      if (!r["name"].is_string()) fail("not-a-string", where + "/name", "");
      const std::string name = r["name"].get<std::string>();
      if (name == "PU3") return unitary_pgl3(g, resolve_subgroup(g, named, field(r, "index_two", where), where + "/index_two"));
      return split_root_datum(name, g);
    }
    RootDatumGamma out;
    out.x_star = parse_module(field(r, "characters", where), g, where + "/characters");
    out.x_costar = parse_module(field(r, "cocharacters", where), g, where + "/cocharacters");
    const Json& roots = field(r, "roots", where);
    const Json& coroots = field(r, "coroots", where);
    if (!roots.is_array() || !coroots.is_array()) fail("not-a-list", where, "roots and coroots are lists of vectors");
    for (std::size_t i = 0; i < roots.size(); ++i) out.roots.push_back(as_vector(roots[i], where + "/roots/" + std::to_string(i)));
    for (std::size_t i = 0; i < coroots.size(); ++i)
      out.coroots.push_back(as_vector(coroots[i], where + "/coroots/" + std::to_string(i)));
    out.pairing = r.contains("pairing") ? as_matrix(r["pairing"], where + "/pairing") : IntMatrix::identity(out.x_star.dim());
    out.check();
    return out;
  } catch (const AlgebraError& e) {
    fail(e.violation(), where, e.what());
  }
}

void parse_archimedean(const Json& a, InputDocument& doc) {
  const std::string where = "/archimedean";
  only_keys(a, where, {"sigma", "mu", "nu", "h", "samples"});
  ArchimedeanCharDatum out;
  out.sigma = as_matrix(field(a, "sigma", where), where + "/sigma");
  out.rank = out.sigma.rows();
  out.mu = as_complex_vector(field(a, "mu", where), where + "/mu");
  out.nu = as_complex_vector(field(a, "nu", where), where + "/nu");
  out.h = as_complex_vector(field(a, "h", where), where + "/h");
  if (!out.sigma.is_square() || out.mu.size() != out.rank || out.nu.size() != out.rank || out.h.size() != out.rank)
    fail("rank-mismatch", where, "sigma must be square and mu, nu, h of matching length");
  try {
    out.check();
  } catch (const AlgebraError& e) {
    fail(e.violation(), where, e.what());
  }
  if (a.contains("samples")) {
    const Json& s = a["samples"];
    if (!s.is_array()) fail("not-a-list", where + "/samples", "");
    for (std::size_t i = 0; i < s.size(); ++i) {
      const std::string w = where + "/samples/" + std::to_string(i);
      auto y = as_complex_vector(s[i], w);
      if (y.size() != out.rank) fail("rank-mismatch", w, "sample length differs from rank");
      doc.archimedean_samples.push_back(y);
    }
  }
  doc.archimedean = out;
}

} // namespace

InputError::InputError(std::vector<InputIssue> issues)
    : std::runtime_error(summarize(issues)), issues_(std::move(issues)) {}

const FiniteGroup& InputDocument::require_group() const {
  if (!group) fail("missing-section", "/group", "this command needs a group");
  return *group;
}

const LocalGaloisDatum& InputDocument::require_local_datum() const {
  if (!local_datum) fail("missing-section", "/local_datum", "this command needs a local datum");
  return *local_datum;
}

const GammaModule& InputDocument::require_module() const {
  if (!module) fail("missing-section", "/module", "this command needs a module");
  return *module;
}

const RootDatumGamma& InputDocument::require_root_datum() const {
  if (!root_datum) fail("missing-section", "/root_datum", "this command needs a root datum");
  return *root_datum;
}

const ArchimedeanCharDatum& InputDocument::require_archimedean() const {
  if (!archimedean) fail("missing-section", "/archimedean", "this command needs an archimedean datum");
  return *archimedean;
}

Subgroup InputDocument::subgroup_param(const std::string& key) const {
  const FiniteGroup& g = require_group();
  if (!params.contains(key)) fail("missing-field", "/params/" + key, "required by this command");
  return resolve_subgroup(g, subgroups, params[key], "/params/" + key);
}

std::optional<long> InputDocument::int_param(const std::string& key) const {
  if (!params.contains(key)) return std::nullopt;
  return as_long(params[key], "/params/" + key);
}

std::optional<std::string> InputDocument::string_param(const std::string& key) const {
  if (!params.contains(key)) return std::nullopt;
  if (!params[key].is_string()) fail("not-a-string", "/params/" + key, "");
  return params[key].get<std::string>();
}

InputDocument parse_input(const std::string& text) {
  InputDocument doc;
  try {
    doc.source = Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail("malformed-syntax", "", e.what());
  }
  const Json& src = doc.source;
  only_keys(src, "", {"group", "subgroups", "local_datum", "module", "root_datum", "archimedean", "params"});

  std::vector<InputIssue> issues;
  auto guarded = [&](auto&& step) {
    try {
      step();
    } catch (const InputError& e) {
      issues.insert(issues.end(), e.issues().begin(), e.issues().end());
    }
  };
  // Sections that depend on the group are skipped when the group itself is invalid.
  bool group_ok = false;
  if (src.contains("group")) guarded([&] {
      doc.group = parse_group(src["group"]);
      group_ok = true;
    });
  const bool needs_group = src.contains("subgroups") || src.contains("local_datum") || src.contains("module") ||
                           src.contains("root_datum");
  if (needs_group && !src.contains("group")) issues.push_back({"missing-section", "/group", "required by other sections"});

  bool subgroups_ok = true;
  if (group_ok && src.contains("subgroups")) guarded([&] {
      subgroups_ok = false;
      const Json& s = src["subgroups"];
      if (!s.is_object()) fail("not-an-object", "/subgroups", "names map to element lists");
      for (const auto& [name, elems] : s.items()) {
        if (name == "G" || name == "1") fail("reserved-name", "/subgroups/" + name, "'G' and '1' are built in");
        if (!elems.is_array()) fail("not-a-subgroup-reference", "/subgroups/" + name, "expected an element list");
        doc.subgroups.emplace(name, resolve_subgroup(*doc.group, {}, elems, "/subgroups/" + name));
      }
      subgroups_ok = true;
    });
  if (group_ok && subgroups_ok) {
    if (src.contains("local_datum"))
      guarded([&] { doc.local_datum = parse_local_datum(src["local_datum"], *doc.group, doc.subgroups); });
    if (src.contains("module")) guarded([&] { doc.module = parse_module(src["module"], *doc.group, "/module"); });
    if (src.contains("root_datum"))
      guarded([&] { doc.root_datum = parse_root_datum(src["root_datum"], *doc.group, doc.subgroups); });
  }
  if (src.contains("archimedean")) guarded([&] { parse_archimedean(src["archimedean"], doc); });
  if (src.contains("params")) {
    if (!src["params"].is_object()) issues.push_back({"not-an-object", "/params", "task parameters are an object"});
    else doc.params = src["params"];
  }
  if (!issues.empty()) throw InputError(issues);
  return doc;
}

} // namespace torilang::cli
