#pragma once

#include "oracles/oracles.hpp"
#include "torilang/langlands.hpp"

#include <vector>

namespace testing_support {

inline oracle::Table to_table(const torilang::FiniteGroup& g) {
  oracle::Table t;
  t.identity = static_cast<int>(g.identity());
  t.mul.assign(g.order(), std::vector<int>(g.order()));
  for (std::size_t a = 0; a < g.order(); ++a)
    for (std::size_t b = 0; b < g.order(); ++b) t.mul[a][b] = static_cast<int>(g.mul(a, b));
  return t;
}

inline oracle::Mat to_mat(const torilang::IntMatrix& a) {
  oracle::Mat m(a.rows(), std::vector<long>(a.cols()));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m[i][j] = a(i, j).get_si();
  return m;
}

inline oracle::FiniteModule to_oracle(const torilang::GammaModule& m) {
  oracle::FiniteModule f;
  for (const auto& o : m.orders()) f.orders.push_back(o.get_si());
  for (const auto& a : m.actions()) f.actions.push_back(to_mat(a));
  return f;
}

inline std::vector<int> to_ints(const torilang::Subgroup& s) {
  return {s.elements().begin(), s.elements().end()};
}

inline torilang::FinAbGroup from_invariants(const std::vector<long>& d) {
  torilang::IntVector v;
  for (long x : d) v.push_back(x);
  return torilang::FinAbGroup::from_cyclic_orders(v);
}

inline torilang::FinAbGroup from_invariants(const std::vector<long long>& d) {
  torilang::IntVector v;
  for (long long x : d) v.push_back(static_cast<long>(x));
  return torilang::FinAbGroup::from_cyclic_orders(v);
}

} // namespace testing_support
