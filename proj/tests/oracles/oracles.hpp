#pragma once

// Brute-force reference computations. Nothing here calls into torilang; inputs
// are plain tables and small integer matrices.

#include <algorithm>
#include <cstdint>
#include <vector>

namespace oracle {

using Vec = std::vector<long>;
using Mat = std::vector<std::vector<long>>;

/// Elementary divisors of an integer matrix from determinantal divisors
/// (gcd of k x k minors); zeros for the rank deficit, length min(rows, cols).
std::vector<long long> elementary_divisors(const Mat& a);

/// Invariant factors d1 | d2 | ... (all >= 2) of a finite abelian group of
/// order `order`, given n -> |G[n]|.
template <class KilledBy>
std::vector<long> invariants_from_torsion(long order, KilledBy killed_by);

/// Finite multiplication table with explicit identity.
struct Table {
  std::vector<std::vector<int>> mul;
  int identity = 0;

  int size() const { return static_cast<int>(mul.size()); }
  int inv(int a) const;
};

/// Finite module: coordinates mod `orders` (each >= 1), actions[g] columns are images of generators.
struct FiniteModule {
  Vec orders;
  std::vector<Mat> actions;

  long size() const;
  Vec decode(long code) const;
  long encode(const Vec& v) const;
  Vec act(int g, const Vec& v) const;
};

/// Hom(C, Q/Z) for finite C in scaled coordinates u_i = o_i f(e_i).
FiniteModule character_module(const FiniteModule& c, const Table& t);

/// H^1(S, M) by enumerating all cocycles on S and all coboundaries.
std::vector<long> h1_bruteforce(const Table& t, const std::vector<int>& s, const FiniteModule& m);

/// Number of 1-cocycles on S (for sanity checks).
long cocycle_count(const Table& t, const std::vector<int>& s, const FiniteModule& m);

/// Invariant factors of { v in (Z/N)^r : (q sigma - 1) v = 0 } for N = q^k - 1,
/// the F_q-points of the torus split by F_{q^k} with Frobenius acting by sigma.
std::vector<long> lang_kernel(const Mat& sigma, long q, long k);

/// Elements x of F_{p^2} with x^(p+1) = 1, enumerated in F_p[sqrt(d)] for a non-square d.
long norm_one_count(long p);
/// Orders of all norm-one elements (to test cyclicity).
std::vector<long> norm_one_orders(long p);

/// Left cosets gH, as sorted element lists.
std::vector<std::vector<int>> left_cosets(const Table& t, const std::vector<int>& h);

/// Saturated kernel basis of an integer matrix (as columns of the result, cols x k).
Mat integer_kernel(const Mat& a);

/// ker N / im(sigma - 1) for Z/n acting through sigma on Z^r (all orders 0) or on a
/// finite module (all orders positive); invariant factors, 0 for a free summand.
std::vector<long> cyclic_norm_quotient(const Vec& orders, const Mat& sigma, int n);

/// Order of a small integer matrix of finite order (0 if it exceeds `bound`).
int matrix_order(const Mat& a, int bound = 64);

template <class KilledBy>
std::vector<long> invariants_from_torsion(long order, KilledBy killed_by) {
  // Per prime p: multiplicity of cyclic factors of order >= p^j is log_p |G[p^j]| - log_p |G[p^{j-1}]|.
  std::vector<std::vector<long>> per_prime;  // factor orders per prime, descending
  long rest = order;
  for (long p = 2; rest > 1; ++p) {
    if (rest % p != 0) continue;
    long pa = 1;
    while (rest % p == 0) {
      rest /= p;
      pa *= p;
    }
    std::vector<int> ge;  // ge[j] = number of factors of order >= p^(j+1)
    long prev = 1;
    for (long pj = p; pj <= pa; pj *= p) {
      const long cnt = killed_by(pj);
      long ratio = cnt / prev, e = 0;
      while (ratio > 1) {
        ratio /= p;
        ++e;
      }
      ge.push_back(static_cast<int>(e));
      prev = cnt;
    }
    std::vector<long> factors;
    for (std::size_t j = 0; j < ge.size(); ++j) {
      const int next = j + 1 < ge.size() ? ge[j + 1] : 0;
      long pj = 1;
      for (std::size_t i = 0; i <= j; ++i) pj *= p;
      for (int c = 0; c < ge[j] - next; ++c) factors.push_back(pj);
    }
    std::sort(factors.rbegin(), factors.rend());
    per_prime.push_back(factors);
  }
  std::size_t len = 0;
  for (const auto& f : per_prime) len = std::max(len, f.size());
  std::vector<long> out(len, 1);
  for (const auto& f : per_prime)
    for (std::size_t i = 0; i < f.size(); ++i) out[len - 1 - i] *= f[i];
  return out;
}

} // namespace oracle
