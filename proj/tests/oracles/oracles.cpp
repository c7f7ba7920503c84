#include "oracles.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace oracle {

namespace {

long long det(const std::vector<std::vector<long long>>& m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  long long s = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c] == 0) continue;
    std::vector<std::vector<long long>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<long long> row;
      for (std::size_t j = 0; j < n; ++j)
        if (j != c) row.push_back(m[r][j]);
      minor.push_back(row);
    }
    const long long term = m[0][c] * det(minor);
    s += (c % 2 == 0) ? term : -term;
  }
  return s;
}

void subsets(std::size_t n, std::size_t k, std::size_t start, std::vector<std::size_t>& cur,
             std::vector<std::vector<std::size_t>>& out) {
  if (cur.size() == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < n; ++i) {
    cur.push_back(i);
    subsets(n, k, i + 1, cur, out);
    cur.pop_back();
  }
}

long mod(long a, long m) { return ((a % m) + m) % m; }

std::vector<long> merge_coprime(const std::vector<std::vector<long>>& parts) {
  std::size_t len = 0;
  for (const auto& p : parts) len = std::max(len, p.size());
  std::vector<long> out(len, 1);
  for (const auto& p : parts)
    for (std::size_t i = 0; i < p.size(); ++i) out[len - p.size() + i] *= p[i];
  return out;
}

std::vector<int> greedy_generators(const Table& t, const std::vector<int>& s) {
  std::vector<int> gens;
  std::set<int> span{t.identity};
  for (int x : s) {
    if (span.count(x)) continue;
    gens.push_back(x);
    std::vector<int> frontier(span.begin(), span.end());
    while (!frontier.empty()) {
      std::vector<int> next;
      for (int a : frontier)
        for (int g : gens) {
          const int b = t.mul[a][g];
          if (span.insert(b).second) next.push_back(b);
        }
      frontier = next;
    }
  }
  return gens;
}

using Table1 = std::vector<long>;  // cocycle values by position in s, encoded

std::vector<Table1> all_cocycles(const Table& t, const std::vector<int>& s, const FiniteModule& m) {
  std::map<int, std::size_t> pos;
  for (std::size_t i = 0; i < s.size(); ++i) pos[s[i]] = i;
  const std::vector<int> gens = greedy_generators(t, s);
  const long size = m.size();
  long total = 1;
  for (std::size_t i = 0; i < gens.size(); ++i) total *= size;

  std::vector<Table1> out;
  for (long code = 0; code < total; ++code) {
    std::vector<Vec> gv;
    long c = code;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      gv.push_back(m.decode(c % size));
      c /= size;
    }
    std::vector<Vec> z(s.size());
    std::vector<bool> set(s.size(), false);
    z[pos[t.identity]] = Vec(m.orders.size(), 0);
    set[pos[t.identity]] = true;
    std::vector<int> queue{t.identity};
    bool ok = true;
    for (std::size_t head = 0; head < queue.size() && ok; ++head) {
      const int x = queue[head];
      for (std::size_t gi = 0; gi < gens.size() && ok; ++gi) {
        const int y = t.mul[x][gens[gi]];
        Vec val = m.act(x, gv[gi]);
        for (std::size_t i = 0; i < val.size(); ++i) val[i] = mod(val[i] + z[pos[x]][i], m.orders[i]);
        const std::size_t py = pos.at(y);
        if (!set[py]) {
          z[py] = val;
          set[py] = true;
          queue.push_back(y);
        } else if (z[py] != val) {
          ok = false;
        }
      }
    }
    if (!ok) continue;
    for (int g : s)
      for (int h : s) {
        Vec rhs = m.act(g, z[pos[h]]);
        for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] = mod(rhs[i] + z[pos[g]][i], m.orders[i]);
        if (rhs != z[pos[t.mul[g][h]]]) ok = false;
      }
    if (!ok) continue;
    Table1 enc;
    for (const auto& v : z) enc.push_back(m.encode(v));
    out.push_back(enc);
  }
  return out;
}

} // namespace

std::vector<long long> elementary_divisors(const Mat& a) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  const std::size_t n = std::min(rows, cols);
  std::vector<long long> dets{1};  // D_0 = 1
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<std::vector<std::size_t>> rs, cs;
    std::vector<std::size_t> cur;
    subsets(rows, k, 0, cur, rs);
    subsets(cols, k, 0, cur, cs);
    long long g = 0;
    for (const auto& r : rs)
      for (const auto& c : cs) {
        std::vector<std::vector<long long>> m(k, std::vector<long long>(k));
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j) m[i][j] = a[r[i]][c[j]];
        g = std::gcd(g, std::llabs(det(m)));
      }
    dets.push_back(g);
  }
  std::vector<long long> out;
  for (std::size_t k = 1; k <= n; ++k) out.push_back(dets[k] == 0 ? 0 : dets[k] / dets[k - 1]);
  return out;
}

int Table::inv(int a) const {
  for (int b = 0; b < size(); ++b)
    if (mul[a][b] == identity) return b;
  throw std::logic_error("no inverse");
}

long FiniteModule::size() const {
  long s = 1;
  for (long o : orders) s *= o;
  return s;
}

Vec FiniteModule::decode(long code) const {
  Vec v(orders.size());
  for (std::size_t i = 0; i < orders.size(); ++i) {
    v[i] = code % orders[i];
    code /= orders[i];
  }
  return v;
}

long FiniteModule::encode(const Vec& v) const {
  long code = 0;
  for (std::size_t i = orders.size(); i-- > 0;) code = code * orders[i] + mod(v[i], orders[i]);
  return code;
}

Vec FiniteModule::act(int g, const Vec& v) const {
  const Mat& a = actions[g];
  Vec out(orders.size(), 0);
  for (std::size_t i = 0; i < orders.size(); ++i) {
    long s = 0;
    for (std::size_t j = 0; j < orders.size(); ++j) s += a[i][j] * v[j];
    out[i] = mod(s, orders[i]);
  }
  return out;
}

FiniteModule character_module(const FiniteModule& c, const Table& t) {
  FiniteModule a;
  a.orders = c.orders;
  const std::size_t n = c.orders.size();
  for (int g = 0; g < t.size(); ++g) {
    const Mat& b = c.actions[t.inv(g)];
    Mat d(n, std::vector<long>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const long bij = mod(b[i][j], c.orders[i]);
        if ((c.orders[j] * bij) % c.orders[i] != 0) throw std::logic_error("invalid finite module");
        d[j][i] = mod(c.orders[j] * bij / c.orders[i], c.orders[j]);
      }
    a.actions.push_back(d);
  }
  return a;
}

long cocycle_count(const Table& t, const std::vector<int>& s, const FiniteModule& m) {
  return static_cast<long>(all_cocycles(t, s, m).size());
}

std::vector<long> h1_bruteforce(const Table& t, const std::vector<int>& s, const FiniteModule& m) {
  const std::vector<Table1> z = all_cocycles(t, s, m);
  std::set<Table1> b;
  for (long code = 0; code < m.size(); ++code) {
    const Vec x = m.decode(code);
    Table1 row;
    for (int g : s) {
      Vec y = m.act(g, x);
      for (std::size_t i = 0; i < y.size(); ++i) y[i] -= x[i];
      row.push_back(m.encode(y));
    }
    b.insert(row);
  }
  const long order = static_cast<long>(z.size() / b.size());
  auto killed_by = [&](long n) {
    long cnt = 0;
    for (const auto& zz : z) {
      Table1 scaled;
      for (long code : zz) {
        Vec v = m.decode(code);
        for (auto& x : v) x *= n;
        scaled.push_back(m.encode(v));
      }
      if (b.count(scaled)) ++cnt;
    }
    return cnt / static_cast<long>(b.size());
  };
  return invariants_from_torsion(order, killed_by);
}

std::vector<long> lang_kernel(const Mat& sigma, long q, long k) {
  long n = 1;
  for (long i = 0; i < k; ++i) n *= q;
  n -= 1;
  const std::size_t r = sigma.size();
  std::vector<std::vector<long>> parts;
  long rest = n;
  for (long l = 2; rest > 1; ++l) {
    if (rest % l != 0) continue;
    long la = 1;
    while (rest % l == 0) {
      rest /= l;
      la *= l;
    }
    long total = 1;
    for (std::size_t i = 0; i < r; ++i) total *= la;
    std::vector<Vec> kernel;
    for (long code = 0; code < total; ++code) {
      Vec v(r);
      long c = code;
      for (std::size_t i = 0; i < r; ++i) {
        v[i] = c % la;
        c /= la;
      }
      bool zero = true;
      for (std::size_t i = 0; i < r && zero; ++i) {
        long s = -v[i];
        for (std::size_t j = 0; j < r; ++j) s += q * sigma[i][j] * v[j];
        zero = mod(s, la) == 0;
      }
      if (zero) kernel.push_back(v);
    }
    auto killed_by = [&](long m) {
      long cnt = 0;
      for (const auto& v : kernel) {
        bool z = true;
        for (long x : v) z = z && mod(m * x, la) == 0;
        cnt += z;
      }
      return cnt;
    };
    parts.push_back(invariants_from_torsion(static_cast<long>(kernel.size()), killed_by));
  }
  return merge_coprime(parts);
}

namespace {

struct Fp2 {
  long a, b;  // a + b sqrt(d)
};

Fp2 mul(const Fp2& x, const Fp2& y, long d, long p) {
  return {mod(x.a * y.a + d * x.b * y.b, p), mod(x.a * y.b + x.b * y.a, p)};
}

long non_square(long p) {
  for (long d = 2; d < p; ++d) {
    bool sq = false;
    for (long x = 1; x < p && !sq; ++x) sq = mod(x * x - d, p) == 0;
    if (!sq) return d;
  }
  throw std::logic_error("no non-square");
}

Fp2 power(Fp2 x, long e, long d, long p) {
  Fp2 r{1, 0};
  for (long i = 0; i < e; ++i) r = mul(r, x, d, p);
  return r;
}

} // namespace

std::vector<long> norm_one_orders(long p) {
  const long d = non_square(p);
  std::vector<long> out;
  for (long a = 0; a < p; ++a)
    for (long b = 0; b < p; ++b) {
      if (a == 0 && b == 0) continue;
      const Fp2 x{a, b};
      const Fp2 n = power(x, p + 1, d, p);
      if (n.a != 1 || n.b != 0) continue;
      long ord = 1;
      for (Fp2 y = x; !(y.a == 1 && y.b == 0); y = mul(y, x, d, p)) ++ord;
      out.push_back(ord);
    }
  return out;
}

long norm_one_count(long p) { return static_cast<long>(norm_one_orders(p).size()); }

std::vector<std::vector<int>> left_cosets(const Table& t, const std::vector<int>& h) {
  std::set<std::vector<int>> cosets;
  for (int g = 0; g < t.size(); ++g) {
    std::vector<int> c;
    for (int x : h) c.push_back(t.mul[g][x]);
    std::sort(c.begin(), c.end());
    cosets.insert(c);
  }
  return {cosets.begin(), cosets.end()};
}

int matrix_order(const Mat& a, int bound) {
  const std::size_t n = a.size();
  Mat p = a;
  for (int k = 1; k <= bound; ++k) {
    bool id = true;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) id = id && p[i][j] == (i == j ? 1 : 0);
    if (id) return k;
    Mat next(n, std::vector<long>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t l = 0; l < n; ++l) next[i][j] += p[i][l] * a[l][j];
    p = next;
  }
  return 0;
}

} // namespace oracle

namespace oracle {

namespace {

Mat mat_mul(const Mat& a, const Mat& b) {
  const std::size_t n = a.size(), m = b.empty() ? 0 : b[0].size(), k = b.size();
  Mat c(n, Vec(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l)
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
  return c;
}

Mat identity_mat(std::size_t n) {
  Mat e(n, Vec(n, 0));
  for (std::size_t i = 0; i < n; ++i) e[i][i] = 1;
  return e;
}

// Column reduction A V = E with V unimodular; returns V and V^-1, and the number of nonzero columns.
struct ColumnEchelon {
  Mat v, v_inv;
  std::size_t pivots = 0;
};

ColumnEchelon column_echelon(Mat a) {
  const std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
  ColumnEchelon r{identity_mat(cols), identity_mat(cols), 0};
  auto swap_cols = [&](std::size_t x, std::size_t y) {
    if (x == y) return;
    for (auto& row : a) std::swap(row[x], row[y]);
    for (auto& row : r.v) std::swap(row[x], row[y]);
    std::swap(r.v_inv[x], r.v_inv[y]);
  };
  // col_j -= k col_c
  auto sub_col = [&](std::size_t j, std::size_t c, long k) {
    for (auto& row : a) row[j] -= k * row[c];
    for (auto& row : r.v) row[j] -= k * row[c];
    for (std::size_t t = 0; t < cols; ++t) r.v_inv[c][t] += k * r.v_inv[j][t];
  };
  std::size_t c = 0;
  for (std::size_t i = 0; i < rows && c < cols; ++i) {
    for (;;) {
      std::size_t best = cols;
      for (std::size_t j = c; j < cols; ++j)
        if (a[i][j] != 0 && (best == cols || std::labs(a[i][j]) < std::labs(a[i][best]))) best = j;
      if (best == cols) break;
      swap_cols(c, best);
      bool done = true;
      for (std::size_t j = c + 1; j < cols; ++j) {
        if (a[i][j] == 0) continue;
        sub_col(j, c, a[i][j] / a[i][c]);
        if (a[i][j] != 0) done = false;
      }
      if (done) break;
    }
    if (a[i][c] != 0) ++c;
  }
  r.pivots = c;
  return r;
}

Vec mat_apply(const Mat& a, const Vec& x) {
  Vec y(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) y[i] += a[i][j] * x[j];
  return y;
}

} // namespace

Mat integer_kernel(const Mat& a) {
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  const ColumnEchelon e = column_echelon(a);
  Mat k(cols, Vec(cols - e.pivots, 0));
  for (std::size_t i = 0; i < cols; ++i)
    for (std::size_t j = e.pivots; j < cols; ++j) k[i][j - e.pivots] = e.v[i][j];
  return k;
}

std::vector<long> cyclic_norm_quotient(const Vec& orders, const Mat& sigma, int n) {
  const std::size_t r = orders.size();
  std::vector<Mat> powers{identity_mat(r)};
  for (int i = 1; i < n; ++i) powers.push_back(mat_mul(sigma, powers.back()));
  Mat norm(r, Vec(r, 0)), diff = sigma;
  for (const auto& p : powers)
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) norm[i][j] += p[i][j];
  for (std::size_t i = 0; i < r; ++i) diff[i][i] -= 1;

  const bool lattice = std::all_of(orders.begin(), orders.end(), [](long o) { return o == 0; });
  if (lattice) {
    const ColumnEchelon e = column_echelon(norm);
    const std::size_t k = r - e.pivots;
    // coordinates of (sigma - 1) e_j in the kernel basis
    Mat coords(k, Vec(r, 0));
    for (std::size_t j = 0; j < r; ++j) {
      Vec col(r);
      for (std::size_t i = 0; i < r; ++i) col[i] = diff[i][j];
      const Vec y = mat_apply(e.v_inv, col);
      for (std::size_t t = 0; t < k; ++t) coords[t][j] = y[e.pivots + t];
    }
    std::vector<long> out;
    std::size_t nonzero = 0;
    if (k > 0) {
      for (long long d : elementary_divisors(coords)) {
        if (d == 0) continue;
        ++nonzero;
        if (d > 1) out.push_back(static_cast<long>(d));
      }
    }
    for (std::size_t i = nonzero; i < k; ++i) out.push_back(0);
    return out;
  }
  if (std::any_of(orders.begin(), orders.end(), [](long o) { return o <= 0; })) throw std::invalid_argument("mixed module");

  FiniteModule m{orders, {}};
  auto reduce = [&](Vec v) {
    for (std::size_t i = 0; i < r; ++i) v[i] = ((v[i] % orders[i]) + orders[i]) % orders[i];
    return v;
  };
  std::set<long> kernel, image;
  for (long code = 0; code < m.size(); ++code) {
    const Vec x = m.decode(code);
    const Vec nx = reduce(mat_apply(norm, x));
    if (std::all_of(nx.begin(), nx.end(), [](long v) { return v == 0; })) kernel.insert(code);
    image.insert(m.encode(reduce(mat_apply(diff, x))));
  }
  const long order = static_cast<long>(kernel.size() / image.size());
  return invariants_from_torsion(order, [&](long e) {
    long count = 0;
    for (long code : kernel) {
      Vec x = m.decode(code);
      for (auto& v : x) v *= e;
      if (image.count(m.encode(reduce(x)))) ++count;
    }
    return count / static_cast<long>(image.size());
  });
}

} // namespace oracle
