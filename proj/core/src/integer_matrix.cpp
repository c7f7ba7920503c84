#include "torilang/integer_matrix.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace torilang {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::diagonal(const IntVector& entries) {
  IntMatrix m(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
  return m;
}

IntMatrix IntMatrix::from_rows(std::size_t cols, const std::vector<IntVector>& rows) {
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("IntMatrix::from_rows: ragged rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

IntMatrix IntMatrix::from_rows(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<std::vector<long>> v;
  for (const auto& r : rows) v.emplace_back(r);
  return from_rows(v);
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  IntMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("IntMatrix::from_rows: ragged rows");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

IntVector IntMatrix::row(std::size_t r) const {
  return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                   data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

IntVector IntMatrix::col(std::size_t c) const {
  IntVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

void IntMatrix::set_row(std::size_t r, const IntVector& v) {
  for (std::size_t c = 0; c < cols_; ++c) (*this)(r, c) = v[c];
}

void IntMatrix::append_row(const IntVector& v) {
  if (rows_ == 0 && cols_ == 0) cols_ = v.size();
  if (v.size() != cols_) throw std::invalid_argument("IntMatrix::append_row: width mismatch");
  data_.insert(data_.end(), v.begin(), v.end());
  ++rows_;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
  if (a == b) return;
  for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, a), (*this)(r, b));
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

IntMatrix IntMatrix::select_rows(const std::vector<std::size_t>& idx) const {
  IntMatrix m(idx.size(), cols_);
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t c = 0; c < cols_; ++c) m(i, c) = (*this)(idx[i], c);
  return m;
}

IntMatrix IntMatrix::select_cols(const std::vector<std::size_t>& idx) const {
  IntMatrix m(rows_, idx.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t i = 0; i < idx.size(); ++i) m(r, i) = (*this)(r, idx[i]);
  return m;
}

IntVector IntMatrix::apply(const IntVector& x) const {
  if (x.size() != cols_) throw std::invalid_argument("IntMatrix::apply: dimension mismatch");
  IntVector y(rows_, Integer(0));
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (sgn(x[c]) != 0) y[r] += (*this)(r, c) * x[c];
  return y;
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Integer& x) { return sgn(x) == 0; });
}

IntMatrix IntMatrix::vstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ == 0) {
    IntMatrix r = b;
    if (b.rows_ == 0) r.cols_ = std::max(a.cols_, b.cols_);
    return r;
  }
  if (b.rows_ == 0) return a;
  if (a.cols_ != b.cols_) throw std::invalid_argument("IntMatrix::vstack: width mismatch");
  IntMatrix r = a;
  r.data_.insert(r.data_.end(), b.data_.begin(), b.data_.end());
  r.rows_ += b.rows_;
  return r;
}

IntMatrix IntMatrix::hstack(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_) throw std::invalid_argument("IntMatrix::hstack: height mismatch");
  IntMatrix r(a.rows_, a.cols_ + b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t c = 0; c < a.cols_; ++c) r(i, c) = a(i, c);
    for (std::size_t c = 0; c < b.cols_; ++c) r(i, a.cols_ + c) = b(i, c);
  }
  return r;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw std::invalid_argument("IntMatrix: product dimension mismatch");
  IntMatrix r(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Integer& aik = a(i, k);
      if (sgn(aik) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

IntMatrix operator+(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("IntMatrix: sum dimension mismatch");
  IntMatrix r = a;
  for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] += b.data_[i];
  return r;
}

IntMatrix operator-(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("IntMatrix: difference dimension mismatch");
  IntMatrix r = a;
  for (std::size_t i = 0; i < r.data_.size(); ++i) r.data_[i] -= b.data_[i];
  return r;
}

IntMatrix operator*(const Integer& s, const IntMatrix& a) {
  IntMatrix r = a;
  for (auto& x : r.data_) x *= s;
  return r;
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
  return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

std::string IntMatrix::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    if (r) os << ", ";
    os << '[';
    for (std::size_t c = 0; c < cols_; ++c) {
      if (c) os << ", ";
      os << (*this)(r, c).get_str();
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

IntMatrix pow(const IntMatrix& a, std::size_t k) {
  IntMatrix result = IntMatrix::identity(a.rows());
  IntMatrix base = a;
  while (k) {
    if (k & 1U) result = result * base;
    k >>= 1U;
    if (k) base = base * base;
  }
  return result;
}

Integer determinant(const IntMatrix& a) {
  if (!a.is_square()) throw std::invalid_argument("determinant: matrix not square");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  IntMatrix m = a;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(m(k, k)) == 0) {
      std::size_t swap = k + 1;
      while (swap < n && sgn(m(swap, k)) == 0) ++swap;
      if (swap == n) return 0;
      m.swap_rows(k, swap);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        m(i, j) = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(m(i, j).get_mpz_t(), m(i, j).get_mpz_t(), prev.get_mpz_t());
      }
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

IntVector SmithForm::diagonal() const {
  const std::size_t k = std::min(d.rows(), d.cols());
  IntVector out(k);
  for (std::size_t i = 0; i < k; ++i) out[i] = d(i, i);
  return out;
}

namespace {

int cmpabs(const Integer& a, const Integer& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

// D, U, U^-1, V, V^-1 kept consistent under elementary operations.
struct SmithWork {
  IntMatrix d, u, u_inv, v, v_inv;

  // row_i += c * row_j
  void add_row(std::size_t i, std::size_t j, const Integer& c) {
    for (std::size_t k = 0; k < d.cols(); ++k) d(i, k) += c * d(j, k);
    for (std::size_t k = 0; k < u.cols(); ++k) u(i, k) += c * u(j, k);
    for (std::size_t k = 0; k < u_inv.rows(); ++k) u_inv(k, j) -= c * u_inv(k, i);
  }
  // col_i += c * col_j
  void add_col(std::size_t i, std::size_t j, const Integer& c) {
    for (std::size_t k = 0; k < d.rows(); ++k) d(k, i) += c * d(k, j);
    for (std::size_t k = 0; k < v.rows(); ++k) v(k, i) += c * v(k, j);
    for (std::size_t k = 0; k < v_inv.cols(); ++k) v_inv(j, k) -= c * v_inv(i, k);
  }
  void swap_row(std::size_t i, std::size_t j) {
    d.swap_rows(i, j);
    u.swap_rows(i, j);
    u_inv.swap_cols(i, j);
  }
  void swap_col(std::size_t i, std::size_t j) {
    d.swap_cols(i, j);
    v.swap_cols(i, j);
    v_inv.swap_rows(i, j);
  }
  void negate_row(std::size_t i) {
    for (std::size_t k = 0; k < d.cols(); ++k) d(i, k) = -d(i, k);
    for (std::size_t k = 0; k < u.cols(); ++k) u(i, k) = -u(i, k);
    for (std::size_t k = 0; k < u_inv.rows(); ++k) u_inv(k, i) = -u_inv(k, i);
  }
};

} // namespace

SmithForm snf(const IntMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  SmithWork w{a, IntMatrix::identity(m), IntMatrix::identity(m), IntMatrix::identity(n),
              IntMatrix::identity(n)};
  const std::size_t kmax = std::min(m, n);
  std::size_t rank = 0;
  for (std::size_t t = 0; t < kmax; ++t) {
    bool found = false;
    for (;;) {
      // smallest nonzero entry of the trailing block becomes the pivot
      std::size_t pi = 0, pj = 0;
      found = false;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j) {
          if (sgn(w.d(i, j)) == 0) continue;
          if (!found || cmpabs(w.d(i, j), w.d(pi, pj)) < 0) {
            pi = i;
            pj = j;
            found = true;
          }
        }
      if (!found) break;
      w.swap_row(t, pi);
      w.swap_col(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (sgn(w.d(i, t)) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), w.d(i, t).get_mpz_t(), w.d(t, t).get_mpz_t());
        w.add_row(i, t, -q);
        if (sgn(w.d(i, t)) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (sgn(w.d(t, j)) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), w.d(t, j).get_mpz_t(), w.d(t, t).get_mpz_t());
        w.add_col(j, t, -q);
        if (sgn(w.d(t, j)) != 0) clean = false;
      }
      if (!clean) continue;

      // enforce d_t | every later entry
      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j) {
          if (!mpz_divisible_p(w.d(i, j).get_mpz_t(), w.d(t, t).get_mpz_t())) {
            w.add_row(t, i, 1);
            divides = false;
            break;
          }
        }
      if (divides) break;
    }
    if (!found) break;
    if (sgn(w.d(t, t)) < 0) w.negate_row(t);
    rank = t + 1;
  }
  return SmithForm{std::move(w.u), std::move(w.d), std::move(w.v), std::move(w.u_inv),
                   std::move(w.v_inv), rank};
}

IntMatrix row_echelon(const IntMatrix& a) {
  IntMatrix m = a;
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  std::size_t r = 0;
  auto row_sub = [&](std::size_t i, std::size_t j, const Integer& q, std::size_t from) {
    for (std::size_t k = from; k < cols; ++k) m(i, k) -= q * m(j, k);
  };
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    bool have_pivot = false;
    for (;;) {
      std::size_t best = rows;
      for (std::size_t i = r; i < rows; ++i) {
        if (sgn(m(i, c)) == 0) continue;
        if (best == rows || cmpabs(m(i, c), m(best, c)) < 0) best = i;
      }
      if (best == rows) break;
      have_pivot = true;
      m.swap_rows(r, best);
      bool again = false;
      for (std::size_t i = r + 1; i < rows; ++i) {
        if (sgn(m(i, c)) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), m(i, c).get_mpz_t(), m(r, c).get_mpz_t());
        row_sub(i, r, q, c);
        if (sgn(m(i, c)) != 0) again = true;
      }
      if (!again) break;
    }
    if (!have_pivot) continue;
    if (sgn(m(r, c)) < 0)
      for (std::size_t k = c; k < cols; ++k) m(r, k) = -m(r, k);
    for (std::size_t i = 0; i < r; ++i) {
      if (sgn(m(i, c)) == 0) continue;
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), m(i, c).get_mpz_t(), m(r, c).get_mpz_t());
      row_sub(i, r, q, c);
    }
    ++r;
  }
  std::vector<std::size_t> keep(r);
  for (std::size_t i = 0; i < r; ++i) keep[i] = i;
  IntMatrix out = m.select_rows(keep);
  if (r == 0) out = IntMatrix(0, cols);
  return out;
}

IntMatrix kernel_basis(const IntMatrix& a) {
  const std::size_t n = a.cols();
  const IntMatrix reduced = row_echelon(a);
  if (reduced.rows() == 0) return IntMatrix::identity(n);
  const SmithForm s = snf(reduced);
  IntMatrix basis(0, n);
  for (std::size_t j = s.rank; j < n; ++j) basis.append_row(s.v.col(j));
  if (basis.rows() == 0) return IntMatrix(0, n);
  return row_echelon(basis);
}

IntMatrix preimage_basis(const IntMatrix& a, const IntVector& moduli) {
  if (moduli.size() != a.rows()) throw std::invalid_argument("preimage_basis: one modulus per row required");
  const std::size_t n = a.cols();
  // rows sharing a modulus may be replaced by their echelon form
  std::map<Integer, std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (moduli[i] == 1) continue;
    groups[abs(moduli[i])].push_back(i);
  }
  std::vector<std::pair<IntVector, Integer>> constraints;
  for (const auto& [mod, idx] : groups) {
    const IntMatrix ech = row_echelon(a.select_rows(idx));
    for (std::size_t r = 0; r < ech.rows(); ++r) constraints.emplace_back(ech.row(r), mod);
  }
  if (constraints.empty()) return IntMatrix::identity(n);
  std::size_t slack = 0;
  for (const auto& c : constraints)
    if (sgn(c.second) != 0) ++slack;
  IntMatrix aug(constraints.size(), n + slack);
  std::size_t s = 0;
  for (std::size_t r = 0; r < constraints.size(); ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = constraints[r].first[c];
    if (sgn(constraints[r].second) != 0) aug(r, n + s++) = -constraints[r].second;
  }
  const IntMatrix k = kernel_basis(aug);
  IntMatrix proj(k.rows(), n);
  for (std::size_t r = 0; r < k.rows(); ++r)
    for (std::size_t c = 0; c < n; ++c) proj(r, c) = k(r, c);
  IntMatrix basis = row_echelon(proj);
  return basis.rows() == 0 ? IntMatrix(0, n) : basis;
}

std::optional<IntVector> lattice_coordinates(const IntMatrix& basis, const IntVector& x) {
  if (x.size() != basis.cols() && basis.rows() > 0)
    throw std::invalid_argument("lattice_coordinates: dimension mismatch");
  IntVector residual = x;
  IntVector coeffs(basis.rows());
  for (std::size_t i = 0; i < basis.rows(); ++i) {
    std::size_t p = 0;
    while (p < basis.cols() && sgn(basis(i, p)) == 0) ++p;
    if (p == basis.cols()) throw std::invalid_argument("lattice_coordinates: zero basis row");
    if (!mpz_divisible_p(residual[p].get_mpz_t(), basis(i, p).get_mpz_t())) return std::nullopt;
    Integer c;
    mpz_divexact(c.get_mpz_t(), residual[p].get_mpz_t(), basis(i, p).get_mpz_t());
    coeffs[i] = c;
    if (sgn(c) != 0)
      for (std::size_t k = p; k < basis.cols(); ++k) residual[k] -= c * basis(i, k);
  }
  for (const auto& r : residual)
    if (sgn(r) != 0) return std::nullopt;
  return coeffs;
}

std::optional<IntVector> solve_integer_system(const IntMatrix& a, const IntVector& b) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve_integer_system: dimension mismatch");
  const SmithForm s = snf(a);
  const IntVector ub = s.u.apply(b);
  IntVector y(a.cols(), Integer(0));
  for (std::size_t i = 0; i < ub.size(); ++i) {
    if (i < s.rank) {
      if (!mpz_divisible_p(ub[i].get_mpz_t(), s.d(i, i).get_mpz_t())) return std::nullopt;
      mpz_divexact(y[i].get_mpz_t(), ub[i].get_mpz_t(), s.d(i, i).get_mpz_t());
    } else if (sgn(ub[i]) != 0) {
      return std::nullopt;
    }
  }
  return s.v.apply(y);
}

bool lattice_contains(const IntMatrix& super, const IntMatrix& sub) {
  const IntMatrix basis = row_echelon(super);
  for (std::size_t r = 0; r < sub.rows(); ++r) {
    const IntVector v = sub.row(r);
    bool zero = std::all_of(v.begin(), v.end(), [](const Integer& x) { return sgn(x) == 0; });
    if (zero) continue;
    if (basis.rows() == 0 || !lattice_coordinates(basis, v)) return false;
  }
  return true;
}

bool same_lattice(const IntMatrix& a, const IntMatrix& b) {
  return lattice_contains(a, b) && lattice_contains(b, a);
}

Integer reduce_mod(const Integer& x, const Integer& modulus) {
  if (sgn(modulus) == 0) return x;
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), modulus.get_mpz_t());
  if (sgn(r) < 0) r += abs(modulus);
  return r;
}

IntVector to_int_vector(const std::vector<long>& v) {
  IntVector out;
  out.reserve(v.size());
  for (long x : v) out.emplace_back(x);
  return out;
}

std::string to_string(const IntVector& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    os << v[i].get_str();
  }
  os << ')';
  return os.str();
}

} // namespace torilang
