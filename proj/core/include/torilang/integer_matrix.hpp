#pragma once

#include "torilang/errors.hpp"

#include <gmpxx.h>

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace torilang {

using Integer = mpz_class;
using IntVector = std::vector<Integer>;

/// Dense integer matrix with arbitrary-precision entries, stored row-major.
///
/// Vectors act as columns: `apply(x)` computes `A * x`. Lattices, on the other
/// hand, are always given by generating *rows*.
class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);

  static IntMatrix identity(std::size_t n);
  static IntMatrix diagonal(const IntVector& entries);
  static IntMatrix from_rows(std::size_t cols, const std::vector<IntVector>& rows);
  static IntMatrix from_rows(std::initializer_list<std::initializer_list<long>> rows);
  static IntMatrix from_rows(const std::vector<std::vector<long>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Integer& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntVector row(std::size_t r) const;
  IntVector col(std::size_t c) const;
  void set_row(std::size_t r, const IntVector& v);
  void append_row(const IntVector& v);
  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);

  IntMatrix transpose() const;
  IntMatrix select_rows(const std::vector<std::size_t>& idx) const;
  IntMatrix select_cols(const std::vector<std::size_t>& idx) const;
  IntVector apply(const IntVector& x) const;
  bool is_zero() const;
  bool is_square() const { return rows_ == cols_; }

  /// Stack rows of `b` below `a`; column counts must agree (an empty matrix adopts the other's width).
  static IntMatrix vstack(const IntMatrix& a, const IntMatrix& b);
  static IntMatrix hstack(const IntMatrix& a, const IntMatrix& b);

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator+(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator-(const IntMatrix& a, const IntMatrix& b);
  friend IntMatrix operator*(const Integer& s, const IntMatrix& a);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b);
  friend bool operator!=(const IntMatrix& a, const IntMatrix& b) { return !(a == b); }

  std::string to_string() const;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

IntMatrix pow(const IntMatrix& a, std::size_t k);

/// Fraction-free Bareiss determinant.
Integer determinant(const IntMatrix& a);

/// U * A * V = D with U, V unimodular and D = diag(d1, d2, ...) where d1 | d2 | ... and all di >= 0.
/// The inverses of U and V are carried along so callers never need to invert.
struct SmithForm {
  IntMatrix u;
  IntMatrix d;
  IntMatrix v;
  IntMatrix u_inv;
  IntMatrix v_inv;
  std::size_t rank = 0;

  /// Diagonal of D, length min(rows, cols).
  IntVector diagonal() const;
};

SmithForm snf(const IntMatrix& a);

/// Row echelon form under unimodular row operations; zero rows are dropped, so
/// the result is a basis of the row lattice of `a`.
IntMatrix row_echelon(const IntMatrix& a);

/// Basis (as rows) of { x in Z^n : A x = 0 }.
IntMatrix kernel_basis(const IntMatrix& a);

/// Basis (as rows) of { x in Z^n : (A x)_i = 0 mod moduli[i] }. A modulus of
/// zero demands exact vanishing, a modulus of one imposes nothing.
IntMatrix preimage_basis(const IntMatrix& a, const IntVector& moduli);

/// Coefficients c with c * basis = x, where `basis` is in echelon form as
/// returned by `row_echelon`. Returns nullopt when x is not in the lattice.
std::optional<IntVector> lattice_coordinates(const IntMatrix& echelon_basis, const IntVector& x);

/// Some integral solution of A x = b, if one exists.
std::optional<IntVector> solve_integer_system(const IntMatrix& a, const IntVector& b);

/// Is every row of `sub` in the row lattice of `super`?
bool lattice_contains(const IntMatrix& super, const IntMatrix& sub);
bool same_lattice(const IntMatrix& a, const IntMatrix& b);

/// Non-negative remainder; modulus zero leaves x untouched.
Integer reduce_mod(const Integer& x, const Integer& modulus);
IntVector to_int_vector(const std::vector<long>& v);
std::string to_string(const IntVector& v);

} // namespace torilang
