#include "support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace torilang;
using testing_support::to_mat;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, long lo, long hi) {
  std::uniform_int_distribution<long> d(lo, hi);
  IntMatrix a(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) a(i, j) = d(rng);
  return a;
}

} // namespace

TEST(Smith, IdentityStaysIdentity) {
  const SmithForm s = snf(IntMatrix::identity(2));
  EXPECT_EQ(s.d, IntMatrix::identity(2));
  EXPECT_EQ(s.u, IntMatrix::identity(2));
  EXPECT_EQ(s.v, IntMatrix::identity(2));
}

TEST(Smith, TwoByTwoExample) {
  const IntMatrix a = IntMatrix::from_rows({{2, 4}, {6, 8}});
  const SmithForm s = snf(a);
  EXPECT_EQ(s.d, IntMatrix::from_rows({{2, 0}, {0, 4}}));
  EXPECT_EQ(s.u * a * s.v, s.d);
  const auto oracle = oracle::elementary_divisors(to_mat(a));
  EXPECT_EQ(oracle, (std::vector<long long>{2, 4}));
  EXPECT_EQ(abs(determinant(s.d)), abs(determinant(a)));
}

TEST(Smith, ZeroMatrix) {
  const SmithForm s = snf(IntMatrix(2, 3));
  EXPECT_TRUE(s.d.is_zero());
  EXPECT_EQ(s.rank, 0u);
}

TEST(Smith, AgreesWithDeterminantalDivisors) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t r = 1 + rng() % 4, c = 1 + rng() % 4;
    const IntMatrix a = random_matrix(rng, r, c, -9, 9);
    const SmithForm s = snf(a);
    const auto expected = oracle::elementary_divisors(to_mat(a));
    const IntVector diag = s.diagonal();
    ASSERT_EQ(diag.size(), expected.size());
    for (std::size_t i = 0; i < diag.size(); ++i) EXPECT_EQ(diag[i], Integer(static_cast<long>(expected[i]))) << a.to_string();
  }
}

TEST(Smith, InversesAreCarried) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const IntMatrix a = random_matrix(rng, 3, 4, -20, 20);
    const SmithForm s = snf(a);
    EXPECT_EQ(s.u * s.u_inv, IntMatrix::identity(3));
    EXPECT_EQ(s.v * s.v_inv, IntMatrix::identity(4));
  }
}

TEST(Lattices, KernelAndPreimage) {
  const IntMatrix a = IntMatrix::from_rows({{1, 1}, {1, 1}});
  const IntMatrix k = kernel_basis(a);
  ASSERT_EQ(k.rows(), 1u);
  EXPECT_TRUE(a.apply(k.row(0)) == IntVector(2, Integer(0)));

  // x with 2x = 0 mod 4 is 2Z
  const IntMatrix p = preimage_basis(IntMatrix::from_rows({{2}}), {Integer(4)});
  ASSERT_EQ(p.rows(), 1u);
  EXPECT_EQ(abs(p(0, 0)), 2);
}

TEST(Lattices, MembershipAndEquality) {
  const IntMatrix big = IntMatrix::from_rows({{1, 0}, {0, 2}});
  const IntMatrix small = IntMatrix::from_rows({{2, 2}});
  EXPECT_TRUE(lattice_contains(big, small));
  EXPECT_FALSE(lattice_contains(small, big));
  EXPECT_TRUE(same_lattice(big, IntMatrix::from_rows({{1, 2}, {1, 0}})));
  const auto c = lattice_coordinates(row_echelon(big), to_int_vector({3, 4}));
  ASSERT_TRUE(c.has_value());
  EXPECT_FALSE(lattice_coordinates(row_echelon(big), to_int_vector({0, 1})).has_value());
}

TEST(Lattices, SolveIntegerSystem) {
  const IntMatrix a = IntMatrix::from_rows({{2, 0}, {0, 3}});
  EXPECT_TRUE(solve_integer_system(a, to_int_vector({4, 9})).has_value());
  EXPECT_FALSE(solve_integer_system(a, to_int_vector({1, 0})).has_value());
}

TEST(Lattices, ReduceModIsNonNegative) {
  EXPECT_EQ(reduce_mod(Integer(-7), Integer(3)), 2);
  EXPECT_EQ(reduce_mod(Integer(-7), Integer(0)), -7);
}
