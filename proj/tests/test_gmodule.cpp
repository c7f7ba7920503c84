#include "support.hpp"

#include <gtest/gtest.h>

#include <functional>

using namespace torilang;

namespace {

std::string violation_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const AlgebraError& e) {
    return e.violation();
  }
  return "";
}

GammaModule minus_one(const FiniteGroup& g, const Subgroup& kernel) { return sign_module(g, kernel); }

} // namespace

TEST(PermutationModule, Examples) {
  const FiniteGroup z2 = catalog::cyclic(2);
  const GammaModule triv = permutation_module(z2, z2.whole());
  EXPECT_EQ(triv.dim(), 1u);
  EXPECT_TRUE(triv.acts_trivially(1));

  const GammaModule swap = permutation_module(z2, z2.trivial());
  EXPECT_EQ(swap.action(1), IntMatrix::from_rows({{0, 1}, {1, 0}}));

  const FiniteGroup s3 = catalog::symmetric3();
  const GammaModule p = permutation_module(s3, s3.subgroup({0, 3}));
  EXPECT_EQ(p.dim(), 3u);
  // each element permutes the three cosets as on the coset enumeration
  const auto cosets = oracle::left_cosets(testing_support::to_table(s3), {0, 3});
  for (std::size_t g = 0; g < 6; ++g) {
    const IntMatrix& a = p.action(g);
    for (std::size_t j = 0; j < 3; ++j) {
      Integer colsum = 0;
      for (std::size_t i = 0; i < 3; ++i) colsum += a(i, j);
      EXPECT_EQ(colsum, 1);
    }
  }
  EXPECT_EQ(cosets.size(), 3u);
}

TEST(Invariants, Examples) {
  const FiniteGroup z2 = catalog::cyclic(2);
  const GammaModule z3 = GammaModule::trivial(z2, FinAbGroup::cyclic(3));
  EXPECT_EQ(invariants(z3, z2.whole()).group(), FinAbGroup::cyclic(3));
  EXPECT_TRUE(invariants(minus_one(z2, z2.trivial()), z2.whole()).group().is_trivial());
  const Subquotient inv = invariants(permutation_module(z2, z2.trivial()), z2.whole());
  EXPECT_EQ(inv.group(), FinAbGroup::free(1));
  EXPECT_EQ(inv.generator_lifts()[0], to_int_vector({1, 1}));
}

TEST(Coinvariants, Examples) {
  const FiniteGroup z2 = catalog::cyclic(2);
  EXPECT_EQ(coinvariants(GammaModule::trivial(z2, FinAbGroup::free(1)), z2.whole()).group(), FinAbGroup::free(1));
  EXPECT_EQ(coinvariants(minus_one(z2, z2.trivial()), z2.whole()).group(), FinAbGroup::cyclic(2));
  EXPECT_EQ(coinvariants(permutation_module(z2, z2.trivial()), z2.whole()).group(), FinAbGroup::free(1));
}

TEST(NormSum, Examples) {
  const FiniteGroup z2 = catalog::cyclic(2);
  const GammaModule swap = permutation_module(z2, z2.trivial());
  EXPECT_EQ(norm_sum(swap, z2.whole()).raw, IntMatrix::identity(2));
  EXPECT_EQ(norm_sum(swap, z2.trivial()).raw, IntMatrix::from_rows({{1, 1}, {1, 1}}));

  const FiniteGroup z4 = catalog::cyclic(4);
  const Subgroup two = z4.subgroup({0, 2});
  const GammaModule m = minus_one(z4, two);
  EXPECT_TRUE(norm_sum(m, two).raw.is_zero());
}

TEST(ChangeOfGroup, RestrictAndInflate) {
  const FiniteGroup z2 = catalog::cyclic(2);
  const GammaModule swap = permutation_module(z2, z2.trivial());
  const GammaModule r = restrict_action(swap, z2.trivial());
  EXPECT_EQ(r.acting_group().order(), 1u);
  EXPECT_EQ(r.dim(), 2u);

  const FiniteGroup z4 = catalog::cyclic(4);
  const Subgroup two = z4.subgroup({0, 2});
  const QuotientGroup q = quotient_group(z4, two);
  const GammaModule down = minus_one(q.group, q.group.trivial());
  const GammaModule up = inflate_action(down, z4, q);
  for (std::size_t x : two.elements()) EXPECT_TRUE(up.acts_trivially(x));
  EXPECT_EQ(descend_action(up, two, q), down);
  EXPECT_EQ(violation_of([&] { descend_action(permutation_module(z4, z4.trivial()), two, q); }), "nontrivial-on-kernel");
}

TEST(Constructors, Errors) {
  const FiniteGroup z2 = catalog::cyclic(2);
  EXPECT_EQ(violation_of([&] { GammaModule::lattice(z2, {IntMatrix::identity(1)}); }), "action-count");
  EXPECT_EQ(violation_of([&] {
              GammaModule::lattice(z2, {IntMatrix::identity(1), IntMatrix::from_rows({{2}})});
            }),
            "action-homomorphism");
  EXPECT_EQ(violation_of([&] {
              GammaModule::lattice(z2, {IntMatrix::from_rows({{-1}}), IntMatrix::from_rows({{-1}})});
            }),
            "action-identity");
  // Z/4 with the generator acting by multiplication by 2 is not an automorphism
  EXPECT_NE(violation_of([&] {
              GammaModule::from_presentation(z2, Presentation::of(FinAbGroup::cyclic(4)),
                                             {IntMatrix::identity(1), IntMatrix::from_rows({{2}})});
            }),
            "");
  EXPECT_EQ(violation_of([&] {
              GammaModule::from_generator_actions(catalog::cyclic(4), Presentation::free(1), {2},
                                                  {IntMatrix::from_rows({{-1}})});
            }),
            "not-generating");
}

TEST(Maps, ShortExactSequence) {
  const FiniteGroup z2 = catalog::cyclic(2);
  const GammaModule z = GammaModule::trivial(z2, FinAbGroup::free(1));
  const GammaModule z2m = GammaModule::trivial(z2, FinAbGroup::cyclic(2));
  const ShortExactSeq ses{{z, z, IntMatrix::from_rows({{2}})}, {z, z2m, IntMatrix::from_rows({{1}})}};
  EXPECT_TRUE(ses.is_exact());
  const ShortExactSeq bad{{z, z, IntMatrix::from_rows({{3}})}, {z, z2m, IntMatrix::from_rows({{1}})}};
  EXPECT_EQ(violation_of([&] { bad.check(); }), "not-exact");

  const ModuleMap not_equivariant{permutation_module(z2, z2.trivial()), z, IntMatrix::from_rows({{1, 0}})};
  EXPECT_EQ(violation_of([&] { not_equivariant.check(); }), "not-equivariant");
}

TEST(Constructions, DualAndTensor) {
  const FiniteGroup z3 = catalog::cyclic(3);
  const GammaModule rot = GammaModule::from_generator_actions(z3, Presentation::free(2), {1},
                                                              {IntMatrix::from_rows({{0, -1}, {1, -1}})});
  const GammaModule d = dual_lattice(rot);
  for (std::size_t g = 0; g < 3; ++g) EXPECT_EQ(d.action(g).transpose() * rot.action(g), IntMatrix::identity(2));
  const GammaModule t = tensor_mod(rot, Integer(2));
  EXPECT_EQ(t.size(), 4);
  EXPECT_EQ(direct_sum(rot, t).dim(), 4u);
}

TEST(Catalogs, FiniteOrderMatricesHaveTheirOrder) {
  const auto ms = finite_order_matrices(3);
  EXPECT_GE(ms.size(), 20u);
  for (const auto& m : ms) {
    const int o = oracle::matrix_order(testing_support::to_mat(m.matrix));
    ASSERT_GT(o, 0) << m.name;
    EXPECT_EQ(matrix_order(m.matrix), static_cast<std::size_t>(o)) << m.name;
  }
  EXPECT_EQ(violation_of([] { matrix_order(IntMatrix::from_rows({{1, 1}, {0, 1}}), 10); }), "infinite-order");
}

TEST(Catalogs, ModulesAreValidAndBounded) {
  for (const auto& g : catalog::groups_up_to(8))
    for (const auto& nm : module_catalog(g)) {
      if (nm.module.is_finite()) EXPECT_LE(nm.module.size(), 27) << g.name() << " " << nm.name;
      EXPECT_TRUE(nm.module.acting_group() == g);
    }
}

TEST(Elements, EnumerationIsComplete) {
  const GammaModule m = GammaModule::trivial(catalog::cyclic(2), FinAbGroup::from_cyclic_orders(to_int_vector({2, 3})));
  EXPECT_EQ(m.elements().size(), 6u);
}
