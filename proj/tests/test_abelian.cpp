#include "support.hpp"

#include <gtest/gtest.h>

using namespace torilang;

TEST(FinAbGroup, CanonicalForm) {
  const FinAbGroup g = FinAbGroup::from_cyclic_orders(to_int_vector({4, 6, 1, 0}));
  EXPECT_EQ(g.free_rank, 1u);
  EXPECT_EQ(g.torsion, to_int_vector({2, 12}));
  EXPECT_EQ(g.to_string(), "Z + Z/2 + Z/12");
  EXPECT_EQ(FinAbGroup::from_cyclic_orders(to_int_vector({2, 3})), FinAbGroup::cyclic(6));
}

TEST(Cokernel, Examples) {
  EXPECT_EQ(cokernel(IntMatrix::from_rows({{2}})), FinAbGroup::cyclic(2));
  EXPECT_EQ(cokernel(IntMatrix::from_rows({{-4}})), FinAbGroup::cyclic(4));
  EXPECT_EQ(cokernel(IntMatrix(0, 3)), FinAbGroup::free(3));
}

TEST(HomKernelImage, Examples) {
  const AbHom twice{Presentation::free(1), Presentation::free(1), IntMatrix::from_rows({{2}})};
  KernelImage k = hom_kernel_image(twice);
  EXPECT_TRUE(k.kernel.is_trivial());
  EXPECT_EQ(k.image, FinAbGroup::free(1));
  EXPECT_EQ(k.cokernel, FinAbGroup::cyclic(2));

  const Presentation z6 = Presentation::of(FinAbGroup::cyclic(6));
  k = hom_kernel_image({z6, z6, IntMatrix(1, 1)});
  EXPECT_EQ(k.kernel, FinAbGroup::cyclic(6));
  EXPECT_TRUE(k.image.is_trivial());
  EXPECT_EQ(k.cokernel, FinAbGroup::cyclic(6));

  k = hom_kernel_image({Presentation::free(2), Presentation::free(2), IntMatrix::from_rows({{1, 1}, {1, 1}})});
  EXPECT_EQ(k.kernel, FinAbGroup::free(1));
  EXPECT_EQ(k.image, FinAbGroup::free(1));
  EXPECT_EQ(k.cokernel, FinAbGroup::free(1));
}

TEST(HomKernelImage, RejectsIllDefinedMaps) {
  const AbHom bad{Presentation::of(FinAbGroup::cyclic(2)), Presentation::free(1), IntMatrix::from_rows({{1}})};
  EXPECT_FALSE(bad.is_well_defined());
  EXPECT_THROW(bad.check_well_defined(), AlgebraError);
}

TEST(DualGroup, Examples) {
  EXPECT_EQ(dual_group(FinAbGroup::cyclic(6)), FinAbGroup::cyclic(6));
  EXPECT_EQ(dual_group(FinAbGroup::free(1)), FinAbGroup::free(1));
  const FinAbGroup g{2, to_int_vector({4})};
  EXPECT_EQ(dual_group(g), g);
}

TEST(TensorMod, Examples) {
  EXPECT_EQ(tensor_mod_m(Presentation::free(2), Integer(3)), FinAbGroup::from_cyclic_orders(to_int_vector({3, 3})));
  EXPECT_EQ(tensor_mod_m(Presentation::of(FinAbGroup::cyclic(2)), Integer(4)), FinAbGroup::cyclic(2));
  EXPECT_TRUE(tensor_mod_m(Presentation::free(0), Integer(5)).is_trivial());
}

TEST(Subquotient, CoordinatesRoundTrip) {
  // 2Z + Z inside Z^2 modulo (4, 0) and (0, 3)
  const Subquotient q(IntMatrix::from_rows({{2, 0}, {0, 1}}), IntMatrix::from_rows({{4, 0}, {0, 3}}), 2);
  EXPECT_EQ(q.group(), FinAbGroup::from_cyclic_orders(to_int_vector({2, 3})));
  for (const auto& lift : q.generator_lifts()) EXPECT_TRUE(q.contains(lift));
  const IntVector x = to_int_vector({6, 5});
  const IntVector c = q.coordinates(x);
  IntVector diff = q.lift(c);
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= x[i];
  EXPECT_TRUE(q.is_zero(diff));
  EXPECT_THROW(q.coordinates(to_int_vector({1, 0})), AlgebraError);
}
