#include <gtest/gtest.h>

#include "spwp/examples.hpp"
#include "spwp/jacobian.hpp"

using namespace spwp;
using namespace spwp::examples;

namespace {

// Paths in the 3-cycle that avoid every length-two subpath killed by the
// cyclic derivatives of zyx (those are yx, zy, xz). Counted by hand.
int three_cycle_oracle_dim() {
  // Each vertex contributes e_v and one arrow; no length-two path survives.
  return 3 + 3;
}

}  // namespace

TEST(Jacobian, SingleVertex) {
  Species s = a1_species();
  auto a = compute_jacobian(s, TensorElement{});
  EXPECT_EQ(a->dim(), 1);
  EXPECT_TRUE(is_self_injective(*a));
  EXPECT_EQ(nakayama_permutation(*a), std::vector<int>{0});
}

TEST(Jacobian, A2IsNotSelfInjective) {
  Species s = a2_species();
  auto a = compute_jacobian(s, TensorElement{});
  EXPECT_EQ(a->dim(), 3);
  EXPECT_EQ(a->stabilization_degree(), 2);
  EXPECT_FALSE(is_self_injective(*a));
  EXPECT_THROW(nakayama_permutation(*a), NotSelfInjective);
  for (int i = 0; i < 2; ++i) EXPECT_TRUE(four_term_complex(*a, i, Side::Left).composites_zero);
}

TEST(Jacobian, ThreeCycle) {
  Species s = three_cycle_species();
  auto a = compute_jacobian(s, three_cycle_potential(s));
  EXPECT_EQ(a->dim(), three_cycle_oracle_dim());
  EXPECT_EQ(a->stabilization_degree(), 2);
  auto dims = a->block_dims();
  EXPECT_EQ(dims[1][0], 1);  // x
  EXPECT_EQ(dims[0][1], 0);
  for (Side side : {Side::Left, Side::Right})
    for (int i = 0; i < 3; ++i) {
      FourTermComplex c = four_term_complex(*a, i, side);
      EXPECT_TRUE(c.composites_zero);
      EXPECT_TRUE(c.exact_everywhere());
      EXPECT_EQ(c.dims, (std::vector<int>{2, 2, 2, 2, 1}));
    }
  EXPECT_TRUE(is_self_injective(*a));
  // soc(A e_1) is spanned by x, which ends at vertex 2, so σ(2) = 1.
  EXPECT_EQ(nakayama_permutation(*a), (std::vector<int>{2, 0, 1}));
}

TEST(Jacobian, FreeCycleDoesNotStabilize) {
  Species s = three_cycle_species();
  EXPECT_THROW(compute_jacobian(s, TensorElement{}, 6), NotStabilized);
}

TEST(Jacobian, StructureConstantsAreAssociative) {
  Species s = three_cycle_species();
  auto a = compute_jacobian(s, three_cycle_potential(s));
  const int n = a->dim();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        Vec x = unit_vector(n, i), y = unit_vector(n, j), z = unit_vector(n, k);
        EXPECT_EQ(a->multiply(a->multiply(x, y), z), a->multiply(x, a->multiply(y, z)));
      }
}

TEST(Jacobian, NakayamaAutomorphismOfThreeCycle) {
  Species s = three_cycle_species();
  // (B) asks for γ(W) = W on the nose, so take the rotation-symmetric form.
  TensorElement w = epsilon_c(s, three_cycle_potential(s));
  auto a = compute_jacobian(s, w);
  auto sigma = nakayama_permutation(*a);
  auto g = permutation_morphism(s, sigma);
  ASSERT_TRUE(g);
  EXPECT_TRUE(check_conditions_AB(s, w, *g));
  EXPECT_TRUE(verify_nakayama_automorphism(*a, *g));
  // The identity is not one: λ(x) = λ(x·e_1) would have to equal λ(e_1·x) = 0.
  EXPECT_FALSE(verify_nakayama_automorphism(*a, AlgebraMorphism::identity(s)));
}

TEST(Jacobian, MorphismMustPreserveIdeal) {
  Species s = three_cycle_species();
  TensorElement w = three_cycle_potential(s);
  auto a = compute_jacobian(s, w);
  AlgebraMorphism g = AlgebraMorphism::identity(s);
  g.arrow_matrices[0] = Q(2) * Mat::identity(1);
  // Scaling one arrow preserves the ideal but not W.
  EXPECT_NO_THROW(morphism_matrix(*a, g));
  EXPECT_FALSE(check_conditions_AB(s, w, g));
  g.arrow_map = {1, 2, 0};
  EXPECT_THROW(morphism_matrix(*a, g), NotAMorphism);
}

TEST(Jacobian, ComplexCycleTwoOrbits) {
  // ℂ-cycle with W = zyx: A is self-injective with each block D-dimensional.
  std::vector<VertexField> v{complex_vertex("1"), complex_vertex("2"), complex_vertex("3")};
  Species s(v, {carrier_arrow(v, "x", 0, 1, complex_field()), carrier_arrow(v, "y", 1, 2, complex_field()),
                carrier_arrow(v, "z", 2, 0, complex_field())});
  TensorElement w = multiply(s, {letter_element(s, 2, 0), letter_element(s, 1, 0), letter_element(s, 0, 0)});
  auto a = compute_jacobian(s, w);
  EXPECT_EQ(a->dim(), 12);
  EXPECT_TRUE(is_self_injective(*a));
  EXPECT_EQ(nakayama_permutation(*a), (std::vector<int>{2, 0, 1}));
}
