#include <gtest/gtest.h>

#include "spwp/examples.hpp"

using namespace spwp;
using namespace spwp::examples;

namespace {

// ℂ-vertices 1 → 2 → 3 → 1 with the first arrow twisted by conjugation on the right.
Species twisted_complex_cycle() {
  std::vector<VertexField> v{complex_vertex("1"), complex_vertex("2"), complex_vertex("3")};
  std::vector<Arrow> a{carrier_arrow(v, "x", 0, 1, complex_field(), 0, 1), carrier_arrow(v, "y", 1, 2, complex_field()),
                       carrier_arrow(v, "z", 2, 0, complex_field())};
  return Species(v, a);
}

Species complex_cycle() {
  std::vector<VertexField> v{complex_vertex("1"), complex_vertex("2"), complex_vertex("3")};
  std::vector<Arrow> a{carrier_arrow(v, "x", 0, 1, complex_field()), carrier_arrow(v, "y", 1, 2, complex_field()),
                       carrier_arrow(v, "z", 2, 0, complex_field())};
  return Species(v, a);
}

TensorElement word(const Species& s, std::vector<int> arrows) {
  std::vector<TensorElement> f;
  for (int a : arrows) f.push_back(letter_element(s, a, 0));
  return multiply(s, f);
}

}  // namespace

TEST(Tensor, Idempotents) {
  Species s = a2_species();
  EXPECT_EQ(multiply(s, idempotent(s, 0), idempotent(s, 0)), idempotent(s, 0));
  EXPECT_TRUE(multiply(s, idempotent(s, 0), idempotent(s, 1)).is_zero());
  TensorElement a = letter_element(s, 0, 0);
  EXPECT_EQ(multiply(s, a, idempotent(s, 0)), a);
  EXPECT_TRUE(multiply(s, a, idempotent(s, 1)).is_zero());
  EXPECT_EQ(multiply(s, idempotent(s, 1), a), a);
}

TEST(Tensor, TwistedPush) {
  auto f = eta_field();
  std::vector<VertexField> v{{"1", f, Q(1)}, {"2", f, Q(1)}};
  Species s(v, {carrier_arrow(v, "s", 0, 1, f, 1, 0)});
  TensorElement out = left_multiply(s, 1, FieldElement::generator(f), letter_element(s, 0, 0));
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out.terms().begin()->second.coords(), (Vec{Q(-1), Q(0), Q(2)}));
}

TEST(Tensor, PotentialRecognition) {
  Species c = complex_cycle();
  EXPECT_TRUE(is_potential(c, word(c, {2, 1, 0})));
  EXPECT_FALSE(is_potential(c, letter_element(c, 0, 0)));
  Species t = twisted_complex_cycle();
  EXPECT_FALSE(is_potential(t, word(t, {2, 1, 0})));
  EXPECT_TRUE(is_potential(t, TensorElement{}));
}

TEST(Tensor, DerivativeExamples) {
  Species s = three_cycle_species();
  TensorElement w = three_cycle_potential(s);
  // ∂ˡ_{z*}(z⊗y⊗x) = y⊗x
  EXPECT_EQ(partial_l(s, 2, Vec{Q(1)}, w), word(s, {1, 0}));
  EXPECT_TRUE(partial_l(s, 0, Vec{Q(1)}, idempotent(s, 0)).is_zero());
  // Left ℂ, right ℝ: the right basis is {1, i}, and 𝔟(i*⊗1) = 0.
  Species b = make_species({real_vertex("1"), complex_vertex("2")}, {{"2C1", 0, 1, complex_field()}});
  const DualBimodule& d = b.dual(0);
  ASSERT_EQ(d.under_star.size(), 2u);
  EXPECT_TRUE(partial_l(b, 0, d.under_star[1], letter_element(b, 0, 0)).is_zero());
  EXPECT_EQ(partial_l(b, 0, d.under_star[0], letter_element(b, 0, 0)), idempotent(b, 0));
}

TEST(Tensor, EpsilonCOfThreeCycle) {
  Species s = three_cycle_species();
  TensorElement w = three_cycle_potential(s);
  TensorElement expected = word(s, {2, 1, 0}) + word(s, {1, 0, 2}) + word(s, {0, 2, 1});
  EXPECT_EQ(epsilon_c(s, w), expected);
  EXPECT_TRUE(cyclic_equivalent(s, w, epsilon_l(s, w)));
  EXPECT_FALSE(cyclic_equivalent(s, w, Q(2) * w));
  EXPECT_TRUE(cyclic_derivative(s, 0, Vec{Q(1)}, TensorElement{}).is_zero());
}

TEST(Tensor, DerivativeMatrixOnThreeCycle) {
  Species s = three_cycle_species();
  TensorElement w = three_cycle_potential(s);
  // ∂_{z*}W = y⊗x, then ∂ʳ_{x*} leaves y.
  auto m = derivative_matrix(s, w, 2, 0);
  ASSERT_EQ(m.size(), 1u);
  EXPECT_EQ(m[0][0], letter_element(s, 1, 0));
  EXPECT_TRUE(derivative_matrix(s, w, 2, 1)[0][0].is_zero());
  EXPECT_TRUE(derivative_matrix(s, TensorElement{}, 2, 0)[0][0].is_zero());
}

TEST(Tensor, Associativity) {
  std::mt19937 rng(1);
  Species s = complex_cycle();
  for (int it = 0; it < 20; ++it) {
    TensorElement x, y, z;
    for (int a = 0; a < 3; ++a) {
      x += right_multiply(s, letter_element(s, a, 0), s.arrow(a).source, random_field_element(s.field(0), rng));
      y += right_multiply(s, word(s, {(a + 1) % 3, a}), s.arrow(a).source, random_field_element(s.field(0), rng));
      z += left_multiply(s, s.arrow(a).target, random_field_element(s.field(0), rng), letter_element(s, a, 0));
    }
    EXPECT_EQ(multiply(s, multiply(s, x, y), z), multiply(s, x, multiply(s, y, z)));
  }
}

TEST(Tensor, RotationIdentitiesOnRandomPotentials) {
  std::mt19937 rng(2);
  std::vector<Species> fixtures{three_cycle_species(), complex_cycle()};
  for (const Species& s : fixtures)
    for (int deg = 2; deg <= 4; ++deg) {
      TensorElement w = random_potential(s, 3 * (deg - 1), 3, rng);
      ASSERT_TRUE(is_potential(s, w));
      EXPECT_EQ(epsilon_l(s, epsilon_r(s, w)), w);
      EXPECT_EQ(epsilon_r(s, epsilon_l(s, w)), w);
      EXPECT_TRUE(is_potential(s, epsilon_l(s, w)));
    }
}
