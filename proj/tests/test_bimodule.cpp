#include <gtest/gtest.h>

#include <random>

#include "spwp/examples.hpp"

using namespace spwp;
using namespace spwp::examples;

namespace {

Vec random_vec(int n, std::mt19937& rng) {
  std::uniform_int_distribution<int> d(-6, 6);
  Vec v(n);
  for (Q& x : v) x = Q(d(rng), 1 + std::abs(d(rng))), x.canonicalize();
  return v;
}

VertexField vf(const FieldPtr& f, Q scale = 1) { return {"v", f, scale}; }

}  // namespace

TEST(Bimodule, TrivialCarrier) {
  auto q = NumberField::rationals();
  Bimodule m = build_from_carrier(q, q, q);
  EXPECT_EQ(m.dim(), 1);
  EXPECT_EQ(m.right_basis().size(), 1u);
  EXPECT_EQ(m.left_basis().size(), 1u);
  auto d = dualize(m, vf(q), vf(q));
  EXPECT_EQ(d.pairing.left(d.under_star[0], m.right_basis()[0]), Vec{Q(1)});
}

TEST(Bimodule, GaussianQBimoduleBasisSizes) {
  // Left Q[i], right Q: two right generators, one left generator.
  Bimodule m = build_from_carrier(NumberField::rationals(), complex_field(), complex_field());
  EXPECT_EQ(m.dim(), 2);
  EXPECT_EQ(m.right_basis().size(), 2u);
  EXPECT_EQ(m.left_basis().size(), 1u);
  // The B₂ arrow ℂ → ℝ has the field on the source side instead.
  Bimodule b = build_from_carrier(complex_field(), NumberField::rationals(), complex_field());
  EXPECT_EQ(b.right_basis().size(), 1u);
  EXPECT_EQ(b.left_basis().size(), 2u);
}

TEST(Bimodule, TwistedLeftAction) {
  auto f = eta_field();
  Bimodule m = build_from_carrier(f, f, f, 1, 0);
  EXPECT_EQ(m.left_gen() * unit_vector(3, 0), (Vec{Q(-1), Q(0), Q(2)}));
  EXPECT_EQ(m.right_gen() * unit_vector(3, 0), (Vec{Q(0), Q(1), Q(0)}));
}

TEST(Bimodule, RejectsNonCommutingActions) {
  auto c = complex_field();
  Mat l = c->generator_matrix();
  Mat r(2, 2);  // a conjugate of l that does not commute with it
  r(0, 0) = 1, r(0, 1) = -2, r(1, 0) = 1, r(1, 1) = -1;
  EXPECT_THROW(Bimodule(c, c, l, r), ValidationError);
  EXPECT_NO_THROW(Bimodule(c, c, l, l));
  EXPECT_THROW(Bimodule(c, NumberField::rationals(), l, l), ValidationError);
}

TEST(Bimodule, NoEmbedding) {
  EXPECT_THROW(build_from_carrier(eta_field(), complex_field(), complex_field()), NoEmbedding);
}

TEST(Bimodule, DualityAndReproducingIdentities) {
  std::mt19937 rng(3);
  Species s = f4_species();
  Species e = eta_species();
  for (const Species* sp : {&s, &e})
    for (size_t a = 0; a < sp->arrows().size(); ++a) {
      const Bimodule& m = sp->arrow(int(a)).M;
      const DualBimodule& d = sp->dual(int(a));
      const FieldPtr fs = m.right_field(), ft = m.left_field();
      // 𝔟(a*⊗b) = δ on the right basis and 𝔟(a'⊗b'*) = δ on the left basis.
      for (size_t i = 0; i < m.right_basis().size(); ++i)
        for (size_t j = 0; j < m.right_basis().size(); ++j)
          EXPECT_EQ(d.pairing.left(d.under_star[i], m.right_basis()[j]),
                    (i == j ? FieldElement::one(fs) : FieldElement::zero(fs)).coords());
      for (size_t i = 0; i < m.left_basis().size(); ++i)
        for (size_t j = 0; j < m.left_basis().size(); ++j)
          EXPECT_EQ(d.pairing.right(m.left_basis()[i], d.over_star[j]),
                    (i == j ? FieldElement::one(ft) : FieldElement::zero(ft)).coords());
      for (int it = 0; it < 5; ++it) {
        Vec x = random_vec(m.dim(), rng), xi = random_vec(m.dim(), rng);
        Vec acc(m.dim());
        for (size_t i = 0; i < m.right_basis().size(); ++i)
          acc = add(acc, m.right_action(d.pairing.left(d.under_star[i], x)) * m.right_basis()[i]);
        EXPECT_EQ(acc, x);
        acc = Vec(m.dim());
        for (size_t i = 0; i < m.left_basis().size(); ++i)
          acc = add(acc, m.left_action(d.pairing.right(x, d.over_star[i])) * m.left_basis()[i]);
        EXPECT_EQ(acc, x);
        acc = Vec(m.dim());
        for (size_t i = 0; i < m.right_basis().size(); ++i)
          acc = add(acc, d.dual.left_action(d.pairing.left(xi, m.right_basis()[i])) * d.under_star[i]);
        EXPECT_EQ(acc, xi);
        acc = Vec(m.dim());
        for (size_t i = 0; i < m.left_basis().size(); ++i)
          acc = add(acc, d.dual.right_action(d.pairing.right(m.left_basis()[i], xi)) * d.over_star[i]);
        EXPECT_EQ(acc, xi);
      }
    }
}

TEST(Bimodule, DoubleDualIsIdentical) {
  Species s = f4_species();
  for (size_t a = 0; a < s.arrows().size(); ++a) {
    const Arrow& ar = s.arrow(int(a));
    const DualBimodule& d = s.dual(int(a));
    DualBimodule dd = dualize(d.dual, s.vertex(ar.target), s.vertex(ar.source));
    EXPECT_EQ(dd.dual.left_gen(), ar.M.left_gen());
    EXPECT_EQ(dd.dual.right_gen(), ar.M.right_gen());
    EXPECT_EQ(dd.dual.right_basis(), ar.M.right_basis());
    EXPECT_EQ(dd.dual.left_basis(), ar.M.left_basis());
  }
}

TEST(Bimodule, F4IdentificationOfComplexDual) {
  // ₃ℂ₂* ≅ ₂ℂ₃ by 1* ↦ 1, i* ↦ −i; with t = Re the dual of 1 is 1*.
  Species s = f4_species();
  const DualBimodule& d = s.dual(1);
  ASSERT_EQ(d.under_star.size(), 1u);
  EXPECT_EQ(d.under_star[0], (Vec{Q(1), Q(0)}));
  // The map z ↦ φ(z) with φ(1) = 1*, φ(i) = −i* is left ℂ-linear.
  Mat phi(2, 2);
  phi(0, 0) = 1, phi(1, 1) = -1;
  EXPECT_EQ(d.dual.left_gen() * phi, phi * complex_field()->generator_matrix());
}

TEST(Bimodule, LambdaTildeHat) {
  Species s = f4_species();
  auto base = lambda_tilde_hat(s, 2, FieldElement::rational(s.field(2), Q(5)));
  for (const auto& [arrow, m] : base.tilde)
    for (size_t r = 0; r < m.size(); ++r)
      for (size_t c = 0; c < m.size(); ++c) EXPECT_EQ(m[r][c].coords()[0], r == c ? Q(5) : Q(0));
  // λ = i at vertex 2 on \underline{(₃ℂ₂)*}: solve λ·u_c = Σ_r u_r m_rc directly.
  FieldElement i = FieldElement::generator(s.field(1));
  auto lm = lambda_tilde_hat(s, 1, i);
  ASSERT_EQ(lm.tilde.size(), 1u);
  const auto& m = lm.tilde[0].second;
  const Bimodule& dual = s.dual(1).dual;
  const auto& u = dual.right_basis();
  ASSERT_EQ(u.size(), 2u);
  for (size_t c = 0; c < 2; ++c) {
    auto sol = solve(Mat::from_columns(u, 2), dual.left_action(i.coords()) * u[c]);
    ASSERT_TRUE(sol);
    for (size_t r = 0; r < 2; ++r) EXPECT_EQ(m[r][c].coords()[0], (*sol)[r]);
  }
  ASSERT_EQ(lm.hat.size(), 1u);
  EXPECT_EQ(lm.hat[0].second.size(), 1u);
}

TEST(Bimodule, TensorOverVertexDimensions) {
  Species s = f4_species();
  Bimodule t = tensor_over_vertex(s.arrow(2).M, s.arrow(1).M);
  EXPECT_EQ(t.dim(), 2);
  EXPECT_EQ(t.dim() * s.field(2)->degree(), s.arrow(2).M.dim() * s.arrow(1).M.dim());
  auto c = complex_field();
  Bimodule cr = build_from_carrier(NumberField::rationals(), c, c);
  Bimodule rc = build_from_carrier(c, NumberField::rationals(), c);
  Bimodule cc = tensor_over_vertex(cr, rc);
  EXPECT_EQ(cc.dim(), 4);
  EXPECT_EQ(cc.right_basis().size(), 2u);
  EXPECT_EQ(cc.left_basis().size(), 2u);
  EXPECT_THROW(tensor_over_vertex(rc, rc), VertexMismatch);
  Bimodule qq = tensor_over_vertex(build_from_carrier(NumberField::rationals(), NumberField::rationals(), NumberField::rationals()),
                                   build_from_carrier(NumberField::rationals(), NumberField::rationals(), NumberField::rationals()));
  EXPECT_EQ(qq.dim(), 1);
}

TEST(Bimodule, TensorIsBalanced) {
  std::mt19937 rng(5);
  auto c = complex_field();
  Bimodule rc = build_from_carrier(c, NumberField::rationals(), c);
  Bimodule cc = build_from_carrier(c, c, c);
  for (int it = 0; it < 10; ++it) {
    Vec x = random_vec(2, rng), y = random_vec(2, rng), d = random_vec(2, rng);
    EXPECT_EQ(tensor_element(rc, cc, rc.right_action(d) * x, y), tensor_element(rc, cc, x, cc.left_action(d) * y));
  }
}

TEST(Bimodule, CasimirPairs) {
  Species s = f4_species();
  // ₂ℂ₁: under = {1}, so c_α = 1⊗1*; over = {1} as well.
  auto c = casimir_pair(s.arrow(0).M, s.dual(0));
  EXPECT_EQ(c.c_alpha.size(), 2u);
  EXPECT_FALSE(is_zero(c.c_alpha));
  // Rank-one Q arrow: 1⊗1*.
  auto r = casimir_pair(s.arrow(2).M, s.dual(2));
  EXPECT_EQ(r.c_alpha, Vec{Q(1)});
}
