#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "spwp/coeffalg.hpp"

using namespace spwp;

namespace {

FieldPtr gaussian() { return NumberField::make("C", {Q(1), Q(0), Q(1)}); }
FieldPtr eta_field() { return NumberField::make("Qeta", {Q(-1), Q(-4), Q(4), Q(8)}); }

FieldElement random_element(const FieldPtr& f, std::mt19937& rng) {
  std::uniform_int_distribution<int> d(-9, 9);
  Vec v(f->degree());
  for (Q& x : v) x = Q(d(rng), 1 + std::abs(d(rng))), x.canonicalize();
  return FieldElement(f, v);
}

}  // namespace

TEST(Scalars, GaussianNorm) {
  auto c = gaussian();
  FieldElement a(c, {Q(1), Q(1)}), b(c, {Q(1), Q(-1)});
  EXPECT_EQ(a * b, FieldElement::rational(c, 2));
}

TEST(Scalars, ZeroProductAndNormalisation) {
  auto f = eta_field();
  EXPECT_EQ(f->min_poly(), (std::vector<Q>{Q(-1, 8), Q(-1, 2), Q(1, 2), Q(1)}));
  EXPECT_TRUE((FieldElement::generator(f) * FieldElement::zero(f)).is_zero());
}

TEST(Scalars, Traces) {
  auto c = gaussian();
  EXPECT_EQ(FieldElement::one(c).trace(), 2);
  EXPECT_EQ(FieldElement::generator(c).trace(), 0);
  EXPECT_EQ(FieldElement::generator(eta_field()).trace(), Q(-1, 2));
}

TEST(Scalars, MinimalPolynomialOfCosine) {
  // 8x³+4x²−4x−1 annihilates cos(2π/7) numerically.
  double x = std::cos(2 * M_PI / 7);
  EXPECT_NEAR(8 * x * x * x + 4 * x * x - 4 * x - 1, 0.0, 1e-12);
}

TEST(Scalars, GaloisGroupOfEta) {
  auto f = eta_field();
  auto g = galois_automorphisms(f);
  ASSERT_EQ(g.size(), 3u);
  EXPECT_TRUE(g[0].is_identity());
  // σ(η) = 2η²−1; σ²(η) = 1/2 − η − 2η² (reduction computed independently).
  EXPECT_EQ(g[1].image_of_generator.coords(), (Vec{Q(-1), Q(0), Q(2)}));
  EXPECT_EQ(g[2].image_of_generator.coords(), (Vec{Q(1, 2), Q(-1), Q(-2)}));
  EXPECT_EQ(g[1].compose(g[1]).image_of_generator, g[2].image_of_generator);
  EXPECT_TRUE(g[1].compose(g[2]).is_identity());
}

TEST(Scalars, GaloisSmallCases) {
  EXPECT_EQ(galois_automorphisms(NumberField::rationals()).size(), 1u);
  auto g = galois_automorphisms(gaussian());
  ASSERT_EQ(g.size(), 2u);
  EXPECT_EQ(g[1].image_of_generator.coords(), (Vec{Q(0), Q(-1)}));
  EXPECT_THROW(galois_automorphisms(NumberField::make("cbrt2", {Q(-2), Q(0), Q(0), Q(1)})), NotGalois);
}

TEST(Scalars, GaloisQuarticFallback) {
  // Q(ζ₅): x⁴+x³+x²+x+1, cyclic of order 4.
  auto f = NumberField::make("zeta5", {Q(1), Q(1), Q(1), Q(1), Q(1)});
  auto g = galois_automorphisms(f);
  ASSERT_EQ(g.size(), 4u);
  for (const auto& s : g) EXPECT_TRUE(evaluate(f->min_poly(), s.image_of_generator).is_zero());
  for (const auto& s : g)
    for (const auto& t : g) {
      auto st = s.compose(t);
      EXPECT_TRUE(std::any_of(g.begin(), g.end(), [&](const auto& u) { return u.image_of_generator == st.image_of_generator; }));
    }
}

TEST(Scalars, RejectsReducible) {
  EXPECT_THROW(NumberField::make("bad", {Q(-1), Q(0), Q(1)}), ValidationError);
  EXPECT_THROW(NumberField::make("bad2", {Q(1), Q(2), Q(1)}), ValidationError);
}

TEST(Scalars, FieldMismatchAndDivision) {
  EXPECT_THROW(FieldElement::one(gaussian()) + FieldElement::one(eta_field()), FieldMismatch);
  EXPECT_THROW(FieldElement::zero(gaussian()).inverse(), DivisionByZero);
}

TEST(Scalars, RandomInverseAndTraceSymmetry) {
  std::mt19937 rng(7);
  for (const auto& f : {gaussian(), eta_field()})
    for (int it = 0; it < 50; ++it) {
      FieldElement a = random_element(f, rng), b = random_element(f, rng);
      EXPECT_EQ((a * b).trace(), (b * a).trace());
      if (!a.is_zero()) EXPECT_EQ(a.inverse() * a, FieldElement::one(f));
    }
}

TEST(CoeffAlg, CasimirOfGaussianField) {
  CoefficientAlgebra d{{{"1", gaussian(), Q(1)}}};
  auto c = casimir_of_D(d);
  ASSERT_EQ(c.terms[0].size(), 2u);
  EXPECT_EQ(c.terms[0][0].second.coords(), (Vec{Q(1, 2), Q(0)}));
  EXPECT_EQ(c.terms[0][1].second.coords(), (Vec{Q(0), Q(-1, 2)}));
}

TEST(CoeffAlg, CasimirOfRationals) {
  CoefficientAlgebra d{{{"1", NumberField::rationals(), Q(1)}}};
  auto c = casimir_of_D(d);
  EXPECT_EQ(c.terms[0][0].second, FieldElement::one(NumberField::rationals()));
}

TEST(CoeffAlg, CasimirBasisIndependenceAndReproduction) {
  std::mt19937 rng(11);
  for (const auto& f : {gaussian(), eta_field()}) {
    VertexField v{"v", f, Q(1, 3)};
    auto c = casimir_of_D(CoefficientAlgebra{{v}});
    Vec reference = casimir_tensor(c.terms[0]);
    for (int it = 0; it < 10; ++it) {
      std::vector<Vec> basis;
      do {
        basis.clear();
        for (int j = 0; j < f->degree(); ++j) basis.push_back(random_element(f, rng).coords());
      } while (rank(Mat::from_columns(basis, f->degree())) < f->degree());
      auto dual = trace_dual_basis(v, basis);
      std::vector<std::pair<FieldElement, FieldElement>> terms;
      for (size_t j = 0; j < basis.size(); ++j) terms.emplace_back(FieldElement(f, basis[j]), FieldElement(f, dual[j]));
      EXPECT_EQ(casimir_tensor(terms), reference);
      FieldElement x = random_element(f, rng), acc = FieldElement::zero(f);
      for (const auto& [e, ebar] : c.terms[0]) acc = acc + v.trace((x * ebar).coords()) * e;
      EXPECT_EQ(acc, x);
    }
  }
}

TEST(CoeffAlg, DegenerateTrace) {
  VertexField v{"v", gaussian(), Q(0)};
  EXPECT_THROW(casimir_of_D(CoefficientAlgebra{{v}}), DegenerateTrace);
}
