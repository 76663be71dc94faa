#include <gtest/gtest.h>

#include "spwp/golden.hpp"

using namespace spwp;

TEST(Golden, CycleNotationSkipsFixedPoints) {
  Species s = examples::three_cycle_species();
  EXPECT_EQ(golden::cycle_notation({0, 1, 2}, s), "id");
  EXPECT_EQ(golden::cycle_notation({1, 2, 0}, s), "(1 2 3)");
}

TEST(Golden, DualOfComplexUnderHalfTrace) {
  FieldPtr c = examples::complex_field();
  Mat d = golden::detail::dual_to_carrier(c, Q(1, 2));
  EXPECT_EQ(d * unit_vector(2, 0), unit_vector(2, 0));
  EXPECT_EQ(d * unit_vector(2, 1), (Vec{Q(0), Q(-1)}));
}

TEST(Golden, SmallWorkedExamplesPass) {
  for (const golden::Check& c : {golden::check_f4_mutation(), golden::check_a3xb2_product(),
                                 golden::check_a3xb2_mutations(), golden::check_table()})
    EXPECT_TRUE(c.pass) << c.criterion << ": " << c.detail;
}

TEST(Golden, PrintedMu2DisplayIsNotAPotential) {
  golden::A3xB2 a = golden::load_a3xb2();
  auto [s, w] = golden::mu2_display(a.species, true);
  EXPECT_FALSE(is_potential(s, w));
  auto [s2, w2] = golden::mu2_display(a.species, false);
  EXPECT_TRUE(is_potential(s2, w2));
}

TEST(Golden, A3xB2NakayamaNeedsConjugation) {
  golden::A3xB2 a = golden::load_a3xb2();
  auto j = compute_jacobian(a.species, a.potential);
  EXPECT_EQ(j->dim(), golden::kA3xB2JacobianDimension);
  NakayamaSearch n = find_nakayama_automorphism(*j);
  ASSERT_EQ(n.candidates.size(), 2u);
  EXPECT_FALSE(n.verified[0]);
  EXPECT_TRUE(n.verified[1]);
  ASSERT_TRUE(n.gamma.has_value());
  EXPECT_EQ(golden::cycle_notation(n.sigma, a.species), "(1 3)(4 6)");
}

TEST(Golden, RationalNakayamaSearchHasOneCandidate) {
  Species s = examples::three_cycle_species();
  auto j = compute_jacobian(s, examples::three_cycle_potential(s));
  NakayamaSearch n = find_nakayama_automorphism(*j);
  ASSERT_EQ(n.candidates.size(), 1u);
  EXPECT_TRUE(n.gamma.has_value());
}
