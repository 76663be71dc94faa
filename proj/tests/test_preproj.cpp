#include <gtest/gtest.h>

#include "spwp/examples.hpp"
#include "spwp/preproj.hpp"

using namespace spwp;
using namespace spwp::examples;

TEST(Preproj, DoubleCasimirOfA1IsZero) { EXPECT_TRUE(double_casimir(a1_species()).is_zero()); }

TEST(Preproj, DoubleCasimirOfA2) {
  Species s = a2_species();
  Species d = double_species(s);
  ASSERT_EQ(d.arrows().size(), 2u);
  EXPECT_EQ(d.arrow(1).id, "a*");
  // With a = 1 the dual basis is 1*, so c = a·a* − a*·a.
  TensorElement expected = multiply(d, letter_element(d, 0, 0), letter_element(d, 1, 0)) -
                           multiply(d, letter_element(d, 1, 0), letter_element(d, 0, 0));
  EXPECT_EQ(double_casimir(s, d), expected);
}

TEST(Preproj, DoubleCasimirIsCentral) {
  for (const Species& s : {b2_species(), f4_species(), eta_species()}) {
    Species d = double_species(s);
    TensorElement c = double_casimir(s, d);
    size_t terms = 0;
    for (size_t a = 0; a < s.arrows().size(); ++a)
      terms += s.arrow(int(a)).M.right_basis().size() + s.arrow(int(a)).M.left_basis().size();
    EXPECT_LE(c.size(), terms * d.field(0)->degree() * d.field(0)->degree());
    EXPECT_FALSE(c.is_zero());
    for (size_t v = 0; v < d.vertices().size(); ++v) {
      TensorElement g = vertex_scalar(d, int(v), FieldElement::generator(d.field(int(v))));
      EXPECT_EQ(multiply(d, g, c), multiply(d, c, g)) << "vertex " << v;
    }
  }
}

TEST(Preproj, RelationFamiliesOfA2TimesA2) {
  BasicProduct bp = basic_version(species_product(a2_species(), a2_species()));
  RelationSet r = relation_set(bp);
  EXPECT_EQ(r.casimir_first.size(), 2u);
  EXPECT_EQ(r.casimir_second.size(), 2u);
  EXPECT_EQ(r.commutators.size(), 1u);
  EXPECT_EQ(r.commutators[0].size(), 2u);
  for (const TensorElement& x : r.all()) {
    EXPECT_EQ(x.min_degree(), 2);
    EXPECT_EQ(x.max_degree(), 2);
  }
}

TEST(Preproj, ArrowlessSecondFactorHasNoRelations) {
  BasicProduct bp = basic_version(species_product(a2_species(), a1_species()));
  EXPECT_TRUE(relation_set(bp).all().empty());
  EXPECT_TRUE(verify_ideal_equality(a2_species(), a1_species()));
}

TEST(Preproj, IdealEqualityA2TimesA2) {
  IdealComparison c = compare_ideals(a2_species(), a2_species());
  EXPECT_TRUE(c.relations_in_jacobian);
  EXPECT_TRUE(c.jacobian_in_relations);
  for (const auto& [j, r] : c.strata) EXPECT_EQ(j, r);
}

TEST(Preproj, WrongCommutatorIsDetected) {
  BasicProduct bp = basic_version(species_product(a2_species(), a2_species()));
  const Species& s = bp.species;
  auto a = compute_jacobian(s, product_potential(bp));
  RelationSet r = relation_set(bp);
  for (const TensorElement& x : r.all()) EXPECT_TRUE(a->in_ideal(x));
  // The anticommutator is not a relation of Π₃.
  TensorElement bad;
  for (const auto& [w, c] : r.commutators[0].terms()) bad.add_term(w, FieldElement::one(c.field()));
  EXPECT_FALSE(a->in_ideal(bad));
}

TEST(Preproj, IdealEqualityA3TimesB2) { EXPECT_TRUE(verify_ideal_equality(a3_species(), b2_species())); }

TEST(Preproj, IdealEqualityB2TimesB2) { EXPECT_TRUE(verify_ideal_equality(b2_species(), b2_species())); }

TEST(Preproj, CycleDoesNotStabilize) {
  // The 3-cycle is not acyclic; its square has an infinite Jacobian algebra.
  EXPECT_THROW(compare_ideals(three_cycle_species(), a2_species(), 4), NotStabilized);
}
