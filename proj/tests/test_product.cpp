#include <gtest/gtest.h>

#include "spwp/examples.hpp"
#include "spwp/jacobian.hpp"
#include "spwp/product.hpp"

using namespace spwp;
using namespace spwp::examples;

namespace {

Species single(const VertexField& v) { return Species({v}, {}); }

Species one_arrow(VertexField s, VertexField t, const FieldPtr& carrier) {
  s.id = "s", t.id = "t";
  std::vector<VertexField> v{s, t};
  return Species(v, {carrier_arrow(v, "a", 0, 1, carrier)});
}

struct Counts {
  int vertices = 0, arrows = 0, tagged = 0;
};

Counts table_counts(const Species& s1, const Species& s2) {
  BasicProduct bp = basic_version(species_product(s1, s2));
  Counts c;
  c.vertices = int(bp.species.vertices().size());
  for (size_t k = 0; k < bp.pieces.size(); ++k) {
    if (bp.product.arrows[bp.pieces[k].arrow].block == ProductArrow::Block::DualDual) continue;
    ++c.arrows;
    if (bp.sigma_tagged(int(k))) ++c.tagged;
  }
  return c;
}

void expect_counts(const Counts& c, int v, int a, int t) {
  EXPECT_EQ(c.vertices, v);
  EXPECT_EQ(c.arrows, a);
  EXPECT_EQ(c.tagged, t);
}

}  // namespace

TEST(Product, QuiverTensorShape) {
  Quiver q = quiver_tensor(quiver_of(a3_species()), quiver_of(b2_species()));
  EXPECT_EQ(q.vertices.size(), 6u);
  // 3·1 + 2·2 + 2·1
  ASSERT_EQ(q.arrows.size(), 9u);
  EXPECT_EQ(q.arrows.back().id, "(2R3*,2C1*)");
  EXPECT_EQ(q.arrows.back().source, 1 * 2 + 1);
  EXPECT_EQ(q.arrows.back().target, 2 * 2 + 0);
}

TEST(Product, A1TimesA1) {
  auto r = tensor_species_with_potential(a1_species(), a1_species());
  EXPECT_EQ(r.species.vertices().size(), 1u);
  EXPECT_TRUE(r.potential.is_zero());
}

TEST(Product, A2TimesA2IsTheCommutativeSquareWithADiagonal) {
  auto r = tensor_species_with_potential(a2_species(), a2_species());
  EXPECT_EQ(r.species.vertices().size(), 4u);
  EXPECT_EQ(r.species.arrows().size(), 5u);
  EXPECT_EQ(r.potential.size(), 2u);
  EXPECT_TRUE(is_potential(r.species, r.potential));
  // Π₃ of the commutative square: the square algebra (4 idempotents, 4 arrows,
  // one path of length two) plus the dual arrow. A₂ is not homogeneous, so
  // this is not self-injective.
  auto a = compute_jacobian(r.species, r.potential);
  EXPECT_EQ(a->dim(), 4 + 4 + 1 + 1);
  EXPECT_FALSE(is_self_injective(*a));
}

TEST(Product, A3TimesB2) {
  auto r = tensor_species_with_potential(a3_species(), b2_species());
  EXPECT_EQ(r.species.vertices().size(), 6u);
  EXPECT_EQ(r.species.arrows().size(), 9u);
  EXPECT_EQ(r.potential.size(), 6u);
  EXPECT_EQ(r.potential.min_degree(), 3);
  EXPECT_EQ(r.potential.max_degree(), 3);
  EXPECT_TRUE(is_potential(r.species, r.potential));
  auto a = compute_jacobian(r.species, r.potential);
  EXPECT_TRUE(is_self_injective(*a));
  // Vertices (i,j) ↦ 2i + j; the displayed labels 1..6 are (1,1),(2,1),(3,1),(1,2),(2,2),(3,2).
  std::vector<int> sigma = nakayama_permutation(*a);
  std::vector<int> to_ours{0, 2, 4, 1, 3, 5};
  std::vector<int> displayed{2, 1, 0, 5, 4, 3};  // (1 3)(4 6), zero-based
  for (int i = 0; i < 6; ++i) EXPECT_EQ(sigma[to_ours[i]], to_ours[displayed[i]]);
}

TEST(Product, LiftIsInjective) {
  BasicProduct bp = basic_version(species_product(eta_species(), eta_species()));
  for (size_t a = 0; a < bp.product.arrows.size(); ++a) {
    const int d = bp.product.arrows[a].dim;
    for (int k = 0; k < d; ++k) EXPECT_FALSE(bp.lift(int(a), unit_vector(d, k)).is_zero());
  }
}

TEST(Product, TableOfOneArrowSpecies) {
  const VertexField F = real_vertex("F"), G = complex_vertex("G");
  const FieldPtr C = complex_field(), R = NumberField::rationals();
  Species fg = one_arrow(F, G, C), gf = one_arrow(G, F, C), gg = one_arrow(G, G, C), ff = one_arrow(F, F, R);
  expect_counts(table_counts(single(G), single(G)), 2, 0, 0);
  expect_counts(table_counts(fg, gf), 5, 6, 2);
  expect_counts(table_counts(fg, fg), 5, 6, 2);
  expect_counts(table_counts(gg, gg), 8, 8, 4);
  expect_counts(table_counts(single(G), fg), 3, 2, 1);
  expect_counts(table_counts(single(G), gg), 4, 2, 1);
  expect_counts(table_counts(ff, gg), 4, 4, 0);
  expect_counts(table_counts(single(F), gf), 2, 1, 0);
}

TEST(Product, EtaSquare) {
  BasicProduct bp = basic_version(species_product(eta_species(), eta_species()));
  const Species& s = bp.species;
  EXPECT_EQ(s.vertices().size(), 6u);
  EXPECT_EQ(s.arrows().size(), 11u);
  ASSERT_EQ(bp.vertex_copies[0].size(), 3u);
  EXPECT_EQ(s.vertex(bp.vertex_copies[0][1]).id, "(1,1)#1");

  auto gal = galois_automorphisms(eta_field());
  const int into = bp.vertex_copies[bp.product.vertex_index(1, 0)][0];  // displayed vertex 2
  const int other = bp.vertex_copies[bp.product.vertex_index(0, 1)][0];
  int twisted = 0;
  for (size_t k = 0; k < s.arrows().size(); ++k) {
    const Arrow& a = s.arrow(int(k));
    if (a.source > 2 || (a.target != into && a.target != other)) continue;
    const int tw = intrinsic_twist(a.M);
    ASSERT_GE(tw, 0);
    const int copy = bp.copies[a.source].copy;
    if (a.target == other) {
      EXPECT_EQ(tw, 0);
    } else {
      EXPECT_EQ(tw, copy);
      if (tw != 0) ++twisted;
    }
  }
  EXPECT_EQ(twisted, 2);
  // Copy 2 is σ²: the square of copy 1.
  EXPECT_TRUE(gal[1].compose(gal[1]).image_of_generator.coords() == gal[2].image_of_generator.coords());

  TensorElement w = product_potential(bp);
  EXPECT_TRUE(is_potential(s, w));
  // Three copies, two sides, three dual-basis terms each.
  EXPECT_EQ(w.size(), 18u);
}

TEST(Product, DifferentFieldsAreUnsupported) {
  Species c = Species({complex_vertex("1")}, {});
  Species e = Species({VertexField{"1", eta_field(), Q(1)}}, {});
  EXPECT_THROW(basic_version(species_product(c, e)), UnsupportedAlgebra);
}

TEST(Product, Homogeneity) {
  EXPECT_EQ(homogeneity_l("A3"), Q(2));
  EXPECT_EQ(homogeneity_l("A4"), Q(5, 2));
  EXPECT_EQ(homogeneity_l("B2"), Q(2));
  EXPECT_EQ(homogeneity_l("C3"), Q(3));
  EXPECT_EQ(homogeneity_l("D4"), Q(3));
  EXPECT_EQ(homogeneity_l("E6"), Q(6));
  EXPECT_EQ(homogeneity_l("E7"), Q(9));
  EXPECT_EQ(homogeneity_l("E8"), Q(15));
  EXPECT_EQ(homogeneity_l("F4"), Q(6));
  EXPECT_EQ(homogeneity_l("G2"), Q(3));
  for (const char* bad : {"E9", "H3", "A0", "D3", "", "A", "B1x"}) EXPECT_THROW(homogeneity_l(bad), UnknownType);
}
