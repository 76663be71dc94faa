#include <gtest/gtest.h>

#include "spwp/examples.hpp"
#include "spwp/io.hpp"
#include "spwp/mutation.hpp"

using namespace spwp;
using namespace spwp::examples;

namespace {

std::string fixture(const std::string& name) { return std::string(SPWP_FIXTURE_DIR) + "/" + name; }

void expect_same_species(const Species& a, const Species& b) {
  ASSERT_EQ(a.vertices().size(), b.vertices().size());
  for (size_t v = 0; v < a.vertices().size(); ++v) {
    EXPECT_EQ(a.vertex(int(v)).id, b.vertex(int(v)).id);
    EXPECT_TRUE(same_field(a.field(int(v)), b.field(int(v))));
    EXPECT_EQ(a.vertex(int(v)).trace_scale, b.vertex(int(v)).trace_scale);
  }
  ASSERT_EQ(a.arrows().size(), b.arrows().size());
  for (size_t k = 0; k < a.arrows().size(); ++k) {
    const Arrow &x = a.arrow(int(k)), &y = b.arrow(int(k));
    EXPECT_EQ(x.id, y.id);
    EXPECT_EQ(x.source, y.source);
    EXPECT_EQ(x.target, y.target);
    EXPECT_TRUE(x.M == y.M) << x.id;
  }
}

void expect_round_trip(const Species& s, const TensorElement& w, const std::optional<AlgebraMorphism>& g = {}) {
  const std::string text = emit_document(s, w, g);
  SpeciesDocument d = parse_document(text);
  expect_same_species(s, d.species);
  EXPECT_EQ(d.potential, w);
  EXPECT_EQ(d.automorphism.has_value(), g.has_value());
  EXPECT_EQ(emit_document(d.species, d.potential, d.automorphism), text);
}

std::string parse_error_where(const std::string& text) {
  try {
    parse_document(text);
  } catch (const ParseError& e) {
    return e.where();
  }
  return "<no error>";
}

}  // namespace

TEST(Io, MinimalDocument) {
  SpeciesDocument d = load_document(fixture("empty.species"));
  EXPECT_EQ(d.species.vertices().size(), 1u);
  EXPECT_TRUE(d.species.arrows().empty());
  EXPECT_TRUE(d.potential.is_zero());
}

TEST(Io, FixturesMatchBuiltInExamples) {
  expect_same_species(load_document(fixture("f4.species")).species, f4_species());
  expect_same_species(load_document(fixture("a3.species")).species, a3_species());
  expect_same_species(load_document(fixture("b2.species")).species, b2_species());
  expect_same_species(load_document(fixture("a2.species")).species, a2_species());
  Species c = three_cycle_species();
  SpeciesDocument d = load_document(fixture("three_cycle.species"));
  expect_same_species(d.species, c);
  EXPECT_EQ(d.potential, three_cycle_potential(c));
}

TEST(Io, A3xB2PotentialHasSixTerms) {
  SpeciesDocument d = load_document(fixture("a3xb2.species"));
  EXPECT_EQ(d.species.arrows().size(), 9u);
  EXPECT_EQ(d.potential.size(), 6u);
  EXPECT_TRUE(is_potential(d.species, d.potential));
  EXPECT_TRUE(is_reduced(d.potential));
}

TEST(Io, RoundTripFixtures) {
  for (const char* f : {"empty", "a2", "a3", "b2", "f4", "three_cycle", "qeta", "a3xb2"}) {
    SCOPED_TRACE(f);
    SpeciesDocument d = load_document(fixture(std::string(f) + ".species"));
    expect_round_trip(d.species, d.potential);
  }
}

TEST(Io, RoundTripMutatedSpeciesAndAutomorphism) {
  SpeciesDocument d = load_document(fixture("a3xb2.species"));
  auto a = compute_jacobian(d.species, d.potential);
  auto g = permutation_morphism(d.species, nakayama_permutation(*a));
  ASSERT_TRUE(g);
  OrbitMutation m = mutate_orbit(d.species, d.potential, *g, {d.species.vertex_index("5")});
  expect_round_trip(m.result.species, m.result.potential, m.gamma);
}

TEST(Io, RandomPotentialsRoundTrip) {
  std::mt19937 rng(7);
  Species s = load_document(fixture("a3xb2.species")).species;
  for (int k = 0; k < 5; ++k) expect_round_trip(s, random_potential(s, 3 + k % 2, 4, rng));
}

TEST(Io, LocatedErrors) {
  EXPECT_EQ(parse_error_where("{\n  \"vertices\": [\n    {\"id\": \"1\"},,\n  ]\n}"), "line 3");
  EXPECT_EQ(parse_error_where(R"({"vertices": [{"id": "1"}], "arrows": [{"id": "a", "source": "1", "target": "9", "carrier": "Q"}]})"),
            "/arrows/0/target");
  EXPECT_EQ(parse_error_where(R"({"vertices": [{"id": "1", "trace_scale": "1/x"}]})"), "/vertices/0/trace_scale");
  EXPECT_EQ(parse_error_where(R"({"vertices": [{"id": "1", "field": "C"}]})"), "/vertices/0/field");
  EXPECT_EQ(parse_error_where(R"({"arrows": []})"), "/");
  EXPECT_EQ(parse_error_where(R"({"vertices": [{"id": "1"}, {"id": "2"}],
      "arrows": [{"id": "a", "source": "1", "target": "2", "carrier": "Q"}],
      "potential": [{"coefficient": ["1"], "word": [{"arrow": "a", "element": ["1", "2"]}]}]})"),
            "/potential/0/word/0/element");
  EXPECT_EQ(parse_error_where(R"({"vertices": [{"id": "1"}, {"id": "2"}],
      "arrows": [{"id": "a", "source": "1", "target": "2", "carrier": "Q"}],
      "potential": [{"coefficient": ["1"], "word": [{"arrow": "a", "element": ["1"]}, {"arrow": "a", "element": ["1"]}]}]})"),
            "/potential/0/word/1");
}

TEST(Io, InvalidSpeciesIsAValidationError) {
  // ℂ cannot be a ℚ-ℚ bimodule through the carrier construction.
  EXPECT_THROW(parse_document(R"({"fields": [{"name": "C", "min_poly": ["1", "0", "1"]}],
      "vertices": [{"id": "1"}, {"id": "2", "field": "C"}],
      "arrows": [{"id": "a", "source": "1", "target": "2", "carrier": "C", "left_twist": 5}]})"),
               Error);
  EXPECT_THROW(parse_document(R"({"vertices": [{"id": "1", "trace_scale": "0"}]})"), DegenerateTrace);
}
