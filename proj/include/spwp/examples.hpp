#pragma once

// Species from the worked examples, built programmatically. ℝ is modelled by
// Q and ℂ by Q[i]; ℂ-vertices carry the trace Re = ½·Tr.

#include "spwp/tensor.hpp"

namespace spwp::examples {

inline FieldPtr complex_field() {
  static const FieldPtr f = NumberField::make("C", {Q(1), Q(0), Q(1)});
  return f;
}

// Q[η] with η = cos(2π/7).
inline FieldPtr eta_field() {
  static const FieldPtr f = NumberField::make("Qeta", {Q(-1), Q(-4), Q(4), Q(8)});
  return f;
}

inline VertexField real_vertex(const std::string& id) { return {id, NumberField::rationals(), Q(1)}; }
inline VertexField complex_vertex(const std::string& id) { return {id, complex_field(), Q(1, 2)}; }

inline Arrow carrier_arrow(const std::vector<VertexField>& v, const std::string& id, int s,
                           int t, const FieldPtr& carrier, int lt = 0, int rt = 0) {
  return Arrow{id, s, t, build_from_carrier(v[s].field, v[t].field, carrier, lt, rt),
               CarrierInfo{carrier->name(), lt, rt}};
}

inline Species make_species(std::vector<VertexField> v,
                            const std::vector<std::tuple<std::string, int, int, FieldPtr>>& arrows) {
  std::vector<Arrow> a;
  for (const auto& [id, s, t, carrier] : arrows) a.push_back(carrier_arrow(v, id, s, t, carrier));
  return Species(std::move(v), std::move(a));
}

// ℂ --₂ℂ₁--> ℂ --₃ℂ₂--> ℝ --₄ℝ₃--> ℝ
inline Species f4_species() {
  return make_species({complex_vertex("1"), complex_vertex("2"), real_vertex("3"), real_vertex("4")},
                      {{"2C1", 0, 1, complex_field()}, {"3C2", 1, 2, complex_field()},
                       {"4R3", 2, 3, NumberField::rationals()}});
}

// ℝ --₂ℝ₁--> ℝ <--₂ℝ₃-- ℝ
inline Species a3_species() {
  return make_species({real_vertex("1"), real_vertex("2"), real_vertex("3")},
                      {{"2R1", 0, 1, NumberField::rationals()}, {"2R3", 2, 1, NumberField::rationals()}});
}

// ℂ --₂ℂ₁--> ℝ
inline Species b2_species() {
  return make_species({complex_vertex("1"), real_vertex("2")}, {{"2C1", 0, 1, complex_field()}});
}

inline Species a1_species() { return make_species({real_vertex("1")}, {}); }

inline Species a2_species() {
  return make_species({real_vertex("1"), real_vertex("2")}, {{"a", 0, 1, NumberField::rationals()}});
}

// 1 --x--> 2 --y--> 3 --z--> 1 over Q.
inline Species three_cycle_species() {
  return make_species({real_vertex("1"), real_vertex("2"), real_vertex("3")},
                      {{"x", 0, 1, NumberField::rationals()},
                       {"y", 1, 2, NumberField::rationals()},
                       {"z", 2, 0, NumberField::rationals()}});
}

inline TensorElement three_cycle_potential(const Species& s) {
  return multiply(s, {letter_element(s, 2, 0), letter_element(s, 1, 0), letter_element(s, 0, 0)});
}

// Q[η] --(Q[η])--> Q
inline Species eta_species() {
  return make_species({{"1", eta_field(), Q(1)}, real_vertex("2")}, {{"2L1", 0, 1, eta_field()}});
}

}  // namespace spwp::examples

#include <random>

namespace spwp::examples {

inline FieldElement random_field_element(const FieldPtr& f, std::mt19937& rng, int range = 5) {
  std::uniform_int_distribution<int> d(-range, range);
  Vec v(f->degree());
  for (Q& x : v) x = Q(d(rng), 1 + std::abs(d(rng)) % 3), x.canonicalize();
  return FieldElement(f, v);
}

// A random D-central element built from closed walks of the given length.
inline TensorElement random_potential(const Species& s, int degree, int walks, std::mt19937& rng) {
  TensorElement x;
  if (s.arrows().empty()) return x;
  std::uniform_int_distribution<size_t> pick_v(0, s.vertices().size() - 1);
  for (int attempt = 0, made = 0; made < walks && attempt < 200 * walks; ++attempt) {
    int start = int(pick_v(rng)), v = start;
    std::vector<Letter> rev;
    for (int k = 0; k < degree; ++k) {
      auto out = s.arrows_from(v);
      if (out.empty()) break;
      int a = out[std::uniform_int_distribution<size_t>(0, out.size() - 1)(rng)];
      rev.push_back(Letter{a, std::uniform_int_distribution<int>(0, s.letters(a) - 1)(rng)});
      v = s.arrow(a).target;
    }
    if (int(rev.size()) != degree || v != start) continue;
    x.add_term(Word{std::vector<Letter>(rev.rbegin(), rev.rend()), start}, random_field_element(s.field(start), rng));
    ++made;
  }
  return centralize(s, x);
}

}  // namespace spwp::examples
