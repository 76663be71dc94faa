#pragma once

// Semi-mutation of a species with potential at a vertex, and mutation along
// an orbit of the Nakayama permutation together with the transported
// automorphism.

#include <set>

#include "spwp/jacobian.hpp"

namespace spwp {

// Where an arrow of a mutated species came from, as indices into the
// species that was mutated.
struct Provenance {
  enum class Kind { Untouched, Dual, Composite };
  Kind kind = Kind::Untouched;
  int first = -1;   // the arrow itself, α for α*, or α in [αβ]
  int second = -1;  // β in [αβ]

  friend bool operator==(const Provenance& a, const Provenance& b) {
    return a.kind == b.kind && a.first == b.first && a.second == b.second;
  }
};

struct MutationResult {
  Species species;
  TensorElement potential;
  std::vector<Provenance> provenance;  // one per arrow of species
  std::vector<int> vertices;           // the vertices mutated at, in order
};

inline std::string dual_arrow_id(const std::string& id) {
  if (!id.empty() && id.back() == '*') return id.substr(0, id.size() - 1);
  return id + "*";
}

inline std::string composite_arrow_id(const std::string& alpha, const std::string& beta) {
  return "[" + alpha + "," + beta + "]";
}

namespace detail {

inline void require_no_loops(const Species& s, int k) {
  for (int a : s.arrows_from(k))
    if (s.arrow(a).target == k) throw LoopAtVertex("arrow '" + s.arrow(a).id + "' is a loop at '" + s.vertex(k).id + "'");
}

// Rotates the parts of w based at the given vertices, using one operator
// throughout; returns the number of rotation steps taken.
inline int rotate_parts(const Species& s, const TensorElement& w, const std::set<int>& at, bool right,
                        TensorElement& out) {
  out = TensorElement{};
  TensorElement rest;
  for (const auto& [word, c] : w.terms()) (at.count(word.vertex) ? rest : out).add_term(word, c);
  int steps = 0;
  const int bound = std::max(1, w.max_degree()) + 1;
  while (!rest.is_zero()) {
    if (++steps > bound) throw LoopAtVertex("rotation does not leave the vertex set");
    TensorElement r = right ? epsilon_r(s, rest) : epsilon_l(s, rest);
    rest = TensorElement{};
    for (const auto& [word, c] : r.terms()) (at.count(word.vertex) ? rest : out).add_term(word, c);
  }
  return steps;
}

}  // namespace detail

// A cyclically equivalent potential with e_v·W = 0 = W·e_v for every v in
// the set. Of ε_r and ε_l the one needing fewer steps is used, ε_r on ties.
inline TensorElement rotate_off_vertices(const Species& s, const TensorElement& w, const std::set<int>& vertices) {
  for (int k : vertices) detail::require_no_loops(s, k);
  TensorElement viaR, viaL;
  int r = detail::rotate_parts(s, w, vertices, true, viaR);
  int l = detail::rotate_parts(s, w, vertices, false, viaL);
  return l < r ? viaL : viaR;
}

inline TensorElement rotate_off_vertex(const Species& s, const TensorElement& w, int k) {
  return rotate_off_vertices(s, w, {k});
}

inline MutationResult semi_mutate(const Species& s, const TensorElement& w, int k) {
  detail::require_no_loops(s, k);
  const std::vector<int> out = s.arrows_from(k), in = s.arrows_to(k);
  for (int a : out)
    for (int b : in)
      if (s.arrow(a).target == s.arrow(b).source)
        throw TwoCycleAtVertex("arrows '" + s.arrow(a).id + "' and '" + s.arrow(b).id + "' form a 2-cycle");
  for (const auto& [word, c] : w.terms())
    if (word.vertex == k) throw NotRotated("the potential has terms starting at '" + s.vertex(k).id + "'");

  std::vector<Arrow> arrows;
  std::vector<Provenance> prov;
  for (size_t a = 0; a < s.arrows().size(); ++a) {
    const Arrow& x = s.arrow(int(a));
    if (x.source != k && x.target != k) {
      arrows.push_back(x);
      prov.push_back({Provenance::Kind::Untouched, int(a), -1});
      continue;
    }
    arrows.push_back(Arrow{dual_arrow_id(x.id), x.target, x.source, s.dual(int(a)).dual, {}});
    prov.push_back({Provenance::Kind::Dual, int(a), -1});
  }
  std::map<std::pair<int, int>, int> composite;
  for (int a : out)
    for (int b : in) {
      const Arrow& x = s.arrow(a);
      const Arrow& y = s.arrow(b);
      composite[{a, b}] = int(arrows.size());
      arrows.push_back(Arrow{composite_arrow_id(x.id, y.id), y.source, x.target, tensor_over_vertex(x.M, y.M), {}});
      prov.push_back({Provenance::Kind::Composite, a, b});
    }
  Species t(s.vertices(), std::move(arrows));

  // [W]: every passage α ⊗ β through k becomes one letter of [αβ].
  TensorElement wp;
  for (const auto& [word, c] : w.terms()) {
    Word nw{{}, word.vertex};
    for (size_t p = 0; p < word.letters.size(); ++p) {
      const Letter& l = word.letters[p];
      if (s.arrow(l.arrow).source == k && p + 1 < word.letters.size()) {
        const Letter& m = word.letters[p + 1];
        nw.letters.push_back(Letter{composite.at({l.arrow, m.arrow}), l.index * s.letters(m.arrow) + m.index});
        ++p;
      } else {
        nw.letters.push_back(l);
      }
    }
    wp.add_term(nw, FieldElement(t.field(nw.vertex), c.coords()));
  }

  // Δ = Σ a*·[a⊗b]·b* over a ∈ \overline{α}, b ∈ \underline{β}.
  for (const auto& [ab, c] : composite) {
    const auto [a, b] = ab;
    const Bimodule& ma = s.arrow(a).M;
    const Bimodule& mb = s.arrow(b).M;
    const int adual = a, bdual = b;  // duals keep their position
    for (size_t i = 0; i < ma.left_basis().size(); ++i)
      for (size_t j = 0; j < mb.right_basis().size(); ++j)
        wp += multiply(t, {arrow_element(t, adual, s.dual(a).over_star[i]),
                           arrow_element(t, c, tensor_element(ma, mb, ma.left_basis()[i], mb.right_basis()[j])),
                           arrow_element(t, bdual, s.dual(b).under_star[j])});
  }
  return MutationResult{std::move(t), std::move(wp), std::move(prov), {k}};
}

// μ_k after rotating W off k.
inline MutationResult mutate(const Species& s, const TensorElement& w, int k) {
  return semi_mutate(s, rotate_off_vertex(s, w, k), k);
}

struct OrbitMutation {
  MutationResult result;
  AlgebraMorphism gamma;
  bool conditions_AB = false;  // whether γ' satisfies (A) and (B) on the result
};

namespace detail {

// Provenance of the arrows of r2 relative to the species that r1 was taken of.
inline std::vector<Provenance> compose_provenance(const std::vector<Provenance>& p1, const std::vector<Provenance>& p2) {
  std::vector<Provenance> out;
  for (const Provenance& p : p2) {
    if (p.kind == Provenance::Kind::Composite) {
      const Provenance& a = p1[p.first];
      const Provenance& b = p1[p.second];
      if (a.kind != Provenance::Kind::Untouched || b.kind != Provenance::Kind::Untouched)
        throw NotSparse("a composite arrow would involve an arrow created earlier in the orbit");
      out.push_back({Provenance::Kind::Composite, a.first, b.first});
    } else if (p.kind == Provenance::Kind::Dual) {
      if (p1[p.first].kind != Provenance::Kind::Untouched)
        throw NotSparse("an arrow would be dualised twice along the orbit");
      out.push_back({Provenance::Kind::Dual, p1[p.first].first, -1});
    } else {
      out.push_back(p1[p.first]);
    }
  }
  return out;
}

}  // namespace detail

inline OrbitMutation mutate_orbit(const Species& s, const TensorElement& w, const AlgebraMorphism& g,
                                  const std::vector<int>& orbit) {
  if (orbit.empty()) throw ValidationError("empty orbit");
  std::set<int> members(orbit.begin(), orbit.end());
  std::set<int> expected;
  for (int v = orbit.front(); expected.insert(v).second;) v = g.vertex_map.at(v);
  if (members != expected || members.size() != orbit.size())
    throw ValidationError("the given vertices do not form one orbit of the permutation");
  for (int v : orbit)
    for (int a : s.arrows_from(v))
      if (members.count(s.arrow(a).target))
        throw NotSparse("arrow '" + s.arrow(a).id + "' joins two vertices of the orbit");
  if (!check_conditions_AB(s, w, g)) throw ConditionsABViolated("γ does not satisfy (A) and (B)");

  std::vector<Provenance> prov;
  for (size_t a = 0; a < s.arrows().size(); ++a) prov.push_back({Provenance::Kind::Untouched, int(a), -1});
  MutationResult cur{s, rotate_off_vertices(s, w, members), prov, {}};
  for (int k : orbit) {
    if (!is_reduced(cur.potential))
      throw NotSparse("the potential before mutating at '" + s.vertex(k).id + "' is not reduced");
    MutationResult next = semi_mutate(cur.species, cur.potential, k);
    next.provenance = detail::compose_provenance(cur.provenance, next.provenance);
    next.vertices = cur.vertices;
    next.vertices.push_back(k);
    cur = std::move(next);
  }

  const Species& t = cur.species;
  std::map<std::tuple<int, int, int>, int> where;
  for (size_t a = 0; a < cur.provenance.size(); ++a) {
    const Provenance& p = cur.provenance[a];
    where[{int(p.kind), p.first, p.second}] = int(a);
  }
  AlgebraMorphism h;
  h.vertex_map = g.vertex_map;
  h.field_maps = g.field_maps;
  for (size_t a = 0; a < cur.provenance.size(); ++a) {
    const Provenance& p = cur.provenance[a];
    const int ga = g.arrow_map[p.first];
    const int gb = p.second >= 0 ? g.arrow_map[p.second] : -1;
    auto it = where.find({int(p.kind), ga, gb});
    if (it == where.end()) throw ConditionsABViolated("γ does not permute the mutated arrows");
    h.arrow_map.push_back(it->second);
    switch (p.kind) {
      case Provenance::Kind::Untouched:
        h.arrow_matrices.push_back(g.arrow_matrices[p.first]);
        break;
      case Provenance::Kind::Dual: {
        // ξ ↦ ξ∘G⁻¹ sends the Casimir element of M_α to that of M_γ(α).
        const Mat& gm = g.arrow_matrices[p.first];
        auto inv = inverse(gm);
        if (!inv) throw ConditionsABViolated("γ is not invertible on arrow '" + s.arrow(p.first).id + "'");
        Mat dm = inv->transpose();
        const Bimodule& src = s.arrow(p.first).M;
        const Bimodule& dst = s.arrow(ga).M;
        Vec image(casimir_pair(dst, s.dual(ga)).c_alpha.size());
        for (size_t i = 0; i < src.right_basis().size(); ++i)
          image = add(image, tensor_element(dst, s.dual(ga).dual, gm * src.right_basis()[i], dm * s.dual(p.first).under_star[i]));
        if (image != casimir_pair(dst, s.dual(ga)).c_alpha)
          throw ConditionsABViolated("the transported dual does not preserve the Casimir element");
        h.arrow_matrices.push_back(dm);
        break;
      }
      case Provenance::Kind::Composite: {
        const Bimodule& ma = s.arrow(p.first).M;
        const Bimodule& mb = s.arrow(p.second).M;
        const Bimodule& na = s.arrow(ga).M;
        const Bimodule& nb = s.arrow(gb).M;
        std::vector<Vec> cols;
        for (size_t i = 0; i < ma.right_basis().size(); ++i)
          for (int e = 0; e < mb.dim(); ++e)
            cols.push_back(tensor_element(na, nb, g.arrow_matrices[p.first] * ma.right_basis()[i],
                                          g.arrow_matrices[p.second] * unit_vector(mb.dim(), e)));
        h.arrow_matrices.push_back(Mat::from_columns(cols, t.arrow(it->second).M.dim()));
        break;
      }
    }
  }
  OrbitMutation om{std::move(cur), std::move(h), false};
  om.conditions_AB = check_conditions_AB(om.result.species, om.result.potential, om.gamma);
  return om;
}

}  // namespace spwp
