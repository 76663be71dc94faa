#pragma once

// Relations of Π₃(T(S¹)⊗T(S²)) written in S(S¹,S²), and a truncated check
// that they generate the same ideal as the cyclic derivatives of W(S¹,S²).

#include "spwp/jacobian.hpp"
#include "spwp/product.hpp"

namespace spwp {

// The double S̄: every arrow α: i→j gains α*: j→i carrying M_α*.
inline Species double_species(const Species& s) {
  std::vector<Arrow> arrows(s.arrows().begin(), s.arrows().end());
  for (size_t a = 0; a < s.arrows().size(); ++a) {
    const Arrow& x = s.arrow(int(a));
    arrows.push_back(Arrow{x.id + "*", x.target, x.source, s.dual(int(a)).dual, {}});
  }
  return Species(s.vertices(), std::move(arrows));
}

// c_S = Σ_α Σ_{a ∈ under α} a·a* − Σ_α Σ_{a' ∈ over α} a'*·a', in T(double_species(s)).
inline TensorElement double_casimir(const Species& s, const Species& doubled) {
  const int n = int(s.arrows().size());
  TensorElement c;
  for (int a = 0; a < n; ++a) {
    const Bimodule& m = s.arrow(a).M;
    const DualBimodule& d = s.dual(a);
    for (size_t k = 0; k < m.right_basis().size(); ++k)
      c += multiply(doubled, arrow_element(doubled, a, m.right_basis()[k]), arrow_element(doubled, n + a, d.under_star[k]));
    for (size_t k = 0; k < m.left_basis().size(); ++k)
      c -= multiply(doubled, arrow_element(doubled, n + a, d.over_star[k]), arrow_element(doubled, a, m.left_basis()[k]));
  }
  return c;
}

inline TensorElement double_casimir(const Species& s) { return double_casimir(s, double_species(s)); }

struct RelationSet {
  std::vector<TensorElement> casimir_first;   // c_{S¹} ⊗ M²₁
  std::vector<TensorElement> casimir_second;  // M¹₁ ⊗ c_{S²}
  std::vector<TensorElement> commutators;     // [m¹⊗1, 1⊗m²]

  std::vector<TensorElement> all() const {
    std::vector<TensorElement> out;
    for (const auto* f : {&casimir_first, &casimir_second, &commutators})
      for (const TensorElement& x : *f)
        if (!x.is_zero()) out.push_back(x);
    return out;
  }
};

// Each family is taken over Q-bases of the arrow spaces; the D-span is
// recovered when the ideal is closed.
inline RelationSet relation_set(const BasicProduct& bp) {
  const ProductSpecies& p = bp.product;
  const Species &s1 = *p.s1, &s2 = *p.s2;
  using B = ProductArrow::Block;
  auto one = [](const Species& s, int v) { return unit_vector(s.field(v)->degree(), 0); };
  auto find = [&](B b, int x, int y) { return detail::find_arrow(p, b, x, y); };
  const Species& t = bp.species;
  RelationSet r;

  for (size_t al = 0; al < s1.arrows().size(); ++al) {
    const Arrow& x = s1.arrow(int(al));
    const int d = x.M.dim();
    for (int k = 0; k < d; ++k) {
      const Vec xs = unit_vector(d, k);  // a vector of M_α*
      for (size_t i = 0; i < s2.vertices().size(); ++i) {
        TensorElement e;
        for (size_t be = 0; be < s2.arrows().size(); ++be) {
          const Arrow& y = s2.arrow(int(be));
          const DualBimodule& dy = s2.dual(int(be));
          const int dd = find(B::DualDual, int(al), int(be));
          if (y.target == int(i)) {
            const int va = find(B::VertexArrow, x.source, int(be));
            for (size_t b = 0; b < y.M.right_basis().size(); ++b)
              e += multiply(t, bp.lift(va, kron(one(s1, x.source), y.M.right_basis()[b])),
                            bp.lift(dd, kron(xs, dy.under_star[b])));
          }
          if (y.source == int(i)) {
            const int va = find(B::VertexArrow, x.target, int(be));
            for (size_t b = 0; b < y.M.left_basis().size(); ++b)
              e -= multiply(t, bp.lift(dd, kron(xs, dy.over_star[b])),
                            bp.lift(va, kron(one(s1, x.target), y.M.left_basis()[b])));
          }
        }
        r.casimir_second.push_back(std::move(e));
      }
    }
  }

  for (size_t be = 0; be < s2.arrows().size(); ++be) {
    const Arrow& y = s2.arrow(int(be));
    const int d = y.M.dim();
    for (int k = 0; k < d; ++k) {
      const Vec ys = unit_vector(d, k);
      for (size_t j = 0; j < s1.vertices().size(); ++j) {
        TensorElement e;
        for (size_t al = 0; al < s1.arrows().size(); ++al) {
          const Arrow& x = s1.arrow(int(al));
          const DualBimodule& dx = s1.dual(int(al));
          const int dd = find(B::DualDual, int(al), int(be));
          if (x.target == int(j)) {
            const int av = find(B::ArrowVertex, int(al), y.source);
            for (size_t a = 0; a < x.M.right_basis().size(); ++a)
              e += multiply(t, bp.lift(av, kron(x.M.right_basis()[a], one(s2, y.source))),
                            bp.lift(dd, kron(dx.under_star[a], ys)));
          }
          if (x.source == int(j)) {
            const int av = find(B::ArrowVertex, int(al), y.target);
            for (size_t a = 0; a < x.M.left_basis().size(); ++a)
              e -= multiply(t, bp.lift(dd, kron(dx.over_star[a], ys)),
                            bp.lift(av, kron(x.M.left_basis()[a], one(s2, y.target))));
          }
        }
        r.casimir_first.push_back(std::move(e));
      }
    }
  }

  for (size_t al = 0; al < s1.arrows().size(); ++al)
    for (size_t be = 0; be < s2.arrows().size(); ++be) {
      const Arrow& x = s1.arrow(int(al));
      const Arrow& y = s2.arrow(int(be));
      const int av_s = find(B::ArrowVertex, int(al), y.source), av_t = find(B::ArrowVertex, int(al), y.target);
      const int va_s = find(B::VertexArrow, x.source, int(be)), va_t = find(B::VertexArrow, x.target, int(be));
      for (int k = 0; k < x.M.dim(); ++k)
        for (int l = 0; l < y.M.dim(); ++l) {
          const Vec m1 = unit_vector(x.M.dim(), k), m2 = unit_vector(y.M.dim(), l);
          r.commutators.push_back(
              multiply(t, bp.lift(av_t, kron(m1, one(s2, y.target))), bp.lift(va_s, kron(one(s1, x.source), m2))) -
              multiply(t, bp.lift(va_t, kron(one(s1, x.target), m2)), bp.lift(av_s, kron(m1, one(s2, y.source)))));
        }
    }
  return r;
}

struct IdealComparison {
  int truncation = 0;
  bool relations_in_jacobian = false;  // ⟨R⟩ ⊆ J
  bool jacobian_in_relations = false;  // J ⊆ ⟨R⟩
  std::vector<std::pair<int, int>> strata;  // (dim J_n, dim ⟨R⟩_n) by word length n

  bool equal() const { return relations_in_jacobian && jacobian_in_relations; }
};

// Both ideals are compared modulo words longer than the truncation at which
// the Jacobian algebra stabilized.
inline IdealComparison compare_ideals(const Species& s1, const Species& s2, int max_degree = 12) {
  BasicProduct bp = basic_version(species_product(s1, s2));
  const Species& s = bp.species;
  TensorElement w = product_potential(bp);
  auto a = compute_jacobian(s, w, max_degree);
  const std::vector<TensorElement> rel = relation_set(bp).all();

  IdealComparison out;
  out.truncation = a->truncation();
  WordSpace ws(s, out.truncation);
  EchelonSpace jac = ideal_closure(ws, a->relations());
  EchelonSpace gen = ideal_closure(ws, rel);

  out.relations_in_jacobian = true;
  for (const TensorElement& x : rel)
    if (!jac.contains(ws.to_sparse(x))) out.relations_in_jacobian = false;
  out.jacobian_in_relations = true;
  for (const TensorElement& x : a->relations())
    if (!gen.contains(ws.to_sparse(x))) out.jacobian_in_relations = false;

  out.strata.assign(size_t(out.truncation) + 1, {0, 0});
  for (const auto& [key, row] : jac.rows()) ++out.strata[ws.degree(key)].first;
  for (const auto& [key, row] : gen.rows()) ++out.strata[ws.degree(key)].second;
  return out;
}

inline bool verify_ideal_equality(const Species& s1, const Species& s2, int max_degree = 12) {
  return compare_ideals(s1, s2, max_degree).equal();
}

}  // namespace spwp
