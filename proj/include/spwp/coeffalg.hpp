#pragma once

// The semisimple coefficient algebra D = ⊕ D_i, one number field per vertex,
// with trace t_i = scale_i · Tr_{D_i/Q}.

#include <string>
#include <utility>
#include <vector>

#include "spwp/scalars.hpp"

namespace spwp {

struct VertexField {
  std::string id;
  FieldPtr field;
  Q trace_scale = 1;

  Q trace(const Vec& x) const { return trace_scale * field->trace(x); }
};

struct CoefficientAlgebra {
  std::vector<VertexField> vertices;
};

// Given a Q-basis {b_j} of the field (as coordinate vectors), return {b̄_j}
// with t(b̄_j · b_k) = δ_jk.
inline std::vector<Vec> trace_dual_basis(const VertexField& v, const std::vector<Vec>& basis) {
  const int n = v.field->degree();
  Mat gram(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) gram(j, k) = v.trace(v.field->multiply(basis[j], basis[k]));
  auto inv = inverse(gram);
  if (!inv) throw DegenerateTrace("vertex '" + v.id + "': trace form is singular");
  std::vector<Vec> dual;
  for (int j = 0; j < n; ++j) {
    Vec d(n);
    for (int k = 0; k < n; ++k) d = add(d, scaled(basis[k], (*inv)(k, j)));
    dual.push_back(std::move(d));
  }
  return dual;
}

inline std::vector<Vec> power_basis(const FieldPtr& f) {
  std::vector<Vec> b;
  for (int j = 0; j < f->degree(); ++j) b.push_back(FieldElement::power_of_generator(f, j).coords());
  return b;
}

struct CasimirOfD {
  // terms[i] lists the pairs (e_j, ē_j) at vertex i.
  std::vector<std::vector<std::pair<FieldElement, FieldElement>>> terms;
};

inline CasimirOfD casimir_of_D(const CoefficientAlgebra& d) {
  CasimirOfD c;
  for (const VertexField& v : d.vertices) {
    std::vector<Vec> e = power_basis(v.field);
    std::vector<Vec> ebar = trace_dual_basis(v, e);
    auto& row = c.terms.emplace_back();
    for (size_t j = 0; j < e.size(); ++j) row.emplace_back(FieldElement(v.field, e[j]), FieldElement(v.field, ebar[j]));
  }
  return c;
}

// Σ_j e_j ⊗ ē_j as a vector in D_i ⊗_Q D_i (Kronecker coordinates).
inline Vec casimir_tensor(const std::vector<std::pair<FieldElement, FieldElement>>& terms) {
  Vec t;
  for (const auto& [e, ebar] : terms) {
    Vec k = kron(e.coords(), ebar.coords());
    t = t.empty() ? k : add(t, k);
  }
  return t;
}

}  // namespace spwp
