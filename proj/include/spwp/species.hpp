#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spwp/bimodule.hpp"

namespace spwp {

// How an arrow was described, kept so documents can be written back readably.
struct CarrierInfo {
  std::string field;
  int left_twist = 0;
  int right_twist = 0;
};

struct Arrow {
  std::string id;
  int source = 0;
  int target = 0;
  Bimodule M;
  std::optional<CarrierInfo> carrier;
};

// A K-species: one number field per vertex and one bimodule per arrow, with
// the dual bimodules, pairings and push tables precomputed.
class Species {
 public:
  Species(std::vector<VertexField> vertices, std::vector<Arrow> arrows)
      : vertices_(std::move(vertices)), arrows_(std::move(arrows)) {
    for (size_t v = 0; v < vertices_.size(); ++v) {
      if (!vertex_ix_.emplace(vertices_[v].id, int(v)).second)
        throw ValidationError("duplicate vertex id '" + vertices_[v].id + "'");
      if (vertices_[v].trace_scale == 0) throw DegenerateTrace("vertex '" + vertices_[v].id + "' has zero trace scale");
      trace_dual_.push_back(trace_dual_basis(vertices_[v], power_basis(vertices_[v].field)));
    }
    for (size_t a = 0; a < arrows_.size(); ++a) {
      const Arrow& ar = arrows_[a];
      if (!arrow_ix_.emplace(ar.id, int(a)).second) throw ValidationError("duplicate arrow id '" + ar.id + "'");
      if (ar.source < 0 || ar.source >= int(vertices_.size()) || ar.target < 0 || ar.target >= int(vertices_.size()))
        throw ValidationError("arrow '" + ar.id + "' has an unknown endpoint");
      if (!same_field(ar.M.left_field(), vertices_[ar.target].field) ||
          !same_field(ar.M.right_field(), vertices_[ar.source].field))
        throw ValidationError("arrow '" + ar.id + "': bimodule fields do not match its endpoints");
      duals_.push_back(dualize(ar.M, vertices_[ar.source], vertices_[ar.target]));
      build_push_table(int(a));
    }
  }

  const std::vector<VertexField>& vertices() const { return vertices_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  const VertexField& vertex(int v) const { return vertices_[v]; }
  const Arrow& arrow(int a) const { return arrows_[a]; }
  const FieldPtr& field(int v) const { return vertices_[v].field; }
  const DualBimodule& dual(int a) const { return duals_[a]; }
  int letters(int a) const { return int(arrows_[a].M.right_basis().size()); }

  int vertex_index(const std::string& id) const {
    auto it = vertex_ix_.find(id);
    if (it == vertex_ix_.end()) throw ValidationError("unknown vertex '" + id + "'");
    return it->second;
  }
  int arrow_index(const std::string& id) const {
    auto it = arrow_ix_.find(id);
    if (it == arrow_ix_.end()) throw ValidationError("unknown arrow '" + id + "'");
    return it->second;
  }

  // Trace-dual of the power basis at a vertex.
  const std::vector<Vec>& trace_dual(int v) const { return trace_dual_[v]; }

  // θ_t^j · a_b expanded as Σ_c a_c · coeff_c with coeff_c ∈ D_s.
  const std::vector<Vec>& push_table(int a, int j, int b) const { return push_[a][j][b]; }

  CoefficientAlgebra coefficient_algebra() const { return {vertices_}; }

  std::vector<int> arrows_from(int v) const {
    std::vector<int> out;
    for (size_t a = 0; a < arrows_.size(); ++a)
      if (arrows_[a].source == v) out.push_back(int(a));
    return out;
  }
  std::vector<int> arrows_to(int v) const {
    std::vector<int> out;
    for (size_t a = 0; a < arrows_.size(); ++a)
      if (arrows_[a].target == v) out.push_back(int(a));
    return out;
  }

 private:
  void build_push_table(int a) {
    const Bimodule& m = arrows_[a].M;
    auto& tab = push_.emplace_back();
    for (int j = 0; j < m.left_field()->degree(); ++j) {
      auto& row = tab.emplace_back();
      for (const Vec& b : m.right_basis()) row.push_back(m.right_coords(m.left_power(j) * b));
    }
  }

  std::vector<VertexField> vertices_;
  std::vector<Arrow> arrows_;
  std::map<std::string, int> vertex_ix_, arrow_ix_;
  std::vector<std::vector<Vec>> trace_dual_;
  std::vector<DualBimodule> duals_;
  std::vector<std::vector<std::vector<std::vector<Vec>>>> push_;
};

// The unique matrices λ̃, λ̂ with λ·\underline{α*} = \underline{α*}·λ̃ for arrows
// leaving k and \overline{β*}·λ = λ̂·\overline{β*} for arrows entering k.
// Entry (r, c) is the coefficient of basis element r in the image of element c.
struct LambdaMatrices {
  std::vector<std::pair<int, std::vector<std::vector<FieldElement>>>> tilde;
  std::vector<std::pair<int, std::vector<std::vector<FieldElement>>>> hat;
};

inline LambdaMatrices lambda_tilde_hat(const Species& s, int k, const FieldElement& lambda) {
  if (!same_field(lambda.field(), s.field(k))) throw FieldMismatch("λ does not lie in the field of the vertex");
  LambdaMatrices out;
  for (int a : s.arrows_from(k)) {
    const Bimodule& d = s.dual(a).dual;  // D_k acts on the left of M_α*
    const auto& basis = d.right_basis();
    std::vector<std::vector<FieldElement>> m(basis.size(), std::vector<FieldElement>(basis.size()));
    for (size_t c = 0; c < basis.size(); ++c) {
      std::vector<Vec> co = d.right_coords(d.left_action(lambda.coords()) * basis[c]);
      for (size_t r = 0; r < basis.size(); ++r) m[r][c] = FieldElement(d.right_field(), co[r]);
    }
    out.tilde.emplace_back(a, std::move(m));
  }
  for (int b : s.arrows_to(k)) {
    const Bimodule& d = s.dual(b).dual;  // D_k acts on the right of M_β*
    const auto& basis = d.left_basis();
    std::vector<std::vector<FieldElement>> m(basis.size(), std::vector<FieldElement>(basis.size()));
    for (size_t c = 0; c < basis.size(); ++c) {
      std::vector<Vec> co = d.left_coords(d.right_action(lambda.coords()) * basis[c]);
      for (size_t r = 0; r < basis.size(); ++r) m[r][c] = FieldElement(d.left_field(), co[r]);
    }
    out.hat.emplace_back(b, std::move(m));
  }
  return out;
}

}  // namespace spwp
