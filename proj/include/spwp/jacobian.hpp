#pragma once

// The Jacobian algebra P(S,W) = T̂(S)/J(S,W) as a finite-dimensional algebra
// over Q, computed inside the truncations T(S)/T(S)_{>N}.
//
// A monomial is a word together with a right coefficient θ^j. Monomials are
// ordered by degree first, and every row of an ideal is normalised at its
// smallest monomial. Eliminating a pivot therefore only introduces monomials
// that are larger in this order, which is how inhomogeneous relations are
// handled in the completed algebra.

#include <algorithm>
#include <deque>
#include <memory>
#include <optional>
#include <random>
#include <set>

#include "spwp/tensor.hpp"

namespace spwp {

using SparseVec = std::map<int, Q>;

class WordSpace {
 public:
  WordSpace() = default;
  WordSpace(const Species& s, int max_length) : s_(&s), max_length_(max_length) {
    std::vector<Word> all, layer;
    for (size_t v = 0; v < s.vertices().size(); ++v) layer.push_back(Word{{}, int(v)});
    for (int len = 0; len <= max_length; ++len) {
      all.insert(all.end(), layer.begin(), layer.end());
      if (len == max_length) break;
      std::vector<Word> next;
      for (const Word& w : layer)
        for (int a : s.arrows_to(w.vertex))
          for (int i = 0; i < s.letters(a); ++i) {
            Word x = w;
            x.letters.push_back(Letter{a, i});
            x.vertex = s.arrow(a).source;
            next.push_back(std::move(x));
          }
      layer = std::move(next);
    }
    std::sort(all.begin(), all.end());
    for (const Word& w : all) {
      offset_.emplace(w, int(mono_word_.size()));
      for (int j = 0; j < s.field(w.vertex)->degree(); ++j) {
        mono_word_.push_back(int(words_.size()));
        mono_power_.push_back(j);
      }
      words_.push_back(w);
    }
  }

  const Species& species() const { return *s_; }
  int max_length() const { return max_length_; }
  int size() const { return int(mono_word_.size()); }
  const Word& word(int mono) const { return words_[mono_word_[mono]]; }
  int power(int mono) const { return mono_power_[mono]; }
  int degree(int mono) const { return word(mono).degree(); }

  TensorElement monomial(int mono) const {
    TensorElement t;
    const Word& w = word(mono);
    t.add_term(w, FieldElement::power_of_generator(s_->field(w.vertex), power(mono)));
    return t;
  }

  // Terms longer than the truncation are dropped.
  SparseVec to_sparse(const TensorElement& x) const {
    SparseVec v;
    for (const auto& [w, c] : x.terms()) {
      if (w.degree() > max_length_) continue;
      int off = offset_.at(w);
      for (size_t j = 0; j < c.coords().size(); ++j)
        if (c.coords()[j] != 0) v.emplace_hint(v.end(), off + int(j), c.coords()[j]);
    }
    return v;
  }

  TensorElement to_tensor(const SparseVec& v) const {
    TensorElement t;
    auto it = v.begin();
    while (it != v.end()) {
      const int w = mono_word_[it->first];
      const FieldPtr& f = s_->field(words_[w].vertex);
      Vec c(f->degree());
      for (; it != v.end() && mono_word_[it->first] == w; ++it) c[mono_power_[it->first]] = it->second;
      t.add_term(words_[w], FieldElement(f, std::move(c)));
    }
    return t;
  }

 private:
  const Species* s_ = nullptr;
  int max_length_ = 0;
  std::vector<Word> words_;
  std::map<Word, int> offset_;
  std::vector<int> mono_word_, mono_power_;
};

// A subspace kept as rows with distinct pivots, each row normalised so that
// its smallest key is the pivot with coefficient 1.
class EchelonSpace {
 public:
  void reduce(SparseVec& v) const {
    auto it = v.begin();
    while (it != v.end()) {
      auto r = rows_.find(it->first);
      if (r == rows_.end()) {
        ++it;
        continue;
      }
      const int key = it->first;
      const Q c = it->second;
      for (const auto& [k, x] : r->second) {
        auto [jt, fresh] = v.try_emplace(k, 0);
        jt->second -= c * x;
        if (jt->second == 0) v.erase(jt);
      }
      it = v.upper_bound(key);
    }
  }

  bool contains(SparseVec v) const {
    reduce(v);
    return v.empty();
  }

  // Inserts v if it is new; on success the reduced row is left in v.
  bool insert(SparseVec& v) {
    reduce(v);
    if (v.empty()) return false;
    const Q lead = v.begin()->second;
    if (lead != 1)
      for (auto& [k, x] : v) x /= lead;
    rows_.emplace(v.begin()->first, v);
    return true;
  }

  bool is_pivot(int key) const { return rows_.count(key) != 0; }
  size_t size() const { return rows_.size(); }
  const std::map<int, SparseVec>& rows() const { return rows_; }

 private:
  std::map<int, SparseVec> rows_;
};

// Splits x into its pieces e_t·x·e_s.
inline std::vector<TensorElement> vertex_components(const Species& s, const TensorElement& x) {
  std::map<std::pair<int, int>, TensorElement> parts;
  for (const auto& [w, c] : x.terms()) parts[{word_target(s, w), w.vertex}].add_term(w, c);
  std::vector<TensorElement> out;
  for (auto& [k, t] : parts) out.push_back(std::move(t));
  return out;
}

// The image in T(S)/T(S)_{>N} of the two-sided ideal generated by the given
// elements, closed under multiplication by letters and by field generators.
inline EchelonSpace ideal_closure(const WordSpace& ws, const std::vector<TensorElement>& generators) {
  const Species& s = ws.species();
  std::vector<TensorElement> letters, scalars;
  for (size_t a = 0; a < s.arrows().size(); ++a)
    for (int i = 0; i < s.letters(int(a)); ++i) letters.push_back(letter_element(s, int(a), i));
  for (size_t v = 0; v < s.vertices().size(); ++v)
    if (!s.field(int(v))->is_base()) scalars.push_back(vertex_scalar(s, int(v), FieldElement::generator(s.field(int(v)))));

  EchelonSpace space;
  std::deque<TensorElement> queue;
  auto push = [&](const TensorElement& x) {
    if (x.is_zero()) return;
    SparseVec v = ws.to_sparse(x);
    if (space.insert(v)) queue.push_back(ws.to_tensor(v));
  };
  for (const TensorElement& g : generators)
    for (const TensorElement& part : vertex_components(s, g)) push(part);
  while (!queue.empty()) {
    TensorElement x = std::move(queue.front());
    queue.pop_front();
    for (const TensorElement& d : scalars) {
      push(multiply(s, d, x));
      push(multiply(s, x, d));
    }
    if (x.min_degree() >= ws.max_length()) continue;
    for (const TensorElement& l : letters) {
      push(multiply(s, l, x));
      push(multiply(s, x, l));
    }
  }
  return space;
}

// Cyclic derivatives ∂_ξW for ξ over the dual Q-basis of every arrow.
inline std::vector<TensorElement> jacobian_relations(const Species& s, const TensorElement& w) {
  std::vector<TensorElement> out;
  for (auto& row : all_cyclic_derivatives(s, w))
    for (auto& r : row)
      if (!r.is_zero()) out.push_back(std::move(r));
  return out;
}

class JacobianAlgebra {
 public:
  using Sparse = std::vector<std::pair<int, Q>>;

  JacobianAlgebra(std::shared_ptr<const Species> s, TensorElement w, std::vector<TensorElement> relations,
                  std::unique_ptr<WordSpace> ws, EchelonSpace ideal, int stable_from)
      : s_(std::move(s)), w_(std::move(w)), rel_(std::move(relations)), ws_(std::move(ws)), ideal_(std::move(ideal)),
        stable_from_(stable_from) {
    index_.assign(ws_->size(), -1);
    for (int m = 0; m < ws_->size(); ++m)
      if (!ideal_.is_pivot(m)) {
        index_[m] = int(basis_.size());
        basis_.push_back(m);
      }
    const int n = dim();
    std::vector<TensorElement> elems;
    for (int m : basis_) elems.push_back(ws_->monomial(m));
    table_.assign(size_t(n) * n, {});
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (source(i) != target(j)) continue;
        Vec c = coordinates(spwp::multiply(*s_, elems[i], elems[j]));
        Sparse& out = table_[size_t(i) * n + j];
        for (int k = 0; k < n; ++k)
          if (c[k] != 0) out.emplace_back(k, c[k]);
      }
  }

  const Species& species() const { return *s_; }
  const TensorElement& potential() const { return w_; }
  const std::vector<TensorElement>& relations() const { return rel_; }
  int truncation() const { return ws_->max_length(); }
  // Every word of this length or longer vanishes in the algebra.
  int stabilization_degree() const { return stable_from_; }
  int dim() const { return int(basis_.size()); }

  const Word& basis_word(int k) const { return ws_->word(basis_[k]); }
  int basis_power(int k) const { return ws_->power(basis_[k]); }
  int source(int k) const { return basis_word(k).vertex; }
  int target(int k) const { return word_target(*s_, basis_word(k)); }

  // Basis indices of e_t·A·e_s.
  std::vector<int> block(int t, int s) const {
    std::vector<int> out;
    for (int k = 0; k < dim(); ++k)
      if (target(k) == t && source(k) == s) out.push_back(k);
    return out;
  }

  Vec coordinates(const TensorElement& x) const {
    SparseVec v = ws_->to_sparse(x);
    ideal_.reduce(v);
    Vec c(dim());
    for (const auto& [m, q] : v) c[index_[m]] = q;
    return c;
  }

  bool in_ideal(const TensorElement& x) const { return ideal_.contains(ws_->to_sparse(x)); }

  TensorElement element(const Vec& c) const {
    SparseVec v;
    for (int k = 0; k < dim(); ++k)
      if (c[k] != 0) v.emplace(basis_[k], c[k]);
    return ws_->to_tensor(v);
  }

  const Sparse& product(int i, int j) const { return table_[size_t(i) * dim() + j]; }

  Vec multiply(const Vec& x, const Vec& y) const {
    Vec out(dim());
    for (int i = 0; i < dim(); ++i) {
      if (x[i] == 0) continue;
      for (int j = 0; j < dim(); ++j) {
        if (y[j] == 0) continue;
        for (const auto& [k, q] : product(i, j)) out[k] += x[i] * y[j] * q;
      }
    }
    return out;
  }

  // Matrices of x ↦ a·x and x ↦ x·a.
  Mat left_multiplication(const Vec& a) const {
    Mat m(dim(), dim());
    for (int i = 0; i < dim(); ++i)
      if (a[i] != 0)
        for (int j = 0; j < dim(); ++j)
          for (const auto& [k, q] : product(i, j)) m(k, j) += a[i] * q;
    return m;
  }
  Mat right_multiplication(const Vec& a) const {
    Mat m(dim(), dim());
    for (int j = 0; j < dim(); ++j)
      if (a[j] != 0)
        for (int i = 0; i < dim(); ++i)
          for (const auto& [k, q] : product(i, j)) m(k, i) += a[j] * q;
    return m;
  }

  // Dimension of e_t·A·e_s for every pair of vertices.
  std::vector<std::vector<int>> block_dims() const {
    const int nv = int(s_->vertices().size());
    std::vector<std::vector<int>> d(nv, std::vector<int>(nv, 0));
    for (int k = 0; k < dim(); ++k) ++d[target(k)][source(k)];
    return d;
  }

 private:
  std::shared_ptr<const Species> s_;
  TensorElement w_;
  std::vector<TensorElement> rel_;
  std::unique_ptr<WordSpace> ws_;
  EchelonSpace ideal_;
  int stable_from_;
  std::vector<int> basis_, index_;
  std::vector<Sparse> table_;
};

// Raises the truncation until every word of two consecutive lengths dies.
inline std::shared_ptr<const JacobianAlgebra> compute_jacobian(const Species& s, const TensorElement& w,
                                                                int max_degree = 12) {
  if (!is_potential(s, w)) throw ValidationError("W is not a potential on this species");
  auto sp = std::make_shared<const Species>(s);
  std::vector<TensorElement> rel = jacobian_relations(*sp, w);
  for (int n = 2; n <= max_degree; ++n) {
    auto ws = std::make_unique<WordSpace>(*sp, n);
    EchelonSpace ideal = ideal_closure(*ws, rel);
    int top = -1;
    for (int m = 0; m < ws->size(); ++m)
      if (!ideal.is_pivot(m)) top = std::max(top, ws->degree(m));
    if (top <= n - 2)
      return std::make_shared<const JacobianAlgebra>(sp, w, std::move(rel), std::move(ws), std::move(ideal), top + 1);
  }
  throw NotStabilized("no stabilization up to word length " + std::to_string(max_degree));
}

enum class Side { Left, Right };

// P_i → ⊕P_{s(β)}^{|\underline{β}|} → ⊕P_{t(α)}^{|\overline{α}|} → P_i → S_i → 0 over Q.
// For the right-module version P_i = e_i·A and every map multiplies on the left.
struct FourTermComplex {
  int vertex = 0;
  Side side = Side::Left;
  std::vector<int> dims;     // P_i, middle, middle, P_i, S_i
  std::vector<Mat> maps;     // maps[k] goes from dims[k] to dims[k+1]
  bool composites_zero = true;
  std::vector<bool> exact;   // at the two middle terms, the second P_i, and S_i

  bool exact_everywhere() const { return std::all_of(exact.begin(), exact.end(), [](bool b) { return b; }); }
};

namespace detail {

// Basis indices spanning A·e_i (left) or e_i·A (right).
inline std::vector<int> projective(const JacobianAlgebra& a, int i, Side side) {
  std::vector<int> out;
  for (int k = 0; k < a.dim(); ++k)
    if ((side == Side::Left ? a.source(k) : a.target(k)) == i) out.push_back(k);
  return out;
}

inline Mat restrict(const Mat& m, const std::vector<int>& rows, const std::vector<int>& cols) {
  Mat r(int(rows.size()), int(cols.size()));
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < cols.size(); ++j) r(int(i), int(j)) = m(rows[i], cols[j]);
  return r;
}

inline void place(Mat& big, const Mat& m, int r0, int c0) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) big(r0 + i, c0 + j) = m(i, j);
}

}  // namespace detail

inline FourTermComplex four_term_complex(const JacobianAlgebra& a, int i, Side side) {
  const Species& s = a.species();
  const TensorElement& w = a.potential();
  FourTermComplex c;
  c.vertex = i;
  c.side = side;

  // In(β, b): the letters b ∈ \underline{β} of arrows entering i.
  // Out(α, a): the elements a ∈ \overline{α} of arrows leaving i.
  struct Summand {
    int arrow, index, vertex;
    Vec elem;
  };
  std::vector<Summand> in, out;
  for (int b : s.arrows_to(i))
    for (int k = 0; k < s.letters(b); ++k) in.push_back({b, k, s.arrow(b).source, a.coordinates(letter_element(s, b, k))});
  for (int al : s.arrows_from(i))
    for (size_t k = 0; k < s.arrow(al).M.left_basis().size(); ++k)
      out.push_back({al, int(k), s.arrow(al).target, a.coordinates(arrow_element(s, al, s.arrow(al).M.left_basis()[k]))});

  auto mult = [&](const Vec& z) { return side == Side::Left ? a.right_multiplication(z) : a.left_multiplication(z); };
  auto proj = [&](int v) { return detail::projective(a, v, side); };

  // The outer terms of the complex are ordered so that its maps go
  // P_i → first → second → P_i, with first = In for left modules.
  const std::vector<Summand>& first = side == Side::Left ? in : out;
  const std::vector<Summand>& second = side == Side::Left ? out : in;
  std::vector<int> pi = proj(i);
  std::vector<std::vector<int>> p1, p2;
  int d1 = 0, d2 = 0;
  for (const auto& x : first) d1 += int(p1.emplace_back(proj(x.vertex)).size());
  for (const auto& x : second) d2 += int(p2.emplace_back(proj(x.vertex)).size());
  const int di = int(pi.size()), ds = s.field(i)->degree();
  c.dims = {di, d1, d2, di, ds};

  Mat f1(d1, di), f2(d2, d1), f3(di, d2), f4(ds, di);
  for (size_t k = 0, r = 0; k < first.size(); r += p1[k].size(), ++k)
    detail::place(f1, detail::restrict(mult(first[k].elem), p1[k], pi), int(r), 0);

  std::map<std::pair<int, int>, std::vector<std::vector<TensorElement>>> dm;
  for (size_t k = 0, col = 0; k < first.size(); col += p1[k].size(), ++k)
    for (size_t l = 0, row = 0; l < second.size(); row += p2[l].size(), ++l) {
      const Summand& b = side == Side::Left ? first[k] : second[l];
      const Summand& al = side == Side::Left ? second[l] : first[k];
      auto key = std::make_pair(b.arrow, al.arrow);
      if (!dm.count(key)) dm.emplace(key, derivative_matrix(s, w, b.arrow, al.arrow));
      Vec z = a.coordinates(dm.at(key)[b.index][al.index]);
      detail::place(f2, detail::restrict(mult(z), p2[l], p1[k]), int(row), int(col));
    }
  for (size_t l = 0, col = 0; l < second.size(); col += p2[l].size(), ++l)
    detail::place(f3, detail::restrict(mult(second[l].elem), pi, p2[l]), 0, int(col));
  for (int k = 0; k < di; ++k)
    if (a.basis_word(pi[k]).degree() == 0) f4(a.basis_power(pi[k]), k) = 1;

  c.maps = {f1, f2, f3, f4};
  c.composites_zero = (f2 * f1).is_zero() && (f3 * f2).is_zero() && (f4 * f3).is_zero();
  const int r1 = rank(f1), r2 = rank(f2), r3 = rank(f3), r4 = rank(f4);
  c.exact = {r1 == d1 - r2, r2 == d2 - r3, r3 == di - r4, r4 == ds};
  return c;
}

inline bool is_self_injective(const JacobianAlgebra& a, Side side = Side::Left) {
  for (size_t i = 0; i < a.species().vertices().size(); ++i) {
    FourTermComplex c = four_term_complex(a, int(i), side);
    if (!c.composites_zero || !c.exact_everywhere()) return false;
  }
  return true;
}

// Dimension over Q of e_j·soc(A·e_i) for every j.
inline std::vector<int> socle_profile(const JacobianAlgebra& a, int i) {
  const Species& s = a.species();
  std::vector<int> cols = detail::projective(a, i, Side::Left);
  std::vector<Vec> rows;
  for (size_t al = 0; al < s.arrows().size(); ++al) {
    const FieldPtr& f = s.field(s.arrow(int(al)).source);
    for (int k = 0; k < s.letters(int(al)); ++k)
      for (int j = 0; j < f->degree(); ++j) {
        TensorElement g = right_multiply(s, letter_element(s, int(al), k), s.arrow(int(al)).source,
                                         FieldElement::power_of_generator(f, j));
        Mat m = a.left_multiplication(a.coordinates(g));
        for (int r = 0; r < m.rows(); ++r) {
          Vec row(cols.size());
          for (size_t c = 0; c < cols.size(); ++c) row[c] = m(r, cols[c]);
          if (!is_zero(row)) rows.push_back(std::move(row));
        }
      }
  }
  Mat soc = rows.empty() ? Mat::identity(int(cols.size())) : nullspace(Mat::from_rows(rows, int(cols.size())));
  std::vector<int> out(s.vertices().size(), 0);
  for (size_t j = 0; j < out.size(); ++j) {
    std::vector<int> sel;
    for (size_t c = 0; c < cols.size(); ++c)
      if (a.target(cols[c]) == int(j)) sel.push_back(int(c));
    if (sel.empty() || soc.cols() == 0) continue;
    std::vector<int> all(soc.cols());
    for (int k = 0; k < soc.cols(); ++k) all[k] = k;
    out[j] = rank(detail::restrict(soc, sel, all));
  }
  return out;
}

// τ(i) is the vertex j with e_j·soc(A·e_i) ≠ 0, and σ = τ⁻¹. With the form
// λ(ab) = λ(b·γ(a)) a Nakayama automorphism γ sends e_i to e_{σ(i)}.
inline std::vector<int> nakayama_permutation(const JacobianAlgebra& a) {
  if (!is_self_injective(a)) throw NotSelfInjective("the four-term complexes are not exact");
  const Species& s = a.species();
  std::vector<int> sigma;
  for (size_t i = 0; i < s.vertices().size(); ++i) {
    std::vector<int> prof = socle_profile(a, int(i));
    int found = -1;
    for (size_t j = 0; j < prof.size(); ++j) {
      if (prof[j] == 0) continue;
      if (found >= 0 || prof[j] != s.field(int(j))->degree())
        throw NotSelfInjective("socle of the projective at '" + s.vertex(int(i)).id + "' is not simple");
      found = int(j);
    }
    if (found < 0) throw NotSelfInjective("projective at '" + s.vertex(int(i)).id + "' has zero socle");
    sigma.push_back(found);
  }
  std::vector<int> inv(sigma.size());
  for (size_t i = 0; i < sigma.size(); ++i) inv[sigma[i]] = int(i);
  return inv;
}

// A K-algebra map T(S) → T(S') given on generators: vertices go to vertices
// with a field isomorphism, and each M_α maps to M_{α'} by a Q-linear matrix
// that is semilinear for those field maps.
struct AlgebraMorphism {
  std::vector<int> vertex_map;
  std::vector<FieldAutomorphism> field_maps;
  std::vector<int> arrow_map;
  std::vector<Mat> arrow_matrices;

  static AlgebraMorphism identity(const Species& s) {
    AlgebraMorphism g;
    for (size_t v = 0; v < s.vertices().size(); ++v) {
      g.vertex_map.push_back(int(v));
      g.field_maps.push_back(FieldAutomorphism::identity(s.field(int(v))));
    }
    for (size_t a = 0; a < s.arrows().size(); ++a) {
      g.arrow_map.push_back(int(a));
      g.arrow_matrices.push_back(Mat::identity(s.arrow(int(a)).M.dim()));
    }
    return g;
  }
};

inline TensorElement apply_morphism(const Species& from, const Species& to, const AlgebraMorphism& g,
                                    const TensorElement& x) {
  TensorElement out;
  for (const auto& [w, c] : x.terms()) {
    const int v = g.vertex_map[w.vertex];
    TensorElement coeff = vertex_scalar(to, v, g.field_maps[w.vertex].apply(c));
    if (w.letters.empty()) {
      out += coeff;
      continue;
    }
    std::vector<TensorElement> f;
    for (const Letter& l : w.letters) {
      const Vec& basis = from.arrow(l.arrow).M.right_basis()[l.index];
      f.push_back(arrow_element(to, g.arrow_map[l.arrow], g.arrow_matrices[l.arrow] * basis));
    }
    f.push_back(coeff);
    out += multiply(to, f);
  }
  return out;
}

// Whether arrow a is sent bijectively and semilinearly onto its image arrow.
inline bool is_arrow_isomorphism(const Species& from, const Species& to, const AlgebraMorphism& g, int a) {
  const Arrow& x = from.arrow(a);
  const int b = g.arrow_map[a];
  if (b < 0 || b >= int(to.arrows().size())) return false;
  const Arrow& y = to.arrow(b);
  if (y.source != g.vertex_map[x.source] || y.target != g.vertex_map[x.target]) return false;
  const Mat& m = g.arrow_matrices[a];
  if (m.rows() != y.M.dim() || m.cols() != x.M.dim() || !inverse(m)) return false;
  const FieldAutomorphism& ft = g.field_maps[x.target];
  const FieldAutomorphism& fs = g.field_maps[x.source];
  if (!(m * x.M.left_gen() == y.M.left_action(ft.image_of_generator.coords()) * m)) return false;
  return m * x.M.right_gen() == y.M.right_action(fs.image_of_generator.coords()) * m;
}

inline bool is_species_isomorphism(const Species& from, const Species& to, const AlgebraMorphism& g) {
  if (g.vertex_map.size() != from.vertices().size() || g.arrow_map.size() != from.arrows().size()) return false;
  if (from.vertices().size() != to.vertices().size() || from.arrows().size() != to.arrows().size()) return false;
  std::set<int> vs(g.vertex_map.begin(), g.vertex_map.end()), as(g.arrow_map.begin(), g.arrow_map.end());
  if (vs.size() != g.vertex_map.size() || as.size() != g.arrow_map.size()) return false;
  for (size_t v = 0; v < g.vertex_map.size(); ++v) {
    int u = g.vertex_map[v];
    if (u < 0 || u >= int(to.vertices().size())) return false;
    if (!same_field(from.field(int(v)), to.field(u))) return false;
    if (!evaluate(from.field(int(v))->min_poly(), FieldElement(to.field(u), g.field_maps[v].image_of_generator.coords())).is_zero())
      return false;
    if (to.vertex(u).trace_scale != from.vertex(int(v)).trace_scale) return false;
  }
  for (size_t a = 0; a < from.arrows().size(); ++a)
    if (!is_arrow_isomorphism(from, to, g, int(a))) return false;
  return true;
}

// (A): γ is an automorphism of the species; (B): γ(W) = W on the nose.
inline bool check_conditions_AB(const Species& s, const TensorElement& w, const AlgebraMorphism& g) {
  return is_species_isomorphism(s, s, g) && apply_morphism(s, s, g, w) == w;
}

// The morphism induced by a vertex permutation when each arrow i → j has a
// unique partner σ(i) → σ(j) with literally the same bimodule; arrows are
// matched by the identity matrix and fields by the identity.
inline std::optional<AlgebraMorphism> permutation_morphism(const Species& s, const std::vector<int>& sigma) {
  AlgebraMorphism g;
  g.vertex_map = sigma;
  for (size_t v = 0; v < sigma.size(); ++v) {
    if (!same_field(s.field(int(v)), s.field(sigma[v]))) return std::nullopt;
    g.field_maps.push_back({s.field(int(v)), FieldElement::generator(s.field(sigma[v]))});
  }
  for (size_t a = 0; a < s.arrows().size(); ++a) {
    const Arrow& x = s.arrow(int(a));
    int match = -1;
    for (size_t b = 0; b < s.arrows().size(); ++b) {
      const Arrow& y = s.arrow(int(b));
      if (y.source != sigma[x.source] || y.target != sigma[x.target] || !(y.M == x.M)) continue;
      if (match >= 0) return std::nullopt;
      match = int(b);
    }
    if (match < 0) return std::nullopt;
    g.arrow_map.push_back(match);
    g.arrow_matrices.push_back(Mat::identity(x.M.dim()));
  }
  return g;
}

// The matrix of γ on A, after checking that γ preserves the Jacobian ideal
// and is multiplicative on the basis.
inline Mat morphism_matrix(const JacobianAlgebra& a, const AlgebraMorphism& g) {
  const Species& s = a.species();
  if (!is_species_isomorphism(s, s, g)) throw NotAMorphism("γ is not an automorphism of the species");
  for (const TensorElement& r : a.relations())
    if (!a.in_ideal(apply_morphism(s, s, g, r))) throw NotAMorphism("γ does not preserve the Jacobian ideal");
  const int n = a.dim();
  std::vector<Vec> cols;
  for (int k = 0; k < n; ++k) cols.push_back(a.coordinates(apply_morphism(s, s, g, a.element(unit_vector(n, k)))));
  Mat gm = Mat::from_columns(cols, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Vec lhs(n);
      for (const auto& [k, q] : a.product(i, j)) lhs = add(lhs, scaled(cols[k], q));
      if (lhs != a.multiply(cols[i], cols[j])) throw NotAMorphism("γ is not multiplicative on the basis");
    }
  return gm;
}

// Looks for λ with λ(ab) = λ(b·γ(a)) whose bilinear form λ(ab) is nondegenerate.
inline bool verify_nakayama_automorphism(const JacobianAlgebra& a, const AlgebraMorphism& g) {
  const int n = a.dim();
  Mat gm = morphism_matrix(a, g);
  EchelonSpace constraints;
  for (int i = 0; i < n; ++i) {
    Vec gi = gm.column(i);
    for (int j = 0; j < n; ++j) {
      Vec lhs(n);
      for (const auto& [k, q] : a.product(i, j)) lhs[k] += q;
      Vec rhs = a.multiply(unit_vector(n, j), gi);
      SparseVec v;
      for (int k = 0; k < n; ++k)
        if (lhs[k] != rhs[k]) v.emplace(k, lhs[k] - rhs[k]);
      constraints.insert(v);
    }
  }
  std::vector<Vec> rows;
  for (const auto& [p, r] : constraints.rows()) {
    Vec row(n);
    for (const auto& [k, q] : r) row[k] = q;
    rows.push_back(std::move(row));
  }
  Mat lambdas = rows.empty() ? Mat::identity(n) : nullspace(Mat::from_rows(rows, n));
  if (lambdas.cols() == 0) return false;
  // Gram matrices of the solution basis; a generic combination is nondegenerate
  // if any is, so a few seeded trials suffice.
  std::vector<Mat> gram(lambdas.cols(), Mat(n, n));
  for (int l = 0; l < lambdas.cols(); ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (const auto& [k, q] : a.product(i, j)) gram[l](i, j) += q * lambdas(k, l);
  std::mt19937 rng(20240601);
  std::uniform_int_distribution<int> coef(-1000, 1000);
  for (int trial = 0; trial < 6; ++trial) {
    Mat acc(n, n);
    for (int l = 0; l < lambdas.cols(); ++l) acc = acc + Q(trial == 0 && l == 0 ? 1 : coef(rng)) * gram[l];
    if (rank(acc) == n) return true;
  }
  return false;
}

// g followed by τ ∈ Gal(L) on every vertex with field L and on every arrow
// whose carrier is L; arrows over Q are left alone.
inline AlgebraMorphism galois_twisted(const Species& s, AlgebraMorphism g, const FieldAutomorphism& tau) {
  const FieldPtr& L = tau.field;
  const int n = L->degree();
  std::vector<Vec> cols;
  for (int j = 0; j < n; ++j) cols.push_back(tau.apply(FieldElement(L, unit_vector(n, j))).coords());
  const Mat t = Mat::from_columns(cols, n);
  for (size_t v = 0; v < s.vertices().size(); ++v)
    if (same_field(s.field(int(v)), L)) g.field_maps[v] = g.field_maps[v].compose(tau);
  for (size_t a = 0; a < s.arrows().size(); ++a) {
    const Arrow& x = s.arrow(int(a));
    if (x.carrier && x.carrier->field == L->name()) g.arrow_matrices[a] = t * g.arrow_matrices[a];
  }
  return g;
}

struct NakayamaSearch {
  std::vector<int> sigma;
  // Permutation morphisms for σ twisted by each τ ∈ Gal(L), L the one
  // non-base field (only the untwisted one when every field is Q).
  std::vector<AlgebraMorphism> candidates;
  std::vector<bool> verified;
  std::optional<AlgebraMorphism> gamma;  // the first verified candidate
};

// Nakayama automorphisms of the form "permute by σ, then act by one Galois
// element on every copy of L", which covers the ones that fix all ᵢ1ⱼ up to σ.
inline NakayamaSearch find_nakayama_automorphism(const JacobianAlgebra& a) {
  const Species& s = a.species();
  NakayamaSearch r;
  r.sigma = nakayama_permutation(a);
  auto base = permutation_morphism(s, r.sigma);
  if (!base) return r;
  FieldPtr L;
  for (size_t v = 0; v < s.vertices().size(); ++v) {
    const FieldPtr& f = s.field(int(v));
    if (f->is_base()) continue;
    if (L && !same_field(L, f)) throw UnsupportedAlgebra("more than one non-base field");
    L = f;
  }
  std::vector<FieldAutomorphism> taus;
  if (L) taus = galois_automorphisms(L);
  if (taus.empty()) r.candidates.push_back(*base);
  for (const FieldAutomorphism& t : taus) r.candidates.push_back(galois_twisted(s, *base, t));
  for (const AlgebraMorphism& g : r.candidates) {
    bool ok = false;
    try {
      ok = verify_nakayama_automorphism(a, g);
    } catch (const NotAMorphism&) {
    }
    r.verified.push_back(ok);
    if (ok && !r.gamma) r.gamma = g;
  }
  return r;
}

}  // namespace spwp
