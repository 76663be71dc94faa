#pragma once

// Elements of the tensor algebra T(S) in normal form, and the derivative
// calculus on potentials.
//
// A word is a composable string of basis letters b_n ⊗ ... ⊗ b_1 (leftmost
// first) with b_j ∈ \underline{α_j}. Its coefficient sits at the right end and
// lives in the field of the source vertex of b_1. Degree-zero words carry only
// a vertex.

#include <map>
#include <vector>

#include "spwp/species.hpp"

namespace spwp {

struct Letter {
  int arrow;
  int index;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

struct Word {
  std::vector<Letter> letters;
  int vertex = 0;  // the source (right end) of the word

  int degree() const { return int(letters.size()); }
  friend bool operator==(const Word&, const Word&) = default;
  friend bool operator<(const Word& a, const Word& b) {
    if (a.letters.size() != b.letters.size()) return a.letters.size() < b.letters.size();
    if (a.letters != b.letters) return a.letters < b.letters;
    return a.vertex < b.vertex;
  }
};

inline int word_target(const Species& s, const Word& w) {
  return w.letters.empty() ? w.vertex : s.arrow(w.letters.front().arrow).target;
}

class TensorElement {
 public:
  using Terms = std::map<Word, FieldElement>;

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }

  void add_term(const Word& w, const FieldElement& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.emplace(w, c);
    if (fresh) return;
    it->second = it->second + c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  TensorElement& operator+=(const TensorElement& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
  }
  TensorElement& operator-=(const TensorElement& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
  }
  friend TensorElement operator+(TensorElement a, const TensorElement& b) { return a += b; }
  friend TensorElement operator-(TensorElement a, const TensorElement& b) { return a -= b; }
  friend TensorElement operator*(const Q& q, const TensorElement& a) {
    TensorElement r;
    if (q == 0) return r;
    for (const auto& [w, c] : a.terms_) r.terms_.emplace(w, q * c);
    return r;
  }
  friend bool operator==(const TensorElement& a, const TensorElement& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (auto i = a.terms_.begin(), j = b.terms_.begin(); i != a.terms_.end(); ++i, ++j)
      if (!(i->first == j->first) || !(i->second == j->second)) return false;
    return true;
  }

  int min_degree() const { return terms_.empty() ? -1 : terms_.begin()->first.degree(); }
  int max_degree() const { return terms_.empty() ? -1 : terms_.rbegin()->first.degree(); }

  TensorElement homogeneous(int d) const {
    TensorElement r;
    for (const auto& [w, c] : terms_)
      if (w.degree() == d) r.terms_.emplace(w, c);
    return r;
  }

 private:
  Terms terms_;
};

inline TensorElement vertex_scalar(const Species& s, int v, const FieldElement& d) {
  TensorElement t;
  t.add_term(Word{{}, v}, FieldElement(s.field(v), d.coords()));
  return t;
}

inline TensorElement idempotent(const Species& s, int v) { return vertex_scalar(s, v, FieldElement::one(s.field(v))); }

inline TensorElement letter_element(const Species& s, int arrow, int index) {
  TensorElement t;
  int src = s.arrow(arrow).source;
  t.add_term(Word{{Letter{arrow, index}}, src}, FieldElement::one(s.field(src)));
  return t;
}

// The degree-one element x ∈ M_α, given in k-basis coordinates.
inline TensorElement arrow_element(const Species& s, int arrow, const Vec& x) {
  TensorElement t;
  int src = s.arrow(arrow).source;
  std::vector<Vec> c = s.arrow(arrow).M.right_coords(x);
  for (size_t b = 0; b < c.size(); ++b) t.add_term(Word{{Letter{arrow, int(b)}}, src}, FieldElement(s.field(src), c[b]));
  return t;
}

namespace detail {

// d · (letters ⊗ coeff) in normal form, with d in the field at the target of
// the first letter.
inline void push_into(const Species& s, const FieldElement& d, const std::vector<Letter>& letters, size_t from,
                      const FieldElement& coeff, const std::vector<Letter>& prefix, TensorElement& out) {
  std::map<std::vector<Letter>, FieldElement> states;
  states.emplace(std::vector<Letter>{}, d);
  for (size_t i = from; i < letters.size(); ++i) {
    const Letter& l = letters[i];
    const FieldPtr& fs = s.field(s.arrow(l.arrow).source);
    std::map<std::vector<Letter>, FieldElement> next;
    for (const auto& [pre, dd] : states) {
      const Vec& dc = dd.coords();
      bool rational = true;
      for (size_t j = 1; j < dc.size(); ++j)
        if (dc[j] != 0) rational = false;
      auto emit = [&](int idx, const FieldElement& c) {
        if (c.is_zero()) return;
        std::vector<Letter> np = pre;
        np.push_back(Letter{l.arrow, idx});
        auto [it, fresh] = next.emplace(std::move(np), c);
        if (!fresh) it->second = it->second + c;
      };
      if (rational) {
        emit(l.index, FieldElement::rational(fs, dc[0]));
        continue;
      }
      const int nb = s.letters(l.arrow);
      for (int b = 0; b < nb; ++b) {
        Vec acc(fs->degree());
        for (size_t j = 0; j < dc.size(); ++j)
          if (dc[j] != 0) acc = add(acc, scaled(s.push_table(l.arrow, int(j), l.index)[b], dc[j]));
        emit(b, FieldElement(fs, acc));
      }
    }
    states = std::move(next);
  }
  int src = s.arrow(letters.back().arrow).source;
  for (const auto& [pre, dd] : states) {
    std::vector<Letter> w = prefix;
    w.insert(w.end(), pre.begin(), pre.end());
    out.add_term(Word{std::move(w), src}, dd * coeff);
  }
}

}  // namespace detail

// d·x where d ∈ D_v (only words with target v survive).
inline TensorElement left_multiply(const Species& s, int v, const FieldElement& d, const TensorElement& x) {
  TensorElement out;
  FieldElement dv(s.field(v), d.coords());
  for (const auto& [w, c] : x.terms()) {
    if (word_target(s, w) != v) continue;
    if (w.letters.empty())
      out.add_term(w, dv * c);
    else
      detail::push_into(s, dv, w.letters, 0, c, {}, out);
  }
  return out;
}

// x·d where d ∈ D_v (only words with source v survive).
inline TensorElement right_multiply(const Species& s, const TensorElement& x, int v, const FieldElement& d) {
  TensorElement out;
  FieldElement dv(s.field(v), d.coords());
  for (const auto& [w, c] : x.terms())
    if (w.vertex == v) out.add_term(w, c * dv);
  return out;
}

inline TensorElement multiply(const Species& s, const TensorElement& x, const TensorElement& y) {
  TensorElement out;
  for (const auto& [w1, c1] : x.terms())
    for (const auto& [w2, c2] : y.terms()) {
      if (w1.vertex != word_target(s, w2)) continue;
      if (w2.letters.empty()) {
        out.add_term(w1, c1 * c2);
      } else {
        detail::push_into(s, c1, w2.letters, 0, c2, w1.letters, out);
      }
    }
  return out;
}

inline TensorElement multiply(const Species& s, const std::vector<TensorElement>& factors) {
  TensorElement acc = factors.front();
  for (size_t i = 1; i < factors.size(); ++i) acc = multiply(s, acc, factors[i]);
  return acc;
}

// ∂ˡ_ξ for ξ ∈ M_α* (dual k-basis coordinates): strips a leading α-letter a
// and multiplies the rest on the left by 𝔟(ξ⊗a).
inline TensorElement partial_l(const Species& s, int arrow, const Vec& xi, const TensorElement& x) {
  TensorElement out;
  const Arrow& ar = s.arrow(arrow);
  const Pairing& p = s.dual(arrow).pairing;
  std::vector<FieldElement> val;
  for (const Vec& a : ar.M.right_basis()) val.emplace_back(s.field(ar.source), p.left(xi, a));
  for (const auto& [w, c] : x.terms()) {
    if (w.letters.empty() || w.letters.front().arrow != arrow) continue;
    const FieldElement& d = val[w.letters.front().index];
    if (d.is_zero()) continue;
    if (w.letters.size() == 1) {
      out.add_term(Word{{}, w.vertex}, d * c);
    } else {
      std::vector<Letter> rest(w.letters.begin() + 1, w.letters.end());
      detail::push_into(s, d, rest, 0, c, {}, out);
    }
  }
  return out;
}

// ∂ʳ_ξ: strips a trailing α-letter (with its coefficient) and multiplies the
// rest on the right by 𝔟((a·c)⊗ξ).
inline TensorElement partial_r(const Species& s, int arrow, const Vec& xi, const TensorElement& x) {
  TensorElement out;
  const Arrow& ar = s.arrow(arrow);
  const Pairing& p = s.dual(arrow).pairing;
  for (const auto& [w, c] : x.terms()) {
    if (w.letters.empty() || w.letters.back().arrow != arrow) continue;
    Vec m = ar.M.right_action(c.coords()) * ar.M.right_basis()[w.letters.back().index];
    FieldElement d(s.field(ar.target), p.right(m, xi));
    std::vector<Letter> rest(w.letters.begin(), w.letters.end() - 1);
    out.add_term(Word{std::move(rest), ar.target}, d);
  }
  return out;
}

inline TensorElement epsilon_l(const Species& s, const TensorElement& w) {
  TensorElement out;
  for (size_t a = 0; a < s.arrows().size(); ++a) {
    const auto& over = s.arrow(int(a)).M.left_basis();
    for (size_t i = 0; i < over.size(); ++i) {
      TensorElement d = partial_l(s, int(a), s.dual(int(a)).over_star[i], w);
      if (!d.is_zero()) out += multiply(s, d, arrow_element(s, int(a), over[i]));
    }
  }
  return out;
}

inline TensorElement epsilon_r(const Species& s, const TensorElement& w) {
  TensorElement out;
  for (size_t a = 0; a < s.arrows().size(); ++a)
    for (int i = 0; i < s.letters(int(a)); ++i) {
      TensorElement d = partial_r(s, int(a), s.dual(int(a)).under_star[i], w);
      if (!d.is_zero()) out += multiply(s, letter_element(s, int(a), i), d);
    }
  return out;
}

// Σ_{k=0}^{n-1} ε_l^k on each homogeneous component of degree n ≥ 1.
inline TensorElement epsilon_c(const Species& s, const TensorElement& w) {
  TensorElement out;
  for (int n = std::max(1, w.min_degree()); n <= w.max_degree(); ++n) {
    TensorElement part = w.homogeneous(n);
    for (int k = 0; k < n && !part.is_zero(); ++k) {
      out += part;
      part = epsilon_l(s, part);
    }
  }
  return out;
}

inline TensorElement cyclic_derivative(const Species& s, int arrow, const Vec& xi, const TensorElement& w) {
  return partial_l(s, arrow, xi, epsilon_c(s, w));
}

// ∂_ξ W for every arrow and every vector of the dual Q-basis of M_α*.
inline std::vector<std::vector<TensorElement>> all_cyclic_derivatives(const Species& s, const TensorElement& w) {
  TensorElement ec = epsilon_c(s, w);
  std::vector<std::vector<TensorElement>> out;
  for (size_t a = 0; a < s.arrows().size(); ++a) {
    auto& row = out.emplace_back();
    int n = s.arrow(int(a)).M.dim();
    for (int i = 0; i < n; ++i) row.push_back(partial_l(s, int(a), unit_vector(n, i), ec));
  }
  return out;
}

// Entry (b, a) is ∂_{b*,a*}W = ∂ʳ_{a*}(∂_{b*}W) for b ∈ \underline{β}, a ∈ \overline{α}.
inline std::vector<std::vector<TensorElement>> derivative_matrix(const Species& s, const TensorElement& w, int beta,
                                                                 int alpha) {
  TensorElement ec = epsilon_c(s, w);
  std::vector<std::vector<TensorElement>> m;
  for (const Vec& bstar : s.dual(beta).under_star) {
    TensorElement db = partial_l(s, beta, bstar, ec);
    auto& row = m.emplace_back();
    for (const Vec& astar : s.dual(alpha).over_star) row.push_back(partial_r(s, alpha, astar, db));
  }
  return m;
}

inline bool is_potential(const Species& s, const TensorElement& w) {
  if (!w.is_zero() && w.min_degree() < 2) return false;
  for (size_t v = 0; v < s.vertices().size(); ++v) {
    int vi = int(v);
    const FieldPtr& f = s.field(vi);
    for (int j = 0; j < std::min(2, f->degree()); ++j) {
      FieldElement d = FieldElement::power_of_generator(f, j);
      if (j == 1 && f->degree() == 1) continue;
      if (!(left_multiply(s, vi, d, w) == right_multiply(s, w, vi, d))) return false;
    }
  }
  return true;
}

inline bool cyclic_equivalent(const Species& s, const TensorElement& w1, const TensorElement& w2) {
  auto d1 = all_cyclic_derivatives(s, w1), d2 = all_cyclic_derivatives(s, w2);
  return d1.size() == d2.size() && std::equal(d1.begin(), d1.end(), d2.begin());
}

// Σ_v Σ_j e_j (e_v X e_v) ē_j, which lands in the D-centraliser.
inline TensorElement centralize(const Species& s, const TensorElement& x) {
  TensorElement out;
  for (size_t v = 0; v < s.vertices().size(); ++v) {
    int vi = int(v);
    TensorElement cyc;
    for (const auto& [w, c] : x.terms())
      if (w.vertex == vi && word_target(s, w) == vi) cyc.add_term(w, c);
    if (cyc.is_zero()) continue;
    const FieldPtr& f = s.field(vi);
    for (int j = 0; j < f->degree(); ++j) {
      TensorElement t = left_multiply(s, vi, FieldElement::power_of_generator(f, j), cyc);
      out += right_multiply(s, t, vi, FieldElement(f, s.trace_dual(vi)[j]));
    }
  }
  return out;
}

inline bool is_reduced(const TensorElement& w) {
  for (const auto& [word, c] : w.terms())
    if (word.degree() == 2) return false;
  return true;
}

}  // namespace spwp
