#pragma once

// Finite-dimensional D_t–D_s bimodules given by structure constants over Q.
//
// Elements are column vectors in a fixed Q-basis (the k-basis). The target
// field acts on the left through powers of one matrix, the source field on
// the right through powers of another.

#include <string>
#include <vector>

#include "spwp/coeffalg.hpp"

namespace spwp {

class Bimodule {
 public:
  Bimodule() = default;

  // Empty bases request the default choice: scan the k-basis in order and
  // keep every vector that is independent of the ones kept so far.
  Bimodule(FieldPtr left_field, FieldPtr right_field, Mat left_gen, Mat right_gen,
           std::vector<Vec> right_basis = {}, std::vector<Vec> left_basis = {})
      : lf_(std::move(left_field)), rf_(std::move(right_field)), n_(left_gen.rows()), lgen_(left_gen), rgen_(right_gen) {
    if (left_gen.cols() != n_ || right_gen.rows() != n_ || right_gen.cols() != n_)
      throw ValidationError("bimodule action matrices must be square of equal size");
    lpow_ = powers(*lf_, left_gen);
    rpow_ = powers(*rf_, right_gen);
    if (!(left_gen * right_gen == right_gen * left_gen))
      throw ValidationError("left and right actions do not commute");
    if (n_ % lf_->degree() != 0 || n_ % rf_->degree() != 0)
      throw ValidationError("dimension is not divisible by the field degrees");
    under_ = right_basis.empty() ? default_basis(rpow_) : std::move(right_basis);
    over_ = left_basis.empty() ? default_basis(lpow_) : std::move(left_basis);
    rc_ = coordinate_matrix(under_, rpow_, "right");
    lc_ = coordinate_matrix(over_, lpow_, "left");
  }

  int dim() const { return n_; }
  const FieldPtr& left_field() const { return lf_; }
  const FieldPtr& right_field() const { return rf_; }
  const Mat& left_gen() const { return lgen_; }
  const Mat& right_gen() const { return rgen_; }
  const Mat& left_power(int j) const { return lpow_[j]; }
  const Mat& right_power(int j) const { return rpow_[j]; }

  // Left multiplication by d ∈ D_t, right multiplication by d ∈ D_s.
  Mat left_action(const Vec& d) const { return combine(lpow_, d); }
  Mat right_action(const Vec& d) const { return combine(rpow_, d); }

  // \underline{α}: right basis over the source field; \overline{α}: left basis.
  const std::vector<Vec>& right_basis() const { return under_; }
  const std::vector<Vec>& left_basis() const { return over_; }

  // x = Σ_a a·c_a; returns the c_a ∈ D_s in right-basis order.
  std::vector<Vec> right_coords(const Vec& x) const { return split(rc_ * x, rf_->degree()); }
  // x = Σ_a c_a·a over the left basis.
  std::vector<Vec> left_coords(const Vec& x) const { return split(lc_ * x, lf_->degree()); }
  const Mat& right_coord_matrix() const { return rc_; }
  const Mat& left_coord_matrix() const { return lc_; }

  Vec from_right_coords(const std::vector<Vec>& c) const {
    Vec x(n_);
    for (size_t a = 0; a < under_.size(); ++a) x = add(x, right_action(c[a]) * under_[a]);
    return x;
  }

  friend bool operator==(const Bimodule& a, const Bimodule& b) {
    return same_field(a.lf_, b.lf_) && same_field(a.rf_, b.rf_) && a.lpow_ == b.lpow_ && a.rpow_ == b.rpow_ &&
           a.under_ == b.under_ && a.over_ == b.over_;
  }

 private:
  std::vector<Mat> powers(const NumberField& f, const Mat& g) const {
    std::vector<Mat> p{Mat::identity(n_)};
    for (int j = 1; j < f.degree(); ++j) p.push_back(p.back() * g);
    if (f.degree() == 1) {
      if (!g.is_zero()) throw ValidationError("action of the base field must be trivial");
      return p;
    }
    Mat top = p.back() * g;
    Mat eval = top;
    for (int j = 0; j < f.degree(); ++j) eval = eval + f.min_poly()[j] * p[j];
    if (!eval.is_zero()) throw ValidationError("action matrix does not satisfy the minimal polynomial of " + f.name());
    return p;
  }

  static Mat combine(const std::vector<Mat>& pw, const Vec& d) {
    if (d.size() != pw.size()) throw ValidationError("scalar has the wrong degree for this action");
    Mat m(pw[0].rows(), pw[0].cols());
    for (size_t j = 0; j < pw.size(); ++j)
      if (d[j] != 0) m = m + d[j] * pw[j];
    return m;
  }

  static Mat span_matrix(const std::vector<Vec>& basis, const std::vector<Mat>& pw, int n) {
    std::vector<Vec> cols;
    for (const Vec& a : basis)
      for (const Mat& p : pw) cols.push_back(p * a);
    return Mat::from_columns(cols, n);
  }

  std::vector<Vec> default_basis(const std::vector<Mat>& pw) const {
    std::vector<Vec> chosen;
    int have = 0;
    for (int i = 0; i < n_ && have < n_; ++i) {
      chosen.push_back(unit_vector(n_, i));
      int r = rank(span_matrix(chosen, pw, n_));
      if (r == have + int(pw.size()))
        have = r;
      else
        chosen.pop_back();
    }
    if (have != n_) throw ValidationError("module is not free over the acting field");
    return chosen;
  }

  Mat coordinate_matrix(const std::vector<Vec>& basis, const std::vector<Mat>& pw, const char* side) const {
    for (const Vec& b : basis)
      if (int(b.size()) != n_) throw ValidationError(std::string(side) + " basis vector has wrong length");
    if (int(basis.size() * pw.size()) != n_)
      throw ValidationError(std::string(side) + " basis has " + std::to_string(basis.size()) + " elements, expected " +
                            std::to_string(n_ / int(pw.size())));
    auto inv = inverse(span_matrix(basis, pw, n_));
    if (!inv) throw ValidationError(std::string(side) + " basis is not a free basis");
    return *inv;
  }

  static std::vector<Vec> split(const Vec& v, int p) {
    std::vector<Vec> out;
    for (size_t i = 0; i < v.size(); i += p) out.emplace_back(v.begin() + i, v.begin() + i + p);
    return out;
  }

  FieldPtr lf_, rf_;
  int n_ = 0;
  Mat lgen_, rgen_;
  std::vector<Mat> lpow_, rpow_;
  std::vector<Vec> under_, over_;
  Mat rc_, lc_;
};

// _{σ_l}L_{σ_r}: the carrier L with D_t acting by σ_l and D_s by σ_r. A vertex
// field is either Q or the carrier itself.
inline Bimodule build_from_carrier(const FieldPtr& source, const FieldPtr& target, const FieldPtr& carrier,
                                   int left_twist = 0, int right_twist = 0) {
  auto action = [&](const FieldPtr& f, int twist, const char* side) {
    const int n = carrier->degree();
    if (f->is_base()) {
      if (twist != 0) throw NoEmbedding(std::string(side) + " twist given for the base field");
      return Mat(n, n);
    }
    if (!same_field(f, carrier)) throw NoEmbedding("field '" + f->name() + "' does not embed in '" + carrier->name() + "'");
    auto gal = galois_automorphisms(carrier);
    if (twist < 0 || twist >= int(gal.size())) throw NoEmbedding("twist index out of range");
    return carrier->multiplication_matrix(gal[twist].image_of_generator.coords());
  };
  return Bimodule(target, source, action(target, left_twist, "left"), action(source, right_twist, "right"));
}

// 𝔟 restricted to one arrow. Functionals on M are column vectors in the dual
// Q-basis, so ξ(x) = ξ·x.
struct Pairing {
  std::vector<Mat> right_dual;  // right action of ē_j ∈ D_s on M
  std::vector<Mat> left_dual;   // left action of ē_j ∈ D_t on M

  // 𝔟(ξ⊗x) ∈ D_s, power-basis coordinates.
  Vec left(const Vec& xi, const Vec& x) const {
    Vec c(right_dual.size());
    for (size_t j = 0; j < c.size(); ++j) c[j] = dot(xi, right_dual[j] * x);
    return c;
  }
  // 𝔟(x⊗ξ) ∈ D_t.
  Vec right(const Vec& x, const Vec& xi) const {
    Vec c(left_dual.size());
    for (size_t j = 0; j < c.size(); ++j) c[j] = dot(xi, left_dual[j] * x);
    return c;
  }
};

struct DualBimodule {
  Bimodule dual;                // M*, a D_s–D_t bimodule
  std::vector<Vec> under_star;  // a* for a ∈ \underline{α}; this is \overline{α*}
  std::vector<Vec> over_star;   // a'* for a' ∈ \overline{α}; this is \underline{α*}
  Pairing pairing;
};

inline DualBimodule dualize(const Bimodule& m, const VertexField& source, const VertexField& target) {
  const int n = m.dim();
  const int p = source.field->degree(), q = target.field->degree();
  DualBimodule d;
  // a*(x) = t_s(c_a(x)), a'*(x) = t_t(c'_{a'}(x)).
  const Mat& rc = m.right_coord_matrix();
  for (size_t a = 0; a < m.right_basis().size(); ++a) {
    Vec f(n);
    for (int j = 0; j < p; ++j) f = add(f, scaled(rc.row(int(a) * p + j), source.trace_scale * source.field->trace_of_powers()[j]));
    d.under_star.push_back(std::move(f));
  }
  const Mat& lc = m.left_coord_matrix();
  for (size_t a = 0; a < m.left_basis().size(); ++a) {
    Vec f(n);
    for (int j = 0; j < q; ++j) f = add(f, scaled(lc.row(int(a) * q + j), target.trace_scale * target.field->trace_of_powers()[j]));
    d.over_star.push_back(std::move(f));
  }
  d.dual = Bimodule(m.right_field(), m.left_field(), m.right_gen().transpose(), m.left_gen().transpose(), d.over_star,
                    d.under_star);
  for (const Vec& e : trace_dual_basis(source, power_basis(source.field))) d.pairing.right_dual.push_back(m.right_action(e));
  for (const Vec& e : trace_dual_basis(target, power_basis(target.field))) d.pairing.left_dual.push_back(m.left_action(e));
  return d;
}

// M_α ⊗_{D_k} M_β in coordinates (a ∈ \underline{α}) ⊗ (k-basis of M_β).
inline Bimodule tensor_over_vertex(const Bimodule& ma, const Bimodule& mb) {
  if (!same_field(ma.right_field(), mb.left_field()))
    throw VertexMismatch("tensor factors meet at different fields");
  const auto& under = ma.right_basis();
  const int blocks = int(under.size()), m = mb.dim();
  Mat left(blocks * m, blocks * m);
  if (!ma.left_field()->is_base()) {
    for (int a = 0; a < blocks; ++a) {
      std::vector<Vec> c = ma.right_coords(ma.left_gen() * under[a]);
      for (int b = 0; b < blocks; ++b) {
        Mat act = mb.left_action(c[b]);
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < m; ++j) left(b * m + i, a * m + j) = act(i, j);
      }
    }
  }
  std::vector<Mat> rblocks(blocks, mb.right_gen());
  Mat right = block_diagonal(rblocks);
  auto pure = [&](const Vec& x, const Vec& y) {
    std::vector<Vec> c = ma.right_coords(x);
    Vec out;
    for (int a = 0; a < blocks; ++a) {
      Vec part = mb.left_action(c[a]) * y;
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  };
  std::vector<Vec> rb, lb;
  for (const Vec& a : under)
    for (const Vec& b : mb.right_basis()) rb.push_back(pure(a, b));
  for (const Vec& a : ma.left_basis())
    for (const Vec& b : mb.left_basis()) lb.push_back(pure(a, b));
  return Bimodule(ma.left_field(), mb.right_field(), left, right, rb, lb);
}

// The class of x ⊗ y in the coordinates of tensor_over_vertex(ma, mb).
inline Vec tensor_element(const Bimodule& ma, const Bimodule& mb, const Vec& x, const Vec& y) {
  std::vector<Vec> c = ma.right_coords(x);
  Vec out;
  for (const Vec& ca : c) {
    Vec part = mb.left_action(ca) * y;
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

// Casimir elements Σ a⊗a* ∈ M⊗_{D_s}M* and Σ a'*⊗a' ∈ M*⊗_{D_t}M, written in
// the coordinates of tensor_over_vertex for the given coordinate frames.
struct CasimirPair {
  Vec c_alpha;
  Vec c_alpha_star;
};

inline CasimirPair casimir_pair(const Bimodule& frame, const DualBimodule& frame_dual, const Bimodule& m,
                                const DualBimodule& md) {
  CasimirPair c;
  c.c_alpha.assign(size_t(frame.right_basis().size()) * md.dual.dim(), Q(0));
  for (size_t a = 0; a < m.right_basis().size(); ++a)
    c.c_alpha = add(c.c_alpha, tensor_element(frame, frame_dual.dual, m.right_basis()[a], md.under_star[a]));
  c.c_alpha_star.assign(size_t(frame_dual.dual.right_basis().size()) * m.dim(), Q(0));
  for (size_t a = 0; a < m.left_basis().size(); ++a)
    c.c_alpha_star = add(c.c_alpha_star, tensor_element(frame_dual.dual, frame, md.over_star[a], m.left_basis()[a]));
  return c;
}

inline CasimirPair casimir_pair(const Bimodule& m, const DualBimodule& md) { return casimir_pair(m, md, m, md); }

}  // namespace spwp
