#pragma once

// The species S(S¹,S²) over Q¹⊗̃Q² with its potential W₁ − W₂, and its
// basic version: every vertex algebra D¹_i⊗D²_j is split into fields.
//
// Product data is kept as plain Q-linear algebra. A product arrow is a
// Q-space with two commuting left actions (one per factor of the target
// vertex algebra) and two commuting right actions.

#include <cctype>

#include "spwp/tensor.hpp"

namespace spwp {

struct Quiver {
  std::vector<std::string> vertices;
  struct Edge {
    std::string id;
    int source, target;
  };
  std::vector<Edge> arrows;
};

inline Quiver quiver_of(const Species& s) {
  Quiver q;
  for (const auto& v : s.vertices()) q.vertices.push_back(v.id);
  for (const auto& a : s.arrows()) q.arrows.push_back({a.id, a.source, a.target});
  return q;
}

// Vertices Q¹₀×Q²₀ indexed i·|Q²₀| + j; arrows Q¹₀×Q²₁, then Q¹₁×Q²₀, then
// Q¹₁*×Q²₁* from (t(α),t(β)) to (s(α),s(β)).
inline Quiver quiver_tensor(const Quiver& q1, const Quiver& q2) {
  Quiver q;
  const int n2 = int(q2.vertices.size());
  auto vid = [&](int i, int j) { return i * n2 + j; };
  for (const auto& v1 : q1.vertices)
    for (const auto& v2 : q2.vertices) q.vertices.push_back("(" + v1 + "," + v2 + ")");
  for (size_t i = 0; i < q1.vertices.size(); ++i)
    for (const auto& b : q2.arrows)
      q.arrows.push_back({"(" + q1.vertices[i] + "," + b.id + ")", vid(int(i), b.source), vid(int(i), b.target)});
  for (const auto& a : q1.arrows)
    for (size_t j = 0; j < q2.vertices.size(); ++j)
      q.arrows.push_back({"(" + a.id + "," + q2.vertices[j] + ")", vid(a.source, int(j)), vid(a.target, int(j))});
  for (const auto& a : q1.arrows)
    for (const auto& b : q2.arrows)
      q.arrows.push_back({"(" + a.id + "*," + b.id + "*)", vid(a.target, b.target), vid(a.source, b.source)});
  return q;
}

struct ProductVertex {
  int i = 0, j = 0;
  std::string id;
  VertexField f1, f2;
};

struct ProductArrow {
  enum class Block { VertexArrow, ArrowVertex, DualDual };
  std::string id;
  Block block = Block::VertexArrow;
  int first = -1, second = -1;  // vertex or arrow indices in S¹ and S²
  int source = 0, target = 0;
  int dim = 0;
  Mat left1, left2, right1, right2;
};

struct ProductSpecies {
  std::shared_ptr<const Species> s1, s2;
  std::vector<ProductVertex> vertices;
  std::vector<ProductArrow> arrows;

  int vertex_index(int i, int j) const { return i * int(s2->vertices().size()) + j; }
};

inline ProductSpecies species_product(const Species& s1, const Species& s2) {
  ProductSpecies p{std::make_shared<const Species>(s1), std::make_shared<const Species>(s2), {}, {}};
  const Species &a = *p.s1, &b = *p.s2;
  for (size_t i = 0; i < a.vertices().size(); ++i)
    for (size_t j = 0; j < b.vertices().size(); ++j)
      p.vertices.push_back({int(i), int(j), "(" + a.vertex(int(i)).id + "," + b.vertex(int(j)).id + ")",
                            a.vertex(int(i)), b.vertex(int(j))});
  Quiver q = quiver_tensor(quiver_of(a), quiver_of(b));
  size_t next = 0;
  auto gen = [](const VertexField& v) { return v.field->generator_matrix(); };
  for (size_t i = 0; i < a.vertices().size(); ++i)
    for (size_t beta = 0; beta < b.arrows().size(); ++beta) {
      const Bimodule& m = b.arrow(int(beta)).M;
      const Mat g = gen(a.vertex(int(i)));
      const Mat id = Mat::identity(m.dim());
      const Mat gi = Mat::identity(g.rows());
      ProductArrow x{q.arrows[next].id, ProductArrow::Block::VertexArrow, int(i), int(beta),
                     q.arrows[next].source, q.arrows[next].target, g.rows() * m.dim(),
                     kron(g, id), kron(gi, m.left_gen()), kron(g, id), kron(gi, m.right_gen())};
      p.arrows.push_back(std::move(x));
      ++next;
    }
  for (size_t alpha = 0; alpha < a.arrows().size(); ++alpha)
    for (size_t j = 0; j < b.vertices().size(); ++j) {
      const Bimodule& m = a.arrow(int(alpha)).M;
      const Mat g = gen(b.vertex(int(j)));
      const Mat id = Mat::identity(m.dim());
      const Mat gi = Mat::identity(g.rows());
      ProductArrow x{q.arrows[next].id, ProductArrow::Block::ArrowVertex, int(alpha), int(j),
                     q.arrows[next].source, q.arrows[next].target, m.dim() * g.rows(),
                     kron(m.left_gen(), gi), kron(id, g), kron(m.right_gen(), gi), kron(id, g)};
      p.arrows.push_back(std::move(x));
      ++next;
    }
  for (size_t alpha = 0; alpha < a.arrows().size(); ++alpha)
    for (size_t beta = 0; beta < b.arrows().size(); ++beta) {
      const Bimodule& m1 = a.dual(int(alpha)).dual;
      const Bimodule& m2 = b.dual(int(beta)).dual;
      const Mat i1 = Mat::identity(m1.dim()), i2 = Mat::identity(m2.dim());
      ProductArrow x{q.arrows[next].id, ProductArrow::Block::DualDual, int(alpha), int(beta),
                     q.arrows[next].source, q.arrows[next].target, m1.dim() * m2.dim(),
                     kron(m1.left_gen(), i2), kron(i1, m2.left_gen()), kron(m1.right_gen(), i2), kron(i1, m2.right_gen())};
      p.arrows.push_back(std::move(x));
      ++next;
    }
  return p;
}

// One field summand of a product vertex algebra.
struct VertexCopy {
  int vertex = 0;  // product vertex
  int copy = 0;    // index into the Galois order, 0 when the vertex is not split
  bool split = false;
  FieldPtr field;
};

// The summand e_t·M·e_s of a product arrow between two copies.
struct ArrowPiece {
  int arrow = 0;  // product arrow
  int target_copy = 0, source_copy = 0;
  Mat basis;      // columns span the piece inside the product arrow
};

struct BasicProduct {
  ProductSpecies product;
  Species species;
  std::vector<VertexCopy> copies;               // one per vertex of species
  std::vector<ArrowPiece> pieces;               // one per arrow of species
  std::vector<std::vector<int>> vertex_copies;  // product vertex → its copies, in Galois order
  std::vector<std::vector<int>> arrow_pieces;   // product arrow → its pieces
  std::vector<Mat> projections;                 // product arrow → coordinates in its pieces, stacked

  // The element m of a product arrow as a degree-one element of T(species).
  TensorElement lift(int arrow, const Vec& m) const {
    Vec c = projections[arrow] * m;
    TensorElement out;
    size_t off = 0;
    for (int k : arrow_pieces[arrow]) {
      const int d = pieces[k].basis.cols();
      Vec part(c.begin() + off, c.begin() + off + d);
      off += d;
      if (!is_zero(part)) out += arrow_element(species, k, part);
    }
    return out;
  }

  // A piece is σ-tagged when one of its ends is a non-identity Galois copy.
  bool sigma_tagged(int arrow) const {
    const Arrow& a = species.arrow(arrow);
    return copies[a.source].copy != 0 || copies[a.target].copy != 0;
  }
};

namespace detail {

inline Mat polynomial_in(const Mat& m, const Vec& coeffs) {
  Mat acc(m.rows(), m.cols()), p = Mat::identity(m.rows());
  for (const Q& c : coeffs) {
    if (c != 0) acc = acc + c * p;
    p = p * m;
  }
  return acc;
}

// How a vertex algebra D¹⊗D² is cut: the field of each summand and the
// action used as its generator.
struct VertexSplit {
  FieldPtr field;
  bool split = false;
  int use = 0;  // 0: Q, 1: first factor, 2: second factor
  std::vector<FieldAutomorphism> galois;
};

inline VertexSplit split_of(const ProductVertex& v) {
  const FieldPtr &f1 = v.f1.field, &f2 = v.f2.field;
  VertexSplit s;
  if (f1->is_base() && f2->is_base()) {
    s.field = f1;
  } else if (f2->is_base()) {
    s.field = f1, s.use = 1;
  } else if (f1->is_base()) {
    s.field = f2, s.use = 2;
  } else if (same_field(f1, f2)) {
    s.field = f1, s.use = 1, s.split = true;
    s.galois = galois_automorphisms(f1);
  } else {
    throw UnsupportedAlgebra("vertex " + v.id + ": " + f1->name() + " ⊗ " + f2->name() +
                             " is not of the form F⊗G with F ⊆ G");
  }
  return s;
}

inline Mat restrict_to(const Mat& op, const Mat& basis) {
  std::vector<Vec> cols;
  for (int c = 0; c < basis.cols(); ++c) {
    auto x = solve(basis, op * basis.column(c));
    if (!x) throw ValidationError("a piece is not stable under the vertex action");
    cols.push_back(*x);
  }
  return Mat::from_columns(cols, basis.cols());
}

}  // namespace detail

// Copy σ of a split vertex L⊗L is where the second factor acts as σ applied
// to the first; each copy is identified with L through the first factor.
inline BasicProduct basic_version(const ProductSpecies& p) {
  std::vector<detail::VertexSplit> splits;
  std::vector<VertexField> verts;
  std::vector<VertexCopy> copies;
  std::vector<std::vector<int>> vcopies(p.vertices.size());
  for (size_t v = 0; v < p.vertices.size(); ++v) {
    const ProductVertex& pv = p.vertices[v];
    splits.push_back(detail::split_of(pv));
    const auto& sp = splits.back();
    const Q scale = pv.f1.trace_scale * pv.f2.trace_scale;
    const int n = sp.split ? int(sp.galois.size()) : 1;
    for (int c = 0; c < n; ++c) {
      vcopies[v].push_back(int(verts.size()));
      verts.push_back({sp.split ? pv.id + "#" + std::to_string(c) : pv.id, sp.field, scale});
      copies.push_back({int(v), c, sp.split, sp.field});
    }
  }

  std::vector<Arrow> arrows;
  std::vector<ArrowPiece> pieces;
  std::vector<std::vector<int>> apieces(p.arrows.size());
  std::vector<Mat> projections;
  for (size_t a = 0; a < p.arrows.size(); ++a) {
    const ProductArrow& x = p.arrows[a];
    const auto& ts = splits[x.target];
    const auto& ss = splits[x.source];
    auto act = [&](const detail::VertexSplit& s, const Mat& m1, const Mat& m2) {
      return s.use == 1 ? m1 : s.use == 2 ? m2 : Mat(x.dim, x.dim);
    };
    const Mat lgen = act(ts, x.left1, x.left2), rgen = act(ss, x.right1, x.right2);
    std::vector<Vec> all;
    for (size_t ct = 0; ct < vcopies[x.target].size(); ++ct)
      for (size_t cs = 0; cs < vcopies[x.source].size(); ++cs) {
        std::vector<Vec> rows;
        auto add_rows = [&](const Mat& m) {
          for (int r = 0; r < m.rows(); ++r) rows.push_back(m.row(r));
        };
        if (ts.split) add_rows(x.left2 - detail::polynomial_in(x.left1, ts.galois[ct].image_of_generator.coords()));
        if (ss.split) add_rows(x.right2 - detail::polynomial_in(x.right1, ss.galois[cs].image_of_generator.coords()));
        Mat basis = rows.empty() ? Mat::identity(x.dim) : nullspace(Mat::from_rows(rows, x.dim));
        if (basis.cols() == 0) continue;
        for (int c = 0; c < basis.cols(); ++c) all.push_back(basis.column(c));
        const int tv = vcopies[x.target][ct], sv = vcopies[x.source][cs];
        std::string id = x.id;
        if (ts.split || ss.split) id += "#" + std::to_string(ct) + std::to_string(cs);
        Bimodule m(verts[tv].field, verts[sv].field, detail::restrict_to(lgen, basis), detail::restrict_to(rgen, basis));
        apieces[a].push_back(int(arrows.size()));
        arrows.push_back(Arrow{id, sv, tv, std::move(m), {}});
        pieces.push_back({int(a), int(ct), int(cs), std::move(basis)});
      }
    if (int(all.size()) != x.dim) throw ValidationError("arrow " + x.id + " does not decompose over the vertex copies");
    auto inv = inverse(Mat::from_columns(all, x.dim));
    if (!inv) throw ValidationError("arrow " + x.id + ": pieces are not independent");
    projections.push_back(*inv);
  }
  Species s(std::move(verts), std::move(arrows));
  return BasicProduct{p, std::move(s), std::move(copies), std::move(pieces), std::move(vcopies), std::move(apieces),
                      std::move(projections)};
}

namespace detail {

inline int find_arrow(const ProductSpecies& p, ProductArrow::Block b, int first, int second) {
  for (size_t a = 0; a < p.arrows.size(); ++a)
    if (p.arrows[a].block == b && p.arrows[a].first == first && p.arrows[a].second == second) return int(a);
  throw ValidationError("missing product arrow");
}

}  // namespace detail

// W₁ − W₂ written in the basic species.
inline TensorElement product_potential(const BasicProduct& bp) {
  const ProductSpecies& p = bp.product;
  const Species &s1 = *p.s1, &s2 = *p.s2;
  using B = ProductArrow::Block;
  auto one = [](const Species& s, int v) { return unit_vector(s.field(v)->degree(), 0); };
  TensorElement w;
  for (size_t al = 0; al < s1.arrows().size(); ++al)
    for (size_t be = 0; be < s2.arrows().size(); ++be) {
      const Arrow& x = s1.arrow(int(al));
      const Arrow& y = s2.arrow(int(be));
      const int av_s = detail::find_arrow(p, B::ArrowVertex, int(al), y.source);
      const int av_t = detail::find_arrow(p, B::ArrowVertex, int(al), y.target);
      const int va_s = detail::find_arrow(p, B::VertexArrow, x.source, int(be));
      const int va_t = detail::find_arrow(p, B::VertexArrow, x.target, int(be));
      const int dd = detail::find_arrow(p, B::DualDual, int(al), int(be));
      const DualBimodule &d1 = s1.dual(int(al)), &d2 = s2.dual(int(be));
      for (size_t a = 0; a < x.M.right_basis().size(); ++a)
        for (size_t b = 0; b < y.M.left_basis().size(); ++b)
          w += multiply(bp.species, {bp.lift(av_s, kron(x.M.right_basis()[a], one(s2, y.source))),
                                     bp.lift(dd, kron(d1.under_star[a], d2.over_star[b])),
                                     bp.lift(va_t, kron(one(s1, x.target), y.M.left_basis()[b]))});
      for (size_t a = 0; a < x.M.left_basis().size(); ++a)
        for (size_t b = 0; b < y.M.right_basis().size(); ++b)
          w -= multiply(bp.species, {bp.lift(va_s, kron(one(s1, x.source), y.M.right_basis()[b])),
                                     bp.lift(dd, kron(d1.over_star[a], d2.under_star[b])),
                                     bp.lift(av_t, kron(x.M.left_basis()[a], one(s2, y.target)))});
    }
  return w;
}

struct SpeciesWithPotential {
  Species species;
  TensorElement potential;
};

inline SpeciesWithPotential tensor_species_with_potential(const Species& s1, const Species& s2) {
  BasicProduct bp = basic_version(species_product(s1, s2));
  TensorElement w = product_potential(bp);
  return {bp.species, std::move(w)};
}

// The Galois element ρ with θ·m = m·ρ(θ) on an arrow between two copies of
// one field, as an index into galois_automorphisms; −1 if there is none.
inline int intrinsic_twist(const Bimodule& m) {
  if (!same_field(m.left_field(), m.right_field())) return -1;
  auto gal = galois_automorphisms(m.left_field());
  for (size_t k = 0; k < gal.size(); ++k)
    if (m.left_gen() == m.right_action(gal[k].image_of_generator.coords())) return int(k);
  return -1;
}

// l for an l-homogeneous representation-finite species of the given type.
inline Q homogeneity_l(const std::string& type) {
  if (type.size() < 2 || !std::isdigit(static_cast<unsigned char>(type[1])))
    throw UnknownType("'" + type + "' is not a Dynkin type");
  const char letter = char(std::toupper(static_cast<unsigned char>(type[0])));
  int n = 0;
  for (size_t k = 1; k < type.size(); ++k) {
    if (!std::isdigit(static_cast<unsigned char>(type[k]))) throw UnknownType("'" + type + "' is not a Dynkin type");
    n = n * 10 + (type[k] - '0');
    if (n > 100000) throw UnknownType("rank too large");
  }
  switch (letter) {
    case 'A':
      if (n >= 1) {
        Q l(n + 1, 2);
        l.canonicalize();
        return l;
      }
      break;
    case 'B':
      if (n >= 2) return Q(n);
      break;
    case 'C':
      if (n >= 3) return Q(n);
      break;
    case 'D':
      if (n >= 4) return Q(n - 1);
      break;
    case 'E':
      if (n == 6) return Q(6);
      if (n == 7) return Q(9);
      if (n == 8) return Q(15);
      break;
    case 'F':
      if (n == 4) return Q(6);
      break;
    case 'G':
      if (n == 2) return Q(3);
      break;
  }
  throw UnknownType("'" + type + "' is not a Dynkin type");
}

}  // namespace spwp
