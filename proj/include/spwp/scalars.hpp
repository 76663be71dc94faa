#pragma once

// Number fields over Q, their elements, traces and Galois groups.

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "spwp/errors.hpp"
#include "spwp/linalg.hpp"

namespace spwp {

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

// L = Q[x]/(f) presented by the power basis 1, θ, ..., θ^{n-1}.
// Q itself is the degree-one field with f = x, so θ = 0 there.
class NumberField {
 public:
  static FieldPtr make(std::string name, std::vector<Q> min_poly) {
    while (!min_poly.empty() && min_poly.back() == 0) min_poly.pop_back();
    if (min_poly.size() < 2) throw ValidationError("field '" + name + "': minimal polynomial must have degree >= 1");
    Q lead = min_poly.back();
    for (Q& c : min_poly) c /= lead;
    auto f = std::shared_ptr<NumberField>(new NumberField(std::move(name), std::move(min_poly)));
    f->check_irreducible();
    f->build_tables();
    return f;
  }

  static FieldPtr rationals() {
    static const FieldPtr q = make("Q", {Q(0), Q(1)});
    return q;
  }

  const std::string& name() const { return name_; }
  int degree() const { return n_; }
  bool is_base() const { return n_ == 1; }
  const std::vector<Q>& min_poly() const { return poly_; }
  bool same(const NumberField& o) const { return poly_ == o.poly_; }

  // Reduce a polynomial (low-first coefficients) modulo the minimal polynomial.
  Vec reduce(std::vector<Q> p) const {
    for (int k = int(p.size()) - 1; k >= n_; --k) {
      if (p[k] == 0) continue;
      Q c = p[k];
      for (int i = 0; i < n_; ++i) p[k - n_ + i] -= c * poly_[i];
      p[k] = 0;
    }
    p.resize(n_);
    return p;
  }

  Vec multiply(const Vec& x, const Vec& y) const {
    std::vector<Q> p(2 * n_ - 1);
    for (int i = 0; i < n_; ++i) {
      if (x[i] == 0) continue;
      for (int j = 0; j < n_; ++j)
        if (y[j] != 0) p[i + j] += x[i] * y[j];
    }
    return reduce(std::move(p));
  }

  // Matrix of y ↦ x·y in the power basis.
  Mat multiplication_matrix(const Vec& x) const {
    Mat m(n_, n_);
    Vec col = x;
    for (int j = 0; j < n_; ++j) {
      for (int i = 0; i < n_; ++i) m(i, j) = col[i];
      col = multiply(col, gen_);
    }
    return m;
  }

  const Mat& generator_matrix() const { return gen_matrix_; }
  const Vec& generator() const { return gen_; }
  const Vec& trace_of_powers() const { return tr_pow_; }
  Q trace(const Vec& x) const { return dot(x, tr_pow_); }

 private:
  NumberField(std::string name, std::vector<Q> poly)
      : name_(std::move(name)), poly_(std::move(poly)), n_(int(poly_.size()) - 1) {}

  void build_tables() {
    gen_ = Vec(n_);
    if (n_ > 1)
      gen_[1] = 1;
    else
      gen_[0] = -poly_[0];
    gen_matrix_ = multiplication_matrix(gen_);
    tr_pow_.assign(n_, Q(0));
    Vec p = unit_vector(n_, 0);
    for (int j = 0; j < n_; ++j) {
      Mat m = multiplication_matrix(p);
      for (int i = 0; i < n_; ++i) tr_pow_[j] += m(i, i);
      p = multiply(p, gen_);
    }
  }

  // Degree one is trivially fine; otherwise reject repeated factors and rational
  // roots, which settles irreducibility up to degree three.
  void check_irreducible() const {
    if (n_ == 1) return;
    std::vector<Q> f = poly_, df(n_);
    for (int i = 1; i <= n_; ++i) df[i - 1] = f[i] * i;
    if (poly_gcd_degree(f, df) > 0) throw ValidationError("field '" + name_ + "': minimal polynomial is not squarefree");
    if (has_rational_root())
      throw ValidationError("field '" + name_ + "': minimal polynomial has a rational root");
  }

  static int poly_gcd_degree(std::vector<Q> a, std::vector<Q> b) {
    auto trim = [](std::vector<Q>& p) {
      while (!p.empty() && p.back() == 0) p.pop_back();
    };
    trim(a);
    trim(b);
    while (!b.empty()) {
      while (a.size() >= b.size()) {
        Q c = a.back() / b.back();
        size_t shift = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
        trim(a);
        if (a.empty()) break;
      }
      std::swap(a, b);
    }
    return int(a.size()) - 1;
  }

  bool has_rational_root() const {
    mpz_class l = 1;
    for (const Q& c : poly_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    std::vector<mpz_class> z;
    for (const Q& c : poly_) {
      Q t = c * l;
      z.push_back(t.get_num());
    }
    if (z[0] == 0) return true;
    auto divisors = [](mpz_class v) {
      v = abs(v);
      std::vector<mpz_class> d;
      for (mpz_class i = 1; i * i <= v; ++i)
        if (v % i == 0) {
          d.push_back(i);
          if (i * i != v) d.push_back(v / i);
        }
      return d;
    };
    for (const mpz_class& p : divisors(z[0]))
      for (const mpz_class& q : divisors(z.back()))
        for (int s : {1, -1}) {
          Q r(p * s, q);
          r.canonicalize();
          Q acc = 0;
          for (int i = n_; i >= 0; --i) acc = acc * r + poly_[i];
          if (acc == 0) return true;
        }
    return false;
  }

  std::string name_;
  std::vector<Q> poly_;
  int n_;
  Vec gen_;
  Mat gen_matrix_;
  Vec tr_pow_;
};

inline bool same_field(const FieldPtr& a, const FieldPtr& b) { return a == b || a->same(*b); }

class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(FieldPtr f, Vec coords) : f_(std::move(f)), c_(std::move(coords)) {
    if (int(c_.size()) != f_->degree()) throw ValidationError("coordinate vector length differs from field degree");
  }
  static FieldElement zero(const FieldPtr& f) { return FieldElement(f, Vec(f->degree())); }
  static FieldElement one(const FieldPtr& f) { return FieldElement(f, unit_vector(f->degree(), 0)); }
  static FieldElement rational(const FieldPtr& f, const Q& q) {
    Vec v(f->degree());
    v[0] = q;
    return FieldElement(f, std::move(v));
  }
  static FieldElement generator(const FieldPtr& f) { return FieldElement(f, f->generator()); }
  static FieldElement power_of_generator(const FieldPtr& f, int j) {
    FieldElement x = one(f), g = generator(f);
    for (int k = 0; k < j; ++k) x = x * g;
    return x;
  }

  const FieldPtr& field() const { return f_; }
  const Vec& coords() const { return c_; }
  bool is_zero() const { return spwp::is_zero(c_); }
  Q trace() const { return f_->trace(c_); }

  FieldElement inverse() const {
    if (is_zero()) throw DivisionByZero("inverse of zero in field '" + f_->name() + "'");
    auto x = spwp::solve(f_->multiplication_matrix(c_), unit_vector(f_->degree(), 0));
    if (!x) throw DivisionByZero("element is a zero divisor in '" + f_->name() + "'");
    return FieldElement(f_, *x);
  }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    check(a, b);
    return FieldElement(a.f_, spwp::add(a.c_, b.c_));
  }
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    check(a, b);
    return FieldElement(a.f_, spwp::add(a.c_, scaled(b.c_, -1)));
  }
  friend FieldElement operator-(const FieldElement& a) { return FieldElement(a.f_, scaled(a.c_, -1)); }
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    check(a, b);
    return FieldElement(a.f_, a.f_->multiply(a.c_, b.c_));
  }
  friend FieldElement operator*(const Q& s, const FieldElement& a) { return FieldElement(a.f_, scaled(a.c_, s)); }
  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return same_field(a.f_, b.f_) && a.c_ == b.c_;
  }

 private:
  static void check(const FieldElement& a, const FieldElement& b) {
    if (!same_field(a.f_, b.f_)) throw FieldMismatch(a.f_->name() + " vs " + b.f_->name());
  }
  FieldPtr f_;
  Vec c_;
};

inline FieldElement evaluate(const std::vector<Q>& poly, const FieldElement& x) {
  FieldElement acc = FieldElement::zero(x.field());
  for (int i = int(poly.size()) - 1; i >= 0; --i) acc = acc * x + FieldElement::rational(x.field(), poly[i]);
  return acc;
}

// A field isomorphism determined by the image of the power-basis generator.
// The codomain may be a distinct but identical copy of the domain.
struct FieldAutomorphism {
  FieldPtr field;
  FieldElement image_of_generator;

  static FieldAutomorphism identity(const FieldPtr& f) { return {f, FieldElement::generator(f)}; }

  // Column j holds the coordinates of image^j.
  Mat matrix() const {
    int n = field->degree();
    Mat m(n, n);
    FieldElement p = FieldElement::one(image_of_generator.field());
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) m(i, j) = p.coords()[i];
      p = p * image_of_generator;
    }
    return m;
  }
  FieldElement apply(const FieldElement& x) const {
    return FieldElement(image_of_generator.field(), matrix() * x.coords());
  }
  // (this ∘ other)
  FieldAutomorphism compose(const FieldAutomorphism& other) const {
    return {other.field, apply(FieldElement(field, other.image_of_generator.coords()))};
  }
  FieldAutomorphism inverse() const {
    auto inv = spwp::inverse(matrix());
    if (!inv) throw ValidationError("field map is not bijective");
    return {image_of_generator.field(), FieldElement(field, *inv * field->generator())};
  }
  bool is_identity() const { return image_of_generator.coords() == field->generator(); }
};

namespace detail {

inline std::optional<Q> rational_sqrt(const Q& q) {
  if (q < 0) return std::nullopt;
  mpz_class n = q.get_num(), d = q.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
  mpz_class sn = sqrt(n), sd = sqrt(d);
  return Q(sn, sd);
}

// Best rational approximation with bounded denominator.
inline Q rationalize(long double x, long max_den = 1000000) {
  long double a = std::floor(x);
  mpz_class h0 = 1, h1 = mpz_class(static_cast<long>(a)), k0 = 0, k1 = 1;
  long double frac = x - a;
  for (int it = 0; it < 40 && std::fabs(frac) > 1e-15L; ++it) {
    long double inv = 1.0L / frac;
    long double ai = std::floor(inv);
    mpz_class an = static_cast<long>(ai);
    mpz_class h2 = an * h1 + h0, k2 = an * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1, h1 = h2, k0 = k1, k1 = k2;
    frac = inv - ai;
  }
  Q r(h1, k1);
  r.canonicalize();
  return r;
}

// Roots of other conjugates for degree >= 4 are located numerically and then
// certified exactly; only certified roots are returned.
inline std::vector<FieldElement> roots_by_numeric_search(const FieldPtr& L) {
  using C = std::complex<long double>;
  const int n = L->degree();
  std::vector<long double> f(n + 1);
  for (int i = 0; i <= n; ++i) f[i] = L->min_poly()[i].get_d();
  auto eval = [&](C z) {
    C acc = 0;
    for (int i = n; i >= 0; --i) acc = acc * z + f[i];
    return acc;
  };
  std::vector<C> r(n);
  for (int i = 0; i < n; ++i) r[i] = std::pow(C(0.4L, 0.9L), i);
  for (int it = 0; it < 2000; ++it)
    for (int i = 0; i < n; ++i) {
      C den = 1;
      for (int j = 0; j < n; ++j)
        if (j != i) den *= r[i] - r[j];
      r[i] -= eval(r[i]) / den;
    }
  std::vector<FieldElement> found;
  std::vector<int> perm(n);
  for (int k = 0; k < n; ++k) {
    std::iota(perm.begin(), perm.end(), 0);
    std::swap(perm[0], perm[k]);
    std::sort(perm.begin() + 1, perm.end());
    bool ok = false;
    do {
      // Solve the Vandermonde system g(r_m) = r_{perm(m)} numerically.
      std::vector<std::vector<C>> a(n, std::vector<C>(n + 1));
      for (int m = 0; m < n; ++m) {
        C p = 1;
        for (int j = 0; j < n; ++j) a[m][j] = p, p *= r[m];
        a[m][n] = r[perm[m]];
      }
      for (int c = 0; c < n; ++c) {
        int piv = c;
        for (int i = c + 1; i < n; ++i)
          if (std::abs(a[i][c]) > std::abs(a[piv][c])) piv = i;
        std::swap(a[c], a[piv]);
        for (int i = 0; i < n; ++i) {
          if (i == c) continue;
          C fct = a[i][c] / a[c][c];
          for (int j = c; j <= n; ++j) a[i][j] -= fct * a[c][j];
        }
      }
      Vec g(n);
      bool real = true;
      for (int j = 0; j < n; ++j) {
        C v = a[j][n] / a[j][j];
        if (std::fabs(v.imag()) > 1e-6L) real = false;
        g[j] = rationalize(v.real());
      }
      if (!real) continue;
      FieldElement y(L, g);
      if (evaluate(L->min_poly(), y).is_zero()) {
        found.push_back(y);
        ok = true;
      }
    } while (!ok && std::next_permutation(perm.begin() + 1, perm.end()));
  }
  return found;
}

}  // namespace detail

// All automorphisms of L over Q: identity first, then ascending by the
// coordinates of the image of the generator.
inline std::vector<FieldAutomorphism> galois_automorphisms(const FieldPtr& L) {
  const int n = L->degree();
  const FieldElement theta = FieldElement::generator(L);
  std::vector<FieldElement> roots;
  if (n == 1) {
    roots.push_back(theta);
  } else if (n == 2) {
    roots.push_back(theta);
    roots.push_back(FieldElement::rational(L, -L->min_poly()[1]) - theta);
  } else if (n == 3) {
    const Q &c = L->min_poly()[0], &b = L->min_poly()[1], &a = L->min_poly()[2];
    Q disc = 18 * a * b * c - 4 * a * a * a * c + a * a * b * b - 4 * b * b * b - 27 * c * c;
    roots.push_back(theta);
    if (auto s = detail::rational_sqrt(disc)) {
      FieldElement fp = Q(3) * theta * theta + Q(2 * a) * theta + FieldElement::rational(L, b);
      FieldElement delta = FieldElement::rational(L, *s) * fp.inverse();
      FieldElement p = theta + FieldElement::rational(L, a);
      roots.push_back(Q(1, 2) * (delta - p));
      roots.push_back(Q(-1, 2) * (delta + p));
    }
  } else {
    roots = detail::roots_by_numeric_search(L);
  }
  std::vector<FieldElement> certified;
  for (const FieldElement& y : roots)
    if (evaluate(L->min_poly(), y).is_zero() &&
        std::none_of(certified.begin(), certified.end(), [&](const FieldElement& z) { return z == y; }))
      certified.push_back(y);
  if (int(certified.size()) < n)
    throw NotGalois("field '" + L->name() + "': found " + std::to_string(certified.size()) + " of " +
                    std::to_string(n) + " conjugates");
  auto id = std::find(certified.begin(), certified.end(), theta);
  std::iter_swap(certified.begin(), id);
  std::sort(certified.begin() + 1, certified.end(),
            [](const FieldElement& x, const FieldElement& y) { return x.coords() < y.coords(); });
  std::vector<FieldAutomorphism> out;
  for (const FieldElement& y : certified) out.push_back({L, y});
  return out;
}

}  // namespace spwp
