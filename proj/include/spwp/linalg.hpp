#pragma once

// Dense exact linear algebra over Q (GMP rationals).

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

#include "spwp/errors.hpp"

namespace spwp {

using Q = mpq_class;
using Vec = std::vector<Q>;

inline Q parse_rational(const std::string& s) {
  Q q;
  if (s.empty() || q.set_str(s, 10) != 0) throw ValidationError("not a rational number: '" + s + "'");
  if (q.get_den() == 0) throw DivisionByZero("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

inline std::string to_string(const Q& q) { return q.get_str(); }

inline bool is_zero(const Vec& v) {
  for (const Q& x : v)
    if (x != 0) return false;
  return true;
}

inline Vec unit_vector(int n, int i) {
  Vec v(n);
  v[i] = 1;
  return v;
}

inline Vec add(const Vec& a, const Vec& b) {
  Vec r(a);
  for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

inline Vec scaled(const Vec& a, const Q& s) {
  Vec r(a);
  for (Q& x : r) x *= s;
  return r;
}

inline Q dot(const Vec& a, const Vec& b) {
  Q s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols) : r_(rows), c_(cols), a_(size_t(rows) * cols) {}

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static Mat from_columns(const std::vector<Vec>& cols, int rows) {
    Mat m(rows, int(cols.size()));
    for (int j = 0; j < m.c_; ++j)
      for (int i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    return m;
  }
  static Mat from_rows(const std::vector<Vec>& rows, int cols) {
    Mat m(int(rows.size()), cols);
    for (int i = 0; i < m.r_; ++i)
      for (int j = 0; j < cols; ++j) m(i, j) = rows[i][j];
    return m;
  }

  int rows() const { return r_; }
  int cols() const { return c_; }
  Q& operator()(int i, int j) { return a_[size_t(i) * c_ + j]; }
  const Q& operator()(int i, int j) const { return a_[size_t(i) * c_ + j]; }

  Vec column(int j) const {
    Vec v(r_);
    for (int i = 0; i < r_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  Vec row(int i) const { return Vec(a_.begin() + size_t(i) * c_, a_.begin() + size_t(i + 1) * c_); }

  Mat transpose() const {
    Mat t(c_, r_);
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_zero() const {
    for (const Q& x : a_)
      if (x != 0) return false;
    return true;
  }

  friend bool operator==(const Mat& x, const Mat& y) { return x.r_ == y.r_ && x.c_ == y.c_ && x.a_ == y.a_; }

  friend Mat operator*(const Mat& x, const Mat& y) {
    Mat p(x.r_, y.c_);
    for (int i = 0; i < x.r_; ++i)
      for (int k = 0; k < x.c_; ++k) {
        const Q& xik = x(i, k);
        if (xik == 0) continue;
        for (int j = 0; j < y.c_; ++j)
          if (y(k, j) != 0) p(i, j) += xik * y(k, j);
      }
    return p;
  }
  friend Vec operator*(const Mat& x, const Vec& v) {
    Vec out(x.r_);
    for (int i = 0; i < x.r_; ++i)
      for (int k = 0; k < x.c_; ++k)
        if (x(i, k) != 0 && v[k] != 0) out[i] += x(i, k) * v[k];
    return out;
  }
  friend Mat operator+(Mat x, const Mat& y) {
    for (size_t i = 0; i < x.a_.size(); ++i) x.a_[i] += y.a_[i];
    return x;
  }
  friend Mat operator-(Mat x, const Mat& y) {
    for (size_t i = 0; i < x.a_.size(); ++i) x.a_[i] -= y.a_[i];
    return x;
  }
  friend Mat operator*(const Q& s, Mat x) {
    for (Q& v : x.a_) v *= s;
    return x;
  }

 private:
  int r_ = 0, c_ = 0;
  std::vector<Q> a_;
};

// Reduced row echelon form; pivots[k] is the pivot column of row k.
struct Rref {
  Mat m;
  std::vector<int> pivots;
};

inline Rref rref(Mat m) {
  Rref out;
  int row = 0;
  for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
    int p = row;
    while (p < m.rows() && m(p, col) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != row)
      for (int j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
    Q inv = 1 / m(row, col);
    for (int j = col; j < m.cols(); ++j) m(row, j) *= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col) == 0) continue;
      Q f = m(i, col);
      for (int j = col; j < m.cols(); ++j)
        if (m(row, j) != 0) m(i, j) -= f * m(row, j);
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.m = std::move(m);
  return out;
}

inline int rank(const Mat& m) { return int(rref(m).pivots.size()); }

// Columns of the result span the kernel of m.
inline Mat nullspace(const Mat& m) {
  Rref r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (int p : r.pivots) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (int f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vec v(m.cols());
    v[f] = 1;
    for (size_t k = 0; k < r.pivots.size(); ++k) v[r.pivots[k]] = -r.m(int(k), f);
    basis.push_back(std::move(v));
  }
  return Mat::from_columns(basis, m.cols());
}

inline std::optional<Mat> inverse(const Mat& m) {
  int n = m.rows();
  if (n != m.cols()) return std::nullopt;
  Mat aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  Rref r = rref(aug);
  if (int(r.pivots.size()) < n || r.pivots[n - 1] != n - 1) return std::nullopt;
  Mat inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(i, j) = r.m(i, n + j);
  return inv;
}

// Some x with a x = b, if one exists.
inline std::optional<Vec> solve(const Mat& a, const Vec& b) {
  Mat aug(a.rows(), a.cols() + 1);
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  Rref r = rref(aug);
  if (!r.pivots.empty() && r.pivots.back() == a.cols()) return std::nullopt;
  Vec x(a.cols());
  for (size_t k = 0; k < r.pivots.size(); ++k) x[r.pivots[k]] = r.m(int(k), a.cols());
  return x;
}

// Indices of the leftmost maximal independent set of columns.
inline std::vector<int> independent_columns(const Mat& m) { return rref(m).pivots; }

inline Mat kron(const Mat& x, const Mat& y) {
  Mat k(x.rows() * y.rows(), x.cols() * y.cols());
  for (int i = 0; i < x.rows(); ++i)
    for (int j = 0; j < x.cols(); ++j) {
      if (x(i, j) == 0) continue;
      for (int p = 0; p < y.rows(); ++p)
        for (int q = 0; q < y.cols(); ++q) k(i * y.rows() + p, j * y.cols() + q) = x(i, j) * y(p, q);
    }
  return k;
}

inline Vec kron(const Vec& x, const Vec& y) {
  Vec k(x.size() * y.size());
  for (size_t i = 0; i < x.size(); ++i)
    for (size_t j = 0; j < y.size(); ++j) k[i * y.size() + j] = x[i] * y[j];
  return k;
}

inline Mat block_diagonal(const std::vector<Mat>& blocks) {
  int r = 0, c = 0;
  for (const Mat& b : blocks) r += b.rows(), c += b.cols();
  Mat m(r, c);
  int i0 = 0, j0 = 0;
  for (const Mat& b : blocks) {
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < b.cols(); ++j) m(i0 + i, j0 + j) = b(i, j);
    i0 += b.rows();
    j0 += b.cols();
  }
  return m;
}

}  // namespace spwp
