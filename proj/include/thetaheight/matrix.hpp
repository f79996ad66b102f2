#pragma once

// Small dense row-major matrices. Dimensions here are the genus g (1..4
// in practice) or the lattice rank, so nothing is blocked or vectorized.

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

#include "numeric.hpp"

namespace thetaheight {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0))
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw std::invalid_argument("ragged matrix initializer");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  std::vector<T> column(std::size_t j) const {
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  template <class F>
  auto map(F&& f) const -> Matrix<decltype(f(std::declval<const T&>()))> {
    Matrix<decltype(f(std::declval<const T&>()))> out(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out(i, j) = f((*this)(i, j));
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <class T>
Matrix<T> operator+(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix dimension mismatch");
  Matrix<T> c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

template <class T>
Matrix<T> operator-(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("matrix dimension mismatch");
  Matrix<T> c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix dimension mismatch");
  Matrix<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      T s(0);
      for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
      c(i, j) = s;
    }
  return c;
}

template <class T>
std::vector<T> operator*(const Matrix<T>& a, const std::vector<T>& v) {
  if (a.cols() != v.size()) throw std::invalid_argument("matrix-vector dimension mismatch");
  std::vector<T> out(a.rows(), T(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) out[i] += a(i, k) * v[k];
  return out;
}

using RealMatrix = Matrix<Real>;
using ComplexMatrix = Matrix<Complex>;
using IntMatrix = Matrix<Integer>;
using RationalMatrix = Matrix<Rational>;

inline RealMatrix to_real(const IntMatrix& m) {
  return m.map([](const Integer& x) { return to_real(x); });
}

inline ComplexMatrix make_complex(const RealMatrix& re, const RealMatrix& im) {
  ComplexMatrix c(re.rows(), re.cols());
  for (std::size_t i = 0; i < re.rows(); ++i)
    for (std::size_t j = 0; j < re.cols(); ++j) c(i, j) = Complex(re(i, j), im(i, j));
  return c;
}

// ---------------------------------------------------------------------------
// Real symmetric kernels

/// Cholesky factor L (lower) with A = L L^T. Returns the pivots L_ii^2 in
/// `pivots`; stops and returns false at the first non-positive pivot.
inline bool cholesky(const RealMatrix& a, RealMatrix& l, std::vector<Real>& pivots) {
  const std::size_t n = a.rows();
  l = RealMatrix(n, n);
  pivots.assign(n, Real(0));
  for (std::size_t j = 0; j < n; ++j) {
    Real d = a(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    pivots[j] = d;
    if (!(d > 0)) return false;
    l(j, j) = sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      Real s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / l(j, j);
    }
  }
  return true;
}

inline bool positive_definite(const RealMatrix& a) {
  RealMatrix l;
  std::vector<Real> p;
  return cholesky(a, l, p);
}

/// Determinant by Gaussian elimination with partial pivoting.
template <class T>
T determinant(Matrix<T> a) {
  const std::size_t n = a.rows();
  T det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (abs(a(r, c)) > abs(a(p, c))) p = r;
    if (a(p, c) == T(0)) return T(0);
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      T f = a(r, c) / a(c, c);
      for (std::size_t j = c; j < n; ++j) a(r, j) -= f * a(c, j);
    }
  }
  return det;
}

/// Inverse by Gauss-Jordan with partial pivoting. Throws NumericalFailure
/// when a pivot vanishes.
template <class T>
Matrix<T> inverse(Matrix<T> a) {
  const std::size_t n = a.rows();
  Matrix<T> inv = Matrix<T>::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (abs(a(r, c)) > abs(a(p, c))) p = r;
    if (a(p, c) == T(0)) throw NumericalFailure("singular matrix");
    if (p != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(p, j), a(c, j));
        std::swap(inv(p, j), inv(c, j));
      }
    T piv = a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) /= piv;
      inv(c, j) /= piv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      T f = a(r, c);
      if (f == T(0)) continue;
      for (std::size_t j = 0; j < n; ++j) {
        a(r, j) -= f * a(c, j);
        inv(r, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

/// Max-row-sum norm.
template <class T>
Real norm_inf(const Matrix<T>& a) {
  Real best(0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Real s(0);
    for (std::size_t j = 0; j < a.cols(); ++j) s += abs(a(i, j));
    best = std::max(best, s);
  }
  return best;
}

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations.
inline std::vector<Real> symmetric_eigenvalues(RealMatrix a) {
  const std::size_t n = a.rows();
  const Real eps = ldexp(Real(1), -precision_bits(a.rows() ? a(0, 0) : Real(1)) + 2);
  for (int sweep = 0; sweep < 100; ++sweep) {
    Real off(0), diag(0);
    for (std::size_t i = 0; i < n; ++i) {
      diag += a(i, i) * a(i, i);
      for (std::size_t j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
    }
    if (off <= eps * eps * diag) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (a(p, q) == 0) continue;
        Real theta = (a(q, q) - a(p, p)) / (2 * a(p, q));
        Real t = (theta >= 0 ? Real(1) : Real(-1)) / (abs(theta) + sqrt(theta * theta + 1));
        Real c = 1 / sqrt(t * t + 1), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          Real akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          Real apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
  }
  std::vector<Real> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a(i, i);
  return ev;
}

/// Certified lower bound on the smallest eigenvalue of a symmetric
/// positive-definite matrix: an estimate shrunk slightly, then confirmed by
/// a successful Cholesky factorization of A - mu I.
inline Real min_eigenvalue_lower_bound(const RealMatrix& a) {
  auto ev = symmetric_eigenvalues(a);
  Real est = *std::min_element(ev.begin(), ev.end());
  if (!(est > 0)) return Real(0);
  for (Real shrink : {Real("0.999999"), Real("0.999"), Real("0.9"), Real("0.5"), Real("0.1")}) {
    Real mu = est * shrink;
    RealMatrix b = a;
    for (std::size_t i = 0; i < a.rows(); ++i) b(i, i) -= mu;
    if (positive_definite(b)) return mu;
  }
  return Real(0);
}

}  // namespace thetaheight
