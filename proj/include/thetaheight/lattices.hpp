#pragma once

// Full-rank lattices in Q^n and the distance
//   delta(L1, L2) = log #((L1 + L2) / (L1 n L2)).
// Everything is exact: GMP integers and rationals, no floating point until
// the final log.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "matrix.hpp"
#include "numeric.hpp"

namespace thetaheight::lattices {

struct NotSublattice : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Raised when two exact computations of the same quantity disagree.
struct InvariantBreach : std::logic_error {
  using std::logic_error::logic_error;
};

namespace detail {

inline Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;  // truncates toward zero
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

/// Extended gcd: returns (g, s, t) with s a + t b = g >= 0.
inline void xgcd(const Integer& a, const Integer& b, Integer& g, Integer& s, Integer& t) {
  Integer r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    Integer q = r0 / r1;
    std::tie(r0, r1) = std::make_pair(r1, Integer(r0 - q * r1));
    std::tie(s0, s1) = std::make_pair(s1, Integer(s0 - q * s1));
    std::tie(t0, t1) = std::make_pair(t1, Integer(t0 - q * t1));
  }
  if (r0 < 0) {
    r0 = -r0;
    s0 = -s0;
    t0 = -t0;
  }
  g = r0;
  s = s0;
  t = t0;
}

inline Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return abs(a / gcd(a, b) * b);
}

}  // namespace detail

/// Column-style Hermite normal form of an n x m integer matrix of rank n:
/// the first n columns form a lower-triangular H with positive diagonal and
/// 0 <= H(i, j) < H(i, i) for j < i; the remaining columns are zero and
/// dropped. Throws if the rank is smaller than n.
inline IntMatrix hnf(IntMatrix a) {
  const std::size_t n = a.rows(), m = a.cols();
  if (m < n) throw std::invalid_argument("hnf: fewer generators than the dimension");
  auto col_combine = [&](std::size_t i, std::size_t j, const Integer& s, const Integer& t, const Integer& u,
                         const Integer& v) {
    // (col_i, col_j) <- (s col_i + t col_j, u col_i + v col_j)
    for (std::size_t r = 0; r < n; ++r) {
      Integer ci = a(r, i), cj = a(r, j);
      a(r, i) = s * ci + t * cj;
      a(r, j) = u * ci + v * cj;
    }
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      if (a(i, j) == 0) continue;
      Integer g, s, t;
      detail::xgcd(a(i, i), a(i, j), g, s, t);
      // [[s, -b/g], [t, a/g]] has determinant 1.
      const Integer ai = a(i, i) / g, aj = a(i, j) / g;
      col_combine(i, j, s, t, Integer(-aj), ai);
    }
    if (a(i, i) == 0) throw std::invalid_argument("hnf: matrix is singular");
    if (a(i, i) < 0)
      for (std::size_t r = 0; r < n; ++r) a(r, i) = -a(r, i);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      const Integer q = detail::floor_div(a(i, j), a(i, i));
      if (q == 0) continue;
      for (std::size_t r = i; r < n; ++r) a(r, j) -= q * a(r, i);
    }
  IntMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) h(i, j) = a(i, j);
  return h;
}

/// Elementary divisors d_1 | d_2 | ... of a nonsingular square integer matrix.
inline std::vector<Integer> smith_divisors(IntMatrix a) {
  const std::size_t n = a.rows();
  if (!a.square()) throw std::invalid_argument("smith_divisors: matrix must be square");
  for (std::size_t k = 0; k < n; ++k) {
    for (;;) {
      // Pivot: smallest nonzero entry in the trailing block.
      std::size_t pi = n, pj = n;
      for (std::size_t i = k; i < n; ++i)
        for (std::size_t j = k; j < n; ++j)
          if (a(i, j) != 0 && (pi == n || abs(a(i, j)) < abs(a(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi == n) throw std::invalid_argument("smith_divisors: matrix is singular");
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(pi, j));
      for (std::size_t i = 0; i < n; ++i) std::swap(a(i, k), a(i, pj));
      bool clean = true;
      for (std::size_t i = k + 1; i < n; ++i) {
        const Integer q = a(i, k) / a(k, k);
        if (q != 0)
          for (std::size_t j = k; j < n; ++j) a(i, j) -= q * a(k, j);
        if (a(i, k) != 0) clean = false;
      }
      for (std::size_t j = k + 1; j < n; ++j) {
        const Integer q = a(k, j) / a(k, k);
        if (q != 0)
          for (std::size_t i = k; i < n; ++i) a(i, j) -= q * a(i, k);
        if (a(k, j) != 0) clean = false;
      }
      if (!clean) continue;
      // Divisibility: fold any offending row into row k and go again.
      bool divides = true;
      for (std::size_t i = k + 1; i < n && divides; ++i)
        for (std::size_t j = k + 1; j < n; ++j)
          if (a(i, j) % a(k, k) != 0) {
            for (std::size_t c = k; c < n; ++c) a(k, c) += a(i, c);
            divides = false;
            break;
          }
      if (divides) break;
    }
  }
  std::vector<Integer> d(n);
  for (std::size_t k = 0; k < n; ++k) d[k] = abs(a(k, k));
  return d;
}

/// L = (1/denom) * hnf * Z^n in canonical form: denom is the least positive
/// integer with denom * L inside Z^n, and hnf is the column HNF of denom * L.
class IntegerLattice {
 public:
  IntegerLattice() = default;

  /// Lattice generated by the columns of `basis` (n x m rational, rank n).
  explicit IntegerLattice(const RationalMatrix& basis) {
    const std::size_t n = basis.rows();
    if (n == 0) throw std::invalid_argument("lattice: empty basis");
    Integer d = 1;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < basis.cols(); ++j)
        d = detail::lcm(d, boost::multiprecision::denominator(basis(i, j)));
    IntMatrix scaled(n, basis.cols());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < basis.cols(); ++j) {
        const Rational v = basis(i, j) * Rational(d);
        scaled(i, j) = boost::multiprecision::numerator(v);
      }
    hnf_ = hnf(std::move(scaled));
    Integer c = d;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j <= i; ++j) c = gcd(c, hnf_(i, j));
    denom_ = d / c;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j <= i; ++j) hnf_(i, j) /= c;
  }

  static IntegerLattice standard(std::size_t n) { return IntegerLattice(RationalMatrix::identity(n)); }

  std::size_t dim() const { return hnf_.rows(); }
  const IntMatrix& hnf_matrix() const { return hnf_; }
  const Integer& denominator() const { return denom_; }

  RationalMatrix basis() const {
    return hnf_.map([&](const Integer& v) { return Rational(v, denom_); });
  }

  /// |det| of the canonical basis, i.e. the covolume.
  Rational covolume() const {
    Integer p = 1;
    for (std::size_t i = 0; i < dim(); ++i) p *= hnf_(i, i);
    Integer dn = 1;
    for (std::size_t i = 0; i < dim(); ++i) dn *= denom_;
    return Rational(p, dn);
  }

  /// Coordinates of v in the canonical basis (exact, by forward substitution).
  std::vector<Rational> coordinates(const std::vector<Rational>& v) const {
    if (v.size() != dim()) throw std::invalid_argument("lattice: vector has the wrong length");
    std::vector<Rational> x(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
      Rational s = v[i] * Rational(denom_);
      for (std::size_t j = 0; j < i; ++j) s -= Rational(hnf_(i, j)) * x[j];
      x[i] = s / Rational(hnf_(i, i));
    }
    return x;
  }

  bool contains(const std::vector<Rational>& v) const {
    for (const auto& c : coordinates(v))
      if (boost::multiprecision::denominator(c) != 1) return false;
    return true;
  }

  /// Every basis vector of `other` lies in this lattice.
  bool contains(const IntegerLattice& other) const {
    const RationalMatrix b = other.basis();
    for (std::size_t j = 0; j < b.cols(); ++j)
      if (!contains(b.column(j))) return false;
    return true;
  }

  friend bool operator==(const IntegerLattice& a, const IntegerLattice& b) {
    return a.denom_ == b.denom_ && a.hnf_ == b.hnf_;
  }

 private:
  Integer denom_ = 1;
  IntMatrix hnf_;
};

inline void require_same_dim(const IntegerLattice& a, const IntegerLattice& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("lattices live in different dimensions");
}

/// Dual lattice {x : x . y in Z for all y in L}, basis B^-T.
inline IntegerLattice dual(const IntegerLattice& l) {
  return IntegerLattice(inverse(l.basis()).transpose());
}

inline IntegerLattice lattice_sum(const IntegerLattice& a, const IntegerLattice& b) {
  require_same_dim(a, b);
  const std::size_t n = a.dim();
  const RationalMatrix ba = a.basis(), bb = b.basis();
  RationalMatrix cat(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      cat(i, j) = ba(i, j);
      cat(i, n + j) = bb(i, j);
    }
  return IntegerLattice(cat);
}

/// (L1 n L2) = (L1* + L2*)*.
inline IntegerLattice intersect(const IntegerLattice& a, const IntegerLattice& b) {
  require_same_dim(a, b);
  IntegerLattice out = dual(lattice_sum(dual(a), dual(b)));
  if (!a.contains(out) || !b.contains(out)) throw InvariantBreach("intersection is not inside both lattices");
  return out;
}

struct QuotientCard {
  Integer index = 1;                 ///< #(sup / sub)
  std::vector<Integer> divisors;     ///< elementary divisors of the transition matrix
};

/// #(Lsup / Lsub), computed twice: as a covolume ratio and as the product of
/// the Smith divisors of the transition matrix. The two must agree.
inline QuotientCard quotient_card(const IntegerLattice& sub, const IntegerLattice& sup) {
  require_same_dim(sub, sup);
  const std::size_t n = sub.dim();
  const RationalMatrix bs = sub.basis();
  IntMatrix t(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const auto x = sup.coordinates(bs.column(j));
    for (std::size_t i = 0; i < n; ++i) {
      if (boost::multiprecision::denominator(x[i]) != 1) throw NotSublattice("first lattice is not inside the second");
      t(i, j) = boost::multiprecision::numerator(x[i]);
    }
  }
  const Rational ratio = sub.covolume() / sup.covolume();
  if (boost::multiprecision::denominator(ratio) != 1) throw InvariantBreach("index is not an integer");
  QuotientCard q;
  q.index = boost::multiprecision::numerator(ratio);
  q.divisors = smith_divisors(t);
  Integer prod = 1;
  for (const auto& d : q.divisors) prod *= d;
  if (prod != q.index) throw InvariantBreach("covolume ratio and Smith divisors disagree");
  return q;
}

struct DeltaResult {
  IntegerLattice sum;
  IntegerLattice intersection;
  QuotientCard card;
  Real delta{0};
};

/// delta(L1, L2) = log #((L1 + L2) / (L1 n L2)).
inline DeltaResult delta(const IntegerLattice& a, const IntegerLattice& b) {
  DeltaResult r;
  r.sum = lattice_sum(a, b);
  r.intersection = intersect(a, b);
  r.card = quotient_card(r.intersection, r.sum);
  r.delta = log(to_real(r.card.index));
  return r;
}

/// Index of the intersection in the sum, without the log.
inline Integer delta_index(const IntegerLattice& a, const IntegerLattice& b) { return delta(a, b).card.index; }

/// U L for an integer matrix U.
inline IntegerLattice transform(const IntMatrix& u, const IntegerLattice& l) {
  const RationalMatrix ur = u.map([](const Integer& v) { return Rational(v); });
  return IntegerLattice(ur * l.basis());
}

inline IntegerLattice scaled(const IntegerLattice& l, const Integer& k) {
  return IntegerLattice(l.basis().map([&](const Rational& v) { return v * Rational(k); }));
}

struct ScalingInvariance {
  Integer base_index, transformed_index, scaled_index;
  bool unimodular_ok = false, scaling_ok = false;
  bool ok() const { return unimodular_ok && scaling_ok; }
};

/// delta(U L1, U L2) = delta(L1, L2) for unimodular U, and
/// delta(k L1, k L2) = delta(L1, L2). Compared on exact indices.
inline ScalingInvariance scaling_invariance_check(const IntegerLattice& a, const IntegerLattice& b, const IntMatrix& u,
                                                  const Integer& k) {
  const Integer det = numerator(determinant(u.map([](const Integer& v) { return Rational(v); })));
  if (abs(det) != 1) throw std::invalid_argument("scaling check needs a unimodular matrix");
  if (k <= 0) throw std::invalid_argument("scaling factor must be positive");
  ScalingInvariance s;
  s.base_index = delta_index(a, b);
  s.transformed_index = delta_index(transform(u, a), transform(u, b));
  s.scaled_index = delta_index(scaled(a, k), scaled(b, k));
  s.unimodular_ok = s.base_index == s.transformed_index;
  s.scaling_ok = s.base_index == s.scaled_index;
  return s;
}

}  // namespace thetaheight::lattices
