#pragma once

// Points of the Siegel upper half space, the action of Sp(2g, Z), the
// fundamental-domain predicates and two reducers (exact Gauss reduction
// for g = 1, a translation / LLL / generator heuristic for any g).

#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "matrix.hpp"
#include "numeric.hpp"

namespace thetaheight::siegel {

/// tau = X + iY with X, Y real symmetric and Y positive definite.
struct SiegelPoint {
  RealMatrix re;
  RealMatrix im;

  SiegelPoint() = default;
  SiegelPoint(RealMatrix x, RealMatrix y) : re(std::move(x)), im(std::move(y)) {}

  static SiegelPoint scalar(const Real& x, const Real& y) { return {RealMatrix{{x}}, RealMatrix{{y}}}; }
  static SiegelPoint i_identity(std::size_t g) {
    return {RealMatrix(g, g), RealMatrix::identity(g)};
  }

  std::size_t g() const { return re.rows(); }
  ComplexMatrix complex() const { return make_complex(re, im); }
};

inline SiegelPoint from_complex(const ComplexMatrix& m) {
  SiegelPoint p{RealMatrix(m.rows(), m.cols()), RealMatrix(m.rows(), m.cols())};
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      p.re(i, j) = m(i, j).re;
      p.im(i, j) = m(i, j).im;
    }
  return p;
}

inline Real det_im(const SiegelPoint& tau) { return determinant(tau.im); }

// ---------------------------------------------------------------------------
// Symplectic matrices

/// gamma = [[alpha, beta], [lambda, mu]] acting by
/// tau -> (alpha tau + beta)(lambda tau + mu)^-1.
struct SymplecticMatrix {
  IntMatrix alpha, beta, lambda, mu;

  std::size_t g() const { return alpha.rows(); }

  static SymplecticMatrix identity(std::size_t g) {
    return {IntMatrix::identity(g), IntMatrix(g, g), IntMatrix(g, g), IntMatrix::identity(g)};
  }

  /// tau -> tau + n, n integer symmetric.
  static SymplecticMatrix translation(const IntMatrix& n) {
    const std::size_t g = n.rows();
    return {IntMatrix::identity(g), n, IntMatrix(g, g), IntMatrix::identity(g)};
  }

  /// tau -> -tau^-1.
  static SymplecticMatrix inversion(std::size_t g) {
    IntMatrix minus_id(g, g);
    for (std::size_t i = 0; i < g; ++i) minus_id(i, i) = -1;
    return {IntMatrix(g, g), minus_id, IntMatrix::identity(g), IntMatrix(g, g)};
  }

  /// The g = 1 inversion embedded in coordinate k.
  static SymplecticMatrix partial_inversion(std::size_t g, std::size_t k) {
    SymplecticMatrix s = identity(g);
    s.alpha(k, k) = 0;
    s.mu(k, k) = 0;
    s.beta(k, k) = -1;
    s.lambda(k, k) = 1;
    return s;
  }

  /// tau -> U^T tau U for unimodular U (u_inv its exact inverse).
  static SymplecticMatrix basis_change(const IntMatrix& u, const IntMatrix& u_inv) {
    const std::size_t g = u.rows();
    return {u.transpose(), IntMatrix(g, g), IntMatrix(g, g), u_inv};
  }

  IntMatrix assembled() const {
    const std::size_t n = g();
    IntMatrix m(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) = alpha(i, j);
        m(i, j + n) = beta(i, j);
        m(i + n, j) = lambda(i, j);
        m(i + n, j + n) = mu(i, j);
      }
    return m;
  }

  static SymplecticMatrix from_assembled(const IntMatrix& m) {
    if (!m.square() || m.rows() % 2 != 0) throw std::invalid_argument("symplectic matrix must be 2g x 2g");
    const std::size_t n = m.rows() / 2;
    SymplecticMatrix s{IntMatrix(n, n), IntMatrix(n, n), IntMatrix(n, n), IntMatrix(n, n)};
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        s.alpha(i, j) = m(i, j);
        s.beta(i, j) = m(i, j + n);
        s.lambda(i, j) = m(i + n, j);
        s.mu(i, j) = m(i + n, j + n);
      }
    return s;
  }

  /// gamma^T J gamma = J.
  bool is_symplectic() const {
    const IntMatrix at_l = alpha.transpose() * lambda;
    const IntMatrix bt_m = beta.transpose() * mu;
    const IntMatrix cross = alpha.transpose() * mu - lambda.transpose() * beta;
    return at_l == at_l.transpose() && bt_m == bt_m.transpose() && cross == IntMatrix::identity(g());
  }

  /// Exact inverse [[mu^T, -beta^T], [-lambda^T, alpha^T]].
  SymplecticMatrix inverse() const {
    const std::size_t n = g();
    IntMatrix zero(n, n);
    return {mu.transpose(), zero - beta.transpose(), zero - lambda.transpose(), alpha.transpose()};
  }

  friend SymplecticMatrix operator*(const SymplecticMatrix& a, const SymplecticMatrix& b) {
    return from_assembled(a.assembled() * b.assembled());
  }
  friend bool operator==(const SymplecticMatrix& a, const SymplecticMatrix& b) {
    return a.assembled() == b.assembled();
  }
};

// ---------------------------------------------------------------------------
// Validation and action

struct ValidityReport {
  Real symmetry_defect{0};
  Real min_pivot{0};
  bool valid = false;
};

inline void check_shape(const SiegelPoint& tau) {
  if (!tau.re.square() || !tau.im.square() || tau.re.rows() != tau.im.rows() || tau.re.rows() == 0)
    throw std::invalid_argument("Siegel point needs square real and imaginary parts of equal dimension");
  for (std::size_t i = 0; i < tau.g(); ++i)
    for (std::size_t j = 0; j < tau.g(); ++j)
      if (!isfinite(tau.re(i, j)) || !isfinite(tau.im(i, j)))
        throw std::invalid_argument("Siegel point has non-finite entries");
}

inline ValidityReport validate(const SiegelPoint& tau, const Context& ctx) {
  check_shape(tau);
  ValidityReport rep;
  const std::size_t g = tau.g();
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j) {
      rep.symmetry_defect = std::max(rep.symmetry_defect, abs(tau.re(i, j) - tau.re(j, i)));
      rep.symmetry_defect = std::max(rep.symmetry_defect, abs(tau.im(i, j) - tau.im(j, i)));
    }
  RealMatrix l;
  std::vector<Real> pivots;
  bool pd = cholesky(tau.im, l, pivots);
  rep.min_pivot = pivots[0];
  for (const auto& p : pivots) rep.min_pivot = std::min(rep.min_pivot, p);
  if (!pd) {
    // The factorization stopped at the failing pivot; later entries are zero.
    for (const auto& p : pivots)
      if (!(p > 0)) {
        rep.min_pivot = p;
        break;
      }
  }
  rep.valid = pd && rep.symmetry_defect <= ctx.tolerance();
  return rep;
}

inline void require_valid(const SiegelPoint& tau, const Context& ctx) {
  auto rep = validate(tau, ctx);
  if (!rep.valid) throw std::invalid_argument("not a point of the Siegel upper half space");
}

inline SiegelPoint symmetrized(SiegelPoint tau) {
  for (std::size_t i = 0; i < tau.g(); ++i)
    for (std::size_t j = i + 1; j < tau.g(); ++j) {
      Real x = (tau.re(i, j) + tau.re(j, i)) / 2, y = (tau.im(i, j) + tau.im(j, i)) / 2;
      tau.re(i, j) = tau.re(j, i) = x;
      tau.im(i, j) = tau.im(j, i) = y;
    }
  return tau;
}

/// (alpha tau + beta)(lambda tau + mu)^-1, symmetrized. Throws
/// NumericalFailure when lambda tau + mu is too ill-conditioned to invert
/// at the working precision.
inline SiegelPoint act(const SymplecticMatrix& gamma, const SiegelPoint& tau, const Context& ctx) {
  if (gamma.g() != tau.g()) throw std::invalid_argument("dimension mismatch between gamma and tau");
  const ComplexMatrix t = tau.complex();
  auto lift = [](const IntMatrix& m) { return m.map([](const Integer& x) { return Complex(to_real(x)); }); };
  const ComplexMatrix num = lift(gamma.alpha) * t + lift(gamma.beta);
  const ComplexMatrix den = lift(gamma.lambda) * t + lift(gamma.mu);
  ComplexMatrix den_inv;
  try {
    den_inv = inverse(den);
  } catch (const NumericalFailure&) {
    throw NumericalFailure("lambda tau + mu is singular");
  }
  const Real cond = norm_inf(den) * norm_inf(den_inv);
  if (!(cond < ldexp(Real(1), static_cast<int>(ctx.bits / 2))))
    throw NumericalFailure("lambda tau + mu is too ill-conditioned");
  return symmetrized(from_complex(num * den_inv));
}

inline Real max_abs_diff(const SiegelPoint& a, const SiegelPoint& b) {
  Real d(0);
  for (std::size_t i = 0; i < a.g(); ++i)
    for (std::size_t j = 0; j < a.g(); ++j) {
      d = std::max(d, abs(a.re(i, j) - b.re(i, j)));
      d = std::max(d, abs(a.im(i, j) - b.im(i, j)));
    }
  return d;
}

// ---------------------------------------------------------------------------
// Fundamental domain

/// Default finite generator sample for the S.1 check. For g = 1 these are
/// S and T. For g >= 2: the full inversion composed with small integer
/// translations, each coordinate inversion, and coordinate swaps.
inline std::vector<SymplecticMatrix> default_generators(std::size_t g) {
  std::vector<SymplecticMatrix> gens;
  if (g == 1) {
    gens.push_back(SymplecticMatrix::inversion(1));
    IntMatrix one{{Integer(1)}};
    gens.push_back(SymplecticMatrix::translation(one));
    return gens;
  }
  // Symmetric translations with entries in {-1, 0, 1} (diagonal only past g = 2).
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = i; j < g; ++j)
      if (g <= 2 || i == j) slots.emplace_back(i, j);
  std::size_t combos = 1;
  for (std::size_t s = 0; s < slots.size(); ++s) combos *= 3;
  const SymplecticMatrix j_full = SymplecticMatrix::inversion(g);
  for (std::size_t c = 0; c < combos; ++c) {
    IntMatrix n(g, g);
    std::size_t code = c;
    for (const auto& [i, j] : slots) {
      int v = static_cast<int>(code % 3) - 1;
      code /= 3;
      n(i, j) = v;
      n(j, i) = v;
    }
    gens.push_back(j_full * SymplecticMatrix::translation(n));
  }
  for (std::size_t k = 0; k < g; ++k) gens.push_back(SymplecticMatrix::partial_inversion(g, k));
  for (std::size_t k = 0; k + 1 < g; ++k) {
    IntMatrix p = IntMatrix::identity(g);
    p(k, k) = 0;
    p(k + 1, k + 1) = 0;
    p(k, k + 1) = 1;
    p(k + 1, k) = 1;
    gens.push_back(SymplecticMatrix::basis_change(p, p));
  }
  return gens;
}

struct FundamentalDomainReport {
  bool s2 = false;              ///< |Re tau_ij| <= 1/2 for all i, j.
  bool s3_minkowski = false;    ///< xi^T Y xi >= Y_kk on the sampled xi.
  bool s3_offdiagonal = false;  ///< Y_{k,k+1} >= 0.
  bool s1_sampled = false;      ///< det Im(gamma tau) <= det Im(tau) on the generators.
  std::size_t s3_vectors_checked = 0;
  std::size_t s1_generators_checked = 0;
  /// S.1 and the Minkowski part of S.3 are checked on finite samples only:
  /// passing them is necessary, not sufficient, for tau to lie in F_g.
  static constexpr const char* coverage =
      "S.2 and S.3(ii) exact; S.3(i) sampled over xi in {-1,0,1}^g; S.1 sampled over the supplied generators";

  bool all() const { return s2 && s3_minkowski && s3_offdiagonal && s1_sampled; }
};

namespace detail {

inline Integer gcd_tail(const std::vector<int>& xi, std::size_t k) {
  Integer g = 0;
  for (std::size_t i = k; i < xi.size(); ++i) g = gcd(g, Integer(xi[i]));
  return g;
}

inline Real quadratic_form(const RealMatrix& y, const std::vector<int>& xi) {
  Real s(0);
  for (std::size_t i = 0; i < xi.size(); ++i)
    for (std::size_t j = 0; j < xi.size(); ++j)
      if (xi[i] != 0 && xi[j] != 0) s += y(i, j) * (xi[i] * xi[j]);
  return s;
}

/// Calls f(xi) for every xi in {-1,0,1}^g.
template <class F>
void for_each_small_vector(std::size_t g, F&& f) {
  std::size_t total = 1;
  for (std::size_t i = 0; i < g; ++i) total *= 3;
  std::vector<int> xi(g);
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    for (std::size_t i = 0; i < g; ++i) {
      xi[i] = static_cast<int>(c % 3) - 1;
      c /= 3;
    }
    f(xi);
  }
}

}  // namespace detail

inline FundamentalDomainReport fundamental_domain_report(const SiegelPoint& tau,
                                                         const std::vector<SymplecticMatrix>& generators,
                                                         const Context& ctx) {
  require_valid(tau, ctx);
  const Real tol = ctx.tolerance();
  const std::size_t g = tau.g();
  FundamentalDomainReport rep;

  rep.s2 = true;
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j)
      if (abs(tau.re(i, j)) > Real(0.5) + tol) rep.s2 = false;

  rep.s3_minkowski = true;
  detail::for_each_small_vector(g, [&](const std::vector<int>& xi) {
    const Real q = detail::quadratic_form(tau.im, xi);
    for (std::size_t k = 0; k < g; ++k) {
      if (detail::gcd_tail(xi, k) != 1) continue;
      ++rep.s3_vectors_checked;
      if (q < tau.im(k, k) * (1 - tol)) rep.s3_minkowski = false;
    }
  });

  rep.s3_offdiagonal = true;
  for (std::size_t k = 0; k + 1 < g; ++k)
    if (tau.im(k, k + 1) < -tol) rep.s3_offdiagonal = false;

  rep.s1_sampled = true;
  const Real d = det_im(tau);
  for (const auto& gamma : generators) {
    if (gamma.g() != g) throw std::invalid_argument("generator dimension mismatch");
    ++rep.s1_generators_checked;
    if (det_im(act(gamma, tau, ctx)) > d * (1 + tol)) rep.s1_sampled = false;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Reduction

struct ReductionCertificate {
  FundamentalDomainReport report;
  std::vector<Real> det_history;  ///< det Im after each applied move; nondecreasing.
  std::size_t iterations = 0;
  bool converged = true;
};

struct ReductionResult {
  SiegelPoint reduced;
  SymplecticMatrix gamma;
  ReductionCertificate certificate;
};

/// One step of the g = 1 Gauss reduction: T^shift or S.
struct G1Step {
  enum class Kind { translate, invert } kind;
  Integer shift = 0;

  SymplecticMatrix matrix() const {
    if (kind == Kind::invert) return SymplecticMatrix::inversion(1);
    return SymplecticMatrix::translation(IntMatrix{{shift}});
  }
};

struct G1Reduction : ReductionResult {
  /// gamma = word.back().matrix() * ... * word.front().matrix().
  std::vector<G1Step> word;
};

inline G1Reduction reduce_g1(const SiegelPoint& tau, const Context& ctx, std::size_t max_iterations = 10000) {
  if (tau.g() != 1) throw std::invalid_argument("reduce_g1 needs g = 1");
  require_valid(tau, ctx);
  const Real tol = ctx.tolerance();
  G1Reduction res;
  res.gamma = SymplecticMatrix::identity(1);
  Real x = tau.re(0, 0), y = tau.im(0, 0);
  res.certificate.det_history.push_back(y);
  std::size_t it = 0;
  for (;; ++it) {
    if (it >= max_iterations)
      throw PrecisionFailure("g = 1 reduction did not converge; Im tau too small for the working precision");
    Integer n = round_to_integer(x);
    if (n != 0) {
      x -= to_real(n);
      res.word.push_back({G1Step::Kind::translate, Integer(-n)});
      res.gamma = res.word.back().matrix() * res.gamma;
    }
    Real r2 = x * x + y * y;
    if (!(r2 < 1 - tol)) break;
    // -1/tau = (-x + i y) / |tau|^2
    x = -x / r2;
    y = y / r2;
    res.word.push_back({G1Step::Kind::invert, 0});
    res.gamma = res.word.back().matrix() * res.gamma;
    res.certificate.det_history.push_back(y);
  }
  res.certificate.iterations = it;
  res.reduced = SiegelPoint::scalar(x, y);
  res.certificate.report = fundamental_domain_report(res.reduced, default_generators(1), ctx);
  return res;
}

namespace detail {

/// Exact LLL on a positive-definite integer Gram matrix. Returns the
/// unimodular U with U^T G U reduced (delta as an exact rational).
inline IntMatrix lll_gram(const IntMatrix& gram, const Rational& delta = Rational(99, 100)) {
  const std::size_t n = gram.rows();
  IntMatrix u = IntMatrix::identity(n);
  if (n < 2) return u;
  auto gso = [&](const IntMatrix& g, RationalMatrix& mu, std::vector<Rational>& b) {
    mu = RationalMatrix(n, n);
    b.assign(n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        Rational s(g(i, j));
        for (std::size_t k = 0; k < j; ++k) s -= mu(j, k) * mu(i, k) * b[k];
        mu(i, j) = s / b[j];
      }
      Rational s(g(i, i));
      for (std::size_t j = 0; j < i; ++j) s -= mu(i, j) * mu(i, j) * b[j];
      b[i] = s;
    }
  };
  auto round_q = [](const Rational& q) {
    // floor(q + 1/2)
    Rational t = q + Rational(1, 2);
    Integer num = numerator(t), den = denominator(t);
    Integer f = num / den;
    if (num < 0 && f * den != num) f -= 1;
    return f;
  };
  IntMatrix g = gram;
  RationalMatrix mu;
  std::vector<Rational> b;
  std::size_t k = 1;
  for (std::size_t guard = 0; k < n && guard < 100000; ++guard) {
    gso(g, mu, b);
    for (std::size_t jj = k; jj-- > 0;) {
      Integer q = round_q(mu(k, jj));
      if (q == 0) continue;
      for (std::size_t i = 0; i < n; ++i) u(i, k) -= q * u(i, jj);
      g = u.transpose() * gram * u;
      gso(g, mu, b);
    }
    if (b[k] >= (delta - mu(k, k - 1) * mu(k, k - 1)) * b[k - 1]) {
      ++k;
    } else {
      for (std::size_t i = 0; i < n; ++i) std::swap(u(i, k), u(i, k - 1));
      g = u.transpose() * gram * u;
      k = std::max<std::size_t>(k - 1, 1);
    }
  }
  return u;
}

/// Exact inverse of a unimodular integer matrix.
inline IntMatrix unimodular_inverse(const IntMatrix& u) {
  RationalMatrix q = u.map([](const Integer& x) { return Rational(x); });
  RationalMatrix inv = inverse(q);
  return inv.map([](const Rational& x) {
    if (denominator(x) != 1) throw std::logic_error("matrix is not unimodular");
    return Integer(numerator(x));
  });
}

/// Integer approximation round(Y * 2^shift), raised until positive definite.
inline IntMatrix scaled_integer_form(const RealMatrix& y, const Context& ctx) {
  for (int shift = std::min<int>(static_cast<int>(ctx.bits / 2), 60);; shift += 16) {
    if (shift > static_cast<int>(ctx.bits)) throw PrecisionFailure("Im tau too ill-conditioned for LLL");
    IntMatrix m = y.map([&](const Real& v) { return round_to_integer(ldexp(v, shift)); });
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = i + 1; j < m.cols(); ++j) m(j, i) = m(i, j);
    if (positive_definite(to_real(m))) return m;
  }
}

}  // namespace detail

/// Iterates integer translation, LLL / Minkowski improvement of Im tau and
/// the supplied det-increasing generators until none applies. The result
/// always satisfies S.2; whether it lies in F_g is reported, not promised.
inline ReductionResult reduce_heuristic(const SiegelPoint& tau, const std::vector<SymplecticMatrix>& generators,
                                        const Context& ctx, std::size_t max_iterations = 200) {
  require_valid(tau, ctx);
  const std::size_t g = tau.g();
  const Real tol = ctx.tolerance();
  ReductionResult res;
  res.reduced = tau;
  res.gamma = SymplecticMatrix::identity(g);
  res.certificate.det_history.push_back(det_im(tau));

  auto apply = [&](const SymplecticMatrix& step) {
    res.reduced = act(step, res.reduced, ctx);
    res.gamma = step * res.gamma;
    res.certificate.det_history.push_back(det_im(res.reduced));
  };

  auto translate = [&] {
    IntMatrix n(g, g);
    bool any = false;
    for (std::size_t i = 0; i < g; ++i)
      for (std::size_t j = 0; j < g; ++j) {
        n(i, j) = -round_to_integer(res.reduced.re(i, j));
        if (n(i, j) != 0) any = true;
      }
    if (!any) return;
    // Exact translation: subtract the integers from X rather than re-acting.
    for (std::size_t i = 0; i < g; ++i)
      for (std::size_t j = 0; j < g; ++j) res.reduced.re(i, j) += to_real(n(i, j));
    res.gamma = SymplecticMatrix::translation(n) * res.gamma;
    res.certificate.det_history.push_back(det_im(res.reduced));
  };

  // LLL on Im tau, then a Minkowski pass over xi in {-1,0,1}^g, then sign
  // normalization of the superdiagonal. Returns whether anything changed.
  auto improve_basis = [&] {
    if (g < 2) return false;
    IntMatrix u = detail::lll_gram(detail::scaled_integer_form(res.reduced.im, ctx));
    RealMatrix y = to_real(u).transpose() * res.reduced.im * to_real(u);
    bool swapped = true;
    for (int pass = 0; swapped && pass < 50; ++pass) {
      swapped = false;
      detail::for_each_small_vector(g, [&](const std::vector<int>& xi) {
        if (swapped) return;
        const Real q = detail::quadratic_form(y, xi);
        for (std::size_t k = 0; k < g && !swapped; ++k) {
          if (detail::gcd_tail(xi, k) != 1 || !(q < y(k, k) * (1 - tol))) continue;
          IntMatrix v = IntMatrix::identity(g);
          for (std::size_t i = 0; i < g; ++i) v(i, k) = xi[i];
          if (xi[k] == 0) {
            std::size_t j = k + 1;
            while (std::abs(xi[j]) != 1) ++j;
            for (std::size_t i = 0; i < g; ++i) v(i, j) = i == k ? 1 : 0;
          }
          u = u * v;
          y = to_real(u).transpose() * res.reduced.im * to_real(u);
          swapped = true;
        }
      });
    }
    for (std::size_t k = 0; k + 1 < g; ++k)
      if (y(k, k + 1) < -tol) {
        IntMatrix d = IntMatrix::identity(g);
        d(k + 1, k + 1) = -1;
        u = u * d;
        y = to_real(u).transpose() * res.reduced.im * to_real(u);
      }
    if (u == IntMatrix::identity(g)) return false;
    apply(SymplecticMatrix::basis_change(u, detail::unimodular_inverse(u)));
    return true;
  };

  auto improve_det = [&] {
    const Real d = det_im(res.reduced);
    for (const auto& gamma : generators) {
      SiegelPoint cand = act(gamma, res.reduced, ctx);
      if (det_im(cand) > d * (1 + tol)) {
        apply(gamma);
        return true;
      }
    }
    return false;
  };

  std::size_t it = 0;
  bool changed = true;
  while (changed) {
    if (it >= max_iterations) {
      res.certificate.converged = false;
      break;
    }
    ++it;
    translate();
    changed = improve_basis();
    changed = improve_det() || changed;
  }
  translate();
  res.certificate.iterations = it;
  res.certificate.report = fundamental_domain_report(res.reduced, generators, ctx);
  return res;
}

}  // namespace thetaheight::siegel
