#pragma once

// Certified Riemann theta functions with rational characteristics, their
// symplectically invariant norms, theta constants, the coset set Z_r(tau),
// the archimedean base-point term and the two-sided norm bounds.
//
// All sums are evaluated in normalized form: writing v = n + m1 and
// c = Y^-1 y (Y = Im tau, y = Im z), the modulus of each term is
//   exp(pi y^T Y^-1 y) * exp(-pi (v + c)^T Y (v + c)),
// so the series is summed without the first factor. Every normalized term
// has modulus at most 1, the box of summation is centered at -m1 - c, and
// the tail outside the box is bounded with lambda_min(Y) alone.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "matrix.hpp"
#include "numeric.hpp"
#include "siegel.hpp"

namespace thetaheight::theta {

using siegel::SiegelPoint;
using ComplexVector = std::vector<Complex>;

/// lambda_min(Im tau) is so small that the truncation box would be huge.
struct ReduceFirst : NumericalFailure {
  using NumericalFailure::NumericalFailure;
};

/// Characteristic (m1, m2) = (a / r, b / r) with a, b in {0, ..., r-1}^g.
struct ThetaCharacteristic {
  int r = 2;
  std::vector<int> a;
  std::vector<int> b;

  static ThetaCharacteristic zero(std::size_t g, int r = 2) {
    return {r, std::vector<int>(g, 0), std::vector<int>(g, 0)};
  }

  std::size_t g() const { return a.size(); }

  void validate() const {
    if (r < 2 || r % 2 != 0) throw std::invalid_argument("characteristic level r must be even and >= 2");
    if (a.size() != b.size()) throw std::invalid_argument("characteristic halves differ in length");
    for (int v : a)
      if (v < 0 || v >= r) throw std::invalid_argument("characteristic entry outside {0, ..., (r-1)/r}");
    for (int v : b)
      if (v < 0 || v >= r) throw std::invalid_argument("characteristic entry outside {0, ..., (r-1)/r}");
  }

  std::vector<Real> m1() const {
    std::vector<Real> m;
    for (int v : a) m.push_back(Real(v) / r);
    return m;
  }
  std::vector<Real> m2() const {
    std::vector<Real> m;
    for (int v : b) m.push_back(Real(v) / r);
    return m;
  }

  /// For r = 2: 4 m1^T m2 odd, i.e. the theta constant vanishes identically.
  bool odd() const {
    if (r != 2) return false;
    int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s % 2 == 1;
  }

  std::string str() const {
    std::ostringstream os;
    auto frac = [&](int v) {
      if (v == 0) return std::string("0");
      int d = std::gcd(v, r);
      return std::to_string(v / d) + "/" + std::to_string(r / d);
    };
    for (std::size_t i = 0; i < a.size(); ++i) os << (i ? "," : "") << frac(a[i]);
    for (std::size_t i = 0; i < b.size(); ++i) os << "," << frac(b[i]);
    return os.str();
  }
};

/// Parses "m1_1,...,m1_g,m2_1,...,m2_g" with entries "p/q" or integers.
/// The level is the least even common denominator.
inline ThetaCharacteristic parse_characteristic(std::string_view text) {
  std::vector<std::pair<long, long>> fr;
  std::string s(text);
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto slash = item.find('/');
    long p = std::stol(item.substr(0, slash));
    long q = slash == std::string::npos ? 1 : std::stol(item.substr(slash + 1));
    if (q <= 0) throw std::invalid_argument("characteristic denominator must be positive");
    fr.emplace_back(p, q);
  }
  if (fr.empty() || fr.size() % 2 != 0) throw std::invalid_argument("characteristic needs 2g entries");
  long r = 2;
  for (auto [p, q] : fr) r = std::lcm(r, q);
  ThetaCharacteristic ch;
  ch.r = static_cast<int>(r);
  const std::size_t g = fr.size() / 2;
  for (std::size_t i = 0; i < fr.size(); ++i) {
    long v = fr[i].first * (r / fr[i].second);
    (i < g ? ch.a : ch.b).push_back(static_cast<int>(v));
  }
  ch.validate();
  return ch;
}

/// All characteristics of level r in lexicographic (m1, m2) order.
inline std::vector<ThetaCharacteristic> characteristics(std::size_t g, int r) {
  std::vector<ThetaCharacteristic> out;
  std::size_t total = 1;
  for (std::size_t i = 0; i < 2 * g; ++i) total *= static_cast<std::size_t>(r);
  for (std::size_t code = 0; code < total; ++code) {
    ThetaCharacteristic ch{r, std::vector<int>(g), std::vector<int>(g)};
    std::size_t c = code;
    for (std::size_t i = 2 * g; i-- > 0;) {
      int v = static_cast<int>(c % static_cast<std::size_t>(r));
      c /= static_cast<std::size_t>(r);
      (i < g ? ch.a[i] : ch.b[i - g]) = v;
    }
    out.push_back(std::move(ch));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Normalized summation

struct NormalizedSum {
  Complex sum;          ///< theta * exp(-log_scale)
  Real err{0};          ///< certified bound on |sum - exact normalized value|
  Real log_scale{0};    ///< pi y^T Y^-1 y
  Real det_y{0};
  int radius = 0;
  std::size_t terms = 0;
};

namespace detail {

/// Bound on sum_{|k| > n} exp(-pi l (k + s)^2) for |s| <= 1/2.
inline Real tail_1d(const Real& l, int n) {
  const Real p = pi() * l;
  return 2 * exp(-p * (n + Real(0.5)) * (n + Real(0.5))) / (1 - exp(-2 * p * (n + 1)));
}

/// Bound on sum_{k in Z} exp(-pi l (k + s)^2) for |s| <= 1/2.
inline Real full_1d(const Real& l) {
  const Real p = pi() * l;
  return 1 + 2 * exp(-p / 4) / (1 - exp(-2 * p));
}

/// Union bound over the coordinate that leaves the box.
inline Real box_tail(const Real& l, std::size_t g, int n) {
  return Real(static_cast<long>(g)) * tail_1d(l, n) * pow(full_1d(l), static_cast<long>(g - 1));
}

constexpr std::size_t kMaxTerms = 4'000'000;

}  // namespace detail

/// Normalized theta sum for characteristic (m1, m2) at (tau, z).
/// `extra_radius` enlarges the box beyond what the target needs; used to
/// audit the certified error.
inline NormalizedSum theta_normalized(const SiegelPoint& tau, const ComplexVector& z, const std::vector<Real>& m1,
                                      const std::vector<Real>& m2, const Context& ctx, int extra_radius = 0) {
  const std::size_t g = tau.g();
  if (z.size() != g || m1.size() != g || m2.size() != g) throw std::invalid_argument("theta: dimension mismatch");
  const RealMatrix& x_mat = tau.re;
  const RealMatrix& y_mat = tau.im;
  std::vector<Real> zx(g), zy(g);
  for (std::size_t i = 0; i < g; ++i) {
    zx[i] = z[i].re + m2[i];
    zy[i] = z[i].im;
  }
  const RealMatrix y_inv = inverse(y_mat);
  const std::vector<Real> c = y_inv * zy;

  NormalizedSum out;
  out.det_y = determinant(y_mat);
  for (std::size_t i = 0; i < g; ++i) out.log_scale += zy[i] * c[i];
  out.log_scale *= pi();

  const Real lambda = min_eigenvalue_lower_bound(y_mat);
  if (!(lambda > 0)) throw std::invalid_argument("theta: Im tau is not positive definite");

  int n = 1;
  while (detail::box_tail(lambda, g, n) > ctx.target / 2) {
    ++n;
    double count = std::pow(2.0 * n + 1.0, static_cast<double>(g));
    if (count > static_cast<double>(detail::kMaxTerms))
      throw ReduceFirst("theta: smallest eigenvalue of Im tau too small for direct summation; reduce tau first");
  }
  n += extra_radius;
  out.radius = n;

  std::vector<Integer> center(g);
  for (std::size_t i = 0; i < g; ++i) center[i] = round_to_integer(-m1[i] - c[i]);

  const Real two_pi = 2 * pi();
  const Real round_unit = ldexp(Real(1), 6 - static_cast<int>(ctx.bits));
  Real rounding_err(0);
  std::vector<int> k(g, -n);
  std::vector<Real> v(g), w(g);
  for (;;) {
    for (std::size_t i = 0; i < g; ++i) {
      v[i] = to_real(center[i] + k[i]) + m1[i];
      w[i] = v[i] + c[i];
    }
    Real quad_y(0), quad_x(0), lin(0);
    for (std::size_t i = 0; i < g; ++i) {
      quad_y += y_mat(i, i) * w[i] * w[i];
      quad_x += x_mat(i, i) * v[i] * v[i];
      for (std::size_t j = i + 1; j < g; ++j) {
        quad_y += 2 * y_mat(i, j) * w[i] * w[j];
        quad_x += 2 * x_mat(i, j) * v[i] * v[j];
      }
      lin += v[i] * zx[i];
    }
    const Real re_exp = -pi() * quad_y;
    const Real im_exp = pi() * quad_x + two_pi * lin;
    const Real mag = exp(re_exp);
    out.sum.re += mag * cos(im_exp);
    out.sum.im += mag * sin(im_exp);
    rounding_err += mag * (abs(re_exp) + abs(im_exp) + 8);
    ++out.terms;

    std::size_t i = 0;
    while (i < g && k[i] == n) k[i++] = -n;
    if (i == g) break;
    ++k[i];
  }
  out.err = detail::box_tail(lambda, g, n) + rounding_err * round_unit;
  return out;
}

inline ComplexVector zero_vector(std::size_t g) { return ComplexVector(g); }

/// theta_{(m1, m2)}(tau, z) with certified absolute error.
inline CertifiedComplex theta(const SiegelPoint& tau, const ComplexVector& z, const ThetaCharacteristic& ch,
                              const Context& ctx) {
  ch.validate();
  siegel::require_valid(tau, ctx);
  if (ch.g() != tau.g()) throw std::invalid_argument("theta: characteristic dimension mismatch");
  NormalizedSum s = theta_normalized(tau, z, ch.m1(), ch.m2(), ctx);
  const Real scale = exp(s.log_scale);
  CertifiedComplex out{Complex(s.sum.re * scale, s.sum.im * scale), s.err * scale};
  out.err += rounding(abs(out.value)) * 4;
  return out;
}

inline CertifiedComplex theta(const SiegelPoint& tau, const ComplexVector& z, const Context& ctx) {
  return theta(tau, z, ThetaCharacteristic::zero(tau.g()), ctx);
}

/// ||theta||(tau, z) = det(Y)^(1/4) exp(-pi y^T Y^-1 y) |theta(tau, z)|.
inline CertifiedReal theta_norm(const SiegelPoint& tau, const ComplexVector& z, const Context& ctx) {
  siegel::require_valid(tau, ctx);
  const std::vector<Real> zero(tau.g(), Real(0));
  NormalizedSum s = theta_normalized(tau, z, zero, zero, ctx);
  const Real f = sqrt(sqrt(s.det_y));
  CertifiedReal out{f * abs(s.sum), f * s.err};
  out.err += rounding(out.value) * 4;
  return out;
}

/// ||theta_{(m1, m2)}||(tau, 0) = det(Y)^(1/4) |theta_{(m1, m2)}(tau, 0)|.
inline CertifiedReal theta_norm_char(const SiegelPoint& tau, const ThetaCharacteristic& ch, const Context& ctx) {
  ch.validate();
  siegel::require_valid(tau, ctx);
  if (ch.g() != tau.g()) throw std::invalid_argument("theta: characteristic dimension mismatch");
  NormalizedSum s = theta_normalized(tau, zero_vector(tau.g()), ch.m1(), ch.m2(), ctx);
  const Real f = sqrt(sqrt(s.det_y));
  CertifiedReal out{f * abs(s.sum), f * s.err};
  out.err += rounding(out.value) * 4;
  return out;
}

inline CertifiedReal squared(const CertifiedReal& a) {
  Real v = a.value * a.value;
  return {v, 2 * abs(a.value) * a.err + a.err * a.err + rounding(v)};
}

/// theta_{(m1, m2)}(tau, 0) for (m1, m2) in {0, 1/r, ..., (r-1)/r}^{2g},
/// lexicographic in (m1, m2).
inline std::vector<CertifiedComplex> theta_null_vector(const SiegelPoint& tau, int r, const Context& ctx) {
  std::vector<CertifiedComplex> out;
  bool any_nonzero = false;
  for (const auto& ch : characteristics(tau.g(), r)) {
    out.push_back(theta(tau, zero_vector(tau.g()), ch, ctx));
    if (abs(out.back().value) > out.back().err) any_nonzero = true;
  }
  if (!any_nonzero) throw PrecisionFailure("every theta constant is below its certified error");
  return out;
}

// ---------------------------------------------------------------------------
// Z_r(tau) and the archimedean base-point term

/// Representatives (a + tau b) / r of (1/r)(Z^g + tau Z^g) / (Z^g + tau Z^g).
struct CosetSet {
  int r = 2;
  SiegelPoint tau;
  std::vector<std::vector<int>> a, b;
  std::vector<ComplexVector> representatives;
};

inline CosetSet coset_set(const SiegelPoint& tau, int r) {
  if (r < 1) throw std::invalid_argument("coset level must be positive");
  const std::size_t g = tau.g();
  CosetSet out;
  out.r = r;
  out.tau = tau;
  std::size_t total = 1;
  for (std::size_t i = 0; i < 2 * g; ++i) total *= static_cast<std::size_t>(r);
  for (std::size_t code = 0; code < total; ++code) {
    std::vector<int> a(g), b(g);
    std::size_t c = code;
    for (std::size_t i = 2 * g; i-- > 0;) {
      int v = static_cast<int>(c % static_cast<std::size_t>(r));
      c /= static_cast<std::size_t>(r);
      (i < g ? a[i] : b[i - g]) = v;
    }
    ComplexVector e(g);
    for (std::size_t i = 0; i < g; ++i) {
      Real re = Real(a[i]), im(0);
      for (std::size_t j = 0; j < g; ++j) {
        re += tau.re(i, j) * b[j];
        im += tau.im(i, j) * b[j];
      }
      e[i] = Complex(re / r, im / r);
    }
    out.a.push_back(std::move(a));
    out.b.push_back(std::move(b));
    out.representatives.push_back(std::move(e));
  }
  return out;
}

/// sum over e in Z_r(tau) of ||theta||^2(tau, r z + e).
inline CertifiedReal coset_norm_sum(const SiegelPoint& tau, const ComplexVector& z, int r, const Context& ctx,
                                    CertifiedReal* max_term = nullptr) {
  const CosetSet cs = coset_set(tau, r);
  CertifiedReal total{Real(0), Real(0)};
  for (const auto& e : cs.representatives) {
    ComplexVector w(tau.g());
    for (std::size_t i = 0; i < w.size(); ++i) w[i] = Complex(Real(r) * z[i].re, Real(r) * z[i].im) + e[i];
    CertifiedReal sq = squared(theta_norm(tau, w, ctx));
    if (max_term && (total.value == 0 || sq.value > max_term->value)) *max_term = sq;
    total = total + sq;
  }
  return total;
}

/// beta_sigma = -(1/2) log(2^(g/2) sum_{e in Z_r(tau)} ||theta||^2(tau, r z + e)).
inline CertifiedReal beta_sigma(const SiegelPoint& tau, const ComplexVector& z, int r, const Context& ctx) {
  siegel::require_valid(tau, ctx);
  if (z.size() != tau.g()) throw std::invalid_argument("beta_sigma: z has the wrong length");
  const CertifiedReal s = coset_norm_sum(tau, z, r, ctx);
  if (!(s.value > s.err)) throw PrecisionFailure("beta_sigma: coset sum below its certified error");
  const CertifiedReal weighted = scale(s, pow(Real(2), Real(static_cast<long>(tau.g())) / 2));
  return scale(log(weighted), Real(-0.5));
}

// ---------------------------------------------------------------------------
// Norm bounds and the duplication argument

struct BoundCheck {
  CertifiedReal lhs;
  CertifiedReal rhs;
  CertifiedReal margin;  ///< positive when the inequality holds
  Verdict verdict = Verdict::indeterminate;
};

/// Records lhs >= rhs (or lhs <= rhs when `upper` is set).
inline BoundCheck make_check(CertifiedReal lhs, CertifiedReal rhs, bool upper = false) {
  BoundCheck c{lhs, rhs, upper ? rhs - lhs : lhs - rhs, Verdict::indeterminate};
  c.verdict = upper ? certify_geq(rhs, lhs) : certify_geq(lhs, rhs);
  return c;
}

/// c(g) = (2 + (2 / 3^(1/4)) 2^(g^3/4))^g.
inline Real norm_upper_constant(std::size_t g) {
  const Real gg(static_cast<long>(g));
  return pow(2 + 2 / pow(Real(3), Real(0.25)) * pow(Real(2), gg * gg * gg / 4), gg);
}

struct NormBoundsReport {
  BoundCheck lower;           ///< max_e ||theta||^2(tau, e) >= det(Y)^(1/2)
  BoundCheck upper;           ///< ||theta||^2(tau, z) <= c(g) det(Y)^(1/2)
  BoundCheck sandwich_lower;  ///< (g/4) log 2 <= middle
  BoundCheck sandwich_upper;  ///< middle <= (1/2) log c(g) + (g/4) log 2 + g log r
  CertifiedReal middle;       ///< (1/2) log(2^(g/2) sum_e ||theta||^2) - (1/4) log det Y

  Verdict overall() const {
    return combine(combine(lower.verdict, upper.verdict), combine(sandwich_lower.verdict, sandwich_upper.verdict));
  }
};

/// The lower bound holds on all of the Siegel space; the upper bound and the
/// sandwich are stated for reduced tau, which the caller vouches for.
inline NormBoundsReport verify_norm_bounds(const SiegelPoint& tau, int r, const std::optional<ComplexVector>& z,
                                           const Context& ctx) {
  siegel::require_valid(tau, ctx);
  const std::size_t g = tau.g();
  const Real gg(static_cast<long>(g));
  NormBoundsReport rep;
  const CertifiedReal det = exact(siegel::det_im(tau), ctx);
  const CertifiedReal sqrt_det = sqrt(det);

  CertifiedReal max_term;
  const CertifiedReal total = coset_norm_sum(tau, zero_vector(g), r, ctx, &max_term);
  rep.lower = make_check(max_term, sqrt_det);

  const CertifiedReal at_z = squared(theta_norm(tau, z.value_or(zero_vector(g)), ctx));
  const CertifiedReal cg = exact(norm_upper_constant(g), ctx);
  rep.upper = make_check(at_z, cg * sqrt_det, true);

  const CertifiedReal log2 = exact(log(Real(2)), ctx);
  rep.middle = scale(log(scale(total, pow(Real(2), gg / 2))), Real(0.5)) - scale(log(det), Real(0.25));
  const CertifiedReal lo = scale(log2, gg / 4);
  const CertifiedReal hi = scale(log(cg), Real(0.5)) + lo + exact(gg * log(Real(r)), ctx);
  rep.sandwich_lower = make_check(rep.middle, lo);
  rep.sandwich_upper = make_check(rep.middle, hi, true);
  return rep;
}

struct DuplicationReport {
  std::vector<CertifiedReal> f;                 ///< F(2^k tau), k = 0..steps
  std::vector<CertifiedComplex> theta_at_zero;  ///< theta(2^k tau, 0)
  std::vector<Verdict> chain;                   ///< F(2^k tau) >= F(2^(k+1) tau)
  Verdict monotone = Verdict::pass;
  Verdict at_least_one = Verdict::pass;         ///< every F(2^k tau) >= 1
  Verdict converging = Verdict::pass;           ///< |theta(2^k tau, 0) - 1| nonincreasing
  Real final_distance{0};                       ///< |theta(2^steps tau, 0) - 1|
};

/// F(tau) = max over (m1, m2) in {0, 1/2}^{2g} of |theta_{(m1, m2)}(tau, 0)|.
inline CertifiedReal half_characteristic_max(const SiegelPoint& tau, const Context& ctx) {
  CertifiedReal best{Real(-1), Real(0)};
  for (const auto& ch : characteristics(tau.g(), 2)) {
    if (ch.odd()) continue;
    CertifiedReal v = abs(theta(tau, zero_vector(tau.g()), ch, ctx));
    if (v.value > best.value) best.value = v.value;
    best.err = std::max(best.err, v.err);
  }
  return best;
}

inline DuplicationReport verify_duplication(const SiegelPoint& tau, int steps, const Context& ctx) {
  siegel::require_valid(tau, ctx);
  if (steps < 0) throw std::invalid_argument("duplication steps must be nonnegative");
  DuplicationReport rep;
  SiegelPoint t = tau;
  for (int k = 0; k <= steps; ++k) {
    rep.f.push_back(half_characteristic_max(t, ctx));
    rep.theta_at_zero.push_back(theta(t, zero_vector(t.g()), ctx));
    // Both checks allow the certified error: F_k >= F_{k+1} - err.
    if (!(rep.f.back().upper() >= 1)) rep.at_least_one = Verdict::fail;
    if (k > 0) {
      rep.chain.push_back(rep.f[k - 1].upper() >= rep.f[k].lower() ? Verdict::pass : Verdict::fail);
      rep.monotone = combine(rep.monotone, rep.chain.back());
      const Real prev = abs(rep.theta_at_zero[k - 1].value - Complex(Real(1)));
      const Real cur = abs(rep.theta_at_zero[k].value - Complex(Real(1)));
      const Real slack = rep.theta_at_zero[k - 1].err + rep.theta_at_zero[k].err;
      if (cur > prev + slack) rep.converging = Verdict::fail;
    }
    for (std::size_t i = 0; i < t.g(); ++i)
      for (std::size_t j = 0; j < t.g(); ++j) {
        t.re(i, j) *= 2;
        t.im(i, j) *= 2;
      }
  }
  rep.final_distance = abs(rep.theta_at_zero.back().value - Complex(Real(1)));
  return rep;
}

}  // namespace thetaheight::theta
