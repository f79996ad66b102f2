#pragma once

// Genus one over Q: the theta height of the level-2 theta-null point and the
// Faltings height of the Neron differential, for curves with full rational
// 2-torsion, plus the checks that compare them.

#include <algorithm>
#include <array>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "constants.hpp"
#include "numeric.hpp"
#include "siegel.hpp"
#include "theta.hpp"

namespace thetaheight::heights {

using siegel::SiegelPoint;
using theta::BoundCheck;
using theta::make_check;

struct NoRationalTwoTorsion : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Claims the caller makes about the model. Nothing here is verified.
struct CurveClaims {
  bool minimal = false;
  bool semistable = false;
};

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 with e1 < e2 < e3 the
/// x-coordinates of the 2-torsion points, i.e. the roots of
/// 4x^3 + b2 x^2 + 2 b4 x + b6.
struct EllipticCurveQ {
  std::string label;
  std::array<Rational, 5> a;
  CurveClaims claims;
  std::array<Rational, 3> e;

  const Rational& a1() const { return a[0]; }
  const Rational& a2() const { return a[1]; }
  const Rational& a3() const { return a[2]; }
  const Rational& a4() const { return a[3]; }
  const Rational& a6() const { return a[4]; }

  Rational b2() const { return a1() * a1() + 4 * a2(); }
  Rational b4() const { return 2 * a4() + a1() * a3(); }
  Rational b6() const { return a3() * a3() + 4 * a6(); }
  Rational b8() const {
    return a1() * a1() * a6() + 4 * a2() * a6() - a1() * a3() * a4() + a2() * a3() * a3() - a4() * a4();
  }
  Rational c4() const { return b2() * b2() - 24 * b4(); }
  Rational c6() const { return -b2() * b2() * b2() + 36 * b2() * b4() - 216 * b6(); }
  Rational discriminant() const {
    return -b2() * b2() * b8() - 8 * b4() * b4() * b4() - 27 * b6() * b6() + 9 * b2() * b4() * b6();
  }

  std::string coefficients() const {
    std::string s;
    for (std::size_t i = 0; i < 5; ++i) s += (i ? "," : "") + a[i].str();
    return s;
  }
};

namespace detail {

inline Rational eval_two_division(const EllipticCurveQ& c, const Rational& x) {
  return ((4 * x + c.b2()) * x + 2 * c.b4()) * x + c.b6();
}

inline Integer lcm(const Integer& a, const Integer& b) { return a / gcd(a, b) * b; }

/// Real roots of x^3 + p x^2 + q x + s, all three assumed real.
inline std::array<Real, 3> real_cubic_roots(const Real& p, const Real& q, const Real& s) {
  // x = t - p/3: t^3 + P t + Q
  const Real P = q - p * p / 3;
  const Real Q = 2 * p * p * p / 27 - p * q / 3 + s;
  if (!(P < 0)) throw NoRationalTwoTorsion("2-division polynomial has a single real root");
  const Real m = 2 * sqrt(-P / 3);
  Real arg = 3 * Q / (P * m);
  if (arg > 1) arg = 1;
  if (arg < -1) arg = -1;
  const Real phi = acos(arg) / 3;
  std::array<Real, 3> r;
  for (int k = 0; k < 3; ++k) r[k] = m * cos(phi - 2 * pi() * k / 3) - p / 3;
  std::sort(r.begin(), r.end());
  return r;
}

}  // namespace detail

/// Checks the discriminant and that e1, e2, e3 are the distinct roots of the
/// 2-division polynomial, by expanding 4(x - e1)(x - e2)(x - e3).
inline void validate(const EllipticCurveQ& c) {
  if (c.discriminant() == 0) throw std::invalid_argument("curve " + c.label + " is singular");
  const auto& e = c.e;
  if (e[0] == e[1] || e[1] == e[2] || e[0] == e[2]) throw std::invalid_argument("2-torsion x-coordinates coincide");
  const Rational s1 = e[0] + e[1] + e[2];
  const Rational s2 = e[0] * e[1] + e[0] * e[2] + e[1] * e[2];
  const Rational s3 = e[0] * e[1] * e[2];
  if (-4 * s1 != c.b2() || 4 * s2 != 2 * c.b4() || -4 * s3 != c.b6())
    throw std::invalid_argument("2-torsion x-coordinates do not match the coefficients");
}

/// Builds the curve and finds its rational 2-torsion. The monic rescaling
/// t = D x turns rational roots into integer ones, so a numerically located
/// root only has to be rounded and confirmed exactly.
inline EllipticCurveQ make_curve(const std::array<Rational, 5>& coeffs, CurveClaims claims, std::string label = "") {
  EllipticCurveQ c;
  c.label = std::move(label);
  c.a = coeffs;
  c.claims = claims;
  if (c.discriminant() == 0) throw std::invalid_argument("curve is singular");
  if (c.discriminant() < 0) throw NoRationalTwoTorsion("negative discriminant: only one real 2-torsion point");
  const Rational p = c.b2() / 4, q = c.b4() / 2, s = c.b6() / 4;
  const Integer d = detail::lcm(detail::lcm(denominator(p), denominator(q)), denominator(s));
  // Runs at the caller's precision: the default precision is process-wide,
  // so this must not open its own scope.
  const auto roots = detail::real_cubic_roots(to_real(p), to_real(q), to_real(s));
  for (int i = 0; i < 3; ++i) {
    const Integer t = round_to_integer(roots[i] * to_real(d));
    const Rational x(t, d);
    if (detail::eval_two_division(c, x) != 0)
      throw NoRationalTwoTorsion("2-torsion is not fully rational over Q (or --prec too low to locate it)");
    c.e[i] = x;
  }
  validate(c);
  return c;
}

/// Parses "a1,a2,a3,a4,a6" with entries as integers or p/q.
inline std::array<Rational, 5> parse_coefficients(std::string_view text) {
  std::array<Rational, 5> out;
  std::stringstream ss{std::string(text)};
  std::string item;
  std::size_t i = 0;
  while (std::getline(ss, item, ',')) {
    if (i >= 5) throw std::invalid_argument("expected five Weierstrass coefficients");
    try {
      out[i++] = Rational(item);
    } catch (const std::exception&) {
      throw std::invalid_argument("not a rational number: '" + item + "'");
    }
  }
  if (i != 5) throw std::invalid_argument("expected five Weierstrass coefficients");
  return out;
}

// ---------------------------------------------------------------------------
// Periods

struct PeriodLattice {
  /// Periods of dx / (2y + a1 x + a3). omega1 is real, omega2 is purely
  /// imaginary; both are stored by their certified real magnitudes.
  CertifiedReal omega1;
  CertifiedReal omega2_im;
  CertifiedReal covolume;  ///< |Im(conj(omega1) omega2)|
  SiegelPoint tau;         ///< omega2 / omega1
  Real c4_defect{0}, c6_defect{0};  ///< relative defects of the Eisenstein self-check
};

namespace detail {

/// AGM(a, b) enclosed between the final arithmetic and geometric means.
inline CertifiedReal agm(Real a, Real b, const Context& ctx) {
  if (!(a > 0) || !(b > 0)) throw std::invalid_argument("agm needs positive arguments");
  const Real eps = ldexp(Real(1), -static_cast<int>(ctx.bits) + 2);
  int it = 0;
  while (abs(a - b) > eps * a) {
    if (++it > 4 * static_cast<int>(ctx.bits)) throw PrecisionFailure("AGM did not converge");
    Real an = (a + b) / 2;
    b = sqrt(a * b);
    a = std::move(an);
  }
  const Real hi = std::max(a, b), lo = std::min(a, b);
  // Each step rounds twice; the error does not compound because the AGM is
  // contracting.
  return {(hi + lo) / 2, (hi - lo) / 2 + (it + 2) * rounding(hi)};
}

inline Complex eisenstein(const Complex& tau, int weight, const Context& ctx) {
  const Complex q = exp(Complex(-2 * pi() * tau.im, 2 * pi() * tau.re));
  const Real eps = ldexp(Real(1), -static_cast<int>(ctx.bits));
  Complex sum, qn = q;
  for (long n = 1; n < 10000; ++n) {
    Real sigma(0);
    for (long k = 1; k <= n; ++k)
      if (n % k == 0) sigma += pow(Real(k), weight - 1);
    const Complex term = Complex(sigma) * qn;
    sum += term;
    if (abs(qn) * pow(Real(n), weight) < eps) break;
    qn *= q;
  }
  const Real coeff = weight == 4 ? Real(240) : Real(-504);
  return Complex(Real(1)) + Complex(coeff) * sum;
}

}  // namespace detail

/// Periods by the AGM, self-checked against c4 and c6 through the
/// Eisenstein series at the reduced representative of omega2 / omega1.
inline PeriodLattice periods_agm(const EllipticCurveQ& c, const Context& ctx) {
  validate(c);
  const Real e1 = to_real(c.e[0]), e2 = to_real(c.e[1]), e3 = to_real(c.e[2]);
  const CertifiedReal m1 = detail::agm(sqrt(e3 - e1), sqrt(e3 - e2), ctx);
  const CertifiedReal m2 = detail::agm(sqrt(e3 - e1), sqrt(e2 - e1), ctx);
  const CertifiedReal pi_c = exact(pi(), ctx);
  PeriodLattice L;
  L.omega1 = pi_c / m1;
  L.omega2_im = pi_c / m2;
  L.covolume = L.omega1 * L.omega2_im;
  L.tau = SiegelPoint::scalar(Real(0), L.omega2_im.value / L.omega1.value);

  // c4 = (2 pi / w1')^4 E4(tau'), c6 = (2 pi / w1')^6 E6(tau') for the
  // reduced basis w1' = w1 (c tau + d).
  const auto red = siegel::reduce_g1(L.tau, ctx);
  const Complex tau_c(L.tau.re(0, 0), L.tau.im(0, 0));
  const Complex tau_r(red.reduced.re(0, 0), red.reduced.im(0, 0));
  const Complex w1r = Complex(L.omega1.value) * (Complex(to_real(red.gamma.lambda(0, 0))) * tau_c +
                                                 Complex(to_real(red.gamma.mu(0, 0))));
  const Complex k = Complex(2 * pi()) / w1r;
  const Complex k2 = k * k, k4 = k2 * k2;
  const Complex c4 = k4 * detail::eisenstein(tau_r, 4, ctx);
  const Complex c6 = k4 * k2 * detail::eisenstein(tau_r, 6, ctx);
  const Real c4x = to_real(c.c4()), c6x = to_real(c.c6());
  L.c4_defect = abs(c4 - Complex(c4x)) / std::max(Real(1), abs(c4x));
  L.c6_defect = abs(c6 - Complex(c6x)) / std::max(Real(1), abs(c6x));
  if (L.c4_defect > ctx.tolerance() || L.c6_defect > ctx.tolerance())
    throw NumericalFailure("period self-check failed: lattice invariants do not reproduce c4, c6");
  return L;
}

// ---------------------------------------------------------------------------
// Faltings height

struct FaltingsHeight {
  CertifiedReal value;
  /// False when computed under an override for a model not claimed minimal
  /// and semistable: the value is then relative to this model, not stable.
  bool stable = true;
};

/// h_F = -(1/2) log(covolume / pi).
inline FaltingsHeight faltings_height_g1(const EllipticCurveQ& c, const PeriodLattice& L, const Context& ctx,
                                         bool allow_unclaimed = false) {
  const bool claimed = c.claims.minimal && c.claims.semistable;
  if (!claimed && !allow_unclaimed)
    throw ContractViolation("Faltings height needs a model asserted minimal and semistable");
  FaltingsHeight h;
  h.stable = claimed;
  h.value = scale(log(L.covolume / exact(pi(), ctx)), Real(-0.5));
  return h;
}

// ---------------------------------------------------------------------------
// Theta side

struct ThetaConstants {
  siegel::G1Reduction reduction;
  CertifiedComplex t00, t0h, th0;  ///< theta_{(0,0)}, theta_{(0,1/2)}, theta_{(1/2,0)} at the reduced tau
};

inline ThetaConstants theta_constants(const PeriodLattice& L, const Context& ctx) {
  ThetaConstants t;
  t.reduction = siegel::reduce_g1(L.tau, ctx);
  const auto z = theta::zero_vector(1);
  t.t00 = theta::theta(t.reduction.reduced, z, {2, {0}, {0}}, ctx);
  t.t0h = theta::theta(t.reduction.reduced, z, {2, {0}, {1}}, ctx);
  t.th0 = theta::theta(t.reduction.reduced, z, {2, {1}, {0}}, ctx);
  return t;
}

namespace detail {

/// z^4 with |(z + e)^4 - z^4| <= (|z| + e)^4 - |z|^4.
inline CertifiedComplex pow4(const CertifiedComplex& z) {
  const Complex z2 = z.value * z.value;
  const Complex v = z2 * z2;
  const Real m = abs(z.value);
  const Real e = pow(m + z.err, 4) - pow(m, 4);
  return {v, e + 8 * rounding(abs(v))};
}

inline CertifiedComplex divide(const CertifiedComplex& a, const CertifiedComplex& b) {
  const Real lo = abs(b.value) - b.err;
  if (!(lo > 0)) throw PrecisionFailure("division by a theta value not certified nonzero");
  const Complex v = a.value / b.value;
  return {v, (a.err + abs(v) * b.err) / lo + 4 * rounding(abs(v))};
}

inline Real rational_distance(const Complex& x, const Rational& q) { return abs(x - Complex(to_real(q))); }

}  // namespace detail

struct LambdaMatch {
  Rational lambda;
  CertifiedComplex numeric;  ///< theta_{(1/2,0)}^4 / theta_{(0,0)}^4
  Real distance{0};          ///< |numeric - lambda|
  Real runner_up{0};         ///< distance to the nearest other candidate
};

inline std::vector<Rational> cross_ratios(const EllipticCurveQ& c) {
  std::array<int, 3> idx{0, 1, 2};
  std::vector<Rational> out;
  do {
    const Rational v = (c.e[idx[0]] - c.e[idx[2]]) / (c.e[idx[1]] - c.e[idx[2]]);
    if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  } while (std::next_permutation(idx.begin(), idx.end()));
  return out;
}

/// The cross-ratio of the 2-torsion picked out by theta_2^4 / theta_3^4 at
/// the reduced tau.
inline LambdaMatch lambda_invariant(const EllipticCurveQ& c, const ThetaConstants& t, const Context& ctx) {
  LambdaMatch m;
  m.numeric = detail::divide(detail::pow4(t.th0), detail::pow4(t.t00));
  auto cands = cross_ratios(c);
  std::sort(cands.begin(), cands.end(), [&](const Rational& x, const Rational& y) {
    return detail::rational_distance(m.numeric.value, x) < detail::rational_distance(m.numeric.value, y);
  });
  m.lambda = cands[0];
  m.distance = detail::rational_distance(m.numeric.value, cands[0]);
  m.runner_up = cands.size() > 1 ? detail::rational_distance(m.numeric.value, cands[1]) : Real(1);
  const Real tol = m.numeric.err + ctx.tolerance();
  if (!(m.distance <= tol)) throw PrecisionFailure("no cross-ratio of the 2-torsion matches theta_2^4 / theta_3^4");
  if (!(m.runner_up > tol)) throw PrecisionFailure("two cross-ratios match theta_2^4 / theta_3^4 at this precision");
  return m;
}

inline LambdaMatch lambda_invariant(const EllipticCurveQ& c, const Context& ctx) {
  return lambda_invariant(c, theta_constants(periods_agm(c, ctx), ctx), ctx);
}

struct ThetaHeight {
  CertifiedReal value;
  CertifiedReal finite;         ///< (1/4) log den(lambda)
  CertifiedReal archimedean;    ///< (1/2) log(1 + |t0h/t00|^2 + |th0/t00|^2)
  LambdaMatch lambda;
  CertifiedReal jacobi_defect;  ///< |(th0^4 + t0h^4) / t00^4 - 1|
  Verdict jacobi = Verdict::indeterminate;
};

inline ThetaHeight theta_height_g1(const EllipticCurveQ& c, const ThetaConstants& t, const Context& ctx) {
  ThetaHeight h;
  h.lambda = lambda_invariant(c, t, ctx);
  if (h.lambda.lambda == 0 || h.lambda.lambda == 1) throw std::invalid_argument("degenerate lambda");

  // Finite places: max(1, |lambda|_p^(1/4), |1 - lambda|_p^(1/4)); lambda
  // and 1 - lambda share a denominator and have coprime numerators.
  h.finite = scale(exact(log(to_real(denominator(h.lambda.lambda))), ctx), Real(0.25));

  const CertifiedReal a00 = abs(CertifiedComplex(t.t00));
  const CertifiedReal r1 = abs(t.t0h) / a00, r2 = abs(t.th0) / a00;
  const CertifiedReal one = exact(Real(1), ctx);
  auto sq = [](const CertifiedReal& x) { return x * x; };
  h.archimedean = scale(log(one + sq(r1) + sq(r2)), Real(0.5));
  h.value = h.finite + h.archimedean;

  const CertifiedComplex s4 = detail::pow4(t.t00);
  const CertifiedComplex num{detail::pow4(t.th0).value + detail::pow4(t.t0h).value,
                             detail::pow4(t.th0).err + detail::pow4(t.t0h).err};
  const CertifiedComplex ratio = detail::divide(num, s4);
  h.jacobi_defect = {abs(ratio.value - Complex(Real(1))), ratio.err};
  h.jacobi = h.jacobi_defect.value <= 10 * ratio.err + ctx.ulp() ? Verdict::pass : Verdict::fail;
  return h;
}

inline ThetaHeight theta_height_g1(const EllipticCurveQ& c, const Context& ctx) {
  return theta_height_g1(c, theta_constants(periods_agm(c, ctx), ctx), ctx);
}

// ---------------------------------------------------------------------------
// The comparison

struct HeightReport {
  EllipticCurveQ curve;
  PeriodLattice periods;
  ThetaConstants thetas;
  ThetaHeight h_theta;
  FaltingsHeight h_faltings;
  SiegelPoint tau_reduced;
  CertifiedReal log_im_tau;
  CertifiedReal window_value;  ///< h_theta - h_F / 2 - log(Im tau) / 4

  BoundCheck window_lower;  ///< window_value >= m(2,1)
  BoundCheck window_upper;  ///< window_value <= M(2,1)
  BoundCheck bost;          ///< h_F >= -log(2 pi) / 2
  BoundCheck hf_lower;      ///< h_F >= -C(1) log C(1) - M(2,1)
  BoundCheck matrix_lemma;  ///< |log Im tau| <= C(1) log(max(h_theta, 1) + 2)
  BoundCheck point_zero;    ///< 0 >= point bound at P = 0
  bool reduced_in_domain = false;

  Verdict overall() const {
    Verdict v = combine(window_lower.verdict, window_upper.verdict);
    v = combine(v, combine(bost.verdict, hf_lower.verdict));
    v = combine(v, combine(matrix_lemma.verdict, point_zero.verdict));
    v = combine(v, h_theta.jacobi);
    return reduced_in_domain ? v : Verdict::fail;
  }
};

/// |log det Im tau| <= C(1) log(max(h_theta, 1) + 2).
inline BoundCheck matrix_lemma_bound(const CertifiedReal& log_im_tau, const CertifiedReal& h_theta,
                                     const Context& ctx) {
  const CertifiedReal arg = max(h_theta, exact(Real(1), ctx)) + exact(Real(2), ctx);
  return make_check(abs(log_im_tau), constants::C_matrix(1, ctx) * log(arg), true);
}

/// h(Theta(P)) - h_F / 2 - (1/4) log Im tau - C(2,1), with C(r,g) the
/// constant of the point bound (same formula as M(r,g)).
inline CertifiedReal point_bound_rhs(const HeightReport& rep, const CertifiedReal& theta_point_height,
                                     const Context& ctx) {
  return theta_point_height - scale(rep.h_faltings.value, Real(0.5)) - scale(rep.log_im_tau, Real(0.25)) -
         constants::M_const(2, 1, ctx);
}

inline HeightReport window_check(const EllipticCurveQ& c, const Context& ctx, bool allow_unclaimed = false) {
  HeightReport rep;
  rep.curve = c;
  rep.periods = periods_agm(c, ctx);
  rep.h_faltings = faltings_height_g1(c, rep.periods, ctx, allow_unclaimed);
  rep.thetas = theta_constants(rep.periods, ctx);
  rep.h_theta = theta_height_g1(c, rep.thetas, ctx);
  rep.tau_reduced = rep.thetas.reduction.reduced;
  rep.reduced_in_domain = rep.thetas.reduction.certificate.report.all();
  rep.log_im_tau = log(exact(rep.tau_reduced.im(0, 0), ctx));
  rep.window_value = rep.h_theta.value - scale(rep.h_faltings.value, Real(0.5)) - scale(rep.log_im_tau, Real(0.25));
  rep.window_lower = make_check(rep.window_value, constants::m_const(2, 1, ctx));
  rep.window_upper = make_check(rep.window_value, constants::M_const(2, 1, ctx), true);
  rep.bost = make_check(rep.h_faltings.value, constants::bost_lower(1, ctx));
  rep.hf_lower = make_check(rep.h_faltings.value, constants::hF_lower(2, 1, ctx));
  rep.matrix_lemma = matrix_lemma_bound(rep.log_im_tau, rep.h_theta.value, ctx);
  // At P = 0 the Neron-Tate height vanishes and h(Theta(0)) = h_theta.
  rep.point_zero = make_check(exact(Real(0), ctx), point_bound_rhs(rep, rep.h_theta.value, ctx));
  return rep;
}

inline BoundCheck matrix_lemma_check(const EllipticCurveQ& c, const Context& ctx) {
  return window_check(c, ctx).matrix_lemma;
}

// ---------------------------------------------------------------------------
// Corpus files: label,a1,a2,a3,a4,a6,minimal,semistable

inline bool parse_flag(std::string s) {
  for (auto& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  if (s == "1" || s == "true" || s == "yes") return true;
  if (s == "0" || s == "false" || s == "no" || s.empty()) return false;
  throw std::invalid_argument("not a flag: '" + s + "'");
}

inline std::vector<EllipticCurveQ> parse_corpus(std::istream& in) {
  std::vector<EllipticCurveQ> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ',')) f.push_back(item);
    if (f.size() >= 1 && f[0] == "label") continue;  // header
    if (f.size() != 8) throw std::invalid_argument("corpus line " + std::to_string(lineno) + ": expected 8 fields");
    const auto a = parse_coefficients(f[1] + "," + f[2] + "," + f[3] + "," + f[4] + "," + f[5]);
    out.push_back(make_curve(a, {parse_flag(f[6]), parse_flag(f[7])}, f[0]));
  }
  return out;
}

/// Frey curve y^2 = x(x - A)(x + B) for A = -1 mod 4, 16 | B, gcd(A, B) = 1,
/// in its minimal model [1, (B - A - 1)/4, 0, -AB/16, 0].
inline std::array<Rational, 5> frey_model(long A, long B) {
  if (((A % 4) + 4) % 4 != 3 || B % 16 != 0) throw std::invalid_argument("Frey model needs A = -1 mod 4, 16 | B");
  return {Rational(1), Rational((B - A - 1) / 4), Rational(0), Rational(-(A * B) / 16), Rational(0)};
}

/// Semistable curves with full rational 2-torsion whose minimal models are
/// known: three small-conductor curves and a family of Frey curves.
inline std::vector<EllipticCurveQ> builtin_corpus() {
  std::vector<EllipticCurveQ> out;
  const CurveClaims ok{true, true};
  out.push_back(make_curve({Rational(1), Rational(1), Rational(1), Rational(-10), Rational(-10)}, ok, "15a1"));
  out.push_back(make_curve({Rational(1), Rational(0), Rational(0), Rational(-4), Rational(-1)}, ok, "21a1"));
  out.push_back(make_curve({Rational(1), Rational(1), Rational(0), Rational(-11), Rational(0)}, ok, "33a1"));
  const std::vector<std::pair<long, long>> frey = {{-1, 32},  {3, 16},          {-5, 32},        {-1, -16},
                                                   {3, -128}, {-1, 1024},       {-1, 1L << 20}, {11, -(1L << 14)},
                                                   {-9, 112}, {15, 16},         {-1, 48}};
  for (const auto& [A, B] : frey)
    out.push_back(make_curve(frey_model(A, B), ok, "frey(" + std::to_string(A) + "," + std::to_string(B) + ")"));
  return out;
}

/// y^2 = x^3 - x: minimal, additive at 2.
inline EllipticCurveQ lemniscatic_curve() {
  return make_curve({Rational(0), Rational(0), Rational(0), Rational(-1), Rational(0)}, {true, false}, "y^2=x^3-x");
}

}  // namespace thetaheight::heights
