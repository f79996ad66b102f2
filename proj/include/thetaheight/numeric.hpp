#pragma once

// Arbitrary-precision scalars, a small complex type over them, and
// certified values (value + proven absolute error bound).

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

namespace thetaheight {

using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;

struct NumericalFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Certified error too large for the requested decision or the working
/// precision is exhausted.
struct PrecisionFailure : NumericalFailure {
  using NumericalFailure::NumericalFailure;
};

/// The caller broke a documented contract (e.g. an unasserted claim).
struct ContractViolation : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Precision handling

inline unsigned bits_to_digits10(unsigned bits) { return bits * 301u / 1000u + 2u; }

/// Sets the default precision of newly created Real values for its lifetime.
///
/// The Boost/MPFR default is process-wide: open a scope before spawning
/// workers and keep it alive until they finish.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned bits) : saved_(Real::default_precision()), bits_(bits) {
    Real::default_precision(bits_to_digits10(bits));
  }
  ~PrecisionScope() { Real::default_precision(saved_); }
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

  unsigned bits() const { return bits_; }

 private:
  unsigned saved_;
  unsigned bits_;
};

/// Explicit precision context carried by every numerical operation.
struct Context {
  unsigned bits = 128;
  /// Target absolute error of normalized theta sums.
  Real target = Real(0);

  static Context with_bits(unsigned bits) {
    Context ctx;
    ctx.bits = bits;
    // 2^-80 at the default 128 bits.
    ctx.target = ldexp(Real(1), -static_cast<int>(bits * 5 / 8));
    return ctx;
  }

  /// Slack used by geometric predicates: 2^(-bits/2).
  Real tolerance() const { return ldexp(Real(1), -static_cast<int>(bits / 2)); }

  /// A few units in the last place at this precision.
  Real ulp() const { return ldexp(Real(1), -static_cast<int>(bits) + 4); }
};

inline Real pi() { return boost::math::constants::pi<Real>(); }

inline int precision_bits(const Real& v) {
  return static_cast<int>(boost::multiprecision::detail::digits10_2_2(v.precision()));
}

/// Bound on the rounding error of one operation producing v.
inline Real rounding(const Real& v) { return abs(v) * ldexp(Real(1), 4 - precision_bits(v)); }

inline Real to_real(const Integer& n) {
  Real r;
  mpfr_set_z(r.backend().data(), n.backend().data(), MPFR_RNDN);
  return r;
}
inline Real to_real(const Rational& q) {
  return to_real(boost::multiprecision::numerator(q)) / to_real(boost::multiprecision::denominator(q));
}

/// Round to nearest integer, ties toward +infinity.
inline Integer round_to_integer(const Real& x) {
  if (!isfinite(x)) throw NumericalFailure("cannot round a non-finite value");
  Real f = floor(x + Real(0.5));
  Integer n;
  mpfr_get_z(n.backend().data(), f.backend().data(), MPFR_RNDN);
  return n;
}

/// Decimal string with enough digits to round-trip at the value's precision.
inline std::string to_decimal(const Real& x) {
  return x.str(static_cast<std::streamsize>(x.precision()) + 1, std::ios_base::scientific);
}

/// Short decimal rendering for tables and CSV.
inline std::string to_decimal(const Real& x, int digits) {
  return x.str(digits, std::ios_base::scientific);
}

inline Real parse_real(std::string_view s) {
  try {
    return Real(std::string(s));
  } catch (const std::exception&) {
    throw std::invalid_argument("not a decimal number: '" + std::string(s) + "'");
  }
}

// ---------------------------------------------------------------------------
// Complex numbers over Real

struct Complex {
  Real re{0};
  Real im{0};

  Complex() = default;
  Complex(Real r) : re(std::move(r)), im(0) {}  // NOLINT(implicit)
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

  Complex& operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Complex& operator*=(const Complex& o) {
    Real r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  Complex& operator/=(const Complex& o) {
    Real d = o.re * o.re + o.im * o.im;
    Real r = (re * o.re + im * o.im) / d;
    im = (im * o.re - re * o.im) / d;
    re = std::move(r);
    return *this;
  }
};

inline Complex operator+(Complex a, const Complex& b) { return a += b; }
inline Complex operator-(Complex a, const Complex& b) { return a -= b; }
inline Complex operator*(Complex a, const Complex& b) { return a *= b; }
inline Complex operator/(Complex a, const Complex& b) { return a /= b; }
inline Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
inline bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
inline Complex conj(const Complex& a) { return {a.re, -a.im}; }
inline Real norm(const Complex& a) { return a.re * a.re + a.im * a.im; }
inline Real abs(const Complex& a) { return hypot(a.re, a.im); }

/// exp(re) * (cos(im) + i sin(im)).
inline Complex exp(const Complex& a) {
  Real m = exp(a.re);
  return {m * cos(a.im), m * sin(a.im)};
}

inline Complex sqrt(const Complex& a) {
  Real r = abs(a);
  if (r == 0) return {};
  Real u = sqrt((r + abs(a.re)) / 2);
  if (a.re >= 0) return {u, a.im / (2 * u)};
  return {abs(a.im) / (2 * u), a.im >= 0 ? u : Real(-u)};
}

// ---------------------------------------------------------------------------
// Certified values

enum class Verdict { pass, fail, indeterminate };

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::indeterminate: return "indeterminate";
  }
  return "?";
}

inline Verdict parse_verdict(std::string_view s) {
  if (s == "pass") return Verdict::pass;
  if (s == "fail") return Verdict::fail;
  if (s == "indeterminate") return Verdict::indeterminate;
  throw std::invalid_argument("unknown verdict '" + std::string(s) + "'");
}

/// Three-valued conjunction: any fail wins, then any indeterminate.
inline Verdict combine(Verdict a, Verdict b) {
  if (a == Verdict::fail || b == Verdict::fail) return Verdict::fail;
  if (a == Verdict::indeterminate || b == Verdict::indeterminate) return Verdict::indeterminate;
  return Verdict::pass;
}

struct CertifiedReal {
  Real value{0};
  Real err{0};

  Real lower() const { return value - err; }
  Real upper() const { return value + err; }
};

struct CertifiedComplex {
  Complex value;
  Real err{0};
};

// First-order interval propagation. Sums add errors; products use
// |a| err_b + |b| err_a + err_a err_b; transcendental functions use the
// derivative bound on the enclosing interval. A few ulps are added for the
// rounding of the operation itself.

inline CertifiedReal exact(Real v, const Context& ctx) {
  Real e = abs(v) * ctx.ulp();
  return {std::move(v), std::move(e)};
}

inline CertifiedReal operator+(const CertifiedReal& a, const CertifiedReal& b) {
  Real v = a.value + b.value;
  return {v, a.err + b.err + rounding(v)};
}
inline CertifiedReal operator-(const CertifiedReal& a) { return {-a.value, a.err}; }
inline CertifiedReal operator-(const CertifiedReal& a, const CertifiedReal& b) { return a + (-b); }
inline CertifiedReal operator*(const CertifiedReal& a, const CertifiedReal& b) {
  Real v = a.value * b.value;
  Real e = abs(a.value) * b.err + abs(b.value) * a.err + a.err * b.err;
  return {v, e + rounding(v)};
}
inline CertifiedReal scale(const CertifiedReal& a, const Real& k) {
  return {a.value * k, a.err * abs(k)};
}

/// Requires the denominator interval to exclude zero.
inline CertifiedReal operator/(const CertifiedReal& a, const CertifiedReal& b) {
  const Real lo = abs(b.value) - b.err;
  if (!(lo > 0)) throw PrecisionFailure("division by a value not certified nonzero");
  Real v = a.value / b.value;
  return {v, (a.err + abs(v) * b.err) / lo + rounding(v)};
}

inline CertifiedReal abs(const CertifiedReal& a) { return {abs(a.value), a.err}; }

/// max on intervals: the enclosure of max(a, b) is [max(lo), max(hi)].
inline CertifiedReal max(const CertifiedReal& a, const CertifiedReal& b) {
  const Real lo = std::max(a.lower(), b.lower()), hi = std::max(a.upper(), b.upper());
  return {(lo + hi) / 2, (hi - lo) / 2};
}

/// log on [v - err, v + err]; requires the interval to be positive.
inline CertifiedReal log(const CertifiedReal& a) {
  if (!(a.value - a.err > 0)) throw PrecisionFailure("log of a value not certified positive");
  Real v = log(a.value);
  return {v, a.err / (a.value - a.err) + rounding(v) +
                 ldexp(Real(1), 4 - precision_bits(v))};
}

inline CertifiedReal exp(const CertifiedReal& a) {
  Real v = exp(a.value);
  return {v, exp(a.value + a.err) * a.err + rounding(v)};
}

inline CertifiedReal sqrt(const CertifiedReal& a) {
  if (!(a.value - a.err > 0)) throw PrecisionFailure("sqrt of a value not certified positive");
  Real v = sqrt(a.value);
  return {v, a.err / (2 * sqrt(a.value - a.err)) + rounding(v)};
}

inline CertifiedReal abs(const CertifiedComplex& z) { return {abs(z.value), z.err}; }

/// Three-valued comparison lhs >= rhs.
inline Verdict certify_geq(const CertifiedReal& lhs, const CertifiedReal& rhs) {
  if (lhs.value - lhs.err >= rhs.value + rhs.err) return Verdict::pass;
  if (lhs.value + lhs.err < rhs.value - rhs.err) return Verdict::fail;
  return Verdict::indeterminate;
}

/// Certified margin lhs - rhs (positive means the inequality lhs >= rhs holds).
inline CertifiedReal margin_geq(const CertifiedReal& lhs, const CertifiedReal& rhs) { return lhs - rhs; }

}  // namespace thetaheight
