#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "thetaheight/heights.hpp"

using namespace thetaheight;
using namespace thetaheight::heights;

namespace {

struct Prec : ::testing::Test {
  PrecisionScope scope{128};
  Context ctx = Context::with_bits(128);
};

EllipticCurveQ curve(long a1, long a2, long a3, long a4, long a6, CurveClaims claims = {true, true}) {
  return make_curve({Rational(a1), Rational(a2), Rational(a3), Rational(a4), Rational(a6)}, claims);
}

/// Periods by quadrature after x = e3 + t^2 (real) and x = e1 - t^2
/// (imaginary): both integrands are smooth on [0, inf).
std::pair<double, double> quadrature_periods(const EllipticCurveQ& c) {
  const double e1 = c.e[0].convert_to<double>(), e2 = c.e[1].convert_to<double>(), e3 = c.e[2].convert_to<double>();
  boost::math::quadrature::exp_sinh<double> q;
  auto f = [](double a, double b) {
    return [a, b](double t) { return 2 / std::sqrt((t * t + a) * (t * t + b)); };
  };
  return {q.integrate(f(e3 - e1, e3 - e2)), q.integrate(f(e2 - e1, e3 - e1))};
}

double lemniscate() {
  return std::pow(boost::math::tgamma(0.25), 2) / std::sqrt(8 * 3.14159265358979323846);
}

}  // namespace

using Curves = Prec;

TEST_F(Curves, TwoTorsionRoots) {
  const auto c = lemniscatic_curve();
  EXPECT_EQ(c.e[0], -1);
  EXPECT_EQ(c.e[1], 0);
  EXPECT_EQ(c.e[2], 1);
  const auto d = curve(0, -3, 0, 2, 0);
  EXPECT_EQ(d.e[0], 0);
  EXPECT_EQ(d.e[2], 2);
  // 15a1: the roots of 4x^3 + b2 x^2 + 2 b4 x + b6 are rational
  const auto f = curve(1, 1, 1, -10, -10);
  for (const auto& e : f.e) EXPECT_EQ(4 * e * e * e + f.b2() * e * e + 2 * f.b4() * e + f.b6(), 0);
}

TEST_F(Curves, Rejections) {
  EXPECT_THROW(curve(0, -1, 1, -10, -20), NoRationalTwoTorsion);  // 11a1
  EXPECT_THROW(curve(0, 0, 0, 0, 0), std::invalid_argument);      // singular
  EXPECT_THROW(parse_coefficients("1,2,3"), std::invalid_argument);
  const auto a = parse_coefficients("0,0,0,-1/16,0");
  EXPECT_EQ(a[3], Rational(-1, 16));
}

TEST_F(Curves, CorpusFile) {
  std::istringstream in(
      "label,a1,a2,a3,a4,a6,minimal,semistable\n"
      "# comment\n"
      "15a1,1,1,1,-10,-10,1,1\n"
      "lem,0,0,0,-1,0,true,false\n");
  const auto cs = parse_corpus(in);
  ASSERT_EQ(cs.size(), 2u);
  EXPECT_EQ(cs[0].label, "15a1");
  EXPECT_TRUE(cs[0].claims.semistable);
  EXPECT_FALSE(cs[1].claims.semistable);
  EXPECT_GE(builtin_corpus().size(), 10u);
}

using Periods = Prec;

TEST_F(Periods, Lemniscatic) {
  const auto L = periods_agm(lemniscatic_curve(), ctx);
  const Real pw = pow(boost::math::tgamma(Real(1) / 4), 2) / sqrt(8 * pi());
  EXPECT_LE(abs(L.omega1.value - pw), L.omega1.err + ctx.ulp());
  EXPECT_LE(abs(L.omega2_im.value - pw), L.omega2_im.err + ctx.ulp());
  EXPECT_NEAR(L.omega1.value.convert_to<double>(), lemniscate(), 1e-13);
  EXPECT_LE(abs(L.tau.re(0, 0)), ctx.ulp());
  EXPECT_LE(abs(L.tau.im(0, 0) - 1), ctx.tolerance());
}

TEST_F(Periods, AgreeWithQuadrature) {
  for (const auto& c : builtin_corpus()) {
    const auto L = periods_agm(c, ctx);
    const auto [w1, w2] = quadrature_periods(c);
    EXPECT_NEAR(L.omega1.value.convert_to<double>() / w1, 1, 1e-12) << c.label;
    EXPECT_NEAR(L.omega2_im.value.convert_to<double>() / w2, 1, 1e-12) << c.label;
    EXPECT_GT(L.covolume.value, 0);
    EXPECT_GT(L.tau.im(0, 0), 0);
    EXPECT_LE(L.c4_defect, ctx.tolerance());
    EXPECT_LE(L.c6_defect, ctx.tolerance());
  }
}

TEST_F(Periods, ThreeRoots) {
  const auto L = periods_agm(curve(0, -3, 0, 2, 0, {false, false}), ctx);
  const auto [w1, w2] = quadrature_periods(curve(0, -3, 0, 2, 0, {false, false}));
  EXPECT_NEAR(L.omega1.value.convert_to<double>(), w1, 1e-12);
  EXPECT_GT(L.covolume.value, 0);
}

TEST_F(Periods, ScaleByU) {
  // (a4, a6) -> (u^4 a4, u^6 a6) divides the periods by u
  const auto base = periods_agm(lemniscatic_curve(), ctx);
  const auto big = periods_agm(curve(0, 0, 0, -16, 0, {false, false}), ctx);
  EXPECT_LE(abs(big.omega1.value * 2 - base.omega1.value), 4 * (big.omega1.err + base.omega1.err) + ctx.ulp());
  EXPECT_LE(abs(big.covolume.value * 4 - base.covolume.value), 8 * (big.covolume.err + base.covolume.err) + ctx.ulp());
}

using Faltings = Prec;

TEST_F(Faltings, ContractEnforced) {
  const auto c = lemniscatic_curve();
  const auto L = periods_agm(c, ctx);
  EXPECT_THROW(faltings_height_g1(c, L, ctx), ContractViolation);
  const auto h = faltings_height_g1(c, L, ctx, true);
  EXPECT_FALSE(h.stable);
  // covolume = varpi^2 at tau = i
  const Real pw = pow(boost::math::tgamma(Real(1) / 4), 2) / sqrt(8 * pi());
  EXPECT_LE(abs(h.value.value + log(pw * pw / pi()) / 2), h.value.err + ctx.ulp() * 8);
}

TEST_F(Faltings, TwistedModelShiftsByLogU) {
  // same curve over Q-bar, model scaled by u = 2: covolume / 4, h_F + log 2
  const auto a = lemniscatic_curve();
  const auto b = curve(0, 0, 0, -16, 0, {true, false});
  const auto ha = faltings_height_g1(a, periods_agm(a, ctx), ctx, true);
  const auto hb = faltings_height_g1(b, periods_agm(b, ctx), ctx, true);
  EXPECT_LE(abs(hb.value.value - ha.value.value - log(Real(2))), ha.value.err + hb.value.err + ctx.ulp() * 8);
}

TEST_F(Faltings, AboveBost) {
  for (const auto& c : builtin_corpus()) {
    const auto h = faltings_height_g1(c, periods_agm(c, ctx), ctx);
    EXPECT_GE(h.value.lower(), -log(2 * pi()) / 2) << c.label;
  }
}

using Lambda = Prec;

TEST_F(Lambda, Lemniscatic) {
  const auto m = lambda_invariant(lemniscatic_curve(), ctx);
  EXPECT_EQ(m.lambda, Rational(1, 2));
  EXPECT_LT(m.distance, m.runner_up);
}

TEST_F(Lambda, TranslatedModelSameLambda) {
  // x(x-1)(x-2) is x^3 - x moved by x -> x - 1
  const auto m = lambda_invariant(curve(0, -3, 0, 2, 0, {false, false}), ctx);
  EXPECT_EQ(m.lambda, Rational(1, 2));
  const auto cr = cross_ratios(curve(0, -3, 0, 2, 0, {false, false}));
  EXPECT_NE(std::find(cr.begin(), cr.end(), Rational(2)), cr.end());
  EXPECT_NE(std::find(cr.begin(), cr.end(), Rational(-1)), cr.end());
}

TEST_F(Lambda, CorpusValues) {
  // from theta_{(1/2,0)}^4 / theta^4 at the reduced tau
  const auto corpus = builtin_corpus();
  EXPECT_EQ(lambda_invariant(corpus[0], ctx).lambda, Rational(9, 25));
  EXPECT_EQ(lambda_invariant(corpus[1], ctx).lambda, Rational(7, 16));
  EXPECT_EQ(lambda_invariant(corpus[2], ctx).lambda, Rational(11, 27));
  for (const auto& c : corpus) {
    const auto m = lambda_invariant(c, ctx);
    const auto cr = cross_ratios(c);
    EXPECT_NE(std::find(cr.begin(), cr.end(), m.lambda), cr.end()) << c.label;
    EXPECT_LE(m.distance, m.numeric.err + ctx.tolerance()) << c.label;
  }
}

using ThetaH = Prec;

TEST_F(ThetaH, Lemniscatic) {
  const auto h = theta_height_g1(lemniscatic_curve(), ctx);
  // theta_2 = theta_4 = 2^{-1/4} theta_3 at i, lambda = 1/2
  const Real oracle = log(Real(2)) / 4 + log(1 + sqrt(Real(2))) / 2;
  EXPECT_LE(abs(h.value.value - oracle), h.value.err + ctx.ulp() * 8);
  EXPECT_EQ(h.jacobi, Verdict::pass);
}

TEST_F(ThetaH, NonnegativeAndJacobi) {
  for (const auto& c : builtin_corpus()) {
    const auto h = theta_height_g1(c, ctx);
    EXPECT_GE(h.value.upper(), 0) << c.label;
    EXPECT_GE(h.finite.value, 0);
    EXPECT_GE(h.archimedean.value, 0);
    EXPECT_EQ(h.jacobi, Verdict::pass) << c.label;
  }
}

using Window = Prec;

TEST_F(Window, CorpusInsideWithMargin) {
  for (const auto& c : builtin_corpus()) {
    const auto rep = window_check(c, ctx);
    EXPECT_EQ(rep.overall(), Verdict::pass) << c.label;
    EXPECT_GE(rep.window_lower.margin.lower(), Real("1e-6")) << c.label;
    EXPECT_GE(rep.window_upper.margin.lower(), Real("1e-6")) << c.label;
    EXPECT_TRUE(rep.reduced_in_domain);
    const Real w = rep.h_theta.value.value - rep.h_faltings.value.value / 2 - log(rep.tau_reduced.im(0, 0)) / 4;
    EXPECT_LE(abs(rep.window_value.value - w), rep.window_value.err + ctx.ulp() * 8);
  }
}

TEST(WindowPrecision, DoublingPrecisionStaysWithinErr) {
  const auto labels = std::vector<std::size_t>{0, 5, 9};
  for (std::size_t k : labels) {
    CertifiedReal lo, hi;
    {
      PrecisionScope s(128);
      lo = window_check(builtin_corpus()[k], Context::with_bits(128)).window_value;
    }
    {
      PrecisionScope s(256);
      hi = window_check(builtin_corpus()[k], Context::with_bits(256)).window_value;
    }
    EXPECT_LE(abs(lo.value - hi.value), lo.err + hi.err) << k;
  }
}

TEST_F(Window, LemniscaticMatrixLemma) {
  const auto rep = window_check(lemniscatic_curve(), ctx, true);
  EXPECT_LE(abs(rep.matrix_lemma.lhs.value), ctx.tolerance());
  EXPECT_EQ(rep.matrix_lemma.verdict, Verdict::pass);
  EXPECT_THROW(window_check(lemniscatic_curve(), ctx), ContractViolation);
}

TEST_F(Window, LargeImaginaryPartStillPasses) {
  const auto corpus = builtin_corpus();
  const auto& c = corpus[9];  // frey(-1, 2^20)
  const auto rep = window_check(c, ctx);
  EXPECT_GT(rep.tau_reduced.im(0, 0), 3);
  EXPECT_EQ(matrix_lemma_check(c, ctx).verdict, Verdict::pass);
}

TEST_F(Window, PointBound) {
  const auto rep = window_check(builtin_corpus()[0], ctx);
  const auto zero = point_bound_rhs(rep, exact(Real(0), ctx), ctx);
  const Real expect = -rep.h_faltings.value.value / 2 - rep.log_im_tau.value / 4 - constants::M_const(2, 1, ctx).value;
  EXPECT_LE(abs(zero.value - expect), zero.err + ctx.ulp() * 8);
  const auto one = point_bound_rhs(rep, exact(Real(1), ctx), ctx);
  EXPECT_LE(abs(one.value - zero.value - 1), one.err + zero.err);
  EXPECT_EQ(rep.point_zero.verdict, Verdict::pass);
  // margin at P = 0 is the upper-window slack
  EXPECT_LE(abs(rep.point_zero.margin.value - rep.window_upper.margin.value), ctx.tolerance());
}
