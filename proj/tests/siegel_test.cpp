#include <gtest/gtest.h>

#include "thetaheight/sampling.hpp"
#include "thetaheight/siegel.hpp"

using namespace thetaheight;
using namespace thetaheight::siegel;

namespace {

struct Prec : ::testing::Test {
  PrecisionScope scope{128};
  Context ctx = Context::with_bits(128);
};

SiegelPoint pt(const char* x, const char* y) { return SiegelPoint::scalar(Real(x), Real(y)); }

void expect_close(const SiegelPoint& a, const SiegelPoint& b, const Real& tol) {
  EXPECT_LE(max_abs_diff(a, b), tol) << to_decimal(max_abs_diff(a, b), 5);
}

SymplecticMatrix word_product(const G1Reduction& r) {
  IntMatrix m = SymplecticMatrix::identity(1).assembled();
  for (const auto& s : r.word) m = s.matrix().assembled() * m;
  return SymplecticMatrix::from_assembled(m);
}

}  // namespace

using Validity = Prec;

TEST_F(Validity, IdentityImaginaryPart) { EXPECT_TRUE(validate(SiegelPoint::i_identity(2), ctx).valid); }

TEST_F(Validity, NegativeImaginaryEntryRejected) {
  SiegelPoint t{RealMatrix(2, 2), RealMatrix{{Real(1), Real(0)}, {Real(0), Real(-1)}}};
  EXPECT_FALSE(validate(t, ctx).valid);
  EXPECT_THROW(require_valid(t, ctx), std::invalid_argument);
}

TEST_F(Validity, MinPivotMatchesHandCholesky) {
  SiegelPoint t{RealMatrix{{Real(0), Real("0.3")}, {Real("0.3"), Real(0)}},
                RealMatrix{{Real(1), Real("0.1")}, {Real("0.1"), Real(2)}}};
  const auto rep = validate(t, ctx);
  ASSERT_TRUE(rep.valid);
  // pivots of [[1, .1], [.1, 2]]: 1 and 2 - .01
  EXPECT_EQ(rep.min_pivot, Real(1));
  RealMatrix l;
  std::vector<Real> piv;
  ASSERT_TRUE(cholesky(t.im, l, piv));
  EXPECT_LE(abs(piv[1] - Real("1.99")), ctx.ulp());
}

TEST_F(Validity, AsymmetricRejected) {
  SiegelPoint t{RealMatrix{{Real(0), Real("0.3")}, {Real("0.2"), Real(0)}}, RealMatrix::identity(2)};
  EXPECT_FALSE(validate(t, ctx).valid);
}

using Action = Prec;

TEST_F(Action, IdentityFixesEverything) {
  const auto t = pt("0.37", "1.3");
  expect_close(act(SymplecticMatrix::identity(1), t, ctx), t, Real(0));
}

TEST_F(Action, InversionFixesI) { expect_close(act(SymplecticMatrix::inversion(1), pt("0", "1"), ctx), pt("0", "1"), ctx.ulp()); }

TEST_F(Action, TranslationShiftsRealPart) {
  expect_close(act(SymplecticMatrix::translation(IntMatrix{{Integer(1)}}), pt("0.2", "1.6"), ctx), pt("1.2", "1.6"),
               ctx.ulp());
}

TEST_F(Action, GeneratorsAreSymplectic) {
  for (std::size_t g = 1; g <= 3; ++g)
    for (const auto& s : default_generators(g)) EXPECT_TRUE(s.is_symplectic());
}

TEST_F(Action, RoundTripAndValidityOnRandomPoints) {
  sampling::Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t g = 1 + trial % 3;
    const auto tau = sampling::random_siegel(g, rng);
    const auto gens = default_generators(g);
    // a random word of length 4
    SymplecticMatrix gamma = SymplecticMatrix::identity(g);
    IntMatrix m = gamma.assembled();
    for (int k = 0; k < 4; ++k)
      m = gens[static_cast<std::size_t>(rng.integer(0, static_cast<long>(gens.size()) - 1))].assembled() * m;
    gamma = SymplecticMatrix::from_assembled(m);
    ASSERT_TRUE(gamma.is_symplectic());
    const auto image = act(gamma, tau, ctx);
    EXPECT_TRUE(validate(image, ctx).valid);
    expect_close(act(gamma.inverse(), image, ctx), tau, 10 * ctx.tolerance());
  }
}

using Domain = Prec;

TEST_F(Domain, ReducedG1PointPasses) { EXPECT_TRUE(fundamental_domain_report(pt("0.2", "1.6"), default_generators(1), ctx).all()); }

TEST_F(Domain, LargeRealPartFailsS2) {
  const auto rep = fundamental_domain_report(pt("0.7", "0.4"), default_generators(1), ctx);
  EXPECT_FALSE(rep.s2);
  EXPECT_FALSE(rep.all());
}

TEST_F(Domain, IIdentityGenus2Passes) {
  EXPECT_TRUE(fundamental_domain_report(SiegelPoint::i_identity(2), default_generators(2), ctx).all());
}

TEST_F(Domain, InsideUnitCircleFailsS1) {
  const auto rep = fundamental_domain_report(pt("0.1", "0.5"), default_generators(1), ctx);
  EXPECT_TRUE(rep.s2);
  EXPECT_FALSE(rep.s1_sampled);
}

using G1 = Prec;

TEST_F(G1, HandGaussReduction) {
  const auto r = reduce_g1(pt("0.7", "0.4"), ctx);
  expect_close(r.reduced, pt("0.2", "1.6"), ctx.tolerance());
  EXPECT_TRUE(r.certificate.report.all());
  // T^-1, S, T^-1 up to the sign convention of S
  ASSERT_EQ(r.word.size(), 3u);
  EXPECT_EQ(r.word[0].kind, G1Step::Kind::translate);
  EXPECT_EQ(r.word[0].shift, -1);
  EXPECT_EQ(r.word[1].kind, G1Step::Kind::invert);
  EXPECT_EQ(r.word[2].shift, -1);
}

TEST_F(G1, PureTranslation) {
  const auto r = reduce_g1(pt("2", "2"), ctx);
  expect_close(r.reduced, pt("0", "2"), Real(0));
  ASSERT_EQ(r.word.size(), 1u);
  EXPECT_EQ(r.word[0].shift, -2);
}

TEST_F(G1, AlreadyReducedIsFixed) {
  const auto r = reduce_g1(pt("0.2", "1.6"), ctx);
  expect_close(r.reduced, pt("0.2", "1.6"), Real(0));
  EXPECT_TRUE(r.word.empty());
  EXPECT_EQ(r.gamma.assembled(), SymplecticMatrix::identity(1).assembled());
}

TEST_F(G1, WordReproducesGammaAndDeterminantGrows) {
  sampling::Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const Real y = Real(rng.log_uniform(1e-3, 10));
    const auto tau = SiegelPoint::scalar(Real(rng.uniform(-50, 50)), y);
    const auto r = reduce_g1(tau, ctx);
    EXPECT_EQ(word_product(r).assembled(), r.gamma.assembled());
    expect_close(act(r.gamma, tau, ctx), r.reduced, ctx.tolerance());
    EXPECT_LE(abs(r.reduced.re(0, 0)), Real(0.5));
    EXPECT_GE(r.reduced.re(0, 0) * r.reduced.re(0, 0) + r.reduced.im(0, 0) * r.reduced.im(0, 0),
              1 - ctx.tolerance());
    EXPECT_GE(det_im(r.reduced), det_im(tau) - ctx.tolerance());
    for (std::size_t k = 1; k < r.certificate.det_history.size(); ++k)
      EXPECT_GE(r.certificate.det_history[k], r.certificate.det_history[k - 1] - ctx.tolerance());
  }
}

using Heuristic = Prec;

TEST_F(Heuristic, AgreesWithGaussReductionInGenus1) {
  sampling::Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const auto tau = SiegelPoint::scalar(Real(rng.uniform(-3, 3)), Real(rng.log_uniform(0.05, 5)));
    const auto a = reduce_g1(tau, ctx);
    const auto b = reduce_heuristic(tau, default_generators(1), ctx);
    EXPECT_TRUE(b.certificate.report.all());
    // both land in F_1; equal up to the boundary identifications, where
    // Im tau is still the same
    EXPECT_LE(abs(a.reduced.im(0, 0) - b.reduced.im(0, 0)), ctx.tolerance());
    if (abs(abs(a.reduced.re(0, 0)) - Real(0.5)) > ctx.tolerance() &&
        abs(norm(Complex(a.reduced.re(0, 0), a.reduced.im(0, 0))) - 1) > ctx.tolerance())
      expect_close(a.reduced, b.reduced, ctx.tolerance());
  }
}

TEST_F(Heuristic, ReducedPointIsFixpoint) {
  const auto t = SiegelPoint::i_identity(2);
  const auto r = reduce_heuristic(t, default_generators(2), ctx);
  expect_close(r.reduced, t, Real(0));
  EXPECT_EQ(r.gamma.assembled(), SymplecticMatrix::identity(2).assembled());
}

TEST_F(Heuristic, TranslationOnlyGenus2) {
  SiegelPoint t{RealMatrix{{Real("0.6"), Real(0)}, {Real(0), Real("0.6")}},
                RealMatrix{{Real(2), Real(0)}, {Real(0), Real(3)}}};
  const auto r = reduce_heuristic(t, default_generators(2), ctx);
  EXPECT_EQ(r.reduced.im, t.im);
  EXPECT_LE(abs(r.reduced.re(0, 0) + Real("0.4")), ctx.ulp());
  EXPECT_LE(abs(r.reduced.re(1, 1) + Real("0.4")), ctx.ulp());
  EXPECT_TRUE(r.certificate.report.all());
}

TEST_F(Heuristic, RandomGenus2IsReducedAndDeterminantGrows) {
  sampling::Rng rng(5);
  int passed = 0;
  for (int trial = 0; trial < 40; ++trial) {
    auto tau = sampling::random_siegel(2, rng);
    // push it away from the domain
    tau = act(SymplecticMatrix::inversion(2), tau, ctx);
    const auto r = reduce_heuristic(tau, default_generators(2), ctx);
    expect_close(act(r.gamma, tau, ctx), r.reduced, 10 * ctx.tolerance());
    EXPECT_TRUE(r.gamma.is_symplectic());
    EXPECT_TRUE(r.certificate.report.s2);
    EXPECT_GE(det_im(r.reduced), det_im(tau) - ctx.tolerance());
    passed += r.certificate.report.all();
  }
  // the heuristic may stall; it must not stall often
  EXPECT_GE(passed, 36);
}
