#include <gtest/gtest.h>

#include "thetaheight/io.hpp"
#include "thetaheight/sampling.hpp"

using namespace thetaheight;
using namespace thetaheight::io;

struct Io : ::testing::Test {
  PrecisionScope scope{128};
};

TEST_F(Io, SiegelRoundTrip) {
  const json j = json::parse(R"([[["0.1","1"],["0.3","0.2"]],[["0.3","0.2"],["-0.25","2"]]])");
  const auto tau = siegel_from_json(j);
  EXPECT_EQ(tau.g(), 2u);
  EXPECT_EQ(tau.re(0, 1), Real("0.3"));
  EXPECT_EQ(tau.im(1, 1), Real(2));
  EXPECT_EQ(siegel_from_json(siegel_to_json(tau)).re, tau.re);
  EXPECT_EQ(siegel_from_json(siegel_to_json(tau)).im, tau.im);
}

TEST_F(Io, NumbersAndBareReals) {
  EXPECT_EQ(complex_from_json(json::parse("2")), Complex(Real(2)));
  EXPECT_EQ(complex_from_json(json::parse(R"(["1e-3", 4])")), Complex(Real("1e-3"), Real(4)));
  EXPECT_THROW(complex_from_json(json::parse("[1,2,3]")), std::invalid_argument);
  EXPECT_THROW(complex_matrix_from_json(json::parse("[[1,2],[3]]")), std::invalid_argument);
  EXPECT_THROW(siegel_from_json(json::parse("[[1,2]]")), std::invalid_argument);
}

TEST_F(Io, Rationals) {
  EXPECT_EQ(rational_from_json(json::parse(R"("3/4")")), Rational(3, 4));
  EXPECT_EQ(rational_from_json(json::parse(R"("-6/8")")), Rational(-3, 4));
  EXPECT_EQ(rational_from_json(json::parse("5")), Rational(5));
  EXPECT_THROW(rational_from_json(json::parse(R"("x")")), std::invalid_argument);
  EXPECT_THROW(rational_from_json(json::parse("0.5")), std::invalid_argument);
  const auto m = rational_matrix_from_json(json::parse(R"([["1/2","0"],["0","3"]])"));
  EXPECT_EQ(rational_matrix_to_json(m).dump(), R"([["1/2","0"],["0","3"]])");
  EXPECT_THROW(int_matrix_from_json(json::parse(R"([["1/2"]])")), std::invalid_argument);
}

TEST_F(Io, Symplectic) {
  for (const auto& s : siegel::default_generators(2)) {
    const auto back = symplectic_from_json(symplectic_to_json(s));
    EXPECT_EQ(back.assembled(), s.assembled());
    EXPECT_EQ(symplectic_from_json(int_matrix_to_json(s.assembled())).assembled(), s.assembled());
  }
  EXPECT_THROW(symplectic_from_json(json::parse(R"([["2","0"],["0","1"]])")), std::invalid_argument);
}

TEST_F(Io, CompactHasNoCommasAndIsStable) {
  sampling::Rng a(1), b(1);
  const auto t1 = sampling::random_siegel(2, a), t2 = sampling::random_siegel(2, b);
  EXPECT_EQ(compact(t1), compact(t2));
  EXPECT_EQ(compact(t1).find(','), std::string::npos);
  EXPECT_EQ(compact(IntMatrix{{Integer(1), Integer(-2)}, {Integer(3), Integer(4)}}), "[1 -2;3 4]");
}

TEST(Sampling, SubstreamsDependOnlyOnSeedAndId) {
  sampling::Rng a(5, 17), b(5, 17), c(5, 18), d(6, 17);
  const double x = a.uniform(0, 1);
  EXPECT_EQ(x, b.uniform(0, 1));
  EXPECT_NE(x, c.uniform(0, 1));
  EXPECT_NE(x, d.uniform(0, 1));
}

TEST(Sampling, RandomUnimodularHasUnitDeterminant) {
  PrecisionScope p(128);
  sampling::Rng rng(3);
  for (std::size_t n = 1; n <= 4; ++n)
    for (int k = 0; k < 20; ++k) {
      const auto u = sampling::random_unimodular(n, rng);
      EXPECT_EQ(abs(determinant(u.map([](const Integer& v) { return Rational(v); }))), 1);
    }
}
