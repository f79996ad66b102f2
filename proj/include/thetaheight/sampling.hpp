#pragma once

// Seeded per-sample randomness and the random inputs of the campaigns.
// Random draws are doubles; they are converted exactly to Real, so the
// printed inputs determine the computation.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "matrix.hpp"
#include "numeric.hpp"
#include "siegel.hpp"

namespace thetaheight::sampling {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Substream seed for one sample: independent of scheduling.
inline std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t sample_id) {
  return splitmix64(seed ^ splitmix64(sample_id));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  Rng(std::uint64_t seed, std::uint64_t sample_id) : eng_(sample_seed(seed, sample_id)) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(eng_); }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(eng_); }
  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(eng_); }
  double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }

 private:
  std::mt19937_64 eng_;
};

/// Orthogonal matrix by Gram-Schmidt on a Gaussian matrix (double precision;
/// only used to shape Im tau, so exact orthogonality is irrelevant).
inline std::vector<std::vector<double>> random_orthogonal(std::size_t g, Rng& rng) {
  std::vector<std::vector<double>> q(g, std::vector<double>(g));
  for (auto& row : q)
    for (auto& v : row) v = rng.normal();
  for (std::size_t i = 0; i < g; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      double dot = 0;
      for (std::size_t k = 0; k < g; ++k) dot += q[i][k] * q[j][k];
      for (std::size_t k = 0; k < g; ++k) q[i][k] -= dot * q[j][k];
    }
    double nrm = 0;
    for (double v : q[i]) nrm += v * v;
    nrm = std::sqrt(nrm);
    for (auto& v : q[i]) v /= nrm;
  }
  return q;
}

/// Re entries uniform in [-1/2, 1/2]; Im = Q^T diag(d) Q with d log-uniform
/// in [0.5, 4]. Entries are rounded to doubles before use.
inline siegel::SiegelPoint random_siegel(std::size_t g, Rng& rng) {
  RealMatrix x(g, g), y(g, g);
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = i; j < g; ++j) x(i, j) = x(j, i) = Real(rng.uniform(-0.5, 0.5));
  std::vector<double> d(g);
  for (auto& v : d) v = rng.log_uniform(0.5, 4.0);
  const auto q = random_orthogonal(g, rng);
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = i; j < g; ++j) {
      double s = 0;
      for (std::size_t k = 0; k < g; ++k) s += q[k][i] * d[k] * q[k][j];
      y(i, j) = y(j, i) = Real(s);
    }
  return {x, y};
}

/// z = x + i Y b with x, b uniform in [0, 1]^g: a point of the fundamental
/// parallelogram of Z^g + tau Z^g, up to the real part of tau b.
inline std::vector<Complex> random_z(const siegel::SiegelPoint& tau, Rng& rng) {
  const std::size_t g = tau.g();
  std::vector<Real> x(g), b(g);
  for (auto& v : x) v = Real(rng.uniform(0.0, 1.0));
  for (auto& v : b) v = Real(rng.uniform(0.0, 1.0));
  std::vector<Complex> z(g);
  const std::vector<Real> yb = tau.im * b;
  for (std::size_t i = 0; i < g; ++i) z[i] = Complex(x[i], yb[i]);
  return z;
}

/// Nonsingular integer matrix with entries in [-bound, bound].
inline IntMatrix random_nonsingular(std::size_t n, long bound, Rng& rng) {
  for (;;) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) m(i, j) = rng.integer(-bound, bound);
    const RationalMatrix r = m.map([](const Integer& v) { return Rational(v); });
    if (determinant(r) != 0) return m;
  }
}

/// Random element of GL_n(Z): a product of elementary transvections and
/// sign flips.
inline IntMatrix random_unimodular(std::size_t n, Rng& rng) {
  IntMatrix u = IntMatrix::identity(n);
  if (n == 1) {
    u(0, 0) = rng.integer(0, 1) ? 1 : -1;
    return u;
  }
  for (int step = 0; step < 3 * static_cast<int>(n); ++step) {
    const auto i = static_cast<std::size_t>(rng.integer(0, static_cast<long>(n) - 1));
    auto j = static_cast<std::size_t>(rng.integer(0, static_cast<long>(n) - 2));
    if (j >= i) ++j;
    const long k = rng.integer(-3, 3);
    for (std::size_t r = 0; r < n; ++r) u(r, i) += k * u(r, j);
  }
  const auto f = static_cast<std::size_t>(rng.integer(0, static_cast<long>(n) - 1));
  for (std::size_t r = 0; r < n; ++r) u(r, f) = -u(r, f);
  return u;
}

}  // namespace thetaheight::sampling
