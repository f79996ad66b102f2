#pragma once

// JSON and text encodings shared by the CLI and the campaign reports.
// Complex matrices are row-major arrays of [re, im] decimal-string pairs;
// rationals are "p/q" strings.

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "lattices.hpp"
#include "matrix.hpp"
#include "numeric.hpp"
#include "siegel.hpp"

namespace thetaheight::io {

using json = nlohmann::json;

inline Real real_from_json(const json& j) {
  if (j.is_string()) return parse_real(j.get<std::string>());
  if (j.is_number_integer()) return Real(j.get<long long>());
  if (j.is_number()) return Real(j.get<double>());
  throw std::invalid_argument("expected a decimal string or number, got " + j.dump());
}

/// [re, im] pair, or a bare real.
inline Complex complex_from_json(const json& j) {
  if (j.is_array()) {
    if (j.size() != 2) throw std::invalid_argument("complex entry must be [re, im]: " + j.dump());
    return {real_from_json(j[0]), real_from_json(j[1])};
  }
  return {real_from_json(j), Real(0)};
}

inline json real_to_json(const Real& x) { return to_decimal(x); }
inline json complex_to_json(const Complex& z) { return json::array({to_decimal(z.re), to_decimal(z.im)}); }

inline ComplexMatrix complex_matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix must be a nonempty array of rows");
  const std::size_t n = j.size();
  ComplexMatrix m(n, j[0].size());
  for (std::size_t i = 0; i < n; ++i) {
    if (!j[i].is_array() || j[i].size() != m.cols()) throw std::invalid_argument("ragged matrix");
    for (std::size_t k = 0; k < m.cols(); ++k) m(i, k) = complex_from_json(j[i][k]);
  }
  return m;
}

inline siegel::SiegelPoint siegel_from_json(const json& j) {
  const ComplexMatrix m = complex_matrix_from_json(j);
  if (!m.square()) throw std::invalid_argument("tau must be square");
  return siegel::from_complex(m);
}

inline json siegel_to_json(const siegel::SiegelPoint& tau) {
  json rows = json::array();
  for (std::size_t i = 0; i < tau.g(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < tau.g(); ++k) row.push_back(complex_to_json({tau.re(i, k), tau.im(i, k)}));
    rows.push_back(row);
  }
  return rows;
}

inline std::vector<Complex> complex_vector_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("z must be an array");
  std::vector<Complex> z;
  for (const auto& e : j) z.push_back(complex_from_json(e));
  return z;
}

inline json complex_vector_to_json(const std::vector<Complex>& z) {
  json out = json::array();
  for (const auto& v : z) out.push_back(complex_to_json(v));
  return out;
}

inline Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (!j.is_string()) throw std::invalid_argument("rational must be a \"p/q\" string: " + j.dump());
  try {
    return Rational(j.get<std::string>());
  } catch (const std::exception&) {
    throw std::invalid_argument("not a rational: " + j.dump());
  }
}

inline RationalMatrix rational_matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix must be a nonempty array of rows");
  RationalMatrix m(j.size(), j[0].size());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (!j[i].is_array() || j[i].size() != m.cols()) throw std::invalid_argument("ragged matrix");
    for (std::size_t k = 0; k < m.cols(); ++k) m(i, k) = rational_from_json(j[i][k]);
  }
  return m;
}

inline json rational_matrix_to_json(const RationalMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(m(i, k).str());
    rows.push_back(row);
  }
  return rows;
}

inline json int_matrix_to_json(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(m(i, k).str());
    rows.push_back(row);
  }
  return rows;
}

inline IntMatrix int_matrix_from_json(const json& j) {
  const RationalMatrix r = rational_matrix_from_json(j);
  return r.map([](const Rational& q) {
    if (denominator(q) != 1) throw std::invalid_argument("expected an integer matrix");
    return Integer(numerator(q));
  });
}

inline json symplectic_to_json(const siegel::SymplecticMatrix& s) {
  return {{"alpha", int_matrix_to_json(s.alpha)},
          {"beta", int_matrix_to_json(s.beta)},
          {"lambda", int_matrix_to_json(s.lambda)},
          {"mu", int_matrix_to_json(s.mu)}};
}

/// Either {alpha, beta, lambda, mu} or an assembled 2g x 2g integer matrix.
inline siegel::SymplecticMatrix symplectic_from_json(const json& j) {
  siegel::SymplecticMatrix s;
  if (j.is_object()) {
    s.alpha = int_matrix_from_json(j.at("alpha"));
    s.beta = int_matrix_from_json(j.at("beta"));
    s.lambda = int_matrix_from_json(j.at("lambda"));
    s.mu = int_matrix_from_json(j.at("mu"));
  } else {
    s = siegel::SymplecticMatrix::from_assembled(int_matrix_from_json(j));
  }
  if (!s.is_symplectic()) throw std::invalid_argument("generator is not symplectic: " + j.dump());
  return s;
}

inline json certified_to_json(const CertifiedReal& c) {
  return {{"value", to_decimal(c.value)}, {"err", to_decimal(c.err, 6)}};
}

inline json certified_to_json(const CertifiedComplex& c) {
  return {{"value", complex_to_json(c.value)}, {"err", to_decimal(c.err, 6)}};
}

inline json lattice_to_json(const lattices::IntegerLattice& l) {
  return {{"denominator", l.denominator().str()}, {"hnf", int_matrix_to_json(l.hnf_matrix())}};
}

// ---------------------------------------------------------------------------
// Compact text for campaign inputs: fixed digits so that equal inputs give
// equal strings. No commas, so CSV fields need no quoting.

inline std::string compact(const Real& x) { return x.str(20, std::ios_base::scientific); }

inline std::string compact(const Complex& z) {
  return compact(z.re) + (z.im < 0 ? "" : "+") + compact(z.im) + "i";
}

inline std::string compact(const siegel::SiegelPoint& tau) {
  std::string s = "[";
  for (std::size_t i = 0; i < tau.g(); ++i) {
    s += i ? ";[" : "[";
    for (std::size_t k = 0; k < tau.g(); ++k) s += (k ? " " : "") + compact(Complex(tau.re(i, k), tau.im(i, k)));
    s += "]";
  }
  return s + "]";
}

inline std::string compact(const std::vector<Complex>& z) {
  std::string s = "[";
  for (std::size_t i = 0; i < z.size(); ++i) s += (i ? " " : "") + compact(z[i]);
  return s + "]";
}

inline std::string compact(const IntMatrix& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    s += i ? ";" : "";
    for (std::size_t k = 0; k < m.cols(); ++k) s += (k ? " " : "") + m(i, k).str();
  }
  return s + "]";
}

}  // namespace thetaheight::io
