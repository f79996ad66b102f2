#pragma once

// Explicit constants of the Theta / Faltings height comparison and the two
// elementary lemmas used to derive the logarithmic versions.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "numeric.hpp"
#include "siegel.hpp"

namespace thetaheight::constants {

namespace detail {

inline void require_params(int r, int g) {
  if (g < 1) throw std::invalid_argument("g must be >= 1");
  if (r < 2 || r % 2 != 0) throw std::invalid_argument("r must be even and >= 2");
}

inline Real rg(int v) { return Real(static_cast<long>(v)); }

/// (g/2) log(2 + (2 / 3^(1/4)) 2^(g^3/4)) -- the half log of c(g).
inline Real half_log_cg(int g) {
  const Real gg = rg(g);
  return gg / 2 * log(2 + 2 / pow(Real(3), Real(0.25)) * pow(Real(2), gg * gg * gg / 4));
}

/// log(r^(2g)) = 2g log r.
inline Real log_r2g(int r, int g) { return 2 * rg(g) * log(rg(r)); }

/// log(pi^-g g! e^(pi r^2) g^4).
inline Real log_lattice_term(int g, int r) {
  const Real gg = rg(g);
  return -gg * log(pi()) + lgamma(gg + 1) + pi() * rg(r) * rg(r) + 4 * log(gg);
}

inline CertifiedReal certified(const Real& v, const Context& ctx) { return exact(v, ctx); }

}  // namespace detail

/// m(r,g) = g [ (1/4) log(4 pi) - (1/2) r^(2g) log r ].
inline CertifiedReal m_const(int r, int g, const Context& ctx) {
  detail::require_params(r, g);
  const Real r2g = pow(detail::rg(r), 2 * g);
  return detail::certified(detail::rg(g) * (log(4 * pi()) / 4 - r2g * log(detail::rg(r)) / 2), ctx);
}

/// M(r,g) = (g/4) log(4 pi) + g log r + (g/2) log(2 + (2/3^(1/4)) 2^(g^3/4)).
inline CertifiedReal M_const(int r, int g, const Context& ctx) {
  detail::require_params(r, g);
  const Real gg = detail::rg(g);
  return detail::certified(gg / 4 * log(4 * pi()) + gg * log(detail::rg(r)) + detail::half_log_cg(g), ctx);
}

/// c(g) = (2 + (2/3^(1/4)) 2^(g^3/4))^g.
inline CertifiedReal c_g(int g, const Context& ctx) {
  if (g < 1) throw std::invalid_argument("g must be >= 1");
  return detail::certified(exp(2 * detail::half_log_cg(g)), ctx);
}

/// Matrix Lemma constant C(g) = (8g/pi)(1 + 2 g^2 log(4g)).
inline CertifiedReal C_matrix(int g, const Context& ctx) {
  if (g < 1) throw std::invalid_argument("g must be >= 1");
  const Real gg = detail::rg(g);
  return detail::certified(8 * gg / pi() * (1 + 2 * gg * gg * log(4 * gg)), ctx);
}

/// C3(g,r) = M(r,g) + (1/4) r^(2g) log(r^(2g)).
inline CertifiedReal C3(int g, int r, const Context& ctx) {
  detail::require_params(r, g);
  const Real r2g = pow(detail::rg(r), 2 * g);
  return M_const(r, g, ctx) + detail::certified(r2g * detail::log_r2g(r, g) / 4, ctx);
}

/// C1(g,r) = (2g/pi)(1 + 2g^2 log(4g)) + C3(g,r).
inline CertifiedReal C1(int g, int r, const Context& ctx) {
  const Real gg = detail::rg(g);
  return detail::certified(2 * gg / pi() * (1 + 2 * gg * gg * log(4 * gg)), ctx) + C3(g, r, ctx);
}

/// tilde_c(c) = c log(6 + 2c log(2c) - 2c) / log 3, for c >= 2.
inline CertifiedReal tilde_c(const CertifiedReal& c, const Context& ctx) {
  if (c.value < 2) throw std::invalid_argument("tilde_c needs c >= 2");
  const CertifiedReal two = detail::certified(Real(2), ctx);
  const CertifiedReal inner = detail::certified(Real(6), ctx) + two * c * log(two * c) - two * c;
  return scale(c * log(inner), 1 / log(Real(3)));
}

inline CertifiedReal tilde_c(const Real& c, const Context& ctx) { return tilde_c(detail::certified(c, ctx), ctx); }

/// C2(g,r) = C1 log(6 + 2 C1 log(2 C1) - 2 C1) / log 3, i.e. tilde_c(C1).
inline CertifiedReal C2(int g, int r, const Context& ctx) { return tilde_c(C1(g, r, ctx), ctx); }

struct EasierConstants {
  CertifiedReal c1, c2, c3;
  bool c1_dominates = false, c2_dominates = false, c3_dominates = false;
  bool all() const { return c1_dominates && c2_dominates && c3_dominates; }
};

/// 6 r^(2g) log r^(2g), 1000 r^(2g) (log r^(2g))^5, 6 r^(2g) log r^(2g), with
/// dominance over the precise C1, C2, C3 checked on certified values.
inline EasierConstants easier_constants(int g, int r, const Context& ctx) {
  detail::require_params(r, g);
  const Real r2g = pow(detail::rg(r), 2 * g);
  const Real l = detail::log_r2g(r, g);
  EasierConstants e;
  e.c1 = detail::certified(6 * r2g * l, ctx);
  e.c2 = detail::certified(1000 * r2g * pow(l, 5), ctx);
  e.c3 = e.c1;
  e.c1_dominates = certify_geq(e.c1, C1(g, r, ctx)) == Verdict::pass;
  e.c2_dominates = certify_geq(e.c2, C2(g, r, ctx)) == Verdict::pass;
  e.c3_dominates = certify_geq(e.c3, C3(g, r, ctx)) == Verdict::pass;
  return e;
}

/// Lower bound h_F >= -C(g) log C(g) - M(r,g).
inline CertifiedReal hF_lower(int r, int g, const Context& ctx) {
  const CertifiedReal c = C_matrix(g, ctx);
  return -(c * log(c)) - M_const(r, g, ctx);
}

/// Bost's lower bound -g log(2 pi) / 2.
inline CertifiedReal bost_lower(int g, const Context& ctx) {
  if (g < 1) throw std::invalid_argument("g must be >= 1");
  return detail::certified(-detail::rg(g) * log(2 * pi()) / 2, ctx);
}

/// The constant of the point-count bound, returned in log space because the
/// second branch is of size e^40000 and up.
struct BreveC {
  Real log_value{0};
  std::optional<Real> value;  ///< set when the value fits in a double
  bool second_branch = false;
};

/// max{2 c2, 1 + (12^4 + g)^(2^12) 4^(2g+3) g (g^4 + 2^(2g+2) g + 1/c1)}.
/// `d` only enters through the conjectural constants c1, c2.
inline BreveC breve_c(int d, int g, const Real& c1, const Real& c2) {
  if (d < 1 || g < 1) throw std::invalid_argument("breve_c needs d, g >= 1");
  if (!(c1 > 0) || !(c2 > 0)) throw std::invalid_argument("breve_c needs c1, c2 > 0");
  const Real gg = detail::rg(g);
  const Real log_product = 4096 * log(Real(20736) + gg) + (2 * gg + 3) * log(Real(4)) + log(gg) +
                           log(pow(gg, 4) + pow(Real(2), 2 * g + 2) * gg + 1 / c1);
  // log(1 + e^L) = L + log1p(e^-L)
  const Real log_second = log_product + log1p(exp(-log_product));
  const Real log_first = log(2 * c2);
  BreveC out;
  out.second_branch = log_second >= log_first;
  out.log_value = out.second_branch ? log_second : log_first;
  if (out.log_value < 700) out.value = exp(out.log_value);
  return out;
}

/// c(g,r) = 4 + 8 C2 + g log(pi^-g g! e^(pi r^2) g^4) + 4 r^(2g).
inline CertifiedReal c_lattice(int g, int r, const CertifiedReal& c2, const Context& ctx) {
  detail::require_params(r, g);
  const Real gg = detail::rg(g);
  return detail::certified(Real(4), ctx) + scale(c2, Real(8)) +
         detail::certified(gg * detail::log_lattice_term(g, r) + 4 * pow(detail::rg(r), 2 * g), ctx);
}

inline CertifiedReal c_lattice(int g, int r, const Context& ctx) { return c_lattice(g, r, C2(g, r, ctx), ctx); }

/// ((g/2) log(pi^-g g! e^(pi r^2) g^4)) log(2 + hTheta).
inline CertifiedReal sigma_norm_log_bound(int g, int r, const Real& h_theta, const Context& ctx) {
  detail::require_params(r, g);
  if (h_theta < 0) throw std::invalid_argument("theta height must be nonnegative");
  const Real gg = detail::rg(g);
  return detail::certified(gg / 2 * detail::log_lattice_term(g, r) * log(2 + h_theta), ctx);
}

/// h'_F - h_F = (1 / 2n) sum_sigma log det Im tau_sigma + (1/2) log deg.
inline CertifiedReal modified_faltings_offset(const std::vector<siegel::SiegelPoint>& taus, long deg_isogeny,
                                              const Context& ctx) {
  if (taus.empty()) throw std::invalid_argument("need at least one embedding");
  if (deg_isogeny < 1) throw std::invalid_argument("isogeny degree must be positive");
  CertifiedReal acc{Real(0), Real(0)};
  for (const auto& t : taus) {
    siegel::require_valid(t, ctx);
    acc = acc + log(detail::certified(siegel::det_im(t), ctx));
  }
  return scale(acc, 1 / (2 * Real(static_cast<long>(taus.size())))) +
         detail::certified(log(Real(deg_isogeny)) / 2, ctx);
}

// ---------------------------------------------------------------------------
// Elementary lemmas, as checkable predicates

/// Hypothesis of the tilde-c lemma: a, b >= 1, c >= 2, |a - b| <= c log(2 + a).
inline bool tilde_c_hypothesis(const Real& a, const Real& b, const Real& c) {
  return a >= 1 && b >= 1 && c >= 2 && abs(a - b) <= c * log(2 + a);
}

/// Conclusion: |a - b| <= tilde_c(c) log(2 + min{a, b}).
inline bool tilde_c_conclusion(const Real& a, const Real& b, const Real& c, const Context& ctx) {
  const CertifiedReal tc = tilde_c(c, ctx);
  return abs(a - b) <= tc.upper() * log(2 + std::min(a, b));
}

/// Hypothesis of the (1+2c) lemma: a, b >= 1, c > 0,
/// |a - b| <= c log(2 + min{a, b}) and d <= a.
inline bool min_bound_hypothesis(const Real& a, const Real& b, const Real& c, const Real& d) {
  return a >= 1 && b >= 1 && c > 0 && abs(a - b) <= c * log(2 + std::min(a, b)) && d <= a;
}

struct LemmaVerdict {
  bool hypothesis = false;
  bool conclusion = false;
  Real lhs{0}, rhs{0};
};

/// d <= (1 + 2c) min{a, b}.
inline LemmaVerdict min_bound_lemma_check(const Real& a, const Real& b, const Real& c, const Real& d) {
  LemmaVerdict v;
  v.hypothesis = min_bound_hypothesis(a, b, c, d);
  v.lhs = d;
  v.rhs = (1 + 2 * c) * std::min(a, b);
  v.conclusion = v.lhs <= v.rhs;
  return v;
}

// ---------------------------------------------------------------------------
// Tables

struct TableEntry {
  std::string name;
  std::string formula;
  CertifiedReal value;
  std::optional<Real> log_value;  ///< for entries too large to print linearly
};

struct ConstantsTable {
  int g = 1, r = 2;
  std::vector<TableEntry> entries;
  bool window_ordered = false;    ///< m(r,g) < M(r,g)
  bool easier_dominate = false;

  const TableEntry& at(const std::string& name) const {
    for (const auto& e : entries)
      if (e.name == name) return e;
    throw std::out_of_range("no constant named " + name);
  }
};

struct BreveInputs {
  int d = 1;
  Real c1{1}, c2{1};
};

inline ConstantsTable constants_table(int g, int r, const std::optional<BreveInputs>& breve, const Context& ctx) {
  detail::require_params(r, g);
  ConstantsTable t;
  t.g = g;
  t.r = r;
  auto add = [&](std::string name, std::string formula, CertifiedReal v) {
    t.entries.push_back({std::move(name), std::move(formula), std::move(v), std::nullopt});
  };
  const CertifiedReal c2 = C2(g, r, ctx);
  const EasierConstants easy = easier_constants(g, r, ctx);
  add("m", "g*((1/4)*log(4*pi) - (1/2)*r^(2g)*log(r))", m_const(r, g, ctx));
  add("M", "(g/4)*log(4*pi) + g*log(r) + (g/2)*log(2 + (2/3^(1/4))*2^(g^3/4))", M_const(r, g, ctx));
  add("c_g", "(2 + (2/3^(1/4))*2^(g^3/4))^g", c_g(g, ctx));
  add("C_matrix", "(8g/pi)*(1 + 2g^2*log(4g))", C_matrix(g, ctx));
  add("C1", "(2g/pi)*(1 + 2g^2*log(4g)) + (g/4)*log(4*pi) + g*log(r) + (g/2)*log(2 + (2/3^(1/4))*2^(g^3/4)) + "
            "(1/4)*r^(2g)*log(r^(2g))",
      C1(g, r, ctx));
  add("C2", "C1*log(6 + 2*C1*log(2*C1) - 2*C1)/log(3)", c2);
  add("C3", "(g/4)*log(4*pi) + g*log(r) + (g/2)*log(2 + (2/3^(1/4))*2^(g^3/4)) + (1/4)*r^(2g)*log(r^(2g))",
      C3(g, r, ctx));
  add("C1_easy", "6*r^(2g)*log(r^(2g))", easy.c1);
  add("C2_easy", "1000*r^(2g)*(log(r^(2g)))^5", easy.c2);
  add("C3_easy", "6*r^(2g)*log(r^(2g))", easy.c3);
  add("hF_lower", "-C(g)*log(C(g)) - M(r,g)", hF_lower(r, g, ctx));
  add("bost_lower", "-g*log(2*pi)/2", bost_lower(g, ctx));
  const CertifiedReal cl = c_lattice(g, r, c2, ctx);
  add("c_lattice", "4 + 8*C2 + g*log(pi^(-g)*g!*e^(pi*r^2)*g^4) + 4*r^(2g)", cl);
  add("lattice_factor", "1 + 2*c(g,r)", scale(cl, Real(2)) + detail::certified(Real(1), ctx));
  if (breve) {
    const BreveC b = breve_c(breve->d, g, breve->c1, breve->c2);
    TableEntry e{"breve_c", "max{2*c2, 1 + (12^4+g)^(2^12)*4^(2g+3)*g*(g^4 + 2^(2g+2)*g + 1/c1)}",
                 {b.value.value_or(Real(0)), Real(0)}, b.log_value};
    t.entries.push_back(std::move(e));
  }
  t.window_ordered = certify_geq(M_const(r, g, ctx), m_const(r, g, ctx)) == Verdict::pass;
  t.easier_dominate = easy.all();
  return t;
}

}  // namespace thetaheight::constants
