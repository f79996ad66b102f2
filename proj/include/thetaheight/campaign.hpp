#pragma once

// Seeded verification campaigns. Every sample draws from its own substream
// hash(seed, sample_id), so a report depends only on the configuration and
// never on how samples were spread over workers.

#include <atomic>
#include <chrono>
#include <cstdint>
#include <exception>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "constants.hpp"
#include "heights.hpp"
#include "io.hpp"
#include "lattices.hpp"
#include "numeric.hpp"
#include "sampling.hpp"
#include "siegel.hpp"
#include "theta.hpp"

namespace thetaheight::campaign {

using json = nlohmann::json;

enum class Suite { norm_bounds, duplication, window, matrix_lemma, delta_metric, lemmas };

inline std::string to_string(Suite s) {
  switch (s) {
    case Suite::norm_bounds: return "norm-bounds";
    case Suite::duplication: return "duplication";
    case Suite::window: return "window";
    case Suite::matrix_lemma: return "matrix-lemma";
    case Suite::delta_metric: return "delta-metric";
    case Suite::lemmas: return "lemmas";
  }
  return "?";
}

inline Suite parse_suite(const std::string& s) {
  for (Suite v : {Suite::norm_bounds, Suite::duplication, Suite::window, Suite::matrix_lemma, Suite::delta_metric,
                  Suite::lemmas})
    if (to_string(v) == s) return v;
  throw std::invalid_argument("unknown suite '" + s + "'");
}

struct ConfigMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CampaignConfig {
  Suite suite = Suite::norm_bounds;
  std::size_t samples = 1;
  std::uint64_t seed = 0;
  unsigned prec = 128;
  int g = 1;
  int r = 2;
  int steps = 6;            ///< duplication steps
  unsigned workers = 1;     ///< not part of the report: results do not depend on it
  std::string corpus_file;  ///< empty: built-in corpus
  std::vector<heights::EllipticCurveQ> corpus;

  void validate() const {
    if (samples < 1) throw std::invalid_argument("samples must be >= 1");
    if (prec < 64) throw std::invalid_argument("prec must be >= 64");
    if (workers < 1) throw std::invalid_argument("workers must be >= 1");
    if (suite == Suite::norm_bounds || suite == Suite::duplication) {
      if (g < 1 || g > 4) throw std::invalid_argument("g must be in 1..4");
    }
    if (suite == Suite::norm_bounds && (r < 2 || r % 2 != 0)) throw std::invalid_argument("r must be even and >= 2");
    if (suite == Suite::duplication && steps < 1) throw std::invalid_argument("steps must be >= 1");
    if ((suite == Suite::window || suite == Suite::matrix_lemma) && corpus.empty())
      throw std::invalid_argument("curve suites need a nonempty corpus");
  }

  json echo() const {
    json j = {{"suite", to_string(suite)}, {"samples", samples}, {"seed", seed}, {"prec", prec}};
    if (suite == Suite::norm_bounds || suite == Suite::duplication) j["g"] = g;
    if (suite == Suite::norm_bounds) j["r"] = r;
    if (suite == Suite::duplication) j["steps"] = steps;
    if (suite == Suite::window || suite == Suite::matrix_lemma)
      j["corpus"] = corpus_file.empty() ? std::string("builtin") : corpus_file;
    return j;
  }
};

struct Row {
  std::size_t sample_id = 0;
  std::string check;
  std::string inputs;
  std::string lhs, rhs, margin, margin_err;
  Verdict verdict = Verdict::indeterminate;

  friend bool operator==(const Row&, const Row&) = default;
};

struct Summary {
  std::size_t pass = 0, fail = 0, indeterminate = 0;
  std::string min_margin;  ///< smallest margin over numeric rows
};

struct CampaignReport {
  CampaignConfig config;
  std::vector<Row> rows;
  Summary summary;
  double wall_seconds = 0;  ///< reported on the side, never serialized
};

namespace detail {

inline std::string num(const Real& x) { return x.str(25, std::ios_base::scientific); }

inline Row row_from_check(std::size_t id, std::string check, const std::string& inputs, const theta::BoundCheck& c) {
  return {id, std::move(check), inputs, num(c.lhs.value), num(c.rhs.value), num(c.margin.value),
          num(c.margin.err), c.verdict};
}

inline Row exact_row(std::size_t id, std::string check, const std::string& inputs, std::string lhs, std::string rhs,
                     std::string margin, bool ok) {
  return {id, std::move(check), inputs, std::move(lhs), std::move(rhs), std::move(margin), "0",
          ok ? Verdict::pass : Verdict::fail};
}

inline std::vector<Row> norm_bounds_sample(const CampaignConfig& cfg, std::size_t id, const Context& ctx) {
  sampling::Rng rng(cfg.seed, id);
  const auto g = static_cast<std::size_t>(cfg.g);
  std::vector<Row> rows;
  const siegel::SiegelPoint raw = sampling::random_siegel(g, rng);
  const std::string raw_in = "tau=" + io::compact(raw);
  const auto lower = theta::verify_norm_bounds(raw, cfg.r, std::nullopt, ctx);
  rows.push_back(row_from_check(id, "lower", raw_in, lower.lower));

  // The upper bound and the sandwich need a reduced tau. Redraw from the
  // same substream until the reducer certifies its output.
  siegel::SiegelPoint tau = raw;
  bool reduced = false;
  for (int attempt = 0; attempt < 20 && !reduced; ++attempt) {
    const siegel::SiegelPoint cand = attempt == 0 ? raw : sampling::random_siegel(g, rng);
    siegel::ReductionResult red =
        g == 1 ? static_cast<siegel::ReductionResult>(siegel::reduce_g1(cand, ctx))
               : siegel::reduce_heuristic(cand, siegel::default_generators(g), ctx);
    if (red.certificate.converged && red.certificate.report.all()) {
      tau = red.reduced;
      reduced = true;
    }
  }
  if (!reduced) {
    for (const char* c : {"upper", "sandwich_lower", "sandwich_upper"})
      rows.push_back({id, c, raw_in + " reduction=failed", "", "", "", "", Verdict::indeterminate});
    return rows;
  }
  const auto z = sampling::random_z(tau, rng);
  const std::string in = "tau=" + io::compact(tau) + " z=" + io::compact(z);
  const auto rep = theta::verify_norm_bounds(tau, cfg.r, z, ctx);
  rows.push_back(row_from_check(id, "upper", in, rep.upper));
  rows.push_back(row_from_check(id, "sandwich_lower", in, rep.sandwich_lower));
  rows.push_back(row_from_check(id, "sandwich_upper", in, rep.sandwich_upper));
  return rows;
}

inline std::vector<Row> duplication_sample(const CampaignConfig& cfg, std::size_t id, const Context& ctx) {
  sampling::Rng rng(cfg.seed, id);
  const siegel::SiegelPoint tau = sampling::random_siegel(static_cast<std::size_t>(cfg.g), rng);
  const std::string in = "tau=" + io::compact(tau) + " steps=" + std::to_string(cfg.steps);
  const auto rep = theta::verify_duplication(tau, cfg.steps, ctx);
  std::vector<Row> rows;
  // Monotone: smallest step F_k - F_{k+1}; allowed down to -(err_k + err_{k+1}).
  Real worst = rep.f[0].value - rep.f[1].value, worst_err = rep.f[0].err + rep.f[1].err;
  Real min_f = rep.f[0].value, min_err = rep.f[0].err;
  for (std::size_t k = 0; k + 1 < rep.f.size(); ++k) {
    const Real step = rep.f[k].value - rep.f[k + 1].value;
    if (step < worst) {
      worst = step;
      worst_err = rep.f[k].err + rep.f[k + 1].err;
    }
  }
  for (const auto& f : rep.f)
    if (f.value < min_f) {
      min_f = f.value;
      min_err = f.err;
    }
  rows.push_back({id, "monotone", in, num(rep.f.front().value), num(rep.f.back().value), num(worst), num(worst_err),
                  rep.monotone});
  rows.push_back({id, "at_least_one", in, num(min_f), "1", num(min_f - 1), num(min_err), rep.at_least_one});
  const Real d0 = abs(rep.theta_at_zero.front().value - Complex(Real(1)));
  rows.push_back({id, "converging", in, num(rep.final_distance), num(d0), num(d0 - rep.final_distance),
                  num(rep.theta_at_zero.front().err + rep.theta_at_zero.back().err), rep.converging});
  return rows;
}

inline std::vector<Row> curve_sample(const CampaignConfig& cfg, std::size_t id, const Context& ctx) {
  const auto& c = cfg.corpus[id % cfg.corpus.size()];
  std::string in = c.label + " [" + c.coefficients() + "]";
  for (auto& ch : in)
    if (ch == ',') ch = ' ';
  const auto rep = heights::window_check(c, ctx);
  std::vector<Row> rows;
  if (cfg.suite == Suite::matrix_lemma) {
    rows.push_back(row_from_check(id, "matrix_lemma", in, rep.matrix_lemma));
    return rows;
  }
  rows.push_back(row_from_check(id, "window_lower", in, rep.window_lower));
  rows.push_back(row_from_check(id, "window_upper", in, rep.window_upper));
  rows.push_back(row_from_check(id, "bost", in, rep.bost));
  rows.push_back(row_from_check(id, "hf_lower", in, rep.hf_lower));
  rows.push_back(row_from_check(id, "point_zero", in, rep.point_zero));
  rows.push_back({id, "jacobi", in, num(rep.h_theta.jacobi_defect.value), num(10 * rep.h_theta.jacobi_defect.err),
                  num(10 * rep.h_theta.jacobi_defect.err - rep.h_theta.jacobi_defect.value), "0",
                  rep.h_theta.jacobi});
  rows.push_back({id, "reduced_tau", in, io::compact(rep.tau_reduced), "F_1", "", "",
                  rep.reduced_in_domain ? Verdict::pass : Verdict::fail});
  return rows;
}

inline std::vector<Row> delta_sample(const CampaignConfig& cfg, std::size_t id) {
  using namespace lattices;
  sampling::Rng rng(cfg.seed, id);
  const auto n = static_cast<std::size_t>(rng.integer(1, 4));
  auto to_rational = [](const IntMatrix& m) { return m.map([](const Integer& v) { return Rational(v); }); };
  const IntMatrix b1 = sampling::random_nonsingular(n, 10, rng);
  const IntMatrix b2 = sampling::random_nonsingular(n, 10, rng);
  const IntMatrix b3 = sampling::random_nonsingular(n, 10, rng);
  const std::string in = "B1=" + io::compact(b1) + " B2=" + io::compact(b2) + " B3=" + io::compact(b3);
  const IntegerLattice l1(to_rational(b1)), l2(to_rational(b2)), l3(to_rational(b3));
  std::vector<Row> rows;
  try {
    const DeltaResult d12 = delta(l1, l2), d21 = delta(l2, l1), d23 = delta(l2, l3), d13 = delta(l1, l3);
    const DeltaResult d11 = delta(l1, l1);
    const Integer &i12 = d12.card.index, &i23 = d23.card.index, &i13 = d13.card.index;
    rows.push_back(exact_row(id, "symmetry", in, i12.str(), d21.card.index.str(), "0", i12 == d21.card.index));
    const bool identity = d11.card.index == 1 && (i12 != 1 || l1 == l2);
    rows.push_back(exact_row(id, "identity", in, d11.card.index.str(), "1", "0", identity));
    // Exact form of delta13 <= delta12 + delta23.
    const Integer rhs = i12 * i23;
    rows.push_back(exact_row(id, "triangle", in, i13.str(), rhs.str(), Integer(rhs - i13).str(), i13 <= rhs));
    const Rational lhs_det = d12.sum.covolume() * d12.intersection.covolume();
    const Rational rhs_det = l1.covolume() * l2.covolume();
    rows.push_back(exact_row(id, "det_identity", in, lhs_det.str(), rhs_det.str(), "0", lhs_det == rhs_det));
    const bool monotone = d12.sum.contains(l1) && d12.sum.contains(l2) && l1.contains(d12.intersection) &&
                          l2.contains(d12.intersection);
    rows.push_back(exact_row(id, "monotone", in, monotone ? "1" : "0", "1", "0", monotone));
    // quotient_card throws on any disagreement between its two oracles.
    rows.push_back(exact_row(id, "index_oracle", in, i12.str(), i12.str(), "0", true));
  } catch (const InvariantBreach& e) {
    rows.push_back({id, "index_oracle", in, e.what(), "", "", "", Verdict::fail});
  }
  return rows;
}

inline std::vector<Row> lemmas_sample(const CampaignConfig& cfg, std::size_t id, const Context& ctx) {
  sampling::Rng rng(cfg.seed, id);
  std::vector<Row> rows;
  // tilde-c lemma: rejection-sample its hypothesis.
  for (;;) {
    const double c = rng.uniform(2.0, 20.0);
    const double a = rng.log_uniform(1.0, 1e4);
    const double b = a + rng.uniform(-1.0, 1.0) * c * std::log(2.0 + a);
    const Real A(a), B(b), C(c);
    if (!constants::tilde_c_hypothesis(A, B, C)) continue;
    const CertifiedReal tc = constants::tilde_c(C, ctx);
    const Real lhs = abs(A - B), rhs = tc.lower() * log(2 + std::min(A, B));
    const std::string in = "a=" + io::compact(A) + " b=" + io::compact(B) + " c=" + io::compact(C);
    rows.push_back({id, "tilde_c", in, num(lhs), num(rhs), num(rhs - lhs), num(tc.err * 10),
                    lhs <= rhs ? Verdict::pass : Verdict::fail});
    break;
  }
  // (1 + 2c) lemma.
  for (;;) {
    const double c = rng.uniform(1e-3, 20.0);
    const double a = rng.log_uniform(1.0, 1e4);
    const double b = a + rng.uniform(-1.0, 1.0) * c * std::log(2.0 + a);
    const double d = rng.uniform(-a, a);
    const Real A(a), B(b), C(c), D(d);
    if (!constants::min_bound_hypothesis(A, B, C, D)) continue;
    const auto v = constants::min_bound_lemma_check(A, B, C, D);
    const std::string in =
        "a=" + io::compact(A) + " b=" + io::compact(B) + " c=" + io::compact(C) + " d=" + io::compact(D);
    rows.push_back({id, "min_bound", in, num(v.lhs), num(v.rhs), num(v.rhs - v.lhs), "0",
                    v.conclusion ? Verdict::pass : Verdict::fail});
    break;
  }
  return rows;
}

}  // namespace detail

/// All rows of one sample. Precision failures become indeterminate rows.
inline std::vector<Row> run_sample(const CampaignConfig& cfg, std::size_t id, const Context& ctx) {
  try {
    switch (cfg.suite) {
      case Suite::norm_bounds: return detail::norm_bounds_sample(cfg, id, ctx);
      case Suite::duplication: return detail::duplication_sample(cfg, id, ctx);
      case Suite::window:
      case Suite::matrix_lemma: return detail::curve_sample(cfg, id, ctx);
      case Suite::delta_metric: return detail::delta_sample(cfg, id);
      case Suite::lemmas: return detail::lemmas_sample(cfg, id, ctx);
    }
  } catch (const NumericalFailure& e) {
    std::string msg = e.what();
    for (auto& ch : msg)
      if (ch == ',' || ch == '"') ch = ' ';
    return {{id, "numerical_failure", msg, "", "", "", "", Verdict::indeterminate}};
  }
  return {};
}

inline Summary summarize(const std::vector<Row>& rows) {
  Summary s;
  std::optional<Real> best;
  for (const auto& r : rows) {
    if (r.verdict == Verdict::pass) ++s.pass;
    if (r.verdict == Verdict::fail) ++s.fail;
    if (r.verdict == Verdict::indeterminate) ++s.indeterminate;
    if (r.margin.empty()) continue;
    try {
      const Real m = parse_real(r.margin);
      if (!best || m < *best) {
        best = m;
        s.min_margin = r.margin;
      }
    } catch (const std::invalid_argument&) {
    }
  }
  return s;
}

inline CampaignReport run_campaign(const CampaignConfig& cfg) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  // The default precision is process-wide: fix it before any worker starts.
  PrecisionScope scope(cfg.prec);
  const Context ctx = Context::with_bits(cfg.prec);
  std::vector<std::vector<Row>> per_sample(cfg.samples);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t id = next.fetch_add(1);
      if (id >= cfg.samples) return;
      try {
        per_sample[id] = run_sample(cfg, id, ctx);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = cfg.samples;
        return;
      }
    }
  };
  const unsigned n = std::min<unsigned>(cfg.workers, static_cast<unsigned>(cfg.samples));
  if (n <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  CampaignReport rep;
  rep.config = cfg;
  for (auto& rows : per_sample)
    for (auto& r : rows) rep.rows.push_back(std::move(r));
  rep.summary = summarize(rep.rows);
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

/// Recomputes the sample a row came from and returns the matching row.
/// Inputs that differ from the recorded ones mean the row does not belong to
/// this configuration.
inline Row replay(const CampaignConfig& cfg, const Row& row) {
  cfg.validate();
  PrecisionScope scope(cfg.prec);
  const Context ctx = Context::with_bits(cfg.prec);
  for (auto& r : run_sample(cfg, row.sample_id, ctx)) {
    if (r.check != row.check) continue;
    if (r.inputs != row.inputs)
      throw ConfigMismatch("sample " + std::to_string(row.sample_id) + " check " + row.check +
                           ": recorded inputs do not match this configuration");
    return r;
  }
  throw ConfigMismatch("sample " + std::to_string(row.sample_id) + " has no check named " + row.check);
}

// ---------------------------------------------------------------------------
// Serialization

inline const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols = {"sample_id", "check",  "inputs", "lhs",
                                                "rhs",       "margin", "margin_err", "verdict"};
  return cols;
}

inline json row_to_json(const Row& r) {
  return {{"sample_id", r.sample_id}, {"check", r.check},   {"inputs", r.inputs},
          {"lhs", r.lhs},             {"rhs", r.rhs},       {"margin", r.margin},
          {"margin_err", r.margin_err}, {"verdict", std::string(to_string(r.verdict))}};
}

inline Row row_from_json(const json& j) {
  Row r;
  r.sample_id = j.at("sample_id").get<std::size_t>();
  r.check = j.at("check").get<std::string>();
  r.inputs = j.at("inputs").get<std::string>();
  r.lhs = j.at("lhs").get<std::string>();
  r.rhs = j.at("rhs").get<std::string>();
  r.margin = j.at("margin").get<std::string>();
  r.margin_err = j.value("margin_err", std::string());
  r.verdict = parse_verdict(j.at("verdict").get<std::string>());
  return r;
}

inline json summary_to_json(const Summary& s) {
  return {{"pass", s.pass}, {"fail", s.fail}, {"indeterminate", s.indeterminate}, {"min_margin", s.min_margin}};
}

inline json report_to_json(const CampaignReport& rep) {
  json rows = json::array();
  for (const auto& r : rep.rows) rows.push_back(row_to_json(r));
  return {{"config", rep.config.echo()}, {"summary", summary_to_json(rep.summary)}, {"rows", rows}};
}

inline void write_csv_rows(std::ostream& os, const std::vector<Row>& rows) {
  const auto& cols = csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << "\n";
  for (const auto& r : rows)
    os << r.sample_id << ',' << r.check << ',' << r.inputs << ',' << r.lhs << ',' << r.rhs << ',' << r.margin << ','
       << r.margin_err << ',' << to_string(r.verdict) << "\n";
}

/// CSV: one "# config " line with the JSON config echo, then header and rows.
inline void write_csv(std::ostream& os, const CampaignReport& rep) {
  os << "# config " << rep.config.echo().dump() << "\n";
  write_csv_rows(os, rep.rows);
}

struct ParsedReport {
  json config;
  std::vector<Row> rows;
};

inline ParsedReport parse_report(const std::string& text) {
  ParsedReport out;
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    const json j = json::parse(text);
    out.config = j.at("config");
    for (const auto& r : j.at("rows")) out.rows.push_back(row_from_json(r));
    return out;
  }
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.rfind("# config ", 0) == 0) {
      out.config = json::parse(line.substr(9));
      continue;
    }
    if (line.empty() || line.rfind("sample_id,", 0) == 0) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string item;
    while (std::getline(ss, item, ',')) f.push_back(item);
    while (f.size() < 8) f.emplace_back();
    Row r;
    r.sample_id = std::stoul(f[0]);
    r.check = f[1];
    r.inputs = f[2];
    r.lhs = f[3];
    r.rhs = f[4];
    r.margin = f[5];
    r.margin_err = f[6];
    r.verdict = parse_verdict(f[7]);
    out.rows.push_back(std::move(r));
  }
  if (out.config.is_null()) throw std::invalid_argument("report has no config line");
  return out;
}

/// Rebuilds a configuration from a report's config echo. The corpus of curve
/// suites is reloaded by the caller (it is identified by name only).
inline CampaignConfig config_from_json(const json& j) {
  CampaignConfig c;
  c.suite = parse_suite(j.at("suite").get<std::string>());
  c.samples = j.at("samples").get<std::size_t>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.prec = j.at("prec").get<unsigned>();
  c.g = j.value("g", 1);
  c.r = j.value("r", 2);
  c.steps = j.value("steps", 6);
  const std::string corpus = j.value("corpus", std::string());
  c.corpus_file = corpus == "builtin" ? std::string() : corpus;
  return c;
}

}  // namespace thetaheight::campaign
