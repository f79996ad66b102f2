// Command-line front end. Exit status: 0 when no check failed, 1 when some
// check failed, 2 on usage or input errors.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "thetaheight/campaign.hpp"
#include "thetaheight/constants.hpp"
#include "thetaheight/heights.hpp"
#include "thetaheight/io.hpp"
#include "thetaheight/lattices.hpp"
#include "thetaheight/siegel.hpp"
#include "thetaheight/theta.hpp"

namespace th = thetaheight;
using json = nlohmann::json;

namespace {

struct Globals {
  unsigned prec = 128;
  std::uint64_t seed = 0;
  std::string out;
  std::string format;  // empty: command default
};

struct Output {
  std::string text;
  std::size_t fails = 0;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Accepts inline JSON or @path.
json parse_json_arg(const std::string& s) {
  return json::parse(s.size() > 1 && s[0] == '@' ? read_file(s.substr(1)) : s);
}

std::string csv_escape(std::string s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string o = "\"";
  for (char c : s) o += c == '"' ? std::string("\"\"") : std::string(1, c);
  return o + "\"";
}

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
  } else if (j.is_string()) {
    out.emplace_back(prefix, j.get<std::string>());
  } else {
    out.emplace_back(prefix, j.dump());
  }
}

/// Single objects: JSON by default, key,value lines for --format csv.
std::string render_object(const json& j, const Globals& g) {
  if (g.format == "csv") {
    std::vector<std::pair<std::string, std::string>> kv;
    flatten(j, "", kv);
    std::string s = "key,value\n";
    for (const auto& [k, v] : kv) s += csv_escape(k) + "," + csv_escape(v) + "\n";
    return s;
  }
  return j.dump(2) + "\n";
}

json check_json(const th::theta::BoundCheck& c) {
  return {{"lhs", th::io::certified_to_json(c.lhs)},
          {"rhs", th::io::certified_to_json(c.rhs)},
          {"margin", th::io::certified_to_json(c.margin)},
          {"verdict", std::string(th::to_string(c.verdict))}};
}

json report_json(const th::siegel::FundamentalDomainReport& r) {
  return {{"s2", r.s2},
          {"s3_minkowski", r.s3_minkowski},
          {"s3_offdiagonal", r.s3_offdiagonal},
          {"s1_sampled", r.s1_sampled},
          {"s3_vectors_checked", r.s3_vectors_checked},
          {"s1_generators_checked", r.s1_generators_checked},
          {"all_sampled_checks_pass", r.all()},
          {"coverage", th::siegel::FundamentalDomainReport::coverage}};
}

// ---------------------------------------------------------------------------

Output cmd_siegel_reduce(const Globals& g, const std::string& tau_arg, const std::string& gen_file,
                         const std::string& method) {
  th::PrecisionScope scope(g.prec);
  const auto ctx = th::Context::with_bits(g.prec);
  const auto tau = th::io::siegel_from_json(parse_json_arg(tau_arg));
  std::vector<th::siegel::SymplecticMatrix> gens;
  if (gen_file.empty()) {
    gens = th::siegel::default_generators(tau.g());
  } else {
    for (const auto& e : json::parse(read_file(gen_file))) gens.push_back(th::io::symplectic_from_json(e));
  }
  const bool use_g1 = method == "g1" || (method == "auto" && tau.g() == 1 && gen_file.empty());
  th::siegel::ReductionResult res;
  json word = json::array();
  if (use_g1) {
    auto r = th::siegel::reduce_g1(tau, ctx);
    for (const auto& s : r.word)
      word.push_back(s.kind == th::siegel::G1Step::Kind::invert ? std::string("S") : "T^" + s.shift.str());
    res = r;
  } else {
    res = th::siegel::reduce_heuristic(tau, gens, ctx);
  }
  json hist = json::array();
  for (const auto& d : res.certificate.det_history) hist.push_back(th::to_decimal(d));
  json j = {{"input", th::io::siegel_to_json(tau)},
            {"reduced", th::io::siegel_to_json(res.reduced)},
            {"gamma", th::io::symplectic_to_json(res.gamma)},
            {"method", use_g1 ? "g1" : "heuristic"},
            {"certificate",
             {{"report", report_json(res.certificate.report)},
              {"det_history", hist},
              {"iterations", res.certificate.iterations},
              {"converged", res.certificate.converged}}}};
  if (use_g1) j["word"] = word;
  return {render_object(j, g), 0};
}

Output cmd_theta_eval(const Globals& g, const std::string& tau_arg, const std::string& z_arg,
                      const std::string& char_arg, bool reduce_first) {
  th::PrecisionScope scope(g.prec);
  const auto ctx = th::Context::with_bits(g.prec);
  auto tau = th::io::siegel_from_json(parse_json_arg(tau_arg));
  auto z = z_arg.empty() ? th::theta::zero_vector(tau.g()) : th::io::complex_vector_from_json(parse_json_arg(z_arg));
  auto ch = char_arg.empty() ? th::theta::ThetaCharacteristic::zero(tau.g()) : th::theta::parse_characteristic(char_arg);
  json j;
  if (reduce_first) {
    // z maps to ((lambda tau + mu)^T)^-1 z; only the plain theta norm is
    // invariant, so characteristics other than zero are refused here.
    if (ch.a != std::vector<int>(tau.g(), 0) || ch.b != std::vector<int>(tau.g(), 0))
      throw std::invalid_argument("--reduce-first supports the zero characteristic only");
    const auto red = tau.g() == 1 ? static_cast<th::siegel::ReductionResult>(th::siegel::reduce_g1(tau, ctx))
                                  : th::siegel::reduce_heuristic(tau, th::siegel::default_generators(tau.g()), ctx);
    const auto m = th::make_complex(th::to_real(red.gamma.lambda), th::RealMatrix(tau.g(), tau.g())) * tau.complex() +
                   th::make_complex(th::to_real(red.gamma.mu), th::RealMatrix(tau.g(), tau.g()));
    const auto minv_t = th::inverse(m).transpose();
    z = minv_t * z;
    tau = red.reduced;
    j["reduced_tau"] = th::io::siegel_to_json(tau);
    j["mapped_z"] = th::io::complex_vector_to_json(z);
    j["gamma"] = th::io::symplectic_to_json(red.gamma);
    j["theta_norm"] = th::io::certified_to_json(th::theta::theta_norm(tau, z, ctx));
  }
  const auto v = th::theta::theta(tau, z, ch, ctx);
  j["characteristic"] = ch.str();
  j["theta"] = th::io::certified_to_json(v);
  if (!reduce_first && ch.a == std::vector<int>(tau.g(), 0) && ch.b == std::vector<int>(tau.g(), 0))
    j["theta_norm"] = th::io::certified_to_json(th::theta::theta_norm(tau, z, ctx));
  if (!reduce_first && z == th::theta::zero_vector(tau.g()))
    j["theta_norm_char"] = th::io::certified_to_json(th::theta::theta_norm_char(tau, ch, ctx));
  return {render_object(j, g), 0};
}

Output render_campaign(const th::campaign::CampaignReport& rep, const Globals& g) {
  std::ostringstream os;
  if (g.format == "json") {
    os << th::campaign::report_to_json(rep).dump(2) << "\n";
  } else {
    th::campaign::write_csv(os, rep);
  }
  std::cerr << rep.rows.size() << " rows: " << rep.summary.pass << " pass, " << rep.summary.fail << " fail, "
            << rep.summary.indeterminate << " indeterminate; min margin " << rep.summary.min_margin << "; "
            << rep.wall_seconds << " s\n";
  return {os.str(), rep.summary.fail};
}

th::campaign::CampaignConfig base_config(const Globals& g, unsigned workers) {
  th::campaign::CampaignConfig c;
  c.seed = g.seed;
  c.prec = g.prec;
  c.workers = workers ? workers : std::max(1u, std::thread::hardware_concurrency());
  return c;
}

std::vector<th::heights::EllipticCurveQ> load_corpus(const std::string& file, unsigned prec) {
  th::PrecisionScope scope(prec);
  if (file.empty()) return th::heights::builtin_corpus();
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open " + file);
  return th::heights::parse_corpus(in);
}

Output cmd_constants_table(const Globals& g, int gg, int r, std::optional<int> d, std::optional<std::string> c1,
                           std::optional<std::string> c2) {
  th::PrecisionScope scope(g.prec);
  const auto ctx = th::Context::with_bits(g.prec);
  std::optional<th::constants::BreveInputs> breve;
  if (d || c1 || c2) {
    if (!(d && c1 && c2)) throw std::invalid_argument("--d, --c1 and --c2 go together");
    breve = th::constants::BreveInputs{*d, th::parse_real(*c1), th::parse_real(*c2)};
  }
  const auto t = th::constants::constants_table(gg, r, breve, ctx);
  const std::size_t fails = (t.window_ordered ? 0 : 1) + (t.easier_dominate ? 0 : 1);
  if (g.format == "csv") {
    std::string s = "name,value,err,log_value,formula\n";
    for (const auto& e : t.entries)
      s += e.name + "," + (e.log_value && e.value.value == 0 ? std::string() : th::to_decimal(e.value.value, 30)) +
           "," + th::to_decimal(e.value.err, 6) + "," + (e.log_value ? th::to_decimal(*e.log_value, 30) : "") + "," +
           csv_escape(e.formula) + "\n";
    s += "window_ordered," + std::string(t.window_ordered ? "1" : "0") + ",,,M(r;g) > m(r;g)\n";
    s += "easier_dominate," + std::string(t.easier_dominate ? "1" : "0") + ",,,easier constants >= precise ones\n";
    return {s, fails};
  }
  json entries = json::array();
  for (const auto& e : t.entries) {
    json x = {{"name", e.name}, {"formula", e.formula}};
    if (e.log_value) {
      x["log_value"] = th::to_decimal(*e.log_value);
      if (e.value.value != 0) x["value"] = th::to_decimal(e.value.value);
    } else {
      x["value"] = th::to_decimal(e.value.value);
      x["err"] = th::to_decimal(e.value.err, 6);
    }
    entries.push_back(x);
  }
  json j = {{"g", gg}, {"r", r}, {"entries", entries}, {"window_ordered", t.window_ordered},
            {"easier_dominate", t.easier_dominate}};
  return {render_object(j, g), fails};
}

json height_report_json(const th::heights::HeightReport& rep) {
  return {{"curve", rep.curve.label.empty() ? rep.curve.coefficients() : rep.curve.label},
          {"coefficients", rep.curve.coefficients()},
          {"two_torsion_x", {rep.curve.e[0].str(), rep.curve.e[1].str(), rep.curve.e[2].str()}},
          {"omega1", th::io::certified_to_json(rep.periods.omega1)},
          {"omega2_im", th::io::certified_to_json(rep.periods.omega2_im)},
          {"covolume", th::io::certified_to_json(rep.periods.covolume)},
          {"tau_reduced", th::io::siegel_to_json(rep.tau_reduced)},
          {"reduction_report", report_json(rep.thetas.reduction.certificate.report)},
          {"lambda", rep.h_theta.lambda.lambda.str()},
          {"h_theta", th::io::certified_to_json(rep.h_theta.value)},
          {"h_theta_finite", th::io::certified_to_json(rep.h_theta.finite)},
          {"h_theta_archimedean", th::io::certified_to_json(rep.h_theta.archimedean)},
          {"h_faltings", th::io::certified_to_json(rep.h_faltings.value)},
          {"h_faltings_kind", rep.h_faltings.stable ? "stable" : "relative, not stable"},
          {"window_value", th::io::certified_to_json(rep.window_value)},
          {"checks",
           {{"window_lower", check_json(rep.window_lower)},
            {"window_upper", check_json(rep.window_upper)},
            {"bost", check_json(rep.bost)},
            {"hf_lower", check_json(rep.hf_lower)},
            {"matrix_lemma", check_json(rep.matrix_lemma)},
            {"point_zero", check_json(rep.point_zero)},
            {"jacobi", std::string(th::to_string(rep.h_theta.jacobi))}}},
          {"verdict", std::string(th::to_string(rep.overall()))}};
}

Output cmd_heights_verify(const Globals& g, const std::string& curve, bool minimal, bool semistable,
                          bool allow_unclaimed) {
  th::PrecisionScope scope(g.prec);
  const auto ctx = th::Context::with_bits(g.prec);
  const auto c = th::heights::make_curve(th::heights::parse_coefficients(curve), {minimal, semistable});
  const auto rep = th::heights::window_check(c, ctx, allow_unclaimed);
  return {render_object(height_report_json(rep), g), rep.overall() == th::Verdict::fail ? 1u : 0u};
}

Output cmd_heights_corpus(const Globals& g, const std::string& file) {
  const auto corpus = load_corpus(file, g.prec);
  th::PrecisionScope scope(g.prec);
  const auto ctx = th::Context::with_bits(g.prec);
  std::size_t fails = 0;
  json all = json::array();
  std::ostringstream os;
  os << "curve,coefficients,h_theta,h_theta_err,h_faltings,h_faltings_err,tau,lambda,window_value,window_err,"
        "window_margin_lower,window_margin_upper,window_lower,window_upper,bost,hf_lower,matrix_lemma,point_zero,"
        "jacobi,verdict\n";
  for (const auto& c : corpus) {
    const auto rep = th::heights::window_check(c, ctx);
    if (rep.overall() == th::Verdict::fail) ++fails;
    if (g.format == "json") {
      all.push_back(height_report_json(rep));
      continue;
    }
    std::string coeffs = c.coefficients();
    for (auto& ch : coeffs)
      if (ch == ',') ch = ' ';
    auto v = [](const th::Real& x) { return th::to_decimal(x, 20); };
    auto s = [](const th::theta::BoundCheck& b) { return std::string(th::to_string(b.verdict)); };
    os << csv_escape(c.label) << "," << coeffs << "," << v(rep.h_theta.value.value) << ","
       << th::to_decimal(rep.h_theta.value.err, 3) << "," << v(rep.h_faltings.value.value) << ","
       << th::to_decimal(rep.h_faltings.value.err, 3) << "," << th::io::compact(rep.tau_reduced) << ","
       << rep.h_theta.lambda.lambda.str() << "," << v(rep.window_value.value) << ","
       << th::to_decimal(rep.window_value.err, 3) << "," << v(rep.window_lower.margin.value) << ","
       << v(rep.window_upper.margin.value) << "," << s(rep.window_lower) << "," << s(rep.window_upper) << ","
       << s(rep.bost) << "," << s(rep.hf_lower) << "," << s(rep.matrix_lemma) << "," << s(rep.point_zero) << ","
       << th::to_string(rep.h_theta.jacobi) << "," << th::to_string(rep.overall()) << "\n";
  }
  if (g.format == "json") return {all.dump(2) + "\n", fails};
  return {os.str(), fails};
}

Output cmd_lattice_delta(const Globals& g, const std::string& b1, const std::string& b2) {
  th::PrecisionScope scope(g.prec);
  using namespace th::lattices;
  const IntegerLattice l1(th::io::rational_matrix_from_json(parse_json_arg(b1)));
  const IntegerLattice l2(th::io::rational_matrix_from_json(parse_json_arg(b2)));
  const auto d = delta(l1, l2);
  json divs = json::array();
  for (const auto& x : d.card.divisors) divs.push_back(x.str());
  json j = {{"delta", th::to_decimal(d.delta)},
            {"index", d.card.index.str()},
            {"elementary_divisors", divs},
            {"sum_hnf", th::io::lattice_to_json(d.sum)},
            {"intersection_hnf", th::io::lattice_to_json(d.intersection)},
            {"lattice1_hnf", th::io::lattice_to_json(l1)},
            {"lattice2_hnf", th::io::lattice_to_json(l2)}};
  return {render_object(j, g), 0};
}

Output cmd_replay(const Globals& g, const std::string& report_file, std::optional<std::size_t> sample_id,
                  std::optional<unsigned> prec_override, const std::string& corpus_file) {
  const auto parsed = th::campaign::parse_report(read_file(report_file));
  auto cfg = th::campaign::config_from_json(parsed.config);
  if (prec_override) cfg.prec = *prec_override;
  if (cfg.suite == th::campaign::Suite::window || cfg.suite == th::campaign::Suite::matrix_lemma)
    cfg.corpus = load_corpus(corpus_file.empty() ? cfg.corpus_file : corpus_file, cfg.prec);
  std::vector<th::campaign::Row> replayed;
  std::size_t mismatches = 0;
  for (const auto& row : parsed.rows) {
    if (sample_id && row.sample_id != *sample_id) continue;
    auto r = th::campaign::replay(cfg, row);
    const bool same_prec = !prec_override || *prec_override == th::campaign::config_from_json(parsed.config).prec;
    const bool ok = same_prec ? r == row
                              : (row.verdict == th::Verdict::indeterminate || r.verdict == row.verdict);
    if (!ok) {
      ++mismatches;
      std::cerr << "replay differs: sample " << row.sample_id << " check " << row.check << " recorded "
                << th::to_string(row.verdict) << " got " << th::to_string(r.verdict) << "\n";
    }
    replayed.push_back(std::move(r));
  }
  if (replayed.empty()) throw std::invalid_argument("no rows selected for replay");
  std::ostringstream os;
  if (g.format == "json") {
    json rows = json::array();
    for (const auto& r : replayed) rows.push_back(th::campaign::row_to_json(r));
    os << rows.dump(2) << "\n";
  } else {
    th::campaign::write_csv_rows(os, replayed);
  }
  std::size_t fails = mismatches;
  for (const auto& r : replayed)
    if (r.verdict == th::Verdict::fail) ++fails;
  return {os.str(), fails};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Theta and Faltings heights: certified theta values, Siegel reduction, explicit constants, "
               "genus-one height checks and lattice distances"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--prec", g.prec, "working precision in bits")->check(CLI::Range(64u, 1u << 16));
  app.add_option("--seed", g.seed, "campaign seed");
  app.add_option("--out", g.out, "write output to this file instead of stdout");
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"csv", "json"}));

  std::function<Output()> run;

  // siegel
  auto* siegel = app.add_subcommand("siegel", "Siegel upper half space");
  siegel->require_subcommand(1);
  auto* reduce = siegel->add_subcommand("reduce", "reduce tau toward the fundamental domain");
  std::string tau_arg, gen_file, method = "auto";
  reduce->add_option("--tau", tau_arg, "tau as JSON (or @file)")->required();
  reduce->add_option("--generators", gen_file, "JSON file with symplectic generators");
  reduce->add_option("--method", method, "g1, heuristic or auto")->check(CLI::IsMember({"auto", "g1", "heuristic"}));
  reduce->callback([&] { run = [&] { return cmd_siegel_reduce(g, tau_arg, gen_file, method); }; });

  // theta
  auto* theta = app.add_subcommand("theta", "Riemann theta functions");
  theta->require_subcommand(1);
  auto* eval = theta->add_subcommand("eval", "certified theta value");
  std::string z_arg, char_arg;
  bool reduce_first = false;
  eval->add_option("--tau", tau_arg, "tau as JSON (or @file)")->required();
  eval->add_option("--z", z_arg, "z as JSON array of [re, im] (default 0)");
  eval->add_option("--char", char_arg, "characteristic m1_1,...,m1_g,m2_1,...,m2_g as p/q (default 0)");
  eval->add_flag("--reduce-first", reduce_first, "reduce tau first and map z along");
  eval->callback([&] { run = [&] { return cmd_theta_eval(g, tau_arg, z_arg, char_arg, reduce_first); }; });

  auto* vb = theta->add_subcommand("verify-bounds", "random check of the two-sided theta norm bounds");
  int vb_g = 1, vb_r = 2;
  std::size_t vb_samples = 100;
  unsigned workers = 0;
  vb->add_option("--g", vb_g, "genus")->check(CLI::Range(1, 4));
  vb->add_option("--r", vb_r, "even level");
  vb->add_option("--samples", vb_samples, "number of random tau");
  vb->add_option("--workers", workers, "worker threads (default: all cores)");
  vb->callback([&] {
    run = [&] {
      auto c = base_config(g, workers);
      c.suite = th::campaign::Suite::norm_bounds;
      c.g = vb_g;
      c.r = vb_r;
      c.samples = vb_samples;
      return render_campaign(th::campaign::run_campaign(c), g);
    };
  });

  // constants
  auto* consts = app.add_subcommand("constants", "explicit constants");
  consts->require_subcommand(1);
  auto* table = consts->add_subcommand("table", "table of all constants for (g, r)");
  int cg = 1, cr = 2;
  std::optional<int> cd;
  std::optional<std::string> c1, c2;
  table->add_option("--g", cg, "genus")->check(CLI::Range(1, 64));
  table->add_option("--r", cr, "even level");
  table->add_option("--d", cd, "degree for the point-count constant");
  table->add_option("--c1", c1, "conjectural constant c1 > 0");
  table->add_option("--c2", c2, "conjectural constant c2 > 0");
  table->callback([&] { run = [&] { return cmd_constants_table(g, cg, cr, cd, c1, c2); }; });

  // heights
  auto* hts = app.add_subcommand("heights", "genus-one theta and Faltings heights");
  hts->require_subcommand(1);
  auto* verify = hts->add_subcommand("verify", "all height checks for one curve");
  std::string curve;
  bool minimal = false, semistable = false, allow = false;
  verify->add_option("--curve", curve, "a1,a2,a3,a4,a6 (integers or p/q)")->required();
  verify->add_flag("--minimal", minimal, "assert the model is minimal");
  verify->add_flag("--semistable", semistable, "assert the curve is semistable");
  verify->add_flag("--allow-unclaimed", allow, "compute a relative Faltings height without the claims");
  verify->callback([&] { run = [&] { return cmd_heights_verify(g, curve, minimal, semistable, allow); }; });
  auto* corpus = hts->add_subcommand("corpus", "height checks over a curve file");
  std::string corpus_file;
  corpus->add_option("--file", corpus_file, "curve CSV (default: built-in corpus)");
  corpus->callback([&] { run = [&] { return cmd_heights_corpus(g, corpus_file); }; });

  // lattice
  auto* lat = app.add_subcommand("lattice", "lattice distance");
  lat->require_subcommand(1);
  auto* del = lat->add_subcommand("delta", "delta(L1, L2) = log #((L1 + L2) / (L1 n L2))");
  std::string basis1, basis2;
  del->add_option("--basis1", basis1, "basis columns as JSON rational matrix (or @file)")->required();
  del->add_option("--basis2", basis2, "basis columns as JSON rational matrix (or @file)")->required();
  del->callback([&] { run = [&] { return cmd_lattice_delta(g, basis1, basis2); }; });

  // campaign
  auto* camp = app.add_subcommand("campaign", "seeded verification campaign");
  std::string suite = "norm-bounds";
  std::size_t samples = 0;
  int kg = 1, kr = 2, steps = 6;
  camp->add_option("--suite", suite, "norm-bounds, duplication, window, matrix-lemma, delta-metric or lemmas");
  camp->add_option("--samples", samples, "number of samples (curve suites default to the corpus size)");
  camp->add_option("--g", kg, "genus")->check(CLI::Range(1, 4));
  camp->add_option("--r", kr, "even level");
  camp->add_option("--steps", steps, "duplication steps");
  camp->add_option("--workers", workers, "worker threads (default: all cores)");
  camp->add_option("--corpus", corpus_file, "curve CSV for curve suites (default: built-in corpus)");
  auto* rep = camp->add_subcommand("replay", "recompute rows of a saved report");
  std::string report_file;
  std::optional<std::size_t> sample_id;
  std::optional<unsigned> replay_prec;
  rep->add_option("--report", report_file, "report written by campaign (csv or json)")->required();
  rep->add_option("--sample-id", sample_id, "only this sample");
  rep->add_option("--replay-prec", replay_prec, "recompute at another precision (verdicts are compared)");
  rep->add_option("--corpus", corpus_file, "curve CSV, if the report used one");
  rep->callback([&] { run = [&] { return cmd_replay(g, report_file, sample_id, replay_prec, corpus_file); }; });
  camp->callback([&] {
    if (run) return;  // replay
    run = [&] {
      auto c = base_config(g, workers);
      c.suite = th::campaign::parse_suite(suite);
      c.g = kg;
      c.r = kr;
      c.steps = steps;
      if (c.suite == th::campaign::Suite::window || c.suite == th::campaign::Suite::matrix_lemma) {
        c.corpus_file = corpus_file;
        c.corpus = load_corpus(corpus_file, g.prec);
        c.samples = samples ? samples : c.corpus.size();
      } else {
        c.samples = samples ? samples : 100;
      }
      return render_campaign(th::campaign::run_campaign(c), g);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  try {
    const Output o = run();
    if (g.out.empty()) {
      std::cout << o.text;
    } else {
      std::ofstream f(g.out);
      if (!f) throw std::runtime_error("cannot write " + g.out);
      f << o.text;
    }
    return o.fails == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
