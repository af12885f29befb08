#include "semsec/cli/commands.hpp"

#include <cmath>
#include <cstdlib>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "semsec/cli/svg.hpp"
#include "semsec/discrete/blahut_arimoto.hpp"
#include "semsec/discrete/theorems.hpp"
#include "semsec/errors.hpp"
#include "semsec/inner_bound.hpp"
#include "semsec/mc/mc_validate.hpp"
#include "semsec/outer_bound.hpp"

namespace semsec::cli {

namespace {

using nlohmann::json;

std::string csv_num(double v) {
  if (std::isnan(v)) return "NaN";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  // Shortest representation that parses back to the same double.
  return fmt::format("{}", v);
}

std::string csv_document(std::string_view command, const Config& cfg, const std::string& header,
                         const std::vector<std::vector<double>>& rows) {
  std::string out = fmt::format("# semsec {}\n# schema = {}\n", command, kCsvSchemaVersion);
  for (const auto& [k, v] : cfg.resolved()) out += fmt::format("# {} = {}\n", k, v);
  out += header + "\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) out += ',';
      out += csv_num(r[i]);
    }
    out += '\n';
  }
  return out;
}

json json_document(std::string_view command, const Config& cfg, json results, json diagnostics) {
  json config = json::object();
  for (const auto& [k, v] : cfg.resolved()) config[k] = v;
  json doc;
  doc["command"] = command;
  doc["schema"] = kJsonSchemaVersion;
  doc["config"] = std::move(config);
  doc["results"] = std::move(results);
  doc["diagnostics"] = std::move(diagnostics);
  return doc;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

double info(double nats, LogBase b) { return to_base(nats, b); }

Equivocations targets_for(const Config& cfg, const GaussianSource& src) {
  return secrecy_targets(parse_secrecy_mode(cfg.get_string("run.mode", "full_semantic")), src);
}

std::string source_kind(const Config& cfg) {
  const bool discrete = cfg.has("source.pmf");
  const bool gaussian = cfg.has("source.var_s") || cfg.has("source.var_u") || cfg.has("source.cov_su");
  if (discrete && gaussian) throw ConfigError("give either a Gaussian source or source.pmf, not both");
  return discrete ? "discrete" : "gaussian";
}

std::string channel_kind(const Config& cfg) {
  const bool discrete = cfg.has("channel.dmc_y") || cfg.has("channel.dmc_z_given_y");
  const bool gaussian =
      cfg.has("channel.power") || cfg.has("channel.noise_main") || cfg.has("channel.noise_eve");
  if (discrete && gaussian) throw ConfigError("give either a Gaussian channel or DMC files, not both");
  return discrete ? "discrete" : "gaussian";
}

InnerSearchOptions search_options(const Config& cfg) {
  InnerSearchOptions o;
  o.multistarts = cfg.get_int("inner.multistarts", o.multistarts);
  o.max_evals = cfg.get_int("inner.max_evals", o.max_evals);
  o.penalty = cfg.get_double("inner.penalty", o.penalty);
  o.seed = cfg.get_u64("run.seed", default_seed());
  if (o.multistarts < 1) throw ConfigError("inner.multistarts must be >= 1");
  if (o.max_evals < 1) throw ConfigError("inner.max_evals must be >= 1");
  return o;
}

Heatmap trace_heatmap(const std::vector<double>& R, const std::vector<double>& D_u,
                      std::vector<double> z, std::string title) {
  Heatmap h;
  h.title = std::move(title);
  h.x_label = "R (channel uses per source symbol)";
  h.y_label = "D_u";
  h.z_label = "D_s";
  h.x = R;
  h.y = D_u;
  h.z = std::move(z);
  return h;
}

}  // namespace

std::uint64_t default_seed() {
  if (const char* env = std::getenv("SEMSEC_SEED"); env && *env) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*end != '\0') throw ConfigError(fmt::format("SEMSEC_SEED='{}' is not an integer", env));
    return v;
  }
  return 1;
}

LogBase log_base(const Config& cfg) { return parse_log_base(cfg.get_string("run.log_base", "bits")); }

GaussianSource gaussian_source(const Config& cfg) {
  GaussianSource s{cfg.get_double("source.var_s", 0.7), cfg.get_double("source.var_u", 1.0),
                   cfg.get_double("source.cov_su", 0.5)};
  s.validate();
  return s;
}

GaussianWiretapChannel gaussian_channel(const Config& cfg) {
  GaussianWiretapChannel c{cfg.get_double("channel.power", 1.0), cfg.get_double("channel.noise_main", 0.10),
                           cfg.get_double("channel.noise_eve", 0.15)};
  c.validate();
  return c;
}

discrete::DMC parse_channel(const std::string& text) {
  if (text.rfind("bsc:", 0) == 0) {
    const double eps = parse_double(text.substr(4), "bsc crossover");
    if (!(eps >= 0.0 && eps <= 1.0)) throw ConfigError("bsc crossover must lie in [0, 1]");
    return discrete::DMC::bsc(eps);
  }
  if (text.rfind("identity:", 0) == 0) {
    const double n = parse_double(text.substr(9), "identity size");
    if (!(n >= 1.0) || n != std::floor(n)) throw ConfigError("identity size must be a positive integer");
    return discrete::DMC::identity(static_cast<std::size_t>(n));
  }
  return discrete::load_dmc(text);
}

discrete::DistortionMatrix parse_distortion(const std::string& text, std::size_t letters) {
  if (text == "hamming") return discrete::DistortionMatrix::hamming(letters);
  return discrete::load_distortion(text);
}

Output cmd_outer_trace(const Config& cfg, bool want_svg) {
  const LogBase base = log_base(cfg);
  const auto src = gaussian_source(cfg);
  const auto ch = gaussian_channel(cfg);
  const double R_k = from_base(cfg.get_double("run.R_k", 0.0), base);
  const Equivocations targets = targets_for(cfg, src);
  OuterGrid grid;
  grid.R = cfg.get_grid("grid.R", "lin:0.5:10:20");
  grid.D_u = cfg.get_grid("grid.D_u", "lin:0.05:1:20");
  grid.D_s = {cfg.get_double("grid.D_s_max", src.var_s)};
  validate_grid(grid);

  const auto rows = trace_outer(src, ch, R_k, grid, targets);
  std::vector<std::vector<double>> table;
  std::vector<double> z;
  bool any = false;
  for (const auto& r : rows) {
    table.push_back({r.R, r.D_u, r.D_s, info(r.delta_max.s, base), info(r.delta_max.u, base),
                     info(r.delta_max.su, base)});
    z.push_back(r.D_s);
    any = any || !std::isnan(r.D_s);
  }
  Output out;
  out.text = csv_document("outer-trace", cfg, "R,D_u,D_s_boundary,delta_s_max,delta_u_max,delta_su_max", table);
  if (want_svg) out.svg = render_svg(trace_heatmap(grid.R, grid.D_u, z, "Outer bound: boundary D_s"));
  out.status = any ? kOk : kInfeasible;
  return out;
}

Output cmd_inner_trace(const Config& cfg, bool want_svg) {
  const LogBase base = log_base(cfg);
  const auto src = gaussian_source(cfg);
  const auto ch = gaussian_channel(cfg);
  const Equivocations targets = targets_for(cfg, src);
  const auto R = cfg.get_grid("grid.R", "lin:0.5:10:20");
  const auto D_u = cfg.get_grid("grid.D_u", "lin:0.05:1:20");
  validate_axis(R, "grid.R");
  validate_axis(D_u, "grid.D_u");
  const auto opts = search_options(cfg);

  const auto rows = trace_inner(src, ch, R, D_u, targets, opts);
  std::vector<std::vector<double>> table;
  std::vector<double> z;
  bool any = false;
  for (const auto& r : rows) {
    const auto& p = r.params;
    const double nan = std::nan("");
    auto v = [&](double x) { return r.attained ? x : nan; };
    table.push_back({r.R, r.D_u, r.D_s, v(info(r.delta.s, base)), v(info(r.delta.u, base)),
                     v(info(r.delta.su, base)), v(p.alpha1), v(p.alpha2), v(p.var_ap), v(p.var_bp),
                     v(p.pow_qc), v(p.pow_qp), v(p.pow_wc), v(p.pow_x)});
    z.push_back(r.D_s);
    any = any || r.attained;
  }
  Output out;
  out.text = csv_document(
      "inner-trace", cfg,
      "R,D_u,D_s,delta_s,delta_u,delta_su,alpha1,alpha2,var_ap,var_bp,pow_qc,pow_qp,pow_wc,pow_x", table);
  if (want_svg) out.svg = render_svg(trace_heatmap(R, D_u, z, "Achievable: smallest D_s"));
  out.status = any ? kOk : kInfeasible;
  return out;
}

Output cmd_point_check(const Config& cfg) {
  const LogBase base = log_base(cfg);
  const std::string sk = source_kind(cfg), ck = channel_kind(cfg);
  if (sk != ck) throw ConfigError("point-check: " + sk + " source cannot be combined with a " + ck + " channel");
  RegionPoint pt;
  pt.R = cfg.get_double("point.R", 1.0);
  pt.R_k = from_base(cfg.get_double("point.R_k", 0.0), base);
  pt.D_s = cfg.get_double("point.D_s", 0.6);
  pt.D_u = cfg.get_double("point.D_u", 0.5);
  pt.delta_s = from_base(cfg.get_double("point.delta_s", 0.0), base);
  pt.delta_u = from_base(cfg.get_double("point.delta_u", 0.0), base);
  pt.delta_su = from_base(cfg.get_double("point.delta_su", 0.0), base);
  pt.validate();
  const double tol = cfg.get_double("run.tolerance", kDefaultTolerance);

  FeasibilityReport rep;
  json diag = json::object();
  if (sk == "gaussian") {
    const auto src = gaussian_source(cfg);
    const auto ch = gaussian_channel(cfg);
    rep = outer_feasible(pt, src, ch, tol);
    diag["eta"] = eta(src);
    diag["capacity_main"] = info(capacity_main(ch), base);
    diag["secrecy_capacity"] = info(secrecy_capacity(ch), base);
    diag["h_S"] = info(entropy_s(src), base);
    diag["h_U"] = info(entropy_u(src), base);
    diag["h_SU"] = info(entropy_su(src), base);
  } else {
    const auto p_su = discrete::load_pmf(cfg.require("source.pmf"));
    if (p_su.rank() != 2) throw ConfigError("source.pmf must have two axes (S, U)");
    const auto d_s = parse_distortion(cfg.get_string("source.d_s", "hamming"), p_su.dims()[0]);
    const auto d_u = parse_distortion(cfg.get_string("source.d_u", "hamming"), p_su.dims()[1]);
    const auto dmc_y = parse_channel(cfg.require("channel.dmc_y"));
    const auto dmc_z = parse_channel(cfg.require("channel.dmc_z_given_y"));
    const auto t = discrete::converse_terms(p_su, d_s, d_u, pt.D_s, pt.D_u, dmc_y, dmc_z);
    rep = discrete::converse_slacks(pt, t, tol);
    diag["R_u"] = info(t.R_u, base);
    diag["R_s"] = info(t.R_s, base);
    diag["R_joint"] = info(t.R_joint, base);
    diag["capacity_main"] = info(t.capacity, base);
    diag["secrecy_capacity"] = info(t.secrecy, base);
    diag["H_S"] = info(t.H_S, base);
    diag["H_U"] = info(t.H_U, base);
    diag["H_SU"] = info(t.H_SU, base);
  }
  json slacks = json::array();
  for (const auto& s : rep.slacks) {
    const double v = s.name == outer_slack::kDsFloor ? s.value : info(s.value, base);
    slacks.push_back({{"name", s.name}, {"value", v}, {"holds", s.value >= -rep.tolerance}});
  }
  json results = {{"model", sk}, {"feasible", rep.feasible}, {"slacks", std::move(slacks)}};
  Output out;
  out.text = dump(json_document("point-check", cfg, std::move(results), std::move(diag)));
  out.status = rep.feasible ? kOk : kInfeasible;
  return out;
}

Output cmd_ba(const Config& cfg) {
  const LogBase base = log_base(cfg);
  if (source_kind(cfg) != "discrete") throw ConfigError("ba needs a discrete source (source.pmf)");
  const std::string solver = cfg.get_string("ba.solver", "classic");
  const auto pmf = discrete::load_pmf(cfg.require("source.pmf"));
  discrete::BAResult r;
  json diag = json::object();
  if (solver == "classic") {
    // A one-axis PMF is the observation itself; a two-axis PMF contributes its U marginal.
    const auto p_u = pmf.rank() == 1 ? pmf : pmf.marginal({1});
    const auto d_u = parse_distortion(cfg.get_string("source.d_u", "hamming"), p_u.dims()[0]);
    r = discrete::ba_rdf_classic(p_u.probs(), d_u, cfg.get_double("ba.D_u", 0.1));
  } else {
    if (pmf.rank() != 2) throw ConfigError("source.pmf must have two axes (S, U)");
    const auto d_s = parse_distortion(cfg.get_string("source.d_s", "hamming"), pmf.dims()[0]);
    const double D_s = cfg.get_double("ba.D_s", 0.1);
    if (solver == "indirect") {
      r = discrete::ba_rdf_indirect(pmf, d_s, D_s);
    } else {
      const auto d_u = parse_distortion(cfg.get_string("source.d_u", "hamming"), pmf.dims()[1]);
      const double D_u = cfg.get_double("ba.D_u", 0.1);
      if (solver == "bivariate") r = discrete::ba_rdf_bivariate(pmf, d_s, d_u, D_s, D_u);
      else if (solver == "semantic") r = discrete::ba_rdf_semantic(pmf, d_s, d_u, D_s, D_u);
      else throw ConfigError("unknown ba.solver '" + solver + "' (classic, bivariate, semantic, indirect)");
    }
    const auto excluded = discrete::modified_distortion(pmf, d_s).excluded;
    if (!excluded.empty()) diag["excluded_u_letters"] = excluded;
  }
  diag["monotone"] = r.monotone;
  diag["output_marginal"] = r.output_marginal;
  json results = {{"solver", solver},         {"rate", info(r.rate, base)},
                  {"distortions", r.distortions}, {"multipliers", r.multipliers},
                  {"iterations", r.iterations},   {"converged", r.converged}};
  Output out;
  out.text = dump(json_document("ba", cfg, std::move(results), std::move(diag)));
  out.status = r.converged ? kOk : kSolverError;
  return out;
}

Output cmd_mc_validate(const Config& cfg) {
  const LogBase base = log_base(cfg);
  const auto src = gaussian_source(cfg);
  const auto ch = gaussian_channel(cfg);
  const double a1 = cfg.get_double("inner.alpha1", 1.0);
  const double a2 = cfg.get_double("inner.alpha2", 1.0);
  const double var_ap = cfg.get_double("inner.var_ap", 0.7);
  const double var_bp = cfg.get_double("inner.var_bp", 0.45);
  InnerParams p;
  if (cfg.get_string("inner.split", "equal") == "equal") {
    p = InnerParams::equal_split(ch, a1, a2, var_ap, var_bp);
  } else if (cfg.get_string("inner.split", "equal") == "explicit") {
    p.alpha1 = a1;
    p.alpha2 = a2;
    p.var_ap = var_ap;
    p.var_bp = var_bp;
    p.pow_qc = cfg.get_double("inner.pow_qc", 0.25);
    p.pow_qp = cfg.get_double("inner.pow_qp", 0.25);
    p.pow_wc = cfg.get_double("inner.pow_wc", 0.25);
    p.pow_x = cfg.get_double("inner.pow_x", 0.25);
  } else {
    throw ConfigError("inner.split must be 'equal' or 'explicit'");
  }
  p.gamma = cfg.get_double("inner.gamma", 0.0);
  p.validate(ch);
  mc::McConfig mcfg;
  mcfg.n_samples = cfg.get_u64("mc.n_samples", 1000000);
  mcfg.chunk = cfg.get_u64("mc.chunk", 65536);
  mcfg.seed = cfg.get_u64("run.seed", default_seed());
  const double R = cfg.get_double("mc.R", 1.0);

  const auto rep = mc::validate_inner_point(src, ch, p, R, mcfg);
  json results = mc::to_json(rep, base);
  json diag = {{"warnings", results["warnings"]}, {"term_diagnostics", results["term_diagnostics"]},
               {"failures", rep.diff()}};
  results.erase("warnings");
  results.erase("term_diagnostics");
  Output out;
  out.text = dump(json_document("mc-validate", cfg, std::move(results), std::move(diag)));
  out.status = rep.pass ? kOk : kCheckFailed;
  return out;
}

Output run_command(std::string_view name, const Config& cfg, bool want_svg) {
  Output out;
  if (name == "outer-trace") out = cmd_outer_trace(cfg, want_svg);
  else if (name == "inner-trace") out = cmd_inner_trace(cfg, want_svg);
  else if (name == "point-check") out = cmd_point_check(cfg);
  else if (name == "ba") out = cmd_ba(cfg);
  else if (name == "mc-validate") out = cmd_mc_validate(cfg);
  else throw ConfigError("unknown command '" + std::string(name) + "'");
  cfg.check_unused();
  return out;
}

}  // namespace semsec::cli
