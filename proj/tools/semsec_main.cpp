// semsec command-line front end.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "semsec/cli/commands.hpp"
#include "semsec/errors.hpp"

namespace {

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw semsec::IoError("cannot open '" + path + "' for writing");
  out << content;
  if (!out.flush()) throw semsec::IoError("write to '" + path + "' failed");
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = semsec::cli;
  CLI::App app{"Rate-distortion-equivocation regions for semantic sources over wiretap channels"};
  app.require_subcommand(1);
  app.footer(
      "Config files use [section] headers and 'key = value' lines; --set section.key=value overrides.\n"
      "Precedence: command line > config file > SEMSEC_SEED (default seed only) > built-in defaults.\n"
      "Exit codes: 0 ok, 1 validation failed, 2 configuration, 3 infeasible/empty, 4 solver, 5 I/O.");

  std::string config_path;
  std::vector<std::string> overrides;
  std::string out_path;
  std::string svg_path;
  std::string log_base;
  std::uint64_t seed = 0;

  struct Sub {
    const char* name;
    const char* help;
    bool svg;
  };
  const Sub subs[] = {
      {"outer-trace", "Trace the converse boundary D_s over an (R, D_u) grid (CSV)", true},
      {"inner-trace", "Trace the achievable boundary D_s over an (R, D_u) grid (CSV)", true},
      {"point-check", "Check one tuple against the converse inequalities (JSON)", false},
      {"ba", "Run a Blahut-Arimoto rate-distortion solver (JSON)", false},
      {"mc-validate", "Monte Carlo check of one Gaussian achievable point (JSON)", false},
  };
  std::vector<CLI::App*> commands;
  for (const auto& s : subs) {
    auto* c = app.add_subcommand(s.name, s.help);
    c->add_option("-c,--config", config_path, "Configuration file");
    c->add_option("--set", overrides, "Override a setting: section.key=value (repeatable)");
    c->add_option("--seed", seed, "Random seed (overrides run.seed)");
    c->add_option("--log-base", log_base, "Information unit for outputs and point inputs: bits or nats");
    c->add_option("-o,--out", out_path, "Output file (default: stdout)");
    if (s.svg) c->add_option("--svg", svg_path, "Also write an SVG heatmap with contours");
    commands.push_back(c);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : cli::kConfigError;
  }

  try {
    cli::Config cfg = config_path.empty() ? cli::Config{} : cli::Config::from_file(config_path);
    for (const auto& o : overrides) cfg.set(o);
    CLI::App* cmd = nullptr;
    for (auto* c : commands)
      if (c->parsed()) cmd = c;
    if (cmd->count("--seed")) cfg.set("run.seed", std::to_string(seed));
    if (cmd->count("--log-base")) cfg.set("run.log_base", log_base);

    const auto out = cli::run_command(cmd->get_name(), cfg, !svg_path.empty());
    if (out_path.empty()) std::cout << out.text;
    else write_file(out_path, out.text);
    if (!svg_path.empty()) write_file(svg_path, out.svg);
    if (out.status == cli::kInfeasible) std::cerr << "semsec: result is infeasible or empty\n";
    return out.status;
  } catch (const semsec::ConfigError& e) {
    std::cerr << "semsec: configuration error: " << e.what() << '\n';
    return cli::kConfigError;
  } catch (const semsec::DomainError& e) {
    std::cerr << "semsec: configuration error: " << e.what() << '\n';
    return cli::kConfigError;
  } catch (const semsec::InfeasibleError& e) {
    std::cerr << "semsec: infeasible: " << e.what() << '\n';
    return cli::kInfeasible;
  } catch (const semsec::IoError& e) {
    std::cerr << "semsec: I/O error: " << e.what() << '\n';
    return cli::kIoError;
  } catch (const semsec::Error& e) {
    std::cerr << "semsec: solver error: " << e.what() << '\n';
    return cli::kSolverError;
  }
}
