#pragma once

#include <string>
#include <string_view>

#include "semsec/cli/config.hpp"
#include "semsec/discrete/pmf.hpp"
#include "semsec/gauss.hpp"
#include "semsec/units.hpp"

namespace semsec::cli {

inline constexpr int kCsvSchemaVersion = 1;
inline constexpr int kJsonSchemaVersion = 1;

/// Exit statuses shared by every command.
enum Status : int {
  kOk = 0,
  kCheckFailed = 1,  // mc-validate assertion failure
  kConfigError = 2,
  kInfeasible = 3,
  kSolverError = 4,
  kIoError = 5,
};

struct Output {
  std::string text;  // CSV or JSON
  std::string svg;   // only for traces, when requested
  int status = kOk;
};

Output cmd_outer_trace(const Config& cfg, bool want_svg);
Output cmd_inner_trace(const Config& cfg, bool want_svg);
Output cmd_point_check(const Config& cfg);
Output cmd_ba(const Config& cfg);
Output cmd_mc_validate(const Config& cfg);

/// Dispatches by subcommand name ("outer-trace", ...). Rejects unused settings.
Output run_command(std::string_view name, const Config& cfg, bool want_svg);

/// Default seed: SEMSEC_SEED when set, else 1.
std::uint64_t default_seed();

GaussianSource gaussian_source(const Config& cfg);
GaussianWiretapChannel gaussian_channel(const Config& cfg);
LogBase log_base(const Config& cfg);
/// "bsc:p", "identity:n" or a matrix file.
discrete::DMC parse_channel(const std::string& text);
/// "hamming" or a matrix file.
discrete::DistortionMatrix parse_distortion(const std::string& text, std::size_t letters);

}  // namespace semsec::cli
