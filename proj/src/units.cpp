#include "semsec/units.hpp"

#include "semsec/errors.hpp"

namespace semsec {

LogBase parse_log_base(std::string_view name) {
  if (name == "bits" || name == "bit" || name == "2") return LogBase::bits;
  if (name == "nats" || name == "nat" || name == "e") return LogBase::nats;
  throw ConfigError("unknown log base '" + std::string(name) + "' (expected bits or nats)");
}

std::string to_string(LogBase base) { return base == LogBase::bits ? "bits" : "nats"; }

}  // namespace semsec
