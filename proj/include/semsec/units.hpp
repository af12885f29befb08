#pragma once

#include <numbers>
#include <string>
#include <string_view>

namespace semsec {

// All library computations are carried out in nats; conversion happens at the
// API boundary (CLI output, report serialization).
enum class LogBase { nats, bits };

constexpr double to_base(double nats, LogBase base) noexcept {
  return base == LogBase::bits ? nats / std::numbers::ln2 : nats;
}

constexpr double from_base(double value, LogBase base) noexcept {
  return base == LogBase::bits ? value * std::numbers::ln2 : value;
}

inline constexpr double bits_to_nats(double bits) noexcept { return from_base(bits, LogBase::bits); }
inline constexpr double nats_to_bits(double nats) noexcept { return to_base(nats, LogBase::bits); }

LogBase parse_log_base(std::string_view name);
std::string to_string(LogBase base);

}  // namespace semsec
