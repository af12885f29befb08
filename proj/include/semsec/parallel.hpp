#pragma once

namespace semsec {

/// Selects between the OpenMP kernel and its serial reference. Both produce
/// bit-identical results; the serial path is kept for testing and benchmarking.
enum class Execution { serial, parallel };

int max_threads() noexcept;

}  // namespace semsec
