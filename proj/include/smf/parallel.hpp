#pragma once

namespace smf {

/// Selects between the OpenMP kernel and its serial reference. Both produce
/// bit-identical results; the serial path exists for testing and benchmarks.
enum class Exec { Serial, Parallel };

}  // namespace smf
