#pragma once

namespace windvar {

/// Selects the serial reference loop or the OpenMP kernel. Both produce
/// bit-identical results; the serial path exists for testing and benchmarks.
enum class Exec { serial, parallel };

}  // namespace windvar
