#pragma once

namespace apia {

// Selects between the OpenMP kernels and their serial reference versions.
// Both must return identical results.
enum class Exec { Serial, Parallel };

}  // namespace apia
