#ifndef TSH_SYNTH_HPP
#define TSH_SYNTH_HPP

#include <cstddef>
#include <cstdint>
#include <string>

#include "tsh/series.hpp"

namespace tsh {

/// Deterministic synthetic generators used as desk-scale benchmark inputs.
/// Kinds and parameters:
///   ar1         y_t = 0.7 y_{t-1} + e_t,  e ~ N(0,1), 100-step burn-in
///   trend-sine  y_i = 0.05 i + 2 sin(2 pi i / 12) + e_i,  e ~ N(0, 0.5)
///   random-walk y_t = y_{t-1} + e_t,  e ~ N(0,1)
///   quadratic   y_i = 0.01 i^2 + e_i,  e ~ N(0,1)
/// Same (kind, n, seed) always yields the same series.
TimeSeries synth_dataset(const std::string& kind, std::size_t n, std::uint64_t seed);

}  // namespace tsh

#endif
