#pragma once

#include <cstdint>
#include <string>

#include "kspm/avalanche.hpp"
#include "kspm/core.hpp"
#include "kspm/transducer.hpp"

namespace kspm {

/// Staircase profile of a configuration, one '#' column per sand column.
/// Tall piles are scaled down to max_rows rows with a scale annotation.
std::string ascii_profile(const HeightDiffConfig& cfg, int max_rows = 20);

/// Panel sequence of one avalanche: the configuration before the grain drop
/// and after each firing, with the fired column marked.
std::string ascii_avalanche_panels(const HeightDiffConfig& prev_fp,
                                   const AvalancheRecord& rec,
                                   int max_rows = 20);

/// One row per avalanche: fired cells light, peaks dark, the running density
/// column as a solid staircase and the fixed-point extent as a dashed curve.
/// Output bytes are deterministic for fixed (d, n_max).
std::string svg_raster(int d, std::int64_t n_max);

}  // namespace kspm
