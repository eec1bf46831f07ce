#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "kspm/core.hpp"
#include "kspm/transducer.hpp"

namespace kspm {

/// A trace of the regular form (0,...,D-2)^x (0,...,p) together with the
/// length y of its last influent subsequence.
struct RegularTraceSpec {
  int d = 0;
  int x = 0;  // full cycles
  int p = 0;  // endpoint of the partial cycle, in {0,...,D-2}
  int y = 1;  // 1 <= y <= x+1
};

struct XSequence {
  std::vector<std::int64_t> values;
};

/// Predicted fixed-point suffix for a regular trace, indexed from column
/// (i+1)(D-1): (p,...,1)(D-1,...,1)^{x-y} 0 (D-1,...,1)^y when y < x+1,
/// (p+1,...,1)(D-1,...,1)^x when y = x+1. Throws InvalidSpec.
std::vector<std::int64_t> wave_suffix(const RegularTraceSpec& spec);

/// Matches u against (0,...,D-2)^x (0,...,p) with a nonempty partial cycle;
/// y is left at its default (supplied by trace extraction).
std::optional<RegularTraceSpec> parse_regular_trace(const TraceWord& u, int d);

/// Frozen regression bound for the D=3 wave onset: onset <= factor * log2(N)
/// for 2 <= N <= 1e5. Measured maximum of onset/log2(N) over that range is
/// 1.893, attained at N=3 and decreasing afterwards; 2.5 leaves margin
/// while still catching a linear-onset regression early.
constexpr double kWaveOnsetLogFactor = 2.5;

/// Smallest n such that the suffix of fp from column n matches
/// (D-1,...,1)^* [0] (D-1,...,1)^* 0^w. Always defined: the empty suffix
/// matches, so n <= effective_length.
int wave_onset_column(const HeightDiffConfig& fp);

/// D=3 diagnostic sequence: x_0 = N-1+a_0 over sigma = pi(N-1) with shot
/// vector a, then x_{i+1} = (-x_i + sigma_i)/2. One value per stored column
/// of sigma (just x_0 for N=1). Throws NonIntegralStep on an odd step.
XSequence x_sequence(std::int64_t n);

/// Exact form of the density-column bound L(3,N) = 2j <= 2 log_4(9N/4 - 5/4):
/// checks 4^{j+1} <= 9N-5. Requires N >= 9; throws Error if the simulated
/// density column is odd.
bool meta2_bound_check(std::int64_t n);

/// Same bound checked for every N in [9, n_max] over one simulation pass.
/// On failure returns false and stores the first offending N.
bool meta2_bound_sweep(std::int64_t n_max, std::int64_t* first_fail = nullptr);

struct ConjectureRow {
  std::int64_t n = 0;
  int onset = 0;
  int effective_length = 0;
  double ratio = 0.0;      // onset / effective_length
  double log_bound = 0.0;  // log2(N)
};

struct ConjectureReport {
  int d = 0;
  std::vector<ConjectureRow> rows;
  double max_onset_over_log2 = 0.0;  // over N >= 2
};

/// Records wave_onset_column(pi(N)) for every N <= n_max in one sequential
/// pass. Report only: no claim is made for D > 3.
ConjectureReport conjecture_scan(int d, std::int64_t n_max);

}  // namespace kspm
