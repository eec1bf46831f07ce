#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kspm/transducer.hpp"

namespace kspm {

struct VerifyResult {
  std::string name;
  bool pass = false;
  std::string detail;  // filled on failure or for WARN-level notes
};

/// Runs every module's invariant suite at desk scale. Deterministic for a
/// fixed seed; the seed only drives random word/configuration generation.
std::vector<VerifyResult> run_verification(std::uint64_t seed = 20240811);

/// Trace equality modulo the open-final-subsequence rule: a pass with a set
/// warn flag when the words differ only in the last letter or by one
/// trailing letter.
bool traces_consistent(const TraceWord& expected, const TraceWord& actual,
                       bool* warned = nullptr);

/// Replays avalanches 1..n_max and, wherever the density precondition holds,
/// compares the fast peak chain and suffix update against full simulation.
struct FastPathStats {
  std::int64_t applicable = 0;
  std::int64_t mismatches = 0;
};
FastPathStats check_fast_path(int d, std::int64_t n_max);

}  // namespace kspm
