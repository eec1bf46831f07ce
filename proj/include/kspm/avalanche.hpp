#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "kspm/core.hpp"

namespace kspm {

/// One leftmost avalanche: the firings triggered by dropping the k-th grain
/// on pi(k-1), plus the derived peak list and density data.
struct AvalancheRecord {
  std::int64_t k = 0;
  std::vector<int> fired;              // time order, each column at most once
  std::vector<int> peaks;              // strictly increasing
  std::optional<int> max_fired;
  int density_col = 0;                 // minimal l with [l, max_fired] all fired
};

/// Indices of the avalanches (up to N) firing column L+D-1, where L is the
/// global density column of N.
struct LongAvalancheSeq {
  std::int64_t N = 0;
  int L = 0;
  std::vector<std::int64_t> indices;
};

std::vector<int> peaks_of(const std::vector<int>& fired);
int density_column_of(const std::vector<int>& fired);

/// Runs the k-th avalanche from pi(k-1). Throws NotAFixedPoint if prev_fp
/// is unstable.
std::pair<AvalancheRecord, HeightDiffConfig> nth_avalanche(
    int d, std::int64_t k, const HeightDiffConfig& prev_fp);

int global_density_column(int d, std::int64_t n);
LongAvalancheSeq long_avalanches(int d, std::int64_t n);

/// Peak chain of the k-th avalanche on the right of l+D-1, read off pi(k-1)
/// without simulating. Caller guarantees that the avalanche fires all of
/// [l, l+D-2]; pass the avalanche's fired set to have that checked.
std::vector<int> fast_avalanche_peaks(const HeightDiffConfig& prev_fp, int l,
                                      const std::vector<int>* fired_for_check =
                                          nullptr);

/// Suffix update for a dense avalanche with the given peak chain: columns in
/// [l+D-1, max peak) keep their value, the max peak drops to 0 and the next
/// D-1 columns each gain one unit. Columns below l+D-1 are left untouched
/// and are NOT meaningful in the result.
HeightDiffConfig apply_fast_avalanche(const HeightDiffConfig& fp,
                                      const std::vector<int>& peaks, int l);

/// Set equality Pk \ {max Pk} == Pk1 n [L+2(D-1), max Pk) for the peak lists
/// (>= L+2(D-1)) of two consecutive long avalanches.
bool check_similarity(const std::vector<int>& pk, const std::vector<int>& pk1,
                      int L, int d);

/// Sequential avalanche driver: owns pi(k) and advances one grain at a time.
class AvalancheSimulator {
 public:
  explicit AvalancheSimulator(int d) : cfg_(d) {}

  int D() const { return cfg_.D(); }
  std::int64_t grains() const { return k_; }
  const HeightDiffConfig& fixed_point() const { return cfg_; }

  /// Full leftmost simulation of the next avalanche, with firing order.
  AvalancheRecord next();

  /// Reduced record for sweeps: firing order is omitted (fired is empty)
  /// but peaks, density column and max fired column are exact.
  struct FastRecord {
    std::int64_t k = 0;
    std::vector<int> peaks;
    std::optional<int> max_fired;
    int density_col = 0;
  };

  /// Hybrid step: the avalanche prefix is simulated exactly; once a run of
  /// D-1 freshly fired columns ends at the running maximum, the remainder is
  /// resolved through the peak chain and applied as one dense range update.
  FastRecord next_fast();

 private:
  HeightDiffConfig cfg_;
  std::int64_t k_ = 0;
  // lazily cleared per-avalanche fired marks
  std::vector<std::int64_t> fired_epoch_;
  std::int64_t epoch_ = 0;
};

}  // namespace kspm
