#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "kspm/errors.hpp"

namespace kspm {

/// Grain-fall parameter of the model. A firing moves D units of height
/// difference out of a column; legal only while the difference is >= D.
struct ModelParams {
  int D;

  explicit ModelParams(int d) : D(d) {
    if (d < 2) throw InvalidSpec("model parameter D must be >= 2");
  }
};

/// A configuration as height differences sigma_i = h_i - h_{i+1},
/// stored densely with an implicit all-zero tail. All entries stay
/// non-negative; heights are the suffix sums of the differences.
class HeightDiffConfig {
 public:
  explicit HeightDiffConfig(int d, std::vector<std::int64_t> diffs = {})
      : d_(ModelParams(d).D), diffs_(std::move(diffs)) {
    for (auto v : diffs_) {
      if (v < 0) throw InvalidSpec("height differences must be non-negative");
    }
    trim();
  }

  int D() const { return d_; }

  std::int64_t at(std::size_t i) const {
    return i < diffs_.size() ? diffs_[i] : 0;
  }

  void set(std::size_t i, std::int64_t v) {
    if (i >= diffs_.size()) diffs_.resize(i + 1, 0);
    diffs_[i] = v;
  }

  void add(std::size_t i, std::int64_t dv) { set(i, at(i) + dv); }

  /// 1 + index of the last nonzero entry; 0 for the zero configuration.
  std::size_t effective_length() const {
    std::size_t n = diffs_.size();
    while (n > 0 && diffs_[n - 1] == 0) --n;
    return n;
  }

  const std::vector<std::int64_t>& raw() const { return diffs_; }

  void trim() { diffs_.resize(effective_length()); }

  /// h_i as suffix sums of the differences, one entry per stored column.
  std::vector<std::int64_t> heights() const;
  static HeightDiffConfig from_heights(int d,
                                       const std::vector<std::int64_t>& h);

  /// Total grain count N = sum of heights.
  std::int64_t total_grains() const;

  friend bool operator==(const HeightDiffConfig& a, const HeightDiffConfig& b) {
    if (a.d_ != b.d_) return false;
    std::size_t n = std::max(a.diffs_.size(), b.diffs_.size());
    for (std::size_t i = 0; i < n; ++i)
      if (a.at(i) != b.at(i)) return false;
    return true;
  }

 private:
  int d_;
  std::vector<std::int64_t> diffs_;
};

/// Time-ordered list of fired columns.
struct FiringStrategy {
  std::vector<int> fired;
};

/// Per-column firing counts over a full stabilization from (N, 0^w).
struct ShotVector {
  std::vector<std::int64_t> counts;

  std::int64_t at(std::int64_t i) const {
    if (i < 0 || i >= static_cast<std::int64_t>(counts.size())) return 0;
    return counts[static_cast<std::size_t>(i)];
  }
};

bool is_stable(const HeightDiffConfig& cfg);
std::optional<int> leftmost_fireable(const HeightDiffConfig& cfg);

/// Applies the rule at column i: sigma_{i-1} += D-1 (i != 0),
/// sigma_i -= D, sigma_{i+D-1} += 1. Requires sigma_i >= D.
void fire_in_place(HeightDiffConfig& cfg, int i);
HeightDiffConfig fire(const HeightDiffConfig& cfg, int i);

HeightDiffConfig add_grain(const HeightDiffConfig& cfg);

struct StabilizeResult {
  HeightDiffConfig fixed_point;
  FiringStrategy strategy;
};

/// Leftmost stabilization: at every step the smallest fireable column fires.
StabilizeResult stabilize(const HeightDiffConfig& cfg);

/// In-place leftmost stabilization; on_fire is invoked per firing (may be
/// empty). Returns the number of firings.
std::int64_t stabilize_in_place(HeightDiffConfig& cfg,
                                const std::function<void(int)>& on_fire = {});

/// pi(N): the unique fixed point reached from N stacked grains.
HeightDiffConfig pi_of_n(int d, std::int64_t n);

/// Firing counts accumulated over the whole stabilization of (N, 0^w).
ShotVector shot_vector(int d, std::int64_t n);

/// Fires every fireable pair in both orders and compares results.
/// Vacuously true with fewer than two fireable columns.
bool check_diamond(const HeightDiffConfig& cfg);

}  // namespace kspm
