#include "kspm/avalanche.hpp"

#include <algorithm>
#include <unordered_set>

namespace kspm {

std::vector<int> peaks_of(const std::vector<int>& fired) {
  std::vector<int> peaks;
  int running_max = -1;
  for (int c : fired) {
    if (c > running_max) {
      peaks.push_back(c);
      running_max = c;
    }
  }
  return peaks;
}

int density_column_of(const std::vector<int>& fired) {
  if (fired.empty()) return 0;
  int max_f = *std::max_element(fired.begin(), fired.end());
  std::vector<char> hit(max_f + 1, 0);
  for (int c : fired) hit[c] = 1;
  int l = max_f;
  while (l > 0 && hit[l - 1]) --l;
  return l;
}

std::pair<AvalancheRecord, HeightDiffConfig> nth_avalanche(
    int d, std::int64_t k, const HeightDiffConfig& prev_fp) {
  if (!is_stable(prev_fp))
    throw NotAFixedPoint("nth_avalanche requires a stable configuration");
  HeightDiffConfig cfg = prev_fp;
  if (cfg.D() != d) cfg = HeightDiffConfig(d, cfg.raw());
  cfg.add(0, 1);
  AvalancheRecord rec;
  rec.k = k;
  stabilize_in_place(cfg, [&](int i) { rec.fired.push_back(i); });
  rec.peaks = peaks_of(rec.fired);
  rec.density_col = density_column_of(rec.fired);
  if (!rec.fired.empty())
    rec.max_fired = *std::max_element(rec.fired.begin(), rec.fired.end());
  return {std::move(rec), std::move(cfg)};
}

int global_density_column(int d, std::int64_t n) {
  AvalancheSimulator sim(d);
  int best = 0;
  for (std::int64_t k = 0; k < n; ++k)
    best = std::max(best, sim.next_fast().density_col);
  return best;
}

LongAvalancheSeq long_avalanches(int d, std::int64_t n) {
  AvalancheSimulator sim(d);
  std::vector<int> max_fired(static_cast<std::size_t>(n), -1);
  int L = 0;
  for (std::int64_t k = 0; k < n; ++k) {
    auto rec = sim.next_fast();
    if (rec.max_fired) max_fired[static_cast<std::size_t>(k)] = *rec.max_fired;
    L = std::max(L, rec.density_col);
  }
  LongAvalancheSeq seq;
  seq.N = n;
  seq.L = L;
  for (std::int64_t k = 0; k < n; ++k)
    if (max_fired[static_cast<std::size_t>(k)] >= L + d - 1)
      seq.indices.push_back(k + 1);
  return seq;
}

std::vector<int> fast_avalanche_peaks(const HeightDiffConfig& prev_fp, int l,
                                      const std::vector<int>* fired_for_check) {
  const int d = prev_fp.D();
  if (fired_for_check) {
    std::unordered_set<int> fired(fired_for_check->begin(),
                                  fired_for_check->end());
    for (int c = l; c <= l + d - 2; ++c)
      if (!fired.count(c))
        throw PreconditionUnverifiable(
            "avalanche does not fire all of [l, l+D-2]");
  }
  // Peak chain seeded at the virtual peak l+D-2: each next peak lies at most
  // D-1 columns ahead and carries the value D-1 in prev_fp.
  std::vector<int> peaks;
  int v = l + d - 2;
  while (true) {
    int next = -1;
    for (int j = v + 1; j <= v + d - 1; ++j) {
      if (prev_fp.at(j) == d - 1) {
        next = j;
        break;
      }
    }
    if (next < 0) break;
    peaks.push_back(next);
    v = next;
  }
  return peaks;
}

HeightDiffConfig apply_fast_avalanche(const HeightDiffConfig& fp,
                                      const std::vector<int>& peaks, int l) {
  (void)l;
  if (peaks.empty())
    throw EmptyPeakList("apply_fast_avalanche needs at least one peak");
  const int d = fp.D();
  const int max_peak = peaks.back();
  HeightDiffConfig out = fp;
  out.set(max_peak, 0);
  for (int j = 1; j <= d - 1; ++j) out.add(max_peak + j, 1);
  return out;
}

bool check_similarity(const std::vector<int>& pk, const std::vector<int>& pk1,
                      int L, int d) {
  const int zone = L + 2 * (d - 1);
  std::vector<int> lhs;
  for (int p : pk)
    if (p >= zone) lhs.push_back(p);
  if (lhs.empty()) return true;  // vacuous: nothing to preserve
  const int max_pk = lhs.back();
  lhs.pop_back();
  std::vector<int> rhs;
  for (int p : pk1)
    if (p >= zone && p < max_pk) rhs.push_back(p);
  return lhs == rhs;
}

AvalancheRecord AvalancheSimulator::next() {
  ++k_;
  cfg_.add(0, 1);
  AvalancheRecord rec;
  rec.k = k_;
  stabilize_in_place(cfg_, [&](int i) { rec.fired.push_back(i); });
  rec.peaks = peaks_of(rec.fired);
  rec.density_col = density_column_of(rec.fired);
  if (!rec.fired.empty())
    rec.max_fired = *std::max_element(rec.fired.begin(), rec.fired.end());
  return rec;
}

AvalancheSimulator::FastRecord AvalancheSimulator::next_fast() {
  const int d = cfg_.D();
  ++k_;
  cfg_.add(0, 1);
  ++epoch_;

  auto ensure = [&](std::size_t n) {
    if (fired_epoch_.size() < n) fired_epoch_.resize(n, 0);
  };
  auto mark = [&](int i) {
    ensure(static_cast<std::size_t>(i) + 1);
    fired_epoch_[i] = epoch_;
  };
  auto is_fired = [&](int i) {
    return i >= 0 && static_cast<std::size_t>(i) < fired_epoch_.size() &&
           fired_epoch_[i] == epoch_;
  };

  FastRecord rec;
  rec.k = k_;
  int max_f = -1;
  int i = 0;
  while (static_cast<std::size_t>(i) < cfg_.raw().size()) {
    if (cfg_.at(i) < d) {
      ++i;
      continue;
    }
    if (i > max_f && max_f >= d - 2) {
      bool run = true;
      for (int c = max_f - d + 2; c <= max_f; ++c)
        if (!is_fired(c)) {
          run = false;
          break;
        }
      if (run) {
        // [max_f-D+2, max_f] all fired and every pending firing is on the
        // right: the remainder is the peak chain over pi(k-1) values. A
        // column j beyond max_f was only touched by its donor j-D+1.
        const int cut = max_f + 1;
        int v = max_f;
        while (true) {
          int next = -1;
          for (int j = v + 1; j <= v + d - 1; ++j) {
            std::int64_t orig = cfg_.at(j) - (is_fired(j - d + 1) ? 1 : 0);
            if (orig == d - 1) {
              next = j;
              break;
            }
          }
          if (next < 0) break;
          rec.peaks.push_back(next);
          v = next;
        }
        if (!rec.peaks.empty()) {
          const int max_peak = v;
          // net effect of firing every column of [cut, max_peak] once
          cfg_.add(cut - 1, d - 1);
          for (int c = cut; c <= max_peak; ++c) {
            std::int64_t delta = -d;
            if (c + 1 <= max_peak) delta += d - 1;
            if (c - d + 1 >= cut) delta += 1;
            cfg_.add(c, delta);
            mark(c);
          }
          for (int c = max_peak + 1; c <= max_peak + d - 1; ++c)
            if (c - d + 1 >= cut) cfg_.add(c, 1);
          max_f = max_peak;
        }
        break;
      }
    }
    if (i > max_f) {
      rec.peaks.push_back(i);
      max_f = i;
    }
    fire_in_place(cfg_, i);
    mark(i);
    if (i > 0) --i;
  }
  cfg_.trim();

  if (max_f >= 0) {
    rec.max_fired = max_f;
    int l = max_f;
    while (l > 0 && is_fired(l - 1)) --l;
    rec.density_col = l;
  }
  return rec;
}

}  // namespace kspm
