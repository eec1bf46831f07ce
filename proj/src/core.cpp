#include "kspm/core.hpp"

#include <algorithm>

namespace kspm {

std::vector<std::int64_t> HeightDiffConfig::heights() const {
  std::vector<std::int64_t> h(diffs_.size(), 0);
  std::int64_t acc = 0;
  for (std::size_t i = diffs_.size(); i-- > 0;) {
    acc += diffs_[i];
    h[i] = acc;
  }
  return h;
}

HeightDiffConfig HeightDiffConfig::from_heights(
    int d, const std::vector<std::int64_t>& h) {
  std::vector<std::int64_t> diffs(h.size(), 0);
  for (std::size_t i = 0; i < h.size(); ++i) {
    std::int64_t next = i + 1 < h.size() ? h[i + 1] : 0;
    diffs[i] = h[i] - next;
  }
  return HeightDiffConfig(d, std::move(diffs));
}

std::int64_t HeightDiffConfig::total_grains() const {
  // N = sum h_i = sum (i+1) * sigma_i
  std::int64_t total = 0;
  for (std::size_t i = 0; i < diffs_.size(); ++i)
    total += static_cast<std::int64_t>(i + 1) * diffs_[i];
  return total;
}

bool is_stable(const HeightDiffConfig& cfg) {
  for (auto v : cfg.raw())
    if (v >= cfg.D()) return false;
  return true;
}

std::optional<int> leftmost_fireable(const HeightDiffConfig& cfg) {
  const auto& d = cfg.raw();
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] >= cfg.D()) return static_cast<int>(i);
  return std::nullopt;
}

void fire_in_place(HeightDiffConfig& cfg, int i) {
  const int d = cfg.D();
  if (cfg.at(i) < d)
    throw FireOnStableColumn("fire at column " + std::to_string(i) +
                             " with difference < D");
  if (i != 0) cfg.add(i - 1, d - 1);
  cfg.add(i, -d);
  cfg.add(i + d - 1, 1);
}

HeightDiffConfig fire(const HeightDiffConfig& cfg, int i) {
  HeightDiffConfig out = cfg;
  fire_in_place(out, i);
  return out;
}

HeightDiffConfig add_grain(const HeightDiffConfig& cfg) {
  HeightDiffConfig out = cfg;
  out.add(0, 1);
  return out;
}

std::int64_t stabilize_in_place(HeightDiffConfig& cfg,
                                const std::function<void(int)>& on_fire) {
  const int d = cfg.D();
  std::int64_t fired = 0;
  // Firing i can newly enable i-1 (gains D-1) and i+D-1 (gains 1); a
  // leftmost scan only ever needs to step back one column.
  int i = 0;
  while (static_cast<std::size_t>(i) < cfg.raw().size()) {
    if (cfg.at(i) >= d) {
      fire_in_place(cfg, i);
      ++fired;
      if (on_fire) on_fire(i);
      if (i > 0) --i;
    } else {
      ++i;
    }
  }
  cfg.trim();
  return fired;
}

StabilizeResult stabilize(const HeightDiffConfig& cfg) {
  StabilizeResult res{cfg, {}};
  stabilize_in_place(res.fixed_point,
                     [&](int i) { res.strategy.fired.push_back(i); });
  return res;
}

HeightDiffConfig pi_of_n(int d, std::int64_t n) {
  HeightDiffConfig cfg(d);
  for (std::int64_t k = 0; k < n; ++k) {
    cfg.add(0, 1);
    stabilize_in_place(cfg);
  }
  return cfg;
}

ShotVector shot_vector(int d, std::int64_t n) {
  HeightDiffConfig cfg(d, {n});
  ShotVector shots;
  stabilize_in_place(cfg, [&](int i) {
    if (static_cast<std::size_t>(i) >= shots.counts.size())
      shots.counts.resize(i + 1, 0);
    ++shots.counts[i];
  });
  return shots;
}

bool check_diamond(const HeightDiffConfig& cfg) {
  std::vector<int> fireable;
  for (std::size_t i = 0; i < cfg.raw().size(); ++i)
    if (cfg.at(i) >= cfg.D()) fireable.push_back(static_cast<int>(i));
  for (std::size_t a = 0; a < fireable.size(); ++a) {
    for (std::size_t b = a + 1; b < fireable.size(); ++b) {
      HeightDiffConfig ij = fire(fire(cfg, fireable[a]), fireable[b]);
      HeightDiffConfig ji = fire(fire(cfg, fireable[b]), fireable[a]);
      if (!(ij == ji)) return false;
    }
  }
  return true;
}

}  // namespace kspm
