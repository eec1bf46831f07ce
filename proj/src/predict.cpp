#include "kspm/predict.hpp"

#include <algorithm>
#include <cmath>

#include "kspm/avalanche.hpp"

namespace kspm {

std::vector<std::int64_t> wave_suffix(const RegularTraceSpec& spec) {
  const int d = spec.d;
  if (d < 2 || spec.x < 0 || spec.p < 0 || spec.p > d - 2 || spec.y < 1 ||
      spec.y > spec.x + 1)
    throw InvalidSpec("regular trace spec out of range");
  std::vector<std::int64_t> out;
  auto block_down_from = [&](int top) {
    for (int v = top; v >= 1; --v) out.push_back(v);
  };
  if (spec.y == spec.x + 1) {
    block_down_from(spec.p + 1);
    for (int r = 0; r < spec.x; ++r) block_down_from(d - 1);
  } else {
    block_down_from(spec.p);
    for (int r = 0; r < spec.x - spec.y; ++r) block_down_from(d - 1);
    out.push_back(0);
    for (int r = 0; r < spec.y; ++r) block_down_from(d - 1);
  }
  return out;
}

std::optional<RegularTraceSpec> parse_regular_trace(const TraceWord& u, int d) {
  if (u.empty()) return std::nullopt;
  const int cycle = d - 1;
  std::size_t pos = 0;
  int x = 0;
  while (u.size() - pos >= static_cast<std::size_t>(cycle)) {
    bool full = true;
    for (int m = 0; m < cycle; ++m)
      if (u.letters[pos + m] != m) {
        full = false;
        break;
      }
    if (!full) break;
    pos += cycle;
    ++x;
  }
  std::size_t rest = u.size() - pos;
  if (rest == 0) {
    // the final full cycle is the partial block (0,...,D-2)
    if (x == 0) return std::nullopt;
    return RegularTraceSpec{d, x - 1, d - 2, 1};
  }
  for (std::size_t m = 0; m < rest; ++m)
    if (u.letters[pos + m] != static_cast<int>(m)) return std::nullopt;
  return RegularTraceSpec{d, x, static_cast<int>(rest) - 1, 1};
}

int wave_onset_column(const HeightDiffConfig& fp) {
  const int d = fp.D();
  int s = static_cast<int>(fp.effective_length());
  bool used_zero = false;
  while (s > 0) {
    if (fp.at(s - 1) == 0 && !used_zero) {
      used_zero = true;
      --s;
      continue;
    }
    if (s >= d - 1) {
      bool block = true;
      for (int m = 0; m < d - 1; ++m)
        if (fp.at(s - d + 1 + m) != d - 1 - m) {
          block = false;
          break;
        }
      if (block) {
        s -= d - 1;
        continue;
      }
    }
    break;
  }
  return s;
}

XSequence x_sequence(std::int64_t n) {
  if (n < 1) throw InvalidSpec("x_sequence needs N >= 1");
  HeightDiffConfig sigma = pi_of_n(3, n - 1);
  ShotVector a = shot_vector(3, n - 1);
  XSequence x;
  x.values.push_back(n - 1 + a.at(0));
  const std::size_t len = sigma.effective_length();
  for (std::size_t i = 0; i + 1 < len; ++i) {
    std::int64_t num = -x.values.back() + sigma.at(i);
    if (num % 2 != 0)
      throw NonIntegralStep("odd step at i=" + std::to_string(i) +
                            " for N=" + std::to_string(n));
    x.values.push_back(num / 2);
  }
  return x;
}

bool meta2_bound_check(std::int64_t n) {
  if (n < 9) throw InvalidSpec("meta2 bound needs N >= 9");
  int L = global_density_column(3, n);
  if (L % 2 != 0)
    throw Error("density column L(3," + std::to_string(n) +
                ") = " + std::to_string(L) + " is odd");
  // L = 2j <= 2 log_4((9N-5)/4)  <=>  4^(j+1) <= 9N-5
  std::int64_t j = L / 2;
  if (j + 1 >= 32) return false;  // 4^32 dwarfs any reachable 9N-5
  return (std::int64_t{1} << (2 * (j + 1))) <= 9 * n - 5;
}

bool meta2_bound_sweep(std::int64_t n_max, std::int64_t* first_fail) {
  if (n_max < 9) throw InvalidSpec("meta2 sweep needs N >= 9");
  AvalancheSimulator sim(3);
  int L = 0;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    L = std::max(L, sim.next_fast().density_col);
    if (n < 9) continue;
    bool ok = L % 2 == 0;
    if (ok) {
      std::int64_t j = L / 2;
      ok = j + 1 < 32 && (std::int64_t{1} << (2 * (j + 1))) <= 9 * n - 5;
    }
    if (!ok) {
      if (first_fail) *first_fail = n;
      return false;
    }
  }
  return true;
}

ConjectureReport conjecture_scan(int d, std::int64_t n_max) {
  ConjectureReport rep;
  rep.d = d;
  AvalancheSimulator sim(d);
  for (std::int64_t n = 1; n <= n_max; ++n) {
    sim.next_fast();
    const HeightDiffConfig& fp = sim.fixed_point();
    ConjectureRow row;
    row.n = n;
    row.onset = wave_onset_column(fp);
    row.effective_length = static_cast<int>(fp.effective_length());
    row.ratio = row.effective_length > 0
                    ? static_cast<double>(row.onset) / row.effective_length
                    : 0.0;
    row.log_bound = std::log2(static_cast<double>(n));
    rep.rows.push_back(row);
    if (n >= 2)
      rep.max_onset_over_log2 =
          std::max(rep.max_onset_over_log2, row.onset / row.log_bound);
  }
  return rep;
}

}  // namespace kspm
