#include "kspm/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "kspm/avalanche.hpp"
#include "kspm/core.hpp"
#include "kspm/predict.hpp"
#include "kspm/transducer.hpp"

namespace kspm {

namespace {

using Check = std::pair<bool, std::string>;

Check check_grain_conservation(std::mt19937_64& rng) {
  for (int trial = 0; trial < 300; ++trial) {
    int d = 2 + static_cast<int>(rng() % 5);
    std::vector<std::int64_t> v(1 + rng() % 14);
    for (auto& e : v) e = static_cast<std::int64_t>(rng() % (2 * d));
    HeightDiffConfig cfg(d, v);
    std::int64_t before = cfg.total_grains();
    stabilize_in_place(cfg);
    if (cfg.total_grains() != before)
      return {false, "grains lost during stabilization"};
  }
  return {true, ""};
}

Check check_confluence() {
  // every strategy from (N) reaches the same fixed point in the same number
  // of firings
  for (int d = 2; d <= 4; ++d) {
    std::map<std::vector<std::int64_t>,
             std::pair<std::vector<std::int64_t>, std::int64_t>> memo;
    struct Rec {
      int d;
      decltype(memo)& m;
      std::pair<std::vector<std::int64_t>, std::int64_t> run(
          const HeightDiffConfig& cfg) {
        auto it = m.find(cfg.raw());
        if (it != m.end()) return it->second;
        std::pair<std::vector<std::int64_t>, std::int64_t> res{cfg.raw(), 0};
        bool seen = false;
        for (std::size_t i = 0; i < cfg.raw().size(); ++i) {
          if (cfg.at(i) < d) continue;
          auto sub = run(fire(cfg, static_cast<int>(i)));
          sub.second += 1;
          if (seen && sub != res) throw Error("strategy divergence");
          res = sub;
          seen = true;
        }
        m[cfg.raw()] = res;
        return res;
      }
    } rec{d, memo};
    for (std::int64_t n = 0; n <= 20; ++n) {
      try {
        auto [fp, len] = rec.run(HeightDiffConfig(d, {n}));
        if (fp != pi_of_n(d, n).raw())
          return {false, "fixed point mismatch at D=" + std::to_string(d) +
                             ", N=" + std::to_string(n)};
        (void)len;
      } catch (const Error& e) {
        return {false, e.what()};
      }
    }
  }
  return {true, ""};
}

Check check_shot_balance() {
  for (int d : {3, 4, 5}) {
    for (std::int64_t n = 1; n <= 500; n += 7) {
      HeightDiffConfig fp = pi_of_n(d, n);
      ShotVector a = shot_vector(d, n);
      std::int64_t cols =
          static_cast<std::int64_t>(a.counts.size()) + d + 1;
      for (std::int64_t i = 0; i < cols; ++i) {
        std::int64_t expect = (i == 0 ? n : 0) + a.at(i - (d - 1)) -
                              d * a.at(i) + (d - 1) * a.at(i + 1);
        if (fp.at(static_cast<std::size_t>(i)) != expect)
          return {false, "balance identity fails at D=" + std::to_string(d) +
                             ", N=" + std::to_string(n) +
                             ", i=" + std::to_string(i)};
      }
    }
  }
  return {true, ""};
}

Check check_avalanche_contracts() {
  // each column fires at most once; locality of successive firings
  for (int d : {3, 4, 5}) {
    AvalancheSimulator sim(d);
    for (std::int64_t k = 1; k <= 500; ++k) {
      AvalancheRecord rec = sim.next();
      std::set<int> fired;
      int r = -1;  // running max
      for (std::size_t t = 0; t < rec.fired.size(); ++t) {
        int c = rec.fired[t];
        if (!fired.insert(c).second)
          return {false, "column fired twice in avalanche " +
                             std::to_string(k) + " (D=" + std::to_string(d) +
                             ")"};
        if (t > 0) {
          if (c > r && c > r + d - 1)
            return {false, "firing jumped right past D-1"};
          if (c < r) {
            if (r - c >= d - 1) return {false, "firing jumped left past D-2"};
            for (int m = r - 1; m > c; --m)
              if (!fired.count(m))
                return {false, "left firing skipped an unfired column"};
          }
        }
        r = std::max(r, c);
      }
    }
  }
  return {true, ""};
}

Check check_similarity_property() {
  for (int d : {3, 4, 5}) {
    const std::int64_t n = 1000;
    AvalancheSimulator sim(d);
    std::vector<std::vector<int>> peaks;
    std::vector<int> maxf;
    int L = 0;
    for (std::int64_t k = 0; k < n; ++k) {
      auto rec = sim.next_fast();
      L = std::max(L, rec.density_col);
      peaks.push_back(rec.peaks);
      maxf.push_back(rec.max_fired ? *rec.max_fired : -1);
    }
    int prev = -1;
    for (std::int64_t k = 0; k < n; ++k) {
      if (maxf[static_cast<std::size_t>(k)] < L + d - 1) continue;
      if (prev >= 0 &&
          !check_similarity(peaks[static_cast<std::size_t>(prev)],
                            peaks[static_cast<std::size_t>(k)], L, d))
        return {false, "peak similarity fails between avalanches " +
                           std::to_string(prev + 1) + " and " +
                           std::to_string(k + 1) + " (D=" + std::to_string(d) +
                           ")"};
      prev = static_cast<int>(k);
    }
  }
  return {true, ""};
}

Check check_fast_path_suite() {
  for (int d : {3, 4, 5}) {
    auto stats = check_fast_path(d, 1000);
    if (stats.mismatches != 0)
      return {false, std::to_string(stats.mismatches) +
                         " fast-path mismatches at D=" + std::to_string(d)};
    if (stats.applicable == 0)
      return {false, "fast path never applicable at D=" + std::to_string(d)};
  }
  return {true, ""};
}

// Edge labels follow the resolution algorithm; the two edges leaving the
// transient state 20 therefore carry output "a" (see tests for discussion).
const char* kD3Edges[] = {
    "00,a,10,",  "00,b,11,",  "10,a,20,",   "10,b,21,",   "20,a,11,a",
    "20,b,12,a", "11,a,21,",  "11,b,22,",   "21,a,12,a",  "21,b,11,ab",
    "12,a,22,",  "12,b,21,b", "22,a,11,ba", "22,b,12,ba"};

Check check_d3_diagram() {
  const Transducer& t = build_transducer(3);
  if (t.states().size() != 7)
    return {false, std::to_string(t.states().size()) + " states, want 7"};
  std::set<std::string> have;
  for (const auto& e : t.edges())
    have.insert(e.from.str() + "," + TraceWord{{e.input}}.str(3) + "," +
                e.to.str() + "," + e.output.str(3));
  for (const char* want : kD3Edges)
    if (!have.count(want)) return {false, std::string("missing edge ") + want};
  return {true, ""};
}

Check check_transduction_consistency() {
  std::ostringstream warns;
  for (int d : {3, 4}) {
    const std::int64_t n = 500;
    const Transducer& t = build_transducer(d);
    TraceResult probe = trace_from_simulation(d, n, 0, false);
    const int L = probe.L;
    int i_min = (L + kTransduceZoneSlack * (d - 1)) / (d - 1) + 1;
    for (int i = i_min; (i + 2) * (d - 1) < 80; ++i) {
      TraceResult lo = trace_from_simulation(d, n, i);
      TraceResult hi = trace_from_simulation(d, n, i + 1);
      bool warned = false;
      if (!traces_consistent(transduce(t, lo.word), hi.word, &warned))
        return {false, "trace transduction mismatch at D=" +
                           std::to_string(d) + ", i=" + std::to_string(i)};
      if (warned)
        warns << "WARN open-subsequence truncation at D=" << d << ", i=" << i
              << "; ";
    }
  }
  return {true, warns.str()};
}

Check check_fixed_word() {
  for (int d : {3, 4, 5}) {
    const Transducer& t = build_transducer(d);
    TraceWord u;
    for (int n = 1; n <= 50; ++n) {
      for (int m = 0; m <= d - 2; ++m) u.push(m);
      TraceWord expect;
      for (int r = 0; r < n - 1; ++r)
        for (int m = 0; m <= d - 2; ++m) expect.push(m);
      if (!(transduce(t, u) == expect))
        return {false, "cycle word not fixed at D=" + std::to_string(d) +
                           ", n=" + std::to_string(n)};
    }
  }
  return {true, ""};
}

TraceWord random_word(std::mt19937_64& rng, std::size_t len) {
  TraceWord u;
  for (std::size_t j = 0; j < len; ++j) u.push(static_cast<int>(rng() % 2));
  return u;
}

Check check_language_closure(std::mt19937_64& rng) {
  const Transducer& t = build_transducer(3);
  IntervalState s21 = IntervalState::parse("21", 3);
  for (int trial = 0; trial < 1000; ++trial) {
    TraceWord u = random_word(rng, rng() % 513);
    if (!in_language_L(transduce_from(t, s21, u)))
      return {false, "t'(u) left the language on trial " +
                         std::to_string(trial)};
    if (!in_language_L(transduce(t, transduce(t, u))))
      return {false, "t^2(u) left the language on trial " +
                         std::to_string(trial)};
  }
  return {true, ""};
}

Check check_height_contraction(std::mt19937_64& rng) {
  const Transducer& t = build_transducer(3);
  for (int trial = 0; trial < 1000; ++trial) {
    TraceWord v;
    std::size_t len = rng() % 513;
    if (len >= 2) {
      v.push(0);
      v.push(1);
      for (std::size_t j = 2; j < len; ++j) v.push(static_cast<int>(rng() % 2));
    } else if (len == 1) {
      v.push(0);
    }
    if (4 * height(transduce(t, v)) > height(v) + 4)  // h(t(v)) <= h(v)/4 + 1
      return {false, "height bound fails on trial " + std::to_string(trial)};
  }
  return {true, ""};
}

Check check_convergence_bound(std::mt19937_64& rng) {
  for (int trial = 0; trial < 1000; ++trial) {
    TraceWord u = random_word(rng, rng() % 257);
    double raw = std::log(4.0 * u.size() + 4.0 / 3.0) / std::log(4.0) -
                 std::log(2.0 / 3.0) / std::log(4.0) + 3.0;
    int bound = static_cast<int>(std::ceil(raw)) + 1;
    if (convergence_index(u) > bound)
      return {false, "convergence bound exceeded on trial " +
                         std::to_string(trial)};
  }
  return {true, ""};
}

Check check_delta_output_bound() {
  for (int d = 2; d <= 6; ++d) {
    const Transducer& t = build_transducer(d);
    for (const auto& e : t.edges())
      if (static_cast<int>(e.output.size()) > d * (d - 1))
        return {false, "transition output longer than D(D-1) at D=" +
                           std::to_string(d)};
  }
  return {true, ""};
}

Check check_x_sequence() {
  for (std::int64_t n = 1; n <= 500; ++n) {
    XSequence x = x_sequence(n);
    ShotVector a = shot_vector(3, n - 1);
    for (std::size_t i = 0; i < x.values.size(); ++i) {
      std::int64_t ii = static_cast<std::int64_t>(i);
      std::int64_t expect = (ii - 2 == -2 ? n - 1 : a.at(ii - 2)) -
                            2 * a.at(ii - 1) + a.at(ii);
      if (x.values[i] != expect)
        return {false, "x_i shot-vector cross-check fails at N=" +
                           std::to_string(n) + ", i=" + std::to_string(i)};
    }
  }
  return {true, ""};
}

Check check_meta2() {
  for (std::int64_t n = 9; n <= 2000; ++n)
    if (!meta2_bound_check(n))
      return {false, "density bound fails at N=" + std::to_string(n)};
  return {true, ""};
}

Check check_wave_onset() {
  AvalancheSimulator sim(3);
  for (std::int64_t n = 1; n <= 5000; ++n) {
    sim.next_fast();
    int onset = wave_onset_column(sim.fixed_point());
    if (n >= 2 && onset > kWaveOnsetLogFactor * std::log2(double(n)))
      return {false, "onset " + std::to_string(onset) +
                         " above frozen bound at N=" + std::to_string(n)};
  }
  return {true, ""};
}

Check check_wave_suffix_agreement() {
  for (int d : {3, 4}) {
    const std::int64_t n = 1000;
    TraceResult probe = trace_from_simulation(d, n, 0, false);
    const int L = probe.L;
    HeightDiffConfig fp = pi_of_n(d, n);
    int i_min = (L + kTransduceZoneSlack * (d - 1)) / (d - 1) + 1;
    for (int i = i_min; (i + 1) * (d - 1) <
                        static_cast<int>(fp.effective_length());
         ++i) {
      TraceResult tr = trace_from_simulation(d, n, i);
      auto spec = parse_regular_trace(tr.word, d);
      if (!spec) continue;
      spec->y = tr.y;
      if (spec->y > spec->x + 1) continue;  // open run longer than the form
      auto suffix = wave_suffix(*spec);
      int base = (i + 1) * (d - 1);
      std::size_t span = std::max(
          suffix.size(), fp.effective_length() - static_cast<std::size_t>(base));
      for (std::size_t j = 0; j < span; ++j) {
        std::int64_t want = j < suffix.size() ? suffix[j] : 0;
        if (fp.at(static_cast<std::size_t>(base) + j) != want)
          return {false, "suffix prediction mismatch at D=" +
                             std::to_string(d) + ", i=" + std::to_string(i) +
                             ", offset " + std::to_string(j)};
      }
    }
  }
  return {true, ""};
}

}  // namespace

bool traces_consistent(const TraceWord& expected, const TraceWord& actual,
                       bool* warned) {
  if (expected == actual) return true;
  const auto& e = expected.letters;
  const auto& a = actual.letters;
  auto prefix_of = [](const std::vector<int>& p, const std::vector<int>& w) {
    return p.size() <= w.size() && std::equal(p.begin(), p.end(), w.begin());
  };
  bool ok = false;
  if (e.size() == a.size() && !e.empty() &&
      std::equal(e.begin(), e.end() - 1, a.begin()))
    ok = true;  // final letters differ
  else if (e.size() + 1 == a.size() && prefix_of(e, a))
    ok = true;
  else if (a.size() + 1 == e.size() && prefix_of(a, e))
    ok = true;
  if (ok && warned) *warned = true;
  return ok;
}

FastPathStats check_fast_path(int d, std::int64_t n_max) {
  FastPathStats stats;
  HeightDiffConfig prev(d);
  AvalancheSimulator sim(d);
  for (std::int64_t k = 1; k <= n_max; ++k) {
    AvalancheRecord rec = sim.next();
    const HeightDiffConfig& fp = sim.fixed_point();
    if (rec.max_fired && *rec.max_fired >= rec.density_col + d - 2) {
      ++stats.applicable;
      const int l = rec.density_col;
      bool ok = true;
      try {
        auto peaks = fast_avalanche_peaks(prev, l, &rec.fired);
        std::vector<int> want;
        for (int p : rec.peaks)
          if (p >= l + d - 1) want.push_back(p);
        if (peaks != want) ok = false;
        if (ok && !peaks.empty()) {
          HeightDiffConfig predicted = apply_fast_avalanche(prev, peaks, l);
          for (int c = l + d - 1; c <= peaks.back() + d; ++c)
            if (predicted.at(c) != fp.at(c)) ok = false;
        } else if (ok) {
          // avalanche stopped at l+D-2: columns l+D-1 .. l+2D-3 each
          // received one unit from their fired donor, nothing else moved
          for (int c = l + d - 1;
               c <= static_cast<int>(prev.effective_length()) + d; ++c) {
            std::int64_t want = prev.at(c) + (c <= l + 2 * d - 3 ? 1 : 0);
            if (fp.at(c) != want) ok = false;
          }
        }
      } catch (const Error&) {
        ok = false;
      }
      if (!ok) ++stats.mismatches;
    }
    prev = fp;
  }
  return stats;
}

std::vector<VerifyResult> run_verification(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<VerifyResult> out;
  auto add = [&](const std::string& name, Check c) {
    out.push_back({name, c.first, c.second});
  };
  add("grain_conservation", check_grain_conservation(rng));
  add("confluence_strong_convergence", check_confluence());
  add("shot_vector_balance", check_shot_balance());
  add("avalanche_single_firing_and_locality", check_avalanche_contracts());
  add("peak_similarity", check_similarity_property());
  add("fast_path_equivalence", check_fast_path_suite());
  add("d3_transducer_diagram", check_d3_diagram());
  add("trace_transduction_consistency", check_transduction_consistency());
  add("cycle_word_fixed_by_t", check_fixed_word());
  add("language_L_closure", check_language_closure(rng));
  add("height_contraction", check_height_contraction(rng));
  add("convergence_index_bound", check_convergence_bound(rng));
  add("delta_output_bound", check_delta_output_bound());
  add("x_sequence_crosscheck", check_x_sequence());
  add("density_column_bound", check_meta2());
  add("wave_onset_logarithmic", check_wave_onset());
  add("wave_suffix_prediction", check_wave_suffix_agreement());
  return out;
}

}  // namespace kspm
