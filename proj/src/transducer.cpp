#include "kspm/transducer.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <sstream>

#include "kspm/avalanche.hpp"

namespace kspm {

std::string IntervalState::str() const {
  std::string s;
  for (int v : values) s += static_cast<char>('0' + v);
  return s;
}

IntervalState IntervalState::parse(const std::string& s, int d) {
  IntervalState A;
  for (char c : s) {
    if (c < '0' || c > '9' || c - '0' > d - 1)
      throw InvalidSpec("bad interval state digit '" + std::string(1, c) + "'");
    A.values.push_back(c - '0');
  }
  if (static_cast<int>(A.values.size()) != d - 1)
    throw InvalidSpec("interval state needs D-1 digits");
  return A;
}

std::string TraceWord::str(int d) const {
  std::string s;
  for (int a : letters) s += static_cast<char>(d == 3 ? 'a' + a : '0' + a);
  return s;
}

TraceWord TraceWord::parse(const std::string& s, int d) {
  TraceWord u;
  for (char c : s) {
    int a = (d == 3 && c >= 'a') ? c - 'a' : c - '0';
    if (a < 0 || a > d - 2)
      throw InvalidSpec("trace letter '" + std::string(1, c) +
                        "' out of alphabet for D=" + std::to_string(d));
    u.push(a);
  }
  return u;
}

int f(const IntervalState& A, int alpha, int d) {
  bool low = false;
  for (int m = 0; m <= alpha; ++m)
    if (A.values[m] == d - 1) low = true;
  if (!low) return kEpsilon;
  for (int m = d - 2; m >= 0; --m)
    if (A.values[m] == d - 1) return m;
  return kEpsilon;  // unreachable
}

std::pair<IntervalState, TraceWord> delta(const IntervalState& A, int alpha,
                                          int d) {
  IntervalState cur = A;
  TraceWord out;
  while (true) {
    int p = f(cur, alpha, d);
    if (p == kEpsilon) {
      for (int m = 0; m <= alpha; ++m) ++cur.values[m];
      return {std::move(cur), std::move(out)};
    }
    cur.values[p] = 0;
    for (int m = p + 1; m <= d - 2; ++m) ++cur.values[m];
    out.push(p);
  }
}

Transducer::Transducer(int d) : d_(ModelParams(d).D) {
  IntervalState init;
  init.values.assign(d - 1, 0);
  states_.push_back(init);
  index_[init.values] = 0;
  std::deque<std::size_t> frontier{0};
  while (!frontier.empty()) {
    std::size_t s = frontier.front();
    frontier.pop_front();
    for (int a = 0; a <= d - 2; ++a) {
      auto [next, out] = delta(states_[s], a, d);
      auto it = index_.find(next.values);
      if (it == index_.end()) {
        index_[next.values] = states_.size();
        states_.push_back(next);
        frontier.push_back(states_.size() - 1);
      }
      edges_.push_back({states_[s], a, std::move(next), std::move(out)});
    }
  }
}

bool Transducer::has_state(const IntervalState& A) const {
  return index_.count(A.values) != 0;
}

const Transducer::Edge& Transducer::step(const IntervalState& A,
                                         int input) const {
  auto it = index_.find(A.values);
  if (it == index_.end() || input < 0 || input > d_ - 2)
    throw UnknownState("no transition from state " + A.str() +
                       " on letter " + std::to_string(input));
  return edges_[it->second * (d_ - 1) + input];
}

std::string Transducer::edges_csv() const {
  std::ostringstream os;
  os << "state,input,next_state,output\n";
  for (const Edge& e : edges_) {
    os << e.from.str() << ',' << TraceWord{{e.input}}.str(d_) << ','
       << e.to.str() << ',' << e.output.str(d_) << '\n';
  }
  return os.str();
}

const Transducer& build_transducer(int d) {
  static std::mutex mu;
  static std::map<int, Transducer> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(d);
  if (it == cache.end()) it = cache.emplace(d, Transducer(d)).first;
  return it->second;
}

TraceWord transduce_from(const Transducer& t, const IntervalState& A,
                         const TraceWord& u) {
  if (!t.has_state(A))
    throw UnknownState("state " + A.str() + " is not reachable");
  IntervalState cur = A;
  TraceWord out;
  for (int a : u.letters) {
    const auto& e = t.step(cur, a);
    out.append(e.output);
    cur = e.to;
  }
  return out;
}

TraceWord transduce(const Transducer& t, const TraceWord& u) {
  return transduce_from(t, t.initial(), u);
}

TraceWord iterate(const Transducer& t, TraceWord u, int n) {
  for (int r = 0; r < n; ++r) u = transduce(t, u);
  return u;
}

TraceResult trace_from_simulation(int d, std::int64_t n, int i,
                                  bool enforce_zone) {
  AvalancheSimulator sim(d);
  struct PerAvalanche {
    std::vector<int> peaks;
    int max_fired = -1;
  };
  std::vector<PerAvalanche> avs(static_cast<std::size_t>(n));
  int L = 0;
  for (std::int64_t k = 0; k < n; ++k) {
    auto rec = sim.next_fast();
    L = std::max(L, rec.density_col);
    avs[static_cast<std::size_t>(k)].peaks = std::move(rec.peaks);
    if (rec.max_fired) avs[static_cast<std::size_t>(k)].max_fired = *rec.max_fired;
  }
  if (enforce_zone && i * (d - 1) < L + kTypeZoneSlack * (d - 1))
    throw IntervalTooFarLeft("interval " + std::to_string(i) +
                             " below the validity zone for N=" +
                             std::to_string(n) + " (L=" + std::to_string(L) +
                             ")");
  const int lo = i * (d - 1);
  const int hi = (i + 1) * (d - 1);  // exclusive

  TraceResult res;
  res.L = L;
  int run_type = kEpsilon - 1;  // sentinel: no run yet
  int run_len = 0;
  for (const auto& av : avs) {
    if (av.max_fired < L + d - 1) continue;  // not a long avalanche
    ++res.longs;
    // maximal peak strictly left of I_{i+1}; peak lists are increasing
    int p = -1;
    for (int q : av.peaks) {
      if (q >= hi) break;
      p = q;
    }
    int type = (p >= lo) ? p % (d - 1) : kEpsilon;
    if (type == run_type) {
      ++run_len;
    } else {
      if (run_type >= 0) {
        res.word.push(run_type);
        res.y = run_len;
      }
      run_type = type;
      run_len = 1;
    }
  }
  if (run_type >= 0) {
    res.word.push(run_type);
    res.y = run_len;
  }
  return res;
}

int height(const TraceWord& u) {
  int diff = 0;
  for (int a : u.letters) diff += a == 0 ? 1 : -1;
  return diff < 0 ? -diff : diff;
}

int max_height(const TraceWord& u) {
  int diff = 0, best = 0;
  for (int a : u.letters) {
    diff += a == 0 ? 1 : -1;
    best = std::max(best, diff < 0 ? -diff : diff);
  }
  return best;
}

bool in_language_L(const TraceWord& u) {
  if (u.size() <= 1) return u.empty() || u.letters[0] == 0;
  return u.letters[0] == 0 && u.letters[1] == 1;
}

static bool is_ab_prefix(const TraceWord& u) {
  for (std::size_t j = 0; j < u.size(); ++j)
    if (u.letters[j] != static_cast<int>(j % 2)) return false;
  return true;
}

int convergence_index(const TraceWord& u, int max_iters) {
  const Transducer& t = build_transducer(3);
  TraceWord cur = u;
  for (int n = 0; n <= max_iters; ++n) {
    if (is_ab_prefix(cur)) return n;
    cur = transduce(t, cur);
  }
  throw BudgetExceeded("no (ab)^w prefix after " + std::to_string(max_iters) +
                       " transductions");
}

std::vector<std::pair<TraceWord, TraceWord>> basic_words(
    const IntervalState& A) {
  const Transducer& t = build_transducer(3);
  if (!t.has_state(A))
    throw UnknownState("state " + A.str() + " is not reachable");
  struct Node {
    TraceWord word;
    IntervalState state;
    TraceWord image;
  };
  std::vector<std::pair<TraceWord, TraceWord>> table;
  std::deque<Node> frontier{{TraceWord{}, A, TraceWord{}}};
  while (!frontier.empty()) {
    Node n = frontier.front();
    frontier.pop_front();
    if (n.word.size() > 8)
      throw Error("basic-word frontier did not empty by length 8");
    for (int a = 0; a <= 1; ++a) {
      const auto& e = t.step(n.state, a);
      Node child{n.word, e.to, n.image};
      child.word.push(a);
      child.image.append(e.output);
      if (child.image.size() >= 2)
        table.emplace_back(std::move(child.word), std::move(child.image));
      else
        frontier.push_back(std::move(child));
    }
  }
  std::sort(table.begin(), table.end(),
            [](const auto& x, const auto& y) {
              return x.first.letters < y.first.letters;
            });
  return table;
}

}  // namespace kspm
