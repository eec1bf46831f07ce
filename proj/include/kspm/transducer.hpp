#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "kspm/core.hpp"

namespace kspm {

/// Letters are integers 0..D-2; kEpsilon marks the empty type.
constexpr int kEpsilon = -1;

/// Validity thresholds for interval types, as multiples of D-1 above the
/// global density column L. Types are defined from L + 2(D-1); transduction
/// statements need columns beyond L + 3(D-1).
constexpr int kTypeZoneSlack = 2;
constexpr int kTransduceZoneSlack = 3;

/// Fixed-point height differences on the interval I_i = [i(D-1), (i+1)(D-1)-1],
/// as a tuple in {0,...,D-1}^{D-1}.
struct IntervalState {
  std::vector<int> values;

  friend bool operator==(const IntervalState& a, const IntervalState& b) {
    return a.values == b.values;
  }
  friend bool operator<(const IntervalState& a, const IntervalState& b) {
    return a.values < b.values;
  }

  std::string str() const;                             // e.g. (2,1) -> "21"
  static IntervalState parse(const std::string& s, int d);
};

/// A word over {0,...,D-2}; epsilon letters are never stored.
struct TraceWord {
  std::vector<int> letters;

  std::size_t size() const { return letters.size(); }
  bool empty() const { return letters.empty(); }
  void push(int a) { letters.push_back(a); }
  void append(const TraceWord& w) {
    letters.insert(letters.end(), w.letters.begin(), w.letters.end());
  }

  friend bool operator==(const TraceWord& a, const TraceWord& b) {
    return a.letters == b.letters;
  }

  /// a/b for D=3, digits otherwise.
  std::string str(int d) const;
  static TraceWord parse(const std::string& s, int d);
};

/// f(A, alpha): index of the rightmost D-1 entry if some entry at position
/// <= alpha equals D-1, else epsilon.
int f(const IntervalState& A, int alpha, int d);

/// One transition of the state-update algorithm: repeatedly resolve f until
/// it returns epsilon, collecting the emitted letters.
std::pair<IntervalState, TraceWord> delta(const IntervalState& A, int alpha,
                                          int d);

/// The word transducer mapping the trace on I_i to the trace on I_{i+1}:
/// states are the interval states reachable from (0,...,0) under delta.
class Transducer {
 public:
  struct Edge {
    IntervalState from;
    int input;
    IntervalState to;
    TraceWord output;
  };

  explicit Transducer(int d);

  int D() const { return d_; }
  const IntervalState& initial() const { return states_.front(); }
  const std::vector<IntervalState>& states() const { return states_; }
  const std::vector<Edge>& edges() const { return edges_; }

  bool has_state(const IntervalState& A) const;
  /// Transition via the precomputed edge table. Throws UnknownState.
  const Edge& step(const IntervalState& A, int input) const;

  /// Deterministic edge list, one `state,input,next_state,output` per line.
  std::string edges_csv() const;

 private:
  int d_;
  std::vector<IntervalState> states_;  // breadth-first order, initial first
  std::vector<Edge> edges_;            // one per (state, input), BFS order
  std::map<std::vector<int>, std::size_t> index_;
};

/// Reachable closure for D, built once and cached.
const Transducer& build_transducer(int d);

TraceWord transduce_from(const Transducer& t, const IntervalState& A,
                         const TraceWord& u);
TraceWord transduce(const Transducer& t, const TraceWord& u);
TraceWord iterate(const Transducer& t, TraceWord u, int n);

/// Trace of the long avalanches of Phi(D,N) on interval I_i, read off a full
/// simulation. Letters are the types of the i-influent subsequences; y is the
/// length of the last one (0 when the trace is empty).
struct TraceResult {
  TraceWord word;
  int y = 0;
  int L = 0;             // global density column of N
  std::int64_t longs = 0;  // number of long avalanches
};

/// Throws IntervalTooFarLeft when i(D-1) < L + 2(D-1), unless enforce_zone
/// is cleared (the published I_3 cross-check sits outside the zone).
TraceResult trace_from_simulation(int d, std::int64_t n, int i,
                                  bool enforce_zone = true);

// D=3 convergence analysis over the two-letter alphabet a=0, b=1.

int height(const TraceWord& u);
int max_height(const TraceWord& u);

/// L = {ab u} union {epsilon, a}.
bool in_language_L(const TraceWord& u);

/// Smallest n with t^n(u) a prefix of (ab)^w. Throws BudgetExceeded past
/// max_iters.
int convergence_index(const TraceWord& u, int max_iters = 256);

/// Minimal words w with |t_A(w)| >= 2 (every proper prefix maps below 2),
/// paired with their images; lexicographic order, a < b.
std::vector<std::pair<TraceWord, TraceWord>> basic_words(const IntervalState& A);

}  // namespace kspm
