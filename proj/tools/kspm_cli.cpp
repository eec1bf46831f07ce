#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "kspm/avalanche.hpp"
#include "kspm/core.hpp"
#include "kspm/predict.hpp"
#include "kspm/render.hpp"
#include "kspm/transducer.hpp"
#include "kspm/verify.hpp"

using json = nlohmann::json;
using namespace kspm;

namespace {

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + out_path);
  f << text;
}

std::string join(const std::vector<std::int64_t>& v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i)
    os << (i ? " " : "") << v[i];
  return os.str();
}

json record_json(const AvalancheRecord& rec) {
  json j;
  j["k"] = rec.k;
  j["fired"] = rec.fired;
  j["peaks"] = rec.peaks;
  j["density_col"] = rec.density_col;
  if (rec.max_fired)
    j["max_fired"] = *rec.max_fired;
  else
    j["max_fired"] = nullptr;
  return j;
}

int run(int argc, char** argv) {
  CLI::App app{"Kadanoff sand pile toolkit"};
  app.require_subcommand(1);

  int d = 3;
  std::int64_t n = 0, k = 1, nmax = 100;
  int i = 0, iters = 1;
  std::string format = "text", out, word, from_state;
  bool verify_pre = false, edges = false, no_zone_check = false;
  std::uint64_t seed = 20240811;

  auto add_common = [&](CLI::App* c) {
    c->add_option("--d", d, "model parameter D")->check(CLI::Range(2, 16));
    c->add_option("--format", format)
        ->check(CLI::IsMember({"text", "json", "csv", "ascii", "svg"}));
    c->add_option("--out", out, "output file (default stdout)");
  };

  auto* c_pi = app.add_subcommand("pi", "fixed point of N stacked grains");
  add_common(c_pi);
  c_pi->add_option("--n", n)->required();

  auto* c_av = app.add_subcommand("avalanche", "the k-th avalanche");
  add_common(c_av);
  c_av->add_option("--k", k)->required()->check(CLI::PositiveNumber);
  c_av->add_flag("--verify-preconditions", verify_pre,
                 "cross-check the fast peak chain against the simulation");

  auto* c_den = app.add_subcommand("density", "global density column L(D,N)");
  add_common(c_den);
  c_den->add_option("--n", n)->required();

  auto* c_tr = app.add_subcommand("trace", "trace on interval I_i up to N");
  add_common(c_tr);
  c_tr->add_option("--n", n)->required();
  c_tr->add_option("--i", i)->required();
  c_tr->add_flag("--no-zone-check", no_zone_check,
                 "allow intervals below the validity zone");

  auto* c_td = app.add_subcommand("transduce", "apply t^iters to a word");
  add_common(c_td);
  c_td->add_option("--word", word, "input word (default: standard input)");
  c_td->add_option("--iters", iters)->check(CLI::NonNegativeNumber);
  c_td->add_option("--from", from_state, "start state (single application)");
  c_td->add_flag("--edges", edges, "print the transducer edge list as CSV");

  auto* c_ra = app.add_subcommand("raster", "avalanche raster as SVG");
  add_common(c_ra);
  c_ra->add_option("--nmax", nmax)->required()->check(CLI::PositiveNumber);

  auto* c_pr = app.add_subcommand("predict", "wave-shape diagnostics");
  add_common(c_pr);
  c_pr->add_option("--n", n)->required();

  auto* c_ve = app.add_subcommand("verify", "run the invariant suites");
  c_ve->add_option("--seed", seed, "seed for random word generation");

  auto* c_sw = app.add_subcommand("sweep", "wave onset sweep as CSV");
  add_common(c_sw);
  c_sw->add_option("--nmax", nmax)->required()->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  if (c_pi->parsed()) {
    HeightDiffConfig fp = pi_of_n(d, n);
    if (format == "json") {
      json j;
      j["diffs"] = fp.raw();
      emit(j.dump() + "\n", out);
    } else {
      std::ostringstream os;
      os << "diffs: " << join(fp.raw()) << "\n";
      os << "heights: " << join(fp.heights()) << "\n";
      if (format == "ascii") os << ascii_profile(fp);
      emit(os.str(), out);
    }
    return 0;
  }

  if (c_av->parsed()) {
    HeightDiffConfig prev = pi_of_n(d, k - 1);
    auto [rec, fp] = nth_avalanche(d, k, prev);
    if (verify_pre && rec.max_fired &&
        *rec.max_fired >= rec.density_col + d - 2) {
      auto peaks = fast_avalanche_peaks(prev, rec.density_col, &rec.fired);
      std::vector<int> want;
      for (int p : rec.peaks)
        if (p >= rec.density_col + d - 1) want.push_back(p);
      if (peaks != want) throw Error("fast peak chain disagrees");
    }
    if (format == "ascii") {
      emit(ascii_avalanche_panels(prev, rec), out);
    } else {
      emit(record_json(rec).dump() + "\n", out);
    }
    return 0;
  }

  if (c_den->parsed()) {
    LongAvalancheSeq seq = long_avalanches(d, n);
    if (format == "json") {
      json j;
      j["d"] = d;
      j["n"] = n;
      j["L"] = seq.L;
      j["long_avalanches"] = seq.indices.size();
      emit(j.dump() + "\n", out);
    } else {
      std::ostringstream os;
      os << "L = " << seq.L << "\n"
         << "long avalanches = " << seq.indices.size() << "\n";
      emit(os.str(), out);
    }
    return 0;
  }

  if (c_tr->parsed()) {
    TraceResult tr = trace_from_simulation(d, n, i, !no_zone_check);
    if (format == "json") {
      json j;
      j["trace"] = tr.word.str(d);
      j["y"] = tr.y;
      j["L"] = tr.L;
      j["long_avalanches"] = tr.longs;
      emit(j.dump() + "\n", out);
    } else {
      emit(tr.word.str(d) + "\n", out);
    }
    return 0;
  }

  if (c_td->parsed()) {
    const Transducer& t = build_transducer(d);
    if (edges) {
      emit(t.edges_csv(), out);
      return 0;
    }
    if (c_td->count("--word") == 0) std::getline(std::cin, word);
    TraceWord u = TraceWord::parse(word, d);
    TraceWord res;
    if (!from_state.empty()) {
      if (iters != 1) throw Error("--from applies a single transduction");
      res = transduce_from(t, IntervalState::parse(from_state, d), u);
    } else {
      res = iterate(t, u, iters);
    }
    emit(res.str(d) + "\n", out);
    return 0;
  }

  if (c_ra->parsed()) {
    emit(svg_raster(d, nmax), out);
    return 0;
  }

  if (c_pr->parsed()) {
    HeightDiffConfig fp = pi_of_n(d, n);
    int onset = wave_onset_column(fp);
    json j;
    j["d"] = d;
    j["n"] = n;
    j["onset"] = onset;
    j["effective_length"] = fp.effective_length();
    if (d == 3 && n >= 1) {
      j["x"] = x_sequence(n).values;
      if (n >= 9) j["meta2_bound_holds"] = meta2_bound_check(n);
    }
    if (format == "json") {
      emit(j.dump() + "\n", out);
    } else {
      std::ostringstream os;
      os << "onset = " << onset << "\n";
      if (j.contains("x")) {
        os << "x:";
        for (auto v : j["x"]) os << ' ' << v.get<std::int64_t>();
        os << "\n";
      }
      if (j.contains("meta2_bound_holds"))
        os << "meta2 bound holds = "
           << (j["meta2_bound_holds"].get<bool>() ? "yes" : "no") << "\n";
      emit(os.str(), out);
    }
    return 0;
  }

  if (c_ve->parsed()) {
    auto results = run_verification(seed);
    bool all = true;
    for (const auto& r : results) {
      std::cout << (r.pass ? "PASS " : "FAIL ") << r.name;
      if (!r.detail.empty()) std::cout << "  [" << r.detail << "]";
      std::cout << "\n";
      all = all && r.pass;
    }
    return all ? 0 : 1;
  }

  if (c_sw->parsed()) {
    ConjectureReport rep = conjecture_scan(d, nmax);
    std::ostringstream os;
    os << "N,onset,effective_length,ratio,log_bound\n";
    os.setf(std::ios::fixed);
    os.precision(6);
    for (const auto& row : rep.rows)
      os << row.n << ',' << row.onset << ',' << row.effective_length << ','
         << row.ratio << ',' << row.log_bound << '\n';
    emit(os.str(), out);
    std::cerr << "max onset/log2(N) = " << rep.max_onset_over_log2 << "\n";
    if (d == 3 && nmax >= 9) {
      std::int64_t bad = 0;
      if (!meta2_bound_sweep(nmax, &bad)) {
        std::cerr << "density bound fails at N = " << bad << "\n";
        return 1;
      }
    }
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
