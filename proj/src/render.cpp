#include "kspm/render.hpp"

#include <algorithm>
#include <sstream>

namespace kspm {

std::string ascii_profile(const HeightDiffConfig& cfg, int max_rows) {
  auto h = cfg.heights();
  std::int64_t top = 0;
  for (auto v : h) top = std::max(top, v);
  std::int64_t scale = 1;
  if (top > max_rows) scale = (top + max_rows - 1) / max_rows;
  std::ostringstream os;
  if (scale > 1) os << "(one row = " << scale << " grains)\n";
  std::int64_t rows = (top + scale - 1) / scale;
  for (std::int64_t r = rows; r >= 1; --r) {
    std::int64_t level = r * scale;
    for (std::size_t i = 0; i < h.size(); ++i)
      os << (h[i] >= level ? '#' : ' ');
    os << '\n';
  }
  for (std::size_t i = 0; i < h.size(); ++i) os << '-';
  os << '\n';
  return os.str();
}

std::string ascii_avalanche_panels(const HeightDiffConfig& prev_fp,
                                   const AvalancheRecord& rec, int max_rows) {
  std::ostringstream os;
  os << "before grain " << rec.k << ":\n" << ascii_profile(prev_fp, max_rows);
  HeightDiffConfig cfg = prev_fp;
  cfg.add(0, 1);
  os << "grain added:\n" << ascii_profile(cfg, max_rows);
  for (int c : rec.fired) {
    fire_in_place(cfg, c);
    os << "fire " << c << ":\n" << ascii_profile(cfg, max_rows);
  }
  return os.str();
}

std::string svg_raster(int d, std::int64_t n_max) {
  constexpr int cell = 4;
  AvalancheSimulator sim(d);
  std::vector<AvalancheRecord> recs;
  std::vector<int> extent;  // effective length of pi(k)
  int max_col = 0;
  for (std::int64_t k = 0; k < n_max; ++k) {
    recs.push_back(sim.next());
    extent.push_back(static_cast<int>(sim.fixed_point().effective_length()));
    if (recs.back().max_fired) max_col = std::max(max_col, *recs.back().max_fired);
    max_col = std::max(max_col, extent.back());
  }
  const int w = (max_col + 2) * cell;
  const int h = static_cast<int>(n_max) * cell;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
     << w << "\" height=\"" << h << "\" viewBox=\"0 0 " << w << ' ' << h
     << "\">\n";
  os << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"#ffffff\"/>\n";
  for (std::int64_t k = 0; k < n_max; ++k) {
    const auto& r = recs[static_cast<std::size_t>(k)];
    int y = static_cast<int>(k) * cell;
    for (int c : r.fired)
      os << "<rect x=\"" << c * cell << "\" y=\"" << y << "\" width=\"" << cell
         << "\" height=\"" << cell << "\" fill=\"#d8d8d8\"/>\n";
    for (int c : r.peaks)
      os << "<rect x=\"" << c * cell << "\" y=\"" << y << "\" width=\"" << cell
         << "\" height=\"" << cell << "\" fill=\"#404040\"/>\n";
  }
  // running density column, drawn as a solid staircase
  os << "<polyline fill=\"none\" stroke=\"#c00000\" stroke-width=\"1\" points=\"";
  int run = 0;
  for (std::int64_t k = 0; k < n_max; ++k) {
    run = std::max(run, recs[static_cast<std::size_t>(k)].density_col);
    int y = static_cast<int>(k) * cell;
    int x = run * cell;
    os << x << ',' << y << ' ' << x << ',' << y + cell << ' ';
  }
  os << "\"/>\n";
  // extent of pi(k), dashed
  os << "<polyline fill=\"none\" stroke=\"#0050c0\" stroke-width=\"1\" "
        "stroke-dasharray=\"2,2\" points=\"";
  for (std::int64_t k = 0; k < n_max; ++k) {
    int y = static_cast<int>(k) * cell;
    int x = extent[static_cast<std::size_t>(k)] * cell;
    os << x << ',' << y << ' ' << x << ',' << y + cell << ' ';
  }
  os << "\"/>\n</svg>\n";
  return os.str();
}

}  // namespace kspm
