#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "kspm/render.hpp"

using namespace kspm;

TEST_CASE("ascii profile of a small pile") {
  HeightDiffConfig cfg(3, {2, 1});
  CHECK(ascii_profile(cfg) ==
        "# \n"
        "# \n"
        "##\n"
        "--\n");
}

TEST_CASE("ascii profile scales tall piles") {
  HeightDiffConfig cfg(3, {100});
  std::string s = ascii_profile(cfg, 10);
  CHECK(s.rfind("(one row = 10 grains)", 0) == 0);
}

TEST_CASE("avalanche panels") {
  HeightDiffConfig prev = pi_of_n(3, 24);
  auto [rec, fp] = nth_avalanche(3, 25, prev);
  std::string s = ascii_avalanche_panels(prev, rec);
  CHECK(s.find("before grain 25:") != std::string::npos);
  CHECK(s.find("grain added:") != std::string::npos);
  CHECK(s.find("fire 0:") != std::string::npos);
  CHECK(s.find("fire 4:") != std::string::npos);
}

TEST_CASE("svg raster output") {
  std::string one = svg_raster(3, 40);
  CHECK(one == svg_raster(3, 40));  // byte-stable
  CHECK(one.rfind("<svg ", 0) == 0);
  CHECK(one.find("</svg>") != std::string::npos);
  CHECK(one.find("stroke-dasharray") != std::string::npos);
  CHECK(svg_raster(4, 1).find("<svg ") == 0);
}
