// Timing comparison of the plain avalanche simulation against the peak-chain
// fast path, with a final fixed-point equality check.

#include <chrono>
#include <cstdlib>
#include <iostream>

#include "kspm/avalanche.hpp"

int main(int argc, char** argv) {
  int d = argc > 1 ? std::atoi(argv[1]) : 3;
  std::int64_t n = argc > 2 ? std::atoll(argv[2]) : 100000;

  using clock = std::chrono::steady_clock;

  auto t0 = clock::now();
  kspm::AvalancheSimulator fast(d);
  for (std::int64_t k = 0; k < n; ++k) fast.next_fast();
  auto t1 = clock::now();
  kspm::AvalancheSimulator naive(d);
  for (std::int64_t k = 0; k < n; ++k) naive.next();
  auto t2 = clock::now();

  auto ms = [](auto a, auto b) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(b - a).count();
  };
  std::cout << "D=" << d << " N=" << n << "\n";
  std::cout << "fast path:  " << ms(t0, t1) << " ms\n";
  std::cout << "naive path: " << ms(t1, t2) << " ms\n";
  if (!(fast.fixed_point() == naive.fixed_point())) {
    std::cout << "fixed points differ!\n";
    return 1;
  }
  std::cout << "fixed points agree\n";
  return 0;
}
