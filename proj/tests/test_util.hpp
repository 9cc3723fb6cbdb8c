#ifndef CMVWEYL_TEST_UTIL_HPP
#define CMVWEYL_TEST_UTIL_HPP

#include <complex>
#include <random>
#include <vector>

#include "cmvweyl/types.hpp"

namespace cmvtest {

using cmv::Complex;

inline std::vector<Complex> sample_annulus(std::uint64_t seed, int n,
                                           double r_lo, double r_hi) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> ur(r_lo, r_hi);
  std::uniform_real_distribution<double> ua(0.0, cmv::kTwoPi);
  std::vector<Complex> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out.push_back(std::polar(ur(gen), ua(gen)));
  return out;
}

inline std::vector<Complex> sample_disk(std::uint64_t seed, int n,
                                        double r_max = 0.95) {
  return sample_annulus(seed, n, 0.05, r_max);
}

}  // namespace cmvtest

#endif
