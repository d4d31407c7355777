#ifndef CHARMOMENT_TEST_HELPERS_HPP
#define CHARMOMENT_TEST_HELPERS_HPP

#include <cmath>
#include <complex>
#include <random>

#include "charmoment/kernel.hpp"

namespace cmtest {

inline double cdist(charmoment::cplx a, charmoment::cplx b) { return std::abs(a - b); }

inline bool close_rel(charmoment::cplx a, charmoment::cplx b, double rel, double abs = 0.0) {
  return cdist(a, b) <= std::max(abs, rel * std::max(std::abs(a), std::abs(b)));
}

// deterministic generator for property-style sweeps
inline std::mt19937& rng() {
  static std::mt19937 gen(0x5eed1234u);
  return gen;
}

inline double uniform(double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  return d(rng());
}

}  // namespace cmtest

#endif
