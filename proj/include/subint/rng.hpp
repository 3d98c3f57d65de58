#pragma once

#include <cstdint>

#include "subint/rational.hpp"

namespace subint {

// splitmix64: deterministic across platforms, which keeps generated
// instances and sampled witnesses byte-identical run to run.
class SplitMix {
 public:
  explicit SplitMix(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  int uniform(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(next() % (hi - lo + 1));
  }

  Rational rational(int lo, int hi, int max_den) {
    const int den = uniform(1, max_den);
    return frac(uniform(lo * den, hi * den), den);
  }

  QVec vec(int dim, int lo, int hi, int max_den) {
    QVec v(dim);
    for (auto& c : v) c = rational(lo, hi, max_den);
    return v;
  }

 private:
  std::uint64_t state_;
};

}  // namespace subint
