#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "subint/polyhedron.hpp"
#include "subint/rational.hpp"

namespace subint::testutil {

// Deterministic cross-platform generator for property tests.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  int uniform(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(next() % (hi - lo + 1));
  }

  Rational rational(int lo, int hi, int max_den) {
    const int den = uniform(1, max_den);
    Rational q(uniform(lo * den, hi * den), den);
    q.canonicalize();
    return q;
  }

  QVec vec(int dim, int lo, int hi, int max_den) {
    QVec v(dim);
    for (auto& c : v) c = rational(lo, hi, max_den);
    return v;
  }

 private:
  std::uint64_t state_;
};

// Solve the square system given by rows (a_i, b_i): a_i . y = b_i.
// Returns nullopt when singular.
std::optional<QVec> solve_square(std::vector<QVec> a, QVec b);

// All vertices of {y : A y <= b} by enumeration of d-subsets of rows.
std::vector<QVec> brute_force_vertices(const std::vector<HalfSpace>& hs,
                                       int dim);

// All extreme-ray candidates of {u : A u <= 0} by enumeration of
// (d-1)-subsets of rows, primitive-normalized, feasibility-filtered.
std::vector<QVec> brute_force_rays(const std::vector<HalfSpace>& hs, int dim);

Polyhedron random_polytope(Rng& rng, int dim, int n_constraints);

}  // namespace subint::testutil
