#include "test_util.hpp"

#include <algorithm>

namespace subint::testutil {

std::optional<QVec> solve_square(std::vector<QVec> a, QVec b) {
  const int n = static_cast<int>(b.size());
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (a[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) return std::nullopt;
    std::swap(a[col], a[piv]);
    std::swap(b[col], b[piv]);
    const Rational p = a[col][col];
    for (int c = 0; c < n; ++c) a[col][c] /= p;
    b[col] /= p;
    for (int r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col];
      for (int c = 0; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  return b;
}

std::vector<QVec> brute_force_vertices(const std::vector<HalfSpace>& hs,
                                       int dim) {
  const int m = static_cast<int>(hs.size());
  std::vector<QVec> out;
  std::vector<int> idx(dim);
  auto feasible = [&](const QVec& y) {
    for (const auto& h : hs)
      if (dot(h.normal, y) > h.offset) return false;
    return true;
  };
  // Iterate over all dim-subsets of rows.
  std::vector<int> comb(dim);
  for (int i = 0; i < dim; ++i) comb[i] = i;
  if (m < dim) return out;
  for (;;) {
    std::vector<QVec> a;
    QVec b;
    for (int i : comb) {
      a.push_back(hs[i].normal);
      b.push_back(hs[i].offset);
    }
    if (auto y = solve_square(a, b)) {
      if (feasible(*y)) out.push_back(*y);
    }
    int k = dim - 1;
    while (k >= 0 && comb[k] == m - dim + k) --k;
    if (k < 0) break;
    ++comb[k];
    for (int j = k + 1; j < dim; ++j) comb[j] = comb[j - 1] + 1;
  }
  std::sort(out.begin(), out.end(), lex_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<QVec> brute_force_rays(const std::vector<HalfSpace>& hs, int dim) {
  // Extreme rays of the recession cone are determined by dim-1 tight rows
  // plus a normalization row.
  const int m = static_cast<int>(hs.size());
  std::vector<QVec> out;
  auto in_cone = [&](const QVec& u) {
    for (const auto& h : hs)
      if (dot(h.normal, u) > 0) return false;
    return true;
  };
  const int k = dim - 1;
  std::vector<int> comb(k);
  for (int i = 0; i < k; ++i) comb[i] = i;
  auto try_subset = [&](const std::vector<int>& subset) {
    // Solve a_i . u = 0 plus each possible normalization e_j . u = +-1.
    for (int j = 0; j < dim; ++j) {
      for (int sgn : {1, -1}) {
        std::vector<QVec> a;
        QVec b;
        for (int i : subset) {
          a.push_back(hs[i].normal);
          b.push_back(0);
        }
        QVec norm = zero_vec(dim);
        norm[j] = sgn;
        a.push_back(norm);
        b.push_back(1);
        if (auto u = solve_square(a, b)) {
          if (!is_zero(*u) && in_cone(*u)) out.push_back(primitive(*u));
        }
      }
    }
  };
  if (k == 0) {
    try_subset({});
  } else if (m >= k) {
    for (;;) {
      try_subset(comb);
      int t = k - 1;
      while (t >= 0 && comb[t] == m - k + t) --t;
      if (t < 0) break;
      ++comb[t];
      for (int j = t + 1; j < k; ++j) comb[j] = comb[j - 1] + 1;
    }
  }
  std::sort(out.begin(), out.end(), lex_less);
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Polyhedron random_polytope(Rng& rng, int dim, int n_constraints) {
  // Random halfspaces around a box keep the set nonempty and bounded.
  QVec lo(dim), hi(dim);
  for (int i = 0; i < dim; ++i) {
    lo[i] = rng.rational(-4, 0, 4);
    hi[i] = lo[i] + rng.rational(1, 3, 4);
  }
  Polyhedron p = Polyhedron::box(lo, hi);
  std::vector<HalfSpace> hs = p.hrep();
  for (int c = 0; c < n_constraints; ++c) {
    HalfSpace h;
    h.normal = rng.vec(dim, -3, 3, 4);
    if (is_zero(h.normal)) continue;
    // Offset keeps the box center feasible.
    QVec center(dim);
    for (int i = 0; i < dim; ++i) center[i] = (lo[i] + hi[i]) / 2;
    h.offset = dot(h.normal, center) + rng.rational(0, 3, 4);
    hs.push_back(std::move(h));
  }
  return Polyhedron::from_hrep(dim, std::move(hs));
}

}  // namespace subint::testutil
