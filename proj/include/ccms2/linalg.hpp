#pragma once

#include <utility>
#include <vector>

#include "rat.hpp"

namespace ccms2 {

// Reduced row echelon form in place; returns the pivot columns (rank = count).
inline std::vector<int> rref(std::vector<std::vector<Rat>>& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  std::size_t rows = m.size(), cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t sel = r;
    while (sel < rows && m[sel][c] == 0) ++sel;
    if (sel == rows) continue;
    std::swap(m[sel], m[r]);
    Rat inv = m[r][c];
    for (auto& v : m[r]) v /= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rat f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(int(c));
    ++r;
  }
  return pivots;
}

inline int matrix_rank(std::vector<std::vector<Rat>> m) { return int(rref(m).size()); }

// Basis of { x in Q^cols : M x = 0 }; cols must be passed since M may be empty.
inline std::vector<std::vector<Rat>> null_space(std::vector<std::vector<Rat>> m, std::size_t cols) {
  std::vector<int> piv = rref(m);
  std::vector<bool> is_piv(cols, false);
  for (int c : piv) is_piv[std::size_t(c)] = true;
  std::vector<std::vector<Rat>> basis;
  for (std::size_t fc = 0; fc < cols; ++fc) {
    if (is_piv[fc]) continue;
    std::vector<Rat> v(cols, Rat(0));
    v[fc] = 1;
    for (std::size_t k = 0; k < piv.size(); ++k) v[std::size_t(piv[k])] = -m[k][fc];
    basis.push_back(std::move(v));
  }
  return basis;
}

// Dimension of the affine hull of a point list; -1 for the empty set.
inline int affine_rank(const std::vector<std::vector<Rat>>& pts) {
  if (pts.empty()) return -1;
  std::vector<std::vector<Rat>> diff;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    std::vector<Rat> d(pts[i].size());
    for (std::size_t j = 0; j < d.size(); ++j) d[j] = pts[i][j] - pts[0][j];
    diff.push_back(std::move(d));
  }
  if (diff.empty()) return 0;
  return int(rref(diff).size());
}

struct AffineEquality {
  std::vector<Rat> a;
  Rat b; // a.x = b
};

// All equalities satisfied by every listed point, as a basis: the null space
// of the rows (p | 1), split back into (a, b). Empty input yields the basis
// of the whole dual space, including the unsatisfiable 0 = 1.
inline std::vector<AffineEquality> affine_hull_equalities(const std::vector<std::vector<Rat>>& pts, std::size_t dim) {
  std::vector<std::vector<Rat>> m;
  m.reserve(pts.size());
  for (const auto& p : pts) {
    std::vector<Rat> row = p;
    row.push_back(Rat(1));
    m.push_back(std::move(row));
  }
  std::vector<AffineEquality> out;
  for (auto& v : null_space(std::move(m), dim + 1)) {
    AffineEquality e;
    e.b = -v[dim];
    v.pop_back();
    e.a = std::move(v);
    out.push_back(std::move(e));
  }
  return out;
}

// True when target.a x = target.b holds on the affine subspace the given
// equalities cut out: appending it must not raise the rank of (a | b) rows.
inline bool equality_implied(const std::vector<AffineEquality>& eqs, const AffineEquality& target) {
  std::vector<std::vector<Rat>> m;
  for (const auto& e : eqs) {
    std::vector<Rat> row = e.a;
    row.push_back(e.b);
    m.push_back(std::move(row));
  }
  int before = matrix_rank(m);
  std::vector<Rat> row = target.a;
  row.push_back(target.b);
  m.push_back(std::move(row));
  return matrix_rank(std::move(m)) == before;
}

} // namespace ccms2
