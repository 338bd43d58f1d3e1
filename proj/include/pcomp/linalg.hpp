#ifndef PCOMP_LINALG_HPP
#define PCOMP_LINALG_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include <pcomp/field.hpp>

namespace pcomp {

using Matrix = std::vector<std::vector<u64>>;

// Row-reduces m in place, returns the rank.
inline std::size_t row_reduce(const FieldCtx& f, Matrix& m) {
  if (m.empty()) return 0;
  const std::size_t rows = m.size(), cols = m[0].size();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot][col] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[rank], m[pivot]);
    const u64 pinv = f.inv(m[rank][col]);
    for (std::size_t j = col; j < cols; ++j)
      m[rank][j] = f.mul(m[rank][j], pinv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == rank || m[i][col] == 0) continue;
      const u64 factor = m[i][col];
      for (std::size_t j = col; j < cols; ++j)
        m[i][j] = f.sub(m[i][j], f.mul(factor, m[rank][j]));
    }
    ++rank;
  }
  return rank;
}

inline std::size_t rank(const FieldCtx& f, Matrix m) {
  return row_reduce(f, m);
}

// Solves A x = b; returns any solution (free variables set to zero),
// or nullopt if the system is inconsistent.
inline std::optional<std::vector<u64>> solve(const FieldCtx& f, Matrix a,
                                             const std::vector<u64>& b) {
  const std::size_t rows = a.size();
  if (rows == 0) return std::vector<u64>{};
  const std::size_t cols = a[0].size();
  for (std::size_t i = 0; i < rows; ++i) a[i].push_back(b[i]);
  row_reduce(f, a);
  std::vector<u64> x(cols, 0);
  for (std::size_t i = 0; i < rows; ++i) {
    std::size_t lead = 0;
    while (lead < cols && a[i][lead] == 0) ++lead;
    if (lead == cols) {
      if (a[i][cols] != 0) return std::nullopt;
      continue;
    }
    // Reduced row echelon form: row i reads x_lead + sum(free) = rhs.
    u64 v = a[i][cols];
    for (std::size_t j = lead + 1; j < cols; ++j)
      v = f.sub(v, f.mul(a[i][j], x[j]));
    x[lead] = v;
  }
  return x;
}

}  // namespace pcomp

#endif
