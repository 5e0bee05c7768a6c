#include "folab/linalg.hpp"

#include "folab/errors.hpp"

namespace folab {

std::vector<int> row_reduce(Matrix& m, int ncols) {
  std::vector<int> pivots;
  size_t row = 0;
  for (int col = 0; col < ncols && row < m.size(); ++col) {
    size_t sel = row;
    while (sel < m.size() && m[sel][static_cast<size_t>(col)].is_zero()) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[row], m[sel]);
    const FieldElement inv = m[row][static_cast<size_t>(col)].inverse();
    for (auto& x : m[row]) x *= inv;
    for (size_t r = 0; r < m.size(); ++r) {
      if (r == row || m[r][static_cast<size_t>(col)].is_zero()) continue;
      const FieldElement f = m[r][static_cast<size_t>(col)];
      for (size_t c = static_cast<size_t>(col); c < m[r].size(); ++c)
        if (!m[row][c].is_zero()) m[r][c] -= f * m[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

int rank(Matrix m, int ncols) { return static_cast<int>(row_reduce(m, ncols).size()); }

std::vector<Vector> nullspace(Matrix m, int ncols) {
  auto pivots = row_reduce(m, ncols);
  std::vector<bool> is_pivot(static_cast<size_t>(ncols), false);
  for (int p : pivots) is_pivot[static_cast<size_t>(p)] = true;
  std::vector<Vector> basis;
  for (int free = 0; free < ncols; ++free) {
    if (is_pivot[static_cast<size_t>(free)]) continue;
    Vector v(static_cast<size_t>(ncols));
    v[static_cast<size_t>(free)] = FieldElement(1);
    for (size_t r = 0; r < pivots.size(); ++r) v[static_cast<size_t>(pivots[r])] = -m[r][static_cast<size_t>(free)];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vector> solve(Matrix m, const Vector& b, int ncols) {
  if (m.size() != b.size()) throw DomainError("solve: row count mismatch");
  for (size_t r = 0; r < m.size(); ++r) {
    m[r].resize(static_cast<size_t>(ncols));
    m[r].push_back(b[r]);
  }
  auto pivots = row_reduce(m, ncols + 1);
  if (!pivots.empty() && pivots.back() == ncols) return std::nullopt;
  Vector x(static_cast<size_t>(ncols));
  for (size_t r = 0; r < pivots.size(); ++r) x[static_cast<size_t>(pivots[r])] = m[r][static_cast<size_t>(ncols)];
  return x;
}

}  // namespace folab
