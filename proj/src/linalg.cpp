#include "shatter/linalg.hpp"

#include <stdexcept>
#include <utility>

namespace shatter {

namespace {

// Reduces `a` in place to reduced row echelon form; returns pivot columns.
std::vector<std::size_t> reduce(Matrix& a, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols && row < a.size(); ++col) {
    std::size_t pick = row;
    while (pick < a.size() && a[pick][col] == 0) ++pick;
    if (pick == a.size()) continue;
    std::swap(a[row], a[pick]);
    const Rational inv = 1 / a[row][col];
    for (std::size_t c = col; c < cols; ++c) a[row][c] *= inv;
    for (std::size_t r = 0; r < a.size(); ++r) {
      if (r == row || a[r][col] == 0) continue;
      const Rational f = a[r][col];
      for (std::size_t c = col; c < cols; ++c) a[r][c] -= f * a[row][c];
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::size_t width(const Matrix& a) {
  const std::size_t cols = a.empty() ? 0 : a.front().size();
  for (const auto& r : a) {
    if (r.size() != cols) throw std::invalid_argument("ragged matrix");
  }
  return cols;
}

}  // namespace

std::size_t rank(Matrix rows) {
  const std::size_t cols = width(rows);
  return reduce(rows, cols).size();
}

std::vector<Vector> null_space(Matrix a, std::size_t cols) {
  if (!a.empty() && width(a) != cols) throw std::invalid_argument("column count mismatch");
  const auto pivots = reduce(a, cols);
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t p : pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vector v(cols, Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

Rational dot(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace shatter
