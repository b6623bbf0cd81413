#include "prelie/linalg.hpp"

#include <algorithm>

namespace prelie {

std::vector<std::size_t> rref(QMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols && row < m.rows; ++col) {
    std::size_t sel = row;
    while (sel < m.rows && m.at(sel, col).is_zero()) ++sel;
    if (sel == m.rows) continue;
    if (sel != row)
      for (std::size_t j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(row, j));
    Rational inv = m.at(row, col);
    for (std::size_t j = col; j < m.cols; ++j) m.at(row, j) /= inv;
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == row || m.at(i, col).is_zero()) continue;
      Rational factor = m.at(i, col);
      for (std::size_t j = col; j < m.cols; ++j) m.at(i, j) -= factor * m.at(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::size_t rank(QMatrix m) { return rref(m).size(); }

std::vector<QVector> kernel_basis(const QMatrix& m_in) {
  QMatrix m = m_in;
  std::vector<std::size_t> pivots = rref(m);
  std::vector<bool> is_pivot(m.cols, false);
  for (std::size_t p : pivots) is_pivot[p] = true;
  std::vector<QVector> basis;
  for (std::size_t free_col = 0; free_col < m.cols; ++free_col) {
    if (is_pivot[free_col]) continue;
    QVector v(m.cols);
    v[free_col] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m.at(r, free_col);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<QVector> solve(const QMatrix& a, const QVector& b) {
  QMatrix aug(a.rows, a.cols + 1);
  for (std::size_t i = 0; i < a.rows; ++i) {
    for (std::size_t j = 0; j < a.cols; ++j) aug.at(i, j) = a.at(i, j);
    aug.at(i, a.cols) = b[i];
  }
  std::vector<std::size_t> pivots = rref(aug);
  if (!pivots.empty() && pivots.back() == a.cols) return std::nullopt;  // inconsistent
  QVector x(a.cols);
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(r, a.cols);
  return x;
}

bool RowSpace::add(QVector v) {
  v = reduce(std::move(v));
  std::size_t p = 0;
  while (p < cols_ && v[p].is_zero()) ++p;
  if (p == cols_) return false;
  Rational inv = v[p];
  for (auto& x : v) x /= inv;
  // Back-substitute into existing rows to keep reduced form.
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    Rational c = rows_[r][p];
    if (c.is_zero()) continue;
    for (std::size_t j = 0; j < cols_; ++j) rows_[r][j] -= c * v[j];
  }
  auto insert_at = std::lower_bound(pivot_col_.begin(), pivot_col_.end(), p);
  std::size_t idx = static_cast<std::size_t>(insert_at - pivot_col_.begin());
  pivot_col_.insert(insert_at, p);
  rows_.insert(rows_.begin() + idx, std::move(v));
  return true;
}

QVector RowSpace::reduce(QVector v) const {
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    Rational c = v[pivot_col_[r]];
    if (c.is_zero()) continue;
    for (std::size_t j = 0; j < cols_; ++j) v[j] -= c * rows_[r][j];
  }
  return v;
}

bool RowSpace::contains(QVector v) const {
  v = reduce(std::move(v));
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x.is_zero(); });
}

}  // namespace prelie
