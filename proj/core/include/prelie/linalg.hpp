#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "prelie/rational.hpp"

namespace prelie {

using QVector = std::vector<Rational>;

/// Dense row-major matrix over Q. Everything downstream is small and sparse
/// enough that exact dense elimination is the simplest correct tool.
struct QMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Rational> data;

  QMatrix() = default;
  QMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c) {}
  Rational& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  const Rational& at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

/// In-place reduced row echelon form; returns the pivot columns in order.
std::vector<std::size_t> rref(QMatrix& m);

std::size_t rank(QMatrix m);

/// Basis of the null space; deterministic (free variables in column order,
/// free coordinate set to 1).
std::vector<QVector> kernel_basis(const QMatrix& m);

/// Particular solution of A x = b with free variables zero, or nullopt.
std::optional<QVector> solve(const QMatrix& a, const QVector& b);

/// A subspace maintained as reduced row vectors; supports membership tests
/// and residual reduction against the span.
class RowSpace {
 public:
  explicit RowSpace(std::size_t cols) : cols_(cols) {}

  /// Reduces v against the span; inserts the reduced vector when nonzero.
  /// Returns true when v enlarged the space.
  bool add(QVector v);
  bool contains(QVector v) const;
  QVector reduce(QVector v) const;
  std::size_t dim() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  const std::vector<QVector>& rows() const { return rows_; }

 private:
  std::size_t cols_;
  std::vector<QVector> rows_;           // in echelon form, pivot-normalized
  std::vector<std::size_t> pivot_col_;  // pivot column per row
};

}  // namespace prelie
