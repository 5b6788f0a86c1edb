#ifndef CARTANZ_LINALG_HPP
#define CARTANZ_LINALG_HPP

// Exact Gauss-Jordan routines over a field scalar. Pivoting only asks for a
// nonzero entry, so these are meant for exact types (Rational), not floats.

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cartanz/rational.hpp"

namespace cartanz::linalg {

template <class Scalar>
struct Echelon {
  DenseMatrix<Scalar> reduced;           // reduced row echelon form, zero rows trimmed
  std::vector<Eigen::Index> pivots;      // pivot column of each row of `reduced`

  Eigen::Index rank() const { return static_cast<Eigen::Index>(pivots.size()); }
};

template <class Scalar>
Echelon<Scalar> row_reduce(DenseMatrix<Scalar> m) {
  const Eigen::Index rows = m.rows(), cols = m.cols();
  std::vector<Eigen::Index> pivots;
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < cols && r < rows; ++c) {
    Eigen::Index p = r;
    while (p < rows && m(p, c) == Scalar(0)) ++p;
    if (p == rows) continue;
    if (p != r) m.row(p).swap(m.row(r));
    const Scalar inv = Scalar(1) / m(r, c);
    for (Eigen::Index k = c; k < cols; ++k) {
      if (m(r, k) != Scalar(0)) m(r, k) *= inv;
    }
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == r || m(i, c) == Scalar(0)) continue;
      const Scalar f = m(i, c);
      for (Eigen::Index k = c; k < cols; ++k) {
        if (m(r, k) != Scalar(0)) m(i, k) -= f * m(r, k);
      }
    }
    pivots.push_back(c);
    ++r;
  }
  Echelon<Scalar> e;
  e.reduced = m.topRows(r);
  e.pivots = std::move(pivots);
  return e;
}

template <class Scalar>
Eigen::Index rank(const DenseMatrix<Scalar>& m) {
  return row_reduce(m).rank();
}

/// Columns of the result span the right kernel of m (standard free-variable basis).
template <class Scalar>
DenseMatrix<Scalar> kernel_basis(const DenseMatrix<Scalar>& m) {
  const auto e = row_reduce(m);
  const Eigen::Index cols = m.cols();
  std::vector<bool> is_pivot(static_cast<std::size_t>(cols), false);
  for (auto p : e.pivots) is_pivot[static_cast<std::size_t>(p)] = true;
  std::vector<Eigen::Index> free;
  for (Eigen::Index c = 0; c < cols; ++c) {
    if (!is_pivot[static_cast<std::size_t>(c)]) free.push_back(c);
  }
  DenseMatrix<Scalar> k = DenseMatrix<Scalar>::Zero(cols, static_cast<Eigen::Index>(free.size()));
  for (std::size_t f = 0; f < free.size(); ++f) {
    const auto col = static_cast<Eigen::Index>(f);
    k(free[f], col) = Scalar(1);
    for (Eigen::Index r = 0; r < e.rank(); ++r) {
      k(e.pivots[static_cast<std::size_t>(r)], col) = -e.reduced(r, free[f]);
    }
  }
  return k;
}

/// Solves m x = v; nullopt when inconsistent. Free variables are set to zero.
template <class Scalar>
std::optional<DenseVector<Scalar>> solve(const DenseMatrix<Scalar>& m, const DenseVector<Scalar>& v) {
  DenseMatrix<Scalar> aug(m.rows(), m.cols() + 1);
  aug << m, v;
  const auto e = row_reduce(aug);
  DenseVector<Scalar> x = DenseVector<Scalar>::Zero(m.cols());
  for (Eigen::Index r = 0; r < e.rank(); ++r) {
    const auto p = e.pivots[static_cast<std::size_t>(r)];
    if (p == m.cols()) return std::nullopt;
    x(p) = e.reduced(r, m.cols());
  }
  return x;
}

/// Coordinates with respect to a fixed linearly independent family (the
/// columns of `basis`). A square invertible row-subsystem is chosen once.
template <class Scalar>
class SpanSolver {
 public:
  SpanSolver() = default;

  explicit SpanSolver(DenseMatrix<Scalar> basis) : basis_(std::move(basis)) {
    const auto d = basis_.cols();
    if (d == 0) return;
    // Pivot columns of basis^T are rows of basis giving an invertible block.
    const auto e = row_reduce(DenseMatrix<Scalar>(basis_.transpose()));
    if (e.rank() != d) throw std::invalid_argument("SpanSolver: basis vectors are linearly dependent");
    rows_ = e.pivots;
    DenseMatrix<Scalar> block(d, d);
    for (Eigen::Index i = 0; i < d; ++i) block.row(i) = basis_.row(rows_[static_cast<std::size_t>(i)]);
    inverse_ = invert(block);
  }

  Eigen::Index dimension() const { return basis_.cols(); }
  const DenseMatrix<Scalar>& basis() const { return basis_; }

  std::optional<DenseVector<Scalar>> coordinates(const DenseVector<Scalar>& v) const {
    const auto d = basis_.cols();
    DenseVector<Scalar> c = DenseVector<Scalar>::Zero(d);
    for (Eigen::Index i = 0; i < d; ++i) {
      const Scalar& vi = v(rows_[static_cast<std::size_t>(i)]);
      if (vi == Scalar(0)) continue;
      for (Eigen::Index j = 0; j < d; ++j) {
        if (inverse_(j, i) != Scalar(0)) c(j) += inverse_(j, i) * vi;
      }
    }
    // Membership check on every row.
    for (Eigen::Index r = 0; r < basis_.rows(); ++r) {
      Scalar acc(0);
      for (Eigen::Index j = 0; j < d; ++j) {
        if (c(j) != Scalar(0) && basis_(r, j) != Scalar(0)) acc += basis_(r, j) * c(j);
      }
      if (acc != v(r)) return std::nullopt;
    }
    return c;
  }

  static DenseMatrix<Scalar> invert(const DenseMatrix<Scalar>& m) {
    const auto n = m.rows();
    DenseMatrix<Scalar> aug(n, 2 * n);
    aug << m, DenseMatrix<Scalar>::Identity(n, n);
    const auto e = row_reduce(aug);
    if (e.rank() < n || e.pivots[static_cast<std::size_t>(n - 1)] >= n) {
      throw std::invalid_argument("SpanSolver: singular block");
    }
    return e.reduced.rightCols(n);
  }

 private:
  DenseMatrix<Scalar> basis_;
  std::vector<Eigen::Index> rows_;
  DenseMatrix<Scalar> inverse_;
};

/// Scales v to a primitive integer vector whose first nonzero entry is positive.
QVector primitive_integer(const QVector& v);

}  // namespace cartanz::linalg

#endif
