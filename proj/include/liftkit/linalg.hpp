#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "liftkit/rational.hpp"

namespace liftkit {

/// Reduced row echelon form with the list of pivot columns.
struct Rref {
  MatrixQ R;
  std::vector<Index> pivots;
};

template <typename Derived>
Rref rref(const Eigen::MatrixBase<Derived>& m) {
  Rref out{m, {}};
  MatrixQ& R = out.R;
  Index row = 0;
  for (Index col = 0; col < R.cols() && row < R.rows(); ++col) {
    Index p = row;
    while (p < R.rows() && R(p, col).is_zero()) ++p;
    if (p == R.rows()) continue;
    R.row(p).swap(R.row(row));
    const Rational inv = Rational(1) / R(row, col);
    for (Index j = col; j < R.cols(); ++j) R(row, j) *= inv;
    for (Index i = 0; i < R.rows(); ++i) {
      if (i == row || R(i, col).is_zero()) continue;
      const Rational f = R(i, col);
      for (Index j = col; j < R.cols(); ++j) R(i, j) -= f * R(row, j);
    }
    out.pivots.push_back(col);
    ++row;
  }
  return out;
}

template <typename Derived>
Index rank(const Eigen::MatrixBase<Derived>& m) {
  return static_cast<Index>(rref(m).pivots.size());
}

/// Basis of {x : M x = 0}, one column per free variable.
template <typename Derived>
MatrixQ nullspace(const Eigen::MatrixBase<Derived>& m) {
  const Rref r = rref(m);
  const Index n = m.cols();
  std::vector<bool> is_pivot(n, false);
  for (Index p : r.pivots) is_pivot[p] = true;
  MatrixQ basis = MatrixQ::Zero(n, n - static_cast<Index>(r.pivots.size()));
  Index k = 0;
  for (Index f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    basis(f, k) = 1;
    for (std::size_t i = 0; i < r.pivots.size(); ++i) basis(r.pivots[i], k) = -r.R(i, f);
    ++k;
  }
  return basis;
}

/// One solution of M x = b, or nothing when the system is inconsistent.
template <typename DerivedM, typename DerivedB>
std::optional<VectorQ> solve_affine(const Eigen::MatrixBase<DerivedM>& m,
                                    const Eigen::MatrixBase<DerivedB>& b) {
  MatrixQ aug(m.rows(), m.cols() + 1);
  aug << m, b;
  const Rref r = rref(aug);
  if (!r.pivots.empty() && r.pivots.back() == m.cols()) return std::nullopt;
  VectorQ x = VectorQ::Zero(m.cols());
  for (std::size_t i = 0; i < r.pivots.size(); ++i) x(r.pivots[i]) = r.R(i, m.cols());
  return x;
}

/// Affine hull of the columns of `points`, as {x : E x = e}. E has full row
/// rank and is in reduced row echelon form, so the description is canonical.
struct AffineHull {
  MatrixQ E;
  VectorQ e;
  Index dim = -1;
};

template <typename Derived>
AffineHull affine_hull(const Eigen::MatrixBase<Derived>& points) {
  const Index n = points.rows(), k = points.cols();
  AffineHull h;
  if (k == 0) return h;
  // Rows (x_j, -1): vectors (a, beta) with a.x_j = beta for all j form the nullspace.
  MatrixQ lifted(k, n + 1);
  for (Index j = 0; j < k; ++j) {
    for (Index i = 0; i < n; ++i) lifted(j, i) = points(i, j);
    lifted(j, n) = -1;
  }
  const MatrixQ ns = nullspace(lifted);
  const Rref r = rref(MatrixQ(ns.transpose()));
  const Index eqs = static_cast<Index>(r.pivots.size());
  h.E = r.R.topLeftCorner(eqs, n);
  h.e = r.R.block(0, n, eqs, 1);
  h.dim = n - eqs;
  return h;
}

template <typename Derived>
bool is_zero(const Eigen::MatrixBase<Derived>& m) {
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j)
      if (!m(i, j).is_zero()) return false;
  return true;
}

/// Shape-aware exact equality (Eigen's operator== requires equal shapes).
template <typename DerivedA, typename DerivedB>
bool equal(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && a == b;
}

template <typename Derived>
bool is_symmetric(const Eigen::MatrixBase<Derived>& m) {
  if (m.rows() != m.cols()) return false;
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = i + 1; j < m.cols(); ++j)
      if (m(i, j) != m(j, i)) return false;
  return true;
}

/// Exact product; avoids Eigen's blocked kernels, which assume cheap scalars.
template <typename DerivedA, typename DerivedB>
MatrixQ mul(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  MatrixQ out = MatrixQ::Zero(a.rows(), b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index k = 0; k < a.cols(); ++k) {
      if (a(i, k).is_zero()) continue;
      for (Index j = 0; j < b.cols(); ++j)
        if (!b(k, j).is_zero()) out(i, j) += a(i, k) * b(k, j);
    }
  return out;
}

template <typename DerivedA, typename DerivedB>
Rational dot(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  Rational s = 0;
  for (Index i = 0; i < a.size(); ++i)
    if (!a(i).is_zero() && !b(i).is_zero()) s += a(i) * b(i);
  return s;
}

/// Trace inner product tr(A B) of two symmetric matrices.
template <typename DerivedA, typename DerivedB>
Rational trace_product(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  Rational s = 0;
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      if (!a(i, j).is_zero() && !b(j, i).is_zero()) s += a(i, j) * b(j, i);
  return s;
}

/// Scales v by a positive rational so its entries are coprime integers.
VectorQ primitive_integer(const VectorQ& v);

}  // namespace liftkit
