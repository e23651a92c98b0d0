// Independent reference computations used only by the tests.
#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "liftkit/rational.hpp"

namespace oracle {

using liftkit::Index;
using liftkit::MatrixQ;
using liftkit::Rational;
using liftkit::VectorQ;

// Laplace expansion along the first row.
inline Rational cofactor_det(const MatrixQ& m) {
  const Index n = m.rows();
  if (n == 0) return 1;
  if (n == 1) return m(0, 0);
  Rational det = 0;
  for (Index j = 0; j < n; ++j) {
    if (m(0, j).is_zero()) continue;
    MatrixQ minor(n - 1, n - 1);
    for (Index i = 1; i < n; ++i)
      for (Index k = 0, c = 0; k < n; ++k)
        if (k != j) minor(i - 1, c++) = m(i, k);
    const Rational term = m(0, j) * cofactor_det(minor);
    det += (j % 2 == 0) ? term : -term;
  }
  return det;
}

inline MatrixQ principal(const MatrixQ& m, const std::vector<Index>& idx) {
  MatrixQ out(idx.size(), idx.size());
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = 0; b < idx.size(); ++b) out(a, b) = m(idx[a], idx[b]);
  return out;
}

// A symmetric matrix is psd iff every principal minor is nonnegative.
inline bool psd_by_minors(const MatrixQ& m) {
  const Index n = m.rows();
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<Index> idx;
    for (Index i = 0; i < n; ++i)
      if (mask & (1u << i)) idx.push_back(i);
    if (cofactor_det(principal(m, idx)).sign() < 0) return false;
  }
  return true;
}

// Rank as the size of the largest nonsingular square submatrix.
inline Index rank_by_minors(const MatrixQ& m) {
  const Index r = m.rows(), c = m.cols();
  Index best = 0;
  for (unsigned rm = 1; rm < (1u << r); ++rm) {
    const int k = __builtin_popcount(rm);
    if (k <= best) continue;
    std::vector<Index> rows;
    for (Index i = 0; i < r; ++i)
      if (rm & (1u << i)) rows.push_back(i);
    for (unsigned cm = 1; cm < (1u << c); ++cm) {
      if (__builtin_popcount(cm) != k) continue;
      std::vector<Index> cols;
      for (Index j = 0; j < c; ++j)
        if (cm & (1u << j)) cols.push_back(j);
      MatrixQ sub(k, k);
      for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) sub(a, b) = m(rows[a], cols[b]);
      if (!cofactor_det(sub).is_zero()) {
        best = k;
        break;
      }
    }
  }
  return best;
}

// Solves a square nonsingular system by Cramer's rule.
inline VectorQ cramer(const MatrixQ& a, const VectorQ& b) {
  const Rational det = cofactor_det(a);
  VectorQ x(a.cols());
  for (Index j = 0; j < a.cols(); ++j) {
    MatrixQ aj = a;
    aj.col(j) = b;
    x(j) = cofactor_det(aj) / det;
  }
  return x;
}

// max c.x over {A x <= b} by enumerating basic solutions; assumes the
// feasible region is bounded. Empty result means infeasible.
inline std::optional<Rational> brute_lp_max(const MatrixQ& A, const VectorQ& b, const VectorQ& c) {
  const Index m = A.rows(), n = A.cols();
  std::optional<Rational> best;
  std::vector<Index> pick(n);
  std::vector<bool> sel(m, false);
  std::fill(sel.begin(), sel.begin() + std::min(m, n), true);
  if (m < n) return std::nullopt;
  std::sort(sel.begin(), sel.end(), std::greater<bool>());
  do {
    MatrixQ sub(n, n);
    VectorQ rhs(n);
    for (Index i = 0, k = 0; i < m; ++i)
      if (sel[i]) {
        sub.row(k) = A.row(i);
        rhs(k++) = b(i);
      }
    if (cofactor_det(sub).is_zero()) continue;
    const VectorQ x = cramer(sub, rhs);
    bool ok = true;
    for (Index i = 0; i < m && ok; ++i) {
      Rational v = 0;
      for (Index j = 0; j < n; ++j) v += A(i, j) * x(j);
      ok = v <= b(i);
    }
    if (!ok) continue;
    Rational val = 0;
    for (Index j = 0; j < n; ++j) val += c(j) * x(j);
    if (!best || val > *best) best = val;
  } while (std::prev_permutation(sel.begin(), sel.end()));
  return best;
}

inline Rational random_rational(std::mt19937_64& rng, int num_range, int max_den) {
  std::uniform_int_distribution<int> num(-num_range, num_range), den(1, max_den);
  return Rational(mpz_class(num(rng)), mpz_class(den(rng)));
}

inline MatrixQ random_matrix(std::mt19937_64& rng, Index r, Index c, int num_range, int max_den) {
  MatrixQ m(r, c);
  for (Index i = 0; i < r; ++i)
    for (Index j = 0; j < c; ++j) m(i, j) = random_rational(rng, num_range, max_den);
  return m;
}

}  // namespace oracle
