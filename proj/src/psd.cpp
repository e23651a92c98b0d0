#include "liftkit/psd.hpp"

#include "liftkit/error.hpp"
#include "liftkit/linalg.hpp"

namespace liftkit {

Rational quadratic_form(const MatrixQ& S, const VectorQ& w) {
  Rational s = 0;
  for (Index i = 0; i < S.rows(); ++i) {
    if (w(i).is_zero()) continue;
    for (Index j = 0; j < S.cols(); ++j)
      if (!w(j).is_zero() && !S(i, j).is_zero()) s += w(i) * S(i, j) * w(j);
  }
  return s;
}

PsdResult psd_check(const MatrixQ& S) {
  if (S.rows() != S.cols())
    throw DimensionMismatch("psd_check: matrix is " + std::to_string(S.rows()) + "x" + std::to_string(S.cols()));
  if (!is_symmetric(S)) throw PreconditionError("psd_check: matrix is not symmetric");
  const Index n = S.rows();
  MatrixQ W = S;
  std::vector<bool> done(n, false);
  PsdResult out;
  std::vector<VectorQ> cols;
  std::vector<Rational> ds;

  auto finish_witness = [&](VectorQ v) {
    // Back-substitute eliminated pivots so that v^T S v equals the Schur value.
    for (Index k = static_cast<Index>(out.pivots.size()) - 1; k >= 0; --k) {
      const Index p = out.pivots[k];
      Rational s = 0;
      for (Index i = 0; i < n; ++i)
        if (i != p && !cols[k](i).is_zero() && !v(i).is_zero()) s += cols[k](i) * v(i);
      v(p) = -s;
    }
    out.psd = false;
    out.witness = std::move(v);
    return out;
  };

  while (true) {
    Index piv = -1;
    for (Index i = 0; i < n; ++i) {
      if (done[i]) continue;
      if (W(i, i).sign() < 0) {
        VectorQ v = VectorQ::Zero(n);
        v(i) = 1;
        return finish_witness(v);
      }
      if (piv < 0 && W(i, i).sign() > 0) piv = i;
    }
    if (piv < 0) {
      // Remaining diagonal is zero; any nonzero off-diagonal entry breaks psd.
      for (Index i = 0; i < n; ++i) {
        if (done[i]) continue;
        for (Index j = i + 1; j < n; ++j) {
          if (done[j] || W(i, j).is_zero()) continue;
          VectorQ v = VectorQ::Zero(n);
          v(i) = 1;
          v(j) = W(i, j).sign() > 0 ? -1 : 1;
          return finish_witness(v);
        }
      }
      break;
    }
    const Rational d = W(piv, piv);
    VectorQ col = VectorQ::Zero(n);
    for (Index i = 0; i < n; ++i)
      if (!done[i]) col(i) = W(i, piv) / d;
    done[piv] = true;
    for (Index i = 0; i < n; ++i) {
      if (done[i] || col(i).is_zero()) continue;
      for (Index j = 0; j < n; ++j)
        if (!done[j] && !col(j).is_zero()) W(i, j) -= col(i) * d * col(j);
    }
    out.pivots.push_back(piv);
    cols.push_back(std::move(col));
    ds.push_back(d);
  }
  out.psd = true;
  const Index r = static_cast<Index>(cols.size());
  out.L = MatrixQ::Zero(n, r);
  out.d = VectorQ(r);
  for (Index k = 0; k < r; ++k) {
    out.L.col(k) = cols[k];
    out.d(k) = ds[k];
  }
  return out;
}

}  // namespace liftkit
