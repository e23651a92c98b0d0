#pragma once

#include <vector>

#include "liftkit/rational.hpp"

namespace liftkit {

/// Outcome of psd_check.
///
/// When psd, S = L diag(d) L^T with d > 0 and L unit lower triangular after
/// permuting rows into `pivots` order (L is n x rank, original row indexing).
/// Otherwise `witness` is a vector with witness^T S witness < 0.
struct PsdResult {
  bool psd = false;
  MatrixQ L;
  VectorQ d;
  std::vector<Index> pivots;
  VectorQ witness;
};

/// Exact positive-semidefiniteness test by symmetric 1x1-pivoted LDL^T.
/// Throws DimensionMismatch for non-square and PreconditionError for
/// non-symmetric input.
PsdResult psd_check(const MatrixQ& S);

/// Convenience wrapper returning only the verdict.
inline bool is_psd(const MatrixQ& S) { return psd_check(S).psd; }

/// w^T S w.
Rational quadratic_form(const MatrixQ& S, const VectorQ& w);

}  // namespace liftkit
