#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "liftkit/polytope.hpp"

namespace liftkit {

/// S = A^T B with A (m x facets) and B (m x vertices) entrywise nonnegative.
struct NonnegFactorization {
  MatrixQ A;
  MatrixQ B;

  Index size() const { return A.rows(); }
};

/// Trace-inner-product factorization S(i,j) = <A_j, B_i> by psd matrices:
/// one factor per vertex (column) and one per facet (row).
struct PsdFactorization {
  Index m = 0;
  std::vector<MatrixQ> vertex_factors;
  std::vector<MatrixQ> facet_factors;
};

/// Polyhedral lift: Q = {w : A w <= b, E w = e} with projection x = proj w.
struct PolyLift {
  HRep h;
  MatrixQ proj;

  Index lifted_dim() const { return proj.cols(); }
  Index target_dim() const { return proj.rows(); }
};

/// Result of a verification; `message` locates the first failure.
struct Check {
  bool ok = true;
  Index row = -1;
  Index col = -1;
  std::string message;

  explicit operator bool() const { return ok; }
  static Check fail(std::string msg, Index r = -1, Index c = -1) { return {false, r, c, std::move(msg)}; }
};

/// Exact test of A^T B == S and A, B >= 0. Throws DimensionMismatch.
Check verify_nonneg_factorization(const MatrixQ& S, const NonnegFactorization& F);

struct NmfOptions {
  Index restarts = 64;
  Index iterations = 20000;
  mpz_class max_den = mpz_class(1) << 16;
  std::uint64_t seed = 1;
  int threads = 1;
};

/// Multiplicative-update search in doubles, then continued-fraction rounding
/// and exact completion of the other factor by LP. Only exactly verified
/// factorizations are returned. For m >= rows the trivial A = I, B = S is used.
std::optional<NonnegFactorization> nmf_search(const MatrixQ& S, Index m, const NmfOptions& opt = {});

/// The lift {(x, y) : b_i - h_i.x = a_i.y, y >= 0} (plus the affine hull of p),
/// with y-coordinates whose A-row is zero removed. Throws PreconditionError if
/// F does not factor slack_matrix(p).
PolyLift lift_from_factorization(const Polytope& p, const NonnegFactorization& F);

struct LiftFactorization {
  NonnegFactorization raw;      // rows: facets of Q, then +/- copies of its equalities
  NonnegFactorization reduced;  // identically-zero rows removed
};

/// Farkas multipliers of each facet of p over the lift Q give A; slacks of the
/// lexicographically smallest Q-vertex above each vertex of p give B.
/// Throws PreconditionError with a witness when Q does not project onto p.
LiftFactorization factorization_from_lift(const Polytope& p, const PolyLift& L);

/// Exact psd test of every factor and of every trace identity.
Check verify_psd_factorization(const MatrixQ& S, const PsdFactorization& F);

/// Rank-one psd factorization from a facet-wise sum-of-squares identity.
PsdFactorization rank_one_psd_factorization(const std::vector<VectorQ>& vertex_vectors,
                                            const std::vector<MatrixQ>& facet_grams);

struct CardioidSample {
  Rational u, v;
  Rational trace;  // <A(v), B(u)>
  Rational slack;  // closed form s_C(u, v)
  bool a_psd = false;
  bool b_psd = false;
  bool ok() const { return a_psd && b_psd && trace == slack; }
};

/// A(v) = [[1, 0, 1-v^2], [0, 2-v^2, v(2-v^2)], [1-v^2, v(2-v^2), 1]].
MatrixQ cardioid_A(const Rational& v);
/// w w^T with w = (u^2-1, -u, 1); B(u) is this divided by 2 - u^2 + u^4.
MatrixQ cardioid_B_cleared(const Rational& u);
Rational cardioid_slack(const Rational& u, const Rational& v);

/// Checks psd-ness of both factors and the trace identity at every sample.
bool cardioid_sample_check(const std::vector<std::pair<Rational, Rational>>& samples,
                           std::vector<CardioidSample>* details = nullptr);

}  // namespace liftkit
