#pragma once

#include <optional>
#include <string>
#include <vector>

#include "liftkit/rational.hpp"

namespace liftkit {

enum class Sense { Le, Eq, Ge };
enum class LpStatus { Optimal, Infeasible, Unbounded };

/// max (or min) c.x  s.t.  A x (senses) b,  lower <= x <= upper.
///
/// Empty `lower` means every variable is >= 0; empty `upper` means no upper
/// bounds. Individual entries may be std::nullopt for an infinite bound.
struct LpProblem {
  bool maximize = true;
  VectorQ c;
  MatrixQ A;
  VectorQ b;
  std::vector<Sense> senses;
  std::vector<std::optional<Rational>> lower;
  std::vector<std::optional<Rational>> upper;

  Index num_vars() const { return c.size(); }
  Index num_rows() const { return A.rows(); }
  std::optional<Rational> lower_bound(Index j) const;
  std::optional<Rational> upper_bound(Index j) const;

  /// Marks every variable free (no bounds).
  void make_free();
};

/// Result of lp_solve.
///
/// Optimal: `x` is primal optimal, `y` the row duals and `reduced` = c - A^T y
/// the bound duals; the dual objective equals `objective` exactly.
/// Infeasible: `y` is a Farkas certificate (see verify_farkas).
/// Unbounded: `x` is feasible and `ray` an improving recession direction.
struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Rational objective;
  VectorQ x;
  VectorQ y;
  VectorQ reduced;
  VectorQ ray;
};

/// Exact two-phase primal simplex with Bland's rule. Deterministic.
/// Throws DimensionMismatch on inconsistent problem dimensions.
LpResult lp_solve(const LpProblem& p);

/// Row-dual sign conventions for a maximization: y >= 0 on <= rows,
/// y <= 0 on >= rows, free on equalities (reversed for minimization).
bool dual_signs_ok(const LpProblem& p, const VectorQ& y);

/// Checks that y proves infeasibility: with g = A^T y and the sign rules of a
/// maximization, b.y < min over the bound box of g.x.
bool verify_farkas(const LpProblem& p, const VectorQ& y);

/// Checks primal feasibility, dual feasibility and equal objective values.
bool verify_optimal(const LpProblem& p, const LpResult& r);

bool is_feasible_point(const LpProblem& p, const VectorQ& x);

std::string to_string(LpStatus s);

}  // namespace liftkit
