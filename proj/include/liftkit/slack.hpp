#pragma once

#include "liftkit/polytope.hpp"

namespace liftkit {

/// Nonnegative facet-by-vertex matrix of slacks b_i - a_i.v_j.
struct SlackMatrix {
  MatrixQ S;
  FacetScaling scaling = FacetScaling::PrimitiveInteger;

  Index rows() const { return S.rows(); }
  Index cols() const { return S.cols(); }
};

/// Slack matrix in the polytope's facet and vertex order, using its scaling.
SlackMatrix slack_matrix(const Polytope& p);

/// Rows: facets of `outer` scaled to 1 - <a_i, x> >= 0; columns: vertices of
/// `inner`. Throws PreconditionError if the origin is not interior to inner or
/// a vertex of inner violates a facet of outer (both are named).
SlackMatrix generalized_slack(const Polytope& inner, const Polytope& outer);

/// slack_matrix(polar(p)) == slack_matrix(p)^T with unit right-hand sides.
bool transpose_polar_check(const Polytope& p);

/// Same polytope with each facet scaled so its right-hand side is 1.
Polytope unit_rhs(const Polytope& p);

}  // namespace liftkit
