#include "liftkit/slack.hpp"

#include "liftkit/error.hpp"
#include "liftkit/linalg.hpp"

namespace liftkit {

SlackMatrix slack_matrix(const Polytope& p) { return {facet_slacks(p), p.scaling}; }

Polytope unit_rhs(const Polytope& p) {
  if (!origin_interior(p)) throw PreconditionError("origin is not interior; rows cannot be scaled to 1 - <a, x>");
  Polytope out = p;
  for (Index i = 0; i < out.num_facets(); ++i) {
    const Rational s = out.h.b(i);
    for (Index j = 0; j < out.h.A.cols(); ++j) out.h.A(i, j) /= s;
    out.h.b(i) = 1;
  }
  out.scaling = FacetScaling::UnitRhs;
  return out;
}

SlackMatrix generalized_slack(const Polytope& inner, const Polytope& outer) {
  if (inner.ambient() != outer.ambient()) throw DimensionMismatch("generalized_slack: ambient dimensions differ");
  if (!origin_interior(inner)) throw PreconditionError("generalized_slack: origin is not interior to the inner polytope");
  for (Index j = 0; j < inner.num_vertices(); ++j)
    if (!contains(outer, inner.vertex(j))) {
      for (Index i = 0; i < outer.num_facets(); ++i)
        if (dot(outer.h.A.row(i), inner.vertices.row(j)) > outer.h.b(i))
          throw PreconditionError("generalized_slack: vertex " + std::to_string(j + 1) + " of the inner polytope violates facet " +
                                  std::to_string(i + 1) + " of the outer polytope");
      throw PreconditionError("generalized_slack: vertex " + std::to_string(j + 1) + " leaves the outer affine hull");
    }
  const Polytope o = unit_rhs(outer);
  SlackMatrix out;
  out.scaling = FacetScaling::UnitRhs;
  out.S = MatrixQ(o.num_facets(), inner.num_vertices());
  for (Index i = 0; i < o.num_facets(); ++i)
    for (Index j = 0; j < inner.num_vertices(); ++j) out.S(i, j) = 1 - dot(o.h.A.row(i), inner.vertices.row(j));
  return out;
}

bool transpose_polar_check(const Polytope& p) {
  const Polytope u = unit_rhs(p);
  // Recompute the polar from its vertices (the facet normals) by facet
  // enumeration, then line its facets up with the vertices of p.
  const Polytope q = v_to_h(polar(u).vertices);
  if (q.num_vertices() != u.num_facets() || q.num_facets() != u.num_vertices()) return false;
  if (q.scaling != FacetScaling::UnitRhs) return false;
  MatrixQ sq(q.num_facets(), q.num_vertices());
  for (Index j = 0; j < u.num_vertices(); ++j) {
    Index match = -1;
    for (Index i = 0; i < q.num_facets() && match < 0; ++i)
      if (q.h.A.row(i) == u.vertices.row(j)) match = i;
    if (match < 0) return false;
    for (Index c = 0; c < q.num_vertices(); ++c) sq(j, c) = 1 - dot(q.h.A.row(match), q.vertices.row(c));
  }
  return equal(sq, slack_matrix(u).S.transpose());
}

}  // namespace liftkit
