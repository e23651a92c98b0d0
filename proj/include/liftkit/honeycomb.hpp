#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "liftkit/lp.hpp"
#include "liftkit/rational.hpp"

namespace liftkit {

/// Leg of an upright Y vertex. Every edge of the honeycomb is the leg of
/// exactly one Y; internal legs end at an inverted vertex.
enum class Leg { NW = 0, NE = 1, S = 2 };

/// Combinatorial n-honeycomb. Upright vertices Y(r, c), 0 <= c <= r < n, are
/// numbered row by row; edge id = 3 * index(r, c) + leg. The inverted vertex
/// (r, c), 1 <= r < n, 0 <= c < r, joins S(r-1, c), NE(r, c) and NW(r, c+1).
///
/// Boundary rays: lambda_i = NW(n-i, 0), mu_i = NE(i-1, i-1),
/// nu_i = S(n-1, n-i).
struct HoneycombSpec {
  Index n = 0;
  std::vector<std::array<Index, 3>> vertices;  // upright first, then inverted
  std::vector<std::pair<Index, Index>> gamma;  // e_a - e_b >= 0
  std::vector<Index> lambda, mu, nu;           // boundary edge ids
  std::vector<bool> boundary;                  // per edge

  Index num_edges() const { return static_cast<Index>(boundary.size()); }
  Index num_internal() const;
  Index edge(Index r, Index c, Leg leg) const;
  std::string edge_name(Index id) const;  // e.g. "NE(1,0)"
};

HoneycombSpec build_honeycomb(Index n);

/// Internal edges not fixed by the boundary values alone (6 for n = 3).
Index free_internal_edges(const HoneycombSpec& h);

/// Edge ids of the labels e1..e6 of the standard n = 3 labeling.
std::array<Index, 6> n3_labels(const HoneycombSpec& h);

/// Linear inequality sum of coefficient * boundary value >= 0 that holds on
/// the Horn cone.
struct HornInequality {
  VectorQ lambda, mu, nu;
  Rational evaluate(const VectorQ& l, const VectorQ& m, const VectorQ& v) const;
};

struct HornResult {
  bool member = false;
  std::string reason;             // why not a member
  std::optional<VectorQ> edges;   // feasible honeycomb, by edge id
  LpProblem lp;                   // the feasibility system that was solved
  std::optional<VectorQ> farkas;  // row multipliers of `lp` proving infeasibility
  std::optional<HornInequality> violated;
};

/// Decides membership in the Horn cone: chamber order, trace, then an exact
/// feasibility LP over the honeycomb cone. Throws DimensionMismatch when the
/// lengths differ.
HornResult horn_membership(const VectorQ& lambda, const VectorQ& mu, const VectorQ& nu);

/// Slice of HONEY_3 with lambda and mu fixed, in the variables (e1, nu1, nu2):
/// every other edge and nu3 is eliminated through the vertex equations.
struct EliminatedSystem {
  std::vector<std::string> vars;  // e1, nu1, nu2
  MatrixQ A;                      // A v <= b
  VectorQ b;
  Index num_gamma = 0;            // leading rows from edge pairs; the rest are chamber rows
  MatrixQ edge_expr;              // edge id -> affine expression (coefficients on vars, then constant)
  VectorQ nu3_expr;
};

/// Only n = 3 is supported (PreconditionError otherwise).
EliminatedSystem eliminate_to_inequalities(const HoneycombSpec& h, const VectorQ& lambda, const VectorQ& mu);

/// "2 + nu1 - nu2": constant first, zero terms dropped.
std::string format_affine(const std::vector<std::string>& vars, const VectorQ& a, const Rational& c);
/// Human-readable form, e.g. "e1 >= 2 + nu1 + nu2".
std::string format_inequality(const std::vector<std::string>& vars, const VectorQ& a, const Rational& b);

}  // namespace liftkit
