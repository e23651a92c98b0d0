#pragma once

#include <array>
#include <iosfwd>
#include <string>

#include "liftkit/factor.hpp"
#include "liftkit/liftgen.hpp"
#include "liftkit/polytope.hpp"

namespace liftkit {

// Line-oriented text formats. '#' starts a comment; blank lines are ignored.
// Every reader throws InputError with the 1-based line and column of the
// first problem. Writers produce the canonical form, which reads back to
// the same text.

/// V n v, then v lines of n rationals.
MatrixQ read_vpoly(std::istream& in);
void write_vpoly(std::ostream& out, const MatrixQ& points);

/// H n f, then f lines "a_1 ... a_n beta" (a.x <= beta); optional E n e
/// block of equalities in the same layout.
HRep read_hpoly(std::istream& in);
void write_hpoly(std::ostream& out, const HRep& h);

/// POSET k, a line of k element names, "covers:", then lines "a < b".
Poset read_poset(std::istream& in);
void write_poset(std::ostream& out, const Poset& p);

/// GRAPH n m, then m lines "i j" (1-based).
Graph read_graph(std::istream& in);
void write_graph(std::ostream& out, const Graph& g);

/// OBDD n, node lines "id var lo hi" ('-' for an omitted arc) or
/// "id SINK0|SINK1", then "source id" and optionally "zero-suppressed".
Obdd read_obdd(std::istream& in);
void write_obdd(std::ostream& out, const Obdd& b);

/// HPoly block followed by PROJ n l and n lines of l rationals.
PolyLift read_lift(std::istream& in);
void write_lift(std::ostream& out, const PolyLift& L);

/// SLACK f v, then f lines of v rationals.
MatrixQ read_slack(std::istream& in);
void write_slack(std::ostream& out, const MatrixQ& S);

/// NNF m f v, then the m x f factor A and the m x v factor B, row by row.
NonnegFactorization read_nnf(std::istream& in);
void write_nnf(std::ostream& out, const NonnegFactorization& F);

/// PSDF m f v, then v vertex factors and f facet factors (m lines each).
PsdFactorization read_psdf(std::istream& in);
void write_psdf(std::ostream& out, const PsdFactorization& F);

/// Three lines of n rationals: lambda, mu, nu.
std::array<VectorQ, 3> read_triple(std::istream& in);
void write_triple(std::ostream& out, const std::array<VectorQ, 3>& t);

/// Quadratic x^T A x + 2 b^T x + c: QUAD n, n rows of A, one row b, then c.
struct Quadratic {
  MatrixQ A;
  VectorQ b;
  Rational c;
};
Quadratic read_quadratic(std::istream& in);
void write_quadratic(std::ostream& out, const Quadratic& q);

/// Exact SDPA sidecar as produced by write_sdpa(.., exact = true).
LmiSpec read_sdpa(std::istream& in);

/// First keyword of a file ("V", "H", "POSET", ...), or "" if empty.
std::string peek_format(std::istream& in);

/// Opens a file, throwing InputError when it cannot be read.
std::string read_file(const std::string& path);

}  // namespace liftkit
