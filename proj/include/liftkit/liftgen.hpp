#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "liftkit/factor.hpp"
#include "liftkit/polytope.hpp"

namespace liftkit {

// ---------------------------------------------------------------------------
// Ordered binary decision diagrams

struct ObddNode {
  Index id = 0;
  Index var = 0;     // 1-based variable label; 0 for sinks
  int sink = -1;     // -1 decision node, otherwise 0 or 1
  Index lo = -1;     // successor ids, -1 when the arc is omitted
  Index hi = -1;
  bool is_sink() const { return sink >= 0; }
};

/// Node ids are arbitrary; variables are tested in increasing label order.
/// Arcs may be omitted (zero-suppressed input), meaning "goes to the 0-sink".
struct Obdd {
  Index n = 0;
  std::vector<ObddNode> nodes;
  Index source = 0;
  bool zero_suppressed = false;

  Index index_of(Index id) const;  // position in `nodes`, -1 if absent
};

/// Throws PreconditionError describing the first structural problem.
void validate(const Obdd& b);

/// f(x) by following the path from the source.
bool evaluate(const Obdd& b, const std::vector<bool>& x);

/// The parity function x1 xor ... xor xn (4n - 2 arcs).
Obdd xor_obdd(Index n);

struct ObddArc {
  Index from = 0;  // node ids
  Index to = 0;
  Index var = 0;
  bool hi = false;
};

struct ObddLift {
  PolyLift lift;  // one variable per arc, By = b, y >= 0
  std::vector<ObddArc> arcs;
  Index size() const { return lift.h.num_facets(); }
};

/// Flow-polytope lift of {x in {0,1}^n : f(x) = 1}. Coordinate i of the
/// projection sums the hi-arcs leaving nodes labeled i. With `prune`, arcs
/// not on any source to 1-sink path are dropped first. Every source to
/// 1-sink path must test every variable.
ObddLift obdd_flow_lift(const Obdd& b, bool prune = false);

// ---------------------------------------------------------------------------
// Posets and graphs

/// Elements 0..k-1; covers (a, b) mean b covers a (a < b).
struct Poset {
  std::vector<std::string> names;
  std::vector<std::pair<Index, Index>> covers;
  Index size() const { return static_cast<Index>(names.size()); }
};

/// Throws PreconditionError for cycles, bad indices or implied covers.
void validate(const Poset& p);

/// less[a][b] iff a < b (transitive closure of the covers).
std::vector<std::vector<bool>> strict_order(const Poset& p);

/// All antichains as 0/1 rows, in increasing binary order of the subset.
MatrixQ antichain_indicators(const Poset& p);
MatrixQ filter_indicators(const Poset& p);

/// {0 <= x_a <= x_b <= 1 for covers a < b}, cover inequalities only.
Polytope order_polytope(const Poset& p);
/// Convex hull of the antichain indicators.
Polytope chain_polytope(const Poset& p);

struct ChainLift {
  PolyLift lift;  // variables (z, x), projection onto z
  Polytope chain;
};

/// Lift of the chain polytope through the order polytope with slack
/// variables z. Checks internally that the projection is the chain polytope.
ChainLift chain_polytope_lift(const Poset& p);

/// Simple undirected graph on vertices 0..n-1; edges stored with i < j.
struct Graph {
  Index n = 0;
  std::vector<std::pair<Index, Index>> edges;
  bool adjacent(Index i, Index j) const;
};

/// Normalizes edge orientation and order; throws on loops or repeats.
Graph make_graph(Index n, std::vector<std::pair<Index, Index>> edges);
Graph comparability_graph(const Poset& p);
/// Stable set indicators in increasing binary order.
MatrixQ stable_set_indicators(const Graph& g);
Polytope stable_set_polytope(const Graph& g);

// ---------------------------------------------------------------------------
// Linear matrix inequalities

/// {w : A0 + sum_j w_j A[j] psd}. The first `num_original` variables are the
/// coordinates of the projected set; the rest are lifted.
struct LmiSpec {
  Index size = 0;
  MatrixQ A0;
  std::vector<MatrixQ> A;
  std::vector<std::string> names;
  Index num_original = 0;

  Index num_vars() const { return static_cast<Index>(A.size()); }
  MatrixQ evaluate(const VectorQ& w) const;
  bool contains(const VectorQ& w) const;
};

/// Throws PreconditionError unless all matrices are symmetric and sized.
void validate(const LmiSpec& L);

/// Monomials are exponent vectors; names are "1", "x1", "x1*x2", "x1^2".
using Monomial = std::vector<int>;
std::string monomial_name(const Monomial& m);
/// All monomials in n variables of degree <= d in graded lexicographic order.
std::vector<Monomial> monomials_up_to(Index n, int d);

/// Theta body pencil of size n+1 with variables x_1..x_n and one lifted
/// variable per non-edge {a, b} (a < b, lexicographic).
LmiSpec theta_body_lmi(const Graph& g);

/// Certificate for one facet a.x <= beta with slack s = beta - a.x:
/// s = c * h(x)^2 on every vertex, h(x) = r(s(x)).
struct FacetCertificate {
  std::vector<Rational> levels;  // distinct slack values on the vertices
  bool exact = false;            // false: some sqrt(level * max) is irrational
  Rational c;                    // 1 / max level
  std::vector<Rational> r;       // coefficients of r(t), constant first
  VectorQ h;                     // h in the moment basis
  MatrixQ gram;                  // c h h^T
};

struct KLevelLift {
  LmiSpec lmi;
  std::vector<Monomial> basis;       // moment basis (degree <= k-1)
  std::vector<Monomial> variables;   // monomial behind each pencil variable
  std::vector<FacetCertificate> certificates;
  bool all_exact() const;
  /// Rank-one preimage (monomial values) of a vertex.
  VectorQ preimage(const VectorQ& x) const;
};

/// Moment-matrix lift of size C(n+k-1, k-1) for a full-dimensional k-level
/// polytope. Monomials are linearized against the vertex set. Throws
/// PreconditionError naming the first facet with more than k levels.
KLevelLift klevel_sos_lift(const Polytope& p, Index k);

/// c * h(v)^2 == slack at every vertex, for every exact certificate.
Check verify_certificates_vertexwise(const Polytope& p, const KLevelLift& L);

/// Epigraph of x^T A x + 2 b^T x + c as an LMI in (x, t) of size n+1.
/// Throws PreconditionError with a witness when A is not psd.
LmiSpec quadratic_epigraph_lmi(const MatrixQ& A, const VectorQ& b, const Rational& c);

/// Sparse SDPA text. F0 is the negated constant matrix; values are written
/// as %.17g decimals, or as exact p/q when `exact` is set.
void write_sdpa(std::ostream& os, const LmiSpec& L, bool exact = false);

// ---------------------------------------------------------------------------
// Lift verification

enum class LiftTier {
  Failed,     // some inclusion fails
  Exact,      // polyhedral lift, both inclusions exact
  Certified,  // psd lift: forward exact, reverse via facet certificates
  Partial     // psd lift: forward exact, reverse unchecked
};

std::string to_string(LiftTier t);

struct LiftVerification {
  LiftTier tier = LiftTier::Failed;
  std::string message;
  std::optional<VectorQ> witness;  // offending point, if any
  bool ok() const { return tier != LiftTier::Failed; }
};

/// Exact comparison of the projected vertex set of L with p. Throws
/// PreconditionError when the lift is empty or unbounded.
LiftVerification verify_lift(const Polytope& p, const PolyLift& L);

/// Psd lift with one preimage per vertex of p and optional facet Gram
/// matrices B_i (empty matrix: no certificate) satisfying
/// beta_i - a_i.x = tr(M(w) B_i) identically.
struct PsdLift {
  LmiSpec lmi;
  std::vector<VectorQ> preimages;
  std::vector<MatrixQ> facet_certificates;
};

LiftVerification verify_lift(const Polytope& p, const PsdLift& L);

PsdLift to_psd_lift(const Polytope& p, const KLevelLift& k);

// ---------------------------------------------------------------------------
// Classical examples

/// Cross-polytope conv{+-e_i}.
Polytope cross_polytope(Index n);
/// {(x, y) : sum y = 1, -y <= x <= y}, projection onto x.
PolyLift cross_polytope_lift(Index n);
/// Permutahedron conv of permutations of (1, ..., n).
Polytope permutahedron(Index n);
/// Doubly stochastic matrices (row-major) mapped by X -> (1, ..., n) X.
PolyLift birkhoff_lift(Index n);

}  // namespace liftkit
