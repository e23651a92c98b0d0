#pragma once

#include <optional>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "liftkit/rational.hpp"

namespace liftkit {

using Bitset = boost::dynamic_bitset<>;

/// Inequalities A x <= b plus optional equalities E x = e.
struct HRep {
  MatrixQ A;
  VectorQ b;
  MatrixQ E;
  VectorQ e;

  Index ambient() const { return A.cols() ? A.cols() : E.cols(); }
  Index num_facets() const { return A.rows(); }
};

/// How facet inequalities were scaled.
enum class FacetScaling {
  UnitRhs,        // b = 1 for every facet (origin interior)
  PrimitiveInteger,  // integer rows with gcd 1
  AsGiven            // scaling supplied by the caller
};

/// A polytope with both representations and the facet-vertex incidence.
///
/// Vertices are rows of `vertices`; facets are rows of `h.A` with rhs `h.b`.
/// For lower-dimensional polytopes `h.E x = h.e` is the affine hull in
/// reduced row echelon form, and facet rows are reduced modulo it (zero on
/// the hull's pivot coordinates).
struct Polytope {
  MatrixQ vertices;
  HRep h;
  Index dim = -1;
  FacetScaling scaling = FacetScaling::PrimitiveInteger;
  std::vector<Bitset> incidence;  // incidence[i][j]: vertex j on facet i

  Index ambient() const { return vertices.cols(); }
  Index num_vertices() const { return vertices.rows(); }
  Index num_facets() const { return h.A.rows(); }
  bool full_dimensional() const { return dim == ambient(); }
  VectorQ vertex(Index j) const { return vertices.row(j).transpose(); }
};

/// Facet enumeration. Duplicate and non-vertex input points are dropped;
/// vertex order otherwise follows the input. Facets are sorted
/// lexicographically by (a, beta). Throws PreconditionError on empty input.
Polytope v_to_h(const MatrixQ& points);

/// Vertex enumeration. Vertices come out lexicographically sorted; facets
/// keep the input order with redundant inequalities removed. Throws
/// PreconditionError for an empty or unbounded set.
Polytope h_to_v(const HRep& h);

/// Builds a polytope from both representations, checking that they agree.
/// Facets keep the given order and scaling.
Polytope from_pair(const MatrixQ& vertices, const HRep& h);

/// Reorders the facets of p to follow `order` (same facets, any positive
/// scaling); the scaling of `order` is adopted. Throws PreconditionError if
/// the facet sets differ.
Polytope with_facet_order(const Polytope& p, const HRep& order);

/// True when the origin lies in the interior (requires full dimension).
bool origin_interior(const Polytope& p);

/// The polar polytope. Its vertices are a_i / b_i in facet order and its
/// facets correspond to the vertices of p in vertex order, all with rhs 1.
/// Throws PreconditionError naming a facet when the origin is not interior.
Polytope polar(const Polytope& p);

bool contains(const Polytope& p, const VectorQ& x);

/// Order-independent equality of two point sets (rows).
bool same_point_set(const MatrixQ& a, const MatrixQ& b);

/// Rows of m sorted lexicographically.
MatrixQ sorted_rows(const MatrixQ& m);

/// Face lattice as vertex sets, sorted by size then lexicographically.
/// Includes the empty face and the polytope itself.
struct FaceLattice {
  std::vector<Bitset> faces;
  std::vector<Index> face_dims;  // -1 for the empty face

  Index size() const { return static_cast<Index>(faces.size()); }
  /// Number of faces of each dimension -1 .. dim.
  std::vector<Index> f_vector() const;
};

FaceLattice face_lattice(const Polytope& p);

/// Length (number of faces) of the longest chain of non-empty faces.
Index longest_chain(const FaceLattice& L);

/// Finds a linear functional c and value t with c.v = t on the face and
/// c.v < t on the other vertices. Empty when the set is not an exposed face.
std::optional<std::pair<VectorQ, Rational>> exposing_functional(const Polytope& p, const Bitset& face);

struct LevelReport {
  bool holds = false;
  Index max_levels = 0;
  std::vector<std::vector<Rational>> levels;  // distinct slack values per facet, sorted
  Index first_violating_facet = -1;
};

LevelReport is_k_level(const Polytope& p, Index k);

struct NeighborlyReport {
  bool holds = true;
  std::vector<Index> violator;  // lexicographically smallest failing subset
  Index subsets_checked = 0;
};

/// For every k-subset I of vertices, decides by LP whether some affine
/// functional equals 1 on I and is < 1 on the other vertices.
NeighborlyReport is_k_neighborly(const Polytope& p, Index k, int threads = 1);

/// Slack b_i - a_i.v_j of every facet at every vertex.
MatrixQ facet_slacks(const Polytope& p);

}  // namespace liftkit
