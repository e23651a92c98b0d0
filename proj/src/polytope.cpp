#include "liftkit/polytope.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <thread>

#include "dd.hpp"
#include "liftkit/error.hpp"
#include "liftkit/linalg.hpp"
#include "liftkit/lp.hpp"

namespace liftkit {

namespace {

std::vector<Index> pivot_columns(const MatrixQ& E) {
  std::vector<Index> piv;
  for (Index i = 0; i < E.rows(); ++i)
    for (Index j = 0; j < E.cols(); ++j)
      if (!E(i, j).is_zero()) {
        piv.push_back(j);
        break;
      }
  return piv;
}

std::vector<Index> free_columns(const MatrixQ& E, Index n) {
  std::vector<bool> is_piv(n, false);
  for (Index p : pivot_columns(E)) is_piv[p] = true;
  std::vector<Index> f;
  for (Index j = 0; j < n; ++j)
    if (!is_piv[j]) f.push_back(j);
  return f;
}

// Rewrites a.x <= beta on {E x = e} (E in RREF) so a vanishes on pivot columns.
void reduce_modulo(const MatrixQ& E, const VectorQ& e, VectorQ& a, Rational& beta) {
  const std::vector<Index> piv = pivot_columns(E);
  for (std::size_t r = 0; r < piv.size(); ++r) {
    const Rational f = a(piv[r]);
    if (f.is_zero()) continue;
    for (Index j = 0; j < a.size(); ++j)
      if (!E(r, j).is_zero()) a(j) -= f * E(r, j);
    beta -= f * e(r);
  }
}

MatrixQ rows_of(const MatrixQ& m, const std::vector<Index>& idx) {
  MatrixQ out(idx.size(), m.cols());
  for (std::size_t i = 0; i < idx.size(); ++i) out.row(i) = m.row(idx[i]);
  return out;
}

Index affine_dim_of_rows(const MatrixQ& pts) {
  if (pts.rows() == 0) return -1;
  return affine_hull(MatrixQ(pts.transpose())).dim;
}

void compute_incidence(Polytope& p) {
  const Index f = p.num_facets(), v = p.num_vertices();
  p.incidence.assign(f, Bitset(v));
  for (Index i = 0; i < f; ++i)
    for (Index j = 0; j < v; ++j)
      if (dot(p.h.A.row(i), p.vertices.row(j)) == p.h.b(i)) p.incidence[i].set(j);
}

// Chooses the scaling convention and rescales every facet row accordingly.
void normalize_facets(Polytope& p) {
  bool unit = p.full_dimensional() && p.num_facets() > 0;
  for (Index i = 0; i < p.num_facets() && unit; ++i) unit = p.h.b(i).sign() > 0;
  p.scaling = unit ? FacetScaling::UnitRhs : FacetScaling::PrimitiveInteger;
  for (Index i = 0; i < p.num_facets(); ++i) {
    if (unit) {
      const Rational s = p.h.b(i);
      for (Index j = 0; j < p.h.A.cols(); ++j) p.h.A(i, j) /= s;
      p.h.b(i) = 1;
    } else {
      VectorQ row(p.h.A.cols() + 1);
      row << p.h.A.row(i).transpose(), p.h.b(i);
      row = primitive_integer(row);
      p.h.A.row(i) = row.head(p.h.A.cols()).transpose();
      p.h.b(i) = row(p.h.A.cols());
    }
  }
}

void set_hull(Polytope& p) {
  const AffineHull hull = affine_hull(MatrixQ(p.vertices.transpose()));
  p.dim = hull.dim;
  p.h.E = hull.E;
  p.h.e = hull.e;
}

MatrixQ dedupe_rows(const MatrixQ& m) {
  std::vector<Index> keep;
  for (Index i = 0; i < m.rows(); ++i) {
    bool dup = false;
    for (Index k : keep)
      if (m.row(k) == m.row(i)) {
        dup = true;
        break;
      }
    if (!dup) keep.push_back(i);
  }
  return rows_of(m, keep);
}

void sort_facets(Polytope& p) {
  const Index f = p.num_facets(), n = p.h.A.cols();
  std::vector<VectorQ> rows(f);
  for (Index i = 0; i < f; ++i) {
    rows[i] = VectorQ(n + 1);
    rows[i] << p.h.A.row(i).transpose(), p.h.b(i);
  }
  std::sort(rows.begin(), rows.end(), LexLess{});
  for (Index i = 0; i < f; ++i) {
    p.h.A.row(i) = rows[i].head(n).transpose();
    p.h.b(i) = rows[i](n);
  }
}

}  // namespace

Polytope v_to_h(const MatrixQ& points) {
  if (points.rows() == 0) throw PreconditionError("v_to_h: empty point set");
  const Index n = points.cols();
  MatrixQ pts = dedupe_rows(points);
  Polytope p;
  p.vertices = pts;
  set_hull(p);
  if (p.dim == 0) {
    p.h.A = MatrixQ(0, n);
    p.h.b = VectorQ(0);
    return p;
  }
  const std::vector<Index> F = free_columns(p.h.E, n);
  const Index r = static_cast<Index>(F.size());
  // Cone of valid inequalities (a, beta) on the projected points.
  MatrixQ H(pts.rows(), r + 1);
  for (Index j = 0; j < pts.rows(); ++j) {
    for (Index c = 0; c < r; ++c) H(j, c) = -pts(j, F[c]);
    H(j, r) = 1;
  }
  std::vector<detail::IntVec> rays;
  if (!detail::extreme_rays(H, rays)) throw Error("v_to_h: internal error, valid-inequality cone not pointed");
  p.h.A = MatrixQ::Zero(rays.size(), n);
  p.h.b = VectorQ(rays.size());
  for (std::size_t i = 0; i < rays.size(); ++i) {
    for (Index c = 0; c < r; ++c) p.h.A(i, F[c]) = Rational(rays[i][c]);
    p.h.b(i) = Rational(rays[i][r]);
  }
  // Drop points that are not vertices: their tight normals do not span.
  compute_incidence(p);
  std::vector<Index> keep;
  for (Index j = 0; j < pts.rows(); ++j) {
    std::vector<Index> tight;
    for (Index i = 0; i < p.num_facets(); ++i)
      if (p.incidence[i].test(j)) tight.push_back(i);
    if (rank(rows_of(p.h.A, tight)) == r) keep.push_back(j);
  }
  p.vertices = rows_of(pts, keep);
  normalize_facets(p);
  sort_facets(p);
  compute_incidence(p);
  return p;
}

Polytope h_to_v(const HRep& h) {
  const Index n = h.ambient();
  const MatrixQ E0 = h.E.rows() ? h.E : MatrixQ(0, n);
  const VectorQ e0 = h.E.rows() ? h.e : VectorQ(0);
  const MatrixQ A = h.A.rows() ? h.A : MatrixQ(0, n);
  const VectorQ b = h.A.rows() ? h.b : VectorQ(0);
  if (A.cols() != n || E0.cols() != n || b.size() != A.rows() || e0.size() != E0.rows())
    throw DimensionMismatch("h_to_v: inconsistent H-representation dimensions");

  {
    LpProblem lp;
    lp.c = VectorQ::Zero(n);
    lp.A = MatrixQ(A.rows() + E0.rows(), n);
    lp.A << A, E0;
    lp.b = VectorQ(b.size() + e0.size());
    lp.b << b, e0;
    lp.senses.assign(A.rows(), Sense::Le);
    lp.senses.resize(lp.A.rows(), Sense::Eq);
    lp.make_free();
    if (lp_solve(lp).status == LpStatus::Infeasible) throw PreconditionError("h_to_v: the system is infeasible");
  }

  const VectorQ x0 = *solve_affine(E0, e0);
  const MatrixQ N = nullspace(E0);
  const Index d = N.cols();
  std::vector<VectorQ> verts;
  if (d == 0) {
    verts.push_back(x0);
  } else {
    const MatrixQ AN = mul(A, N);
    MatrixQ H(A.rows() + 1, d + 1);
    for (Index i = 0; i < A.rows(); ++i) {
      for (Index c = 0; c < d; ++c) H(i, c) = -AN(i, c);
      H(i, d) = b(i) - dot(A.row(i), x0);
    }
    H.row(A.rows()).setZero();
    H(A.rows(), d) = 1;
    std::vector<detail::IntVec> rays;
    if (!detail::extreme_rays(H, rays)) throw PreconditionError("h_to_v: the polyhedron is unbounded");
    for (const auto& ray : rays) {
      if (sgn(ray[d]) == 0) throw PreconditionError("h_to_v: the polyhedron is unbounded");
      VectorQ z(d);
      for (Index c = 0; c < d; ++c) z(c) = Rational(ray[c], ray[d]);
      verts.push_back(x0 + mul(N, z).col(0));
    }
  }
  std::sort(verts.begin(), verts.end(), LexLess{});
  verts.erase(std::unique(verts.begin(), verts.end()), verts.end());

  Polytope p;
  p.vertices = MatrixQ(verts.size(), n);
  for (std::size_t j = 0; j < verts.size(); ++j) p.vertices.row(j) = verts[j].transpose();
  set_hull(p);

  std::vector<VectorQ> fa;
  std::vector<Rational> fb;
  std::vector<Bitset> seen;
  if (p.dim > 0) {
    for (Index i = 0; i < A.rows(); ++i) {
      VectorQ a = A.row(i).transpose();
      Rational beta = b(i);
      reduce_modulo(p.h.E, p.h.e, a, beta);
      Bitset tight(verts.size());
      std::vector<Index> idx;
      for (std::size_t j = 0; j < verts.size(); ++j)
        if (dot(a, verts[j]) == beta) {
          tight.set(j);
          idx.push_back(j);
        }
      if (affine_dim_of_rows(rows_of(p.vertices, idx)) != p.dim - 1) continue;
      if (std::find(seen.begin(), seen.end(), tight) != seen.end()) continue;
      seen.push_back(tight);
      fa.push_back(a);
      fb.push_back(beta);
    }
  }
  p.h.A = MatrixQ(fa.size(), n);
  p.h.b = VectorQ(fa.size());
  for (std::size_t i = 0; i < fa.size(); ++i) {
    p.h.A.row(i) = fa[i].transpose();
    p.h.b(i) = fb[i];
  }
  normalize_facets(p);
  compute_incidence(p);
  return p;
}

Polytope with_facet_order(const Polytope& p, const HRep& order) {
  if (order.A.cols() != p.ambient()) throw DimensionMismatch("facet order has wrong ambient dimension");
  if (order.A.rows() != p.num_facets())
    throw PreconditionError("facet order lists " + std::to_string(order.A.rows()) + " inequalities, polytope has " +
                            std::to_string(p.num_facets()) + " facets");
  Polytope out = p;
  out.h.A = order.A;
  out.h.b = order.b;
  out.scaling = FacetScaling::AsGiven;
  for (Index i = 0; i < out.num_facets(); ++i) {
    VectorQ a = order.A.row(i).transpose();
    Rational beta = order.b(i);
    reduce_modulo(p.h.E, p.h.e, a, beta);
    out.h.A.row(i) = a.transpose();
    out.h.b(i) = beta;
  }
  compute_incidence(out);
  std::vector<bool> used(p.num_facets(), false);
  for (Index i = 0; i < out.num_facets(); ++i) {
    for (Index j = 0; j < p.num_vertices(); ++j)
      if (dot(out.h.A.row(i), p.vertices.row(j)) > out.h.b(i))
        throw PreconditionError("inequality " + std::to_string(i + 1) + " is violated by vertex " + std::to_string(j + 1));
    Index match = -1;
    for (Index k = 0; k < p.num_facets(); ++k)
      if (!used[k] && p.incidence[k] == out.incidence[i]) match = k;
    if (match < 0) throw PreconditionError("inequality " + std::to_string(i + 1) + " does not define a facet");
    used[match] = true;
  }
  return out;
}

Polytope from_pair(const MatrixQ& vertices, const HRep& h) {
  Polytope p = v_to_h(vertices);
  if (p.num_vertices() != vertices.rows())
    throw PreconditionError("vertex list is redundant: " + std::to_string(vertices.rows() - p.num_vertices()) +
                            " points are not vertices");
  if (h.E.rows()) {
    for (Index j = 0; j < vertices.rows(); ++j)
      for (Index r = 0; r < h.E.rows(); ++r)
        if (dot(h.E.row(r), vertices.row(j)) != h.e(r))
          throw PreconditionError("equality " + std::to_string(r + 1) + " fails at vertex " + std::to_string(j + 1));
  }
  Polytope out = with_facet_order(p, h);
  bool unit = out.full_dimensional();
  for (Index i = 0; i < out.num_facets() && unit; ++i) unit = out.h.b(i) == 1;
  if (unit) out.scaling = FacetScaling::UnitRhs;
  return out;
}

bool origin_interior(const Polytope& p) {
  if (!p.full_dimensional()) return false;
  for (Index i = 0; i < p.num_facets(); ++i)
    if (p.h.b(i).sign() <= 0) return false;
  return true;
}

Polytope polar(const Polytope& p) {
  if (!p.full_dimensional())
    throw PreconditionError("polar: polytope is not full-dimensional, origin cannot be interior");
  for (Index i = 0; i < p.num_facets(); ++i)
    if (p.h.b(i).sign() <= 0)
      throw PreconditionError("polar: origin is not interior, facet " + std::to_string(i + 1) +
                              (p.h.b(i).is_zero() ? " passes through it" : " separates it"));
  Polytope q;
  const Index n = p.ambient();
  q.vertices = MatrixQ(p.num_facets(), n);
  for (Index i = 0; i < p.num_facets(); ++i)
    for (Index c = 0; c < n; ++c) q.vertices(i, c) = p.h.A(i, c) / p.h.b(i);
  q.dim = n;
  q.h.E = MatrixQ(0, n);
  q.h.e = VectorQ(0);
  q.h.A = p.vertices;
  q.h.b = VectorQ::Constant(p.num_vertices(), Rational(1));
  q.scaling = FacetScaling::UnitRhs;
  compute_incidence(q);
  return q;
}

bool contains(const Polytope& p, const VectorQ& x) {
  if (x.size() != p.ambient()) throw DimensionMismatch("contains: point has wrong dimension");
  for (Index i = 0; i < p.num_facets(); ++i)
    if (dot(p.h.A.row(i), x) > p.h.b(i)) return false;
  for (Index r = 0; r < p.h.E.rows(); ++r)
    if (dot(p.h.E.row(r), x) != p.h.e(r)) return false;
  return true;
}

MatrixQ sorted_rows(const MatrixQ& m) {
  std::vector<VectorQ> rows(m.rows());
  for (Index i = 0; i < m.rows(); ++i) rows[i] = m.row(i).transpose();
  std::sort(rows.begin(), rows.end(), LexLess{});
  MatrixQ out(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i) out.row(i) = rows[i].transpose();
  return out;
}

bool same_point_set(const MatrixQ& a, const MatrixQ& b) {
  if (a.cols() != b.cols()) return false;
  return equal(sorted_rows(dedupe_rows(a)), sorted_rows(dedupe_rows(b)));
}

MatrixQ facet_slacks(const Polytope& p) {
  MatrixQ s(p.num_facets(), p.num_vertices());
  for (Index i = 0; i < p.num_facets(); ++i)
    for (Index j = 0; j < p.num_vertices(); ++j) s(i, j) = p.h.b(i) - dot(p.h.A.row(i), p.vertices.row(j));
  return s;
}

std::vector<Index> FaceLattice::f_vector() const {
  Index top = -1;
  for (Index d : face_dims) top = std::max(top, d);
  std::vector<Index> f(top + 2, 0);
  for (Index d : face_dims) ++f[d + 1];
  return f;
}

FaceLattice face_lattice(const Polytope& p) {
  const Index v = p.num_vertices();
  Bitset all(v);
  all.set();
  std::vector<Bitset> faces{all};
  std::vector<Bitset> frontier{all};
  while (!frontier.empty()) {
    std::vector<Bitset> next;
    for (const Bitset& f : frontier)
      for (const Bitset& facet : p.incidence) {
        Bitset g = f & facet;
        if (std::find(faces.begin(), faces.end(), g) == faces.end()) {
          faces.push_back(g);
          next.push_back(g);
        }
      }
    frontier = std::move(next);
  }
  if (std::find(faces.begin(), faces.end(), Bitset(v)) == faces.end()) faces.push_back(Bitset(v));

  FaceLattice L;
  std::vector<std::pair<Index, Bitset>> tagged;
  for (const Bitset& f : faces) {
    std::vector<Index> idx;
    for (auto j = f.find_first(); j != Bitset::npos; j = f.find_next(j)) idx.push_back(static_cast<Index>(j));
    tagged.emplace_back(affine_dim_of_rows(rows_of(p.vertices, idx)), f);
  }
  auto key = [](const Bitset& b) {
    std::vector<std::size_t> idx;
    for (auto j = b.find_first(); j != Bitset::npos; j = b.find_next(j)) idx.push_back(j);
    return idx;
  };
  std::sort(tagged.begin(), tagged.end(), [&](const auto& x, const auto& y) {
    if (x.first != y.first) return x.first < y.first;
    return key(x.second) < key(y.second);
  });
  for (auto& [d, f] : tagged) {
    L.face_dims.push_back(d);
    L.faces.push_back(f);
  }
  return L;
}

Index longest_chain(const FaceLattice& L) {
  std::vector<Index> order(L.faces.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](Index a, Index b) { return L.faces[a].count() < L.faces[b].count(); });
  std::vector<Index> len(L.faces.size(), 0);
  Index best = 0;
  for (std::size_t oi = 0; oi < order.size(); ++oi) {
    const Index f = order[oi];
    if (L.faces[f].none()) continue;
    len[f] = 1;
    for (std::size_t oj = 0; oj < oi; ++oj) {
      const Index g = order[oj];
      if (L.faces[g].none() || L.faces[g] == L.faces[f]) continue;
      if (L.faces[g].is_subset_of(L.faces[f])) len[f] = std::max(len[f], len[g] + 1);
    }
    best = std::max(best, len[f]);
  }
  return best;
}

std::optional<std::pair<VectorQ, Rational>> exposing_functional(const Polytope& p, const Bitset& face) {
  // Variables (c, t, s): c.v = t on the face, c.v - t + s <= 0 elsewhere, max s <= 1.
  const Index n = p.ambient(), v = p.num_vertices();
  if (face.count() == static_cast<std::size_t>(v)) return std::make_pair(VectorQ(VectorQ::Zero(n)), Rational(0));
  LpProblem lp;
  lp.c = VectorQ::Zero(n + 2);
  lp.c(n + 1) = 1;
  lp.A = MatrixQ::Zero(v, n + 2);
  lp.b = VectorQ::Zero(v);
  for (Index j = 0; j < v; ++j) {
    for (Index c = 0; c < n; ++c) lp.A(j, c) = p.vertices(j, c);
    lp.A(j, n) = -1;
    if (face.test(j)) {
      lp.senses.push_back(Sense::Eq);
    } else {
      lp.A(j, n + 1) = 1;
      lp.senses.push_back(Sense::Le);
    }
  }
  lp.make_free();
  lp.upper[n + 1] = Rational(1);
  const LpResult r = lp_solve(lp);
  if (r.status != LpStatus::Optimal || r.objective.sign() <= 0) return std::nullopt;
  return std::make_pair(VectorQ(r.x.head(n)), r.x(n));
}

LevelReport is_k_level(const Polytope& p, Index k) {
  LevelReport rep;
  const MatrixQ s = facet_slacks(p);
  rep.holds = true;
  for (Index i = 0; i < s.rows(); ++i) {
    std::vector<Rational> vals;
    for (Index j = 0; j < s.cols(); ++j) vals.push_back(s(i, j));
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    rep.max_levels = std::max<Index>(rep.max_levels, vals.size());
    if (static_cast<Index>(vals.size()) > k && rep.holds) {
      rep.holds = false;
      rep.first_violating_facet = i;
    }
    rep.levels.push_back(std::move(vals));
  }
  return rep;
}

NeighborlyReport is_k_neighborly(const Polytope& p, Index k, int threads) {
  const Index v = p.num_vertices();
  NeighborlyReport rep;
  if (k <= 0 || k > v) return rep;
  std::vector<std::vector<Index>> subsets;
  std::vector<bool> sel(v, false);
  std::fill(sel.begin(), sel.begin() + k, true);
  do {
    std::vector<Index> s;
    for (Index j = 0; j < v; ++j)
      if (sel[j]) s.push_back(j);
    subsets.push_back(std::move(s));
  } while (std::prev_permutation(sel.begin(), sel.end()));

  const std::size_t total = subsets.size();
  std::vector<char> fails(total, 0);
  auto work = [&](std::size_t begin, std::size_t step) {
    for (std::size_t t = begin; t < total; t += step) {
      Bitset b(v);
      for (Index j : subsets[t]) b.set(j);
      fails[t] = !exposing_functional(p, b);
    }
  };
  const std::size_t nt = std::max(1, threads);
  if (nt == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < nt; ++w) pool.emplace_back(work, w, nt);
    for (auto& th : pool) th.join();
  }
  rep.subsets_checked = static_cast<Index>(total);
  for (std::size_t t = 0; t < total; ++t)
    if (fails[t]) {
      rep.holds = false;
      rep.violator = subsets[t];
      break;
    }
  return rep;
}

}  // namespace liftkit
