#include "liftkit/liftgen.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <ostream>
#include <set>

#include "liftkit/error.hpp"
#include "liftkit/linalg.hpp"
#include "liftkit/psd.hpp"

namespace liftkit {

namespace {

std::string num(Index i) { return std::to_string(i); }

MatrixQ stack_rows(const std::vector<VectorQ>& rows, Index cols) {
  MatrixQ m(static_cast<Index>(rows.size()), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) m.row(static_cast<Index>(i)) = rows[i].transpose();
  return m;
}

VectorQ row_vector(Index n, std::initializer_list<std::pair<Index, Rational>> entries) {
  VectorQ v = VectorQ::Zero(n);
  for (const auto& [i, x] : entries) v(i) += x;
  return v;
}

struct HBuilder {
  Index n;
  std::vector<VectorQ> A, E;
  std::vector<Rational> b, e;

  void le(VectorQ a, Rational beta) { A.push_back(std::move(a)); b.push_back(std::move(beta)); }
  void eq(VectorQ a, Rational beta) { E.push_back(std::move(a)); e.push_back(std::move(beta)); }
  HRep build() const {
    HRep h;
    h.A = stack_rows(A, n);
    h.b = Eigen::Map<const VectorQ>(b.data(), static_cast<Index>(b.size()));
    h.E = stack_rows(E, n);
    h.e = Eigen::Map<const VectorQ>(e.data(), static_cast<Index>(e.size()));
    return h;
  }
};

MatrixQ identity_projection(Index n, Index total) {
  MatrixQ P = MatrixQ::Zero(n, total);
  for (Index i = 0; i < n; ++i) P(i, i) = 1;
  return P;
}

}  // namespace

// ---------------------------------------------------------------------------
// OBDD

Index Obdd::index_of(Index id) const {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].id == id) return static_cast<Index>(i);
  return -1;
}

void validate(const Obdd& b) {
  std::set<Index> ids;
  int sinks[2] = {0, 0};
  for (const ObddNode& v : b.nodes) {
    if (!ids.insert(v.id).second) throw PreconditionError("OBDD node " + num(v.id) + " defined twice");
    if (v.is_sink()) {
      if (v.sink > 1) throw PreconditionError("OBDD node " + num(v.id) + " has invalid sink label");
      ++sinks[v.sink];
    } else if (v.var < 1 || v.var > b.n) {
      throw PreconditionError("OBDD node " + num(v.id) + " tests variable " + num(v.var) + " outside 1.." + num(b.n));
    }
  }
  if (sinks[1] != 1) throw PreconditionError("OBDD must have exactly one 1-sink");
  if (sinks[0] > 1) throw PreconditionError("OBDD has more than one 0-sink");
  if (b.index_of(b.source) < 0) throw PreconditionError("OBDD source " + num(b.source) + " is not a node");

  std::map<Index, int> indeg;
  for (const ObddNode& v : b.nodes) {
    if (v.is_sink()) continue;
    for (Index s : {v.lo, v.hi}) {
      if (s < 0) {
        if (!b.zero_suppressed) throw PreconditionError("OBDD node " + num(v.id) + " is missing an arc");
        continue;
      }
      const Index k = b.index_of(s);
      if (k < 0) throw PreconditionError("OBDD node " + num(v.id) + " points to unknown node " + num(s));
      const ObddNode& w = b.nodes[k];
      if (!w.is_sink() && w.var <= v.var)
        throw PreconditionError("OBDD arc " + num(v.id) + " -> " + num(s) + " violates the variable order");
      ++indeg[s];
    }
  }
  for (const ObddNode& v : b.nodes) {
    const int d = indeg.count(v.id) ? indeg[v.id] : 0;
    if (v.id == b.source && d > 0) throw PreconditionError("OBDD source " + num(v.id) + " has incoming arcs");
    if (v.id != b.source && d == 0 && !(v.sink == 0 && b.zero_suppressed))
      throw PreconditionError("OBDD node " + num(v.id) + " is unreachable (second source)");
  }
}

bool evaluate(const Obdd& b, const std::vector<bool>& x) {
  Index cur = b.source;
  for (;;) {
    const Index k = b.index_of(cur);
    if (k < 0) return false;
    const ObddNode& v = b.nodes[k];
    if (v.is_sink()) return v.sink == 1;
    cur = x.at(v.var - 1) ? v.hi : v.lo;
    if (cur < 0) return false;
  }
}

Obdd xor_obdd(Index n) {
  if (n < 1) throw PreconditionError("xor OBDD needs n >= 1");
  // Node 1 tests x1; nodes 2i and 2i+1 test x_{i+1} with parity 0 and 1.
  Obdd b;
  b.n = n;
  b.source = 1;
  const Index sink0 = 2 * n, sink1 = 2 * n + 1;
  auto node_for = [&](Index var, int parity) -> Index {
    if (var > n) return parity ? sink1 : sink0;
    return 2 * (var - 1) + parity;
  };
  b.nodes.push_back({1, 1, -1, node_for(2, 0), node_for(2, 1)});
  for (Index var = 2; var <= n; ++var)
    for (int parity = 0; parity < 2; ++parity)
      b.nodes.push_back({node_for(var, parity), var, -1, node_for(var + 1, parity), node_for(var + 1, 1 - parity)});
  b.nodes.push_back({sink0, 0, 0, -1, -1});
  b.nodes.push_back({sink1, 0, 1, -1, -1});
  return b;
}

ObddLift obdd_flow_lift(const Obdd& b, bool prune) {
  validate(b);
  const Index nn = static_cast<Index>(b.nodes.size());
  std::vector<ObddArc> all;
  for (const ObddNode& v : b.nodes) {
    if (v.is_sink()) continue;
    if (v.lo >= 0) all.push_back({v.id, v.lo, v.var, false});
    if (v.hi >= 0) all.push_back({v.id, v.hi, v.var, true});
  }

  // Nodes from which the 1-sink is reachable.
  std::vector<bool> good(nn, false);
  for (Index i = 0; i < nn; ++i) good[i] = b.nodes[i].sink == 1;
  for (bool changed = true; changed;) {
    changed = false;
    for (const ObddArc& a : all) {
      const Index f = b.index_of(a.from), t = b.index_of(a.to);
      if (good[t] && !good[f]) good[f] = changed = true;
    }
  }

  // Every source to 1-sink path must test x1, ..., xn in turn.
  const ObddNode& src = b.nodes[b.index_of(b.source)];
  if (good[b.index_of(b.source)] && !src.is_sink() && src.var != 1)
    throw PreconditionError("OBDD source tests x" + num(src.var) + ", expected x1");
  for (const ObddArc& a : all) {
    const Index t = b.index_of(a.to);
    if (!good[t]) continue;
    const ObddNode& w = b.nodes[t];
    const Index expect = w.is_sink() ? b.n + 1 : w.var;
    if (expect != a.var + 1)
      throw PreconditionError("OBDD arc " + num(a.from) + " -> " + num(a.to) + " skips a variable on a path to the 1-sink");
  }

  ObddLift out;
  for (const ObddArc& a : all)
    if (!prune || good[b.index_of(a.to)]) out.arcs.push_back(a);
  const Index m = static_cast<Index>(out.arcs.size());

  HBuilder hb{m, {}, {}, {}, {}};
  for (Index j = 0; j < m; ++j) hb.le(row_vector(m, {{j, -1}}), 0);
  for (const ObddNode& v : b.nodes) {
    VectorQ row = VectorQ::Zero(m);
    bool touched = false;
    for (Index j = 0; j < m; ++j) {
      if (out.arcs[j].to == v.id) { row(j) += 1; touched = true; }
      if (out.arcs[j].from == v.id) { row(j) -= 1; touched = true; }
    }
    if (!touched && v.id != b.source && v.sink != 1) continue;
    const Rational rhs = v.sink == 1 ? 1 : (v.id == b.source ? -1 : 0);
    hb.eq(row, rhs);
  }
  out.lift.h = hb.build();
  out.lift.proj = MatrixQ::Zero(b.n, m);
  for (Index j = 0; j < m; ++j)
    if (out.arcs[j].hi) out.lift.proj(out.arcs[j].var - 1, j) = 1;
  return out;
}

// ---------------------------------------------------------------------------
// Posets and graphs

std::vector<std::vector<bool>> strict_order(const Poset& p) {
  const Index k = p.size();
  std::vector<std::vector<bool>> less(k, std::vector<bool>(k, false));
  for (const auto& [a, b] : p.covers) less[a][b] = true;
  for (Index m = 0; m < k; ++m)
    for (Index i = 0; i < k; ++i)
      if (less[i][m])
        for (Index j = 0; j < k; ++j)
          if (less[m][j]) less[i][j] = true;
  return less;
}

void validate(const Poset& p) {
  const Index k = p.size();
  std::set<std::string> names(p.names.begin(), p.names.end());
  if (static_cast<Index>(names.size()) != k) throw PreconditionError("poset element names are not distinct");
  std::set<std::pair<Index, Index>> seen;
  for (const auto& [a, b] : p.covers) {
    if (a < 0 || b < 0 || a >= k || b >= k) throw PreconditionError("cover relation refers to an unknown element");
    if (a == b) throw PreconditionError("element " + p.names[a] + " covers itself");
    if (!seen.insert({a, b}).second) throw PreconditionError("cover " + p.names[a] + " < " + p.names[b] + " repeated");
  }
  const auto less = strict_order(p);
  for (Index i = 0; i < k; ++i)
    if (less[i][i]) throw PreconditionError("cover relations contain a cycle through " + p.names[i]);
  for (const auto& [a, b] : p.covers)
    for (Index m = 0; m < k; ++m)
      if (less[a][m] && less[m][b])
        throw PreconditionError("cover " + p.names[a] + " < " + p.names[b] + " is implied by " + p.names[m]);
}

namespace {

template <typename Pred>
MatrixQ subset_indicators(Index k, Pred keep) {
  if (k > 24) throw PreconditionError("too many elements to enumerate subsets (" + num(k) + ")");
  std::vector<VectorQ> rows;
  for (unsigned long s = 0; s < (1ul << k); ++s) {
    if (!keep(s)) continue;
    VectorQ v = VectorQ::Zero(k);
    for (Index i = 0; i < k; ++i)
      if (s >> i & 1) v(i) = 1;
    rows.push_back(std::move(v));
  }
  return stack_rows(rows, k);
}

std::vector<bool> minimal_elements(const Poset& p, bool maximal) {
  std::vector<bool> out(p.size(), true);
  for (const auto& [a, b] : p.covers) out[maximal ? a : b] = false;
  return out;
}

}  // namespace

MatrixQ antichain_indicators(const Poset& p) {
  const auto less = strict_order(p);
  const Index k = p.size();
  return subset_indicators(k, [&](unsigned long s) {
    for (Index i = 0; i < k; ++i)
      for (Index j = 0; j < k; ++j)
        if ((s >> i & 1) && (s >> j & 1) && less[i][j]) return false;
    return true;
  });
}

MatrixQ filter_indicators(const Poset& p) {
  const auto less = strict_order(p);
  const Index k = p.size();
  return subset_indicators(k, [&](unsigned long s) {
    for (Index i = 0; i < k; ++i)
      for (Index j = 0; j < k; ++j)
        if ((s >> i & 1) && !(s >> j & 1) && less[i][j]) return false;
    return true;
  });
}

namespace {

void order_rows(const Poset& p, HBuilder& hb, Index offset) {
  const Index n = hb.n;
  for (const auto& [a, b] : p.covers) hb.le(row_vector(n, {{offset + a, 1}, {offset + b, -1}}), 0);
  const auto mins = minimal_elements(p, false), maxs = minimal_elements(p, true);
  for (Index a = 0; a < p.size(); ++a)
    if (mins[a]) hb.le(row_vector(n, {{offset + a, -1}}), 0);
  for (Index a = 0; a < p.size(); ++a)
    if (maxs[a]) hb.le(row_vector(n, {{offset + a, 1}}), 1);
}

}  // namespace

Polytope order_polytope(const Poset& p) {
  validate(p);
  HBuilder hb{p.size(), {}, {}, {}, {}};
  order_rows(p, hb, 0);
  return h_to_v(hb.build());
}

Polytope chain_polytope(const Poset& p) {
  validate(p);
  return v_to_h(antichain_indicators(p));
}

ChainLift chain_polytope_lift(const Poset& p) {
  validate(p);
  const Index k = p.size();
  HBuilder hb{2 * k, {}, {}, {}, {}};
  order_rows(p, hb, k);
  const auto mins = minimal_elements(p, false);
  for (Index a = 0; a < k; ++a)
    if (!mins[a]) hb.le(row_vector(2 * k, {{a, -1}}), 0);
  // b covers a: z_b <= x_b - x_a.
  for (const auto& [a, b] : p.covers) hb.le(row_vector(2 * k, {{b, 1}, {k + b, -1}, {k + a, 1}}), 0);
  for (Index a = 0; a < k; ++a)
    if (mins[a]) hb.eq(row_vector(2 * k, {{a, 1}, {k + a, -1}}), 0);

  ChainLift out;
  out.lift.h = hb.build();
  out.lift.proj = identity_projection(k, 2 * k);
  out.chain = chain_polytope(p);
  const LiftVerification v = verify_lift(out.chain, out.lift);
  if (!v.ok()) throw std::logic_error("chain polytope lift does not project correctly: " + v.message);
  return out;
}

bool Graph::adjacent(Index i, Index j) const {
  if (i > j) std::swap(i, j);
  return std::binary_search(edges.begin(), edges.end(), std::make_pair(i, j));
}

Graph make_graph(Index n, std::vector<std::pair<Index, Index>> edges) {
  for (auto& [i, j] : edges) {
    if (i < 0 || j < 0 || i >= n || j >= n) throw PreconditionError("edge refers to a vertex outside 1.." + num(n));
    if (i == j) throw PreconditionError("loop at vertex " + num(i + 1));
    if (i > j) std::swap(i, j);
  }
  std::sort(edges.begin(), edges.end());
  if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) throw PreconditionError("repeated edge");
  return {n, std::move(edges)};
}

Graph comparability_graph(const Poset& p) {
  validate(p);
  const auto less = strict_order(p);
  std::vector<std::pair<Index, Index>> edges;
  for (Index i = 0; i < p.size(); ++i)
    for (Index j = i + 1; j < p.size(); ++j)
      if (less[i][j] || less[j][i]) edges.emplace_back(i, j);
  return make_graph(p.size(), std::move(edges));
}

MatrixQ stable_set_indicators(const Graph& g) {
  return subset_indicators(g.n, [&](unsigned long s) {
    for (const auto& [i, j] : g.edges)
      if ((s >> i & 1) && (s >> j & 1)) return false;
    return true;
  });
}

Polytope stable_set_polytope(const Graph& g) { return v_to_h(stable_set_indicators(g)); }

// ---------------------------------------------------------------------------
// LMIs

MatrixQ LmiSpec::evaluate(const VectorQ& w) const {
  if (w.size() != num_vars())
    throw DimensionMismatch("LMI has " + num(num_vars()) + " variables, point has " + num(w.size()));
  MatrixQ M = A0;
  for (Index j = 0; j < num_vars(); ++j)
    if (!w(j).is_zero()) M += A[j] * w(j);
  return M;
}

bool LmiSpec::contains(const VectorQ& w) const { return is_psd(evaluate(w)); }

void validate(const LmiSpec& L) {
  auto check = [&](const MatrixQ& M, const std::string& what) {
    if (M.rows() != L.size || M.cols() != L.size) throw PreconditionError(what + " is not " + num(L.size) + "x" + num(L.size));
    if (!is_symmetric(M)) throw PreconditionError(what + " is not symmetric");
  };
  check(L.A0, "constant matrix");
  for (Index j = 0; j < L.num_vars(); ++j) check(L.A[j], "matrix of variable " + num(j + 1));
  if (static_cast<Index>(L.names.size()) != L.num_vars()) throw PreconditionError("variable name count differs");
  if (L.num_original > L.num_vars()) throw PreconditionError("more original variables than variables");
}

std::string monomial_name(const Monomial& m) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!s.empty()) s += '*';
    s += "x" + std::to_string(i + 1);
    if (m[i] > 1) s += "^" + std::to_string(m[i]);
  }
  return s.empty() ? "1" : s;
}

std::vector<Monomial> monomials_up_to(Index n, int d) {
  std::vector<Monomial> out;
  Monomial cur(n, 0);
  std::function<void(Index, int)> rec = [&](Index i, int left) {
    if (i == n - 1 || n == 0) {
      if (n > 0) cur[i] = left;
      if (n > 0 || left == 0) out.push_back(cur);
      return;
    }
    for (int e = left; e >= 0; --e) {
      cur[i] = e;
      rec(i + 1, left - e);
    }
    cur[i] = 0;
  };
  for (int deg = 0; deg <= d; ++deg) rec(0, deg);
  return out;
}

namespace {

MatrixQ unit_sym(Index m, Index i, Index j) {
  MatrixQ E = MatrixQ::Zero(m, m);
  E(i, j) += 1;
  if (i != j) E(j, i) += 1;
  return E;
}

Rational eval_monomial(const Monomial& m, const VectorQ& x) {
  Rational r = 1;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (int e = 0; e < m[i]; ++e) r *= x(static_cast<Index>(i));
  return r;
}

Monomial add(const Monomial& a, const Monomial& b) {
  Monomial c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[i] + b[i];
  return c;
}

using Poly = std::map<Monomial, Rational>;

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly c;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) c[add(ma, mb)] += ca * cb;
  std::erase_if(c, [](const auto& kv) { return kv.second.is_zero(); });
  return c;
}

// Coefficients (constant first) of the polynomial through the given points.
std::vector<Rational> lagrange(const std::vector<Rational>& xs, const std::vector<Rational>& ys) {
  const std::size_t k = xs.size();
  std::vector<Rational> out(k, Rational(0));
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<Rational> basis{Rational(1)};
    Rational denom = 1;
    for (std::size_t j = 0; j < k; ++j) {
      if (j == i) continue;
      std::vector<Rational> next(basis.size() + 1, Rational(0));
      for (std::size_t d = 0; d < basis.size(); ++d) {
        next[d + 1] += basis[d];
        next[d] -= basis[d] * xs[j];
      }
      basis = std::move(next);
      denom *= xs[i] - xs[j];
    }
    for (std::size_t d = 0; d < basis.size(); ++d) out[d] += basis[d] * ys[i] / denom;
  }
  while (out.size() > 1 && out.back().is_zero()) out.pop_back();
  return out;
}

}  // namespace

LmiSpec theta_body_lmi(const Graph& g) {
  const Index n = g.n, m = n + 1;
  LmiSpec L;
  L.size = m;
  L.A0 = unit_sym(m, 0, 0);
  for (Index i = 0; i < n; ++i) {
    L.A.push_back(unit_sym(m, 0, i + 1) + unit_sym(m, i + 1, i + 1));
    L.names.push_back("x" + num(i + 1));
  }
  L.num_original = n;
  for (Index a = 0; a < n; ++a)
    for (Index b = a + 1; b < n; ++b) {
      if (g.adjacent(a, b)) continue;
      L.A.push_back(unit_sym(m, a + 1, b + 1));
      L.names.push_back("x" + num(a + 1) + "*x" + num(b + 1));
    }
  return L;
}

bool KLevelLift::all_exact() const {
  return std::all_of(certificates.begin(), certificates.end(), [](const FacetCertificate& c) { return c.exact; });
}

VectorQ KLevelLift::preimage(const VectorQ& x) const {
  VectorQ w(static_cast<Index>(variables.size()));
  for (std::size_t j = 0; j < variables.size(); ++j) w(static_cast<Index>(j)) = eval_monomial(variables[j], x);
  return w;
}

KLevelLift klevel_sos_lift(const Polytope& p, Index k) {
  if (k < 1) throw PreconditionError("k must be at least 1");
  if (!p.full_dimensional()) throw PreconditionError("k-level lift needs a full-dimensional polytope");
  const LevelReport rep = is_k_level(p, k);
  if (!rep.holds)
    throw PreconditionError("facet " + num(rep.first_violating_facet + 1) + " takes " +
                            num(static_cast<Index>(rep.levels[rep.first_violating_facet].size())) +
                            " values on the vertices, more than " + num(k));
  const Index n = p.ambient(), nv = p.num_vertices();
  const int d = static_cast<int>(k - 1);

  KLevelLift out;
  out.basis = monomials_up_to(n, d);
  const std::vector<Monomial> all = monomials_up_to(n, 2 * d);

  // Linearize every monomial of degree <= 2(k-1) against the vertex set.
  std::vector<Monomial> chosen;
  MatrixQ evals(nv, 0);
  std::map<Monomial, VectorQ> coeffs;  // over `chosen`, padded lazily
  for (const Monomial& mono : all) {
    VectorQ col(nv);
    for (Index j = 0; j < nv; ++j) col(j) = eval_monomial(mono, p.vertex(j));
    std::optional<VectorQ> sol;
    if (evals.cols() > 0) sol = solve_affine(evals, col);
    else if (is_zero(col)) sol = VectorQ(0);
    if (sol) {
      coeffs[mono] = *sol;
    } else {
      evals.conservativeResize(nv, evals.cols() + 1);
      evals.col(evals.cols() - 1) = col;
      chosen.push_back(mono);
      coeffs[mono] = row_vector(static_cast<Index>(chosen.size()), {{static_cast<Index>(chosen.size()) - 1, 1}});
    }
  }
  const Index nc = static_cast<Index>(chosen.size());
  for (auto& [mono, c] : coeffs) {
    const Index old = c.size();
    c.conservativeResize(nc);
    for (Index i = old; i < nc; ++i) c(i) = 0;
  }
  // chosen[0] is the constant and chosen[1..n] are x1..xn by full dimensionality.
  const Index m = static_cast<Index>(out.basis.size());
  LmiSpec& L = out.lmi;
  L.size = m;
  L.A0 = MatrixQ::Zero(m, m);
  L.A.assign(nc - 1, MatrixQ::Zero(m, m));
  for (Index j = 1; j < nc; ++j) {
    L.names.push_back(monomial_name(chosen[j]));
    out.variables.push_back(chosen[j]);
  }
  L.num_original = n;
  for (Index a = 0; a < m; ++a)
    for (Index b = 0; b < m; ++b) {
      const VectorQ& c = coeffs.at(add(out.basis[a], out.basis[b]));
      L.A0(a, b) = c(0);
      for (Index j = 1; j < nc; ++j) L.A[j - 1](a, b) = c(j);
    }

  for (Index f = 0; f < p.num_facets(); ++f) {
    FacetCertificate cert;
    cert.levels = rep.levels[f];
    const Rational amax = cert.levels.back();
    cert.c = Rational(1) / amax;
    std::vector<Rational> roots;
    cert.exact = true;
    for (const Rational& a : cert.levels) {
      Rational root;
      if (!rational_sqrt(a * amax, root)) { cert.exact = false; break; }
      roots.push_back(root);
    }
    if (cert.exact) {
      cert.r = lagrange(cert.levels, roots);
      // h(x) = r(beta - a.x) by Horner.
      Poly t;
      t[Monomial(n, 0)] = p.h.b(f);
      for (Index i = 0; i < n; ++i) {
        Monomial e(n, 0);
        e[i] = 1;
        if (!p.h.A(f, i).is_zero()) t[e] = -p.h.A(f, i);
      }
      Poly h;
      for (auto it = cert.r.rbegin(); it != cert.r.rend(); ++it) {
        h = poly_mul(h, t);
        if (!it->is_zero()) h[Monomial(n, 0)] += *it;
      }
      cert.h = VectorQ::Zero(m);
      for (Index a = 0; a < m; ++a)
        if (auto it = h.find(out.basis[a]); it != h.end()) cert.h(a) = it->second;
      cert.gram = MatrixQ(m, m);
      for (Index a = 0; a < m; ++a)
        for (Index b = 0; b < m; ++b) cert.gram(a, b) = cert.c * cert.h(a) * cert.h(b);
    }
    out.certificates.push_back(std::move(cert));
  }
  return out;
}

Check verify_certificates_vertexwise(const Polytope& p, const KLevelLift& L) {
  for (Index f = 0; f < p.num_facets(); ++f) {
    const FacetCertificate& c = L.certificates.at(f);
    if (!c.exact) continue;
    for (Index j = 0; j < p.num_vertices(); ++j) {
      const VectorQ v = p.vertex(j);
      Rational h = 0;
      for (std::size_t a = 0; a < L.basis.size(); ++a) h += c.h(static_cast<Index>(a)) * eval_monomial(L.basis[a], v);
      const Rational slack = p.h.b(f) - dot(p.h.A.row(f).transpose(), v);
      if (c.c * h * h != slack)
        return Check::fail("facet " + num(f + 1) + " at vertex " + num(j + 1) + ": c h^2 = " + (c.c * h * h).str() +
                               ", slack " + slack.str(),
                           f, j);
    }
  }
  return {};
}

LmiSpec quadratic_epigraph_lmi(const MatrixQ& A, const VectorQ& b, const Rational& c) {
  const Index n = A.rows();
  if (A.cols() != n || b.size() != n)
    throw DimensionMismatch("quadratic needs square A and matching b (got " + num(A.rows()) + "x" + num(A.cols()) +
                            " and " + num(b.size()) + ")");
  const PsdResult r = psd_check(A);
  if (!r.psd) {
    std::string w;
    for (Index i = 0; i < n; ++i) w += (i ? " " : "") + r.witness(i).str();
    throw PreconditionError("quadratic form is not convex: v = (" + w + ") gives v^T A v = " +
                            quadratic_form(A, r.witness).str());
  }
  const Index m = n + 1;
  LmiSpec L;
  L.size = m;
  L.A0 = MatrixQ::Zero(m, m);
  L.A0(0, 0) = -c;
  L.A0.bottomRightCorner(n, n) = A;
  for (Index i = 0; i < n; ++i) {
    MatrixQ Ai = MatrixQ::Zero(m, m);
    Ai(0, 0) = Rational(-2) * b(i);
    for (Index j = 0; j < n; ++j) {
      Ai(0, j + 1) = -A(j, i);
      Ai(j + 1, 0) = -A(j, i);
    }
    L.A.push_back(std::move(Ai));
    L.names.push_back("x" + num(i + 1));
  }
  L.A.push_back(unit_sym(m, 0, 0));
  L.names.push_back("t");
  L.num_original = n + 1;
  return L;
}

void write_sdpa(std::ostream& os, const LmiSpec& L, bool exact) {
  validate(L);
  auto value = [&](const Rational& q) {
    if (exact) return q.str();
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", q.to_double());
    return std::string(buf);
  };
  os << "* LMI F1 x1 + ... + Fm xm - F0 psd\n* variables:";
  for (const std::string& s : L.names) os << ' ' << s;
  os << "\n* projected variables: " << L.num_original << '\n';
  os << L.num_vars() << "\n1\n" << L.size << '\n';
  for (Index j = 0; j < L.num_vars(); ++j) os << (j ? " " : "") << 0;
  os << '\n';
  auto block = [&](Index var, const MatrixQ& M, bool negate) {
    for (Index i = 0; i < L.size; ++i)
      for (Index j = i; j < L.size; ++j)
        if (!M(i, j).is_zero()) os << var << " 1 " << i + 1 << ' ' << j + 1 << ' ' << value(negate ? -M(i, j) : M(i, j)) << '\n';
  };
  block(0, L.A0, true);
  for (Index j = 0; j < L.num_vars(); ++j) block(j + 1, L.A[j], false);
}

// ---------------------------------------------------------------------------
// Verification

std::string to_string(LiftTier t) {
  switch (t) {
    case LiftTier::Failed: return "failed";
    case LiftTier::Exact: return "exact";
    case LiftTier::Certified: return "certified";
    case LiftTier::Partial: return "partially verified";
  }
  return "?";
}

namespace {

std::string point_str(const VectorQ& v) {
  std::string s = "(";
  for (Index i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v(i).str();
  return s + ")";
}

LiftVerification failure(std::string msg, std::optional<VectorQ> w = std::nullopt) {
  return {LiftTier::Failed, std::move(msg), std::move(w)};
}

}  // namespace

LiftVerification verify_lift(const Polytope& p, const PolyLift& L) {
  if (L.proj.rows() != p.ambient())
    throw DimensionMismatch("projection maps to R^" + num(L.proj.rows()) + ", target lives in R^" + num(p.ambient()));
  if (L.proj.cols() != L.h.ambient())
    throw DimensionMismatch("projection has " + num(L.proj.cols()) + " columns, lift has " + num(L.h.ambient()) +
                            " variables");
  const Polytope q = h_to_v(L.h);
  const MatrixQ image = mul(q.vertices, L.proj.transpose());
  for (Index j = 0; j < image.rows(); ++j) {
    const VectorQ x = image.row(j).transpose();
    if (!contains(p, x))
      return failure("lift vertex " + num(j + 1) + " projects to " + point_str(x) + ", outside the target", x);
  }
  for (Index j = 0; j < p.num_vertices(); ++j) {
    bool found = false;
    for (Index i = 0; i < image.rows() && !found; ++i) found = equal(image.row(i), p.vertices.row(j));
    if (!found)
      return failure("target vertex " + num(j + 1) + " " + point_str(p.vertex(j)) + " is not in the projection",
                     p.vertex(j));
  }
  return {LiftTier::Exact, "projection equals target (" + num(q.num_vertices()) + " lift vertices)", std::nullopt};
}

LiftVerification verify_lift(const Polytope& p, const PsdLift& L) {
  validate(L.lmi);
  const Index n = p.ambient();
  if (L.lmi.num_original != n)
    throw DimensionMismatch("LMI projects to R^" + num(L.lmi.num_original) + ", target lives in R^" + num(n));
  if (static_cast<Index>(L.preimages.size()) != p.num_vertices())
    return failure("expected " + num(p.num_vertices()) + " vertex preimages, got " + num(static_cast<Index>(L.preimages.size())));
  for (Index j = 0; j < p.num_vertices(); ++j) {
    const VectorQ& w = L.preimages[j];
    if (w.size() != L.lmi.num_vars()) return failure("preimage of vertex " + num(j + 1) + " has the wrong length");
    if (!equal(w.head(n), p.vertex(j))) return failure("preimage of vertex " + num(j + 1) + " projects elsewhere", w);
    if (!L.lmi.contains(w)) return failure("preimage of vertex " + num(j + 1) + " violates the LMI", w);
  }
  if (!p.full_dimensional() || static_cast<Index>(L.facet_certificates.size()) != p.num_facets())
    return {LiftTier::Partial, "vertices lift exactly; reverse inclusion not certified", std::nullopt};
  for (Index f = 0; f < p.num_facets(); ++f) {
    const MatrixQ& B = L.facet_certificates[f];
    const std::string tag = "facet " + num(f + 1);
    if (B.size() == 0) return {LiftTier::Partial, "vertices lift exactly; no certificate for " + tag, std::nullopt};
    if (B.rows() != L.lmi.size || B.cols() != L.lmi.size || !is_symmetric(B) || !is_psd(B))
      return {LiftTier::Partial, "vertices lift exactly; certificate for " + tag + " is not a psd matrix", std::nullopt};
    bool ok = trace_product(L.lmi.A0, B) == p.h.b(f);
    for (Index j = 0; j < L.lmi.num_vars() && ok; ++j)
      ok = trace_product(L.lmi.A[j], B) == (j < n ? Rational(-p.h.A(f, j)) : Rational(0));
    if (!ok) return {LiftTier::Partial, "vertices lift exactly; certificate for " + tag + " fails the trace identity", std::nullopt};
  }
  return {LiftTier::Certified, "vertices lift exactly; every facet certified", std::nullopt};
}

PsdLift to_psd_lift(const Polytope& p, const KLevelLift& k) {
  PsdLift out;
  out.lmi = k.lmi;
  for (Index j = 0; j < p.num_vertices(); ++j) out.preimages.push_back(k.preimage(p.vertex(j)));
  for (const FacetCertificate& c : k.certificates) out.facet_certificates.push_back(c.exact ? c.gram : MatrixQ());
  return out;
}

// ---------------------------------------------------------------------------
// Classical examples

Polytope cross_polytope(Index n) {
  MatrixQ V = MatrixQ::Zero(2 * n, n);
  for (Index i = 0; i < n; ++i) {
    V(2 * i, i) = 1;
    V(2 * i + 1, i) = -1;
  }
  return v_to_h(V);
}

PolyLift cross_polytope_lift(Index n) {
  HBuilder hb{2 * n, {}, {}, {}, {}};
  for (Index i = 0; i < n; ++i) {
    hb.le(row_vector(2 * n, {{i, 1}, {n + i, -1}}), 0);
    hb.le(row_vector(2 * n, {{i, -1}, {n + i, -1}}), 0);
  }
  VectorQ ones = VectorQ::Zero(2 * n);
  ones.tail(n).setConstant(1);
  hb.eq(ones, 1);
  return {hb.build(), identity_projection(n, 2 * n)};
}

Polytope permutahedron(Index n) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<VectorQ> rows;
  do {
    VectorQ v(n);
    for (Index i = 0; i < n; ++i) v(i) = perm[i];
    rows.push_back(std::move(v));
  } while (std::next_permutation(perm.begin(), perm.end()));
  return v_to_h(stack_rows(rows, n));
}

PolyLift birkhoff_lift(Index n) {
  const Index N = n * n;
  HBuilder hb{N, {}, {}, {}, {}};
  for (Index k = 0; k < N; ++k) hb.le(row_vector(N, {{k, -1}}), 0);
  for (Index i = 0; i < n; ++i) {
    VectorQ r = VectorQ::Zero(N), c = VectorQ::Zero(N);
    for (Index j = 0; j < n; ++j) {
      r(i * n + j) = 1;
      c(j * n + i) = 1;
    }
    hb.eq(r, 1);
    hb.eq(c, 1);
  }
  MatrixQ P = MatrixQ::Zero(n, N);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) P(j, i * n + j) = i + 1;
  return {hb.build(), P};
}

}  // namespace liftkit
