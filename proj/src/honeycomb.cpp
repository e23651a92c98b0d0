#include "liftkit/honeycomb.hpp"

#include <algorithm>
#include <set>

#include "liftkit/error.hpp"
#include "liftkit/linalg.hpp"

namespace liftkit {

namespace {

Index y_index(Index r, Index c) { return r * (r + 1) / 2 + c; }

}  // namespace

Index HoneycombSpec::edge(Index r, Index c, Leg leg) const {
  if (r < 0 || r >= n || c < 0 || c > r) throw PreconditionError("no vertex Y(" + std::to_string(r) + "," + std::to_string(c) + ")");
  return 3 * y_index(r, c) + static_cast<Index>(leg);
}

Index HoneycombSpec::num_internal() const {
  return static_cast<Index>(std::count(boundary.begin(), boundary.end(), false));
}

std::string HoneycombSpec::edge_name(Index id) const {
  static const char* legs[] = {"NW", "NE", "S"};
  Index y = id / 3, r = 0;
  while ((r + 1) * (r + 2) / 2 <= y) ++r;
  return std::string(legs[id % 3]) + "(" + std::to_string(r) + "," + std::to_string(y - y_index(r, 0)) + ")";
}

HoneycombSpec build_honeycomb(Index n) {
  if (n < 1) throw PreconditionError("honeycomb needs n >= 1");
  HoneycombSpec h;
  h.n = n;
  const Index ne = 3 * n * (n + 1) / 2;
  h.boundary.assign(ne, true);
  for (Index r = 0; r < n; ++r)
    for (Index c = 0; c <= r; ++c) h.vertices.push_back({h.edge(r, c, Leg::NW), h.edge(r, c, Leg::NE), h.edge(r, c, Leg::S)});
  for (Index r = 1; r < n; ++r)
    for (Index c = 0; c < r; ++c) {
      const std::array<Index, 3> v = {h.edge(r - 1, c, Leg::S), h.edge(r, c, Leg::NE), h.edge(r, c + 1, Leg::NW)};
      for (Index e : v) h.boundary[e] = false;
      h.vertices.push_back(v);
    }
  // One pair per internal edge: the two parallel edges at its ends.
  for (Index r = 0; r + 1 < n; ++r)
    for (Index c = 0; c <= r; ++c) h.gamma.emplace_back(h.edge(r + 1, c + 1, Leg::NW), h.edge(r, c, Leg::NW));
  for (Index r = 1; r < n; ++r)
    for (Index c = 1; c <= r; ++c) h.gamma.emplace_back(h.edge(r, c - 1, Leg::NE), h.edge(r, c, Leg::NE));
  for (Index r = 1; r < n; ++r)
    for (Index c = 0; c < r; ++c) h.gamma.emplace_back(h.edge(r - 1, c, Leg::S), h.edge(r, c, Leg::S));
  for (Index i = 1; i <= n; ++i) {
    h.lambda.push_back(h.edge(n - i, 0, Leg::NW));
    h.mu.push_back(h.edge(i - 1, i - 1, Leg::NE));
    h.nu.push_back(h.edge(n - 1, n - i, Leg::S));
  }
  return h;
}

Index free_internal_edges(const HoneycombSpec& h) {
  Index fixed = 0;
  for (Index v = 0; v < h.n * (h.n + 1) / 2; ++v) {
    const auto& t = h.vertices[v];
    const int nb = h.boundary[t[0]] + h.boundary[t[1]] + h.boundary[t[2]];
    if (nb == 2) ++fixed;
  }
  return h.num_internal() - fixed;
}

std::array<Index, 6> n3_labels(const HoneycombSpec& h) {
  if (h.n != 3) throw PreconditionError("the e1..e6 labels exist only for n = 3");
  return {h.edge(1, 0, Leg::NE), h.edge(1, 1, Leg::NW), h.edge(1, 0, Leg::S),
          h.edge(1, 1, Leg::S),  h.edge(2, 1, Leg::NW), h.edge(2, 1, Leg::NE)};
}

Rational HornInequality::evaluate(const VectorQ& l, const VectorQ& m, const VectorQ& v) const {
  return dot(lambda, l) + dot(mu, m) + dot(nu, v);
}

HornResult horn_membership(const VectorQ& lambda, const VectorQ& mu, const VectorQ& nu) {
  const Index n = lambda.size();
  if (mu.size() != n || nu.size() != n)
    throw DimensionMismatch("triple lengths differ: " + std::to_string(lambda.size()) + ", " + std::to_string(mu.size()) +
                            ", " + std::to_string(nu.size()));
  if (n == 0) throw DimensionMismatch("empty triple");
  HornResult res;
  const std::pair<const char*, const VectorQ*> parts[] = {{"lambda", &lambda}, {"mu", &mu}, {"nu", &nu}};
  for (const auto& [name, v] : parts)
    for (Index i = 0; i + 1 < n; ++i)
      if ((*v)(i) < (*v)(i + 1)) {
        res.reason = std::string(name) + " is not weakly decreasing at position " + std::to_string(i + 1);
        return res;
      }
  const Rational trace = lambda.sum() + mu.sum() + nu.sum();
  if (!trace.is_zero()) {
    res.reason = "trace condition fails: sum of all entries is " + trace.str();
    return res;
  }

  const HoneycombSpec h = build_honeycomb(n);
  const Index ne = h.num_edges();
  const Index rows = static_cast<Index>(h.vertices.size() + h.gamma.size()) + 3 * n;
  LpProblem& lp = res.lp;
  lp.c = VectorQ::Zero(ne);
  lp.A = MatrixQ::Zero(rows, ne);
  lp.b = VectorQ::Zero(rows);
  Index row = 0;
  for (const auto& v : h.vertices) {
    for (Index e : v) lp.A(row, e) = 1;
    lp.senses.push_back(Sense::Eq);
    ++row;
  }
  for (const auto& [a, b] : h.gamma) {
    lp.A(row, a) = 1;
    lp.A(row, b) = -1;
    lp.senses.push_back(Sense::Ge);
    ++row;
  }
  const Index first_boundary = row;
  const std::pair<const std::vector<Index>*, const VectorQ*> blocks[] = {{&h.lambda, &lambda}, {&h.mu, &mu}, {&h.nu, &nu}};
  for (const auto& [ids, vals] : blocks)
    for (Index i = 0; i < n; ++i) {
      lp.A(row, (*ids)[i]) = 1;
      lp.b(row) = (*vals)(i);
      lp.senses.push_back(Sense::Eq);
      ++row;
    }
  lp.make_free();

  const LpResult r = lp_solve(lp);
  if (r.status == LpStatus::Optimal) {
    res.member = true;
    res.edges = r.x;
    return res;
  }
  res.reason = "no honeycomb has these boundary values";
  res.farkas = r.y;
  if (!verify_farkas(lp, r.y)) throw std::logic_error("honeycomb LP returned an invalid infeasibility certificate");
  // For a feasible right-hand side, b.y >= 0; only boundary rows have b != 0.
  HornInequality ineq{r.y.segment(first_boundary, n), r.y.segment(first_boundary + n, n), r.y.segment(first_boundary + 2 * n, n)};
  res.violated = ineq;
  return res;
}

EliminatedSystem eliminate_to_inequalities(const HoneycombSpec& h, const VectorQ& lambda, const VectorQ& mu) {
  if (h.n != 3) throw PreconditionError("elimination is implemented for n = 3 only; use horn_membership for n = " + std::to_string(h.n));
  if (lambda.size() != 3 || mu.size() != 3) throw DimensionMismatch("lambda and mu must have length 3");
  const Index ne = h.num_edges();
  const std::array<Index, 6> lab = n3_labels(h);

  // Unknowns: internal edges except e1, boundary nu edges (nu3 before nu1, nu2),
  // then e1, nu1, nu2 last so that they stay free.
  std::vector<Index> order;
  for (Index e = 0; e < ne; ++e)
    if (!h.boundary[e] && e != lab[0]) order.push_back(e);
  order.push_back(h.nu[2]);
  order.push_back(lab[0]);
  order.push_back(h.nu[0]);
  order.push_back(h.nu[1]);
  const Index nu_k = static_cast<Index>(order.size());
  std::vector<Index> col_of(ne, -1);
  for (Index k = 0; k < nu_k; ++k) col_of[order[k]] = k;

  // Known boundary values.
  std::vector<std::optional<Rational>> known(ne);
  for (Index i = 0; i < 3; ++i) {
    known[h.lambda[i]] = lambda(i);
    known[h.mu[i]] = mu(i);
  }

  MatrixQ M = MatrixQ::Zero(static_cast<Index>(h.vertices.size()), nu_k + 1);
  for (std::size_t v = 0; v < h.vertices.size(); ++v)
    for (Index e : h.vertices[v]) {
      if (known[e]) M(static_cast<Index>(v), nu_k) -= *known[e];
      else M(static_cast<Index>(v), col_of[e]) += 1;
    }
  const Rref R = rref(M);
  if (!R.pivots.empty() && R.pivots.back() == nu_k) throw PreconditionError("vertex equations are inconsistent");
  const Index free0 = nu_k - 3;
  for (std::size_t i = 0; i < R.pivots.size(); ++i)
    if (R.pivots[i] >= free0) throw std::logic_error("unexpected free variables in honeycomb elimination");

  // Affine expression (coefficients on e1, nu1, nu2; constant) of each edge.
  EliminatedSystem out;
  out.vars = {"e1", "nu1", "nu2"};
  out.edge_expr = MatrixQ::Zero(ne, 4);
  for (Index e = 0; e < ne; ++e) {
    if (known[e]) {
      out.edge_expr(e, 3) = *known[e];
      continue;
    }
    const Index k = col_of[e];
    if (k >= free0) {
      out.edge_expr(e, k - free0) = 1;
      continue;
    }
    const Index prow = std::find(R.pivots.begin(), R.pivots.end(), k) - R.pivots.begin();
    for (Index j = 0; j < 3; ++j) out.edge_expr(e, j) = -R.R(prow, free0 + j);
    out.edge_expr(e, 3) = R.R(prow, nu_k);
  }
  out.nu3_expr = out.edge_expr.row(h.nu[2]).transpose();

  std::vector<VectorQ> rows;
  std::vector<Rational> rhs;
  std::set<std::vector<Rational>> seen;
  auto add = [&](const VectorQ& expr) {  // expr >= 0, i.e. -a.v <= c
    VectorQ a = -expr.head(3);
    Rational c = expr(3);
    if (is_zero(a)) {
      if (c.sign() >= 0) return;
    } else {
      Rational scale = 0;
      for (Index j = 0; j < 3 && scale.is_zero(); ++j) scale = abs(a(j));
      a /= scale;
      c /= scale;
    }
    std::vector<Rational> key(a.data(), a.data() + 3);
    key.push_back(c);
    if (!seen.insert(key).second) return;
    rows.push_back(a);
    rhs.push_back(c);
  };
  for (const auto& [a, b] : h.gamma) add(out.edge_expr.row(a).transpose() - out.edge_expr.row(b).transpose());
  out.num_gamma = static_cast<Index>(rows.size());
  const VectorQ nu1 = out.edge_expr.row(h.nu[0]).transpose(), nu2 = out.edge_expr.row(h.nu[1]).transpose();
  add(nu1 - nu2);
  add(nu2 - out.nu3_expr);

  out.A = MatrixQ(static_cast<Index>(rows.size()), 3);
  out.b = VectorQ(static_cast<Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out.A.row(static_cast<Index>(i)) = rows[i].transpose();
    out.b(static_cast<Index>(i)) = rhs[i];
  }
  return out;
}

namespace {

// "2 + nu1 - nu2" from a constant and coefficients.
std::string affine(const std::vector<std::string>& vars, const VectorQ& a, const Rational& c, Index skip) {
  std::string s;
  auto term = [&](const Rational& coef, const std::string& name) {
    if (coef.is_zero()) return;
    const bool neg = coef.sign() < 0;
    const Rational m = abs(coef);
    std::string body = name.empty() ? m.str() : (m == 1 ? name : m.str() + " " + name);
    if (s.empty()) s = neg ? "-" + body : body;
    else s += (neg ? " - " : " + ") + body;
  };
  term(c, "");
  for (Index j = 0; j < a.size(); ++j)
    if (j != skip) term(a(j), vars[j]);
  return s.empty() ? "0" : s;
}

}  // namespace

std::string format_inequality(const std::vector<std::string>& vars, const VectorQ& a, const Rational& b) {
  for (Index j = 0; j < a.size(); ++j) {
    if (a(j).is_zero()) continue;
    if (abs(a(j)) != 1) break;
    // a_j v_j + rest <= b  =>  v_j <= b - rest, or v_j >= rest - b for a_j = -1.
    if (a(j) == 1) return vars[j] + " <= " + affine(vars, -a, b, j);
    return vars[j] + " >= " + affine(vars, a, -b, j);
  }
  std::string lhs = affine(vars, a, 0, -1);
  return lhs + " <= " + b.str();
}

std::string format_affine(const std::vector<std::string>& vars, const VectorQ& a, const Rational& c) {
  return affine(vars, a, c, -1);
}

}  // namespace liftkit
