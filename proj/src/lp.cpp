#include "liftkit/lp.hpp"

#include "liftkit/error.hpp"
#include "liftkit/linalg.hpp"

namespace liftkit {

std::optional<Rational> LpProblem::lower_bound(Index j) const {
  if (lower.empty()) return Rational(0);
  return lower[j];
}

std::optional<Rational> LpProblem::upper_bound(Index j) const {
  if (upper.empty()) return std::nullopt;
  return upper[j];
}

void LpProblem::make_free() {
  lower.assign(c.size(), std::nullopt);
  upper.assign(c.size(), std::nullopt);
}

std::string to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
  }
  return "?";
}

namespace {

void check_dims(const LpProblem& p) {
  const Index n = p.c.size(), m = p.A.rows();
  if (p.A.cols() != n && !(m == 0 && p.A.cols() == 0))
    throw DimensionMismatch("LP: constraint matrix has " + std::to_string(p.A.cols()) +
                            " columns, objective has " + std::to_string(n));
  if (p.b.size() != m) throw DimensionMismatch("LP: rhs length differs from row count");
  if (static_cast<Index>(p.senses.size()) != m) throw DimensionMismatch("LP: senses length differs from row count");
  if (!p.lower.empty() && static_cast<Index>(p.lower.size()) != n)
    throw DimensionMismatch("LP: lower bound length differs from variable count");
  if (!p.upper.empty() && static_cast<Index>(p.upper.size()) != n)
    throw DimensionMismatch("LP: upper bound length differs from variable count");
}

// How an original variable is expressed in nonnegative standard-form columns.
enum class VarKind { Shifted, Reflected, Split };

struct VarMap {
  VarKind kind;
  Index col;       // first standard column
  Rational offset; // l (shifted) or u (reflected)
};

class Tableau {
 public:
  Tableau(MatrixQ t, std::vector<Index> basis) : T_(std::move(t)), basis_(std::move(basis)) {}

  Index rows() const { return T_.rows(); }
  Index cols() const { return T_.cols() - 1; }
  const Rational& at(Index i, Index j) const { return T_(i, j); }
  const Rational& rhs(Index i) const { return T_(i, T_.cols() - 1); }
  const std::vector<Index>& basis() const { return basis_; }

  void pivot(Index r, Index c) {
    const Rational inv = Rational(1) / T_(r, c);
    for (Index j = 0; j < T_.cols(); ++j)
      if (!T_(r, j).is_zero()) T_(r, j) *= inv;
    for (Index i = 0; i < T_.rows(); ++i) {
      if (i == r || T_(i, c).is_zero()) continue;
      const Rational f = T_(i, c);
      for (Index j = 0; j < T_.cols(); ++j)
        if (!T_(r, j).is_zero()) T_(i, j) -= f * T_(r, j);
    }
    basis_[r] = c;
  }

  // Reduced cost c_j - c_B^T B^{-1} A_j.
  Rational reduced_cost(const VectorQ& cost, Index j) const {
    Rational r = cost(j);
    for (Index i = 0; i < rows(); ++i)
      if (!T_(i, j).is_zero() && !cost(basis_[i]).is_zero()) r -= cost(basis_[i]) * T_(i, j);
    return r;
  }

  enum class Outcome { Optimal, Unbounded };

  // Bland's rule on columns [0, allowed). Returns the unbounded column through `ray_col`.
  Outcome optimize(const VectorQ& cost, Index allowed, Index& ray_col) {
    while (true) {
      Index enter = -1;
      for (Index j = 0; j < allowed; ++j) {
        if (reduced_cost(cost, j).sign() > 0) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return Outcome::Optimal;
      Index leave = -1;
      Rational best;
      for (Index i = 0; i < rows(); ++i) {
        if (T_(i, enter).sign() <= 0) continue;
        Rational ratio = rhs(i) / T_(i, enter);
        if (leave < 0 || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) {
        ray_col = enter;
        return Outcome::Unbounded;
      }
      pivot(leave, enter);
    }
  }

  VectorQ values() const {
    VectorQ v = VectorQ::Zero(cols());
    for (Index i = 0; i < rows(); ++i) v(basis_[i]) = rhs(i);
    return v;
  }

  // y^T = c_B^T B^{-1}; B^{-1} sits in the artificial columns starting at `art`.
  VectorQ duals(const VectorQ& cost, Index art) const {
    VectorQ y = VectorQ::Zero(rows());
    for (Index i = 0; i < rows(); ++i) {
      const Rational& cb = cost(basis_[i]);
      if (cb.is_zero()) continue;
      for (Index k = 0; k < rows(); ++k)
        if (!T_(i, art + k).is_zero()) y(k) += cb * T_(i, art + k);
    }
    return y;
  }

 private:
  MatrixQ T_;
  std::vector<Index> basis_;
};

}  // namespace

LpResult lp_solve(const LpProblem& prob) {
  check_dims(prob);
  const Index n = prob.num_vars(), m = prob.num_rows();
  const Rational dir = prob.maximize ? 1 : -1;

  // Standard-form columns for the original variables.
  std::vector<VarMap> vars(n);
  std::vector<Index> bound_rows;  // variables needing x' <= u - l
  Index ns = 0;
  for (Index j = 0; j < n; ++j) {
    auto l = prob.lower_bound(j), u = prob.upper_bound(j);
    if (l) {
      vars[j] = {VarKind::Shifted, ns++, *l};
      if (u) bound_rows.push_back(j);
    } else if (u) {
      vars[j] = {VarKind::Reflected, ns++, *u};
    } else {
      vars[j] = {VarKind::Split, ns, 0};
      ns += 2;
    }
  }
  const Index rows = m + static_cast<Index>(bound_rows.size());
  Index slacks = 0;
  for (Sense s : prob.senses) slacks += s != Sense::Eq;
  slacks += static_cast<Index>(bound_rows.size());
  const Index art = ns + slacks, total = art + rows;

  MatrixQ T = MatrixQ::Zero(rows, total + 1);
  std::vector<Rational> flip(rows, Rational(1));
  Index s = ns;
  for (Index i = 0; i < m; ++i) {
    Rational rhs = prob.b(i);
    for (Index j = 0; j < n; ++j) {
      const Rational& a = prob.A(i, j);
      if (a.is_zero()) continue;
      const VarMap& v = vars[j];
      switch (v.kind) {
        case VarKind::Shifted: T(i, v.col) = a; rhs -= a * v.offset; break;
        case VarKind::Reflected: T(i, v.col) = -a; rhs -= a * v.offset; break;
        case VarKind::Split: T(i, v.col) = a; T(i, v.col + 1) = -a; break;
      }
    }
    if (prob.senses[i] == Sense::Le) T(i, s++) = 1;
    if (prob.senses[i] == Sense::Ge) T(i, s++) = -1;
    T(i, total) = rhs;
  }
  for (std::size_t k = 0; k < bound_rows.size(); ++k) {
    const Index i = m + static_cast<Index>(k), j = bound_rows[k];
    T(i, vars[j].col) = 1;
    T(i, s++) = 1;
    T(i, total) = *prob.upper_bound(j) - vars[j].offset;
  }
  for (Index i = 0; i < rows; ++i) {
    if (T(i, total).sign() < 0) {
      flip[i] = -1;
      for (Index j = 0; j <= total; ++j)
        if (!T(i, j).is_zero()) T(i, j) = -T(i, j);
    }
    T(i, art + i) = 1;
  }
  std::vector<Index> basis(rows);
  for (Index i = 0; i < rows; ++i) basis[i] = art + i;
  Tableau tab(std::move(T), std::move(basis));

  auto to_original_rows = [&](const VectorQ& ystd) {
    VectorQ y(m);
    for (Index i = 0; i < m; ++i) y(i) = flip[i] * ystd(i);
    return y;
  };
  auto to_original_x = [&](const VectorQ& xs, bool direction) {
    VectorQ x(n);
    for (Index j = 0; j < n; ++j) {
      const VarMap& v = vars[j];
      const Rational base = direction ? Rational(0) : v.offset;
      switch (v.kind) {
        case VarKind::Shifted: x(j) = base + xs(v.col); break;
        case VarKind::Reflected: x(j) = base - xs(v.col); break;
        case VarKind::Split: x(j) = xs(v.col) - xs(v.col + 1); break;
      }
    }
    return x;
  };

  // Phase I: maximize minus the sum of artificials.
  VectorQ cost1 = VectorQ::Zero(total);
  for (Index i = 0; i < rows; ++i) cost1(art + i) = -1;
  Index ray_col = -1;
  tab.optimize(cost1, art, ray_col);
  Rational infeas = 0;
  for (Index i = 0; i < rows; ++i)
    if (tab.basis()[i] >= art) infeas += tab.rhs(i);

  LpResult res;
  if (infeas.sign() > 0) {
    res.status = LpStatus::Infeasible;
    res.y = to_original_rows(tab.duals(cost1, art));
    return res;
  }
  // Drive zero-level artificials out of the basis where possible.
  for (Index i = 0; i < rows; ++i) {
    if (tab.basis()[i] < art) continue;
    for (Index j = 0; j < art; ++j) {
      if (!tab.at(i, j).is_zero()) {
        tab.pivot(i, j);
        break;
      }
    }
  }

  // Phase II in standard variables.
  VectorQ cost2 = VectorQ::Zero(total);
  for (Index j = 0; j < n; ++j) {
    const Rational cj = dir * prob.c(j);
    const VarMap& v = vars[j];
    switch (v.kind) {
      case VarKind::Shifted: cost2(v.col) = cj; break;
      case VarKind::Reflected: cost2(v.col) = -cj; break;
      case VarKind::Split: cost2(v.col) = cj; cost2(v.col + 1) = -cj; break;
    }
  }
  const auto outcome = tab.optimize(cost2, art, ray_col);
  const VectorQ xs = tab.values();
  res.x = to_original_x(xs, false);
  res.objective = dot(prob.c, res.x);
  if (outcome == Tableau::Outcome::Unbounded) {
    res.status = LpStatus::Unbounded;
    VectorQ d = VectorQ::Zero(total);
    d(ray_col) = 1;
    for (Index i = 0; i < rows; ++i) d(tab.basis()[i]) = -tab.at(i, ray_col);
    res.ray = to_original_x(d, true);
    return res;
  }
  res.status = LpStatus::Optimal;
  res.y = to_original_rows(tab.duals(cost2, art));
  if (!prob.maximize) res.y = -res.y;
  res.reduced = prob.c;
  for (Index j = 0; j < n; ++j)
    for (Index i = 0; i < m; ++i)
      if (!prob.A(i, j).is_zero() && !res.y(i).is_zero()) res.reduced(j) -= prob.A(i, j) * res.y(i);
  return res;
}

bool dual_signs_ok(const LpProblem& p, const VectorQ& y) {
  if (y.size() != p.num_rows()) return false;
  const int dir = p.maximize ? 1 : -1;
  for (Index i = 0; i < y.size(); ++i) {
    const int sg = dir * y(i).sign();
    if (p.senses[i] == Sense::Le && sg < 0) return false;
    if (p.senses[i] == Sense::Ge && sg > 0) return false;
  }
  return true;
}

bool verify_farkas(const LpProblem& p, const VectorQ& y) {
  check_dims(p);
  if (y.size() != p.num_rows()) return false;
  for (Index i = 0; i < y.size(); ++i) {
    if (p.senses[i] == Sense::Le && y(i).sign() < 0) return false;
    if (p.senses[i] == Sense::Ge && y(i).sign() > 0) return false;
  }
  Rational lhs = dot(p.b, y);
  for (Index j = 0; j < p.num_vars(); ++j) {
    Rational g = 0;
    for (Index i = 0; i < p.num_rows(); ++i)
      if (!p.A(i, j).is_zero() && !y(i).is_zero()) g += p.A(i, j) * y(i);
    if (g.is_zero()) continue;
    auto bound = g.sign() > 0 ? p.lower_bound(j) : p.upper_bound(j);
    if (!bound) return false;
    lhs -= g * *bound;
  }
  return lhs.sign() < 0;
}

bool is_feasible_point(const LpProblem& p, const VectorQ& x) {
  if (x.size() != p.num_vars()) return false;
  for (Index j = 0; j < x.size(); ++j) {
    if (auto l = p.lower_bound(j); l && x(j) < *l) return false;
    if (auto u = p.upper_bound(j); u && x(j) > *u) return false;
  }
  for (Index i = 0; i < p.num_rows(); ++i) {
    const Rational v = dot(p.A.row(i), x);
    if (p.senses[i] == Sense::Le && v > p.b(i)) return false;
    if (p.senses[i] == Sense::Ge && v < p.b(i)) return false;
    if (p.senses[i] == Sense::Eq && v != p.b(i)) return false;
  }
  return true;
}

bool verify_optimal(const LpProblem& p, const LpResult& r) {
  check_dims(p);
  if (r.status != LpStatus::Optimal) return false;
  if (!is_feasible_point(p, r.x) || dot(p.c, r.x) != r.objective) return false;
  if (!dual_signs_ok(p, r.y)) return false;
  // Work in maximization form: y' = dir y, d' = dir (c - A^T y).
  const Rational dir = p.maximize ? 1 : -1;
  Rational dual = dot(p.b, r.y) * dir;
  for (Index j = 0; j < p.num_vars(); ++j) {
    Rational d = p.c(j);
    for (Index i = 0; i < p.num_rows(); ++i)
      if (!p.A(i, j).is_zero() && !r.y(i).is_zero()) d -= p.A(i, j) * r.y(i);
    d *= dir;
    if (d.is_zero()) continue;
    auto bound = d.sign() > 0 ? p.upper_bound(j) : p.lower_bound(j);
    if (!bound) return false;
    dual += d * *bound;
  }
  return dual == dir * r.objective;
}

}  // namespace liftkit
