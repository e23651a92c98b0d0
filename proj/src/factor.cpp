#include "liftkit/factor.hpp"

#include <algorithm>
#include <atomic>
#include <random>
#include <thread>

#include "liftkit/error.hpp"
#include "liftkit/linalg.hpp"
#include "liftkit/lp.hpp"
#include "liftkit/psd.hpp"
#include "liftkit/slack.hpp"

namespace liftkit {

namespace {

std::string pos(Index i, Index j) { return "(" + std::to_string(i + 1) + ", " + std::to_string(j + 1) + ")"; }

}  // namespace

Check verify_nonneg_factorization(const MatrixQ& S, const NonnegFactorization& F) {
  if (F.A.rows() != F.B.rows())
    throw DimensionMismatch("factor sizes differ: A has " + std::to_string(F.A.rows()) + " rows, B has " +
                            std::to_string(F.B.rows()));
  if (F.A.cols() != S.rows() || F.B.cols() != S.cols())
    throw DimensionMismatch("factorization is for a " + std::to_string(F.A.cols()) + "x" + std::to_string(F.B.cols()) +
                            " matrix, slack matrix is " + std::to_string(S.rows()) + "x" + std::to_string(S.cols()));
  for (Index k = 0; k < F.A.rows(); ++k)
    for (Index i = 0; i < F.A.cols(); ++i)
      if (F.A(k, i).sign() < 0) return Check::fail("A" + pos(k, i) + " = " + F.A(k, i).str() + " is negative", k, i);
  for (Index k = 0; k < F.B.rows(); ++k)
    for (Index j = 0; j < F.B.cols(); ++j)
      if (F.B(k, j).sign() < 0) return Check::fail("B" + pos(k, j) + " = " + F.B(k, j).str() + " is negative", k, j);
  const MatrixQ P = mul(F.A.transpose(), F.B);
  for (Index i = 0; i < S.rows(); ++i)
    for (Index j = 0; j < S.cols(); ++j)
      if (P(i, j) != S(i, j))
        return Check::fail("entry " + pos(i, j) + ": A^T B gives " + P(i, j).str() + ", expected " + S(i, j).str(), i, j);
  return {};
}

namespace {

// Nonnegative x with M x = s, if any.
std::optional<VectorQ> nonneg_solve(const MatrixQ& M, const VectorQ& s) {
  LpProblem lp;
  lp.c = VectorQ::Zero(M.cols());
  lp.A = M;
  lp.b = s;
  lp.senses.assign(M.rows(), Sense::Eq);
  LpResult r = lp_solve(lp);
  if (r.status != LpStatus::Optimal) return std::nullopt;
  return r.x;
}

MatrixQ round_matrix(const Eigen::MatrixXd& m, const mpz_class& den) {
  MatrixQ out(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) out(i, j) = best_rational_approximation(std::max(0.0, m(i, j)), den);
  return out;
}

// Given an exact right factor H (m x v), solves W H = S row by row with W >= 0.
std::optional<NonnegFactorization> complete_left(const MatrixQ& S, const MatrixQ& H) {
  NonnegFactorization F;
  F.A = MatrixQ(H.rows(), S.rows());
  F.B = H;
  const MatrixQ Ht = H.transpose();
  for (Index i = 0; i < S.rows(); ++i) {
    auto w = nonneg_solve(Ht, S.row(i).transpose());
    if (!w) return std::nullopt;
    F.A.col(i) = *w;
  }
  return F;
}

std::optional<NonnegFactorization> complete_right(const MatrixQ& S, const MatrixQ& W) {
  NonnegFactorization F;
  F.A = W.transpose();
  F.B = MatrixQ(W.cols(), S.cols());
  for (Index j = 0; j < S.cols(); ++j) {
    auto h = nonneg_solve(W, S.col(j));
    if (!h) return std::nullopt;
    F.B.col(j) = *h;
  }
  return F;
}

std::optional<NonnegFactorization> one_restart(const MatrixQ& S, const Eigen::MatrixXd& Sd, Index m, const NmfOptions& opt,
                                               std::uint64_t seed) {
  const Index f = Sd.rows(), v = Sd.cols();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.1, 1.1);
  const double scale = std::sqrt(std::max(Sd.maxCoeff(), 1e-12) / static_cast<double>(m));
  Eigen::MatrixXd W(f, m), H(m, v);
  for (Index i = 0; i < f; ++i)
    for (Index k = 0; k < m; ++k) W(i, k) = unif(rng) * scale;
  for (Index k = 0; k < m; ++k)
    for (Index j = 0; j < v; ++j) H(k, j) = unif(rng) * scale;
  const double tiny = 1e-300, tol = 1e-13 * std::max(1.0, Sd.maxCoeff());
  for (Index it = 0; it < opt.iterations; ++it) {
    H.array() *= (W.transpose() * Sd).array() / ((W.transpose() * W) * H).array().max(tiny);
    W.array() *= (Sd * H.transpose()).array() / (W * (H * H.transpose())).array().max(tiny);
    if (it % 200 == 199 && (W * H - Sd).cwiseAbs().maxCoeff() < tol) break;
  }
  // Scale rows of H (columns of W) to maximum 1 so rounding sees comparable values.
  Eigen::MatrixXd Hn = H, Wn = W;
  for (Index k = 0; k < m; ++k) {
    const double mx = H.row(k).maxCoeff();
    if (mx > 0) {
      Hn.row(k) /= mx;
      Wn.col(k) *= mx;
    }
  }
  Eigen::MatrixXd Wc = W, Hc = H;
  for (Index k = 0; k < m; ++k) {
    const double mx = W.col(k).maxCoeff();
    if (mx > 0) {
      Wc.col(k) /= mx;
      Hc.row(k) *= mx;
    }
  }
  // Coarse denominators first: near-zero noise must round to zero.
  MatrixQ lastH, lastW;
  for (mpz_class den = 1; den <= opt.max_den; den *= 2) {
    MatrixQ Hq = round_matrix(Hn, den);
    if (!equal(Hq, lastH)) {
      if (auto F = complete_left(S, Hq); F && verify_nonneg_factorization(S, *F)) return F;
      lastH = Hq;
    }
    MatrixQ Wq = round_matrix(Wc, den);
    if (!equal(Wq, lastW)) {
      if (auto F = complete_right(S, Wq); F && verify_nonneg_factorization(S, *F)) return F;
      lastW = Wq;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<NonnegFactorization> nmf_search(const MatrixQ& S, Index m, const NmfOptions& opt) {
  if (m <= 0) return std::nullopt;
  for (Index i = 0; i < S.rows(); ++i)
    for (Index j = 0; j < S.cols(); ++j)
      if (S(i, j).sign() < 0) throw PreconditionError("nmf_search: matrix has a negative entry at " + pos(i, j));
  if (m >= S.rows()) {
    NonnegFactorization F;
    F.A = MatrixQ::Zero(m, S.rows());
    F.A.topRows(S.rows()) = MatrixQ::Identity(S.rows(), S.rows());
    F.B = MatrixQ::Zero(m, S.cols());
    F.B.topRows(S.rows()) = S;
    return F;
  }
  const Eigen::MatrixXd Sd = to_double(S);
  const Index R = opt.restarts;
  std::vector<std::optional<NonnegFactorization>> found(R);
  std::atomic<Index> best{R};
  auto work = [&](Index start, Index step) {
    for (Index r = start; r < R; r += step) {
      if (r > best.load()) return;
      found[r] = one_restart(S, Sd, m, opt, opt.seed + static_cast<std::uint64_t>(r));
      if (found[r]) {
        Index cur = best.load();
        while (r < cur && !best.compare_exchange_weak(cur, r)) {
        }
      }
    }
  };
  const Index nt = std::max(1, opt.threads);
  if (nt == 1) {
    work(0, 1);
  } else {
    std::vector<std::thread> pool;
    for (Index t = 0; t < nt; ++t) pool.emplace_back(work, t, nt);
    for (auto& th : pool) th.join();
  }
  if (best.load() < R) return found[best.load()];
  return std::nullopt;
}

PolyLift lift_from_factorization(const Polytope& p, const NonnegFactorization& F) {
  const MatrixQ S = slack_matrix(p).S;
  if (Check c = verify_nonneg_factorization(S, F); !c)
    throw PreconditionError("factorization does not verify: " + c.message);
  std::vector<Index> keep;
  for (Index k = 0; k < F.A.rows(); ++k)
    if (!is_zero(F.A.row(k))) keep.push_back(k);
  const Index n = p.ambient(), m = static_cast<Index>(keep.size()), f = p.num_facets();
  const Index ne = p.h.E.rows();
  PolyLift L;
  L.h.A = MatrixQ::Zero(m, n + m);
  L.h.b = VectorQ::Zero(m);
  for (Index k = 0; k < m; ++k) L.h.A(k, n + k) = -1;
  L.h.E = MatrixQ::Zero(f + ne, n + m);
  L.h.e = VectorQ(f + ne);
  for (Index i = 0; i < f; ++i) {
    L.h.E.row(i).head(n) = p.h.A.row(i);
    for (Index k = 0; k < m; ++k) L.h.E(i, n + k) = F.A(keep[k], i);
    L.h.e(i) = p.h.b(i);
  }
  for (Index r = 0; r < ne; ++r) {
    L.h.E.row(f + r).head(n) = p.h.E.row(r);
    L.h.e(f + r) = p.h.e(r);
  }
  L.proj = MatrixQ::Zero(n, n + m);
  L.proj.leftCols(n) = MatrixQ::Identity(n, n);
  return L;
}

LiftFactorization factorization_from_lift(const Polytope& p, const PolyLift& L) {
  if (L.proj.rows() != p.ambient()) throw DimensionMismatch("lift projects to the wrong dimension");
  if (L.proj.cols() != L.h.ambient()) throw DimensionMismatch("projection and lift dimensions differ");
  const Polytope Q = h_to_v(L.h);
  const MatrixQ image = mul(Q.vertices, L.proj.transpose());
  for (Index k = 0; k < image.rows(); ++k)
    if (!contains(p, image.row(k).transpose()))
      throw PreconditionError("lift vertex " + std::to_string(k + 1) + " projects outside the target polytope");
  // Lexicographically smallest lifted vertex above each target vertex.
  std::vector<Index> fiber(p.num_vertices(), -1);
  for (Index j = 0; j < p.num_vertices(); ++j) {
    for (Index k = 0; k < image.rows(); ++k) {
      if (image.row(k) != p.vertices.row(j)) continue;
      if (fiber[j] < 0 || lex_compare(Q.vertices.row(k), Q.vertices.row(fiber[j])) < 0) fiber[j] = k;
    }
    if (fiber[j] < 0)
      throw PreconditionError("target vertex " + std::to_string(j + 1) + " is not the image of a lift vertex");
  }
  const Index fq = Q.num_facets(), eq = Q.h.E.rows(), rows = fq + 2 * eq;
  const Index f = p.num_facets(), v = p.num_vertices();
  NonnegFactorization raw;
  raw.A = MatrixQ::Zero(rows, f);
  raw.B = MatrixQ::Zero(rows, v);
  LpProblem lp;
  lp.A = MatrixQ(fq + eq, Q.ambient());
  lp.A << Q.h.A, Q.h.E;
  lp.b = VectorQ(fq + eq);
  lp.b << Q.h.b, Q.h.e;
  lp.senses.assign(fq, Sense::Le);
  lp.senses.resize(fq + eq, Sense::Eq);
  lp.c = VectorQ::Zero(Q.ambient());
  lp.make_free();
  for (Index i = 0; i < f; ++i) {
    lp.c = mul(L.proj.transpose(), p.h.A.row(i).transpose()).col(0);
    const LpResult r = lp_solve(lp);
    if (r.status != LpStatus::Optimal || r.objective != p.h.b(i))
      throw PreconditionError("facet " + std::to_string(i + 1) + " of the target is not tight on the lift's image");
    for (Index k = 0; k < fq; ++k) raw.A(k, i) = r.y(k);
    for (Index k = 0; k < eq; ++k) {
      const Rational& mu = r.y(fq + k);
      if (mu.sign() > 0) raw.A(fq + k, i) = mu;
      if (mu.sign() < 0) raw.A(fq + eq + k, i) = -mu;
    }
  }
  for (Index j = 0; j < v; ++j) {
    const VectorQ w = Q.vertex(fiber[j]);
    for (Index k = 0; k < fq; ++k) raw.B(k, j) = Q.h.b(k) - dot(Q.h.A.row(k), w);
    // Equality rows have zero slack on Q.
  }
  LiftFactorization out;
  out.raw = raw;
  std::vector<Index> keep;
  for (Index k = 0; k < rows; ++k)
    if (!is_zero(raw.A.row(k)) && !is_zero(raw.B.row(k))) keep.push_back(k);
  out.reduced.A = MatrixQ(keep.size(), f);
  out.reduced.B = MatrixQ(keep.size(), v);
  for (std::size_t t = 0; t < keep.size(); ++t) {
    out.reduced.A.row(t) = raw.A.row(keep[t]);
    out.reduced.B.row(t) = raw.B.row(keep[t]);
  }
  const MatrixQ S = slack_matrix(p).S;
  if (!verify_nonneg_factorization(S, out.raw) || !verify_nonneg_factorization(S, out.reduced))
    throw Error("factorization_from_lift: internal error, result does not verify");
  return out;
}

Check verify_psd_factorization(const MatrixQ& S, const PsdFactorization& F) {
  if (static_cast<Index>(F.vertex_factors.size()) != S.cols() || static_cast<Index>(F.facet_factors.size()) != S.rows())
    throw DimensionMismatch("psd factorization has " + std::to_string(F.facet_factors.size()) + " facet and " +
                            std::to_string(F.vertex_factors.size()) + " vertex factors for a " +
                            std::to_string(S.rows()) + "x" + std::to_string(S.cols()) + " matrix");
  auto check_all = [&](const std::vector<MatrixQ>& fs, const char* what) -> Check {
    for (std::size_t k = 0; k < fs.size(); ++k) {
      if (fs[k].rows() != F.m || fs[k].cols() != F.m)
        throw DimensionMismatch(std::string(what) + " factor " + std::to_string(k + 1) + " has the wrong size");
      if (!is_symmetric(fs[k]))
        return Check::fail(std::string(what) + " factor " + std::to_string(k + 1) + " is not symmetric", k);
      if (!is_psd(fs[k])) return Check::fail(std::string(what) + " factor " + std::to_string(k + 1) + " is not psd", k);
    }
    return {};
  };
  if (Check c = check_all(F.vertex_factors, "vertex"); !c) return c;
  if (Check c = check_all(F.facet_factors, "facet"); !c) return c;
  for (Index i = 0; i < S.rows(); ++i)
    for (Index j = 0; j < S.cols(); ++j) {
      const Rational t = trace_product(F.vertex_factors[j], F.facet_factors[i]);
      if (t != S(i, j))
        return Check::fail("entry " + pos(i, j) + ": trace product " + t.str() + ", expected " + S(i, j).str(), i, j);
    }
  return {};
}

PsdFactorization rank_one_psd_factorization(const std::vector<VectorQ>& vertex_vectors,
                                            const std::vector<MatrixQ>& facet_grams) {
  PsdFactorization F;
  F.m = vertex_vectors.empty() ? 0 : vertex_vectors.front().size();
  for (const VectorQ& u : vertex_vectors) F.vertex_factors.push_back(mul(u, u.transpose()));
  F.facet_factors = facet_grams;
  return F;
}

MatrixQ cardioid_A(const Rational& v) {
  const Rational v2 = v * v, a = 1 - v2, b = 2 - v2, c = v * (2 - v2);
  MatrixQ A(3, 3);
  A << Rational(1), Rational(0), a, Rational(0), b, c, a, c, Rational(1);
  return A;
}

MatrixQ cardioid_B_cleared(const Rational& u) {
  VectorQ w(3);
  w << u * u - 1, -u, Rational(1);
  return mul(w, w.transpose());
}

Rational cardioid_slack(const Rational& u, const Rational& v) {
  const Rational u2 = u * u, v2 = v * v;
  const Rational num = 2 * u2 + u2 * u2 - 4 * u * v + 2 * v2 - 3 * u2 * v2 + 2 * u * v2 * v;
  return num / (2 - u2 + u2 * u2);
}

bool cardioid_sample_check(const std::vector<std::pair<Rational, Rational>>& samples,
                           std::vector<CardioidSample>* details) {
  bool all = true;
  for (const auto& [u, v] : samples) {
    CardioidSample s;
    s.u = u;
    s.v = v;
    const MatrixQ A = cardioid_A(v), Bc = cardioid_B_cleared(u);
    const Rational scale = 2 - u * u + u * u * u * u;
    s.a_psd = is_psd(A);
    s.b_psd = scale.sign() > 0 && is_psd(Bc);
    s.trace = trace_product(A, Bc) / scale;
    s.slack = cardioid_slack(u, v);
    all = all && s.ok();
    if (details) details->push_back(s);
  }
  return all;
}

}  // namespace liftkit
