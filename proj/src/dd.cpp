#include "dd.hpp"

#include <algorithm>

#include "liftkit/linalg.hpp"

namespace liftkit::detail {

IntVec primitive(const VectorQ& v) {
  const VectorQ p = primitive_integer(v);
  IntVec out(p.size());
  for (Index i = 0; i < p.size(); ++i) out[i] = p(i).num();
  return out;
}

VectorQ to_rational(const IntVec& v) {
  VectorQ out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out(i) = Rational(v[i]);
  return out;
}

namespace {

mpz_class idot(const IntVec& a, const IntVec& b) {
  mpz_class s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (sgn(a[i]) != 0 && sgn(b[i]) != 0) s += a[i] * b[i];
  return s;
}

void make_primitive(IntVec& v) {
  mpz_class g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g > 1)
    for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

struct Ray {
  IntVec w;
  boost::dynamic_bitset<> zeros;
};

}  // namespace

bool extreme_rays(const MatrixQ& H, std::vector<IntVec>& out) {
  out.clear();
  const Index k = H.rows(), d = H.cols();
  std::vector<IntVec> rows;
  std::vector<Index> active;  // indices of nonzero rows
  for (Index i = 0; i < k; ++i) {
    rows.push_back(primitive(H.row(i).transpose()));
    if (std::any_of(rows.back().begin(), rows.back().end(), [](const mpz_class& x) { return sgn(x) != 0; }))
      active.push_back(i);
  }
  // Greedy basis of independent rows.
  std::vector<Index> basis;
  MatrixQ acc(0, d);
  for (Index i : active) {
    MatrixQ next(acc.rows() + 1, d);
    next << acc, H.row(i);
    if (rank(next) > acc.rows()) {
      acc = next;
      basis.push_back(i);
      if (static_cast<Index>(basis.size()) == d) break;
    }
  }
  if (static_cast<Index>(basis.size()) < d) return false;

  // Initial cone {acc w >= 0} is simplicial; its rays are the columns of acc^{-1}.
  MatrixQ aug(d, 2 * d);
  aug << acc, MatrixQ::Identity(d, d);
  const Rref r = rref(aug);
  const MatrixQ inv = r.R.rightCols(d);
  std::vector<Ray> rays;
  std::vector<bool> processed(k, false);
  for (Index i : basis) processed[i] = true;
  for (Index j = 0; j < d; ++j) {
    Ray ray{primitive(inv.col(j)), boost::dynamic_bitset<>(k)};
    for (Index b = 0; b < d; ++b)
      if (b != j) ray.zeros.set(basis[b]);
    rays.push_back(std::move(ray));
  }

  for (Index i : active) {
    if (processed[i]) continue;
    processed[i] = true;
    const IntVec& h = rows[i];
    std::vector<mpz_class> val(rays.size());
    std::vector<std::size_t> pos, neg, zer;
    for (std::size_t t = 0; t < rays.size(); ++t) {
      val[t] = idot(h, rays[t].w);
      const int s = sgn(val[t]);
      (s > 0 ? pos : s < 0 ? neg : zer).push_back(t);
    }
    if (neg.empty()) {
      for (std::size_t t : zer) rays[t].zeros.set(i);
      continue;
    }
    std::vector<Ray> next;
    for (std::size_t t : pos) next.push_back(rays[t]);
    for (std::size_t t : zer) {
      next.push_back(rays[t]);
      next.back().zeros.set(i);
    }
    for (std::size_t p : pos) {
      for (std::size_t n : neg) {
        const boost::dynamic_bitset<> common = rays[p].zeros & rays[n].zeros;
        if (static_cast<Index>(common.count()) < d - 2) continue;
        bool adjacent = true;
        for (std::size_t t = 0; t < rays.size() && adjacent; ++t) {
          if (t == p || t == n) continue;
          if (common.is_subset_of(rays[t].zeros)) adjacent = false;
        }
        if (!adjacent) continue;
        Ray nr{IntVec(d), common};
        for (Index c = 0; c < d; ++c) nr.w[c] = val[p] * rays[n].w[c] - val[n] * rays[p].w[c];
        make_primitive(nr.w);
        nr.zeros.set(i);
        next.push_back(std::move(nr));
      }
    }
    rays = std::move(next);
  }
  for (auto& r : rays) out.push_back(std::move(r.w));
  std::sort(out.begin(), out.end());
  return true;
}

}  // namespace liftkit::detail
