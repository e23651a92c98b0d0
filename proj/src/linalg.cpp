#include "liftkit/linalg.hpp"

namespace liftkit {

VectorQ primitive_integer(const VectorQ& v) {
  mpz_class l = 1, g = 0;
  for (Index i = 0; i < v.size(); ++i) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v(i).den().get_mpz_t());
  VectorQ out(v.size());
  for (Index i = 0; i < v.size(); ++i) {
    out(i) = v(i) * Rational(l);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out(i).num().get_mpz_t());
  }
  if (g == 0) return out;
  for (Index i = 0; i < v.size(); ++i) out(i) /= Rational(g);
  return out;
}

}  // namespace liftkit
