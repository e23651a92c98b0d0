#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <string_view>

#include <Eigen/Core>
#include <gmpxx.h>

namespace liftkit {

/// Exact rational number, always in lowest terms with a positive denominator.
///
/// Wraps mpq_class but exposes plain value semantics: every operator returns
/// a Rational, so no GMP expression templates leak into Eigen expressions.
class Rational {
 public:
  Rational() = default;
  Rational(int v) : q_(v) {}
  Rational(long v) : q_(v) {}
  Rational(long long v) : q_(mpz_class(std::to_string(v))) {}
  Rational(unsigned v) : q_(v) {}
  Rational(unsigned long v) : q_(v) {}
  Rational(const mpz_class& v) : q_(v) {}
  Rational(const mpz_class& num, const mpz_class& den);
  explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

  /// Parses "p/q", an integer, or a finite decimal such as "-1.25".
  /// Throws std::invalid_argument on anything else.
  static Rational parse(std::string_view text);

  /// Exact conversion of a finite double.
  static Rational from_double(double v);

  const mpq_class& get() const { return q_; }
  mpz_class num() const { return q_.get_num(); }
  mpz_class den() const { return q_.get_den(); }

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  double to_double() const { return q_.get_d(); }

  /// "p/q", or "p" when the denominator is 1.
  std::string str() const;

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class q_;
};

inline Rational abs(const Rational& r) { return r.sign() < 0 ? -r : r; }

/// Smallest integer >= r.
mpz_class ceil(const Rational& r);
/// Largest integer <= r.
mpz_class floor(const Rational& r);

/// True and sets root when r is the square of a rational.
bool rational_sqrt(const Rational& r, Rational& root);

/// Best rational approximation of x with denominator at most max_den
/// (continued fractions with semiconvergents).
Rational best_rational_approximation(double x, const mpz_class& max_den);

std::size_t hash_value(const Rational& r);

}  // namespace liftkit

namespace Eigen {

template <>
struct NumTraits<liftkit::Rational> : GenericNumTraits<liftkit::Rational> {
  using Real = liftkit::Rational;
  using NonInteger = liftkit::Rational;
  using Nested = liftkit::Rational;
  using Literal = liftkit::Rational;

  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 20,
    AddCost = 50,
    MulCost = 100
  };

  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace liftkit {

using Index = Eigen::Index;
using MatrixQ = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;
using VectorQ = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;
using RowVectorQ = Eigen::Matrix<Rational, 1, Eigen::Dynamic>;

/// Lexicographic comparison of two equally sized exact vectors.
template <typename DerivedA, typename DerivedB>
std::strong_ordering lex_compare(const Eigen::MatrixBase<DerivedA>& a,
                                 const Eigen::MatrixBase<DerivedB>& b) {
  const Index n = std::min(a.size(), b.size());
  for (Index i = 0; i < n; ++i) {
    if (auto c = a(i) <=> b(i); c != 0) return c;
  }
  return a.size() <=> b.size();
}

struct LexLess {
  template <typename DerivedA, typename DerivedB>
  bool operator()(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) const {
    return lex_compare(a, b) < 0;
  }
};

/// Converts any Eigen expression of Rationals to doubles.
template <typename Derived>
Eigen::MatrixXd to_double(const Eigen::MatrixBase<Derived>& m) {
  Eigen::MatrixXd out(m.rows(), m.cols());
  for (Index i = 0; i < m.rows(); ++i)
    for (Index j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).to_double();
  return out;
}

}  // namespace liftkit

template <>
struct std::hash<liftkit::Rational> {
  std::size_t operator()(const liftkit::Rational& r) const { return liftkit::hash_value(r); }
};
