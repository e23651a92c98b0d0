// Shared fixtures for the test binaries.
#pragma once

#include <initializer_list>
#include <string>

#include "liftkit/rational.hpp"

namespace testutil {

using liftkit::Index;
using liftkit::MatrixQ;
using liftkit::Rational;
using liftkit::VectorQ;

inline MatrixQ mat(std::initializer_list<std::initializer_list<Rational>> rows) {
  MatrixQ m(rows.size(), rows.size() ? rows.begin()->size() : 0);
  Index i = 0;
  for (const auto& r : rows) {
    Index j = 0;
    for (const auto& v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

inline VectorQ vec(std::initializer_list<Rational> vals) {
  VectorQ v(vals.size());
  Index i = 0;
  for (const auto& x : vals) v(i++) = x;
  return v;
}

inline Rational q(const char* s) { return Rational::parse(s); }

// Slack matrix of the seven-vertex example, rows = facets, columns = vertices.
inline MatrixQ p7_slack() {
  return mat({{2, 2, 2, 0, 0, 0, 1},
              {0, 0, 0, 2, 2, 2, 1},
              {0, 0, 2, 0, 0, 2, 4},
              {0, 2, 0, 0, 2, 0, 0},
              {4, 0, 2, 4, 0, 2, 0},
              {3, 2, 2, 1, 0, 0, 0},
              {1, 0, 0, 3, 2, 2, 0}});
}

inline std::string fixture(const std::string& name) { return std::string(LIFTKIT_FIXTURES) + "/" + name; }

}  // namespace testutil

namespace testutil {

inline MatrixQ p7_vertices() {
  return mat({{-1, -1, q("-1/2")},
              {-1, 1, q("-1/2")},
              {-1, -1, q("1/2")},
              {1, -1, q("-1/2")},
              {1, 1, q("-1/2")},
              {1, -1, q("1/2")},
              {0, -1, q("3/2")}});
}

// Reference facets 1 - <a, x> >= 0, in slack-matrix row order, as rows a.
inline MatrixQ p7_normals() {
  return mat({{1, 0, 0}, {-1, 0, 0}, {0, 0, -2}, {0, -1, 0}, {0, 2, 2}, {1, q("1/2"), 1}, {-1, q("1/2"), 1}});
}

// The reference size-6 factorization: A^T is 7 x 6, B is 6 x 7.
inline MatrixQ p7_At() {
  return mat({{2, 0, 0, 0, 0, 1},
              {0, 0, 0, 0, 2, 1},
              {0, 0, 0, 2, 0, 4},
              {0, 0, 2, 0, 0, 0},
              {0, 4, 0, 2, 0, 0},
              {2, 1, 0, 0, 0, 0},
              {0, 1, 0, 0, 2, 0}});
}

inline MatrixQ p7_B() {
  return mat({{1, 1, 1, 0, 0, 0, 0},
              {1, 0, 0, 1, 0, 0, 0},
              {0, 1, 0, 0, 1, 0, 0},
              {0, 0, 1, 0, 0, 1, 0},
              {0, 0, 0, 1, 1, 1, 0},
              {0, 0, 0, 0, 0, 0, 1}});
}

inline MatrixQ cube_points(Index n) {
  MatrixQ v(Index(1) << n, n);
  for (Index m = 0; m < v.rows(); ++m)
    for (Index i = 0; i < n; ++i) v(m, i) = (m >> i) & 1 ? 1 : -1;
  return v;
}

inline MatrixQ square_points() { return mat({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}); }

inline MatrixQ octagon_points() {
  return mat({{2, 1}, {1, 2}, {-1, 2}, {-2, 1}, {-2, -1}, {-1, -2}, {1, -2}, {2, -1}});
}

}  // namespace testutil

namespace testutil {

// Points (t, t^2, ..., t^d) on the moment curve for t = 1..count.
inline MatrixQ cyclic_points(Index count, Index d) {
  MatrixQ m(count, d);
  for (Index t = 0; t < count; ++t) {
    Rational x = 1;
    for (Index i = 0; i < d; ++i) m(t, i) = (x *= t + 1);
  }
  return m;
}

// Convex n-gon with rational vertices on the parabola y = x^2.
inline MatrixQ parabola_polygon(Index n) {
  MatrixQ m(n, 2);
  for (Index i = 0; i < n; ++i) {
    m(i, 0) = i;
    m(i, 1) = i * i;
  }
  return m;
}

}  // namespace testutil

#include <fstream>
#include <sstream>

namespace testutil {

inline std::string read_text(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

}  // namespace testutil
