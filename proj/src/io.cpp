#include "liftkit/io.hpp"

#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "liftkit/error.hpp"

namespace liftkit {

namespace {

struct Tok {
  std::string text;
  int line = 0;
  int col = 0;
};

using Line = std::vector<Tok>;

// Splits the input into non-empty lines of whitespace-separated tokens.
class Lexer {
 public:
  explicit Lexer(std::istream& in) {
    std::string raw;
    int no = 0;
    while (std::getline(in, raw)) {
      ++no;
      if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
      Line line;
      for (std::size_t i = 0; i < raw.size();) {
        if (std::isspace(static_cast<unsigned char>(raw[i]))) { ++i; continue; }
        std::size_t j = i;
        while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j]))) ++j;
        line.push_back({raw.substr(i, j - i), no, static_cast<int>(i) + 1});
        i = j;
      }
      if (!line.empty()) lines_.push_back(std::move(line));
    }
    end_line_ = no + 1;
  }

  bool done() const { return pos_ == lines_.size(); }
  const Line& peek() const { return lines_[pos_]; }

  const Line& next(const std::string& what) {
    if (done()) throw InputError("unexpected end of input, expected " + what, end_line_, 1);
    return lines_[pos_++];
  }

  void finish() const {
    if (!done()) throw InputError("unexpected content '" + peek()[0].text + "'", peek()[0].line, peek()[0].col);
  }

 private:
  std::vector<Line> lines_;
  std::size_t pos_ = 0;
  int end_line_ = 1;
};

[[noreturn]] void fail(const Tok& t, const std::string& msg) { throw InputError(msg, t.line, t.col); }

Rational parse_rational(const Tok& t) {
  try {
    return Rational::parse(t.text);
  } catch (const std::exception&) {
    fail(t, "expected a rational number, got '" + t.text + "'");
  }
}

Index parse_count(const Tok& t) {
  Index v = 0;
  if (t.text.empty() || t.text.size() > 12) fail(t, "expected a count, got '" + t.text + "'");
  for (char c : t.text) {
    if (c < '0' || c > '9') fail(t, "expected a count, got '" + t.text + "'");
    v = v * 10 + (c - '0');
  }
  return v;
}

void expect_width(const Line& l, std::size_t n, const std::string& what) {
  if (l.size() < n)
    throw InputError(what + ": expected " + std::to_string(n) + " entries, found " + std::to_string(l.size()), l[0].line,
                     l.back().col + static_cast<int>(l.back().text.size()));
  if (l.size() > n) fail(l[n], what + ": expected " + std::to_string(n) + " entries, found " + std::to_string(l.size()));
}

// KEYWORD c1 c2 ... as a header line.
std::vector<Index> header(Lexer& lex, const std::string& keyword, std::size_t counts) {
  const Line& l = lex.next(keyword + " header");
  if (l[0].text != keyword) fail(l[0], "expected '" + keyword + "', got '" + l[0].text + "'");
  expect_width(l, counts + 1, keyword + " header");
  std::vector<Index> out;
  for (std::size_t i = 1; i <= counts; ++i) out.push_back(parse_count(l[i]));
  return out;
}

MatrixQ rows(Lexer& lex, Index r, Index c, const std::string& what) {
  MatrixQ m(r, c);
  for (Index i = 0; i < r; ++i) {
    const Line& l = lex.next(what + " row " + std::to_string(i + 1));
    expect_width(l, static_cast<std::size_t>(c), what + " row " + std::to_string(i + 1));
    for (Index j = 0; j < c; ++j) m(i, j) = parse_rational(l[j]);
  }
  return m;
}

void write_rows(std::ostream& out, const MatrixQ& m) {
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) out << (j ? " " : "") << m(i, j).str();
    out << '\n';
  }
}

HRep hpoly_block(Lexer& lex) {
  const auto hv = header(lex, "H", 2);
  const MatrixQ Ab = rows(lex, hv[1], hv[0] + 1, "inequality");
  HRep h;
  h.A = Ab.leftCols(hv[0]);
  h.b = Ab.col(hv[0]);
  h.E = MatrixQ(0, hv[0]);
  h.e = VectorQ(0);
  if (!lex.done() && lex.peek()[0].text == "E") {
    const Tok at = lex.peek()[0];
    const auto ev = header(lex, "E", 2);
    if (ev[0] != hv[0]) fail(at, "equality block has dimension " + std::to_string(ev[0]) + ", expected " + std::to_string(hv[0]));
    const MatrixQ Ee = rows(lex, ev[1], ev[0] + 1, "equality");
    h.E = Ee.leftCols(ev[0]);
    h.e = Ee.col(ev[0]);
  }
  return h;
}

void write_hpoly_block(std::ostream& out, const HRep& h) {
  const Index n = h.ambient();
  out << "H " << n << ' ' << h.A.rows() << '\n';
  MatrixQ Ab(h.A.rows(), n + 1);
  Ab << h.A, h.b;
  write_rows(out, Ab);
  if (h.E.rows() > 0) {
    out << "E " << n << ' ' << h.E.rows() << '\n';
    MatrixQ Ee(h.E.rows(), n + 1);
    Ee << h.E, h.e;
    write_rows(out, Ee);
  }
}

std::vector<MatrixQ> matrices(Lexer& lex, Index count, Index m, const std::string& what) {
  std::vector<MatrixQ> out;
  for (Index k = 0; k < count; ++k) out.push_back(rows(lex, m, m, what + " " + std::to_string(k + 1)));
  return out;
}

}  // namespace

MatrixQ read_vpoly(std::istream& in) {
  Lexer lex(in);
  const auto hv = header(lex, "V", 2);
  MatrixQ m = rows(lex, hv[1], hv[0], "vertex");
  lex.finish();
  return m;
}

void write_vpoly(std::ostream& out, const MatrixQ& points) {
  out << "V " << points.cols() << ' ' << points.rows() << '\n';
  write_rows(out, points);
}

HRep read_hpoly(std::istream& in) {
  Lexer lex(in);
  HRep h = hpoly_block(lex);
  lex.finish();
  return h;
}

void write_hpoly(std::ostream& out, const HRep& h) { write_hpoly_block(out, h); }

Poset read_poset(std::istream& in) {
  Lexer lex(in);
  const Index k = header(lex, "POSET", 1)[0];
  Poset p;
  std::map<std::string, Index> index;
  if (k > 0) {
    const Line& names = lex.next("element names");
    expect_width(names, static_cast<std::size_t>(k), "element names");
    for (const Tok& t : names) {
      if (!index.emplace(t.text, static_cast<Index>(p.names.size())).second) fail(t, "duplicate element '" + t.text + "'");
      p.names.push_back(t.text);
    }
  }
  const Line& c = lex.next("'covers:'");
  if (c[0].text != "covers:" || c.size() != 1) fail(c[0], "expected 'covers:'");
  while (!lex.done()) {
    const Line& l = lex.next("cover");
    expect_width(l, 3, "cover relation");
    if (l[1].text != "<") fail(l[1], "expected '<'");
    auto a = index.find(l[0].text), b = index.find(l[2].text);
    if (a == index.end()) fail(l[0], "unknown element '" + l[0].text + "'");
    if (b == index.end()) fail(l[2], "unknown element '" + l[2].text + "'");
    p.covers.emplace_back(a->second, b->second);
  }
  try {
    validate(p);
  } catch (const PreconditionError& e) {
    throw InputError(std::string("invalid poset: ") + e.what());
  }
  return p;
}

void write_poset(std::ostream& out, const Poset& p) {
  out << "POSET " << p.size() << '\n';
  for (Index i = 0; i < p.size(); ++i) out << (i ? " " : "") << p.names[i];
  if (p.size() > 0) out << '\n';
  out << "covers:\n";
  for (const auto& [a, b] : p.covers) out << p.names[a] << " < " << p.names[b] << '\n';
}

Graph read_graph(std::istream& in) {
  Lexer lex(in);
  const auto hv = header(lex, "GRAPH", 2);
  std::vector<std::pair<Index, Index>> edges;
  for (Index k = 0; k < hv[1]; ++k) {
    const Line& l = lex.next("edge " + std::to_string(k + 1));
    expect_width(l, 2, "edge");
    const Index i = parse_count(l[0]), j = parse_count(l[1]);
    if (i < 1 || i > hv[0]) fail(l[0], "vertex " + l[0].text + " outside 1.." + std::to_string(hv[0]));
    if (j < 1 || j > hv[0]) fail(l[1], "vertex " + l[1].text + " outside 1.." + std::to_string(hv[0]));
    if (i == j) fail(l[1], "loop at vertex " + l[0].text);
    edges.emplace_back(i - 1, j - 1);
  }
  lex.finish();
  try {
    return make_graph(hv[0], edges);
  } catch (const PreconditionError& e) {
    throw InputError(std::string("invalid graph: ") + e.what());
  }
}

void write_graph(std::ostream& out, const Graph& g) {
  out << "GRAPH " << g.n << ' ' << g.edges.size() << '\n';
  for (const auto& [i, j] : g.edges) out << i + 1 << ' ' << j + 1 << '\n';
}

Obdd read_obdd(std::istream& in) {
  Lexer lex(in);
  Obdd b;
  b.n = header(lex, "OBDD", 1)[0];
  bool have_source = false;
  auto node_ref = [](const Tok& t) -> Index { return t.text == "-" ? -1 : parse_count(t); };
  while (!lex.done()) {
    const Line& l = lex.next("node");
    if (l[0].text == "source") {
      expect_width(l, 2, "source line");
      b.source = parse_count(l[1]);
      have_source = true;
    } else if (l[0].text == "zero-suppressed") {
      expect_width(l, 1, "flag");
      b.zero_suppressed = true;
    } else if (l.size() == 2) {
      ObddNode v;
      v.id = parse_count(l[0]);
      if (l[1].text == "SINK0") v.sink = 0;
      else if (l[1].text == "SINK1") v.sink = 1;
      else fail(l[1], "expected SINK0 or SINK1, got '" + l[1].text + "'");
      b.nodes.push_back(v);
    } else {
      expect_width(l, 4, "node line");
      ObddNode v;
      v.id = parse_count(l[0]);
      v.var = parse_count(l[1]);
      v.lo = node_ref(l[2]);
      v.hi = node_ref(l[3]);
      b.nodes.push_back(v);
    }
  }
  if (!have_source) throw InputError("missing 'source' line");
  try {
    validate(b);
  } catch (const PreconditionError& e) {
    throw InputError(std::string("invalid OBDD: ") + e.what());
  }
  return b;
}

void write_obdd(std::ostream& out, const Obdd& b) {
  out << "OBDD " << b.n << '\n';
  auto ref = [](Index i) { return i < 0 ? std::string("-") : std::to_string(i); };
  for (const ObddNode& v : b.nodes) {
    if (v.is_sink()) out << v.id << (v.sink ? " SINK1" : " SINK0") << '\n';
    else out << v.id << ' ' << v.var << ' ' << ref(v.lo) << ' ' << ref(v.hi) << '\n';
  }
  out << "source " << b.source << '\n';
  if (b.zero_suppressed) out << "zero-suppressed\n";
}

PolyLift read_lift(std::istream& in) {
  Lexer lex(in);
  PolyLift L;
  L.h = hpoly_block(lex);
  const Tok at = lex.done() ? Tok{} : lex.peek()[0];
  const auto pv = header(lex, "PROJ", 2);
  if (pv[1] != L.h.ambient())
    fail(at, "projection has " + std::to_string(pv[1]) + " columns, lift has " + std::to_string(L.h.ambient()) + " variables");
  L.proj = rows(lex, pv[0], pv[1], "projection");
  lex.finish();
  return L;
}

void write_lift(std::ostream& out, const PolyLift& L) {
  write_hpoly_block(out, L.h);
  out << "PROJ " << L.proj.rows() << ' ' << L.proj.cols() << '\n';
  write_rows(out, L.proj);
}

MatrixQ read_slack(std::istream& in) {
  Lexer lex(in);
  const auto hv = header(lex, "SLACK", 2);
  MatrixQ S = rows(lex, hv[0], hv[1], "slack");
  lex.finish();
  return S;
}

void write_slack(std::ostream& out, const MatrixQ& S) {
  out << "SLACK " << S.rows() << ' ' << S.cols() << '\n';
  write_rows(out, S);
}

NonnegFactorization read_nnf(std::istream& in) {
  Lexer lex(in);
  const auto hv = header(lex, "NNF", 3);
  NonnegFactorization F;
  F.A = rows(lex, hv[0], hv[1], "factor A");
  F.B = rows(lex, hv[0], hv[2], "factor B");
  lex.finish();
  return F;
}

void write_nnf(std::ostream& out, const NonnegFactorization& F) {
  out << "NNF " << F.A.rows() << ' ' << F.A.cols() << ' ' << F.B.cols() << '\n';
  write_rows(out, F.A);
  write_rows(out, F.B);
}

PsdFactorization read_psdf(std::istream& in) {
  Lexer lex(in);
  const auto hv = header(lex, "PSDF", 3);
  PsdFactorization F;
  F.m = hv[0];
  F.vertex_factors = matrices(lex, hv[2], hv[0], "vertex factor");
  F.facet_factors = matrices(lex, hv[1], hv[0], "facet factor");
  lex.finish();
  return F;
}

void write_psdf(std::ostream& out, const PsdFactorization& F) {
  out << "PSDF " << F.m << ' ' << F.facet_factors.size() << ' ' << F.vertex_factors.size() << '\n';
  for (const MatrixQ& M : F.vertex_factors) write_rows(out, M);
  for (const MatrixQ& M : F.facet_factors) write_rows(out, M);
}

std::array<VectorQ, 3> read_triple(std::istream& in) {
  Lexer lex(in);
  std::array<VectorQ, 3> t;
  static const char* names[] = {"lambda", "mu", "nu"};
  std::size_t n = 0;
  for (int k = 0; k < 3; ++k) {
    const Line& l = lex.next(names[k]);
    if (k == 0) n = l.size();
    expect_width(l, n, names[k]);
    t[k] = VectorQ(static_cast<Index>(n));
    for (std::size_t i = 0; i < n; ++i) t[k](static_cast<Index>(i)) = parse_rational(l[i]);
  }
  lex.finish();
  return t;
}

void write_triple(std::ostream& out, const std::array<VectorQ, 3>& t) {
  for (const VectorQ& v : t) {
    for (Index i = 0; i < v.size(); ++i) out << (i ? " " : "") << v(i).str();
    out << '\n';
  }
}

Quadratic read_quadratic(std::istream& in) {
  Lexer lex(in);
  const Index n = header(lex, "QUAD", 1)[0];
  Quadratic q;
  q.A = rows(lex, n, n, "matrix");
  q.b = rows(lex, 1, n, "linear part").row(0).transpose();
  q.c = rows(lex, 1, 1, "constant")(0, 0);
  lex.finish();
  return q;
}

void write_quadratic(std::ostream& out, const Quadratic& q) {
  out << "QUAD " << q.A.rows() << '\n';
  write_rows(out, q.A);
  write_rows(out, q.b.transpose());
  out << q.c.str() << '\n';
}

LmiSpec read_sdpa(std::istream& in) {
  LmiSpec L;
  std::vector<Line> body;
  std::string raw;
  int no = 0;
  bool have_original = false;
  while (std::getline(in, raw)) {
    ++no;
    if (!raw.empty() && (raw[0] == '*' || raw[0] == '"')) {
      std::istringstream ss(raw.substr(1));
      std::string key;
      ss >> key;
      if (key == "variables:") {
        for (std::string s; ss >> s;) L.names.push_back(s);
      } else if (key == "projected") {
        std::string rest;
        ss >> rest >> L.num_original;
        have_original = true;
      }
      continue;
    }
    Line line;
    std::istringstream ss(raw);
    for (std::string s; ss >> s;) {
      const auto col = static_cast<int>(raw.find(s)) + 1;
      line.push_back({s, no, col});
    }
    if (!line.empty()) body.push_back(std::move(line));
  }
  auto need = [&](std::size_t i, const std::string& what) -> const Line& {
    if (i >= body.size()) throw InputError("unexpected end of input, expected " + what, no + 1, 1);
    return body[i];
  };
  const Index m = parse_count(need(0, "variable count")[0]);
  if (parse_count(need(1, "block count")[0]) != 1) fail(body[1][0], "only one block is supported");
  L.size = parse_count(need(2, "block size")[0]);
  expect_width(need(3, "objective"), static_cast<std::size_t>(m), "objective");
  L.A0 = MatrixQ::Zero(L.size, L.size);
  L.A.assign(m, MatrixQ::Zero(L.size, L.size));
  for (std::size_t k = 4; k < body.size(); ++k) {
    const Line& l = body[k];
    expect_width(l, 5, "entry");
    const Index var = parse_count(l[0]), i = parse_count(l[2]), j = parse_count(l[3]);
    if (var > m) fail(l[0], "variable " + l[0].text + " out of range");
    if (l[1].text != "1") fail(l[1], "only block 1 exists");
    if (i < 1 || i > L.size) fail(l[2], "row out of range");
    if (j < 1 || j > L.size) fail(l[3], "column out of range");
    const Rational v = parse_rational(l[4]);
    MatrixQ& M = var == 0 ? L.A0 : L.A[var - 1];
    const Rational x = var == 0 ? -v : v;
    M(i - 1, j - 1) = x;
    M(j - 1, i - 1) = x;
  }
  if (L.names.empty())
    for (Index j = 0; j < m; ++j) L.names.push_back("w" + std::to_string(j + 1));
  if (static_cast<Index>(L.names.size()) != m) throw InputError("variable names do not match the variable count");
  if (!have_original) L.num_original = m;
  return L;
}

std::string peek_format(std::istream& in) {
  Lexer lex(in);
  return lex.done() ? std::string() : lex.peek()[0].text;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace liftkit
