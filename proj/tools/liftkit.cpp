// liftkit command-line front end.
#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "liftkit/bounds.hpp"
#include "liftkit/error.hpp"
#include "liftkit/factor.hpp"
#include "liftkit/honeycomb.hpp"
#include "liftkit/io.hpp"
#include "liftkit/liftgen.hpp"
#include "liftkit/linalg.hpp"
#include "liftkit/polytope.hpp"
#include "liftkit/psd.hpp"
#include "liftkit/slack.hpp"

using namespace liftkit;

namespace {

constexpr int kOk = 0;
constexpr int kFalse = 1;
constexpr int kInput = 2;

// Wraps InputError with the file name.
template <typename F>
auto with_file(const std::string& path, F reader) {
  std::istringstream in(read_file(path));
  try {
    return reader(in);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::string format_of(const std::string& path) {
  std::istringstream in(read_file(path));
  return peek_format(in);
}

Polytope load_polytope(const std::string& path) {
  const std::string f = format_of(path);
  if (f == "V") return v_to_h(with_file(path, read_vpoly));
  if (f == "H") return h_to_v(with_file(path, read_hpoly));
  throw InputError(path + ": expected a V or H polytope, found '" + f + "'");
}

Polytope load_ordered(const std::string& path, const std::string& order) {
  Polytope p = load_polytope(path);
  if (!order.empty()) p = with_facet_order(p, with_file(order, read_hpoly));
  return p;
}

VectorQ parse_vector(const std::string& text, const std::string& what) {
  std::istringstream in(text);
  std::vector<Rational> v;
  for (std::string t; in >> t;) {
    try {
      v.push_back(Rational::parse(t));
    } catch (const std::exception&) {
      throw InputError(what + ": bad number '" + t + "'");
    }
  }
  VectorQ out(static_cast<Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Index>(i)) = v[i];
  return out;
}

// Output sink: stdout or the -o file.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw InputError("cannot write '" + path + "'");
    }
  }
  std::ostream& operator*() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

void write_lmi(const LmiSpec& L, const std::string& path, bool exact) {
  if (path.empty()) {
    write_sdpa(std::cout, L, exact);
    return;
  }
  std::ofstream f(path, std::ios::binary), g(path + ".exact", std::ios::binary);
  if (!f || !g) throw InputError("cannot write '" + path + "'");
  write_sdpa(f, L, exact);
  write_sdpa(g, L, true);
}

// "x1^2*x3" -> exponents, or nullopt for names that are not monomials.
std::optional<Monomial> parse_monomial(const std::string& name, Index n) {
  Monomial m(static_cast<std::size_t>(n), 0);
  if (name == "1") return m;
  std::istringstream in(name);
  for (std::string part; std::getline(in, part, '*');) {
    if (part.size() < 2 || part[0] != 'x') return std::nullopt;
    const auto caret = part.find('^');
    try {
      const Index v = std::stol(part.substr(1, caret == std::string::npos ? std::string::npos : caret - 1));
      const int e = caret == std::string::npos ? 1 : std::stoi(part.substr(caret + 1));
      if (v < 1 || v > n || e < 1) return std::nullopt;
      m[static_cast<std::size_t>(v - 1)] += e;
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }
  return m;
}

Rational monomial_value(const Monomial& m, const VectorQ& x) {
  Rational r = 1;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (int e = 0; e < m[i]; ++e) r *= x(static_cast<Index>(i));
  return r;
}

bool same_pencil(const LmiSpec& a, const LmiSpec& b) {
  if (a.size != b.size || a.names != b.names || a.num_original != b.num_original || !equal(a.A0, b.A0)) return false;
  for (std::size_t j = 0; j < a.A.size(); ++j)
    if (!equal(a.A[j], b.A[j])) return false;
  return true;
}

void print_check(const Check& c) {
  if (c) {
    std::cout << "ok\n";
    return;
  }
  std::cout << "mismatch";
  if (c.row >= 0) std::cout << " at row " << c.row + 1 << ", column " << c.col + 1;
  std::cout << ": " << c.message << '\n';
}

struct Options {
  std::string output;
  std::vector<std::string> inputs;
  std::string order_by;
  Index rank = 0;
  Index restarts = NmfOptions{}.restarts;
  std::string max_den = "65536";
  std::uint64_t seed = 1;
  int threads = 1;
  bool exact = false;
  bool prune = false;
  Index k = 2;
  Index n = 3;
  std::string lambda, mu;
  std::string degree, log_base = "e";
  Index neighborly = 0;
  bool machine = false;
};

int cmd_convert(const Options& o) {
  const std::string f = format_of(o.inputs[0]);
  Output out(o.output);
  if (f == "V") write_hpoly(*out, v_to_h(with_file(o.inputs[0], read_vpoly)).h);
  else if (f == "H") write_vpoly(*out, h_to_v(with_file(o.inputs[0], read_hpoly)).vertices);
  else throw InputError(o.inputs[0] + ": expected a V or H polytope, found '" + f + "'");
  return kOk;
}

int cmd_polar(const Options& o) {
  const Polytope p = load_polytope(o.inputs[0]);
  Output out(o.output);
  write_vpoly(*out, polar(p).vertices);
  return kOk;
}

int cmd_slack(const Options& o) {
  const Polytope p = load_ordered(o.inputs[0], o.order_by);
  Output out(o.output);
  write_slack(*out, slack_matrix(p).S);
  return kOk;
}

MatrixQ load_slack(const std::string& path, const std::string& order) {
  if (format_of(path) == "SLACK") return with_file(path, read_slack);
  return slack_matrix(load_ordered(path, order)).S;
}

int cmd_factorize(const Options& o) {
  const MatrixQ S = load_slack(o.inputs[0], o.order_by);
  NmfOptions opt;
  opt.restarts = o.restarts;
  opt.seed = o.seed;
  opt.threads = o.threads;
  try {
    opt.max_den = mpz_class(o.max_den);
  } catch (const std::exception&) {
    throw InputError("--max-den: bad integer '" + o.max_den + "'");
  }
  const Index m = o.rank > 0 ? o.rank : std::min(S.rows(), S.cols());
  const auto F = nmf_search(S, m, opt);
  if (!F) {
    std::cerr << "no exact factorization of size " << m << " found\n";
    return kFalse;
  }
  Output out(o.output);
  write_nnf(*out, *F);
  return kOk;
}

int cmd_verify_fact(const Options& o) {
  const MatrixQ S = load_slack(o.inputs[0], o.order_by);
  const std::string f = format_of(o.inputs[1]);
  Check c;
  if (f == "NNF") c = verify_nonneg_factorization(S, with_file(o.inputs[1], read_nnf));
  else if (f == "PSDF") c = verify_psd_factorization(S, with_file(o.inputs[1], read_psdf));
  else throw InputError(o.inputs[1] + ": expected NNF or PSDF, found '" + f + "'");
  print_check(c);
  return c ? kOk : kFalse;
}

int cmd_lift_from_fact(const Options& o) {
  const Polytope p = load_ordered(o.inputs[0], o.order_by);
  const PolyLift L = lift_from_factorization(p, with_file(o.inputs[1], read_nnf));
  Output out(o.output);
  write_lift(*out, L);
  return kOk;
}

int cmd_fact_from_lift(const Options& o) {
  const Polytope p = load_ordered(o.inputs[0], o.order_by);
  const LiftFactorization F = factorization_from_lift(p, with_file(o.inputs[1], read_lift));
  Output out(o.output);
  *out << "# raw size " << F.raw.size() << ", reduced size " << F.reduced.size() << '\n';
  write_nnf(*out, F.reduced);
  return kOk;
}

int cmd_lift(const std::string& kind, const Options& o) {
  const std::string& in = o.inputs[0];
  if (kind == "obdd") {
    Output out(o.output);
    write_lift(*out, obdd_flow_lift(with_file(in, read_obdd), o.prune).lift);
  } else if (kind == "chain") {
    Output out(o.output);
    write_lift(*out, chain_polytope_lift(with_file(in, read_poset)).lift);
  } else if (kind == "theta") {
    write_lmi(theta_body_lmi(with_file(in, read_graph)), o.output, o.exact);
  } else if (kind == "klevel") {
    write_lmi(klevel_sos_lift(load_polytope(in), o.k).lmi, o.output, o.exact);
  } else {
    const Quadratic q = with_file(in, read_quadratic);
    write_lmi(quadratic_epigraph_lmi(q.A, q.b, q.c), o.output, o.exact);
  }
  return kOk;
}

int cmd_honeycomb_build(const Options& o) {
  const HoneycombSpec h = build_honeycomb(o.n);
  Output out(o.output);
  *out << "honeycomb n=" << h.n << " edges=" << h.num_edges() << " internal=" << h.num_internal()
       << " free=" << free_internal_edges(h) << '\n';
  for (const auto& [a, b] : h.gamma) *out << "gamma " << h.edge_name(a) << " >= " << h.edge_name(b) << '\n';
  auto boundary = [&](const char* name, const std::vector<Index>& ids) {
    *out << name;
    for (Index e : ids) *out << ' ' << h.edge_name(e);
    *out << '\n';
  };
  boundary("lambda", h.lambda);
  boundary("mu", h.mu);
  boundary("nu", h.nu);
  return kOk;
}

int cmd_honeycomb_member(const Options& o) {
  const auto t = with_file(o.inputs[0], read_triple);
  const HornResult r = horn_membership(t[0], t[1], t[2]);
  Output out(o.output);
  if (r.member) {
    *out << "member\ne";
    for (Index i = 0; i < r.edges->size(); ++i) *out << ' ' << (*r.edges)(i).str();
    *out << '\n';
    return kOk;
  }
  *out << "not a member: " << r.reason << '\n';
  if (r.farkas) {
    *out << "farkas";
    for (Index i = 0; i < r.farkas->size(); ++i) *out << ' ' << (*r.farkas)(i).str();
    *out << '\n';
  }
  if (r.violated) {
    *out << "violated inequality value " << r.violated->evaluate(t[0], t[1], t[2]).str() << '\n';
  }
  return kFalse;
}

int cmd_honeycomb_eliminate3(const Options& o) {
  const VectorQ lambda = parse_vector(o.lambda, "--lambda"), mu = parse_vector(o.mu, "--mu");
  if (lambda.size() != 3 || mu.size() != 3) throw InputError("--lambda and --mu need three entries each");
  const HoneycombSpec h = build_honeycomb(3);
  const EliminatedSystem E = eliminate_to_inequalities(h, lambda, mu);
  const auto labels = n3_labels(h);
  Output out(o.output);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    const VectorQ row = E.edge_expr.row(labels[i]).transpose();
    *out << "e" << i + 1 << " = " << h.edge_name(labels[i]) << " = " << format_affine(E.vars, row.head(3), row(3))
         << '\n';
  }
  for (Index i = 0; i < E.A.rows(); ++i) *out << format_inequality(E.vars, E.A.row(i).transpose(), E.b(i)) << '\n';
  return kOk;
}

LogBase parse_base(const std::string& s) {
  if (s == "e") return LogBase::E;
  if (s == "2") return LogBase::Two;
  if (s == "10") return LogBase::Ten;
  throw InputError("--log-base must be e, 2 or 10");
}

int cmd_bounds(const Options& o) {
  const Polytope p = load_polytope(o.inputs[0]);
  BoundExtras x;
  x.base = parse_base(o.log_base);
  x.threads = o.threads;
  if (!o.degree.empty()) {
    try {
      x.degree = mpz_class(o.degree);
    } catch (const std::exception&) {
      throw InputError("--degree: bad integer '" + o.degree + "'");
    }
  }
  if (o.neighborly > 0) x.neighborly_k = o.neighborly;
  const BoundReport r = bound_report(p, o.inputs[0], x);
  Output out(o.output);
  *out << (o.machine ? r.lines() : r.text());
  return kOk;
}

int cmd_verify_lift(const Options& o) {
  const Polytope p = load_polytope(o.inputs[0]);
  const std::string& path = o.inputs[1];
  LiftVerification v;
  if (format_of(path) == "H") {
    v = verify_lift(p, with_file(path, read_lift));
  } else {
    PsdLift L;
    L.lmi = with_file(path, read_sdpa);
    if (L.lmi.num_original != p.ambient())
      throw DimensionMismatch("pencil has " + std::to_string(L.lmi.num_original) + " projected variables, polytope has " +
                              std::to_string(p.ambient()));
    std::vector<Monomial> mons;
    for (const std::string& name : L.lmi.names) {
      const auto m = parse_monomial(name, p.ambient());
      if (!m) throw InputError(path + ": variable '" + name + "' is not a monomial; no preimages available");
      mons.push_back(*m);
    }
    for (Index j = 0; j < p.num_vertices(); ++j) {
      VectorQ w(L.lmi.num_vars());
      for (Index i = 0; i < w.size(); ++i) w(i) = monomial_value(mons[static_cast<std::size_t>(i)], p.vertex(j));
      L.preimages.push_back(w);
    }
    L.facet_certificates.assign(static_cast<std::size_t>(p.num_facets()), MatrixQ());
    if (p.full_dimensional()) {
      for (Index k = 2; k <= L.lmi.size; ++k) {
        try {
          const KLevelLift K = klevel_sos_lift(p, k);
          if (same_pencil(K.lmi, L.lmi)) L = to_psd_lift(p, K);
          break;
        } catch (const PreconditionError&) {
        }
      }
    }
    v = verify_lift(p, L);
  }
  std::cout << to_string(v.tier) << ": " << v.message << '\n';
  if (v.witness) {
    std::cout << "witness";
    for (Index i = 0; i < v.witness->size(); ++i) std::cout << ' ' << (*v.witness)(i).str();
    std::cout << '\n';
  }
  return v.ok() ? kOk : kFalse;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"liftkit: lifts, slack matrices and factorizations of polytopes"};
  app.require_subcommand(1);
  Options o;
  int status = kOk;
  std::function<int()> action;

  auto add = [&](const std::string& name, const std::string& help, std::size_t nin, const std::string& what,
                 std::function<int()> fn, CLI::App* parent = nullptr) {
    CLI::App* c = (parent ? parent : &app)->add_subcommand(name, help);
    c->add_option("inputs", o.inputs, what)->required()->expected(static_cast<int>(nin));
    c->add_option("-o,--output", o.output, "Output file (default stdout)");
    c->callback([&action, fn] { action = fn; });
    return c;
  };
  auto no_input = [&](const std::string& name, const std::string& help, std::function<int()> fn, CLI::App* parent) {
    CLI::App* c = parent->add_subcommand(name, help);
    c->add_option("-o,--output", o.output, "Output file (default stdout)");
    c->callback([&action, fn] { action = fn; });
    return c;
  };

  add("convert", "Convert between V and H representations", 1, "VPoly or HPoly file", [&] { return cmd_convert(o); });
  add("polar", "Vertices of the polar (origin must be interior)", 1, "VPoly or HPoly file", [&] { return cmd_polar(o); });
  add("slack", "Slack matrix, facets by vertices", 1, "VPoly or HPoly file", [&] { return cmd_slack(o); })
      ->add_option("--order-by", o.order_by, "HPoly file fixing the facet order");
  {
    CLI::App* c = add("factorize", "Search for an exact nonnegative factorization", 1, "polytope or SLACK file",
                      [&] { return cmd_factorize(o); });
    c->add_option("--rank", o.rank, "Inner dimension (default min(f, v))");
    c->add_option("--restarts", o.restarts, "Random restarts");
    c->add_option("--max-den", o.max_den, "Largest denominator tried when rounding");
    c->add_option("--seed", o.seed, "Random seed");
    c->add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);
    c->add_option("--order-by", o.order_by, "HPoly file fixing the facet order");
  }
  add("verify-fact", "Check an NNF or PSDF factorization against a slack matrix", 2, "slack source and factorization",
      [&] { return cmd_verify_fact(o); })
      ->add_option("--order-by", o.order_by, "HPoly file fixing the facet order");
  add("lift-from-fact", "Polyhedral lift from a nonnegative factorization", 2, "polytope and NNF file",
      [&] { return cmd_lift_from_fact(o); })
      ->add_option("--order-by", o.order_by, "HPoly file fixing the facet order");
  add("fact-from-lift", "Nonnegative factorization from a polyhedral lift", 2, "polytope and Lift file",
      [&] { return cmd_fact_from_lift(o); })
      ->add_option("--order-by", o.order_by, "HPoly file fixing the facet order");

  CLI::App* lift = app.add_subcommand("lift", "Generate a lift");
  lift->require_subcommand(1);
  add("obdd", "Flow lift of an OBDD", 1, "OBDD file", [&] { return cmd_lift("obdd", o); }, lift)
      ->add_flag("--prune", o.prune, "Drop arcs off every accepting path");
  add("chain", "Chain polytope lift of a poset", 1, "POSET file", [&] { return cmd_lift("chain", o); }, lift);
  for (const char* kind : {"theta", "klevel", "epiquad"}) {
    const std::string k = kind;
    const std::string what = k == "theta" ? "GRAPH file" : k == "klevel" ? "VPoly or HPoly file" : "QUAD file";
    CLI::App* c = add(k, k == "theta" ? "Theta body pencil" : k == "klevel" ? "Moment lift of a k-level polytope"
                                                                            : "Epigraph of a convex quadratic",
                      1, what, [&o, k] { return cmd_lift(k, o); }, lift);
    c->add_flag("--exact", o.exact, "Write exact rationals instead of decimals");
    if (k == "klevel") c->add_option("-k,--levels", o.k, "Level count k")->check(CLI::Range(1, 8));
  }

  CLI::App* honey = app.add_subcommand("honeycomb", "Honeycomb cone tools");
  honey->require_subcommand(1);
  no_input("build", "Print the honeycomb structure", [&] { return cmd_honeycomb_build(o); }, honey)
      ->add_option("--n", o.n, "Size")
      ->check(CLI::Range(1, 12));
  add("member", "Horn cone membership of a triple", 1, "triple file", [&] { return cmd_honeycomb_member(o); }, honey);
  {
    CLI::App* c = no_input("eliminate3", "Inequalities in (e1, nu1, nu2) for n = 3",
                           [&] { return cmd_honeycomb_eliminate3(o); }, honey);
    c->add_option("--lambda", o.lambda, "Three rationals, e.g. \"1 0 -1\"")->required();
    c->add_option("--mu", o.mu, "Three rationals")->required();
  }

  {
    CLI::App* c = add("bounds", "Lower bounds on lift sizes", 1, "VPoly or HPoly file", [&] { return cmd_bounds(o); });
    c->add_option("--degree", o.degree, "Boundary degree of the target");
    c->add_option("--log-base", o.log_base, "Logarithm base for the degree bound: e, 2 or 10");
    c->add_option("--neighborly", o.neighborly, "Test k-neighborliness");
    c->add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);
    c->add_flag("--machine", o.machine, "Line protocol output");
  }
  add("verify-lift", "Check that a lift projects onto the polytope", 2, "polytope and Lift or exact SDPA file",
      [&] { return cmd_verify_lift(o); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }
  try {
    status = action();
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kInput;
  } catch (const DimensionMismatch& e) {
    std::cerr << "dimension mismatch: " << e.what() << '\n';
    return kInput;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition: " << e.what() << '\n';
    return kInput;
  }
  std::cout.flush();
  return status;
}
