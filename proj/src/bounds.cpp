#include "liftkit/bounds.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "liftkit/error.hpp"

namespace liftkit {

Index ceil_log2(const mpz_class& v) {
  if (v < 1) throw PreconditionError("log2 of a non-positive count");
  if (v == 1) return 0;
  const mpz_class w = v - 1;
  return static_cast<Index>(mpz_sizeinbase(w.get_mpz_t(), 2));
}

Index ceil_sqrt(const mpz_class& v) {
  if (v < 0) throw PreconditionError("square root of a negative count");
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), v.get_mpz_t());
  if (r * r < v) r += 1;
  return static_cast<Index>(r.get_si());
}

Index goemans_bound(const mpz_class& num_vertices) { return ceil_log2(num_vertices); }
Index goemans_bound(const Polytope& p) { return goemans_bound(mpz_class(static_cast<long>(p.num_vertices()))); }

Index face_count_bound(const FaceLattice& L) { return ceil_log2(mpz_class(static_cast<long>(L.size()))); }
Index face_count_bound(const Polytope& p) { return face_count_bound(face_lattice(p)); }

Index chain_dim_bound(const Polytope& p) {
  const Index chain = longest_chain(face_lattice(p));
  if (chain != p.dim + 1)
    throw std::logic_error("longest face chain has " + std::to_string(chain) + " faces, expected dim + 1 = " +
                           std::to_string(p.dim + 1));
  return p.dim + 1;
}

Index sqrt_dim_bound(Index dim) {
  if (dim < 1) throw PreconditionError("dimension bound needs dim >= 1");
  return ceil_sqrt(mpz_class(static_cast<long>(dim)));
}

std::string to_string(LogBase b) {
  switch (b) {
    case LogBase::E: return "e";
    case LogBase::Two: return "2";
    case LogBase::Ten: return "10";
  }
  return "?";
}

namespace {

// base^exp >= d, exactly.
bool power_at_least(LogBase base, unsigned long exp, const mpz_class& d) {
  if (base != LogBase::E) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), base == LogBase::Two ? 2 : 10, exp);
    return p >= d;
  }
  if (exp == 0) return d <= 1;
  // e lies in [s_N, s_N + 1/(N! N)] with s_N = sum_{i<=N} 1/i!. e^exp is
  // irrational, so refining the enclosure always decides.
  for (unsigned long terms = 8;; terms *= 2) {
    mpq_class s = 0, inv_fact = 1;
    for (unsigned long i = 0; i <= terms; ++i) {
      if (i > 0) inv_fact /= i;
      s += inv_fact;
    }
    mpq_class hi = s + inv_fact / terms;
    mpq_class lo_pow = 1, hi_pow = 1;
    for (unsigned long i = 0; i < exp; ++i) {
      lo_pow *= s;
      hi_pow *= hi;
    }
    if (lo_pow >= d) return true;
    if (hi_pow < d) return false;
  }
}

}  // namespace

Index degree_bound(const mpz_class& d, LogBase base) {
  if (d < 2) throw PreconditionError("degree bound needs d >= 2");
  for (unsigned long k = 0;; ++k)
    if (power_at_least(base, k * k, d)) return static_cast<Index>(k);
}

NeighborlinessObstruction neighborliness_obstruction(const Polytope& p, Index k, Index cone_chain_len, int threads) {
  NeighborlinessObstruction out;
  out.k = k;
  out.excluded_chain_len = k + 1;
  std::ostringstream os;
  if (k <= 1) {
    out.vacuous = true;
    out.neighborly = true;
    os << "vacuous: every polytope is 1-neighborly";
    out.text = os.str();
    return out;
  }
  const NeighborlyReport r = is_k_neighborly(p, k, threads);
  out.neighborly = r.holds;
  if (!r.holds) {
    out.violator = r.violator;
    os << "no obstruction: not " << k << "-neighborly (vertices";
    for (Index v : r.violator) os << ' ' << v + 1;
    os << " span no common face)";
    out.text = os.str();
    return out;
  }
  out.covers_given_cone = cone_chain_len <= out.excluded_chain_len;
  os << k << "-neighborly on " << p.num_vertices() << " vertices; evidence consistent with no lift into products of "
     << "cones whose face chains have length <= " << out.excluded_chain_len;
  if (out.covers_given_cone) os << " (such as the given cone, chain length " << cone_chain_len << ")";
  os << "; a single polytope cannot prove this";
  out.text = os.str();
  return out;
}

const BoundEntry* BoundReport::find(const std::string& name) const {
  for (const BoundEntry& e : entries)
    if (e.name == name) return &e;
  return nullptr;
}

std::string BoundReport::text() const {
  std::ostringstream os;
  os << "lower bounds for " << target << '\n';
  for (const BoundEntry& e : entries) {
    os << "  " << e.name << ": " << (e.value ? std::to_string(*e.value) : e.note);
    if (e.family == ConeFamily::Polyhedral) os << " (polyhedral)";
    if (e.family == ConeFamily::Spectrahedral) os << " (spectrahedral)";
    os << "\n    inputs: " << e.inputs << "\n    source: " << e.citation << '\n';
  }
  os << "polyhedral lift size >= " << polyhedral << '\n';
  os << "spectrahedral lift size >= " << spectrahedral << '\n';
  return os.str();
}

std::string BoundReport::lines() const {
  std::ostringstream os;
  for (const BoundEntry& e : entries) {
    std::string note = e.note;
    std::replace(note.begin(), note.end(), ' ', '-');
    os << "bound " << e.name << ' ' << (e.value ? std::to_string(*e.value) : note) << ' ' << e.citation << '\n';
  }
  os << "bound polyhedral " << polyhedral << " max of polyhedral entries\n";
  os << "bound spectrahedral " << spectrahedral << " max of spectrahedral entries\n";
  return os.str();
}

BoundReport bound_report(const Polytope& p, const std::string& target, const BoundExtras& extras) {
  BoundReport r;
  r.target = target;
  const FaceLattice L = face_lattice(p);
  const std::string v = std::to_string(p.num_vertices()), d = std::to_string(p.dim);

  r.entries.push_back({"goemans", goemans_bound(p), "", ConeFamily::Polyhedral, "vertices=" + v,
                       "Goemans: a polyhedral lift with m facets has at most 2^m faces, so m >= ceil(log2 #vertices)"});
  r.entries.push_back({"face_count", face_count_bound(L), "", ConeFamily::Polyhedral,
                       "faces=" + std::to_string(L.size()) + " (empty face and polytope included)",
                       "face lattice injects into the Boolean lattice of the lift's facets: m >= ceil(log2 |faces|)"});
  if (p.dim >= 0)
    r.entries.push_back({"chain_dim", chain_dim_bound(p), "", ConeFamily::Spectrahedral,
                         "dim=" + d + ", longest face chain=" + std::to_string(longest_chain(L)),
                         "face chains of the psd cone: spectrahedral lift size >= dim + 1"});
  if (p.dim >= 1)
    r.entries.push_back({"sqrt_dim", sqrt_dim_bound(p.dim), "", ConeFamily::Spectrahedral, "dim=" + d,
                         "dimension count dim C <= dim S^m: m >= ceil(sqrt(dim))"});
  if (extras.degree)
    r.entries.push_back({"degree", degree_bound(*extras.degree, extras.base), "", ConeFamily::Spectrahedral,
                         "d=" + extras.degree->get_str() + ", log base " + to_string(extras.base),
                         "algebraic degree of the boundary: m >= ceil(sqrt(log d))"});
  if (extras.neighborly_k) {
    const NeighborlinessObstruction n = neighborliness_obstruction(p, *extras.neighborly_k, extras.cone_chain_len, extras.threads);
    r.entries.push_back({"neighborliness", std::nullopt, n.neighborly && !n.vacuous ? "consistent" : "no obstruction",
                         ConeFamily::None, n.text,
                         "neighborly polytopes versus face chains of product cones (finite evidence only)"});
  }
  for (const BoundEntry& e : r.entries) {
    if (!e.value) continue;
    if (e.family == ConeFamily::Polyhedral) r.polyhedral = std::max(r.polyhedral, *e.value);
    if (e.family == ConeFamily::Spectrahedral) r.spectrahedral = std::max(r.spectrahedral, *e.value);
  }
  return r;
}

bool psd_minimal(Index spectrahedral_lift_size, const Polytope& p) { return spectrahedral_lift_size == p.dim + 1; }

}  // namespace liftkit
