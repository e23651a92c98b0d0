#pragma once

#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "liftkit/polytope.hpp"

namespace liftkit {

/// Smallest b with 2^b >= v (v >= 1).
Index ceil_log2(const mpz_class& v);
/// Smallest s with s^2 >= v (v >= 0).
Index ceil_sqrt(const mpz_class& v);

/// Polyhedral lift size >= ceil(log2 #vertices).
Index goemans_bound(const mpz_class& num_vertices);
Index goemans_bound(const Polytope& p);

/// Polyhedral lift size >= ceil(log2 |faces|), counting the empty face and p.
Index face_count_bound(const FaceLattice& L);
Index face_count_bound(const Polytope& p);

/// Spectrahedral lift size >= dim + 1. Checks that the longest chain of
/// non-empty faces has dim + 1 members.
Index chain_dim_bound(const Polytope& p);

/// Spectrahedral lift size >= ceil(sqrt(dim)).
Index sqrt_dim_bound(Index dim);

enum class LogBase { E, Two, Ten };
std::string to_string(LogBase b);

/// Smallest k with k^2 >= log_base(d), decided exactly as base^(k^2) >= d.
Index degree_bound(const mpz_class& d, LogBase base = LogBase::E);

struct NeighborlinessObstruction {
  Index k = 0;
  bool neighborly = false;
  bool vacuous = false;            // k <= 1
  std::vector<Index> violator;     // failing vertex subset when not neighborly
  Index excluded_chain_len = 0;    // cones with face chains at most this long
  bool covers_given_cone = false;  // cone_chain_len <= excluded_chain_len
  std::string text;
};

/// Finite evidence only: reports k-neighborliness of p and which cone
/// families the obstruction would exclude for an unbounded family of such
/// polytopes. Never claims impossibility.
NeighborlinessObstruction neighborliness_obstruction(const Polytope& p, Index k, Index cone_chain_len, int threads = 1);

enum class ConeFamily { Polyhedral, Spectrahedral, None };

struct BoundEntry {
  std::string name;
  std::optional<Index> value;  // empty: no numeric bound (report only)
  std::string note;            // shown instead of a value when empty
  ConeFamily family = ConeFamily::None;
  std::string inputs;
  std::string citation;
};

struct BoundExtras {
  std::optional<mpz_class> degree;  // boundary degree, supplied by the caller
  LogBase base = LogBase::E;
  std::optional<Index> neighborly_k;
  Index cone_chain_len = 3;  // S^2_+
  int threads = 1;
};

struct BoundReport {
  std::string target;
  std::vector<BoundEntry> entries;
  Index polyhedral = 0;     // max over polyhedral entries
  Index spectrahedral = 0;  // max over spectrahedral entries

  const BoundEntry* find(const std::string& name) const;
  /// Human-readable report.
  std::string text() const;
  /// One line per entry: "bound <name> <value> <citation>".
  std::string lines() const;
};

BoundReport bound_report(const Polytope& p, const std::string& target, const BoundExtras& extras = {});

/// Equality with the dim + 1 floor.
bool psd_minimal(Index spectrahedral_lift_size, const Polytope& p);

}  // namespace liftkit
