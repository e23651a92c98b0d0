// Double description method for the extreme rays of {w : H w >= 0}.
#pragma once

#include <vector>

#include <boost/dynamic_bitset.hpp>
#include <gmpxx.h>

#include "liftkit/rational.hpp"

namespace liftkit::detail {

using IntVec = std::vector<mpz_class>;

/// Extreme rays of the pointed cone {w : H w >= 0} as primitive integer
/// vectors. Returns false (and no rays) when the cone is not pointed.
bool extreme_rays(const MatrixQ& H, std::vector<IntVec>& rays);

IntVec primitive(const VectorQ& v);
VectorQ to_rational(const IntVec& v);

}  // namespace liftkit::detail
