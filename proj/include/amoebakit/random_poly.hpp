#pragma once

#include <cstdint>
#include <vector>

#include "amoebakit/lpoly.hpp"

namespace amoebakit {

/// Random maximally sparse bivariate polynomial: 3 to 6 distinct lattice points in [0,5]^2,
/// support = vertices of their hull (redrawn while the hull is not two-dimensional),
/// coefficients uniform on the annulus 0.5 <= |a| <= 2 with uniform argument.
LaurentPolynomial random_sparse_polynomial(std::uint64_t seed);

/// The batch used by `verify-solid --random N --seed S`: member i uses seed S * 1000003 + i.
std::vector<LaurentPolynomial> random_sparse_batch(std::size_t count, std::uint64_t seed);

}  // namespace amoebakit
