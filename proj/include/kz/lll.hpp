#pragma once

#include <vector>

#include "kz/basis.hpp"

namespace kz {

// Textbook LLL: exact integer row operations, floating-point GSO refreshed
// after each swap. Output generates the same lattice, is size-reduced and
// satisfies the Lovasz condition
//   delta * ||b*_{k-1}||^2 <= ||b*_k||^2 + mu_{k,k-1}^2 * ||b*_{k-1}||^2.
// Requires 1/4 < delta < 1.
Basis lll_reduce(const Basis& b, double delta = 0.99);

// LLL on a list of vectors that may contain one linear dependency (m+1
// vectors spanning an m-dimensional lattice). Zero input vectors are dropped
// up front; the zero vector produced by dependency elimination is dropped as
// it appears. Runs in exact rational arithmetic so that dependent vectors
// cancel to exact zeros. Throws rank_error when the input spans fewer than
// (nonzero count - 1) dimensions.
Basis lll_reduce_dependent(const std::vector<IntVector>& vectors,
                           double delta = 0.99);

}  // namespace kz
