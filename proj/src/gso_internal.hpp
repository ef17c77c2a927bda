#pragma once

// Shared internals: exact integer Gram matrix maintenance and the
// double-precision GSO recurrence driven from it.

#include <vector>

#include "kz/basis.hpp"
#include "kz/gso.hpp"

namespace kz::detail {

inline constexpr double kRankTol = 1e-10;
inline constexpr double kSizeReduceEps = 1e-9;

using Gram = std::vector<std::vector<Int>>;

Gram gram_matrix(const Basis& b);

// Effect of rows[k] -= q * rows[j] on a symmetric Gram matrix.
void gram_row_sub(Gram& g, int k, int j, const Int& q);

// Effect of swapping rows a and b.
void gram_swap(Gram& g, int a, int b);

// Recompute mu rows [from, m) and the matching b_star_sq entries from the
// exact Gram matrix. Throws rank_error when a projection vanishes.
void gso_refresh(const Gram& g, GsoData& gso, int from);

// Reduce |mu[i][j]|, j < i, below 1/2 + eps by exact integer row operations
// on `basis`, keeping `g` and gso row i consistent. Returns true when any
// row operation was applied.
bool size_reduce_row(Basis& basis, Gram& g, GsoData& gso, int i);

// rows[k] -= q * rows[j] on the basis itself.
void row_submul(IntVector& target, const IntVector& source, const Int& q);

Int round_to_int(double x);

}  // namespace kz::detail
