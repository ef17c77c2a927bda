#pragma once

#include <vector>

#include "kz/basis.hpp"

namespace kz {

// Orthogonalized shadow of a basis: b_i = sum_{j<=i} mu[i][j] * b*_j with
// mutually orthogonal b*_j. mu is lower-triangular with unit diagonal,
// b_star_sq[i] = ||b*_i||^2 > 0. The orthogonal vectors themselves are not
// retained.
struct GsoData {
  std::vector<std::vector<double>> mu;
  std::vector<double> b_star_sq;

  int dim() const { return static_cast<int>(b_star_sq.size()); }
};

// Classical Gram-Schmidt recurrence. Inner products are taken exactly in
// integer arithmetic and rounded to double before the recurrence, so raw
// entry magnitudes never overflow intermediate floating products.
// Throws rank_error when some ||b*_i||^2 vanishes within tolerance.
GsoData compute_gso(const Basis& b);

struct SizeReduced {
  Basis basis;
  GsoData gso;
};

// Equal-lattice transform (unimodular integer row operations) with
// |mu[i][j]| <= 1/2 + 1e-9 for all j < i. b_star_sq is unchanged.
SizeReduced size_reduce(const Basis& b);

}  // namespace kz
