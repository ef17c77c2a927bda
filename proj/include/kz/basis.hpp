#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "kz/errors.hpp"

namespace kz {

using Int = mpz_class;
using IntVector = std::vector<Int>;

// Ordered list of m linearly independent integer row vectors in Z^n, m <= n.
// Rows are the lattice generators; entries are arbitrary precision.
struct Basis {
  std::vector<IntVector> rows;

  int dim() const { return static_cast<int>(rows.size()); }
  int ambient_dim() const {
    return rows.empty() ? 0 : static_cast<int>(rows.front().size());
  }

  bool operator==(const Basis&) const = default;
};

Int dot(const IntVector& a, const IntVector& b);
Int norm_sq(const IntVector& v);

// Text format: "[[a11 a12 ...][a21 ...]...]" with base-10 entries of unbounded
// magnitude; whitespace (including newlines) may separate tokens.
Basis parse_basis(const std::string& text);

// Canonical form: one row per line, single spaces between entries.
// parse_basis(serialize_basis(b)) == b, and serialization of a parsed basis is
// byte-identical under re-serialization.
std::string serialize_basis(const Basis& b);

// (prod_i ||b*_i||)^(1/m), i.e. det(Gram)^(1/(2m)). Throws rank_error on a
// degenerate basis.
double det_root(const Basis& b);

// Deterministic per seed. Row 1 is (p, 0, ..., 0) with p a random odd
// `bits`-bit integer; row i >= 2 is (r_i, 0, ..., 1 at position i, ..., 0)
// with r_i uniform in [0, p). det = p.
Basis generate_lattice(int dim, int bits, unsigned long seed);

}  // namespace kz
