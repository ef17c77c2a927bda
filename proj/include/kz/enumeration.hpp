#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "kz/basis.hpp"
#include "kz/gso.hpp"

namespace kz {

enum class BoundStrategy { Hermite, MDet, Gauss105, FirstVector, Explicit };

// Search sphere: squared radius A^2 plus the strategy that produced it.
struct EnumBound {
  double a_sq;
  BoundStrategy strategy;
};

struct EnumMode {
  enum class Kind { Shortest, FirstBelow };

  static EnumMode shortest() { return {Kind::Shortest, 0.0}; }
  static EnumMode first_below(double threshold_sq);

  bool is_first_below() const { return kind == Kind::FirstBelow; }

  Kind kind;
  double threshold_sq;  // meaningful for FirstBelow only
};

struct EnumStats {
  std::uint64_t nodes_visited = 0;
  std::uint64_t leaves_reached = 0;
  std::uint64_t bound_updates = 0;
  std::uint64_t root_branches = 0;
};

// Coefficient vector x (never all-zero), its squared norm recomputed in exact
// integer arithmetic, and traversal counters.
struct EnumResult {
  std::vector<long long> coeffs;
  Int norm_sq;
  EnumStats stats;
};

// Result of enumeration over a projected (non-integer) lattice, where only
// floating norms are available. Used by BKZ block searches.
struct ProjectedEnumResult {
  std::vector<long long> coeffs;
  double norm_sq;
  EnumStats stats;
};

// Exact gamma_m for m <= 8 from the classical table; 1 + m/4 above that.
double hermite_gamma_upper(int m);

// Hermite     -> min(||b_1||^2, gamma_m * det^{2/m})
// MDet        -> (m * det^{1/m})^2
// Gauss105    -> (1.05 * Gamma(m/2 + 1)^{1/m} / sqrt(pi) * det^{1/m})^2
// FirstVector -> ||b_1||^2
// Explicit    -> explicit_value
EnumBound compute_bound(const GsoData& gso, const Basis& b, BoundStrategy s,
                        double explicit_value = 0.0);

// l_level = (x_level + sum_{j>level} x_j * mu[j][level])^2 * ||b*_level||^2.
// `level` is 0-based.
double partial_norm(const std::vector<long long>& x, int level,
                    const GsoData& gso);

// 2 * ceil(A / ||b*_m||): branches leaving the enumeration root. The
// symmetric half actually traversed is ceil(A / ||b*_m||) + 1 values,
// x_m in [0, ceil(A / ||b*_m||)].
long long root_branch_count(const GsoData& gso, const EnumBound& bound);

// Depth-first search over integer coefficients, level m down to level 1,
// pruning partial norms against a monotonically shrinking squared bound.
// The highest-index nonzero coordinate is restricted to positive values, so
// only one vector of each +-v pair is visited. Every recorded leaf is
// re-verified in exact integer arithmetic.
//
// Shortest:   exhausts the tree; returns a minimum-norm nonzero vector, or
//             nullopt when no nonzero vector lies within the initial bound.
// FirstBelow: returns the first recorded candidate whose exact norm_sq is
//             <= threshold_sq, or nullopt if the tree is exhausted first.
std::optional<EnumResult> enumerate_serial(const GsoData& gso, const Basis& b,
                                           const EnumBound& bound,
                                           const EnumMode& mode);

}  // namespace kz
