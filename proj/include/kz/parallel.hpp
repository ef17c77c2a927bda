#pragma once

#include <optional>
#include <vector>

#include "kz/enumeration.hpp"

namespace kz {

// Static round-robin over root branch values.
struct ParallelConfig {
  int workers = 1;
};

// Worker w (1-based) receives the values at positions w, w + workers,
// w + 2*workers, ... of the ordered list. Sublists are disjoint and cover
// the input.
std::vector<std::vector<long long>> partition_root(
    const std::vector<long long>& root_values, int workers);

// Multi-worker enumeration: each worker runs the serial traversal restricted
// to its share of root values; all workers share one squared bound that only
// decreases and a stop flag (FirstBelow). Stats are summed across workers.
// In Shortest mode the returned norm_sq equals enumerate_serial's on the same
// inputs (the witness vector may differ). Worker failure propagates as
// run_error.
std::optional<EnumResult> enumerate_parallel(const GsoData& gso,
                                             const Basis& b,
                                             const EnumBound& bound,
                                             const EnumMode& mode,
                                             const ParallelConfig& cfg);

// Same traversal over a projected block lattice, where no integer lift is
// available; norms in the result are floating partial-norm sums. FirstBelow
// compares those floating norms against the threshold.
std::optional<ProjectedEnumResult> enumerate_projected(const GsoData& gso,
                                                       const EnumBound& bound,
                                                       const EnumMode& mode,
                                                       int workers = 1);

}  // namespace kz
