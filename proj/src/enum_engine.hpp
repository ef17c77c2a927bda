#pragma once

// Shared traversal machinery for serial and multi-worker enumeration.
// One worker walks the coefficient tree over an arithmetic progression of
// root values; the squared bound, stop flag and candidate sink are shared.

#include <atomic>
#include <cstdint>
#include <functional>
#include <mutex>
#include <vector>

#include "kz/basis.hpp"
#include "kz/enumeration.hpp"
#include "kz/gso.hpp"

namespace kz::detail {

// Relative slack on floating pruning tests so that vectors lying exactly on
// the sphere survive rounding; every surviving candidate is re-checked.
inline constexpr double kPruneSlack = 1.0 + 1e-12;

// Relative allowance when exact integer norms are filtered against the
// double-valued initial bound.
inline constexpr double kExactFilterSlack = 1.0 + 1e-9;

struct Candidate {
  std::vector<long long> coeffs;
  double total;  // floating partial-norm sum at the leaf
};

struct SharedSearch {
  std::atomic<double> bound{0.0};
  std::atomic<bool> stop{false};
  std::atomic<bool> has_candidate{false};
  std::atomic<std::uint64_t> bound_updates{0};

  std::mutex sink_mutex;
  std::vector<Candidate> candidates;
  int chosen = -1;  // FirstBelow winner (index into candidates)

  // Invoked under sink_mutex for each recorded candidate; returning true
  // selects the candidate and stops the search (FirstBelow).
  std::function<bool(const std::vector<long long>&, double)> accept;
};

struct FlatGso {
  int m = 0;
  std::vector<double> mu_t;   // mu_t[i*m + j] = mu[j][i] for j > i
  std::vector<double> bstar;  // ||b*_i||^2
};

FlatGso flatten(const GsoData& gso);

// ceil(A / ||b*_m||) adjusted so that k is the least integer with
// k^2 * ||b*_m||^2 >= a_sq; always >= 1.
long long root_value_limit(double a_sq, double bstar_last);

struct RootRange {
  long long first = 0;
  long long step = 1;
  long long last = 0;  // inclusive
};

struct TraverseStats {
  std::uint64_t nodes = 0;
  std::uint64_t leaves = 0;
};

void traverse_roots(const FlatGso& gso, const RootRange& range,
                    SharedSearch& shared, TraverseStats& stats);

IntVector lift_vector(const Basis& b, const std::vector<long long>& coeffs);
Int lift_norm_sq(const Basis& b, const std::vector<long long>& coeffs);

// Drives `workers` traversals over [0, root_limit] (round-robin) and fills
// per-worker stats. workers == 1 runs inline on the calling thread.
void run_workers(const FlatGso& gso, long long root_limit, int workers,
                 SharedSearch& shared, std::vector<TraverseStats>& stats);

std::optional<EnumResult> finalize_exact(const Basis& b, double initial_a_sq,
                                         const EnumMode& mode,
                                         SharedSearch& shared,
                                         EnumStats stats);

}  // namespace kz::detail
