#include "kz/parallel.hpp"

#include <exception>
#include <thread>

#include "enum_engine.hpp"

namespace kz {

namespace detail {

void run_workers(const FlatGso& gso, long long root_limit, int workers,
                 SharedSearch& shared, std::vector<TraverseStats>& stats) {
  stats.assign(workers, TraverseStats{});
  if (workers == 1) {
    traverse_roots(gso, RootRange{0, 1, root_limit}, shared, stats[0]);
    return;
  }

  std::vector<std::exception_ptr> failures(workers);
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      try {
        traverse_roots(gso, RootRange{w, workers, root_limit}, shared,
                       stats[w]);
      } catch (...) {
        failures[w] = std::current_exception();
        shared.stop.store(true);
      }
    });
  }
  for (std::thread& t : threads) t.join();
  for (const std::exception_ptr& e : failures) {
    if (!e) continue;
    try {
      std::rethrow_exception(e);
    } catch (const std::exception& ex) {
      throw run_error(std::string("worker failed: ") + ex.what());
    } catch (...) {
      throw run_error("worker failed");
    }
  }
}

}  // namespace detail

std::vector<std::vector<long long>> partition_root(
    const std::vector<long long>& root_values, int workers) {
  if (workers < 1) throw param_error("workers must be >= 1");
  std::vector<std::vector<long long>> parts(workers);
  for (std::size_t idx = 0; idx < root_values.size(); ++idx)
    parts[idx % workers].push_back(root_values[idx]);
  return parts;
}

std::optional<EnumResult> enumerate_parallel(const GsoData& gso,
                                             const Basis& b,
                                             const EnumBound& bound,
                                             const EnumMode& mode,
                                             const ParallelConfig& cfg) {
  if (cfg.workers < 1) throw param_error("workers must be >= 1");
  if (gso.dim() != b.dim()) throw param_error("gso/basis dimension mismatch");
  if (!(bound.a_sq > 0.0)) throw param_error("bound must be positive");

  const detail::FlatGso flat = detail::flatten(gso);
  const long long limit =
      detail::root_value_limit(bound.a_sq, gso.b_star_sq.back());

  detail::SharedSearch shared;
  shared.bound.store(bound.a_sq);
  if (mode.is_first_below()) {
    const double threshold = mode.threshold_sq;
    shared.accept = [&b, threshold](const std::vector<long long>& coeffs,
                                    double) {
      const Int n = detail::lift_norm_sq(b, coeffs);
      return mpz_cmp_d(n.get_mpz_t(), threshold) <= 0;
    };
  }

  std::vector<detail::TraverseStats> stats;
  detail::run_workers(flat, limit, cfg.workers, shared, stats);

  EnumStats total;
  for (const detail::TraverseStats& s : stats) {
    total.nodes_visited += s.nodes;
    total.leaves_reached += s.leaves;
  }
  total.bound_updates = shared.bound_updates.load();
  total.root_branches = static_cast<std::uint64_t>(2 * limit);
  return detail::finalize_exact(b, bound.a_sq, mode, shared, total);
}

std::optional<ProjectedEnumResult> enumerate_projected(const GsoData& gso,
                                                       const EnumBound& bound,
                                                       const EnumMode& mode,
                                                       int workers) {
  if (workers < 1) throw param_error("workers must be >= 1");
  if (!(bound.a_sq > 0.0)) throw param_error("bound must be positive");

  const detail::FlatGso flat = detail::flatten(gso);
  const long long limit =
      detail::root_value_limit(bound.a_sq, gso.b_star_sq.back());

  detail::SharedSearch shared;
  shared.bound.store(bound.a_sq);
  if (mode.is_first_below()) {
    const double threshold = mode.threshold_sq;
    shared.accept = [threshold](const std::vector<long long>&, double total) {
      return total <= threshold;
    };
  }

  std::vector<detail::TraverseStats> stats;
  detail::run_workers(flat, limit, workers, shared, stats);

  EnumStats total;
  for (const detail::TraverseStats& s : stats) {
    total.nodes_visited += s.nodes;
    total.leaves_reached += s.leaves;
  }
  total.bound_updates = shared.bound_updates.load();
  total.root_branches = static_cast<std::uint64_t>(2 * limit);

  const detail::Candidate* best = nullptr;
  if (mode.is_first_below()) {
    if (shared.chosen < 0) return std::nullopt;
    best = &shared.candidates[shared.chosen];
  } else {
    for (const detail::Candidate& c : shared.candidates)
      if (best == nullptr || c.total < best->total) best = &c;
    if (best == nullptr) return std::nullopt;
  }
  return ProjectedEnumResult{best->coeffs, best->total, total};
}

}  // namespace kz
