#include "kz/enumeration.hpp"

#include <cmath>
#include <numbers>

#include "enum_engine.hpp"

namespace kz {

namespace detail {

FlatGso flatten(const GsoData& gso) {
  const int m = gso.dim();
  FlatGso f;
  f.m = m;
  f.mu_t.assign(static_cast<std::size_t>(m) * m, 0.0);
  f.bstar = gso.b_star_sq;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      f.mu_t[static_cast<std::size_t>(i) * m + j] = gso.mu[j][i];
  return f;
}

long long root_value_limit(double a_sq, double bstar_last) {
  if (!(a_sq > 0.0)) throw param_error("enumeration bound must be positive");
  if (!(bstar_last > 0.0)) throw param_error("degenerate GSO norm");
  const double k0 = std::ceil(std::sqrt(a_sq / bstar_last));
  long long k = k0 < 1.0 ? 1 : static_cast<long long>(k0);
  while (static_cast<double>(k) * static_cast<double>(k) * bstar_last < a_sq)
    ++k;
  while (k > 1 && static_cast<double>(k - 1) * static_cast<double>(k - 1) *
                          bstar_last >=
                      a_sq)
    --k;
  return k;
}

namespace {

struct Traversal {
  const double* mu_t;
  const double* bstar;
  int m;
  SharedSearch& shared;
  TraverseStats& stats;
  std::vector<long long> x;

  Traversal(const FlatGso& gso, SharedSearch& sh, TraverseStats& st)
      : mu_t(gso.mu_t.data()),
        bstar(gso.bstar.data()),
        m(gso.m),
        shared(sh),
        stats(st),
        x(gso.m, 0) {}

  bool stopped() const {
    return shared.stop.load(std::memory_order_relaxed);
  }

  void record(double total) {
    double cur = shared.bound.load(std::memory_order_relaxed);
    if (!(total < cur) &&
        shared.has_candidate.load(std::memory_order_relaxed))
      return;
    // Shrink the shared bound to the new value (compare-and-minimum).
    double prev = shared.bound.load();
    bool shrunk = false;
    while (total < prev) {
      if (shared.bound.compare_exchange_weak(prev, total)) {
        shrunk = true;
        break;
      }
    }
    if (shrunk) shared.bound_updates.fetch_add(1);

    std::lock_guard<std::mutex> lock(shared.sink_mutex);
    shared.has_candidate.store(true);
    shared.candidates.push_back({x, total});
    if (shared.accept &&
        shared.accept(shared.candidates.back().coeffs, total)) {
      shared.chosen = static_cast<int>(shared.candidates.size()) - 1;
      shared.stop.store(true);
    }
  }

  void leaf(double total, bool zero_vector) {
    if (zero_vector) return;
    ++stats.nodes;
    ++stats.leaves;
    record(total);
  }

  // Scan level i given the accumulated squared norm of levels above it.
  void descend(int i, double above, bool zero_prefix) {
    const double* mu_i = mu_t + static_cast<std::size_t>(i) * m;
    double center = 0.0;
    for (int j = i + 1; j < m; ++j)
      center -= static_cast<double>(x[j]) * mu_i[j];

    double bound = shared.bound.load(std::memory_order_relaxed);
    double radicand = bound * kPruneSlack - above;
    if (radicand < 0.0) return;
    long long xi = static_cast<long long>(
        std::ceil(center - std::sqrt(radicand / bstar[i])));
    if (zero_prefix && xi < 0) xi = 0;

    for (;; ++xi) {
      if (stopped()) return;
      const double offset = static_cast<double>(xi) - center;
      const double level_sq = offset * offset * bstar[i];
      const double total = above + level_sq;
      bound = shared.bound.load(std::memory_order_relaxed);
      if (total > bound * kPruneSlack) {
        if (offset >= 0.0) return;  // right of center: no further value fits
        continue;
      }
      x[i] = xi;
      if (i == 0) {
        leaf(total, zero_prefix && xi == 0);
      } else {
        ++stats.nodes;
        descend(i - 1, total, zero_prefix && xi == 0);
        if (stopped()) return;
      }
    }
  }

  void run(const RootRange& range) {
    const int top = m - 1;
    for (long long r = range.first; r <= range.last; r += range.step) {
      if (stopped()) return;
      const double rd = static_cast<double>(r);
      const double level_sq = rd * rd * bstar[top];
      const double bound = shared.bound.load(std::memory_order_relaxed);
      if (level_sq > bound * kPruneSlack) return;  // values only grow
      if (m == 1) {
        x[top] = r;
        leaf(level_sq, r == 0);
        continue;
      }
      x[top] = r;
      ++stats.nodes;
      descend(top - 1, level_sq, r == 0);
    }
  }
};

}  // namespace

void traverse_roots(const FlatGso& gso, const RootRange& range,
                    SharedSearch& shared, TraverseStats& stats) {
  Traversal t(gso, shared, stats);
  t.run(range);
}

IntVector lift_vector(const Basis& b, const std::vector<long long>& coeffs) {
  const int n = b.ambient_dim();
  IntVector v(n, Int(0));
  for (int i = 0; i < b.dim(); ++i) {
    if (coeffs[i] == 0) continue;
    const Int c(static_cast<long>(coeffs[i]));
    for (int k = 0; k < n; ++k)
      mpz_addmul(v[k].get_mpz_t(), c.get_mpz_t(), b.rows[i][k].get_mpz_t());
  }
  return v;
}

Int lift_norm_sq(const Basis& b, const std::vector<long long>& coeffs) {
  return norm_sq(lift_vector(b, coeffs));
}

std::optional<EnumResult> finalize_exact(const Basis& b, double initial_a_sq,
                                         const EnumMode& mode,
                                         SharedSearch& shared,
                                         EnumStats stats) {
  if (mode.is_first_below()) {
    if (shared.chosen < 0) return std::nullopt;
    const Candidate& c = shared.candidates[shared.chosen];
    EnumResult res{c.coeffs, lift_norm_sq(b, c.coeffs), stats};
    return res;
  }
  const double limit = initial_a_sq * kExactFilterSlack;
  const Candidate* best = nullptr;
  Int best_norm;
  for (const Candidate& c : shared.candidates) {
    Int n = lift_norm_sq(b, c.coeffs);
    if (mpz_cmp_d(n.get_mpz_t(), limit) > 0) continue;
    if (best == nullptr || n < best_norm) {
      best = &c;
      best_norm = n;
    }
  }
  if (best == nullptr) return std::nullopt;
  return EnumResult{best->coeffs, best_norm, stats};
}

}  // namespace detail

EnumMode EnumMode::first_below(double threshold_sq) {
  if (!(threshold_sq > 0.0))
    throw param_error("FirstBelow threshold must be positive");
  return {Kind::FirstBelow, threshold_sq};
}

double hermite_gamma_upper(int m) {
  if (m < 1) throw param_error("hermite_gamma_upper: m must be >= 1");
  static const double table[] = {
      0.0,
      1.0,
      2.0 / std::sqrt(3.0),
      std::cbrt(2.0),
      std::sqrt(2.0),
      std::pow(8.0, 1.0 / 5.0),
      std::pow(64.0 / 3.0, 1.0 / 6.0),
      std::pow(64.0, 1.0 / 7.0),
      2.0,
  };
  if (m <= 8) return table[m];
  return 1.0 + static_cast<double>(m) / 4.0;
}

EnumBound compute_bound(const GsoData& gso, const Basis& b, BoundStrategy s,
                        double explicit_value) {
  if (gso.dim() != b.dim()) throw param_error("gso/basis dimension mismatch");
  const int m = gso.dim();

  double log_det2 = 0.0;  // log of det^{2/m}
  for (double bs : gso.b_star_sq) log_det2 += std::log(bs);
  log_det2 /= static_cast<double>(m);
  const double det_2m = std::exp(log_det2);

  double a_sq = 0.0;
  switch (s) {
    case BoundStrategy::FirstVector:
      a_sq = norm_sq(b.rows.front()).get_d();
      break;
    case BoundStrategy::Hermite:
      a_sq = std::min(norm_sq(b.rows.front()).get_d(),
                      hermite_gamma_upper(m) * det_2m);
      break;
    case BoundStrategy::MDet:
      a_sq = static_cast<double>(m) * static_cast<double>(m) * det_2m;
      break;
    case BoundStrategy::Gauss105: {
      const double gamma_root =
          std::exp(std::lgamma(static_cast<double>(m) / 2.0 + 1.0) / m);
      const double radius = 1.05 * gamma_root / std::sqrt(std::numbers::pi);
      a_sq = radius * radius * det_2m;
      break;
    }
    case BoundStrategy::Explicit:
      if (!(explicit_value > 0.0))
        throw param_error("explicit bound must be positive");
      a_sq = explicit_value;
      break;
  }
  if (!(a_sq > 0.0)) throw param_error("computed bound is not positive");
  return {a_sq, s};
}

double partial_norm(const std::vector<long long>& x, int level,
                    const GsoData& gso) {
  const int m = gso.dim();
  if (static_cast<int>(x.size()) != m)
    throw param_error("partial_norm: coefficient length mismatch");
  if (level < 0 || level >= m)
    throw param_error("partial_norm: level out of range");
  double s = static_cast<double>(x[level]);
  for (int j = level + 1; j < m; ++j)
    s += static_cast<double>(x[j]) * gso.mu[j][level];
  return s * s * gso.b_star_sq[level];
}

long long root_branch_count(const GsoData& gso, const EnumBound& bound) {
  return 2 * detail::root_value_limit(bound.a_sq, gso.b_star_sq.back());
}

std::optional<EnumResult> enumerate_serial(const GsoData& gso, const Basis& b,
                                           const EnumBound& bound,
                                           const EnumMode& mode) {
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

  std::vector<detail::TraverseStats> stats(1);
  detail::run_workers(flat, limit, 1, shared, stats);

  EnumStats total;
  total.nodes_visited = stats[0].nodes;
  total.leaves_reached = stats[0].leaves;
  total.bound_updates = shared.bound_updates.load();
  total.root_branches = static_cast<std::uint64_t>(2 * limit);
  return detail::finalize_exact(b, bound.a_sq, mode, shared, total);
}

}  // namespace kz
