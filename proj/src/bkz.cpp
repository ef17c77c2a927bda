#include "kz/bkz.hpp"

#include <algorithm>
#include <cmath>

#include "gso_internal.hpp"
#include "kz/enumeration.hpp"
#include "kz/lll.hpp"
#include "kz/parallel.hpp"

namespace kz {

// Strict-improvement margin: a block vector must beat ||b*_i||^2 by more
// than floating noise before it is inserted.
static constexpr double kImproveTol = 1e-9;

static void validate_params(const BkzParams& p) {
  if (p.beta < 2) throw param_error("beta must be >= 2");
  if (!(p.delta > 0.25 && p.delta < 1.0))
    throw param_error("delta must lie in (1/4, 1)");
  if (p.workers < 1) throw param_error("workers must be >= 1");
  if (p.max_tours < 0) throw param_error("max_tours must be >= 0");
}

GsoData project_block(const GsoData& gso, int start, int beta) {
  const int m = gso.dim();
  if (start < 0 || start >= m)
    throw param_error("project_block: index out of range");
  if (beta < 1) throw param_error("project_block: beta must be >= 1");
  const int end = std::min(start + beta, m);  // exclusive
  const int d = end - start;

  GsoData out;
  out.mu.assign(d, std::vector<double>(d, 0.0));
  out.b_star_sq.assign(d, 0.0);
  for (int r = 0; r < d; ++r) {
    out.mu[r][r] = 1.0;
    for (int c = 0; c < r; ++c) out.mu[r][c] = gso.mu[start + r][start + c];
    out.b_star_sq[r] = gso.b_star_sq[start + r];
  }
  return out;
}

// Sum of coeffs[t] * rows[start + t], exact.
static IntVector lift_block_vector(const Basis& b, int start,
                                   const std::vector<long long>& coeffs) {
  const int n = b.ambient_dim();
  IntVector v(n, Int(0));
  for (std::size_t t = 0; t < coeffs.size(); ++t) {
    if (coeffs[t] == 0) continue;
    const Int c(static_cast<long>(coeffs[t]));
    for (int k = 0; k < n; ++k)
      mpz_addmul(v[k].get_mpz_t(), c.get_mpz_t(),
                 b.rows[start + t][k].get_mpz_t());
  }
  return v;
}

Basis bkz_reduce(const Basis& b, const BkzParams& params) {
  validate_params(params);
  Basis basis = lll_reduce(b, params.delta);
  const int m = basis.dim();
  if (m < 2) return basis;

  long tour = 0;
  while (true) {
    ++tour;
    bool clean = true;
    for (int i = 0; i + 1 < m; ++i) {
      const GsoData gso = compute_gso(basis);
      const GsoData block = project_block(gso, i, params.beta);
      if (block.dim() < 2) continue;

      const EnumBound bound{block.b_star_sq.front(),
                            BoundStrategy::FirstVector};
      const auto found = enumerate_projected(block, bound,
                                             EnumMode::shortest(),
                                             params.workers);
      if (!found) continue;
      if (!(found->norm_sq <
            block.b_star_sq.front() * (1.0 - kImproveTol)))
        continue;

      // Insert the lifted vector at position i and rebuild a basis; the one
      // linear dependency cancels inside the dependent LLL.
      IntVector v = lift_block_vector(basis, i, found->coeffs);
      const int end = std::min(i + params.beta, m);  // exclusive
      std::vector<IntVector> prefix;
      prefix.reserve(end + 1);
      for (int r = 0; r < i; ++r) prefix.push_back(basis.rows[r]);
      prefix.push_back(std::move(v));
      for (int r = i; r < end; ++r) prefix.push_back(basis.rows[r]);

      const Basis rebuilt = lll_reduce_dependent(prefix, params.delta);
      std::vector<IntVector> rows = rebuilt.rows;
      for (int r = end; r < m; ++r) rows.push_back(basis.rows[r]);
      basis.rows = std::move(rows);
      clean = false;
    }
    if (clean) break;
    if (params.max_tours > 0 && tour >= params.max_tours) break;
  }
  return size_reduce(basis).basis;
}

BkzVerifyReport verify_bkz(const Basis& b, int beta) {
  if (beta < 2) throw param_error("beta must be >= 2");
  const GsoData gso = compute_gso(b);
  const int m = gso.dim();

  BkzVerifyReport report;
  report.size_reduced = true;
  for (int i = 1; i < m; ++i)
    for (int j = 0; j < i; ++j)
      if (std::abs(gso.mu[i][j]) > 0.5 + detail::kSizeReduceEps)
        report.size_reduced = false;

  report.b_star_sq = gso.b_star_sq;
  report.block_shortest.assign(m, true);
  report.block_min_sq.assign(m, 0.0);
  for (int i = 0; i < m; ++i) {
    const GsoData block = project_block(gso, i, beta);
    if (block.dim() < 2) {
      report.block_min_sq[i] = gso.b_star_sq[i];
      continue;
    }
    const EnumBound bound{block.b_star_sq.front(),
                          BoundStrategy::FirstVector};
    const auto found =
        enumerate_projected(block, bound, EnumMode::shortest(), 1);
    const double min_sq = found ? found->norm_sq : block.b_star_sq.front();
    report.block_min_sq[i] = min_sq;
    report.block_shortest[i] = gso.b_star_sq[i] <= min_sq * (1.0 + 1e-9);
  }

  report.pass = report.size_reduced;
  for (bool ok : report.block_shortest) report.pass = report.pass && ok;
  return report;
}

}  // namespace kz
