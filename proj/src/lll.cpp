#include "kz/lll.hpp"

#include <algorithm>
#include <utility>

#include "gso_internal.hpp"
#include "kz/gso.hpp"

namespace kz {

static void validate_delta(double delta) {
  if (!(delta > 0.25 && delta < 1.0))
    throw param_error("delta must lie in (1/4, 1)");
}

Basis lll_reduce(const Basis& b, double delta) {
  validate_delta(delta);
  Basis out = b;
  const int m = out.dim();
  compute_gso(out);  // shape + rank validation up front

  if (m == 1) return out;

  detail::Gram g = detail::gram_matrix(out);
  GsoData gso;
  detail::gso_refresh(g, gso, 0);

  long rounds = 0;
  constexpr long kMaxRounds = 20'000'000;

  int k = 1;
  while (k < m) {
    if (++rounds > kMaxRounds)
      throw run_error("lll_reduce: swap loop did not converge");
    detail::size_reduce_row(out, g, gso, k);
    const double mu = gso.mu[k][k - 1];
    if (gso.b_star_sq[k] >= (delta - mu * mu) * gso.b_star_sq[k - 1]) {
      ++k;
    } else {
      std::swap(out.rows[k - 1], out.rows[k]);
      detail::gram_swap(g, k - 1, k);
      detail::gso_refresh(g, gso, k - 1);
      k = std::max(k - 1, 1);
    }
  }
  return out;
}

}  // namespace kz
