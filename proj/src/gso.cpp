#include "kz/gso.hpp"

#include <cmath>
#include <sstream>

#include "gso_internal.hpp"

namespace kz {

namespace detail {

Gram gram_matrix(const Basis& b) {
  const int m = b.dim();
  Gram g(m, std::vector<Int>(m));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j <= i; ++j) {
      g[i][j] = dot(b.rows[i], b.rows[j]);
      if (j != i) g[j][i] = g[i][j];
    }
  }
  return g;
}

void gram_row_sub(Gram& g, int k, int j, const Int& q) {
  const int m = static_cast<int>(g.size());
  for (int t = 0; t < m; ++t)
    mpz_submul(g[k][t].get_mpz_t(), q.get_mpz_t(), g[j][t].get_mpz_t());
  // Column pass; at t == k this picks up the already-updated g[k][j], which
  // yields the correct quadratic term for the diagonal entry.
  for (int t = 0; t < m; ++t)
    mpz_submul(g[t][k].get_mpz_t(), q.get_mpz_t(), g[t][j].get_mpz_t());
}

void gram_swap(Gram& g, int a, int b) {
  const int m = static_cast<int>(g.size());
  for (int t = 0; t < m; ++t) mpz_swap(g[a][t].get_mpz_t(), g[b][t].get_mpz_t());
  for (int t = 0; t < m; ++t) mpz_swap(g[t][a].get_mpz_t(), g[t][b].get_mpz_t());
}

void gso_refresh(const Gram& g, GsoData& gso, int from) {
  // The recurrence runs in extended precision over exact integer inner
  // products; only the published mu / b_star_sq values are doubles. This
  // keeps the cancellation in b*_i = G_ii - sum mu^2 B manageable when raw
  // entries are large.
  const int m = static_cast<int>(g.size());
  gso.mu.resize(m);
  gso.b_star_sq.resize(m);
  static thread_local std::vector<std::vector<long double>> mu_l;
  static thread_local std::vector<long double> b_l;
  mu_l.resize(m);
  b_l.resize(m);
  for (int i = 0; i < from; ++i) {
    mu_l[i].assign(gso.mu[i].begin(), gso.mu[i].end());
    b_l[i] = gso.b_star_sq[i];
  }
  for (int i = from; i < m; ++i) {
    mu_l[i].assign(m, 0.0L);
    mu_l[i][i] = 1.0L;
    long double bi = g[i][i].get_d();
    for (int j = 0; j < i; ++j) {
      long double s = g[i][j].get_d();
      for (int t = 0; t < j; ++t) s -= mu_l[j][t] * mu_l[i][t] * b_l[t];
      const long double mij = s / b_l[j];
      mu_l[i][j] = mij;
      bi -= mij * s;
    }
    if (!(bi > kRankTol)) {
      std::ostringstream os;
      os << "rank deficiency: ||b*_" << (i + 1) << "||^2 = "
         << static_cast<double>(bi);
      throw rank_error(os.str());
    }
    b_l[i] = bi;
    gso.mu[i].assign(mu_l[i].begin(), mu_l[i].end());
    gso.b_star_sq[i] = static_cast<double>(bi);
  }
}

void row_submul(IntVector& target, const IntVector& source, const Int& q) {
  for (std::size_t k = 0; k < target.size(); ++k)
    mpz_submul(target[k].get_mpz_t(), q.get_mpz_t(), source[k].get_mpz_t());
}

Int round_to_int(double x) {
  Int r;
  mpz_set_d(r.get_mpz_t(), std::round(x));
  return r;
}

bool size_reduce_row(Basis& basis, Gram& g, GsoData& gso, int i) {
  bool any = false;
  // A single descending pass suffices when mu values are exactly
  // representable; repeat with a refresh to absorb rounding on large inputs.
  for (int pass = 0; pass < 64; ++pass) {
    bool changed = false;
    for (int j = i - 1; j >= 0; --j) {
      const double mij = gso.mu[i][j];
      if (std::abs(mij) <= 0.5 + kSizeReduceEps) continue;
      const Int q = round_to_int(mij);
      row_submul(basis.rows[i], basis.rows[j], q);
      gram_row_sub(g, i, j, q);
      const double qd = q.get_d();
      for (int t = 0; t < j; ++t) gso.mu[i][t] -= qd * gso.mu[j][t];
      gso.mu[i][j] -= qd;
      changed = true;
    }
    if (!changed) break;
    any = true;
    gso_refresh(g, gso, i);
  }
  return any;
}

}  // namespace detail

static void validate_basis_shape(const Basis& b) {
  if (b.dim() < 1) throw param_error("basis must contain at least one row");
  const std::size_t n = b.rows.front().size();
  if (n == 0) throw param_error("basis rows must be nonempty");
  for (const IntVector& row : b.rows)
    if (row.size() != n) throw param_error("basis rows have unequal lengths");
  if (b.dim() > static_cast<int>(n))
    throw param_error("basis has more rows than columns");
}

GsoData compute_gso(const Basis& b) {
  validate_basis_shape(b);
  const detail::Gram g = detail::gram_matrix(b);
  GsoData gso;
  detail::gso_refresh(g, gso, 0);
  return gso;
}

SizeReduced size_reduce(const Basis& b) {
  validate_basis_shape(b);
  Basis out = b;
  detail::Gram g = detail::gram_matrix(out);
  GsoData gso;
  detail::gso_refresh(g, gso, 0);
  for (int i = 1; i < out.dim(); ++i)
    detail::size_reduce_row(out, g, gso, i);
  return {std::move(out), std::move(gso)};
}

}  // namespace kz
