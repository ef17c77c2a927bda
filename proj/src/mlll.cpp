// LLL on possibly dependent integer vectors, in exact rational arithmetic.
// A vector lying in the span of its predecessors is driven to the exact zero
// vector by the reduce/swap loop (a Euclidean cascade on the dependent
// coefficient) and removed when it appears.

#include <algorithm>
#include <utility>
#include <vector>

#include "kz/basis.hpp"
#include "kz/lll.hpp"

namespace kz {

namespace {

using Rat = mpq_class;

bool is_zero_vector(const IntVector& v) {
  for (const Int& x : v)
    if (x != 0) return false;
  return true;
}

Int round_nearest(const Rat& x) {
  // floor(x + 1/2)
  Rat t = x + Rat(1, 2);
  t.canonicalize();
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), t.get_num().get_mpz_t(), t.get_den().get_mpz_t());
  return q;
}

// Exact Gram-Schmidt data over the current vector list, recomputed lazily:
// rows [0, valid) are up to date.
struct RationalGso {
  std::vector<std::vector<Rat>> b_star;
  std::vector<std::vector<Rat>> mu;  // mu[i] has i entries
  std::vector<Rat> b_sq;
  std::size_t valid = 0;

  void invalidate(std::size_t from) { valid = std::min(valid, from); }

  void remove_row(std::size_t i) {
    b_star.erase(b_star.begin() + i);
    mu.erase(mu.begin() + i);
    b_sq.erase(b_sq.begin() + i);
    invalidate(i);
  }

  void ensure(const std::vector<IntVector>& w, std::size_t upto) {
    const std::size_t n = w.front().size();
    if (b_star.size() < w.size()) {
      b_star.resize(w.size());
      mu.resize(w.size());
      b_sq.resize(w.size());
    }
    for (std::size_t i = valid; i <= upto; ++i) {
      b_star[i].assign(n, Rat(0));
      for (std::size_t k = 0; k < n; ++k) b_star[i][k] = w[i][k];
      mu[i].assign(i, Rat(0));
      for (std::size_t j = 0; j < i; ++j) {
        if (b_sq[j] == 0) continue;  // spanned slot, coefficient stays 0
        Rat s(0);
        for (std::size_t k = 0; k < n; ++k) s += b_star[j][k] * w[i][k];
        mu[i][j] = s / b_sq[j];
        for (std::size_t k = 0; k < n; ++k)
          b_star[i][k] -= mu[i][j] * b_star[j][k];
      }
      Rat nsq(0);
      for (std::size_t k = 0; k < n; ++k) nsq += b_star[i][k] * b_star[i][k];
      b_sq[i] = nsq;
    }
    valid = std::max(valid, upto + 1);
  }
};

}  // namespace

Basis lll_reduce_dependent(const std::vector<IntVector>& vectors,
                           double delta) {
  if (!(delta > 0.25 && delta < 1.0))
    throw param_error("delta must lie in (1/4, 1)");

  std::vector<IntVector> w;
  for (const IntVector& v : vectors)
    if (!is_zero_vector(v)) w.push_back(v);
  if (w.empty()) throw rank_error("no nonzero vectors in input");
  const std::size_t n = w.front().size();
  for (const IntVector& v : w)
    if (v.size() != n) throw param_error("vectors have unequal lengths");

  const std::size_t nonzero_inputs = w.size();
  const Rat delta_q(delta);  // doubles are rationals, conversion is exact

  RationalGso gso;
  long rounds = 0;
  constexpr long kMaxRounds = 20'000'000;

  std::size_t k = 1;
  while (k < w.size()) {
    if (++rounds > kMaxRounds)
      throw run_error("lll_reduce_dependent: did not converge");
    gso.ensure(w, k);
    for (std::size_t jj = k; jj-- > 0;) {
      const Int q = round_nearest(gso.mu[k][jj]);
      if (q != 0) {
        for (std::size_t t = 0; t < n; ++t)
          mpz_submul(w[k][t].get_mpz_t(), q.get_mpz_t(), w[jj][t].get_mpz_t());
        gso.invalidate(k);
        gso.ensure(w, k);
      }
    }
    if (is_zero_vector(w[k])) {
      w.erase(w.begin() + k);
      gso.remove_row(k);
      continue;  // successor slides into position k
    }
    const Rat& mu1 = gso.mu[k][k - 1];
    if (gso.b_sq[k] >= (delta_q - mu1 * mu1) * gso.b_sq[k - 1]) {
      ++k;
    } else {
      std::swap(w[k - 1], w[k]);
      gso.invalidate(k - 1);
      k = (k > 1) ? k - 1 : 1;
    }
  }

  if (w.size() + 1 < nonzero_inputs)
    throw rank_error("input spans fewer dimensions than expected");
  return Basis{std::move(w)};
}

}  // namespace kz
