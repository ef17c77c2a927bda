#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "kz/gso.hpp"
#include "oracles.hpp"

using kz::Basis;
using kz::GsoData;
using kz::Int;
using kz::IntVector;

static Basis make(std::initializer_list<std::initializer_list<long>> rows) {
  Basis b;
  for (const auto& r : rows) {
    IntVector row;
    for (long v : r) row.emplace_back(v);
    b.rows.push_back(std::move(row));
  }
  return b;
}

TEST_CASE("compute_gso: identity") {
  Basis id;
  id.rows.assign(3, IntVector(3, Int(0)));
  for (int i = 0; i < 3; ++i) id.rows[i][i] = 1;
  const GsoData g = kz::compute_gso(id);
  for (int i = 0; i < 3; ++i) {
    CHECK(g.b_star_sq[i] == doctest::Approx(1.0));
    for (int j = 0; j < i; ++j) CHECK(g.mu[i][j] == doctest::Approx(0.0));
    CHECK(g.mu[i][i] == 1.0);
  }
}

TEST_CASE("compute_gso: hand oracle values") {
  const GsoData a = kz::compute_gso(make({{1, 0}, {1, 2}}));
  CHECK(a.mu[1][0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(a.b_star_sq[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(a.b_star_sq[1] == doctest::Approx(4.0).epsilon(1e-12));

  const GsoData b = kz::compute_gso(make({{4, 1}, {1, 1}}));
  CHECK(b.mu[1][0] == doctest::Approx(5.0 / 17.0).epsilon(1e-12));
  CHECK(b.b_star_sq[0] == doctest::Approx(17.0).epsilon(1e-12));
  CHECK(b.b_star_sq[1] == doctest::Approx(9.0 / 17.0).epsilon(1e-12));
}

TEST_CASE("compute_gso: matches exact rational oracle on random bases") {
  std::mt19937_64 rng(31337);
  for (int iter = 0; iter < 60; ++iter) {
    const int m = 2 + static_cast<int>(rng() % 5);
    const Basis b = oracle::random_basis(rng, m, m, -30, 30);
    const GsoData g = kz::compute_gso(b);
    const oracle::RationalGso ref = oracle::rational_gso(b);
    for (int i = 0; i < m; ++i) {
      CHECK(g.b_star_sq[i] ==
            doctest::Approx(ref.b_sq[i].get_d()).epsilon(1e-9));
      for (int j = 0; j < i; ++j)
        CHECK(g.mu[i][j] ==
              doctest::Approx(ref.mu[i][j].get_d()).epsilon(1e-9).scale(1.0));
    }
  }
}

TEST_CASE("compute_gso: product of b_star_sq equals Gram determinant") {
  std::mt19937_64 rng(5);
  for (int iter = 0; iter < 30; ++iter) {
    const int m = 2 + static_cast<int>(rng() % 4);
    const Basis b = oracle::random_basis(rng, m, m, -20, 20);
    const GsoData g = kz::compute_gso(b);
    double prod = 1.0;
    for (double v : g.b_star_sq) prod *= v;
    CHECK(prod ==
          doctest::Approx(std::abs(oracle::gram_det(b).get_d())).epsilon(1e-6));
  }
}

TEST_CASE("compute_gso: rank deficiency raises") {
  CHECK_THROWS_AS(kz::compute_gso(make({{1, 2}, {2, 4}})), kz::rank_error);
  CHECK_THROWS_AS(kz::compute_gso(make({{3, 1}, {3, 1}})), kz::rank_error);
}

TEST_CASE("size_reduce: spec examples") {
  // already size-reduced input comes back unchanged
  const Basis id = make({{1, 0}, {0, 1}});
  CHECK(kz::size_reduce(id).basis == id);

  // mu_21 = 1 is reduced away exactly
  const auto r = kz::size_reduce(make({{1, 0}, {1, 2}}));
  CHECK(r.basis == make({{1, 0}, {0, 2}}));
  CHECK(r.gso.mu[1][0] == doctest::Approx(0.0));

  // coefficient round(3/2) = 2 here: mu_21 = 6/4 = 3/2
  const auto s = kz::size_reduce(make({{2, 0}, {3, 1}}));
  const kz::GsoData check = kz::compute_gso(s.basis);
  CHECK(std::abs(check.mu[1][0]) <= 0.5 + 1e-9);
}

TEST_CASE("size_reduce: properties on random bases") {
  std::mt19937_64 rng(4242);
  for (int iter = 0; iter < 50; ++iter) {
    const int m = 2 + static_cast<int>(rng() % 5);
    const Basis b = oracle::random_basis(rng, m, m, -25, 25);
    const auto red = kz::size_reduce(b);
    const GsoData before = kz::compute_gso(b);
    const GsoData after = kz::compute_gso(red.basis);

    for (int i = 0; i < m; ++i) {
      // |mu| <= 1/2 + eps on a fresh recomputation
      for (int j = 0; j < i; ++j)
        CHECK(std::abs(after.mu[i][j]) <= 0.5 + 1e-9);
      // b_star_sq invariant under size reduction
      CHECK(after.b_star_sq[i] ==
            doctest::Approx(before.b_star_sq[i]).epsilon(1e-9));
    }

    // equal lattice: every output row in L(input) and vice versa
    for (const IntVector& row : red.basis.rows)
      CHECK(oracle::in_lattice(b, row));
    for (const IntVector& row : b.rows)
      CHECK(oracle::in_lattice(red.basis, row));

    // idempotence
    CHECK(kz::size_reduce(red.basis).basis == red.basis);
  }
}

TEST_CASE("gso reconstruction identity within tolerance") {
  std::mt19937_64 rng(99);
  for (int iter = 0; iter < 20; ++iter) {
    const int m = 2 + static_cast<int>(rng() % 4);
    const Basis b = oracle::random_basis(rng, m, m, -15, 15);
    const GsoData g = kz::compute_gso(b);
    // rebuild b*_i vectors in floating point and check b_i = sum mu_ij b*_j
    std::vector<std::vector<double>> star(m, std::vector<double>(m, 0.0));
    for (int i = 0; i < m; ++i) {
      for (int k = 0; k < m; ++k) star[i][k] = b.rows[i][k].get_d();
      for (int j = 0; j < i; ++j)
        for (int k = 0; k < m; ++k) star[i][k] -= g.mu[i][j] * star[j][k];
    }
    for (int i = 0; i < m; ++i) {
      double scale = 0.0;
      for (int k = 0; k < m; ++k) scale += star[i][k] * star[i][k];
      for (int k = 0; k < m; ++k) {
        double rebuilt = 0.0;
        for (int j = 0; j <= i; ++j) rebuilt += g.mu[i][j] * star[j][k];
        CHECK(rebuilt == doctest::Approx(b.rows[i][k].get_d())
                             .epsilon(1e-9)
                             .scale(std::sqrt(scale)));
      }
    }
  }
}
