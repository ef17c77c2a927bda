#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "kz/basis.hpp"
#include "oracles.hpp"

using kz::Basis;
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

TEST_CASE("parse_basis: identity and direct transcription") {
  const Basis id = kz::parse_basis("[[1 0][0 1]]");
  CHECK(id == make({{1, 0}, {0, 1}}));

  const Basis b = kz::parse_basis("[[2 0][1 2]]");
  CHECK(b == make({{2, 0}, {1, 2}}));
}

TEST_CASE("parse_basis: interior newlines and big entries") {
  const Basis b = kz::parse_basis("[[100000000000000000000 1]\n[  -3  4 ]]");
  CHECK(b.rows[0][0] == Int("100000000000000000000"));
  CHECK(b.rows[1][0] == -3);
}

TEST_CASE("parse_basis: malformed inputs") {
  CHECK_THROWS_AS(kz::parse_basis("[[1 0][0]]"), kz::parse_error);  // ragged
  CHECK_THROWS_AS(kz::parse_basis("[[1 0][0 1]"), kz::parse_error);
  CHECK_THROWS_AS(kz::parse_basis("[[1 x][0 1]]"), kz::parse_error);
  CHECK_THROWS_AS(kz::parse_basis("[]"), kz::parse_error);  // m = 0
  CHECK_THROWS_AS(kz::parse_basis(""), kz::parse_error);
  CHECK_THROWS_AS(kz::parse_basis("[[1 0][0 1]] junk"), kz::parse_error);
  CHECK_THROWS_AS(kz::parse_basis("[[1][2][3]]"), kz::parse_error);  // m > n

  try {
    kz::parse_basis("[[1 0]\n[0 zz]]");
    CHECK(false);
  } catch (const kz::parse_error& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() > 1);
  }
}

TEST_CASE("serialize_basis: canonical form and round trip") {
  CHECK(kz::serialize_basis(make({{1, 0}, {0, 1}})) == "[[1 0]\n[0 1]]");
  CHECK(kz::serialize_basis(make({{-3}})) == "[[-3]]");

  // parse . serialize is identity on canonical text
  const std::string canon = "[[4 1]\n[1 1]]";
  CHECK(kz::serialize_basis(kz::parse_basis(canon)) == canon);

  // serialize . parse is identity on values, whitespace normalized away
  const Basis b = kz::parse_basis("[[ 4   1 ] [1\n1]]");
  CHECK(kz::serialize_basis(b) == canon);
}

TEST_CASE("round trip: random generated bases survive byte-identically") {
  std::mt19937_64 rng(20240901);
  for (int iter = 0; iter < 200; ++iter) {
    const int dim = 2 + static_cast<int>(rng() % 8);
    const int bits = 2 + static_cast<int>(rng() % 30);
    const Basis b = kz::generate_lattice(dim, bits, rng());
    const std::string once = kz::serialize_basis(b);
    const std::string twice = kz::serialize_basis(kz::parse_basis(once));
    CHECK(once == twice);
  }
}

TEST_CASE("norm_sq: exactness") {
  CHECK(kz::norm_sq({Int(0), Int(0), Int(0)}) == 0);
  CHECK(kz::norm_sq({Int(1), Int(-2)}) == 5);

  Int big = 1;
  for (int i = 0; i < 20; ++i) big *= 10;
  IntVector v{big, Int(1)};
  const Int expect = big * big + 1;
  CHECK(kz::norm_sq(v) == expect);  // 10^40 + 1, beyond double precision
}

TEST_CASE("det_root: identity, hand values, Gram cross-check") {
  Basis id5;
  id5.rows.assign(5, IntVector(5, Int(0)));
  for (int i = 0; i < 5; ++i) id5.rows[i][i] = 1;
  CHECK(kz::det_root(id5) == doctest::Approx(1.0).epsilon(1e-12));

  CHECK(kz::det_root(make({{2, 0}, {1, 2}})) ==
        doctest::Approx(2.0).epsilon(1e-9));
  CHECK(kz::det_root(make({{4, 1}, {1, 1}})) ==
        doctest::Approx(std::sqrt(3.0)).epsilon(1e-9));

  // det_root(B)^(2m) == det(Gram(B)) on random instances
  std::mt19937_64 rng(7);
  for (int iter = 0; iter < 40; ++iter) {
    const int m = 2 + static_cast<int>(rng() % 4);
    const Basis b = oracle::random_basis(rng, m, m, -9, 9);
    const double lhs = std::pow(kz::det_root(b), 2.0 * m);
    const double rhs = std::abs(oracle::gram_det(b).get_d());
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
  }
}

TEST_CASE("det_root: degenerate basis rejected") {
  CHECK_THROWS_AS(kz::det_root(make({{1, 2}, {2, 4}})), kz::rank_error);
}

TEST_CASE("generate_lattice: determinism, shape, determinant") {
  const Basis a = kz::generate_lattice(3, 4, 99);
  const Basis b = kz::generate_lattice(3, 4, 99);
  CHECK(a == b);
  CHECK(a != kz::generate_lattice(3, 4, 100));

  // 2-bit odd p is forced to 3
  const Basis tiny = kz::generate_lattice(2, 2, 5);
  CHECK(tiny.rows[0][0] == 3);

  std::mt19937_64 rng(11);
  for (int iter = 0; iter < 30; ++iter) {
    const int dim = 2 + static_cast<int>(rng() % 6);
    const int bits = 2 + static_cast<int>(rng() % 28);
    const Basis g = kz::generate_lattice(dim, bits, rng());
    const Int p = g.rows[0][0];
    CHECK(p % 2 == 1);
    CHECK(mpz_sizeinbase(p.get_mpz_t(), 2) == static_cast<std::size_t>(bits));
    // triangular structure makes det = p; cross-check det(Gram) = p^2
    CHECK(oracle::gram_det(g) == p * p);
    for (int i = 1; i < dim; ++i) {
      CHECK(g.rows[i][0] >= 0);
      CHECK(g.rows[i][0] < p);
      CHECK(g.rows[i][i] == 1);
    }
  }
}

TEST_CASE("generate_lattice: parameter validation") {
  CHECK_THROWS_AS(kz::generate_lattice(1, 8, 0), kz::param_error);
  CHECK_THROWS_AS(kz::generate_lattice(4, 1, 0), kz::param_error);
}
