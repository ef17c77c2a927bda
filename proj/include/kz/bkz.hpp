#pragma once

#include <vector>

#include "kz/basis.hpp"
#include "kz/gso.hpp"

namespace kz {

struct BkzParams {
  int beta = 2;           // block size, >= 2
  double delta = 0.99;    // LLL parameter, 1/4 < delta < 1
  int workers = 1;        // parallel workers inside each block enumeration
  long max_tours = 0;     // 0 = unbounded
};

// GSO of the lattice spanned by b_{start}, ..., b_{min(start+beta-1, m-1)}
// projected orthogonally to b_0, ..., b_{start-1}: the corresponding
// sub-block of mu (re-indexed, unit diagonal preserved) and slice of
// b_star_sq. `start` is 0-based.
GsoData project_block(const GsoData& gso, int start, int beta);

// Block Korkin-Zolotarev reduction. Tours over i = 0..m-2: enumerate the
// shortest vector of the projected block starting at i with initial bound
// ||b*_i||^2; when a strictly shorter block vector exists, lift its
// coefficients to a lattice vector, insert it at position i and restore a
// basis with the dependent-LLL subroutine. Terminates on a tour with no
// insertion or after max_tours. Output is size-reduced.
Basis bkz_reduce(const Basis& b, const BkzParams& params);

struct BkzVerifyReport {
  bool size_reduced = false;
  std::vector<bool> block_shortest;   // per index i: ||b*_i||^2 <= block SVP
  std::vector<double> b_star_sq;      // measured ||b*_i||^2
  std::vector<double> block_min_sq;   // serial block enumeration minima
  bool pass = false;
};

// Checks both reduction conditions: size reduction, and per index i that
// ||b*_i||^2 matches the block shortest vector within relative 1e-9,
// computed by serial enumeration on each projected block.
BkzVerifyReport verify_bkz(const Basis& b, int beta);

}  // namespace kz
