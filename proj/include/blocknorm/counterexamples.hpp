#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "blocknorm/partition.hpp"

namespace blocknorm {

// A certified failure of block-compression positivity: pm is PSD, the
// compression is not, and every generator re-checks both before returning.
struct CounterexampleReport {
  PartitionedMatrix pm;
  UINorm norm;
  NormCompression compression;
  double witness = 0.0;  // negative determinant or minimum eigenvalue
  std::map<std::string, double> construction_params;
};

// Determinant of a 3x3 Hermitian matrix by cofactor expansion (real by
// symmetry; the real part is returned).
double det3(const ComplexMatrix& m);

// The 4x4 matrix (I_2 I_2; I_2 I_2) split as blocks of sizes (1,1,2): its
// Schatten-p compression [[1,0,1],[0,1,1],[1,1,2^(1/p)]] has determinant
// 2^(1/p) - 2 < 0 for every p > 1.
CounterexampleReport schatten_example(double p);

// For a norm failing condition (b) at k = min(n1+n2, n): an explicit PSD
// matrix with sizes (n1, n2, n) whose compression has negative determinant
// n~1 * n~2 * (delta - 1).  The construction runs on the normalized norm.
CounterexampleReport thm2_necessity(const UINorm& norm, int n1, int n2, int n);

// Randomized search for a real 4x4 PSD matrix whose entrywise absolute value
// is not PSD (rank-3 Gram matrices of standard normals).  Deterministic per
// seed; picks the lowest trial index that certifies.
ComplexMatrix thompson_search(long trials, std::uint64_t seed);

// Lifts a scalar seed matrix b (PSD, abs_entries(b) not PSD, at least 4x4)
// to blocks b_ij * E_11 of size block_dim: the compression under any
// unitarily invariant norm is gamma * abs_entries(b) with gamma = ||E_11||.
CounterexampleReport m4_block_lift(const ComplexMatrix& b, int block_dim,
                                   const UINorm& norm);

}  // namespace blocknorm
