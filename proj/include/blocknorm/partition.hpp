#pragma once

#include <string>
#include <utility>
#include <vector>

#include "blocknorm/norms.hpp"
#include "blocknorm/spectral.hpp"

namespace blocknorm {

// Square matrix with a conformal block partition: sizes[i] is the dimension
// of the i-th diagonal block and block (i, j) is the sizes[i] x sizes[j]
// window at the corresponding offsets.
class PartitionedMatrix {
 public:
  PartitionedMatrix() = default;
  PartitionedMatrix(ComplexMatrix matrix, std::vector<int> sizes);

  const ComplexMatrix& matrix() const { return matrix_; }
  const std::vector<int>& sizes() const { return sizes_; }
  int block_count() const { return static_cast<int>(sizes_.size()); }
  int dim() const { return matrix_.rows(); }
  int offset(int i) const { return offsets_[i]; }
  int max_block_size() const;
  ComplexMatrix block(int i, int j) const;

 private:
  ComplexMatrix matrix_;
  std::vector<int> sizes_;
  std::vector<int> offsets_;
};

// The scalar matrix of block norms, values(i, j) = ||A_ij||, together with
// its PSD verdict.  values is real and exactly symmetric.
struct NormCompression {
  ComplexMatrix values;
  PsdVerdict verdict;
  UINorm norm_used;
};

// Pads block i to target_sizes[i] (new rows/columns of zeros at the bottom
// and right of each block slot) and reassembles.  A permutation congruence
// away from plain corner padding, so PSD inputs stay PSD.
PartitionedMatrix embed_blocks(const PartitionedMatrix& pm,
                               const std::vector<int>& target_sizes);

// Norm compression of a PSD partitioned matrix.  tol is relative: the PSD
// gates use tol * max(1, spectral radius).
NormCompression compress(const PartitionedMatrix& pm, const UINorm& norm,
                         double tol = 1e-8);

// Two diagonal blocks: the compression of a PSD matrix is PSD for every
// unitarily invariant norm, so a non-PSD verdict is a consistency failure.
NormCompression compress_m2(const PartitionedMatrix& pm, const UINorm& norm,
                            double tol = 1e-8);

// Entrywise moduli of a square matrix.
ComplexMatrix abs_entries(const ComplexMatrix& b);

// Everything the trace-norm reduction of a 3-block PSD matrix produces.
// Stage snapshots appear in pipeline order:
//   pad      padded to three n x n diagonal blocks, n = max size
//   polar12  block (1,2) replaced by its PSD polar factor
//   polar23  block (2,3) replaced by its PSD polar factor
//   diagW    conjugated so block (1,3) = PSD * unimodular diagonal
//   extractQ direct sum of the 3x3 slices Q~_r (r-th entries of each block)
//   absQ     same with |.| applied to the (1,3)/(3,1) entries: the Q_r
//   assemble the Q_r scattered back into diagonal blocks Q_ij
// The first four are unitary congruences of the padded input (plus the
// padding zeros); the last three carry the extracted spectrum.
struct ReductionTrace {
  std::vector<std::pair<std::string, PartitionedMatrix>> stages;
  ComplexMatrix u12;  // left polar unitary of block (1,2)
  ComplexMatrix u23;  // left polar unitary of block (2,3)
  ComplexMatrix x;    // w = x* diag(d) x for the (1,3) polar unitary w
  std::vector<Complex> d;
  std::vector<ComplexMatrix> q_triples;  // the PSD 3x3 slices Q_r
  PartitionedMatrix q_blocks;            // the assembled (Q_ij)
  ComplexMatrix trace_matrix;            // 3x3 real, (i,j) -> tr Q_ij = tr|A_ij|

  const PartitionedMatrix& stage(const std::string& label) const;
};

// Runs the reduction and verifies every invariant along the way: stagewise
// PSD, spectrum preservation under the congruences, PSD Q_r slices, trace
// preservation, and permutation similarity of (Q_ij) with the direct sum of
// the Q_r.  Violations throw ConsistencyError with the stage label.
ReductionTrace reduce_theorem1(const PartitionedMatrix& pm, double tol = 1e-8);

// Certified decomposition behind the sufficiency direction: for a norm with
// condition_b holding at k = min(n1+n2, n3) (sizes sorted ascending), the
// compression equals gamma * (tr|A^_ij|) + diag(0, 0, epsilon) with
// epsilon >= 0 and gamma the norm of E_11.  Returns the compression in the
// caller's block order plus epsilon (already scaled by gamma).
struct SufficiencyResult {
  NormCompression compression;
  double epsilon = 0.0;
};
SufficiencyResult sufficiency_check(const PartitionedMatrix& pm,
                                    const UINorm& norm, double tol = 1e-8);

}  // namespace blocknorm
