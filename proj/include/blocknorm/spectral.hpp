#pragma once

#include <vector>

#include "blocknorm/matrix.hpp"

namespace blocknorm {

// Eigendecomposition of a Hermitian matrix: a = vectors diag(values) vectors*.
// Eigenvalues are sorted in descending order; vectors is unitary with the
// eigenvector for values[j] in column j.
struct HermitianEigen {
  std::vector<double> values;
  ComplexMatrix vectors;
};

// Symmetrizes the input, then runs cyclic complex Jacobi rotations until the
// off-diagonal mass is negligible.  Throws NotHermitianError when the
// anti-Hermitian part exceeds tol * max(1, spectral radius).
HermitianEigen eig_hermitian(const ComplexMatrix& a, double tol = 1e-8);

// Full SVD x = u diag(sigma) v*, u and v unitary, sigma descending with
// min(rows, cols) entries.  One-sided Jacobi on columns: backward stable and
// accurate for the tiny singular values the rank checks care about.
struct Svd {
  ComplexMatrix u;
  std::vector<double> sigma;
  ComplexMatrix v;
};
Svd svd(const ComplexMatrix& x);

// Singular values only (descending), skipping the accumulation work.
std::vector<double> singular_values(const ComplexMatrix& x);

// Largest singular value.
double operator_norm(const ComplexMatrix& x);

// |x| = (x* x)^{1/2}, a PSD matrix of shape cols x cols.
ComplexMatrix abs_matrix(const ComplexMatrix& x);

// Polar decomposition of a square matrix: left is x = p u, right is x = u p,
// with p PSD and u unitary (the same unitary on both sides).
enum class PolarSide { kLeft, kRight };
struct PolarFactors {
  ComplexMatrix p;
  ComplexMatrix u;
  PolarSide side;
};
PolarFactors polar(const ComplexMatrix& x, PolarSide side);

// Unitary diagonalization w = x* diag(d) x with |d_j| = 1 and x unitary.
// Eigenvectors come from the Hermitian part of w; eigenvalue clusters of the
// Hermitian part are refined against the anti-Hermitian part so that nearly
// degenerate real parts still produce a clean simultaneous diagonalization.
struct UnitaryDiagonalization {
  ComplexMatrix x;
  std::vector<Complex> d;
};
UnitaryDiagonalization diagonalize_unitary(const ComplexMatrix& w);

// PSD verdict with the evidence that produced it.  is_psd means the minimum
// eigenvalue of the Hermitian part clears -tolerance_used and the
// anti-Hermitian defect stays below tolerance_used.
struct PsdVerdict {
  bool is_psd = false;
  double min_eigenvalue = 0.0;
  double hermitian_defect = 0.0;
  double tolerance_used = 0.0;
};

// Absolute tolerance; pass a negative value (the default) to use
// 1e-8 * max(1, spectral radius of the Hermitian part).
PsdVerdict is_psd(const ComplexMatrix& a, double tol = -1.0);

// Same, but the tolerance scales with the matrix: rel_tol * max(1, radius).
PsdVerdict is_psd_scaled(const ComplexMatrix& a, double rel_tol);

}  // namespace blocknorm
