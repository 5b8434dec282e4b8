#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "blocknorm/errors.hpp"

namespace blocknorm {

using Complex = std::complex<double>;

// Dense complex matrix, row-major.  Dimensions are small (compressions of
// modest block matrices), so everything here favors clarity over blocking.
// Entries must be finite; constructors reject NaN/Inf.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;  // 0x0 placeholder
  ComplexMatrix(int rows, int cols);
  ComplexMatrix(int rows, int cols, std::vector<Complex> entries);

  static ComplexMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  Complex& operator()(int i, int j) {
    return entries_[static_cast<std::size_t>(i) * cols_ + j];
  }
  const Complex& operator()(int i, int j) const {
    return entries_[static_cast<std::size_t>(i) * cols_ + j];
  }

  const std::vector<Complex>& entries() const { return entries_; }

  ComplexMatrix adjoint() const;
  Complex trace() const;
  double max_abs() const;  // largest entrywise modulus
  double frobenius_norm() const;

  // Throws ParameterError if any entry is NaN or infinite.
  void check_finite(const char* context) const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Complex> entries_;
};

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex scalar, const ComplexMatrix& a);
ComplexMatrix operator*(double scalar, const ComplexMatrix& a);

// (a + a*)/2.  Requires a square.
ComplexMatrix hermitian_part(const ComplexMatrix& a);

// max |a - a*| over entries; 0 exactly iff a is Hermitian bit-for-bit.
double hermitian_defect(const ComplexMatrix& a);

// Copy of the rows x cols window of `a` starting at (row0, col0).
ComplexMatrix submatrix(const ComplexMatrix& a, int row0, int col0, int rows,
                        int cols);

// Embed x into the top-left corner of a rows x cols zero matrix.
ComplexMatrix zero_pad(const ComplexMatrix& x, int rows, int cols);

// Block-diagonal matrix with the given diagonal blocks.
ComplexMatrix direct_sum(const std::vector<ComplexMatrix>& blocks);

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace blocknorm
