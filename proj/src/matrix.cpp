#include "blocknorm/matrix.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace blocknorm {

namespace {

void require_positive_dims(int rows, int cols) {
  if (rows <= 0 || cols <= 0) {
    throw DimensionError("matrix dimensions must be positive, got " +
                         std::to_string(rows) + "x" + std::to_string(cols));
  }
}

}  // namespace

ComplexMatrix::ComplexMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
  require_positive_dims(rows, cols);
  entries_.assign(static_cast<std::size_t>(rows) * cols, Complex(0.0, 0.0));
}

ComplexMatrix::ComplexMatrix(int rows, int cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  require_positive_dims(rows, cols);
  if (entries_.size() != static_cast<std::size_t>(rows) * cols) {
    throw DimensionError("entry count " + std::to_string(entries_.size()) +
                         " does not match " + std::to_string(rows) + "x" +
                         std::to_string(cols));
  }
  check_finite("matrix construction");
}

ComplexMatrix ComplexMatrix::identity(int n) {
  ComplexMatrix eye(n, n);
  for (int i = 0; i < n; ++i) eye(i, i) = 1.0;
  return eye;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

Complex ComplexMatrix::trace() const {
  if (!square()) throw DimensionError("trace requires a square matrix");
  Complex sum = 0.0;
  for (int i = 0; i < rows_; ++i) sum += (*this)(i, i);
  return sum;
}

double ComplexMatrix::max_abs() const {
  double best = 0.0;
  for (const Complex& z : entries_) best = std::max(best, std::abs(z));
  return best;
}

double ComplexMatrix::frobenius_norm() const {
  double sum = 0.0;
  for (const Complex& z : entries_) sum += std::norm(z);
  return std::sqrt(sum);
}

void ComplexMatrix::check_finite(const char* context) const {
  for (const Complex& z : entries_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw ParameterError(std::string(context) +
                           ": matrix entries must be finite");
    }
  }
}

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b,
                        const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(op) + ": shape mismatch " +
                         std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " vs " +
                         std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()));
  }
}

}  // namespace

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "add");
  ComplexMatrix out(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) + b(i, j);
  return out;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "subtract");
  ComplexMatrix out(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) - b(i, j);
  return out;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("multiply: inner dimensions " +
                         std::to_string(a.cols()) + " and " +
                         std::to_string(b.rows()) + " differ");
  }
  ComplexMatrix out(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex(0.0, 0.0)) continue;
      for (int j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

ComplexMatrix operator*(Complex scalar, const ComplexMatrix& a) {
  ComplexMatrix out(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out(i, j) = scalar * a(i, j);
  return out;
}

ComplexMatrix operator*(double scalar, const ComplexMatrix& a) {
  return Complex(scalar, 0.0) * a;
}

ComplexMatrix hermitian_part(const ComplexMatrix& a) {
  if (!a.square()) throw DimensionError("hermitian_part requires square input");
  ComplexMatrix out(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i) {
    out(i, i) = Complex(a(i, i).real(), 0.0);
    for (int j = i + 1; j < a.cols(); ++j) {
      const Complex avg = 0.5 * (a(i, j) + std::conj(a(j, i)));
      out(i, j) = avg;
      out(j, i) = std::conj(avg);
    }
  }
  return out;
}

double hermitian_defect(const ComplexMatrix& a) {
  if (!a.square()) throw DimensionError("hermitian_defect requires square input");
  double worst = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = i; j < a.cols(); ++j)
      worst = std::max(worst, std::abs(a(i, j) - std::conj(a(j, i))));
  return worst;
}

ComplexMatrix submatrix(const ComplexMatrix& a, int row0, int col0, int rows,
                        int cols) {
  if (row0 < 0 || col0 < 0 || rows <= 0 || cols <= 0 ||
      row0 + rows > a.rows() || col0 + cols > a.cols()) {
    throw DimensionError("submatrix window out of range");
  }
  ComplexMatrix out(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) out(i, j) = a(row0 + i, col0 + j);
  return out;
}

ComplexMatrix zero_pad(const ComplexMatrix& x, int rows, int cols) {
  if (rows < x.rows() || cols < x.cols()) {
    throw DimensionError("zero_pad target is smaller than the input");
  }
  ComplexMatrix out(rows, cols);
  for (int i = 0; i < x.rows(); ++i)
    for (int j = 0; j < x.cols(); ++j) out(i, j) = x(i, j);
  return out;
}

ComplexMatrix direct_sum(const std::vector<ComplexMatrix>& blocks) {
  if (blocks.empty()) throw DimensionError("direct_sum of no blocks");
  int rows = 0, cols = 0;
  for (const ComplexMatrix& b : blocks) {
    rows += b.rows();
    cols += b.cols();
  }
  ComplexMatrix out(rows, cols);
  int r0 = 0, c0 = 0;
  for (const ComplexMatrix& b : blocks) {
    for (int i = 0; i < b.rows(); ++i)
      for (int j = 0; j < b.cols(); ++j) out(r0 + i, c0 + j) = b(i, j);
    r0 += b.rows();
    c0 += b.cols();
  }
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double worst = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
  return worst;
}

}  // namespace blocknorm
