#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <vector>

#include "blocknorm/matrix.hpp"

namespace blocknorm::testing {

inline ComplexMatrix make_matrix(int rows, int cols,
                                 std::initializer_list<Complex> entries) {
  return ComplexMatrix(rows, cols, std::vector<Complex>(entries));
}

inline ComplexMatrix make_real(int rows, int cols,
                               std::initializer_list<double> entries) {
  std::vector<Complex> data;
  data.reserve(entries.size());
  for (double v : entries) data.emplace_back(v, 0.0);
  return ComplexMatrix(rows, cols, std::move(data));
}

// Independent PSD oracle: attempt a Cholesky factorization of a + shift*I
// with complete diagonal pivoting.  Feasible iff no pivot goes negative and
// the residual block vanishes once the pivots are exhausted.  Deliberately
// shares no code with the Jacobi-based verdicts under test.
inline bool cholesky_feasible(ComplexMatrix a, double shift) {
  const int n = a.rows();
  for (int i = 0; i < n; ++i) a(i, i) += shift;
  for (int k = 0; k < n; ++k) {
    int p = k;
    for (int i = k; i < n; ++i) {
      if (a(i, i).real() > a(p, p).real()) p = i;
    }
    if (p != k) {
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      for (int i = 0; i < n; ++i) std::swap(a(i, k), a(i, p));
    }
    const double d = a(k, k).real();
    if (d <= 0.0) {
      double resid = 0.0;
      for (int i = k; i < n; ++i) {
        for (int j = k; j < n; ++j) {
          resid = std::max(resid, std::abs(a(i, j)));
        }
      }
      return resid <= shift;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        a(i, j) -= a(i, k) * std::conj(a(j, k)) / d;
      }
    }
    for (int i = k + 1; i < n; ++i) {
      a(i, k) = 0.0;
      a(k, i) = 0.0;
    }
  }
  return true;
}

// Cofactor expansion along the first row; Hermitian input makes the result
// real, so the real part is the determinant.
inline double det3_oracle(const ComplexMatrix& m) {
  const Complex det =
      m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
      m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
      m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
  return det.real();
}

inline double scale_of(const ComplexMatrix& a) {
  return std::max(1.0, a.max_abs());
}

}  // namespace blocknorm::testing
