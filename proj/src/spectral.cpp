#include "blocknorm/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

namespace blocknorm {

namespace {

constexpr int kMaxSweeps = 64;

// Unitary 2x2 rotation G = [[c, s], [-s p, c p]] with real c >= 0, real s and
// unimodular p.  For Hermitian M = [[alpha, gamma], [conj(gamma), beta]],
// p = conj(gamma)/|gamma| and the classic stable tangent choice make G* M G
// diagonal.  The same G orthogonalizes a column pair whose 2x2 Gram matrix
// is M, which is all the one-sided SVD needs.
struct Rotation {
  double c = 1.0;
  double s = 0.0;
  Complex p = Complex(1.0, 0.0);
};

Rotation make_rotation(double alpha, double beta, const Complex& gamma) {
  Rotation rot;
  const double g = std::abs(gamma);
  rot.p = std::conj(gamma) / g;
  const double zeta = (beta - alpha) / (2.0 * g);
  const double t =
      (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::hypot(1.0, zeta));
  rot.c = 1.0 / std::hypot(1.0, t);
  rot.s = t * rot.c;
  return rot;
}

// m <- m G on columns i, j.
void rotate_columns(ComplexMatrix& m, int i, int j, const Rotation& rot) {
  const Complex g10 = -rot.s * rot.p;
  const Complex g11 = rot.c * rot.p;
  for (int t = 0; t < m.rows(); ++t) {
    const Complex mi = m(t, i);
    const Complex mj = m(t, j);
    m(t, i) = rot.c * mi + g10 * mj;
    m(t, j) = rot.s * mi + g11 * mj;
  }
}

// m <- G* m on rows i, j.
void rotate_rows(ComplexMatrix& m, int i, int j, const Rotation& rot) {
  const Complex g10c = std::conj(-rot.s * rot.p);
  const Complex g11c = std::conj(rot.c * rot.p);
  for (int t = 0; t < m.cols(); ++t) {
    const Complex ri = m(i, t);
    const Complex rj = m(j, t);
    m(i, t) = rot.c * ri + g10c * rj;
    m(j, t) = rot.s * ri + g11c * rj;
  }
}

double off_diagonal_norm(const ComplexMatrix& a) {
  double sum = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = i + 1; j < a.cols(); ++j) sum += std::norm(a(i, j));
  return std::sqrt(2.0 * sum);
}

// Cyclic Jacobi on a Hermitian matrix (caller guarantees exact symmetry).
// Small dimensions only, so the quadratic sweep cost is irrelevant next to
// the accuracy: eigenvalues come out with absolute error O(eps)*||a||.
HermitianEigen jacobi_hermitian(ComplexMatrix a) {
  const int n = a.rows();
  ComplexMatrix q = ComplexMatrix::identity(n);
  // Same scaling guard as svd(): keep the sweep thresholds out of the
  // overflow/underflow range.  Eigenvalues scale back linearly.
  const double peak = a.max_abs();
  const double factor =
      (peak > 1e50 || (peak > 0.0 && peak < 1e-50)) ? peak : 1.0;
  if (factor != 1.0) a = (1.0 / factor) * a;
  const double fro = a.frobenius_norm();
  if (fro > 0.0) {
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
      if (off_diagonal_norm(a) <= 1e-15 * fro) break;
      for (int i = 0; i < n - 1; ++i) {
        for (int j = i + 1; j < n; ++j) {
          const Complex gamma = a(i, j);
          if (std::abs(gamma) <= 1e-18 * fro) continue;
          const Rotation rot =
              make_rotation(a(i, i).real(), a(j, j).real(), gamma);
          rotate_columns(a, i, j, rot);
          rotate_rows(a, i, j, rot);
          a(i, j) = 0.0;  // annihilated by construction; drop the roundoff
          a(j, i) = 0.0;
          a(i, i) = Complex(a(i, i).real(), 0.0);
          a(j, j) = Complex(a(j, j).real(), 0.0);
          rotate_columns(q, i, j, rot);
        }
      }
    }
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&a](int x, int y) {
    return a(x, x).real() > a(y, y).real();
  });
  HermitianEigen out;
  out.values.resize(n);
  out.vectors = ComplexMatrix(n, n);
  for (int j = 0; j < n; ++j) {
    out.values[j] = a(order[j], order[j]).real() * factor;
    for (int t = 0; t < n; ++t) out.vectors(t, j) = q(t, order[j]);
  }
  return out;
}

// One-sided Jacobi: rotate column pairs of y (mirroring into v when given)
// until a full sweep leaves every pair orthogonal relative to the sizes of
// the two columns.  The relative test is what keeps tiny singular values
// accurate in the presence of huge ones.
//
// Columns of a rank-deficient input collapse to correlated rounding noise
// that shrinks by ~eps^2 per sweep without ever passing the relative test;
// left alone the norms decay into the subnormal range, where the rotation
// phase conj(gamma)/|gamma| stops being unimodular and silently destroys
// the orthogonality of v.  Columns are therefore flushed to exact zero once
// they drop below eps^2 of the largest column -- a perturbation of the same
// order as the noise itself.
void one_sided_sweeps(ComplexMatrix& y, ComplexMatrix* v) {
  const int cols = y.cols();
  const double eps = std::numeric_limits<double>::epsilon();
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double colmax_sq = 0.0;
    for (int j = 0; j < cols; ++j) {
      double sum = 0.0;
      for (int t = 0; t < y.rows(); ++t) sum += std::norm(y(t, j));
      colmax_sq = std::max(colmax_sq, sum);
    }
    const double floor_sq = colmax_sq * (eps * eps) * (eps * eps);
    bool rotated = false;
    for (int i = 0; i < cols - 1; ++i) {
      for (int j = i + 1; j < cols; ++j) {
        double alpha = 0.0;
        double beta = 0.0;
        Complex gamma = 0.0;
        for (int t = 0; t < y.rows(); ++t) {
          alpha += std::norm(y(t, i));
          beta += std::norm(y(t, j));
          gamma += std::conj(y(t, i)) * y(t, j);
        }
        if (alpha <= floor_sq) {
          for (int t = 0; t < y.rows(); ++t) y(t, i) = 0.0;
          alpha = 0.0;
        }
        if (beta <= floor_sq) {
          for (int t = 0; t < y.rows(); ++t) y(t, j) = 0.0;
          beta = 0.0;
        }
        if (alpha == 0.0 || beta == 0.0) continue;
        if (std::abs(gamma) <= 8.0 * eps * std::sqrt(alpha) * std::sqrt(beta))
          continue;
        const Rotation rot = make_rotation(alpha, beta, gamma);
        rotate_columns(y, i, j, rot);
        if (v != nullptr) rotate_columns(*v, i, j, rot);
        rotated = true;
      }
    }
    if (!rotated) break;
  }
}

// Fills the unfilled columns of u with vectors orthonormal to the filled
// ones, drawn from standard basis vectors.  Two Gram-Schmidt passes keep the
// result orthogonal to working precision.
void fill_orthonormal_gaps(ComplexMatrix& u, std::vector<bool>& filled) {
  const int n = u.rows();
  std::vector<bool> used_basis(n, false);
  for (int col = 0; col < n; ++col) {
    if (filled[col]) continue;
    bool placed = false;
    for (double threshold : {0.25, 1e-3, 1e-8}) {
      for (int e = 0; e < n && !placed; ++e) {
        if (used_basis[e]) continue;
        std::vector<Complex> cand(n, Complex(0.0, 0.0));
        cand[e] = 1.0;
        for (int pass = 0; pass < 2; ++pass) {
          for (int j = 0; j < n; ++j) {
            if (!filled[j]) continue;
            Complex dot = 0.0;
            for (int t = 0; t < n; ++t) dot += std::conj(u(t, j)) * cand[t];
            for (int t = 0; t < n; ++t) cand[t] -= dot * u(t, j);
          }
        }
        double nrm = 0.0;
        for (const Complex& z : cand) nrm += std::norm(z);
        nrm = std::sqrt(nrm);
        if (nrm <= threshold) continue;
        for (int t = 0; t < n; ++t) u(t, col) = cand[t] / nrm;
        filled[col] = true;
        used_basis[e] = true;
        placed = true;
      }
      if (placed) break;
    }
    if (!placed)
      throw ConsistencyError("svd", "could not complete an orthonormal basis");
  }
}

PsdVerdict is_psd_impl(const ComplexMatrix& a, double abs_tol, double rel_tol) {
  if (!a.square()) throw DimensionError("is_psd requires a square matrix");
  a.check_finite("is_psd");
  PsdVerdict verdict;
  verdict.hermitian_defect = hermitian_defect(a);
  const HermitianEigen eig = jacobi_hermitian(hermitian_part(a));
  const double radius =
      std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));
  const double scale = std::max(1.0, radius);
  verdict.min_eigenvalue = eig.values.back();
  verdict.tolerance_used = abs_tol >= 0.0 ? abs_tol : rel_tol * scale;
  verdict.is_psd = verdict.min_eigenvalue >= -verdict.tolerance_used &&
                   verdict.hermitian_defect <= verdict.tolerance_used;
  return verdict;
}

}  // namespace

HermitianEigen eig_hermitian(const ComplexMatrix& a, double tol) {
  if (!a.square())
    throw DimensionError("eig_hermitian requires a square matrix");
  a.check_finite("eig_hermitian");
  const double defect = hermitian_defect(a);
  HermitianEigen out = jacobi_hermitian(hermitian_part(a));
  const double radius =
      std::max(std::abs(out.values.front()), std::abs(out.values.back()));
  if (defect > tol * std::max(1.0, radius)) {
    throw NotHermitianError("eig_hermitian: anti-Hermitian defect " +
                            std::to_string(defect) + " exceeds tolerance");
  }
  return out;
}

Svd svd(const ComplexMatrix& x) {
  x.check_finite("svd");
  if (x.rows() < x.cols()) {
    Svd t = svd(x.adjoint());
    return Svd{std::move(t.v), std::move(t.sigma), std::move(t.u)};
  }
  const int r = x.rows();
  const int c = x.cols();
  ComplexMatrix y = x;
  // Column norms square the entries, so extreme magnitudes overflow or
  // underflow (and the sweep noise floor sits another eps^4 below the
  // largest column).  Rescale such inputs and fold the factor back into
  // sigma; ordinary inputs pass through untouched.
  const double peak = x.max_abs();
  const double factor =
      (peak > 1e50 || (peak > 0.0 && peak < 1e-50)) ? peak : 1.0;
  if (factor != 1.0) y = (1.0 / factor) * y;
  ComplexMatrix v = ComplexMatrix::identity(c);
  one_sided_sweeps(y, &v);

  std::vector<double> norms(c);
  for (int j = 0; j < c; ++j) {
    double sum = 0.0;
    for (int t = 0; t < r; ++t) sum += std::norm(y(t, j));
    norms[j] = std::sqrt(sum);
  }
  std::vector<int> order(c);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&norms](int a, int b) { return norms[a] > norms[b]; });

  Svd out;
  out.sigma.resize(c);
  out.u = ComplexMatrix(r, r);
  out.v = ComplexMatrix(c, c);
  std::vector<bool> filled(r, false);
  for (int j = 0; j < c; ++j) {
    const int src = order[j];
    out.sigma[j] = norms[src] * factor;
    for (int t = 0; t < c; ++t) out.v(t, j) = v(t, src);
    if (norms[src] > 0.0) {
      for (int t = 0; t < r; ++t) out.u(t, j) = y(t, src) / norms[src];
      filled[j] = true;
    }
  }
  fill_orthonormal_gaps(out.u, filled);
  return out;
}

std::vector<double> singular_values(const ComplexMatrix& x) {
  x.check_finite("singular_values");
  ComplexMatrix y = x.rows() >= x.cols() ? x : x.adjoint();
  const double peak = y.max_abs();  // same scaling guard as svd()
  const double factor =
      (peak > 1e50 || (peak > 0.0 && peak < 1e-50)) ? peak : 1.0;
  if (factor != 1.0) y = (1.0 / factor) * y;
  one_sided_sweeps(y, nullptr);
  std::vector<double> out(y.cols());
  for (int j = 0; j < y.cols(); ++j) {
    double sum = 0.0;
    for (int t = 0; t < y.rows(); ++t) sum += std::norm(y(t, j));
    out[j] = std::sqrt(sum) * factor;
  }
  std::sort(out.begin(), out.end(), std::greater<double>());
  return out;
}

double operator_norm(const ComplexMatrix& x) { return singular_values(x)[0]; }

ComplexMatrix abs_matrix(const ComplexMatrix& x) {
  const Svd s = svd(x);
  const int c = x.cols();
  ComplexMatrix out(c, c);
  // sum_k sigma_k v_k v_k*, upper triangle mirrored so the result is
  // Hermitian to the last bit
  for (int i = 0; i < c; ++i) {
    for (int j = i; j < c; ++j) {
      Complex sum = 0.0;
      for (std::size_t k = 0; k < s.sigma.size(); ++k)
        sum += s.sigma[k] * s.v(i, k) * std::conj(s.v(j, k));
      if (i == j) {
        out(i, i) = Complex(sum.real(), 0.0);
      } else {
        out(i, j) = sum;
        out(j, i) = std::conj(sum);
      }
    }
  }
  return out;
}

PolarFactors polar(const ComplexMatrix& x, PolarSide side) {
  if (!x.square()) throw DimensionError("polar requires a square matrix");
  const Svd s = svd(x);
  const int n = x.rows();
  PolarFactors out;
  out.side = side;
  out.u = s.u * s.v.adjoint();
  const ComplexMatrix& basis = side == PolarSide::kLeft ? s.u : s.v;
  out.p = ComplexMatrix(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      Complex sum = 0.0;
      for (int k = 0; k < n; ++k)
        sum += s.sigma[k] * basis(i, k) * std::conj(basis(j, k));
      if (i == j) {
        out.p(i, i) = Complex(sum.real(), 0.0);
      } else {
        out.p(i, j) = sum;
        out.p(j, i) = std::conj(sum);
      }
    }
  }
  return out;
}

UnitaryDiagonalization diagonalize_unitary(const ComplexMatrix& w) {
  if (!w.square())
    throw DimensionError("diagonalize_unitary requires a square matrix");
  w.check_finite("diagonalize_unitary");
  const int n = w.rows();
  const double defect =
      max_abs_diff(w.adjoint() * w, ComplexMatrix::identity(n));
  if (defect > 1e-8 * n) {
    throw NotUnitaryError("diagonalize_unitary: max |w* w - I| = " +
                          std::to_string(defect));
  }
  const HermitianEigen h = jacobi_hermitian(hermitian_part(w));
  ComplexMatrix q = h.vectors;
  // (w - w*)/(2i) is Hermitian and commutes with (w + w*)/2 because w is
  // normal, so it is block-diagonal on the eigenspaces of the latter.
  const ComplexMatrix k = Complex(0.0, -0.5) * (w - w.adjoint());
  int begin = 0;
  while (begin < n) {
    int end = begin + 1;
    while (end < n && h.values[end - 1] - h.values[end] < 1e-7) ++end;
    const int m = end - begin;
    if (m > 1) {
      // Real parts nearly tie: split the cluster with the imaginary parts.
      ComplexMatrix qc(n, m);
      for (int t = 0; t < n; ++t)
        for (int j = 0; j < m; ++j) qc(t, j) = q(t, begin + j);
      const ComplexMatrix restricted = hermitian_part(qc.adjoint() * (k * qc));
      const HermitianEigen sub = jacobi_hermitian(restricted);
      const ComplexMatrix rotated = qc * sub.vectors;
      for (int t = 0; t < n; ++t)
        for (int j = 0; j < m; ++j) q(t, begin + j) = rotated(t, j);
    }
    begin = end;
  }
  UnitaryDiagonalization out;
  out.d.resize(n);
  const ComplexMatrix wq = w * q;
  for (int j = 0; j < n; ++j) {
    Complex lambda = 0.0;
    for (int t = 0; t < n; ++t) lambda += std::conj(q(t, j)) * wq(t, j);
    out.d[j] = lambda / std::abs(lambda);
  }
  out.x = q.adjoint();
  return out;
}

PsdVerdict is_psd(const ComplexMatrix& a, double tol) {
  return is_psd_impl(a, tol, 1e-8);
}

PsdVerdict is_psd_scaled(const ComplexMatrix& a, double rel_tol) {
  return is_psd_impl(a, -1.0, rel_tol);
}

}  // namespace blocknorm
