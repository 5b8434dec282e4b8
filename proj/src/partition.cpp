#include "blocknorm/partition.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <utility>

namespace blocknorm {

PartitionedMatrix::PartitionedMatrix(ComplexMatrix matrix,
                                     std::vector<int> sizes)
    : matrix_(std::move(matrix)), sizes_(std::move(sizes)) {
  if (!matrix_.square())
    throw DimensionError("partitioned matrix must be square");
  if (sizes_.empty()) throw DimensionError("partition must be nonempty");
  int total = 0;
  offsets_.reserve(sizes_.size());
  for (int s : sizes_) {
    if (s <= 0) throw DimensionError("partition sizes must be positive");
    offsets_.push_back(total);
    total += s;
  }
  if (total != matrix_.rows()) {
    throw DimensionError("partition sums to " + std::to_string(total) +
                         " but the matrix has dimension " +
                         std::to_string(matrix_.rows()));
  }
}

int PartitionedMatrix::max_block_size() const {
  return *std::max_element(sizes_.begin(), sizes_.end());
}

ComplexMatrix PartitionedMatrix::block(int i, int j) const {
  return submatrix(matrix_, offsets_[i], offsets_[j], sizes_[i], sizes_[j]);
}

PartitionedMatrix embed_blocks(const PartitionedMatrix& pm,
                               const std::vector<int>& target_sizes) {
  if (target_sizes.size() != pm.sizes().size())
    throw DimensionError("embed_blocks: target partition length mismatch");
  int total = 0;
  std::vector<int> offsets;
  offsets.reserve(target_sizes.size());
  for (std::size_t i = 0; i < target_sizes.size(); ++i) {
    if (target_sizes[i] < pm.sizes()[i])
      throw DimensionError("embed_blocks: target block smaller than source");
    offsets.push_back(total);
    total += target_sizes[i];
  }
  ComplexMatrix out(total, total);
  const int m = pm.block_count();
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) {
      const ComplexMatrix blk = pm.block(i, j);
      for (int r = 0; r < blk.rows(); ++r)
        for (int c = 0; c < blk.cols(); ++c)
          out(offsets[i] + r, offsets[j] + c) = blk(r, c);
    }
  }
  return PartitionedMatrix(std::move(out), target_sizes);
}

ComplexMatrix abs_entries(const ComplexMatrix& b) {
  if (!b.square()) throw DimensionError("abs_entries requires a square matrix");
  ComplexMatrix out(b.rows(), b.cols());
  for (int i = 0; i < b.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) out(i, j) = std::abs(b(i, j));
  return out;
}

NormCompression compress(const PartitionedMatrix& pm, const UINorm& norm,
                         double tol) {
  const PsdVerdict input = is_psd_scaled(pm.matrix(), tol);
  if (!input.is_psd) {
    throw NotPsdError("compress: input is not PSD (min eigenvalue " +
                          std::to_string(input.min_eigenvalue) + ")",
                      input.min_eigenvalue);
  }
  if (norm.ambient_dim() < pm.max_block_size()) {
    throw DimensionError("compress: ambient dimension " +
                         std::to_string(norm.ambient_dim()) +
                         " is smaller than the largest block");
  }
  const PartitionedMatrix sym(hermitian_part(pm.matrix()), pm.sizes());
  const int m = pm.block_count();
  ComplexMatrix values(m, m);
  for (int i = 0; i < m; ++i) {
    for (int j = i; j < m; ++j) {
      const double v = eval_norm(norm, sym.block(i, j));
      values(i, j) = v;  // ||A_ji|| = ||A_ij*|| = ||A_ij||: mirror, don't recompute
      values(j, i) = v;
    }
  }
  NormCompression out;
  out.verdict = is_psd_scaled(values, tol);
  out.values = std::move(values);
  out.norm_used = norm;
  return out;
}

NormCompression compress_m2(const PartitionedMatrix& pm, const UINorm& norm,
                            double tol) {
  if (pm.block_count() != 2)
    throw ParameterError("compress_m2 requires exactly 2 diagonal blocks");
  NormCompression out = compress(pm, norm, tol);
  if (!out.verdict.is_psd) {
    throw ConsistencyError(
        "m2", "two-block compression must be PSD, got min eigenvalue " +
                  std::to_string(out.verdict.min_eigenvalue));
  }
  return out;
}

const PartitionedMatrix& ReductionTrace::stage(const std::string& label) const {
  for (const auto& [name, snapshot] : stages)
    if (name == label) return snapshot;
  throw NotFoundError("no stage labeled '" + label + "'");
}

namespace {

double trace_norm_of(const ComplexMatrix& x) {
  const std::vector<double> s = singular_values(x);
  return std::accumulate(s.begin(), s.end(), 0.0);
}

double spectrum_drift(const std::vector<double>& a,
                      const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j)
    worst = std::max(worst, std::abs(a[j] - b[j]));
  return worst;
}

}  // namespace

ReductionTrace reduce_theorem1(const PartitionedMatrix& pm, double tol) {
  if (pm.block_count() != 3)
    throw ParameterError("reduce_theorem1 requires exactly 3 diagonal blocks");
  const PsdVerdict input = is_psd_scaled(pm.matrix(), tol);
  if (!input.is_psd) {
    throw NotPsdError("reduce_theorem1: input is not PSD (min eigenvalue " +
                          std::to_string(input.min_eigenvalue) + ")",
                      input.min_eigenvalue);
  }

  ReductionTrace trace;
  const PartitionedMatrix sym_pm(hermitian_part(pm.matrix()), pm.sizes());

  // Trace norms of the (symmetrized) input blocks; padding keeps singular
  // values, so these are the targets the assembled Q_ij must reproduce.
  ComplexMatrix targets(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) targets(i, j) = trace_norm_of(sym_pm.block(i, j));

  const int n = pm.max_block_size();
  const PartitionedMatrix padded = embed_blocks(sym_pm, {n, n, n});
  ComplexMatrix a = padded.matrix();

  const HermitianEigen base = eig_hermitian(a);
  const double radius =
      std::max(std::abs(base.values.front()), std::abs(base.values.back()));
  const double bound = tol * std::max(1.0, radius);

  // The first four stages are unitary congruences of the padded input, so
  // each must reproduce its spectrum and in particular stay PSD.
  auto congruence_stage = [&](const std::string& label, ComplexMatrix m) {
    ComplexMatrix h = hermitian_part(m);
    const std::vector<double> eigs = eig_hermitian(h).values;
    if (eigs.back() < -bound) {
      throw ConsistencyError(label, "stage lost PSD: min eigenvalue " +
                                        std::to_string(eigs.back()));
    }
    const double drift = spectrum_drift(eigs, base.values);
    if (drift > bound) {
      throw ConsistencyError(
          label, "stage spectrum drifted by " + std::to_string(drift));
    }
    trace.stages.emplace_back(label, PartitionedMatrix(h, {n, n, n}));
    return h;
  };

  a = congruence_stage("pad", std::move(a));

  // Left polar A_12 = P U; conjugating by I + U + I turns block (1,2) into P.
  const ComplexMatrix eye = ComplexMatrix::identity(n);
  const PolarFactors p12 = polar(submatrix(a, 0, n, n, n), PolarSide::kLeft);
  trace.u12 = p12.u;
  const ComplexMatrix m12 = direct_sum({eye, p12.u, eye});
  a = congruence_stage("polar12", m12 * a * m12.adjoint());

  // Same for the updated block (2,3) via I + I + V.
  const PolarFactors p23 =
      polar(submatrix(a, n, 2 * n, n, n), PolarSide::kLeft);
  trace.u23 = p23.u;
  const ComplexMatrix m23 = direct_sum({eye, eye, p23.u});
  a = congruence_stage("polar23", m23 * a * m23.adjoint());

  // Block (1,3) = P W with W unitary.  Diagonalize w = x* diag(d) x and
  // conjugate by x + x + x: blocks (1,2), (2,3) stay PSD, block (1,3)
  // becomes PSD times a unimodular diagonal.
  const PolarFactors p13 =
      polar(submatrix(a, 0, 2 * n, n, n), PolarSide::kLeft);
  const UnitaryDiagonalization w = diagonalize_unitary(p13.u);
  trace.x = w.x;
  trace.d = w.d;
  const ComplexMatrix mx = direct_sum({w.x, w.x, w.x});
  a = congruence_stage("diagW", mx * a * mx.adjoint());

  // Extraction stages: no longer congruences, but still PSD at every step.
  auto extracted_stage = [&](const std::string& label, ComplexMatrix m,
                             std::vector<int> sizes) {
    const std::vector<double> eigs = eig_hermitian(m).values;
    if (eigs.back() < -bound) {
      throw ConsistencyError(label, "stage lost PSD: min eigenvalue " +
                                        std::to_string(eigs.back()));
    }
    trace.stages.emplace_back(
        label, PartitionedMatrix(std::move(m), std::move(sizes)));
    return eigs;
  };

  // The 3x3 slice Q~_r collects the (r,r) entries of the nine blocks: a
  // principal submatrix of the current matrix, hence PSD.
  std::vector<ComplexMatrix> slices;
  slices.reserve(n);
  for (int r = 0; r < n; ++r) {
    ComplexMatrix q(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) q(i, j) = a(i * n + r, j * n + r);
    slices.push_back(std::move(q));
  }
  const std::vector<int> slice_sizes(n, 3);
  extracted_stage("extractQ", direct_sum(slices), slice_sizes);

  // Only the (1,3)/(3,1) entries can be non-real here — they carry the
  // unimodular d_r — and flipping them to their moduli keeps a PSD 3x3 PSD.
  trace.q_triples = slices;
  for (ComplexMatrix& q : trace.q_triples) {
    const double modulus = std::abs(q(0, 2));
    q(0, 2) = modulus;
    q(2, 0) = modulus;
  }
  const std::vector<double> sum_eigs =
      extracted_stage("absQ", direct_sum(trace.q_triples), slice_sizes);

  // Scatter the slices back into diagonal n x n blocks Q_ij.
  ComplexMatrix assembled(3 * n, 3 * n);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int r = 0; r < n; ++r)
        assembled(i * n + r, j * n + r) = trace.q_triples[r](i, j);
  const std::vector<double> assembled_eigs =
      extracted_stage("assemble", assembled, {n, n, n});
  trace.q_blocks = trace.stages.back().second;

  // (Q_ij) is a permutation congruence of the direct sum of the slices.
  const double similarity_drift = spectrum_drift(assembled_eigs, sum_eigs);
  if (similarity_drift > bound) {
    throw ConsistencyError("assemble",
                           "block form and direct sum of slices disagree in "
                           "spectrum by " +
                               std::to_string(similarity_drift));
  }

  // tr Q_ij must equal the trace norm of the original block (i,j).
  trace.trace_matrix = ComplexMatrix(3, 3);
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      Complex sum = 0.0;
      for (int r = 0; r < n; ++r) sum += trace.q_triples[r](i, j);
      if (std::abs(sum.imag()) > bound) {
        throw ConsistencyError("assemble",
                               "complex trace survived the reduction");
      }
      if (std::abs(sum.real() - targets(i, j).real()) > bound) {
        throw ConsistencyError(
            "assemble", "tr Q_" + std::to_string(i + 1) + std::to_string(j + 1) +
                            " = " + std::to_string(sum.real()) +
                            " differs from the block trace norm " +
                            std::to_string(targets(i, j).real()));
      }
      trace.trace_matrix(i, j) = sum.real();
      trace.trace_matrix(j, i) = sum.real();
    }
  }
  return trace;
}

SufficiencyResult sufficiency_check(const PartitionedMatrix& pm,
                                    const UINorm& norm, double tol) {
  if (pm.block_count() != 3)
    throw ParameterError("sufficiency_check requires exactly 3 diagonal blocks");
  if (norm.ambient_dim() < pm.max_block_size()) {
    throw DimensionError("sufficiency_check: ambient dimension " +
                         std::to_string(norm.ambient_dim()) +
                         " is smaller than the largest block");
  }
  const ComplexMatrix sym = hermitian_part(pm.matrix());
  const HermitianEigen base = eig_hermitian(sym);
  const double radius =
      std::max(std::abs(base.values.front()), std::abs(base.values.back()));
  const double bound = tol * std::max(1.0, radius);
  if (base.values.back() < -bound) {
    throw NotPsdError("sufficiency_check: input is not PSD (min eigenvalue " +
                          std::to_string(base.values.back()) + ")",
                      base.values.back());
  }

  // Sort blocks so sizes ascend; remember where each sorted block came from.
  std::vector<int> order = {0, 1, 2};
  std::stable_sort(order.begin(), order.end(), [&pm](int a, int b) {
    return pm.sizes()[a] < pm.sizes()[b];
  });
  std::vector<int> sorted_sizes(3);
  for (int i = 0; i < 3; ++i) sorted_sizes[i] = pm.sizes()[order[i]];
  const int n1 = sorted_sizes[0];
  const int n2 = sorted_sizes[1];
  const int n3 = sorted_sizes[2];

  const PartitionedMatrix sym_pm(sym, pm.sizes());
  ComplexMatrix permuted(pm.dim(), pm.dim());
  {
    std::vector<int> offsets = {0, n1, n1 + n2};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const ComplexMatrix blk = sym_pm.block(order[i], order[j]);
        for (int r = 0; r < blk.rows(); ++r)
          for (int c = 0; c < blk.cols(); ++c)
            permuted(offsets[i] + r, offsets[j] + c) = blk(r, c);
      }
    }
  }
  const PartitionedMatrix sorted_pm(std::move(permuted), sorted_sizes);

  const int k = std::min(n1 + n2, n3);
  const ConditionBCertificate cert = condition_b(norm, k);
  if (!cert.holds) {
    throw ParameterError(
        "norm fails condition (b) at k = " + std::to_string(k) + " (slack " +
        std::to_string(cert.slack) +
        "): positivity of the compression is not guaranteed");
  }

  const double gamma = eval_norm(norm, ComplexMatrix::identity(1));
  const UINorm unit = normalize(norm);
  ComplexMatrix values_sorted(3, 3);
  double epsilon = 0.0;

  if (k == n3) {
    // Every block has rank <= n3 = k, where condition (b) pins the norm to
    // gamma times the trace norm.
    for (int i = 0; i < 3; ++i) {
      for (int j = i; j < 3; ++j) {
        const ComplexMatrix blk = sorted_pm.block(i, j);
        const double tn = trace_norm_of(blk);
        const double nv = eval_norm(norm, blk);
        if (std::abs(nv - gamma * tn) > bound * std::max(1.0, gamma)) {
          throw ConsistencyError(
              "sufficiency", "norm of a rank<=k block differs from gamma * "
                             "trace norm by " +
                                 std::to_string(nv - gamma * tn));
        }
        values_sorted(i, j) = nv;
        values_sorted(j, i) = nv;
      }
    }
  } else {
    // k = n1 + n2 < n3.  Rotate the third block column by the right singular
    // vectors of the stacked (A_13; A_23): only k columns survive, so after
    // dropping the last n3 - k rows/columns the trace norms of the truncated
    // blocks reproduce every norm value except a deficit at (3,3).
    ComplexMatrix stacked(k, n3);
    const ComplexMatrix a13 = sorted_pm.block(0, 2);
    const ComplexMatrix a23 = sorted_pm.block(1, 2);
    for (int c = 0; c < n3; ++c) {
      for (int r = 0; r < n1; ++r) stacked(r, c) = a13(r, c);
      for (int r = 0; r < n2; ++r) stacked(n1 + r, c) = a23(r, c);
    }
    const Svd sv = svd(stacked);
    const ComplexMatrix rotated = stacked * sv.v;
    double tail = 0.0;
    for (int c = k; c < n3; ++c)
      for (int r = 0; r < k; ++r) tail = std::max(tail, std::abs(rotated(r, c)));
    if (tail > bound) {
      throw ConsistencyError("sufficiency",
                             "stacked off-diagonal column survived the "
                             "rotation with magnitude " +
                                 std::to_string(tail));
    }

    const ComplexMatrix conj = direct_sum({ComplexMatrix::identity(k), sv.v});
    const ComplexMatrix full =
        hermitian_part(conj.adjoint() * (sorted_pm.matrix() * conj));
    const ComplexMatrix truncated = submatrix(full, 0, 0, k + k, k + k);
    const PartitionedMatrix hat(truncated, {n1, n2, k});

    ComplexMatrix t(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) {
        const double tn = trace_norm_of(hat.block(i, j));
        t(i, j) = tn;
        t(j, i) = tn;
      }

    const double a33 = eval_norm(unit, sorted_pm.block(2, 2));
    double eps = a33 - t(2, 2).real();
    if (eps < -bound) {
      throw ConsistencyError(
          "sufficiency",
          "epsilon = " + std::to_string(eps) + " fell below -tolerance");
    }
    eps = std::max(eps, 0.0);

    for (int i = 0; i < 3; ++i) {
      for (int j = i; j < 3; ++j) {
        if (i == 2 && j == 2) continue;
        const double nv = eval_norm(unit, sorted_pm.block(i, j));
        if (std::abs(nv - t(i, j).real()) > bound) {
          throw ConsistencyError(
              "sufficiency",
              "norm value and truncated trace norm differ at block (" +
                  std::to_string(i + 1) + "," + std::to_string(j + 1) +
                  ") by " + std::to_string(nv - t(i, j).real()));
        }
      }
    }

    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) values_sorted(i, j) = gamma * t(i, j).real();
    values_sorted(2, 2) = gamma * (t(2, 2).real() + eps);
    epsilon = gamma * eps;
  }

  // Undo the sorting permutation so callers see their own block order.
  ComplexMatrix values(3, 3);
  for (int si = 0; si < 3; ++si)
    for (int sj = 0; sj < 3; ++sj)
      values(order[si], order[sj]) = values_sorted(si, sj);

  SufficiencyResult result;
  result.compression.verdict = is_psd_scaled(values, tol);
  result.compression.values = std::move(values);
  result.compression.norm_used = norm;
  result.epsilon = epsilon;
  if (!result.compression.verdict.is_psd) {
    throw ConsistencyError(
        "sufficiency",
        "compression not PSD despite condition (b): min eigenvalue " +
            std::to_string(result.compression.verdict.min_eigenvalue));
  }
  return result;
}

}  // namespace blocknorm
