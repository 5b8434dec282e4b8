#include "blocknorm/counterexamples.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "blocknorm/random.hpp"

namespace blocknorm {

double det3(const ComplexMatrix& m) {
  if (m.rows() != 3 || m.cols() != 3)
    throw DimensionError("det3 requires a 3x3 matrix");
  const Complex det = m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
                      m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
                      m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
  return det.real();
}

namespace {

void certify(const CounterexampleReport& report, const std::string& stage) {
  if (!is_psd(report.pm.matrix()).is_psd) {
    throw ConsistencyError(stage, "counterexample input failed the PSD check");
  }
  if (report.compression.verdict.is_psd) {
    throw ConsistencyError(
        stage, "compression is PSD — not a counterexample (min eigenvalue " +
                   std::to_string(report.compression.verdict.min_eigenvalue) +
                   ")");
  }
}

}  // namespace

CounterexampleReport schatten_example(double p) {
  if (std::isnan(p) || p <= 1.0) {
    throw ParameterError(
        "schatten_example needs p > 1; at p = 1 the compression is PSD");
  }
  // (I_2 I_2; I_2 I_2) written out, blocks of sizes (1, 1, 2)
  ComplexMatrix a(4, 4);
  for (int i = 0; i < 4; ++i) {
    a(i, i) = 1.0;
    a(i, (i + 2) % 4) = 1.0;
  }
  CounterexampleReport report;
  report.pm = PartitionedMatrix(std::move(a), {1, 1, 2});
  report.norm = UINorm::schatten(p, 2);
  report.compression = compress(report.pm, report.norm);

  const double corner = std::isinf(p) ? 1.0 : std::pow(2.0, 1.0 / p);
  const ComplexMatrix expected(3, 3,
                               {1.0, 0.0, 1.0,  //
                                0.0, 1.0, 1.0,  //
                                1.0, 1.0, corner});
  if (max_abs_diff(report.compression.values, expected) > 1e-12) {
    throw ConsistencyError("schatten_example",
                           "compression differs from the closed form");
  }
  report.witness = det3(report.compression.values);
  if (std::abs(report.witness - (corner - 2.0)) > 1e-12) {
    throw ConsistencyError("schatten_example",
                           "determinant differs from 2^(1/p) - 2");
  }
  report.construction_params = {{"p", p}, {"det", report.witness}};
  certify(report, "schatten_example");
  return report;
}

CounterexampleReport thm2_necessity(const UINorm& norm_in, int n1, int n2,
                                    int n) {
  if (!(1 <= n1 && n1 <= n2 && n2 <= n)) {
    throw ParameterError("thm2_necessity requires 1 <= n1 <= n2 <= n");
  }
  if (norm_in.ambient_dim() < n) {
    throw DimensionError("thm2_necessity: norm ambient dimension " +
                         std::to_string(norm_in.ambient_dim()) +
                         " is smaller than n = " + std::to_string(n));
  }
  const UINorm norm = normalize(norm_in);  // construction assumes ||E_11|| = 1
  const int k = std::min(n1 + n2, n);
  const ConditionBCertificate cert = condition_b(norm, k);
  if (cert.holds) {
    throw ParameterError("norm satisfies condition (b) at k = " +
                         std::to_string(k) +
                         ": every compression is PSD, no counterexample "
                         "exists");
  }

  const int s = largest_flat_prefix(norm);
  if (s >= k) {
    throw ConsistencyError(
        "necessity", "flat prefix " + std::to_string(s) +
                         " reached k although condition (b) failed");
  }
  const int nt1 = std::min(n1, s);
  const int nt2 = s + 1 - nt1;
  if (nt2 > std::min(n2, s)) {
    throw ConsistencyError("necessity",
                           "s+1 does not split feasibly across the first "
                           "two blocks");
  }
  const int nt = s + 1;
  const double delta = eval_norm(norm, ComplexMatrix::identity(nt)) - s;
  if (delta < 0.0 || delta >= 1.0) {
    throw ConsistencyError(
        "necessity", "delta = " + std::to_string(delta) + " escaped [0, 1)");
  }

  // Gram vectors: block 1 holds e_1..e_{nt1}, block 2 holds f_1..f_{nt2},
  // block 3 repeats them side by side — identities on the diagonal,
  // A13 = (I 0), A23 = (0 I), A12 = 0.
  const int core_dim = nt1 + nt2 + nt;
  ComplexMatrix core(core_dim, core_dim);
  for (int i = 0; i < core_dim; ++i) core(i, i) = 1.0;
  for (int i = 0; i < nt1; ++i) {
    core(i, nt1 + nt2 + i) = 1.0;
    core(nt1 + nt2 + i, i) = 1.0;
  }
  for (int j = 0; j < nt2; ++j) {
    core(nt1 + j, nt1 + nt2 + nt1 + j) = 1.0;
    core(nt1 + nt2 + nt1 + j, nt1 + j) = 1.0;
  }

  CounterexampleReport report;
  report.pm = embed_blocks(PartitionedMatrix(std::move(core), {nt1, nt2, nt}),
                           {n1, n2, n});
  report.norm = norm;
  report.compression = compress(report.pm, norm);

  const double flat_top = s + delta;  // ||I_{s+1}||
  const ComplexMatrix expected(
      3, 3,
      {static_cast<double>(nt1), 0.0, static_cast<double>(nt1),  //
       0.0, static_cast<double>(nt2), static_cast<double>(nt2),  //
       static_cast<double>(nt1), static_cast<double>(nt2), flat_top});
  const double bound = 1e-9 * std::max(1.0, flat_top);
  if (max_abs_diff(report.compression.values, expected) > bound) {
    throw ConsistencyError("necessity",
                           "compression differs from the closed form");
  }
  report.witness = det3(report.compression.values);
  const double target = nt1 * nt2 * (delta - 1.0);
  if (std::abs(report.witness - target) > bound) {
    throw ConsistencyError(
        "necessity", "determinant " + std::to_string(report.witness) +
                         " differs from n~1*n~2*(delta-1) = " +
                         std::to_string(target));
  }
  report.construction_params = {
      {"k", static_cast<double>(k)},   {"s", static_cast<double>(s)},
      {"delta", delta},                {"n1_tilde", static_cast<double>(nt1)},
      {"n2_tilde", static_cast<double>(nt2)},
      {"n_tilde", static_cast<double>(nt)}};
  certify(report, "necessity");
  return report;
}

ComplexMatrix thompson_search(long trials, std::uint64_t seed) {
  if (trials < 1) throw ParameterError("thompson_search needs trials >= 1");
  for (long trial = 0; trial < trials; ++trial) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(trial)));
    // Rank-3 real Gram matrix: low rank pushes the entries toward the mixed
    // sign patterns that entrywise absolute value cannot absorb.
    const ComplexMatrix r = random_real_matrix(4, 3, rng);
    ComplexMatrix b(4, 4);
    for (int i = 0; i < 4; ++i) {
      for (int j = i; j < 4; ++j) {
        double sum = 0.0;
        for (int t = 0; t < 3; ++t) sum += r(i, t).real() * r(j, t).real();
        b(i, j) = sum;
        b(j, i) = sum;
      }
    }
    if (!is_psd(b, 1e-8).is_psd) continue;
    if (is_psd(abs_entries(b), 1e-8).is_psd) continue;
    return b;
  }
  throw NotFoundError("thompson_search: no counterexample in " +
                      std::to_string(trials) +
                      " trials; raise the trial budget");
}

CounterexampleReport m4_block_lift(const ComplexMatrix& b, int block_dim,
                                   const UINorm& norm) {
  if (!b.square()) throw DimensionError("m4_block_lift: b must be square");
  const int m = b.rows();
  if (m < 4) {
    throw ParameterError(
        "m4_block_lift needs at least 4 blocks; compressions with m <= 3 "
        "blocks stay PSD");
  }
  if (block_dim < 1) throw ParameterError("m4_block_lift: block_dim must be positive");
  if (norm.ambient_dim() < block_dim) {
    throw DimensionError("m4_block_lift: norm ambient dimension below block_dim");
  }
  if (!is_psd(b).is_psd) {
    throw ParameterError("m4_block_lift: seed matrix b must be PSD");
  }
  if (is_psd(abs_entries(b)).is_psd) {
    throw ParameterError(
        "m4_block_lift: abs_entries(b) is PSD, so b seeds no counterexample");
  }

  const int n = block_dim;
  ComplexMatrix a(m * n, m * n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) a(i * n, j * n) = b(i, j);

  CounterexampleReport report;
  report.pm = PartitionedMatrix(std::move(a), std::vector<int>(m, n));
  report.norm = norm;
  report.compression = compress(report.pm, norm);

  const double gamma = eval_norm(norm, ComplexMatrix::identity(1));
  const ComplexMatrix expected = gamma * abs_entries(b);
  if (max_abs_diff(report.compression.values, expected) >
      1e-9 * std::max(1.0, expected.max_abs())) {
    throw ConsistencyError("m4_lift",
                           "compression differs from gamma * abs_entries(b)");
  }
  report.witness = report.compression.verdict.min_eigenvalue;
  report.construction_params = {{"m", static_cast<double>(m)},
                                {"block_dim", static_cast<double>(n)},
                                {"gamma", gamma}};
  certify(report, "m4_lift");
  return report;
}

}  // namespace blocknorm
