#include "blocknorm/commands.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "blocknorm/counterexamples.hpp"
#include "blocknorm/errors.hpp"
#include "blocknorm/json_io.hpp"
#include "blocknorm/norms.hpp"
#include "blocknorm/numfmt.hpp"
#include "blocknorm/partition.hpp"
#include "blocknorm/spectral.hpp"

namespace blocknorm {
namespace {

// Shared error-to-exit-code mapping.  ConsistencyError means a proven
// statement failed numerically (or a bug); everything else the caller can
// fix is an input error.
template <typename Body>
int guard(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const ConsistencyError& e) {
    err << "consistency failure: " << e.what() << "\n";
    return kExitInternal;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
}

void write_int_array(JsonWriter& w, const std::vector<int>& values) {
  w.begin_array();
  for (int v : values) w.value(v);
  w.end_array();
}

void write_verdict(JsonWriter& w, const PsdVerdict& verdict) {
  w.begin_object();
  w.key("is_psd").value(verdict.is_psd);
  w.key("min_eigenvalue").value(verdict.min_eigenvalue);
  w.key("hermitian_defect").value(verdict.hermitian_defect);
  w.key("tolerance_used").value(verdict.tolerance_used);
  w.end_object();
}

void write_norm(JsonWriter& w, const UINorm& norm) {
  w.begin_object();
  w.key("spec").value(norm.spec_string());
  w.key("ambient_dim").value(norm.ambient_dim());
  w.end_object();
}

// Entrywise real parts as nested arrays; used for matrices that are real by
// construction (compressions, trace tables).
void write_real_matrix(JsonWriter& w, const ComplexMatrix& m) {
  w.begin_array();
  for (int i = 0; i < m.rows(); ++i) {
    w.begin_array();
    for (int j = 0; j < m.cols(); ++j) w.value(m(i, j).real());
    w.end_array();
  }
  w.end_array();
}

void write_compression(JsonWriter& w, const NormCompression& c) {
  w.begin_object();
  w.key("values");
  write_real_matrix(w, c.values);
  w.key("verdict");
  write_verdict(w, c.verdict);
  w.key("norm");
  write_norm(w, c.norm_used);
  w.end_object();
}

void write_partitioned(JsonWriter& w, const PartitionedMatrix& pm) {
  w.begin_object();
  w.key("partition");
  write_int_array(w, pm.sizes());
  w.key("matrix");
  write_matrix(w, pm.matrix());
  w.end_object();
}

// Matrix file + optional --partition override; the flag wins when both are
// present and at least one must exist.
PartitionedMatrix load_partitioned(const std::string& path,
                                   const std::vector<int>& flag_partition) {
  MatrixFile file = read_matrix_file(path);
  const std::vector<int>& partition =
      flag_partition.empty() ? file.partition : flag_partition;
  if (partition.empty()) {
    throw ParameterError(
        "no block partition: pass --partition or store one in the matrix "
        "file");
  }
  return PartitionedMatrix(file.matrix, partition);
}

}  // namespace

int cmd_check(const CheckOptions& options, std::ostream& out,
              std::ostream& err) {
  return guard(err, [&]() {
    PartitionedMatrix pm =
        load_partitioned(options.matrix_path, options.partition);
    UINorm norm = parse_norm_spec(options.norm_spec, pm.max_block_size());
    NormCompression result = pm.block_count() == 2
                                 ? compress_m2(pm, norm, options.tol)
                                 : compress(pm, norm, options.tol);
    JsonWriter w(out);
    w.begin_object();
    w.key("command").value("check");
    w.key("partition");
    write_int_array(w, pm.sizes());
    w.key("compression");
    write_compression(w, result);
    w.end_object();
    out << "\n";
    return result.verdict.is_psd ? kExitOk : kExitNegative;
  });
}

int cmd_reduce(const ReduceOptions& options, std::ostream& out,
               std::ostream& err) {
  return guard(err, [&]() {
    PartitionedMatrix pm =
        load_partitioned(options.matrix_path, options.partition);
    if (pm.block_count() != 3) {
      throw ParameterError("reduce needs exactly 3 diagonal blocks, got " +
                           std::to_string(pm.block_count()));
    }
    ReductionTrace trace = reduce_theorem1(pm, options.tol);

    JsonWriter w(out);
    w.begin_object();
    w.key("command").value("reduce");
    w.key("partition");
    write_int_array(w, pm.sizes());
    w.key("stages");
    w.begin_array();
    for (const auto& [label, snapshot] : trace.stages) {
      w.begin_object();
      w.key("label").value(label);
      w.key("partition");
      write_int_array(w, snapshot.sizes());
      w.key("matrix");
      write_matrix(w, snapshot.matrix());
      w.end_object();
    }
    w.end_array();
    w.key("u12");
    write_matrix(w, trace.u12);
    w.key("u23");
    write_matrix(w, trace.u23);
    w.key("x");
    write_matrix(w, trace.x);
    w.key("d");
    w.begin_array();
    for (const Complex& z : trace.d) {
      w.begin_array();
      w.value(z.real());
      w.value(z.imag());
      w.end_array();
    }
    w.end_array();
    w.key("q_triples");
    w.begin_array();
    for (const ComplexMatrix& q : trace.q_triples) write_matrix(w, q);
    w.end_array();
    w.key("q_blocks");
    write_partitioned(w, trace.q_blocks);
    w.key("trace_matrix");
    write_real_matrix(w, trace.trace_matrix);
    w.end_object();
    out << "\n";
    return kExitOk;
  });
}

int cmd_certify(const CertifyOptions& options, std::ostream& out,
                std::ostream& err) {
  return guard(err, [&]() {
    if (options.ambient < 1) {
      throw ParameterError("certify needs --ambient >= 1");
    }
    UINorm norm = parse_norm_spec(options.norm_spec, options.ambient);
    ConditionBCertificate cert = options.tol < 0.0
                                     ? condition_b(norm, options.k)
                                     : condition_b(norm, options.k, options.tol);
    JsonWriter w(out);
    w.begin_object();
    w.key("command").value("certify");
    w.key("norm");
    write_norm(w, norm);
    w.key("k").value(cert.k);
    w.key("norm_of_e11").value(cert.norm_of_e11);
    w.key("norm_of_partial_identity").value(cert.norm_of_partial_identity);
    w.key("slack").value(cert.slack);
    w.key("holds").value(cert.holds);
    w.key("largest_flat_prefix").value(largest_flat_prefix(norm));
    w.end_object();
    out << "\n";
    return cert.holds ? kExitOk : kExitNegative;
  });
}

int cmd_counterexample(const CounterexampleOptions& options, std::ostream& out,
                       std::ostream& err) {
  return guard(err, [&]() {
    CounterexampleReport report;
    if (options.kind == "schatten") {
      report = schatten_example(options.p);
    } else if (options.kind == "thm2") {
      if (options.sizes.size() != 3) {
        throw ParameterError("kind thm2 needs --sizes n1,n2,n");
      }
      if (options.norm_spec.empty()) {
        throw ParameterError("kind thm2 needs --norm");
      }
      const int n = options.sizes[2];
      const int ambient = options.ambient > 0 ? options.ambient : n;
      UINorm norm = parse_norm_spec(options.norm_spec, ambient);
      report = thm2_necessity(norm, options.sizes[0], options.sizes[1], n);
    } else if (options.kind == "thompson") {
      ComplexMatrix b = thompson_search(options.trials, options.seed);
      report = m4_block_lift(b, 1, UINorm::trace(1));
    } else if (options.kind == "m4") {
      ComplexMatrix b = options.matrix_path.empty()
                            ? thompson_search(options.trials, options.seed)
                            : read_matrix_file(options.matrix_path).matrix;
      const int ambient =
          options.ambient > 0 ? options.ambient : options.block_dim;
      UINorm norm = options.norm_spec.empty()
                        ? UINorm::trace(ambient)
                        : parse_norm_spec(options.norm_spec, ambient);
      report = m4_block_lift(b, options.block_dim, norm);
    } else {
      throw ParameterError("unknown counterexample kind: " + options.kind);
    }

    JsonWriter w(out);
    w.begin_object();
    w.key("command").value("counterexample");
    w.key("kind").value(options.kind);
    w.key("pm");
    write_partitioned(w, report.pm);
    w.key("norm");
    write_norm(w, report.norm);
    w.key("compression");
    write_compression(w, report.compression);
    w.key("witness").value(report.witness);
    w.key("construction_params");
    w.begin_object();
    for (const auto& [name, value] : report.construction_params) {
      w.key(name).value(value);
    }
    w.end_object();
    w.end_object();
    out << "\n";
    return kExitOk;
  });
}

namespace {

// One fuzz trial outcome; only failures are kept.
struct FuzzFailure {
  long trial = 0;
  ComplexMatrix input;
  bool has_compression = false;
  NormCompression compression;
  std::string error;  // consistency message when the trial threw
};

void write_fuzz_report(std::ostream& out, const FuzzOptions& options,
                       const std::string& norm_echo, long trials_run,
                       double worst_min_eigenvalue,
                       const std::vector<FuzzFailure>& failures) {
  JsonWriter w(out);
  w.begin_object();
  w.key("command").value("fuzz");
  w.key("mode").value(options.mode);
  w.key("trials").value(trials_run);
  w.key("failures").value(static_cast<long>(failures.size()));
  w.key("worst_min_eigenvalue").value(worst_min_eigenvalue);
  w.key("seed").value(options.seed);
  w.key("config");
  w.begin_object();
  w.key("sizes");
  write_int_array(w, options.sizes);
  w.key("norm");
  if (norm_echo.empty()) {
    w.value_null();
  } else {
    w.value(norm_echo);
  }
  w.key("tol").value(options.tol);
  w.end_object();
  w.key("failure_payloads");
  w.begin_array();
  for (const FuzzFailure& f : failures) {
    w.begin_object();
    w.key("trial").value(f.trial);
    w.key("matrix");
    write_matrix(w, f.input);
    if (f.has_compression) {
      w.key("compression");
      write_compression(w, f.compression);
    }
    if (!f.error.empty()) {
      w.key("error").value(f.error);
    }
    w.end_object();
  }
  w.end_array();
  w.end_object();
  out << "\n";
}

}  // namespace

int cmd_fuzz(const FuzzOptions& options, std::ostream& out,
             std::ostream& err) {
  return guard(err, [&]() {
    if (options.trials < 1) {
      throw ParameterError("--trials must be >= 1");
    }
    FuzzOptions opts = options;

    enum class Mode { kThm1, kThm2, kM2, kAbs3 };
    Mode mode;
    if (opts.mode == "thm1") {
      mode = Mode::kThm1;
    } else if (opts.mode == "thm2") {
      mode = Mode::kThm2;
    } else if (opts.mode == "m2") {
      mode = Mode::kM2;
    } else if (opts.mode == "abs3") {
      mode = Mode::kAbs3;
    } else {
      throw ParameterError("unknown fuzz mode: " + opts.mode);
    }

    // Per-mode shape of a trial: the partition, the norm, and what counts
    // as the expected outcome.
    UINorm norm;
    std::string norm_echo;
    switch (mode) {
      case Mode::kThm1:
        if (opts.sizes.empty()) opts.sizes = {2, 2, 2};
        if (opts.sizes.size() != 3) {
          throw ParameterError("mode thm1 needs --sizes n1,n2,n3");
        }
        if (!opts.norm_spec.empty() && opts.norm_spec != "trace") {
          throw ParameterError(
              "mode thm1 fuzzes the trace-norm statement; --norm is fixed "
              "to trace");
        }
        norm = UINorm::trace(
            *std::max_element(opts.sizes.begin(), opts.sizes.end()));
        norm_echo = norm.spec_string();
        break;
      case Mode::kThm2: {
        if (opts.sizes.size() != 3) {
          throw ParameterError("mode thm2 needs --sizes n1,n2,n3");
        }
        if (opts.norm_spec.empty()) {
          throw ParameterError("mode thm2 needs --norm");
        }
        norm = parse_norm_spec(
            opts.norm_spec,
            *std::max_element(opts.sizes.begin(), opts.sizes.end()));
        norm_echo = norm.spec_string();
        std::vector<int> sorted = opts.sizes;
        std::sort(sorted.begin(), sorted.end());
        const int k = std::min(sorted[0] + sorted[1], sorted[2]);
        ConditionBCertificate cert = condition_b(norm, k);
        if (!cert.holds) {
          throw ParameterError(
              "condition (b) fails for this norm at k = " + std::to_string(k) +
              " (slack " + format_double17(cert.slack) +
              "); positivity is not a theorem here -- run `counterexample "
              "--kind thm2` for a certified witness instead");
        }
        break;
      }
      case Mode::kM2:
        if (opts.sizes.empty()) opts.sizes = {2, 2};
        if (opts.sizes.size() != 2) {
          throw ParameterError("mode m2 needs --sizes n1,n2");
        }
        if (opts.norm_spec.empty()) opts.norm_spec = "trace";
        norm = parse_norm_spec(
            opts.norm_spec,
            *std::max_element(opts.sizes.begin(), opts.sizes.end()));
        norm_echo = norm.spec_string();
        break;
      case Mode::kAbs3:
        if (!opts.sizes.empty()) {
          throw ParameterError("mode abs3 works entrywise on 3x3; --sizes "
                               "does not apply");
        }
        if (!opts.norm_spec.empty()) {
          throw ParameterError("mode abs3 works entrywise; --norm does not "
                               "apply");
        }
        opts.sizes = {3};
        break;
    }

    int dim = 0;
    for (int s : opts.sizes) dim += s;

    std::vector<FuzzFailure> failures;
    double worst = std::numeric_limits<double>::infinity();
    for (long t = 0; t < opts.trials; ++t) {
      Rng rng(derive_seed(opts.seed, static_cast<std::uint64_t>(t)));
      const int rank = rng.uniform_int(1, dim);
      ComplexMatrix sample = random_psd(dim, rank, rng);
      try {
        switch (mode) {
          case Mode::kThm1:
          case Mode::kM2: {
            PartitionedMatrix pm(sample, opts.sizes);
            NormCompression c = mode == Mode::kM2
                                    ? compress_m2(pm, norm, opts.tol)
                                    : compress(pm, norm, opts.tol);
            worst = std::min(worst, c.verdict.min_eigenvalue);
            if (!c.verdict.is_psd) {
              failures.push_back({t, sample, true, c, ""});
            }
            break;
          }
          case Mode::kThm2: {
            PartitionedMatrix pm(sample, opts.sizes);
            SufficiencyResult r = sufficiency_check(pm, norm, opts.tol);
            worst = std::min(worst, r.compression.verdict.min_eigenvalue);
            if (!r.compression.verdict.is_psd) {
              failures.push_back({t, sample, true, r.compression, ""});
            }
            break;
          }
          case Mode::kAbs3: {
            PsdVerdict v = is_psd_scaled(abs_entries(sample), opts.tol);
            worst = std::min(worst, v.min_eigenvalue);
            if (!v.is_psd) {
              FuzzFailure f;
              f.trial = t;
              f.input = sample;
              f.error = "abs_entries verdict not PSD (min eigenvalue " +
                        format_double17(v.min_eigenvalue) + ")";
              failures.push_back(std::move(f));
            }
            break;
          }
        }
      } catch (const ConsistencyError& e) {
        FuzzFailure f;
        f.trial = t;
        f.input = sample;
        f.error = e.what();
        failures.push_back(std::move(f));
      }
    }

    write_fuzz_report(out, opts, norm_echo, opts.trials, worst, failures);
    return failures.empty() ? kExitOk : kExitInternal;
  });
}

}  // namespace blocknorm
