#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/numpy.h>
#include <pybind11/stl.h>

#include <complex>
#include <cstring>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "blocknorm/counterexamples.hpp"
#include "blocknorm/errors.hpp"
#include "blocknorm/norms.hpp"
#include "blocknorm/partition.hpp"
#include "blocknorm/random.hpp"
#include "blocknorm/spectral.hpp"

namespace py = pybind11;

namespace {

using blocknorm::Complex;
using blocknorm::ComplexMatrix;

ComplexMatrix to_matrix(const py::array& input) {
  py::array_t<Complex, py::array::c_style | py::array::forcecast> a(input);
  if (a.ndim() != 2) {
    throw blocknorm::ParameterError("expected a 2-D array");
  }
  const int rows = static_cast<int>(a.shape(0));
  const int cols = static_cast<int>(a.shape(1));
  std::vector<Complex> entries(static_cast<size_t>(rows) * cols);
  std::memcpy(entries.data(), a.data(), entries.size() * sizeof(Complex));
  return ComplexMatrix(rows, cols, std::move(entries));
}

py::array_t<Complex> to_numpy(const ComplexMatrix& m) {
  py::array_t<Complex> out({m.rows(), m.cols()});
  auto view = out.mutable_unchecked<2>();
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) view(i, j) = m(i, j);
  }
  return out;
}

py::array_t<double> to_numpy_real(const ComplexMatrix& m) {
  py::array_t<double> out({m.rows(), m.cols()});
  auto view = out.mutable_unchecked<2>();
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) view(i, j) = m(i, j).real();
  }
  return out;
}

blocknorm::UINorm make_norm(const std::string& spec, int ambient) {
  return blocknorm::parse_norm_spec(spec, ambient);
}

// The compression result with numpy-facing fields.
struct PyCompression {
  py::array_t<double> values;
  blocknorm::PsdVerdict verdict;
  std::string norm_spec;
};

PyCompression wrap(const blocknorm::NormCompression& c) {
  return {to_numpy_real(c.values), c.verdict, c.norm_used.spec_string()};
}

struct PyCounterexample {
  py::array_t<Complex> matrix;
  std::vector<int> partition;
  std::string norm_spec;
  PyCompression compression;
  double witness = 0.0;
  std::map<std::string, double> construction_params;
};

PyCounterexample wrap(const blocknorm::CounterexampleReport& r) {
  return {to_numpy(r.pm.matrix()), r.pm.sizes(),  r.norm.spec_string(),
          wrap(r.compression),     r.witness,     r.construction_params};
}

int default_ambient(const ComplexMatrix& m, const std::vector<int>& partition) {
  blocknorm::PartitionedMatrix pm(m, partition);
  return pm.max_block_size();
}

}  // namespace

PYBIND11_MODULE(_blocknorm, m) {
  m.doc() = "norm compressions of block-partitioned PSD matrices";

  py::register_exception<blocknorm::Error>(m, "Error");

  py::class_<blocknorm::PsdVerdict>(m, "PsdVerdict")
      .def_readonly("is_psd", &blocknorm::PsdVerdict::is_psd)
      .def_readonly("min_eigenvalue", &blocknorm::PsdVerdict::min_eigenvalue)
      .def_readonly("hermitian_defect",
                    &blocknorm::PsdVerdict::hermitian_defect)
      .def_readonly("tolerance_used", &blocknorm::PsdVerdict::tolerance_used)
      .def("__bool__",
           [](const blocknorm::PsdVerdict& v) { return v.is_psd; })
      .def("__repr__", [](const blocknorm::PsdVerdict& v) {
        return "PsdVerdict(is_psd=" + std::string(v.is_psd ? "True" : "False") +
               ", min_eigenvalue=" + std::to_string(v.min_eigenvalue) + ")";
      });

  py::class_<PyCompression>(m, "NormCompression")
      .def_readonly("values", &PyCompression::values)
      .def_readonly("verdict", &PyCompression::verdict)
      .def_readonly("norm_spec", &PyCompression::norm_spec);

  py::class_<PyCounterexample>(m, "CounterexampleReport")
      .def_readonly("matrix", &PyCounterexample::matrix)
      .def_readonly("partition", &PyCounterexample::partition)
      .def_readonly("norm_spec", &PyCounterexample::norm_spec)
      .def_readonly("compression", &PyCounterexample::compression)
      .def_readonly("witness", &PyCounterexample::witness)
      .def_readonly("construction_params",
                    &PyCounterexample::construction_params);

  py::class_<blocknorm::ConditionBCertificate>(m, "ConditionBCertificate")
      .def_readonly("k", &blocknorm::ConditionBCertificate::k)
      .def_readonly("norm_of_e11",
                    &blocknorm::ConditionBCertificate::norm_of_e11)
      .def_readonly("norm_of_partial_identity",
                    &blocknorm::ConditionBCertificate::norm_of_partial_identity)
      .def_readonly("holds", &blocknorm::ConditionBCertificate::holds)
      .def_readonly("slack", &blocknorm::ConditionBCertificate::slack)
      .def("__bool__", [](const blocknorm::ConditionBCertificate& c) {
        return c.holds;
      });

  m.def(
      "is_psd",
      [](const py::array& a, double tol) {
        return blocknorm::is_psd(to_matrix(a), tol);
      },
      py::arg("matrix"), py::arg("tol") = -1.0,
      "PSD verdict; tol < 0 selects 1e-8 * max(1, spectral radius)");

  m.def(
      "eig_hermitian",
      [](const py::array& a) {
        blocknorm::HermitianEigen r = blocknorm::eig_hermitian(to_matrix(a));
        return py::make_tuple(r.values, to_numpy(r.vectors));
      },
      py::arg("matrix"),
      "(descending eigenvalues, unitary eigenvector columns)");

  m.def(
      "singular_values",
      [](const py::array& a) {
        return blocknorm::singular_values(to_matrix(a));
      },
      py::arg("matrix"));

  m.def(
      "abs_entries",
      [](const py::array& a) {
        return to_numpy_real(blocknorm::abs_entries(to_matrix(a)));
      },
      py::arg("matrix"), "entrywise absolute values of a square matrix");

  m.def(
      "eval_norm",
      [](const std::string& spec, int ambient, const py::array& a) {
        return blocknorm::eval_norm(make_norm(spec, ambient), to_matrix(a));
      },
      py::arg("norm"), py::arg("ambient"), py::arg("matrix"));

  m.def(
      "condition_b",
      [](const std::string& spec, int ambient, int k, double tol) {
        blocknorm::UINorm norm = make_norm(spec, ambient);
        return tol < 0.0 ? blocknorm::condition_b(norm, k)
                         : blocknorm::condition_b(norm, k, tol);
      },
      py::arg("norm"), py::arg("ambient"), py::arg("k"), py::arg("tol") = -1.0,
      "flatness certificate: ||E11+...+Ekk|| = k*||E11|| on the normalized "
      "norm");

  m.def(
      "largest_flat_prefix",
      [](const std::string& spec, int ambient, double tol) {
        return blocknorm::largest_flat_prefix(make_norm(spec, ambient), tol);
      },
      py::arg("norm"), py::arg("ambient"), py::arg("tol") = -1.0);

  m.def(
      "compress",
      [](const py::array& a, const std::vector<int>& partition,
         const std::string& spec, double tol) {
        ComplexMatrix matrix = to_matrix(a);
        blocknorm::PartitionedMatrix pm(matrix, partition);
        blocknorm::UINorm norm =
            make_norm(spec, default_ambient(matrix, partition));
        return wrap(pm.block_count() == 2
                        ? blocknorm::compress_m2(pm, norm, tol)
                        : blocknorm::compress(pm, norm, tol));
      },
      py::arg("matrix"), py::arg("partition"), py::arg("norm") = "trace",
      py::arg("tol") = 1e-8);

  m.def(
      "reduce_theorem1",
      [](const py::array& a, const std::vector<int>& partition, double tol) {
        blocknorm::ReductionTrace trace = blocknorm::reduce_theorem1(
            blocknorm::PartitionedMatrix(to_matrix(a), partition), tol);
        py::dict out;
        py::list stages;
        for (const auto& [label, snapshot] : trace.stages) {
          py::dict stage;
          stage["label"] = label;
          stage["partition"] = snapshot.sizes();
          stage["matrix"] = to_numpy(snapshot.matrix());
          stages.append(std::move(stage));
        }
        out["stages"] = std::move(stages);
        out["u12"] = to_numpy(trace.u12);
        out["u23"] = to_numpy(trace.u23);
        out["x"] = to_numpy(trace.x);
        out["d"] = trace.d;
        py::list triples;
        for (const ComplexMatrix& q : trace.q_triples) {
          triples.append(to_numpy(q));
        }
        out["q_triples"] = std::move(triples);
        out["q_blocks"] = to_numpy(trace.q_blocks.matrix());
        out["trace_matrix"] = to_numpy_real(trace.trace_matrix);
        return out;
      },
      py::arg("matrix"), py::arg("partition"), py::arg("tol") = 1e-8,
      "verified trace-norm reduction of a 3-block PSD matrix");

  m.def(
      "sufficiency_check",
      [](const py::array& a, const std::vector<int>& partition,
         const std::string& spec, double tol) {
        ComplexMatrix matrix = to_matrix(a);
        blocknorm::UINorm norm =
            make_norm(spec, default_ambient(matrix, partition));
        blocknorm::SufficiencyResult r = blocknorm::sufficiency_check(
            blocknorm::PartitionedMatrix(matrix, partition), norm, tol);
        return py::make_tuple(wrap(r.compression), r.epsilon);
      },
      py::arg("matrix"), py::arg("partition"), py::arg("norm"),
      py::arg("tol") = 1e-8);

  m.def(
      "random_psd",
      [](int dim, int rank, std::uint64_t seed) {
        return to_numpy(blocknorm::random_psd(dim, rank, seed));
      },
      py::arg("dim"), py::arg("rank"), py::arg("seed") = blocknorm::kDefaultSeed);

  m.def(
      "schatten_example",
      [](double p) { return wrap(blocknorm::schatten_example(p)); },
      py::arg("p"));

  m.def(
      "thm2_necessity",
      [](const std::string& spec, int n1, int n2, int n, int ambient) {
        blocknorm::UINorm norm = make_norm(spec, ambient > 0 ? ambient : n);
        return wrap(blocknorm::thm2_necessity(norm, n1, n2, n));
      },
      py::arg("norm"), py::arg("n1"), py::arg("n2"), py::arg("n"),
      py::arg("ambient") = 0);

  m.def(
      "thompson_search",
      [](long trials, std::uint64_t seed) {
        return to_numpy(blocknorm::thompson_search(trials, seed));
      },
      py::arg("trials") = 1000000, py::arg("seed") = blocknorm::kDefaultSeed);

  m.def(
      "m4_block_lift",
      [](const py::array& b, int block_dim, const std::string& spec,
         int ambient) {
        blocknorm::UINorm norm =
            make_norm(spec, ambient > 0 ? ambient : block_dim);
        return wrap(blocknorm::m4_block_lift(to_matrix(b), block_dim, norm));
      },
      py::arg("matrix"), py::arg("block_dim") = 1, py::arg("norm") = "trace",
      py::arg("ambient") = 0);
}
