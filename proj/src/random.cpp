#include "blocknorm/random.hpp"

#include <cmath>
#include <numbers>

namespace blocknorm {

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]: keeps the log finite
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  have_spare_ = true;
  return radius * std::cos(angle);
}

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return Complex(re, im) * (1.0 / std::numbers::sqrt2);
}

int Rng::uniform_int(int lo, int hi) {
  if (lo > hi) throw ParameterError("uniform_int: empty range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(engine_() % span);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  // splitmix64 finalizer over a golden-ratio blend of master and index
  std::uint64_t x = master ^ (0x9E3779B97F4A7C15ULL * (index + 1));
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

ComplexMatrix random_complex_matrix(int rows, int cols, Rng& rng) {
  ComplexMatrix out(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) out(i, j) = rng.complex_normal();
  return out;
}

ComplexMatrix random_real_matrix(int rows, int cols, Rng& rng) {
  ComplexMatrix out(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) out(i, j) = rng.normal();
  return out;
}

ComplexMatrix random_psd(int dim, int rank, Rng& rng) {
  if (rank < 1 || rank > dim)
    throw ParameterError("random_psd: rank must satisfy 1 <= rank <= dim");
  const ComplexMatrix r = random_complex_matrix(rank, dim, rng);
  ComplexMatrix out(dim, dim);  // R* R, assembled exactly Hermitian
  for (int i = 0; i < dim; ++i) {
    for (int j = i; j < dim; ++j) {
      Complex sum = 0.0;
      for (int t = 0; t < rank; ++t) sum += std::conj(r(t, i)) * r(t, j);
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

ComplexMatrix random_psd(int dim, int rank, std::uint64_t seed) {
  Rng rng(seed);
  return random_psd(dim, rank, rng);
}

}  // namespace blocknorm
