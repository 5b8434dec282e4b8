#pragma once

#include <cstdint>
#include <random>

#include "blocknorm/matrix.hpp"

namespace blocknorm {

inline constexpr std::uint64_t kDefaultSeed = 42;

// Deterministic random source.  The distributions are hand-rolled on top of
// mt19937_64 because the standard library ones are implementation-defined,
// which would break reproducible reports across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  double uniform();                 // [0, 1)
  double normal();                  // standard normal via Box-Muller
  Complex complex_normal();         // E|z|^2 = 1
  int uniform_int(int lo, int hi);  // inclusive bounds

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Mixes a master seed with a trial index so independent trials get
// independent, reproducible streams.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

ComplexMatrix random_complex_matrix(int rows, int cols, Rng& rng);
ComplexMatrix random_real_matrix(int rows, int cols, Rng& rng);

// Gram matrix R* R with R a rank x dim array of iid complex standard
// normals: PSD by construction, rank at most `rank`.
ComplexMatrix random_psd(int dim, int rank, Rng& rng);
ComplexMatrix random_psd(int dim, int rank, std::uint64_t seed);

}  // namespace blocknorm
