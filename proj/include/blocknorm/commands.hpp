#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "blocknorm/random.hpp"

namespace blocknorm {

// Exit codes shared by every command: 0 success (and positive verdicts),
// 1 negative verdict, 2 input/parameter problems, 3 internal-consistency
// failures (a proven theorem failing numerically).
inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitInternal = 3;

struct CheckOptions {
  std::string matrix_path;
  std::vector<int> partition;  // overrides the file's partition when set
  std::string norm_spec = "trace";
  double tol = 1e-8;
};

struct ReduceOptions {
  std::string matrix_path;
  std::vector<int> partition;
  double tol = 1e-8;
};

struct CertifyOptions {
  std::string norm_spec;
  int ambient = 0;
  int k = 0;
  double tol = -1.0;  // negative selects the per-k default 1e-9*k
};

struct CounterexampleOptions {
  std::string kind;                   // schatten | thm2 | thompson | m4
  double p = 2.0;                     // schatten: exponent
  std::string norm_spec;              // thm2 / m4
  int ambient = 0;                    // 0 = derive from sizes/block-dim
  std::vector<int> sizes;             // thm2: n1, n2, n
  long trials = 1000000;              // thompson / m4 seed search budget
  std::uint64_t seed = kDefaultSeed;  // thompson / m4 seed search
  int block_dim = 1;                  // m4
  std::string matrix_path;            // m4: optional seed matrix file
  double tol = 1e-8;
};

struct FuzzOptions {
  std::string mode;  // thm1 | thm2 | m2 | abs3
  std::vector<int> sizes;
  std::string norm_spec;
  long trials = 1000;
  std::uint64_t seed = kDefaultSeed;
  double tol = 1e-8;
};

int cmd_check(const CheckOptions& options, std::ostream& out,
              std::ostream& err);
int cmd_reduce(const ReduceOptions& options, std::ostream& out,
               std::ostream& err);
int cmd_certify(const CertifyOptions& options, std::ostream& out,
                std::ostream& err);
int cmd_counterexample(const CounterexampleOptions& options, std::ostream& out,
                       std::ostream& err);
int cmd_fuzz(const FuzzOptions& options, std::ostream& out, std::ostream& err);

}  // namespace blocknorm
