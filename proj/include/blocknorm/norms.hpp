#pragma once

#include <string>
#include <vector>

#include "blocknorm/matrix.hpp"

namespace blocknorm {

// A unitarily invariant norm on the n x n matrices (n = ambient_dim),
// extended to smaller blocks by zero padding.  Four families:
//   Schatten p : (sum s_j^p)^(1/p), p in [1, inf] (p = inf is the operator
//                norm, p = 1 the trace norm)
//   Ky Fan r   : sum of the r largest singular values
//   c-norm     : sum v_j s_j for a nonincreasing nonnegative weight vector v
//                with v_1 > 0
//   max-c      : max over a finite set of c-norm weight vectors
class UINorm {
 public:
  enum class Family { kSchatten, kKyFan, kCNorm, kMaxCNorm };

  UINorm() : UINorm(Family::kSchatten, 1.0, 0, {}, 1) {}  // trace norm on M_1

  static UINorm schatten(double p, int ambient_dim);
  static UINorm trace(int ambient_dim) { return schatten(1.0, ambient_dim); }
  static UINorm operator_norm(int ambient_dim);
  static UINorm ky_fan(int r, int ambient_dim);
  static UINorm c_norm(std::vector<double> weights, int ambient_dim);
  static UINorm max_c_norm(std::vector<std::vector<double>> weight_lists,
                           int ambient_dim);

  Family family() const { return family_; }
  double p() const { return p_; }
  int r() const { return r_; }
  const std::vector<std::vector<double>>& weight_lists() const {
    return weights_;
  }
  int ambient_dim() const { return ambient_; }

  // Canonical form of the parse grammar: "schatten:p=2", "kyfan:r=3",
  // "c:[1,0.5]", "maxc:[1,1];[2,0]".
  std::string spec_string() const;

 private:
  UINorm(Family family, double p, int r,
         std::vector<std::vector<double>> weights, int ambient_dim);

  Family family_;
  double p_;  // Schatten exponent; may be infinity
  int r_;     // Ky Fan order
  std::vector<std::vector<double>> weights_;  // c / max-c weight vectors
  int ambient_;
};

// Applies the norm to a block, implicitly zero-padded to ambient size.
// Rejects blocks with a side exceeding ambient_dim.
double eval_norm(const UINorm& norm, const ComplexMatrix& x);

// Rescales the weights so the norm of E_11 equals 1.  Schatten and Ky Fan
// instances are already normalized.
UINorm normalize(const UINorm& norm);

// Evidence for or against ||E_11 + ... + E_kk|| = k ||E_11||, evaluated on
// the normalized norm.  slack = k*norm_of_e11 - norm_of_partial_identity is
// nonnegative by the triangle inequality; the condition holds when it
// vanishes within tolerance.
struct ConditionBCertificate {
  int k = 0;
  double norm_of_e11 = 0.0;
  double norm_of_partial_identity = 0.0;
  bool holds = false;
  double slack = 0.0;
};
ConditionBCertificate condition_b(const UINorm& norm, int k, double tol);
ConditionBCertificate condition_b(const UINorm& norm, int k);  // tol = 1e-9*k

// Largest s with condition_b(norm, s) holding; always >= 1 since the s = 1
// case is an identity.  Negative tol selects the per-s default 1e-9*s.
int largest_flat_prefix(const UINorm& norm, double tol = -1.0);

// Grammar: "trace" | "op" | "schatten:p=<float|inf>" | "kyfan:r=<int>" |
// "c:[v1,v2,...]" | "maxc:[...];[...];..."
UINorm parse_norm_spec(const std::string& spec, int ambient_dim);

}  // namespace blocknorm
