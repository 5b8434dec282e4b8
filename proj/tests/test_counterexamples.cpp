#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "blocknorm/counterexamples.hpp"
#include "blocknorm/errors.hpp"
#include "blocknorm/norms.hpp"
#include "blocknorm/partition.hpp"
#include "blocknorm/random.hpp"
#include "blocknorm/spectral.hpp"
#include "support.hpp"

using namespace blocknorm;
using blocknorm::testing::cholesky_feasible;
using blocknorm::testing::det3_oracle;
using blocknorm::testing::make_real;

namespace {
const double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("det3 against the independent cofactor oracle") {
  Rng rng(501);
  for (int trial = 0; trial < 50; ++trial) {
    ComplexMatrix a = hermitian_part(random_complex_matrix(3, 3, rng));
    CHECK(det3(a) == doctest::Approx(det3_oracle(a)));
  }
  CHECK_THROWS_AS(det3(ComplexMatrix::identity(2)), DimensionError);
}

TEST_CASE("schatten_example") {
  for (double p : {1.5, 2.0, 3.0, kInf}) {
    CounterexampleReport r = schatten_example(p);

    CHECK(is_psd(r.pm.matrix()).is_psd);
    CHECK(cholesky_feasible(r.pm.matrix(), 1e-10));
    CHECK(r.pm.sizes() == std::vector<int>{1, 1, 2});
    CHECK_FALSE(r.compression.verdict.is_psd);

    const double diag = std::pow(2.0, 1.0 / p);  // 1 at p = inf
    ComplexMatrix expected = make_real(3, 3, {1, 0, 1, 0, 1, 1, 1, 1, diag});
    CHECK(max_abs_diff(r.compression.values, expected) <= 1e-12);

    CHECK(r.witness == doctest::Approx(diag - 2.0).epsilon(1e-12));
    CHECK(r.witness == doctest::Approx(det3_oracle(r.compression.values)));
    CHECK(r.construction_params.at("p") == p);

    // Entries agree with a from-scratch eval_norm on the blocks.
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        CHECK(r.compression.values(i, j).real() ==
              doctest::Approx(eval_norm(r.norm, r.pm.block(i, j))));
      }
    }
  }

  CHECK(schatten_example(2.0).witness ==
        doctest::Approx(std::numbers::sqrt2 - 2.0));
  CHECK(schatten_example(kInf).witness == doctest::Approx(-1.0));

  CHECK_THROWS_AS(schatten_example(1.0), ParameterError);
  CHECK_THROWS_AS(schatten_example(0.5), ParameterError);
  CHECK_THROWS_AS(schatten_example(std::nan("")), ParameterError);
}

TEST_CASE("thm2_necessity on hand-checked instances") {
  // Schatten inf on (1,1,2) reproduces the schatten_example(inf) compression.
  CounterexampleReport a =
      thm2_necessity(UINorm::operator_norm(2), 1, 1, 2);
  CHECK(a.construction_params.at("s") == 1.0);
  CHECK(a.construction_params.at("n1_tilde") == 1.0);
  CHECK(a.construction_params.at("n2_tilde") == 1.0);
  CHECK(a.construction_params.at("delta") == doctest::Approx(0.0));
  CHECK(a.witness == doctest::Approx(-1.0));
  CHECK(max_abs_diff(a.compression.values,
                     schatten_example(kInf).compression.values) <= 1e-9);

  // Ky Fan 2 on M_3, sizes (1,2,3): k = 3, s = 2, det = 2*(0-1) = -2.
  CounterexampleReport b = thm2_necessity(UINorm::ky_fan(2, 3), 1, 2, 3);
  CHECK(b.construction_params.at("k") == 3.0);
  CHECK(b.construction_params.at("s") == 2.0);
  CHECK(b.construction_params.at("n1_tilde") == 1.0);
  CHECK(b.construction_params.at("n2_tilde") == 2.0);
  CHECK(b.construction_params.at("delta") == doctest::Approx(0.0));
  CHECK(b.witness == doctest::Approx(-2.0));

  // Schatten 1.5 on (2,2,4): s = 1, delta = 2^(2/3) - 1.
  CounterexampleReport c = thm2_necessity(UINorm::schatten(1.5, 4), 2, 2, 4);
  CHECK(c.construction_params.at("s") == 1.0);
  const double delta = std::pow(2.0, 2.0 / 3.0) - 1.0;
  CHECK(c.construction_params.at("delta") == doctest::Approx(delta));
  CHECK(c.witness == doctest::Approx(delta - 1.0));
}

TEST_CASE("thm2_necessity certifies itself on a grid of failing norms") {
  std::vector<UINorm> failing;
  failing.push_back(UINorm::schatten(1.5, 4));
  failing.push_back(UINorm::schatten(2, 4));
  failing.push_back(UINorm::operator_norm(4));
  failing.push_back(UINorm::ky_fan(1, 4));
  failing.push_back(UINorm::ky_fan(2, 4));
  failing.push_back(UINorm::c_norm({1.0, 0.25}, 4));
  failing.push_back(UINorm::max_c_norm({{1.0, 1.0}, {1.5, 0.0}}, 4));

  for (const UINorm& norm : failing) {
    for (int n1 = 1; n1 <= 2; ++n1) {
      for (int n2 = n1; n2 <= 3; ++n2) {
        for (int n = std::max(n2, 2); n <= 4; ++n) {
          const int k = std::min(n1 + n2, n);
          if (condition_b(normalize(norm), k).holds) continue;

          CounterexampleReport r = thm2_necessity(norm, n1, n2, n);

          CHECK(is_psd(r.pm.matrix()).is_psd);
          CHECK(cholesky_feasible(hermitian_part(r.pm.matrix()), 1e-10));
          CHECK_FALSE(r.compression.verdict.is_psd);

          const double s = r.construction_params.at("s");
          const double delta = r.construction_params.at("delta");
          const double expected_det = r.construction_params.at("n1_tilde") *
                                      r.construction_params.at("n2_tilde") *
                                      (delta - 1.0);
          CHECK(delta >= 0.0);
          CHECK(delta < 1.0);
          CHECK(s < k);
          CHECK(det3_oracle(r.compression.values) ==
                doctest::Approx(expected_det)
                    .epsilon(1e-9 * std::max(1.0, s + delta)));
          CHECK(r.witness == doctest::Approx(expected_det));
        }
      }
    }
  }
}

TEST_CASE("thm2_necessity gates") {
  // Condition (b) holds: no counterexample exists.
  CHECK_THROWS_AS(thm2_necessity(UINorm::trace(3), 1, 1, 3), ParameterError);
  CHECK_THROWS_AS(thm2_necessity(UINorm::ky_fan(2, 3), 1, 1, 3),
                  ParameterError);  // k = 2 <= r
  // Size ordering n1 <= n2 <= n is required.
  CHECK_THROWS_AS(thm2_necessity(UINorm::schatten(2, 3), 2, 1, 3),
                  ParameterError);
  CHECK_THROWS_AS(thm2_necessity(UINorm::schatten(2, 3), 0, 1, 3),
                  ParameterError);
  // Ambient must cover n.
  CHECK_THROWS_AS(thm2_necessity(UINorm::schatten(2, 2), 1, 1, 3),
                  DimensionError);
}

TEST_CASE("thompson_search finds a certified seed matrix") {
  ComplexMatrix b = thompson_search(1000000, kDefaultSeed);
  REQUIRE(b.rows() == 4);
  REQUIRE(b.cols() == 4);
  CHECK(is_psd(b, 1e-8).is_psd);
  CHECK_FALSE(is_psd(abs_entries(b), 1e-8).is_psd);
  CHECK(cholesky_feasible(b, 1e-8));
  CHECK_FALSE(cholesky_feasible(abs_entries(b), 1e-8));
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) CHECK(b(i, j).imag() == 0.0);
  }

  // Determinism: same seed, same matrix.
  CHECK(max_abs_diff(b, thompson_search(1000000, kDefaultSeed)) == 0.0);

  // A absurdly small budget cannot find anything.
  CHECK_THROWS_AS(thompson_search(1, 999999), NotFoundError);
}

TEST_CASE("no 3x3 analogue exists (negative control for the search)") {
  Rng rng(502);
  for (int trial = 0; trial < 2000; ++trial) {
    ComplexMatrix r = random_real_matrix(3, rng.uniform_int(1, 3), rng);
    ComplexMatrix b = r * r.adjoint();
    CHECK(is_psd_scaled(abs_entries(b), 1e-8).is_psd);
  }
}

TEST_CASE("m4_block_lift") {
  ComplexMatrix b = thompson_search(1000000, kDefaultSeed);

  CounterexampleReport scalar = m4_block_lift(b, 1, UINorm::trace(1));
  CHECK(max_abs_diff(scalar.compression.values, abs_entries(b)) <= 1e-12);
  CHECK_FALSE(scalar.compression.verdict.is_psd);
  CHECK(scalar.witness < 0.0);
  CHECK(scalar.construction_params.at("gamma") == doctest::Approx(1.0));

  // gamma = ||E11|| = 1 for every Schatten norm, any block size.
  CounterexampleReport lifted = m4_block_lift(b, 3, UINorm::schatten(2, 3));
  CHECK(lifted.pm.dim() == 12);
  CHECK(is_psd(lifted.pm.matrix()).is_psd);
  CHECK(max_abs_diff(lifted.compression.values, abs_entries(b)) <= 1e-9);

  // Homogeneity: doubling the norm doubles the compression.
  CounterexampleReport base = m4_block_lift(b, 2, UINorm::c_norm({1.0, 0.5}, 2));
  CounterexampleReport doubled =
      m4_block_lift(b, 2, UINorm::c_norm({2.0, 1.0}, 2));
  CHECK(max_abs_diff(doubled.compression.values,
                     2.0 * base.compression.values) <= 1e-9);
  CHECK(doubled.construction_params.at("gamma") ==
        doctest::Approx(2.0 * base.construction_params.at("gamma")));

  // Precondition gates.
  CHECK_THROWS_AS(m4_block_lift(ComplexMatrix::identity(3), 1,
                                UINorm::trace(1)),
                  ParameterError);  // m < 4
  CHECK_THROWS_AS(m4_block_lift(make_real(2, 2, {1, 2, 2, 1}), 1,
                                UINorm::trace(1)),
                  ParameterError);  // not square enough blocks (m < 4)
  ComplexMatrix ones(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) ones(i, j) = 1.0;
  CHECK_THROWS_AS(m4_block_lift(ones, 1, UINorm::trace(1)),
                  ParameterError);  // abs_entries(ones) is still PSD
  CHECK_THROWS_AS(m4_block_lift(b, 0, UINorm::trace(1)), ParameterError);
  CHECK_THROWS_AS(m4_block_lift(b, 3, UINorm::trace(2)), DimensionError);
}
