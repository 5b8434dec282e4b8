#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "blocknorm/errors.hpp"
#include "blocknorm/norms.hpp"
#include "blocknorm/random.hpp"
#include "blocknorm/spectral.hpp"
#include "support.hpp"

using namespace blocknorm;
using blocknorm::testing::make_real;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

ComplexMatrix e11() { return make_real(1, 1, {1}); }

double trace_norm_of(const ComplexMatrix& x) {
  double sum = 0.0;
  for (double s : singular_values(x)) sum += s;
  return sum;
}

// A representative instance of every family on the given ambient dimension.
std::vector<UINorm> norm_grid(int n) {
  std::vector<UINorm> grid;
  grid.push_back(UINorm::trace(n));
  grid.push_back(UINorm::schatten(1.5, n));
  grid.push_back(UINorm::schatten(2, n));
  grid.push_back(UINorm::operator_norm(n));
  for (int r = 1; r <= n; ++r) grid.push_back(UINorm::ky_fan(r, n));
  grid.push_back(UINorm::c_norm({1.0, 0.5}, n));
  grid.push_back(UINorm::c_norm(std::vector<double>(n, 1.0), n));
  grid.push_back(UINorm::max_c_norm({{1.0, 1.0}, {2.0, 0.0}}, n));
  return grid;
}

}  // namespace

TEST_CASE("factory validation") {
  CHECK_THROWS_AS(UINorm::schatten(0.5, 3), ParameterError);
  CHECK_THROWS_AS(UINorm::schatten(std::nan(""), 3), ParameterError);
  CHECK_THROWS_AS(UINorm::schatten(2, 0), DimensionError);
  CHECK_THROWS_AS(UINorm::ky_fan(0, 3), ParameterError);
  CHECK_THROWS_AS(UINorm::ky_fan(4, 3), ParameterError);
  CHECK_THROWS_AS(UINorm::c_norm({}, 3), ParameterError);
  CHECK_THROWS_AS(UINorm::c_norm({0.0, 0.0}, 3), ParameterError);   // v1 = 0
  CHECK_THROWS_AS(UINorm::c_norm({1.0, 2.0}, 3), ParameterError);   // increasing
  CHECK_THROWS_AS(UINorm::c_norm({1.0, -0.1}, 3), ParameterError);  // negative
  CHECK_THROWS_AS(UINorm::c_norm({1.0, 1.0, 1.0, 1.0}, 3),
                  DimensionError);  // longer than ambient
  CHECK_THROWS_AS(UINorm::max_c_norm({}, 3), ParameterError);
}

TEST_CASE("eval_norm on hand-checked inputs") {
  CHECK(eval_norm(UINorm::trace(2), make_real(2, 2, {3, 0, 0, -4})) ==
        doctest::Approx(7.0));

  for (double p : {1.5, 2.0, 3.0}) {
    CHECK(eval_norm(UINorm::schatten(p, 2), ComplexMatrix::identity(2)) ==
          doctest::Approx(std::pow(2.0, 1.0 / p)));
  }
  CHECK(eval_norm(UINorm::schatten(kInf, 2), ComplexMatrix::identity(2)) ==
        doctest::Approx(1.0));

  CHECK(eval_norm(UINorm::ky_fan(2, 3),
                  make_real(3, 3, {5, 0, 0, 0, 3, 0, 0, 0, 1})) ==
        doctest::Approx(8.0));

  CHECK(eval_norm(UINorm::c_norm({1.0, 0.5, 0.0}, 3),
                  2.0 * ComplexMatrix::identity(3)) == doctest::Approx(3.0));

  // Oversized block is rejected.
  CHECK_THROWS_AS(eval_norm(UINorm::trace(2), ComplexMatrix::identity(3)),
                  DimensionError);
}

TEST_CASE("schatten norms do not overflow on extreme inputs") {
  ComplexMatrix big = 1e200 * ComplexMatrix::identity(2);
  CHECK(eval_norm(UINorm::schatten(300.0, 2), big) ==
        doctest::Approx(1e200 * std::pow(2.0, 1.0 / 300.0)));
  CHECK(eval_norm(UINorm::schatten(kInf, 2), big) == doctest::Approx(1e200));
}

TEST_CASE("normalize") {
  UINorm c = normalize(UINorm::c_norm({2.0, 1.0, 0.0}, 3));
  REQUIRE(c.weight_lists().size() == 1);
  CHECK(c.weight_lists()[0][0] == doctest::Approx(1.0));
  CHECK(c.weight_lists()[0][1] == doctest::Approx(0.5));
  CHECK(c.weight_lists()[0][2] == doctest::Approx(0.0));

  UINorm s = normalize(UINorm::schatten(2.5, 4));
  CHECK(s.p() == doctest::Approx(2.5));
  CHECK(eval_norm(s, e11()) == doctest::Approx(1.0));

  UINorm m = normalize(UINorm::max_c_norm({{3.0, 1.0}, {2.0, 2.0}}, 4));
  CHECK(eval_norm(m, e11()) == doctest::Approx(1.0));
}

TEST_CASE("condition_b closed forms") {
  // Trace norm: holds at every k.
  for (int k = 1; k <= 5; ++k) {
    ConditionBCertificate cert = condition_b(UINorm::trace(5), k);
    CHECK(cert.holds);
    CHECK(std::abs(cert.slack) <= 1e-9 * k);
  }

  ConditionBCertificate s2 = condition_b(UINorm::schatten(2, 4), 2);
  CHECK_FALSE(s2.holds);
  CHECK(s2.slack == doctest::Approx(2.0 - std::sqrt(2.0)));
  CHECK(s2.norm_of_e11 == doctest::Approx(1.0));
  CHECK(s2.norm_of_partial_identity == doctest::Approx(std::sqrt(2.0)));

  for (int r = 1; r <= 4; ++r) {
    for (int k = 1; k <= 4; ++k) {
      CHECK(condition_b(UINorm::ky_fan(r, 4), k).holds == (r >= k));
    }
  }

  CHECK(condition_b(UINorm::c_norm({1.0, 1.0, 0.0}, 3), 2).holds);
  ConditionBCertificate c3 = condition_b(UINorm::c_norm({1.0, 1.0, 0.0}, 3), 3);
  CHECK_FALSE(c3.holds);
  CHECK(c3.slack == doctest::Approx(1.0));

  CHECK_THROWS_AS(condition_b(UINorm::trace(3), 0), DimensionError);
  CHECK_THROWS_AS(condition_b(UINorm::trace(3), 4), DimensionError);

  // Subadditivity keeps slack nonnegative (beyond noise) on a whole grid.
  for (const UINorm& norm : norm_grid(5)) {
    for (int k = 1; k <= 5; ++k) {
      CHECK(condition_b(norm, k).slack >= -1e-9 * k);
    }
  }
}

TEST_CASE("largest_flat_prefix") {
  for (double p : {1.5, 2.0, 3.0, kInf}) {
    CHECK(largest_flat_prefix(UINorm::schatten(p, 5)) == 1);
  }
  CHECK(largest_flat_prefix(UINorm::trace(5)) == 5);
  for (int r = 1; r <= 5; ++r) {
    CHECK(largest_flat_prefix(UINorm::ky_fan(r, 5)) == r);
  }
  CHECK(largest_flat_prefix(UINorm::c_norm({1.0, 1.0, 0.5}, 4)) == 2);

  // The prefix is flat: condition_b holds up to s and fails beyond it.
  for (const UINorm& norm : norm_grid(4)) {
    const int s = largest_flat_prefix(norm);
    for (int k = 1; k <= 4; ++k) {
      CHECK(condition_b(norm, k).holds == (k <= s));
    }
  }
}

TEST_CASE("norm spec grammar") {
  CHECK(parse_norm_spec("trace", 3).spec_string() == "schatten:p=1");
  CHECK(parse_norm_spec("op", 3).spec_string() == "schatten:p=inf");
  CHECK(parse_norm_spec("schatten:p=2.5", 3).p() == doctest::Approx(2.5));
  CHECK(parse_norm_spec("schatten:p=inf", 3).spec_string() ==
        "schatten:p=inf");
  CHECK(parse_norm_spec("kyfan:r=2", 3).r() == 2);
  UINorm c = parse_norm_spec("c:[1,0.5,0]", 3);
  REQUIRE(c.weight_lists().size() == 1);
  CHECK(c.weight_lists()[0][1] == doctest::Approx(0.5));
  UINorm mc = parse_norm_spec("maxc:[1,1];[2,0]", 3);
  CHECK(mc.weight_lists().size() == 2);

  // Canonical spec strings parse back to the same norm.
  for (const UINorm& norm : norm_grid(4)) {
    UINorm reparsed = parse_norm_spec(norm.spec_string(), 4);
    CHECK(reparsed.spec_string() == norm.spec_string());
  }

  CHECK_THROWS_AS(parse_norm_spec("", 3), ParseError);
  CHECK_THROWS_AS(parse_norm_spec("frobenius", 3), ParseError);
  CHECK_THROWS_AS(parse_norm_spec("schatten:p=", 3), ParseError);
  CHECK_THROWS_AS(parse_norm_spec("schatten:p=two", 3), ParseError);
  CHECK_THROWS_AS(parse_norm_spec("kyfan:r=2.5", 3), ParseError);
  CHECK_THROWS_AS(parse_norm_spec("c:[]", 3), ParameterError);
  CHECK_THROWS_AS(parse_norm_spec("c:[1,0.5", 3), ParseError);
  CHECK_THROWS_AS(parse_norm_spec("maxc:[1];[", 3), ParseError);
  // Well-formed but invalid values surface the factory's error.
  CHECK_THROWS_AS(parse_norm_spec("schatten:p=0.5", 3), ParameterError);
  CHECK_THROWS_AS(parse_norm_spec("kyfan:r=9", 3), ParameterError);
  CHECK_THROWS_AS(parse_norm_spec("c:[0,0]", 3), ParameterError);
}

TEST_CASE("norm axioms on random inputs") {
  Rng rng(301);
  for (const UINorm& norm : norm_grid(4)) {
    for (int trial = 0; trial < 10; ++trial) {
      ComplexMatrix x = random_complex_matrix(4, 4, rng);
      ComplexMatrix y = random_complex_matrix(4, 4, rng);
      const double nx = eval_norm(norm, x);
      const double ny = eval_norm(norm, y);
      const double scale = std::max(1.0, nx + ny);

      CHECK(nx >= 0.0);
      CHECK(eval_norm(norm, x + y) <= nx + ny + 1e-9 * scale);
      const Complex phase = std::polar(2.0, 0.7);
      CHECK(eval_norm(norm, phase * x) == doctest::Approx(2.0 * nx).epsilon(1e-9));
    }
    CHECK(eval_norm(norm, ComplexMatrix(4, 4)) == 0.0);
  }
}

TEST_CASE("unitary invariance") {
  Rng rng(302);
  for (const UINorm& norm : norm_grid(4)) {
    for (int trial = 0; trial < 5; ++trial) {
      ComplexMatrix x = random_complex_matrix(4, 4, rng);
      ComplexMatrix u = polar(random_complex_matrix(4, 4, rng),
                              PolarSide::kLeft).u;
      ComplexMatrix v = polar(random_complex_matrix(4, 4, rng),
                              PolarSide::kLeft).u;
      const double nx = eval_norm(norm, x);
      CHECK(std::abs(eval_norm(norm, u * x * v) - nx) <=
            1e-9 * std::max(1.0, nx));
    }
  }
}

TEST_CASE("family coincidences") {
  Rng rng(303);
  const int n = 4;
  UINorm tr = UINorm::trace(n);
  UINorm kf_full = UINorm::ky_fan(n, n);
  UINorm ones = UINorm::c_norm(std::vector<double>(n, 1.0), n);
  UINorm op = UINorm::operator_norm(n);
  UINorm kf1 = UINorm::ky_fan(1, n);
  for (int trial = 0; trial < 25; ++trial) {
    ComplexMatrix x = random_complex_matrix(n, n, rng);
    const double a = eval_norm(tr, x);
    CHECK(std::abs(eval_norm(kf_full, x) - a) <= 1e-9 * std::max(1.0, a));
    CHECK(std::abs(eval_norm(ones, x) - a) <= 1e-9 * std::max(1.0, a));
    const double b = eval_norm(op, x);
    CHECK(std::abs(eval_norm(kf1, x) - b) <= 1e-9 * std::max(1.0, b));
  }
}

TEST_CASE("zero-pad invariance for rectangular blocks") {
  Rng rng(304);
  for (const UINorm& norm : norm_grid(5)) {
    ComplexMatrix x = random_complex_matrix(2, 4, rng);
    CHECK(eval_norm(norm, x) ==
          doctest::Approx(eval_norm(norm, zero_pad(x, 5, 5))));
  }
}

TEST_CASE("rank-k dominance behind the sufficiency proof") {
  Rng rng(305);
  const int n = 5;
  for (const UINorm& raw : norm_grid(n)) {
    UINorm norm = normalize(raw);
    for (int k = 1; k <= n; ++k) {
      if (!condition_b(norm, k).holds) continue;
      for (int trial = 0; trial < 5; ++trial) {
        // rank <= k: the norm collapses to the trace norm.
        ComplexMatrix low = random_complex_matrix(n, k, rng) *
                            random_complex_matrix(k, n, rng);
        const double tn = trace_norm_of(low);
        CHECK(std::abs(eval_norm(norm, low) - tn) <=
              1e-8 * std::max(1.0, tn));
      }
      if (k < n) {
        // rank > k: still dominates the Ky Fan k part.
        ComplexMatrix full = random_complex_matrix(n, n, rng);
        std::vector<double> s = singular_values(full);
        double top = 0.0;
        for (int j = 0; j < k; ++j) top += s[j];
        CHECK(eval_norm(norm, full) >= top - 1e-8 * std::max(1.0, top));
      }
    }
  }
}
