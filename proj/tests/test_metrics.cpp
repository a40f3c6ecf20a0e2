#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "error.hpp"
#include "metrics.hpp"

using namespace greyfc::metrics;

namespace {

// Case 1 raw data and the reference GM(1,1) trajectory (k = 1..12).
const std::vector<double> k_case1_train = {
    1038.31, 1026.51, 1023.7,  1039.85, 1013.91, 1007.79,
    1010.34, 1037.56, 1042.31, 1047.26, 1083.62, 1121.39};
const std::vector<double> k_case1_gm_fitted = {
    1038.31, 1003.7, 1011.0, 1018.4, 1025.9, 1033.4,
    1041.0,  1048.6, 1056.3, 1064.1, 1071.9, 1079.7};
// Reference per-point GM errors (%), k = 2..12.
const std::vector<double> k_case1_gm_errors = {
    2.222092, 1.240598, 2.062798, 1.182551, 2.541204, 3.034622,
    1.064035, 1.342211, 1.608006, 1.08156,  3.717707};

}  // namespace

TEST_CASE("identical sequences score zero") {
  const std::vector<double> v = {3.0, 5.5, 8.25};
  CHECK(mape(v, v, false) == 0.0);
  CHECK(mse(v, v, false) == 0.0);
  CHECK(mae(v, v, false) == 0.0);
}

TEST_CASE("single point arithmetic") {
  const std::vector<double> actual = {100.0};
  const std::vector<double> predicted = {110.0};
  CHECK(mape(actual, predicted, false) == doctest::Approx(10.0));
}

TEST_CASE("hand-computed mse and mae") {
  const std::vector<double> actual = {1.0, 2.0};
  const std::vector<double> predicted = {2.0, 4.0};
  CHECK(mse(actual, predicted, false) == doctest::Approx(2.5));
  CHECK(mae(actual, predicted, false) == doctest::Approx(1.5));
}

TEST_CASE("skip-first convention reproduces the reference error average") {
  // Averaging the 11 reference per-point errors gives ~1.9179, the summary
  // value 1.9183 coming from unrounded fitted values; both confirm that the
  // in-sample score spans k = 2..12 (a 12-point mean would be ~1.758).
  double sum = 0.0;
  for (double e : k_case1_gm_errors) sum += e;
  const double reference_mean = sum / static_cast<double>(k_case1_gm_errors.size());
  CHECK(std::abs(reference_mean - 1.9183) < 1e-3);

  const double scored = mape(k_case1_train, k_case1_gm_fitted, true);
  CHECK(std::abs(scored - reference_mean) < 1e-3);

  const double all_points = mape(k_case1_train, k_case1_gm_fitted, false);
  CHECK(std::abs(all_points - 1.758) < 2e-3);
}

TEST_CASE("case 1 GM absolute-error magnitude from the reference values") {
  // Mean absolute deviation of the reference fitted values from the raw data.
  double sum = 0.0;
  for (std::size_t k = 1; k < k_case1_train.size(); ++k) {
    sum += std::abs(k_case1_gm_fitted[k] - k_case1_train[k]);
  }
  const double expected = sum / 11.0;
  CHECK(mae(k_case1_train, k_case1_gm_fitted, true) ==
        doctest::Approx(expected).epsilon(1e-12));
  CHECK(expected == doctest::Approx(20.05).epsilon(0.01));
}

TEST_CASE("mape rejects zero actuals on scored points") {
  const std::vector<double> with_zero = {0.0, 1.0};
  const std::vector<double> ones = {1.0, 1.0};
  CHECK_THROWS_AS(mape(with_zero, ones, false), greyfc::Error);
  // zero at the skipped point is fine
  CHECK_NOTHROW(mape(with_zero, ones, true));
}

TEST_CASE("length mismatch is rejected") {
  const std::vector<double> two = {1.0, 2.0};
  const std::vector<double> one = {1.0};
  CHECK_THROWS_AS(mse(two, one, false), greyfc::Error);
  CHECK_THROWS_AS(mae(one, two, false), greyfc::Error);
}

TEST_CASE("lewis grading bands") {
  CHECK(lewis_grade(2.87) == LewisGrade::high);
  CHECK(lewis_grade(0.0) == LewisGrade::high);
  CHECK(lewis_grade(9.999) == LewisGrade::high);
  CHECK(lewis_grade(10.0) == LewisGrade::good);
  CHECK(lewis_grade(19.999) == LewisGrade::good);
  CHECK(lewis_grade(20.0) == LewisGrade::reasonable);
  CHECK(lewis_grade(49.999) == LewisGrade::reasonable);
  CHECK(lewis_grade(50.0) == LewisGrade::inaccurate);
  CHECK(lewis_grade(55.0) == LewisGrade::inaccurate);
  CHECK_THROWS_AS(lewis_grade(-1.0), greyfc::Error);
  CHECK(std::string(to_string(LewisGrade::high)) == "high");
}

TEST_CASE("metric properties on random pairs") {
  std::mt19937 rng(31337);
  std::uniform_real_distribution<double> value(0.5, 50.0);
  std::uniform_real_distribution<double> scale(0.1, 10.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> actual(8), predicted(8);
    for (std::size_t i = 0; i < actual.size(); ++i) {
      actual[i] = value(rng);
      predicted[i] = value(rng);
    }
    const double m1 = mape(actual, predicted, false);
    const double e = mae(actual, predicted, false);
    const double s = mse(actual, predicted, false);
    CHECK(m1 >= 0.0);
    CHECK(e >= 0.0);
    CHECK(s >= 0.0);
    // Jensen: mean(|d|)^2 <= mean(d^2)
    CHECK(e * e <= s * (1.0 + 1e-12));
    // scale invariance of MAPE
    const double lambda = scale(rng);
    std::vector<double> actual_scaled(actual), predicted_scaled(predicted);
    for (std::size_t i = 0; i < actual.size(); ++i) {
      actual_scaled[i] *= lambda;
      predicted_scaled[i] *= lambda;
    }
    CHECK(mape(actual_scaled, predicted_scaled, false) ==
          doctest::Approx(m1).epsilon(1e-10));
  }
}

TEST_CASE("block collects all three with the shared convention") {
  const MetricBlock block_in = block(k_case1_train, k_case1_gm_fitted, true);
  CHECK(block_in.count == 11);
  CHECK(block_in.mape == mape(k_case1_train, k_case1_gm_fitted, true));
  CHECK(block_in.mse == mse(k_case1_train, k_case1_gm_fitted, true));
  CHECK(block_in.mae == mae(k_case1_train, k_case1_gm_fitted, true));
}
