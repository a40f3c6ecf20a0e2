#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "fracops.hpp"

using greyfc::fracops::background;
using greyfc::fracops::fago;
using greyfc::fracops::gen_binomial;
using greyfc::fracops::ifago;

namespace {

// Independent oracle: Gamma(order+j) / (Gamma(order) * Gamma(j+1)).
double gamma_ratio(double order, int j) {
  return std::tgamma(order + j) / (std::tgamma(order) * std::tgamma(j + 1.0));
}

double max_abs(const std::vector<double> &v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

std::vector<double> random_series(std::mt19937 &rng, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len_dist(1, max_len);
  std::uniform_real_distribution<double> value_dist(0.1, 100.0);
  std::vector<double> x(len_dist(rng));
  for (double &v : x) v = value_dist(rng);
  return x;
}

}  // namespace

TEST_CASE("gen_binomial basic values") {
  CHECK(gen_binomial(0.5, 0) == 1.0);
  CHECK(gen_binomial(1.0, 3) == 1.0);
  CHECK(gen_binomial(0.5, 2) == doctest::Approx(0.375).epsilon(1e-15));
  CHECK(gen_binomial(0.5, 2) ==
        doctest::Approx(gamma_ratio(0.5, 2)).epsilon(1e-13));
  // order 0: identity weights
  CHECK(gen_binomial(0.0, 0) == 1.0);
  CHECK(gen_binomial(0.0, 1) == 0.0);
  CHECK(gen_binomial(0.0, 5) == 0.0);
  // order -1: first-difference weights
  CHECK(gen_binomial(-1.0, 1) == -1.0);
  CHECK(gen_binomial(-1.0, 2) == 0.0);
}

TEST_CASE("gen_binomial agrees with the gamma-ratio oracle") {
  const double orders[] = {-1.999, -1.5, -0.75, -0.3,  0.25, 0.5,
                           1.0,    1.5,  2.0,   2.375, 3.0};
  for (double order : orders) {
    for (int j = 0; j <= 50; ++j) {
      const double expected = gamma_ratio(order, j);
      const double got = gen_binomial(order, j);
      CHECK(std::abs(got - expected) <=
            1e-12 * std::max(1e-300, std::abs(expected)));
    }
  }
}

TEST_CASE("fago examples") {
  const std::vector<double> counting = {1.0, 2.0, 3.0};
  CHECK(fago(counting, 1.0) == std::vector<double>{1.0, 3.0, 6.0});
  CHECK(fago(counting, 0.0) == counting);
  const std::vector<double> ones = {1.0, 1.0, 1.0};
  const std::vector<double> half = fago(ones, 0.5);
  CHECK(half[0] == 1.0);
  CHECK(half[1] == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(half[2] == doctest::Approx(1.875).epsilon(1e-15));
}

TEST_CASE("ifago examples") {
  const std::vector<double> sums = {1.0, 3.0, 6.0};
  const std::vector<double> restored = ifago(sums, 1.0);
  CHECK(restored[0] == doctest::Approx(1.0));
  CHECK(restored[1] == doctest::Approx(2.0));
  CHECK(restored[2] == doctest::Approx(3.0));

  const std::vector<double> half = {1.0, 1.5, 1.875};
  const std::vector<double> ones = ifago(half, 0.5);
  for (double v : ones) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));

  // first element passes through
  const std::vector<double> pair = {4.25, 9.0};
  CHECK(ifago(pair, 0.7)[0] == 4.25);
}

TEST_CASE("background examples") {
  const std::vector<double> sums = {1.0, 3.0, 6.0};
  CHECK(background(sums) == std::vector<double>{2.0, 4.5});
  const std::vector<double> constant = {7.5, 7.5, 7.5};
  CHECK(background(constant) == std::vector<double>{7.5, 7.5});
  const std::vector<double> ones = {1.0, 1.0, 1.0};
  const std::vector<double> z = background(fago(ones, 0.5));
  CHECK(z[0] == doctest::Approx(1.25).epsilon(1e-15));
  CHECK(z[1] == doctest::Approx(1.6875).epsilon(1e-15));
}

TEST_CASE("identity and cumulation are exact") {
  std::mt19937 rng(1234);
  for (int trial = 0; trial < 200; ++trial) {
    const std::vector<double> x = random_series(rng, 20);
    CHECK(fago(x, 0.0) == x);
    const std::vector<double> sums = fago(x, 1.0);
    double running = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
      running += x[k];
      CHECK(sums[k] == running);
    }
  }
}

TEST_CASE("semigroup property") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> order_dist(-1.0, 2.0);
  for (int trial = 0; trial < 300; ++trial) {
    const std::vector<double> x = random_series(rng, 20);
    const double a = order_dist(rng);
    const double b = order_dist(rng);
    const std::vector<double> two_step = fago(fago(x, a), b);
    const std::vector<double> direct = fago(x, a + b);
    const double scale = std::max(1.0, max_abs(direct));
    for (std::size_t k = 0; k < x.size(); ++k) {
      CHECK(std::abs(two_step[k] - direct[k]) <= 1e-9 * scale);
    }
  }
}

TEST_CASE("round-trip property") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> order_dist(-1.0, 2.0);
  for (int trial = 0; trial < 300; ++trial) {
    const std::vector<double> x = random_series(rng, 20);
    const double order = order_dist(rng);
    const std::vector<double> back = ifago(fago(x, order), order);
    const double scale = max_abs(x);
    for (std::size_t k = 0; k < x.size(); ++k) {
      CHECK(std::abs(back[k] - x[k]) <= 1e-8 * scale);
    }
  }
}

TEST_CASE("tagged accumulation pairs the order with the transform") {
  using greyfc::fracops::accumulate;
  using greyfc::fracops::AccumulatedSeries;
  using greyfc::fracops::restore;

  const std::vector<double> x = {2.0, 4.0, 8.0, 16.0};
  const AccumulatedSeries identity = accumulate(x, 0.0);
  CHECK(identity.values == x);
  CHECK(identity.order == 0.0);
  CHECK(identity.source_len == x.size());

  const AccumulatedSeries sums = accumulate(x, 1.0);
  CHECK(sums.values == std::vector<double>{2.0, 6.0, 14.0, 30.0});

  const AccumulatedSeries half = accumulate(x, 0.5);
  CHECK(half.values.size() == half.source_len);
  const std::vector<double> back = restore(half);
  for (std::size_t k = 0; k < x.size(); ++k) {
    CHECK(back[k] == doctest::Approx(x[k]).epsilon(1e-12));
  }
}

TEST_CASE("positivity for positive orders, monotonicity from order one") {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> pos_order(1e-3, 2.0);
  std::uniform_real_distribution<double> mono_order(1.0, 2.0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::vector<double> x = random_series(rng, 20);
    const std::vector<double> acc = fago(x, pos_order(rng));
    for (double v : acc) CHECK(v > 0.0);
    const std::vector<double> steep = fago(x, mono_order(rng));
    for (std::size_t k = 1; k < steep.size(); ++k) {
      CHECK(steep[k] >= steep[k - 1]);
    }
  }
}
