#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "error.hpp"
#include "metrics.hpp"
#include "models.hpp"
#include "optimize.hpp"

using namespace greyfc::optimize;

namespace {

const std::vector<double> k_case1_train = {
    1038.31, 1026.51, 1023.7,  1039.85, 1013.91, 1007.79,
    1010.34, 1037.56, 1042.31, 1047.26, 1083.62, 1121.39};

Objective sphere(double target = 0.3) {
  return [target](std::span<const double> p) {
    double sum = 0.0;
    for (double v : p) sum += (v - target) * (v - target);
    return sum;
  };
}

SearchSpace unit_box(std::size_t dim) {
  return {std::vector<double>(dim, 0.0), std::vector<double>(dim, 1.0)};
}

}  // namespace

TEST_CASE("every algorithm solves the 2-D sphere with defaults") {
  for (Algorithm algorithm : all_algorithms()) {
    for (std::uint64_t seed : {0ull, 1ull, 7ull, 42ull}) {
      OptimizerConfig config;
      config.algorithm = algorithm;
      config.seed = seed;
      const OptResult result = minimize(sphere(), unit_box(2), config);
      INFO(to_string(algorithm) << " seed " << seed);
      CHECK(result.best_fitness < 1e-4);
      CHECK(result.best_point.size() == 2);
      for (double v : result.best_point) {
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
      }
    }
  }
}

TEST_CASE("constant objective is reported verbatim") {
  const Objective constant = [](std::span<const double>) { return 5.0; };
  for (Algorithm algorithm : all_algorithms()) {
    OptimizerConfig config;
    config.algorithm = algorithm;
    config.iterations = 25;
    const OptResult result = minimize(constant, unit_box(2), config);
    CHECK(result.best_fitness == 5.0);
    CHECK(result.trace.size() == 25);
    for (double v : result.trace) CHECK(v == 5.0);
  }
}

TEST_CASE("identical configurations give bit-identical results") {
  for (Algorithm algorithm : all_algorithms()) {
    OptimizerConfig config;
    config.algorithm = algorithm;
    config.seed = 1234;
    const OptResult a = minimize(sphere(0.41), unit_box(2), config);
    const OptResult b = minimize(sphere(0.41), unit_box(2), config);
    CHECK(a.best_fitness == b.best_fitness);
    CHECK(a.best_point == b.best_point);
    CHECK(a.trace == b.trace);
    config.seed = 1235;
    const OptResult c = minimize(sphere(0.41), unit_box(2), config);
    CHECK(a.trace != c.trace);
  }
}

TEST_CASE("every evaluated point stays inside the box") {
  for (Algorithm algorithm : all_algorithms()) {
    double worst = 0.0;
    const Objective watcher = [&](std::span<const double> p) {
      double sum = 0.0;
      for (double v : p) {
        worst = std::max({worst, 0.25 - v, v - 0.75});
        sum += (v - 0.5) * (v - 0.5);
      }
      return sum;
    };
    OptimizerConfig config;
    config.algorithm = algorithm;
    config.seed = 3;
    const SearchSpace space{{0.25, 0.25}, {0.75, 0.75}};
    minimize(watcher, space, config);
    CHECK(worst <= 0.0);
  }
}

TEST_CASE("best fitness never exceeds the best initial sample") {
  for (Algorithm algorithm : all_algorithms()) {
    std::vector<double> evaluations;
    const Objective recorder = [&](std::span<const double> p) {
      double sum = 0.0;
      for (double v : p) sum += std::abs(std::sin(13.0 * v)) + 0.1 * v;
      evaluations.push_back(sum);
      return sum;
    };
    OptimizerConfig config;
    config.algorithm = algorithm;
    config.seed = 9;
    const OptResult result = minimize(recorder, unit_box(2), config);
    double initial_best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < config.population; ++i) {
      initial_best = std::min(initial_best, evaluations[i]);
    }
    CHECK(result.best_fitness <= initial_best);
    CHECK(result.best_fitness == result.trace.back());
  }
}

TEST_CASE("traces are non-increasing") {
  for (Algorithm algorithm : all_algorithms()) {
    OptimizerConfig config;
    config.algorithm = algorithm;
    config.seed = 21;
    const OptResult result =
        minimize(sphere(0.77), unit_box(3), config);
    for (std::size_t i = 1; i < result.trace.size(); ++i) {
      CHECK(result.trace[i] <= result.trace[i - 1]);
    }
    CHECK(result.best_fitness == result.trace.back());
  }
}

TEST_CASE("penalty regions are absorbed") {
  const Objective penalized = [](std::span<const double> p) {
    if (p[0] < 0.6) return std::numeric_limits<double>::infinity();
    return (p[0] - 0.7) * (p[0] - 0.7);
  };
  for (Algorithm algorithm : all_algorithms()) {
    OptimizerConfig config;
    config.algorithm = algorithm;
    config.seed = 11;
    const OptResult result = minimize(penalized, unit_box(1), config);
    CHECK(std::isfinite(result.best_fitness));
    CHECK(result.best_fitness < 1e-3);
  }
}

TEST_CASE("NaN objectives count as +inf penalties") {
  const Objective nan_region = [](std::span<const double> p) {
    if (p[0] < 0.5) return std::numeric_limits<double>::quiet_NaN();
    return (p[0] - 0.8) * (p[0] - 0.8);
  };
  OptimizerConfig config;
  config.seed = 2;
  const OptResult result = minimize(nan_region, unit_box(1), config);
  CHECK(std::isfinite(result.best_fitness));
  CHECK(result.best_point[0] >= 0.5);
}

TEST_CASE("configuration validation") {
  OptimizerConfig config;
  config.population = 3;
  CHECK_THROWS_AS(minimize(sphere(), unit_box(2), config), greyfc::Error);
  config.population = 30;
  config.iterations = 0;
  CHECK_THROWS_AS(minimize(sphere(), unit_box(2), config), greyfc::Error);
  config.iterations = 100;
  CHECK_THROWS_AS(minimize(sphere(), SearchSpace{{0.0}, {0.0}}, config),
                  greyfc::Error);
  CHECK_THROWS_AS(parse_algorithm("annealing"), greyfc::Error);
}

TEST_CASE("ufgm objective equals the pipeline in-sample MAPE") {
  const Objective objective = ufgm_objective(k_case1_train);
  const double at_unit = objective(std::vector<double>{1.0, 1.0});
  const greyfc::models::HyperParams hyper{1.0, 1.0};
  const greyfc::models::StructuralParams params =
      greyfc::models::fit_ufgm(k_case1_train, hyper);
  const std::vector<double> restored =
      greyfc::models::predict_ufgm(k_case1_train, hyper, params, 0);
  const double expected =
      greyfc::metrics::mape(k_case1_train, restored, true);
  CHECK(at_unit == doctest::Approx(expected).epsilon(1e-12));
  CHECK(std::isfinite(at_unit));
}

TEST_CASE("ufgm objective penalties") {
  const Objective objective = ufgm_objective(k_case1_train);
  CHECK(objective(std::vector<double>{1e-12, 0.5}) ==
        std::numeric_limits<double>::infinity());
  for (double r : {0.05, 0.35, 0.75, 1.0}) {
    for (double alpha : {0.05, 0.4, 0.95}) {
      CHECK(objective(std::vector<double>{r, alpha}) >= 0.0);
    }
  }
}

TEST_CASE("fgm objective at order one equals the gm in-sample MAPE") {
  const Objective objective = fgm_objective(k_case1_train);
  const greyfc::models::FitReport gm = greyfc::models::fit(
      k_case1_train, k_case1_train.size(), 0, greyfc::models::Model::gm, {});
  CHECK(objective(std::vector<double>{1.0}) ==
        doctest::Approx(gm.metrics_in.mape).epsilon(1e-10));
}

TEST_CASE("best_of scans algorithms and seeds deterministically") {
  const std::vector<std::uint64_t> seeds = {0, 1, 2};
  OptimizerConfig base;
  base.population = 12;
  base.iterations = 30;
  const SearchOutcome first =
      best_of(sphere(0.2), unit_box(2), base, all_algorithms(), seeds);
  const SearchOutcome second =
      best_of(sphere(0.2), unit_box(2), base, all_algorithms(), seeds);
  CHECK(first.result.best_fitness == second.result.best_fitness);
  CHECK(first.algorithm == second.algorithm);
  CHECK(first.seed == second.seed);
  // the winner is at least as good as a single fixed run
  OptimizerConfig single = base;
  single.algorithm = Algorithm::pso;
  single.seed = 0;
  const OptResult lone = minimize(sphere(0.2), unit_box(2), single);
  CHECK(first.result.best_fitness <= lone.best_fitness);
}
