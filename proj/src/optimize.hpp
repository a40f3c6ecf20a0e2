#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace greyfc::optimize {

enum class Algorithm { pso, gwo, woa, alo };

Algorithm parse_algorithm(std::string_view name);
const char *to_string(Algorithm algorithm) noexcept;

// All four algorithms, in the fixed harness order.
std::span<const Algorithm> all_algorithms() noexcept;

struct SearchSpace {
  std::vector<double> lower;
  std::vector<double> upper;
};

struct OptimizerConfig {
  Algorithm algorithm = Algorithm::pso;
  std::size_t population = 30;
  std::size_t iterations = 100;
  std::uint64_t seed = 42;
  double pso_inertia = 0.729;
  double pso_cognitive = 1.494;
  double pso_social = 1.494;
  double woa_spiral = 1.0;
};

struct OptResult {
  std::vector<double> best_point;
  double best_fitness = 0.0;
  std::vector<double> trace;  // best-so-far after each iteration
};

using Objective = std::function<double(std::span<const double>)>;

// Minimizes the objective over the box. Every evaluated point is clamped
// into the box first; NaN objective values count as +inf. One RNG stream
// per run and a fixed evaluation order make results bit-reproducible for
// identical (objective, space, config).
OptResult minimize(const Objective &objective, const SearchSpace &space,
                   const OptimizerConfig &config);

// In-sample (skip-first) MAPE of the full fit/predict/restore pipeline as a
// function of the hyperparameters; singular fits and non-finite outputs
// yield +inf penalties. Points are (r, alpha) for ufgm and (r) for fgm.
Objective ufgm_objective(std::vector<double> train);
Objective fgm_objective(std::vector<double> train);

SearchSpace default_ufgm_space();  // [0.01, 1]^2
SearchSpace default_fgm_space();   // [0.01, 1]

struct SearchOutcome {
  Algorithm algorithm = Algorithm::pso;
  std::uint64_t seed = 0;
  OptResult result;
};

// Runs every (algorithm, seed) combination and keeps the lowest fitness;
// ties resolve to the earliest run in the fixed iteration order.
SearchOutcome best_of(const Objective &objective, const SearchSpace &space,
                      const OptimizerConfig &base,
                      std::span<const Algorithm> algorithms,
                      std::span<const std::uint64_t> seeds);

}  // namespace greyfc::optimize
