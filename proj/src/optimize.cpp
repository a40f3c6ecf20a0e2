#include "optimize.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "error.hpp"
#include "metrics.hpp"
#include "models.hpp"

namespace greyfc::optimize {
namespace {

constexpr double k_inf = std::numeric_limits<double>::infinity();

// One stream per run; raw 64-bit draws are mapped to [0,1) directly so the
// sequence does not depend on library distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::size_t index(std::size_t n) {
    const auto i = static_cast<std::size_t>(uniform() * static_cast<double>(n));
    return i < n ? i : n - 1;
  }

 private:
  std::mt19937_64 engine_;
};

using Point = std::vector<double>;

struct Box {
  const SearchSpace &space;

  std::size_t dim() const { return space.lower.size(); }

  void clamp(Point &p) const {
    for (std::size_t j = 0; j < p.size(); ++j) {
      p[j] = std::clamp(p[j], space.lower[j], space.upper[j]);
    }
  }

  Point sample(Rng &rng) const {
    Point p(dim());
    for (std::size_t j = 0; j < p.size(); ++j) {
      p[j] = rng.uniform(space.lower[j], space.upper[j]);
    }
    return p;
  }
};

double evaluate(const Objective &objective, const Box &box, Point &p) {
  box.clamp(p);
  const double f = objective(p);
  return std::isnan(f) ? k_inf : f;
}

struct Incumbent {
  Point point;
  double fitness = k_inf;

  void offer(const Point &p, double f) {
    if (f < fitness) {
      fitness = f;
      point = p;
    }
  }
};

OptResult run_pso(const Objective &objective, const Box &box,
                  const OptimizerConfig &cfg, Rng &rng) {
  const std::size_t pop = cfg.population;
  const std::size_t dim = box.dim();
  std::vector<Point> x(pop), velocity(pop, Point(dim, 0.0)), pbest(pop);
  std::vector<double> pbest_f(pop);
  Incumbent best;
  for (std::size_t i = 0; i < pop; ++i) {
    x[i] = box.sample(rng);
    pbest_f[i] = evaluate(objective, box, x[i]);
    pbest[i] = x[i];
    if (i == 0) {
      best.point = x[0];
      best.fitness = pbest_f[0];
    } else {
      best.offer(x[i], pbest_f[i]);
    }
  }
  OptResult out;
  for (std::size_t t = 0; t < cfg.iterations; ++t) {
    for (std::size_t i = 0; i < pop; ++i) {
      for (std::size_t j = 0; j < dim; ++j) {
        const double span = box.space.upper[j] - box.space.lower[j];
        double v = cfg.pso_inertia * velocity[i][j] +
                   cfg.pso_cognitive * rng.uniform() * (pbest[i][j] - x[i][j]) +
                   cfg.pso_social * rng.uniform() * (best.point[j] - x[i][j]);
        velocity[i][j] = std::clamp(v, -span, span);
        x[i][j] += velocity[i][j];
      }
      const double f = evaluate(objective, box, x[i]);
      if (f < pbest_f[i]) {
        pbest_f[i] = f;
        pbest[i] = x[i];
      }
    }
    for (std::size_t i = 0; i < pop; ++i) {
      best.offer(pbest[i], pbest_f[i]);
    }
    out.trace.push_back(best.fitness);
  }
  out.best_point = best.point;
  out.best_fitness = best.fitness;
  return out;
}

OptResult run_gwo(const Objective &objective, const Box &box,
                  const OptimizerConfig &cfg, Rng &rng) {
  const std::size_t pop = cfg.population;
  const std::size_t dim = box.dim();
  std::vector<Point> x(pop);
  std::vector<double> fit(pop);
  std::array<Point, 3> leader;
  std::array<double, 3> leader_f{k_inf, k_inf, k_inf};
  leader.fill(Point(dim, 0.0));

  auto offer_leader = [&](const Point &p, double f) {
    if (f < leader_f[0]) {
      leader[2] = leader[1];
      leader_f[2] = leader_f[1];
      leader[1] = leader[0];
      leader_f[1] = leader_f[0];
      leader[0] = p;
      leader_f[0] = f;
    } else if (f < leader_f[1]) {
      leader[2] = leader[1];
      leader_f[2] = leader_f[1];
      leader[1] = p;
      leader_f[1] = f;
    } else if (f < leader_f[2]) {
      leader[2] = p;
      leader_f[2] = f;
    }
  };

  for (std::size_t i = 0; i < pop; ++i) {
    x[i] = box.sample(rng);
    fit[i] = evaluate(objective, box, x[i]);
    offer_leader(x[i], fit[i]);
  }
  if (!std::isfinite(leader_f[0])) {
    // All-penalty start: anchor the pack on real samples so every later
    // position (and the reported best) stays inside the box.
    for (std::size_t s = 0; s < 3; ++s) {
      leader[s] = x[s % pop];
    }
  }
  OptResult out;
  for (std::size_t t = 0; t < cfg.iterations; ++t) {
    const double a =
        2.0 * (1.0 - static_cast<double>(t) /
                         static_cast<double>(cfg.iterations));
    for (std::size_t i = 0; i < pop; ++i) {
      for (std::size_t j = 0; j < dim; ++j) {
        double acc = 0.0;
        for (const Point &lead : leader) {
          const double coef_a = 2.0 * a * rng.uniform() - a;
          const double coef_c = 2.0 * rng.uniform();
          acc += lead[j] - coef_a * std::abs(coef_c * lead[j] - x[i][j]);
        }
        x[i][j] = acc / 3.0;
      }
      fit[i] = evaluate(objective, box, x[i]);
      offer_leader(x[i], fit[i]);
    }
    out.trace.push_back(leader_f[0]);
  }
  out.best_point = leader[0];
  out.best_fitness = leader_f[0];
  return out;
}

OptResult run_woa(const Objective &objective, const Box &box,
                  const OptimizerConfig &cfg, Rng &rng) {
  const std::size_t pop = cfg.population;
  const std::size_t dim = box.dim();
  std::vector<Point> x(pop);
  Incumbent best;
  for (std::size_t i = 0; i < pop; ++i) {
    x[i] = box.sample(rng);
    const double f = evaluate(objective, box, x[i]);
    if (i == 0) {
      best.point = x[0];
      best.fitness = f;
    } else {
      best.offer(x[i], f);
    }
  }
  OptResult out;
  for (std::size_t t = 0; t < cfg.iterations; ++t) {
    const double frac =
        static_cast<double>(t) / static_cast<double>(cfg.iterations);
    const double a = 2.0 * (1.0 - frac);
    const double a2 = -1.0 - frac;  // spiral exponent range shrinks over time
    for (std::size_t i = 0; i < pop; ++i) {
      const double coef_a = 2.0 * a * rng.uniform() - a;
      const double coef_c = 2.0 * rng.uniform();
      const double p = rng.uniform();
      if (p < 0.5) {
        const Point &target =
            std::abs(coef_a) < 1.0 ? best.point : x[rng.index(pop)];
        Point next(dim);
        for (std::size_t j = 0; j < dim; ++j) {
          next[j] =
              target[j] - coef_a * std::abs(coef_c * target[j] - x[i][j]);
        }
        x[i] = std::move(next);
      } else {
        const double l = (a2 - 1.0) * rng.uniform() + 1.0;
        const double swirl = std::exp(cfg.woa_spiral * l) *
                             std::cos(2.0 * std::numbers::pi * l);
        for (std::size_t j = 0; j < dim; ++j) {
          x[i][j] = std::abs(best.point[j] - x[i][j]) * swirl + best.point[j];
        }
      }
      best.offer(x[i], evaluate(objective, box, x[i]));
    }
    out.trace.push_back(best.fitness);
  }
  out.best_point = best.point;
  out.best_fitness = best.fitness;
  return out;
}

// Shrink ratio for the antlion trap bounds; grows stepwise late in the run.
double alo_shrink(std::size_t t, std::size_t iters) {
  const double ratio =
      static_cast<double>(t + 1) / static_cast<double>(iters);
  if (ratio > 0.95) return 1.0 + 1e6 * ratio;
  if (ratio > 0.90) return 1.0 + 1e5 * ratio;
  if (ratio > 0.75) return 1.0 + 1e4 * ratio;
  if (ratio > 0.50) return 1.0 + 1e3 * ratio;
  if (ratio > 0.10) return 1.0 + 1e2 * ratio;
  return 1.0;
}

// Random walk around an anchor: a +/-1 step walk over the whole horizon,
// min-max normalized into the shrunken interval, sampled at step t.
Point alo_walk(Rng &rng, const Box &box, std::size_t t, std::size_t iters,
               const Point &anchor) {
  const std::size_t dim = box.dim();
  const double shrink = alo_shrink(t, iters);
  Point position(dim);
  for (std::size_t j = 0; j < dim; ++j) {
    double lo = box.space.lower[j] / shrink;
    double hi = box.space.upper[j] / shrink;
    lo = rng.uniform() < 0.5 ? lo + anchor[j] : -lo + anchor[j];
    hi = rng.uniform() < 0.5 ? hi + anchor[j] : -hi + anchor[j];
    const double c = std::min(lo, hi);
    const double d = std::max(lo, hi);

    double value = 0.0, lowest = 0.0, highest = 0.0, at_t = 0.0;
    for (std::size_t s = 1; s <= iters; ++s) {
      value += rng.uniform() > 0.5 ? 1.0 : -1.0;
      lowest = std::min(lowest, value);
      highest = std::max(highest, value);
      if (s == t + 1) at_t = value;
    }
    const double span = highest - lowest;
    position[j] = span == 0.0 ? c : (at_t - lowest) * (d - c) / span + c;
  }
  return position;
}

std::size_t alo_roulette(Rng &rng, const std::vector<double> &fitness) {
  std::vector<double> weights(fitness.size());
  double total = 0.0;
  for (std::size_t i = 0; i < fitness.size(); ++i) {
    weights[i] = std::isfinite(fitness[i])
                     ? 1.0 / std::max(fitness[i], 1e-100)
                     : 0.0;
    total += weights[i];
  }
  if (!(total > 0.0) || !std::isfinite(total)) {
    return rng.index(fitness.size());
  }
  const double pick = rng.uniform() * total;
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    if (pick < acc) return i;
  }
  return weights.size() - 1;
}

OptResult run_alo(const Objective &objective, const Box &box,
                  const OptimizerConfig &cfg, Rng &rng) {
  const std::size_t pop = cfg.population;
  const std::size_t dim = box.dim();
  std::vector<Point> antlions(pop);
  std::vector<double> antlion_f(pop);
  for (std::size_t i = 0; i < pop; ++i) {
    antlions[i] = box.sample(rng);
    antlion_f[i] = evaluate(objective, box, antlions[i]);
  }
  std::vector<std::size_t> order(pop);
  auto sort_order = [&](const std::vector<double> &f, std::size_t n) {
    order.resize(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t l, std::size_t r) { return f[l] < f[r]; });
  };
  sort_order(antlion_f, pop);
  {
    std::vector<Point> sorted(pop);
    std::vector<double> sorted_f(pop);
    for (std::size_t i = 0; i < pop; ++i) {
      sorted[i] = antlions[order[i]];
      sorted_f[i] = antlion_f[order[i]];
    }
    antlions = std::move(sorted);
    antlion_f = std::move(sorted_f);
  }
  Point elite = antlions[0];
  double elite_f = antlion_f[0];

  std::vector<Point> ants(pop, Point(dim, 0.0));
  std::vector<double> ant_f(pop);
  OptResult out;
  for (std::size_t t = 0; t < cfg.iterations; ++t) {
    for (std::size_t i = 0; i < pop; ++i) {
      const std::size_t pick = alo_roulette(rng, antlion_f);
      const Point around_antlion =
          alo_walk(rng, box, t, cfg.iterations, antlions[pick]);
      const Point around_elite = alo_walk(rng, box, t, cfg.iterations, elite);
      for (std::size_t j = 0; j < dim; ++j) {
        ants[i][j] = (around_antlion[j] + around_elite[j]) / 2.0;
      }
      ant_f[i] = evaluate(objective, box, ants[i]);
    }
    // Ants caught by antlions: keep the best pop of the merged set.
    std::vector<Point> merged;
    std::vector<double> merged_f;
    merged.reserve(2 * pop);
    merged_f.reserve(2 * pop);
    for (std::size_t i = 0; i < pop; ++i) {
      merged.push_back(antlions[i]);
      merged_f.push_back(antlion_f[i]);
    }
    for (std::size_t i = 0; i < pop; ++i) {
      merged.push_back(ants[i]);
      merged_f.push_back(ant_f[i]);
    }
    sort_order(merged_f, merged.size());
    for (std::size_t i = 0; i < pop; ++i) {
      antlions[i] = merged[order[i]];
      antlion_f[i] = merged_f[order[i]];
    }
    if (antlion_f[0] < elite_f) {
      elite = antlions[0];
      elite_f = antlion_f[0];
    }
    antlions[0] = elite;
    antlion_f[0] = elite_f;
    out.trace.push_back(elite_f);
  }
  out.best_point = elite;
  out.best_fitness = elite_f;
  return out;
}

}  // namespace

Algorithm parse_algorithm(std::string_view name) {
  if (name == "pso") return Algorithm::pso;
  if (name == "gwo") return Algorithm::gwo;
  if (name == "woa") return Algorithm::woa;
  if (name == "alo") return Algorithm::alo;
  fail(GREYFC_ERR_UNKNOWN_NAME, "unknown algorithm '" + std::string(name) +
                                    "' (expected pso|gwo|woa|alo)");
}

const char *to_string(Algorithm algorithm) noexcept {
  switch (algorithm) {
    case Algorithm::pso:
      return "pso";
    case Algorithm::gwo:
      return "gwo";
    case Algorithm::woa:
      return "woa";
    case Algorithm::alo:
      return "alo";
  }
  return "pso";
}

std::span<const Algorithm> all_algorithms() noexcept {
  static constexpr Algorithm algos[] = {Algorithm::pso, Algorithm::gwo,
                                        Algorithm::woa, Algorithm::alo};
  return algos;
}

OptResult minimize(const Objective &objective, const SearchSpace &space,
                   const OptimizerConfig &config) {
  if (space.lower.empty() || space.lower.size() != space.upper.size()) {
    fail(GREYFC_ERR_INVALID_ARGUMENT, "search space bounds are inconsistent");
  }
  for (std::size_t j = 0; j < space.lower.size(); ++j) {
    if (!(space.lower[j] < space.upper[j])) {
      fail(GREYFC_ERR_INVALID_ARGUMENT,
           "search space requires lower < upper in every dimension");
    }
  }
  if (config.population < 4) {
    fail(GREYFC_ERR_INVALID_ARGUMENT, "population must be at least 4");
  }
  if (config.iterations < 1) {
    fail(GREYFC_ERR_INVALID_ARGUMENT, "iterations must be at least 1");
  }
  const Box box{space};
  Rng rng(config.seed);
  switch (config.algorithm) {
    case Algorithm::pso:
      return run_pso(objective, box, config, rng);
    case Algorithm::gwo:
      return run_gwo(objective, box, config, rng);
    case Algorithm::woa:
      return run_woa(objective, box, config, rng);
    case Algorithm::alo:
      return run_alo(objective, box, config, rng);
  }
  fail(GREYFC_ERR_INTERNAL, "unreachable algorithm dispatch");
}

Objective ufgm_objective(std::vector<double> train) {
  return [train = std::move(train)](std::span<const double> point) -> double {
    if (point.size() != 2) return k_inf;
    const models::HyperParams hyper{point[0], point[1]};
    if (hyper.r < models::k_epsilon_singular) return k_inf;
    try {
      const models::StructuralParams params = models::fit_ufgm(train, hyper);
      const std::vector<double> restored =
          models::predict_ufgm(train, hyper, params, 0);
      const double value = metrics::mape(train, restored, true);
      return std::isfinite(value) ? value : k_inf;
    } catch (const Error &) {
      return k_inf;
    }
  };
}

Objective fgm_objective(std::vector<double> train) {
  return [train = std::move(train)](std::span<const double> point) -> double {
    if (point.size() != 1) return k_inf;
    const double r = point[0];
    if (r < models::k_epsilon_singular) return k_inf;
    try {
      const models::GmParams params = models::fit_fgm_params(train, r);
      const std::vector<double> restored =
          models::predict_fgm(train, r, params, 0);
      const double value = metrics::mape(train, restored, true);
      return std::isfinite(value) ? value : k_inf;
    } catch (const Error &) {
      return k_inf;
    }
  };
}

SearchSpace default_ufgm_space() { return {{0.01, 0.01}, {1.0, 1.0}}; }

SearchSpace default_fgm_space() { return {{0.01}, {1.0}}; }

SearchOutcome best_of(const Objective &objective, const SearchSpace &space,
                      const OptimizerConfig &base,
                      std::span<const Algorithm> algorithms,
                      std::span<const std::uint64_t> seeds) {
  if (algorithms.empty() || seeds.empty()) {
    fail(GREYFC_ERR_INVALID_ARGUMENT,
         "best_of requires at least one algorithm and one seed");
  }
  SearchOutcome winner;
  bool first = true;
  for (const Algorithm algorithm : algorithms) {
    for (const std::uint64_t seed : seeds) {
      OptimizerConfig config = base;
      config.algorithm = algorithm;
      config.seed = seed;
      OptResult result = minimize(objective, space, config);
      if (first || result.best_fitness < winner.result.best_fitness) {
        winner = SearchOutcome{algorithm, seed, std::move(result)};
        first = false;
      }
    }
  }
  return winner;
}

}  // namespace greyfc::optimize
