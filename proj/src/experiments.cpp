#include "experiments.hpp"

#include <cmath>

#include "error.hpp"
#include "fracops.hpp"
#include "metrics.hpp"

namespace greyfc::experiments {
namespace {

std::vector<std::string> year_labels(int first, std::size_t count) {
  std::vector<std::string> labels;
  labels.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    labels.push_back(std::to_string(first + static_cast<int>(i)));
  }
  return labels;
}

const CaseDataset &case1() {
  static const CaseDataset dataset{
      "case1_henan",
      {1038.31, 1026.51, 1023.7, 1039.85, 1013.91, 1007.79, 1010.34, 1037.56,
       1042.31, 1047.26, 1083.62, 1121.39, 1180.32, 1150.37, 1166.64, 1281.52},
      12,
      year_labels(2004, 16)};
  return dataset;
}

const CaseDataset &case2() {
  static const CaseDataset dataset{
      "case2_chongqing",
      {373.65, 405.61, 391.7, 419.2, 418.16, 420.35, 412.3, 429.27, 447.83,
       491.22, 506.89, 529.92, 566.12, 599.87, 616.99, 627.76},
      12,
      year_labels(2004, 16)};
  return dataset;
}

models::SearchProvenance provenance_of(const optimize::SearchOutcome &outcome) {
  models::SearchProvenance p;
  p.algorithm = optimize::to_string(outcome.algorithm);
  p.seed = outcome.seed;
  p.best_fitness = outcome.result.best_fitness;
  p.trace = outcome.result.trace;
  return p;
}

}  // namespace

const CaseDataset &builtin_dataset(std::string_view name) {
  if (name == "case1_henan" || name == "case1") return case1();
  if (name == "case2_chongqing" || name == "case2") return case2();
  fail(GREYFC_ERR_UNKNOWN_NAME,
       "unknown dataset '" + std::string(name) +
           "' (expected case1_henan|case2_chongqing)");
}

std::vector<std::string> builtin_dataset_names() {
  return {"case1_henan", "case2_chongqing"};
}

std::vector<models::FitReport> run_comparison(std::span<const double> data,
                                              std::size_t train_len,
                                              std::size_t horizon,
                                              const SearchPolicy &policy) {
  if (train_len < 4 || train_len > data.size()) {
    fail(GREYFC_ERR_INVALID_ARGUMENT,
         "comparison requires 4 <= train length <= series length");
  }
  if (horizon == 0) {
    horizon = data.size() - train_len;
  }
  std::vector<double> train(data.begin(), data.begin() + train_len);
  models::validate_series(train);

  std::vector<std::uint64_t> seeds(policy.n_seeds == 0 ? 5 : policy.n_seeds);
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    seeds[i] = policy.seed_base + i;
  }
  optimize::OptimizerConfig base;
  base.population = policy.population == 0 ? 30 : policy.population;
  base.iterations = policy.iterations == 0 ? 100 : policy.iterations;

  std::vector<models::FitReport> reports;
  reports.push_back(
      models::fit(data, train_len, horizon, models::Model::gm, {}));
  reports.push_back(
      models::fit(data, train_len, horizon, models::Model::dgm, {}));

  const optimize::SearchOutcome fgm_best =
      optimize::best_of(optimize::fgm_objective(train),
                        optimize::default_fgm_space(), base,
                        optimize::all_algorithms(), seeds);
  models::FitReport fgm = models::fit(
      data, train_len, horizon, models::Model::fgm,
      models::HyperParams{fgm_best.result.best_point[0],
                          fgm_best.result.best_point[0]});
  fgm.search = provenance_of(fgm_best);
  reports.push_back(std::move(fgm));

  const optimize::SearchOutcome ufgm_best =
      optimize::best_of(optimize::ufgm_objective(train),
                        optimize::default_ufgm_space(), base,
                        optimize::all_algorithms(), seeds);
  models::FitReport ufgm = models::fit(
      data, train_len, horizon, models::Model::ufgm,
      models::HyperParams{ufgm_best.result.best_point[0],
                          ufgm_best.result.best_point[1]});
  ufgm.search = provenance_of(ufgm_best);
  reports.push_back(std::move(ufgm));

  return reports;
}

GridSpec GridSpec::defaults() {
  GridSpec spec;
  spec.initial = {1.0, 200001.0, 400001.0, 600001.0};
  spec.alpha = {0.1, 0.3, 0.5, 0.7, 0.9};
  spec.r = spec.alpha;
  spec.a = spec.alpha;
  spec.b = spec.alpha;
  spec.c = spec.alpha;
  return spec;
}

std::size_t GridSpec::size() const {
  return initial.size() * alpha.size() * r.size() * a.size() * b.size() *
         c.size();
}

std::vector<GridRecord> grid_search_effects(std::span<const double> data,
                                            std::size_t train_len,
                                            const GridSpec &spec) {
  if (spec.initial.empty() || spec.alpha.empty() || spec.r.empty() ||
      spec.a.empty() || spec.b.empty() || spec.c.empty()) {
    fail(GREYFC_ERR_INVALID_ARGUMENT, "grid axes must be non-empty");
  }
  if (train_len < 2 || train_len > data.size()) {
    fail(GREYFC_ERR_INVALID_ARGUMENT,
         "grid requires 2 <= train length <= series length");
  }
  const std::span<const double> train = data.first(train_len);
  for (double v : train) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      fail(GREYFC_ERR_INVALID_SERIES,
           "grid study requires strictly positive data");
    }
  }

  std::vector<GridRecord> records;
  records.reserve(spec.size());
  std::vector<double> accumulated(train_len);
  for (double initial : spec.initial) {
    for (double alpha : spec.alpha) {
      for (double r : spec.r) {
        for (double a : spec.a) {
          for (double b : spec.b) {
            for (double c : spec.c) {
              GridRecord record{initial, alpha, r, a, b, c, 0.0, false};
              const models::HyperParams hyper{r, alpha};
              const models::StructuralParams params{a, b, c};
              try {
                for (std::size_t k = 1; k <= train_len; ++k) {
                  accumulated[k - 1] =
                      models::ufgm_response(params, hyper, initial, k);
                }
                const std::vector<double> restored =
                    fracops::ifago(accumulated, alpha);
                const double value = metrics::mape(train, restored, true);
                if (std::isfinite(value)) {
                  record.mape = value;
                  record.ok = true;
                }
              } catch (const Error &) {
                // flagged row; coordinates recorded, mape absent
              }
              records.push_back(record);
            }
          }
        }
      }
    }
  }
  return records;
}

}  // namespace greyfc::experiments
