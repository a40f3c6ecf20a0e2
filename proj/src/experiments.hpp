#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "models.hpp"
#include "optimize.hpp"

namespace greyfc::experiments {

struct CaseDataset {
  std::string name;
  std::vector<double> values;
  std::size_t train_len = 0;
  std::vector<std::string> labels;
};

// Built-in water-supply case datasets: "case1_henan" and "case2_chongqing"
// (aliases "case1" / "case2"). Throws on unknown names.
const CaseDataset &builtin_dataset(std::string_view name);

std::vector<std::string> builtin_dataset_names();

// Seed set and budget for the FGM/UFGM hyperparameter search; every
// combination of the four algorithms and seeds seed_base..seed_base+n_seeds-1
// is run and the lowest-fitness result wins.
struct SearchPolicy {
  std::size_t population = 30;
  std::size_t iterations = 100;
  std::uint64_t seed_base = 0;
  std::size_t n_seeds = 5;
};

// Fits the four competing models (gm, dgm, fgm, ufgm in that order) on the
// dataset's train split, forecasting `horizon` steps (0 = to the data end).
std::vector<models::FitReport> run_comparison(std::span<const double> data,
                                              std::size_t train_len,
                                              std::size_t horizon,
                                              const SearchPolicy &policy);

struct GridSpec {
  std::vector<double> initial;
  std::vector<double> alpha;
  std::vector<double> r;
  std::vector<double> a;
  std::vector<double> b;
  std::vector<double> c;

  static GridSpec defaults();
  std::size_t size() const;
};

struct GridRecord {
  double initial = 0.0;
  double alpha = 0.0;
  double r = 0.0;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double mape = 0.0;  // meaningful only when ok
  bool ok = false;
};

// Evaluates the UFGM pipeline for every grid tuple with (a, b, c) fixed from
// the grid (not estimated) and the response initial value overridden by the
// grid value; records in-sample MAPE or flags the tuple. Records appear in
// nested loop order initial > alpha > r > a > b > c.
std::vector<GridRecord> grid_search_effects(std::span<const double> data,
                                            std::size_t train_len,
                                            const GridSpec &spec);

}  // namespace greyfc::experiments
