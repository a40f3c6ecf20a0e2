// greyfc command-line interface: data ingestion, model fitting and
// forecasting, hyperparameter search, the grid study, case reproduction and
// plot-data export. All numerics live behind the greyfc C API.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "greyfc/greyfc.h"
#include "json.hpp"

namespace {

using nlohmann::json;

struct CliError {
  int code;
  std::string message;
};

int exit_code_for(greyfc_status status) {
  switch (status) {
    case GREYFC_OK:
      return 0;
    case GREYFC_ERR_SINGULAR_SYSTEM:
    case GREYFC_ERR_SINGULAR_PARAMETERS:
      return 3;
    default:
      return 2;
  }
}

void check(greyfc_status status) {
  if (status != GREYFC_OK) {
    throw CliError{exit_code_for(status),
                   std::string(greyfc_status_name(status)) + ": " +
                       greyfc_last_error()};
  }
}

struct SeriesDeleter {
  void operator()(greyfc_series *p) const { greyfc_series_free(p); }
};
struct ReportDeleter {
  void operator()(greyfc_report *p) const { greyfc_report_free(p); }
};
struct OptDeleter {
  void operator()(greyfc_opt_result *p) const { greyfc_opt_result_free(p); }
};
struct GridDeleter {
  void operator()(greyfc_grid *p) const { greyfc_grid_free(p); }
};
using SeriesPtr = std::unique_ptr<greyfc_series, SeriesDeleter>;
using ReportPtr = std::unique_ptr<greyfc_report, ReportDeleter>;
using OptPtr = std::unique_ptr<greyfc_opt_result, OptDeleter>;
using GridPtr = std::unique_ptr<greyfc_grid, GridDeleter>;

std::string owned_string(char *raw) {
  std::string out(raw == nullptr ? "" : raw);
  greyfc_string_free(raw);
  return out;
}

// Shortest representation that parses back to the same double.
std::string fmt(double v) { return json(v).dump(); }

/* ------------------------------------------------------------------ */
/* Run configuration: flags, with GREYFC_CONFIG supplying defaults     */
/* ------------------------------------------------------------------ */

struct RunConfig {
  std::string input;
  std::string case_name;
  std::string model = "ufgm";
  std::string optimizer = "all";
  std::size_t train_n = 0;  // 0 => whole series
  long long horizon = -1;   // -1 => command default
  double r = std::numeric_limits<double>::quiet_NaN();
  double alpha = std::numeric_limits<double>::quiet_NaN();
  std::size_t population = 30;
  std::size_t iterations = 100;
  std::uint64_t seed = 42;
  std::size_t seeds = 5;  // seed-set size for harness policies
  std::string out;
  double r_min = 0.01, r_max = 1.0;
  double alpha_min = 0.01, alpha_max = 1.0;
  std::string grid_initial, grid_alpha, grid_r, grid_a, grid_b, grid_c;
};

const std::vector<std::string> k_config_keys = {
    "input",      "case",       "model",     "optimizer", "train-n",
    "horizon",    "r",          "alpha",     "population", "iterations",
    "seed",       "seeds",      "out",       "r-min",     "r-max",
    "alpha-min",  "alpha-max",  "initial",   "alpha-grid", "r-grid",
    "a-grid",     "b-grid",     "c-grid"};

json load_config_file() {
  const char *path = std::getenv("GREYFC_CONFIG");
  if (path == nullptr || *path == '\0') {
    return json::object();
  }
  std::ifstream stream(path);
  if (!stream) {
    throw CliError{2, std::string("config file '") + path + "' cannot be read"};
  }
  json config;
  try {
    stream >> config;
  } catch (const json::parse_error &err) {
    throw CliError{2, std::string("config file '") + path +
                          "' is not valid JSON: " + err.what()};
  }
  if (!config.is_object()) {
    throw CliError{2, std::string("config file '") + path +
                          "' must hold a JSON object"};
  }
  for (const auto &item : config.items()) {
    if (std::find(k_config_keys.begin(), k_config_keys.end(), item.key()) ==
        k_config_keys.end()) {
      throw CliError{2, "config file key '" + item.key() + "' is not known"};
    }
  }
  return config;
}

// Applies config-file values to options the command line did not set.
void apply_config(const json &config, CLI::App *cmd, RunConfig &cfg) {
  auto take = [&](const char *key, auto &target) {
    CLI::Option *opt = cmd->get_option_no_throw(std::string("--") + key);
    if (opt == nullptr || opt->count() > 0 || !config.contains(key)) {
      return;
    }
    try {
      config.at(key).get_to(target);
    } catch (const json::exception &) {
      throw CliError{2, std::string("config value for '") + key +
                            "' has the wrong type"};
    }
  };
  take("input", cfg.input);
  take("case", cfg.case_name);
  take("model", cfg.model);
  take("optimizer", cfg.optimizer);
  take("train-n", cfg.train_n);
  take("horizon", cfg.horizon);
  take("r", cfg.r);
  take("alpha", cfg.alpha);
  take("population", cfg.population);
  take("iterations", cfg.iterations);
  take("seed", cfg.seed);
  take("seeds", cfg.seeds);
  take("out", cfg.out);
  take("r-min", cfg.r_min);
  take("r-max", cfg.r_max);
  take("alpha-min", cfg.alpha_min);
  take("alpha-max", cfg.alpha_max);
  take("initial", cfg.grid_initial);
  take("alpha-grid", cfg.grid_alpha);
  take("r-grid", cfg.grid_r);
  take("a-grid", cfg.grid_a);
  take("b-grid", cfg.grid_b);
  take("c-grid", cfg.grid_c);
}

/* ------------------------------------------------------------------ */
/* Shared helpers                                                      */
/* ------------------------------------------------------------------ */

SeriesPtr load_series(const RunConfig &cfg, std::size_t *builtin_train) {
  greyfc_series *raw = nullptr;
  if (!cfg.case_name.empty()) {
    check(greyfc_builtin_dataset(cfg.case_name.c_str(), &raw, builtin_train));
  } else if (!cfg.input.empty()) {
    check(greyfc_series_from_csv_file(cfg.input.c_str(), &raw));
  } else {
    throw CliError{2, "either --input or --case is required"};
  }
  return SeriesPtr(raw);
}

std::size_t effective_train(const RunConfig &cfg, std::size_t series_len,
                            std::size_t builtin_train) {
  std::size_t train = cfg.train_n;
  if (train == 0) {
    train = builtin_train != 0 ? builtin_train : series_len;
  }
  if (train > series_len) {
    throw CliError{2, "--train-n exceeds the series length"};
  }
  return train;
}

void write_output(const RunConfig &cfg, const std::string &text) {
  if (cfg.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') {
      std::cout << '\n';
    }
    return;
  }
  std::ofstream stream(cfg.out, std::ios::binary);
  if (!stream) {
    throw CliError{2, "cannot open '" + cfg.out + "' for writing"};
  }
  stream << text;
  if (!stream) {
    throw CliError{2, "failed while writing '" + cfg.out + "'"};
  }
}

json report_json(const greyfc_report *report) {
  char *raw = nullptr;
  check(greyfc_report_to_json(report, &raw));
  return json::parse(owned_string(raw));
}

bool model_takes_hyper(const std::string &model) {
  return model == "fgm" || model == "ufgm";
}

void validate_bounds(const RunConfig &cfg, bool two_dims) {
  if (!(cfg.r_min >= 1e-8)) {
    throw CliError{2, "--r-min must exceed 1e-8 (r = 0 is singular)"};
  }
  if (!(cfg.r_min < cfg.r_max)) {
    throw CliError{2, "--r-min must be below --r-max"};
  }
  if (two_dims) {
    if (!(cfg.alpha_min >= 1e-8)) {
      throw CliError{2, "--alpha-min must exceed 1e-8"};
    }
    if (!(cfg.alpha_min < cfg.alpha_max)) {
      throw CliError{2, "--alpha-min must be below --alpha-max"};
    }
  }
}

struct SearchRun {
  std::string algorithm;
  std::uint64_t seed;
  OptPtr result;
};

// Runs the requested algorithms (one, or all four) over the model's
// hyperparameter objective and returns them with the winner first kept
// stable: winner = lowest fitness, ties to the earlier run.
std::vector<SearchRun> run_search(const greyfc_series *series,
                                  std::size_t train_n, const RunConfig &cfg,
                                  std::size_t *winner_index) {
  static const std::vector<std::string> all = {"pso", "gwo", "woa", "alo"};
  std::vector<std::string> algorithms;
  if (cfg.optimizer == "all") {
    algorithms = all;
  } else if (std::find(all.begin(), all.end(), cfg.optimizer) != all.end()) {
    algorithms.push_back(cfg.optimizer);
  } else {
    throw CliError{2, "--optimizer must be one of pso|gwo|woa|alo|all"};
  }
  const bool two = cfg.model == "ufgm";
  validate_bounds(cfg, two);
  const std::vector<double> lower =
      two ? std::vector<double>{cfg.r_min, cfg.alpha_min}
          : std::vector<double>{cfg.r_min};
  const std::vector<double> upper =
      two ? std::vector<double>{cfg.r_max, cfg.alpha_max}
          : std::vector<double>{cfg.r_max};

  std::vector<SearchRun> runs;
  std::size_t best = 0;
  for (const std::string &algorithm : algorithms) {
    greyfc_opt_config config{algorithm.c_str(), cfg.population, cfg.iterations,
                             cfg.seed};
    greyfc_opt_result *raw = nullptr;
    check(greyfc_search_hyper(series, train_n, cfg.model.c_str(), &config,
                              lower.data(), upper.data(), &raw));
    runs.push_back(SearchRun{algorithm, cfg.seed, OptPtr(raw)});
    if (greyfc_opt_best_fitness(raw) <
        greyfc_opt_best_fitness(runs[best].result.get())) {
      best = runs.size() - 1;
    }
  }
  *winner_index = best;
  return runs;
}

/* ------------------------------------------------------------------ */
/* Subcommands                                                         */
/* ------------------------------------------------------------------ */

int cmd_fit(const RunConfig &cfg, bool forecast_mode) {
  std::size_t builtin_train = 0;
  SeriesPtr series = load_series(cfg, &builtin_train);
  const std::size_t len = greyfc_series_len(series.get());
  const std::size_t train_n = effective_train(cfg, len, builtin_train);
  std::size_t horizon;
  if (cfg.horizon >= 0) {
    horizon = static_cast<std::size_t>(cfg.horizon);
  } else {
    horizon = len - train_n;
    if (forecast_mode && horizon == 0) {
      horizon = 4;
    }
  }

  json wrapper;
  wrapper["command"] = forecast_mode ? "forecast" : "fit";
  wrapper["input"] = cfg.case_name.empty() ? cfg.input : cfg.case_name;
  wrapper["model"] = cfg.model;
  wrapper["train_n"] = train_n;
  wrapper["horizon"] = horizon;
  wrapper["seed"] = cfg.seed;

  std::vector<double> hyper;
  ReportPtr report;
  if (model_takes_hyper(cfg.model)) {
    const bool have_r = !std::isnan(cfg.r);
    const bool have_alpha = !std::isnan(cfg.alpha);
    if (cfg.model == "fgm" && have_r) {
      hyper = {cfg.r};
    } else if (cfg.model == "ufgm" && have_r && have_alpha) {
      hyper = {cfg.r, cfg.alpha};
    } else if (cfg.model == "ufgm" && (have_r || have_alpha)) {
      throw CliError{2, "ufgm needs both --r and --alpha (or neither)"};
    }
    if (hyper.empty()) {
      // No explicit hyperparameters: let the harness policy choose them.
      greyfc_policy policy{cfg.population, cfg.iterations, cfg.seed,
                           cfg.seeds};
      greyfc_report *raw[4] = {};
      check(greyfc_run_comparison(series.get(), train_n, horizon, &policy,
                                  raw));
      const std::size_t index = cfg.model == "fgm" ? 2 : 3;
      for (std::size_t i = 0; i < 4; ++i) {
        if (i == index) {
          report.reset(raw[i]);
        } else {
          greyfc_report_free(raw[i]);
        }
      }
    }
  }
  if (!report) {
    greyfc_report *raw = nullptr;
    check(greyfc_fit(series.get(), train_n, cfg.model.c_str(), hyper.data(),
                     hyper.size(), horizon, &raw));
    report.reset(raw);
  }
  wrapper["report"] = report_json(report.get());
  write_output(cfg, wrapper.dump(2) + "\n");
  return 0;
}

int cmd_search(const RunConfig &cfg) {
  if (!model_takes_hyper(cfg.model)) {
    throw CliError{2, "search needs --model fgm or ufgm"};
  }
  std::size_t builtin_train = 0;
  SeriesPtr series = load_series(cfg, &builtin_train);
  const std::size_t len = greyfc_series_len(series.get());
  const std::size_t train_n = effective_train(cfg, len, builtin_train);

  std::size_t winner = 0;
  const std::vector<SearchRun> runs =
      run_search(series.get(), train_n, cfg, &winner);

  json wrapper;
  wrapper["command"] = "search";
  wrapper["input"] = cfg.case_name.empty() ? cfg.input : cfg.case_name;
  wrapper["model"] = cfg.model;
  wrapper["optimizer"] = cfg.optimizer;
  wrapper["population"] = cfg.population;
  wrapper["iterations"] = cfg.iterations;
  wrapper["seed"] = cfg.seed;
  wrapper["train_n"] = train_n;
  json bounds;
  bounds["r"] = {cfg.r_min, cfg.r_max};
  if (cfg.model == "ufgm") {
    bounds["alpha"] = {cfg.alpha_min, cfg.alpha_max};
  }
  wrapper["bounds"] = bounds;

  json run_list = json::array();
  for (const SearchRun &run : runs) {
    const double *point = nullptr;
    std::size_t dim = 0;
    check(greyfc_opt_best_point(run.result.get(), &point, &dim));
    json entry;
    entry["algorithm"] = run.algorithm;
    entry["seed"] = run.seed;
    entry["best_fitness"] = greyfc_opt_best_fitness(run.result.get());
    entry["r"] = point[0];
    if (dim > 1) {
      entry["alpha"] = point[1];
    }
    run_list.push_back(entry);
  }
  wrapper["runs"] = run_list;

  const SearchRun &best = runs[winner];
  const double *point = nullptr;
  std::size_t dim = 0;
  check(greyfc_opt_best_point(best.result.get(), &point, &dim));
  const double *trace = nullptr;
  std::size_t trace_len = 0;
  check(greyfc_opt_trace(best.result.get(), &trace, &trace_len));
  json best_json;
  best_json["algorithm"] = best.algorithm;
  best_json["seed"] = best.seed;
  best_json["fitness"] = greyfc_opt_best_fitness(best.result.get());
  best_json["r"] = point[0];
  if (dim > 1) {
    best_json["alpha"] = point[1];
  }
  best_json["trace"] = std::vector<double>(trace, trace + trace_len);
  wrapper["best"] = best_json;

  std::vector<double> hyper(point, point + dim);
  greyfc_report *raw = nullptr;
  check(greyfc_fit(series.get(), train_n, cfg.model.c_str(), hyper.data(),
                   hyper.size(), len - train_n, &raw));
  ReportPtr report(raw);
  wrapper["report"] = report_json(report.get());

  write_output(cfg, wrapper.dump(2) + "\n");
  return 0;
}

std::vector<double> parse_grid_axis(const std::string &text,
                                    const char *name) {
  if (text.empty()) {
    return {};
  }
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t colon = text.find(':', start);
    if (colon == std::string::npos) {
      parts.push_back(text.substr(start));
      break;
    }
    parts.push_back(text.substr(start, colon - start));
    start = colon + 1;
  }
  auto number = [&](const std::string &field) {
    try {
      std::size_t used = 0;
      const double value = std::stod(field, &used);
      if (used != field.size()) throw std::invalid_argument(field);
      return value;
    } catch (const std::exception &) {
      throw CliError{2, std::string("--") + name + ": '" + field +
                            "' is not a number"};
    }
  };
  if (parts.size() == 1) {
    return {number(parts[0])};
  }
  if (parts.size() != 3) {
    throw CliError{2, std::string("--") + name +
                          " expects VALUE or START:STOP:STEP"};
  }
  const double begin = number(parts[0]);
  const double end = number(parts[1]);
  const double step = number(parts[2]);
  if (!(step > 0.0) || end < begin) {
    throw CliError{2, std::string("--") + name +
                          ": need STEP > 0 and STOP >= START"};
  }
  std::vector<double> values;
  const double slack = step * 1e-9;
  for (std::size_t i = 0;; ++i) {
    const double value = begin + static_cast<double>(i) * step;
    if (value > end + slack) {
      break;
    }
    values.push_back(value);
    if (values.size() > 1000000) {
      throw CliError{2, std::string("--") + name + ": grid axis too large"};
    }
  }
  return values;
}

int cmd_grid(const RunConfig &cfg) {
  RunConfig effective = cfg;
  if (effective.input.empty() && effective.case_name.empty()) {
    effective.case_name = "case1_henan";  // grid study default dataset
  }
  std::size_t builtin_train = 0;
  SeriesPtr series = load_series(effective, &builtin_train);
  const std::size_t len = greyfc_series_len(series.get());
  const std::size_t train_n = effective_train(effective, len, builtin_train);

  const std::vector<double> initial = parse_grid_axis(cfg.grid_initial, "initial");
  const std::vector<double> alpha = parse_grid_axis(cfg.grid_alpha, "alpha-grid");
  const std::vector<double> r = parse_grid_axis(cfg.grid_r, "r-grid");
  const std::vector<double> a = parse_grid_axis(cfg.grid_a, "a-grid");
  const std::vector<double> b = parse_grid_axis(cfg.grid_b, "b-grid");
  const std::vector<double> c = parse_grid_axis(cfg.grid_c, "c-grid");
  greyfc_grid_spec spec{
      initial.empty() ? nullptr : initial.data(), initial.size(),
      alpha.empty() ? nullptr : alpha.data(),     alpha.size(),
      r.empty() ? nullptr : r.data(),             r.size(),
      a.empty() ? nullptr : a.data(),             a.size(),
      b.empty() ? nullptr : b.data(),             b.size(),
      c.empty() ? nullptr : c.data(),             c.size()};

  greyfc_grid *raw = nullptr;
  check(greyfc_grid_run(series.get(), train_n, &spec, &raw));
  GridPtr grid(raw);
  char *csv = nullptr;
  check(greyfc_grid_to_csv(grid.get(), &csv));
  write_output(cfg, owned_string(csv));
  return 0;
}

int cmd_reproduce(const RunConfig &cfg) {
  if (cfg.case_name.empty()) {
    throw CliError{2, "reproduce needs --case case1|case2"};
  }
  std::size_t builtin_train = 0;
  SeriesPtr series = load_series(cfg, &builtin_train);
  const std::size_t len = greyfc_series_len(series.get());
  const std::size_t train_n = effective_train(cfg, len, builtin_train);
  const std::size_t horizon = len - train_n;

  greyfc_policy policy{cfg.population, cfg.iterations, cfg.seed, cfg.seeds};
  greyfc_report *raw[4] = {};
  check(greyfc_run_comparison(series.get(), train_n, horizon, &policy, raw));
  std::vector<ReportPtr> reports;
  for (greyfc_report *r : raw) {
    reports.emplace_back(r);
  }
  static const char *names[4] = {"gm", "dgm", "fgm", "ufgm"};

  // Human-readable table on stdout.
  const double *actual = greyfc_series_values(series.get());
  std::ostringstream table;
  table << "Comparison on " << cfg.case_name << " (train " << train_n
        << ", holdout " << horizon << ", seeds " << cfg.seed << ".."
        << (cfg.seed + cfg.seeds - 1) << ")\n\n";
  table << std::right << std::setw(4) << "k" << std::setw(12) << "actual";
  for (const char *name : names) {
    table << std::setw(12) << name;
  }
  table << '\n';
  table << std::fixed << std::setprecision(2);
  for (std::size_t k = 1; k <= len; ++k) {
    table << std::setw(4) << k << std::setw(12) << actual[k - 1];
    for (const ReportPtr &report : reports) {
      const double *values = nullptr;
      std::size_t count = 0;
      if (k <= train_n) {
        check(greyfc_report_fitted(report.get(), &values, &count));
        table << std::setw(12) << values[k - 1];
      } else {
        check(greyfc_report_forecast(report.get(), &values, &count));
        if (k - train_n <= count) {
          table << std::setw(12) << values[k - train_n - 1];
        } else {
          table << std::setw(12) << "-";
        }
      }
    }
    table << '\n';
    if (k == train_n) {
      table << std::setw(4) << "--" << std::setw(12) << "(holdout)" << '\n';
    }
  }
  table << '\n' << std::setprecision(4);
  table << std::setw(16) << "in-sample MAPE";
  for (const ReportPtr &report : reports) {
    double value = 0.0;
    check(greyfc_report_metric(report.get(), "in", "mape", &value));
    table << std::setw(12) << value;
  }
  table << '\n' << std::setw(16) << "holdout MAPE";
  for (const ReportPtr &report : reports) {
    if (greyfc_report_has_out(report.get())) {
      double value = 0.0;
      check(greyfc_report_metric(report.get(), "out", "mape", &value));
      table << std::setw(12) << value;
    } else {
      table << std::setw(12) << "-";
    }
  }
  table << '\n' << std::setw(16) << "Lewis grade";
  for (const ReportPtr &report : reports) {
    table << std::setw(12) << greyfc_report_lewis(report.get());
  }
  table << '\n';
  for (std::size_t i = 2; i < 4; ++i) {
    double r_value = 0.0;
    check(greyfc_report_param(reports[i].get(), "r", &r_value));
    table << names[i] << ": r=" << fmt(r_value);
    if (std::string(names[i]) == "ufgm") {
      double alpha_value = 0.0;
      check(greyfc_report_param(reports[i].get(), "alpha", &alpha_value));
      table << ", alpha=" << fmt(alpha_value);
    }
    const char *algorithm = nullptr;
    std::uint64_t seed = 0;
    double fitness = 0.0;
    if (greyfc_report_search_info(reports[i].get(), &algorithm, &seed,
                                  &fitness)) {
      table << "  (" << algorithm << ", seed " << seed << ", fitness "
            << fmt(fitness) << ")";
    }
    table << '\n';
  }
  std::cout << table.str();

  if (!cfg.out.empty()) {
    json wrapper;
    wrapper["command"] = "reproduce";
    wrapper["case"] = cfg.case_name;
    wrapper["train_n"] = train_n;
    wrapper["horizon"] = horizon;
    wrapper["seed"] = cfg.seed;
    wrapper["seeds"] = cfg.seeds;
    wrapper["population"] = cfg.population;
    wrapper["iterations"] = cfg.iterations;
    json models;
    for (std::size_t i = 0; i < 4; ++i) {
      models[names[i]] = report_json(reports[i].get());
    }
    wrapper["models"] = models;
    RunConfig file_cfg = cfg;
    write_output(file_cfg, wrapper.dump(2) + "\n");
  }
  return 0;
}

int cmd_export_plot(const RunConfig &cfg) {
  std::size_t builtin_train = 0;
  SeriesPtr series = load_series(cfg, &builtin_train);
  const std::size_t len = greyfc_series_len(series.get());
  const std::size_t train_n = effective_train(cfg, len, builtin_train);
  const std::size_t horizon =
      cfg.horizon >= 0 ? static_cast<std::size_t>(cfg.horizon)
                       : len - train_n;
  const double *actual = greyfc_series_values(series.get());

  std::vector<ReportPtr> reports;
  std::vector<std::string> names;
  if (!cfg.case_name.empty()) {
    greyfc_policy policy{cfg.population, cfg.iterations, cfg.seed, cfg.seeds};
    greyfc_report *raw[4] = {};
    check(greyfc_run_comparison(series.get(), train_n, horizon, &policy, raw));
    for (greyfc_report *r : raw) {
      reports.emplace_back(r);
    }
    names = {"gm", "dgm", "fgm", "ufgm"};
  } else {
    RunConfig fit_cfg = cfg;
    std::vector<double> hyper;
    if (model_takes_hyper(cfg.model)) {
      if (cfg.model == "fgm" && !std::isnan(cfg.r)) {
        hyper = {cfg.r};
      } else if (cfg.model == "ufgm" && !std::isnan(cfg.r) &&
                 !std::isnan(cfg.alpha)) {
        hyper = {cfg.r, cfg.alpha};
      } else {
        throw CliError{2,
                       "export-plot with --input needs explicit --r/--alpha "
                       "for fgm/ufgm (or use --case)"};
      }
    }
    greyfc_report *raw = nullptr;
    check(greyfc_fit(series.get(), train_n, cfg.model.c_str(), hyper.data(),
                     hyper.size(), horizon, &raw));
    reports.emplace_back(raw);
    names = {cfg.model};
  }

  std::string text = "k,actual,value,model\n";
  for (std::size_t m = 0; m < reports.size(); ++m) {
    const double *fitted = nullptr;
    std::size_t fitted_len = 0;
    check(greyfc_report_fitted(reports[m].get(), &fitted, &fitted_len));
    const double *forecast = nullptr;
    std::size_t forecast_len = 0;
    check(greyfc_report_forecast(reports[m].get(), &forecast, &forecast_len));
    for (std::size_t k = 1; k <= fitted_len + forecast_len; ++k) {
      const double value =
          k <= fitted_len ? fitted[k - 1] : forecast[k - fitted_len - 1];
      text += std::to_string(k) + ',';
      if (k <= len) {
        text += fmt(actual[k - 1]);
      }
      text += ',' + fmt(value) + ',' + names[m] + '\n';
    }
  }
  write_output(cfg, text);
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"greyfc — grey-system forecasting with fractional accumulation"};
  app.require_subcommand(1);

  RunConfig cfg;
  auto add_common = [&](CLI::App *cmd, bool with_grid) {
    cmd->add_option("--input", cfg.input, "input CSV (value column, optional "
                                          "label column and header)");
    cmd->add_option("--case", cfg.case_name,
                    "built-in dataset: case1|case2 (or full names)");
    cmd->add_option("--model", cfg.model, "gm|dgm|fgm|ufgm");
    cmd->add_option("--train-n", cfg.train_n,
                    "calibration length (default: whole series, or the "
                    "built-in split)");
    cmd->add_option("--horizon", cfg.horizon, "forecast steps");
    cmd->add_option("--r", cfg.r, "kernel memory order (fgm/ufgm)");
    cmd->add_option("--alpha", cfg.alpha, "accumulation order (ufgm)");
    cmd->add_option("--optimizer", cfg.optimizer, "pso|gwo|woa|alo|all");
    cmd->add_option("--population", cfg.population, "optimizer population");
    cmd->add_option("--iterations", cfg.iterations, "optimizer iterations");
    cmd->add_option("--seed", cfg.seed, "RNG seed (printed into reports)");
    cmd->add_option("--seeds", cfg.seeds,
                    "seed-set size for harness search policies");
    cmd->add_option("--out", cfg.out, "output file (default: stdout)");
    cmd->add_option("--r-min", cfg.r_min, "search lower bound for r");
    cmd->add_option("--r-max", cfg.r_max, "search upper bound for r");
    cmd->add_option("--alpha-min", cfg.alpha_min,
                    "search lower bound for alpha");
    cmd->add_option("--alpha-max", cfg.alpha_max,
                    "search upper bound for alpha");
    if (with_grid) {
      cmd->add_option("--initial", cfg.grid_initial,
                      "initial-value axis, VALUE or START:STOP:STEP");
      cmd->add_option("--alpha-grid", cfg.grid_alpha, "alpha axis");
      cmd->add_option("--r-grid", cfg.grid_r, "r axis");
      cmd->add_option("--a-grid", cfg.grid_a, "a axis");
      cmd->add_option("--b-grid", cfg.grid_b, "b axis");
      cmd->add_option("--c-grid", cfg.grid_c, "c axis");
    }
  };

  CLI::App *fit = app.add_subcommand("fit", "fit a model and report");
  CLI::App *forecast =
      app.add_subcommand("forecast", "fit and forecast beyond the data");
  CLI::App *search =
      app.add_subcommand("search", "metaheuristic hyperparameter search");
  CLI::App *grid =
      app.add_subcommand("grid", "initial-value / order grid study");
  CLI::App *reproduce =
      app.add_subcommand("reproduce", "five-model case comparison");
  CLI::App *export_plot =
      app.add_subcommand("export-plot", "plot-data CSV export");
  for (CLI::App *cmd : {fit, forecast, search, reproduce, export_plot}) {
    add_common(cmd, false);
  }
  add_common(grid, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const json config = load_config_file();
    CLI::App *active = app.get_subcommands().front();
    apply_config(config, active, cfg);

    if (active == fit) return cmd_fit(cfg, false);
    if (active == forecast) return cmd_fit(cfg, true);
    if (active == search) return cmd_search(cfg);
    if (active == grid) return cmd_grid(cfg);
    if (active == reproduce) return cmd_reproduce(cfg);
    if (active == export_plot) return cmd_export_plot(cfg);
    std::cerr << "greyfc: no subcommand selected\n";
    return 2;
  } catch (const CliError &err) {
    std::cerr << "greyfc: " << err.message << '\n';
    return err.code;
  } catch (const std::exception &err) {
    std::cerr << "greyfc: " << err.what() << '\n';
    return 2;
  }
}
