#include "greyfc/greyfc.h"

#include <cstring>
#include <new>
#include <string>
#include <vector>

#include "csv.hpp"
#include "error.hpp"
#include "json.hpp"
#include "experiments.hpp"
#include "fracops.hpp"
#include "metrics.hpp"
#include "models.hpp"
#include "optimize.hpp"
#include "report.hpp"

struct greyfc_series {
  std::vector<double> values;
  std::size_t train_len = 0;  // only set for built-in datasets
};

struct greyfc_report {
  greyfc::models::FitReport report;
};

struct greyfc_opt_result {
  greyfc::optimize::OptResult result;
};

struct greyfc_grid {
  std::vector<greyfc::experiments::GridRecord> records;
};

namespace {

thread_local std::string t_last_error;

void set_error(const std::string &message) { t_last_error = message; }

template <typename Fn>
greyfc_status wrap(Fn &&fn) {
  try {
    fn();
    t_last_error.clear();
    return GREYFC_OK;
  } catch (const greyfc::Error &err) {
    set_error(err.what());
    return err.code();
  } catch (const std::bad_alloc &) {
    set_error("out of memory");
    return GREYFC_ERR_INTERNAL;
  } catch (const std::exception &err) {
    set_error(err.what());
    return GREYFC_ERR_INTERNAL;
  }
}

void require_arg(bool ok, const char *what) {
  if (!ok) {
    greyfc::fail(GREYFC_ERR_INVALID_ARGUMENT, what);
  }
}

char *copy_string(const std::string &s) {
  char *out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

greyfc::optimize::OptimizerConfig make_config(const greyfc_opt_config *config) {
  require_arg(config != nullptr && config->algorithm != nullptr,
              "optimizer config and algorithm name must be non-null");
  greyfc::optimize::OptimizerConfig out;
  out.algorithm = greyfc::optimize::parse_algorithm(config->algorithm);
  if (config->population != 0) out.population = config->population;
  if (config->iterations != 0) out.iterations = config->iterations;
  out.seed = config->seed;
  return out;
}

template <double (*Metric)(std::span<const double>, std::span<const double>,
                           bool)>
greyfc_status metric_entry(const double *actual, const double *predicted,
                           size_t n, int skip_first, double *out) {
  return wrap([&] {
    require_arg(actual != nullptr && predicted != nullptr && out != nullptr,
                "metric inputs must be non-null");
    *out = Metric({actual, n}, {predicted, n}, skip_first != 0);
  });
}

}  // namespace

extern "C" {

const char *greyfc_status_name(greyfc_status status) {
  switch (status) {
    case GREYFC_OK:
      return "ok";
    case GREYFC_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case GREYFC_ERR_INVALID_SERIES:
      return "invalid series";
    case GREYFC_ERR_SINGULAR_SYSTEM:
      return "singular system";
    case GREYFC_ERR_SINGULAR_PARAMETERS:
      return "singular parameters";
    case GREYFC_ERR_UNKNOWN_NAME:
      return "unknown name";
    case GREYFC_ERR_PARSE:
      return "parse error";
    case GREYFC_ERR_IO:
      return "io error";
    case GREYFC_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char *greyfc_last_error(void) { return t_last_error.c_str(); }

const char *greyfc_version(void) { return "0.1.0"; }

void greyfc_string_free(char *str) { delete[] str; }

/* --- series --------------------------------------------------------- */

greyfc_status greyfc_series_create(const double *values, size_t n,
                                   greyfc_series **out) {
  return wrap([&] {
    require_arg(values != nullptr && out != nullptr && n > 0,
                "series_create: values/out must be non-null and n > 0");
    *out = new greyfc_series{std::vector<double>(values, values + n), 0};
  });
}

greyfc_status greyfc_series_from_csv(const char *text, greyfc_series **out) {
  return wrap([&] {
    require_arg(text != nullptr && out != nullptr,
                "series_from_csv: text/out must be non-null");
    greyfc::csv::ParsedSeries parsed = greyfc::csv::parse_series(text);
    *out = new greyfc_series{std::move(parsed.values), 0};
  });
}

greyfc_status greyfc_series_from_csv_file(const char *path,
                                          greyfc_series **out) {
  return wrap([&] {
    require_arg(path != nullptr && out != nullptr,
                "series_from_csv_file: path/out must be non-null");
    greyfc::csv::ParsedSeries parsed = greyfc::csv::read_series_file(path);
    *out = new greyfc_series{std::move(parsed.values), 0};
  });
}

greyfc_status greyfc_builtin_dataset(const char *name, greyfc_series **out,
                                     size_t *train_len) {
  return wrap([&] {
    require_arg(name != nullptr && out != nullptr,
                "builtin_dataset: name/out must be non-null");
    const greyfc::experiments::CaseDataset &dataset =
        greyfc::experiments::builtin_dataset(name);
    if (train_len != nullptr) {
      *train_len = dataset.train_len;
    }
    *out = new greyfc_series{dataset.values, dataset.train_len};
  });
}

size_t greyfc_series_len(const greyfc_series *series) {
  return series == nullptr ? 0 : series->values.size();
}

const double *greyfc_series_values(const greyfc_series *series) {
  return series == nullptr ? nullptr : series->values.data();
}

void greyfc_series_free(greyfc_series *series) { delete series; }

/* --- fractional operators ------------------------------------------- */

double greyfc_gen_binomial(double order, size_t j) {
  return greyfc::fracops::gen_binomial(order, j);
}

greyfc_status greyfc_fago(const double *x, size_t n, double order,
                          double *out) {
  return wrap([&] {
    require_arg(x != nullptr && out != nullptr && n > 0,
                "fago: x/out must be non-null and n > 0");
    const std::vector<double> result =
        greyfc::fracops::fago({x, n}, order);
    std::memcpy(out, result.data(), n * sizeof(double));
  });
}

greyfc_status greyfc_ifago(const double *xa, size_t n, double order,
                           double *out) {
  return wrap([&] {
    require_arg(xa != nullptr && out != nullptr && n > 0,
                "ifago: xa/out must be non-null and n > 0");
    const std::vector<double> result =
        greyfc::fracops::ifago({xa, n}, order);
    std::memcpy(out, result.data(), n * sizeof(double));
  });
}

greyfc_status greyfc_background(const double *xa, size_t n, double *out) {
  return wrap([&] {
    require_arg(xa != nullptr && out != nullptr && n >= 2,
                "background: xa/out must be non-null and n >= 2");
    const std::vector<double> result = greyfc::fracops::background({xa, n});
    std::memcpy(out, result.data(), (n - 1) * sizeof(double));
  });
}

/* --- metrics --------------------------------------------------------- */

greyfc_status greyfc_mape(const double *actual, const double *predicted,
                          size_t n, int skip_first, double *out) {
  return metric_entry<greyfc::metrics::mape>(actual, predicted, n, skip_first,
                                             out);
}

greyfc_status greyfc_mse(const double *actual, const double *predicted,
                         size_t n, int skip_first, double *out) {
  return metric_entry<greyfc::metrics::mse>(actual, predicted, n, skip_first,
                                            out);
}

greyfc_status greyfc_mae(const double *actual, const double *predicted,
                         size_t n, int skip_first, double *out) {
  return metric_entry<greyfc::metrics::mae>(actual, predicted, n, skip_first,
                                            out);
}

greyfc_status greyfc_lewis_grade(double mape_percent, const char **grade) {
  return wrap([&] {
    require_arg(grade != nullptr, "lewis_grade: grade must be non-null");
    *grade =
        greyfc::metrics::to_string(greyfc::metrics::lewis_grade(mape_percent));
  });
}

/* --- model fitting --------------------------------------------------- */

greyfc_status greyfc_fit(const greyfc_series *series, size_t train_n,
                         const char *model, const double *hyper,
                         size_t hyper_len, size_t horizon,
                         greyfc_report **out) {
  return wrap([&] {
    require_arg(series != nullptr && model != nullptr && out != nullptr,
                "fit: series/model/out must be non-null");
    const greyfc::models::Model parsed = greyfc::models::parse_model(model);
    std::optional<greyfc::models::HyperParams> hp;
    if (parsed == greyfc::models::Model::fgm) {
      require_arg(hyper != nullptr && hyper_len >= 1,
                  "fit: fgm requires hyper = {r}");
      hp = greyfc::models::HyperParams{hyper[0], hyper[0]};
    } else if (parsed == greyfc::models::Model::ufgm) {
      require_arg(hyper != nullptr && hyper_len >= 2,
                  "fit: ufgm requires hyper = {r, alpha}");
      hp = greyfc::models::HyperParams{hyper[0], hyper[1]};
    }
    const size_t effective_train =
        train_n == 0 ? series->values.size() : train_n;
    *out = new greyfc_report{greyfc::models::fit(
        series->values, effective_train, horizon, parsed, hp)};
  });
}

greyfc_status greyfc_ufgm_response(double a, double b, double c, double r,
                                   double x_alpha_1, size_t k, double *out) {
  return wrap([&] {
    require_arg(out != nullptr && k >= 1,
                "ufgm_response: out must be non-null and k >= 1");
    *out = greyfc::models::ufgm_response(greyfc::models::StructuralParams{a, b,
                                                                          c},
                                         greyfc::models::HyperParams{r, 1.0},
                                         x_alpha_1, k);
  });
}

const char *greyfc_report_model(const greyfc_report *report) {
  return report == nullptr ? "" : greyfc::models::to_string(report->report.model);
}

greyfc_status greyfc_report_fitted(const greyfc_report *report,
                                   const double **values, size_t *len) {
  return wrap([&] {
    require_arg(report != nullptr && values != nullptr && len != nullptr,
                "report_fitted: arguments must be non-null");
    *values = report->report.fitted.data();
    *len = report->report.fitted.size();
  });
}

greyfc_status greyfc_report_forecast(const greyfc_report *report,
                                     const double **values, size_t *len) {
  return wrap([&] {
    require_arg(report != nullptr && values != nullptr && len != nullptr,
                "report_forecast: arguments must be non-null");
    *values = report->report.forecast.data();
    *len = report->report.forecast.size();
  });
}

int greyfc_report_has_out(const greyfc_report *report) {
  return report != nullptr && report->report.metrics_out.has_value() ? 1 : 0;
}

greyfc_status greyfc_report_metric(const greyfc_report *report,
                                   const char *which, const char *name,
                                   double *out) {
  return wrap([&] {
    require_arg(report != nullptr && which != nullptr && name != nullptr &&
                    out != nullptr,
                "report_metric: arguments must be non-null");
    const std::string block_name(which);
    const greyfc::metrics::MetricBlock *block = nullptr;
    if (block_name == "in") {
      block = &report->report.metrics_in;
    } else if (block_name == "out") {
      require_arg(report->report.metrics_out.has_value(),
                  "report_metric: report has no out-of-sample block");
      block = &*report->report.metrics_out;
    } else {
      greyfc::fail(GREYFC_ERR_INVALID_ARGUMENT,
                   "report_metric: which must be 'in' or 'out'");
    }
    const std::string metric_name(name);
    if (metric_name == "mape") {
      *out = block->mape;
    } else if (metric_name == "mse") {
      *out = block->mse;
    } else if (metric_name == "mae") {
      *out = block->mae;
    } else if (metric_name == "count") {
      *out = static_cast<double>(block->count);
    } else {
      greyfc::fail(GREYFC_ERR_INVALID_ARGUMENT,
                   "report_metric: name must be mape|mse|mae|count");
    }
  });
}

greyfc_status greyfc_report_param(const greyfc_report *report,
                                  const char *name, double *out) {
  return wrap([&] {
    require_arg(report != nullptr && name != nullptr && out != nullptr,
                "report_param: arguments must be non-null");
    const std::string key(name);
    const greyfc::models::FitReport &r = report->report;
    if (key == "a" && r.params) {
      *out = r.params->a;
    } else if (key == "b" && r.params) {
      *out = r.params->b;
    } else if (key == "c" && r.params &&
               r.model == greyfc::models::Model::ufgm) {
      *out = r.params->c;
    } else if (key == "beta1" && r.dgm) {
      *out = r.dgm->beta1;
    } else if (key == "beta2" && r.dgm) {
      *out = r.dgm->beta2;
    } else if (key == "r" && r.hyper) {
      *out = r.hyper->r;
    } else if (key == "alpha" && r.hyper &&
               r.model == greyfc::models::Model::ufgm) {
      *out = r.hyper->alpha;
    } else {
      greyfc::fail(GREYFC_ERR_INVALID_ARGUMENT,
                   "report_param: no parameter '" + key + "' in this report");
    }
  });
}

const char *greyfc_report_lewis(const greyfc_report *report) {
  return report == nullptr ? ""
                           : greyfc::metrics::to_string(report->report.lewis);
}

int greyfc_report_search_info(const greyfc_report *report,
                              const char **algorithm, uint64_t *seed,
                              double *fitness) {
  if (report == nullptr || !report->report.search.has_value()) {
    return 0;
  }
  const greyfc::models::SearchProvenance &s = *report->report.search;
  if (algorithm != nullptr) *algorithm = s.algorithm.c_str();
  if (seed != nullptr) *seed = s.seed;
  if (fitness != nullptr) *fitness = s.best_fitness;
  return 1;
}

greyfc_status greyfc_report_to_json(const greyfc_report *report, char **out) {
  return wrap([&] {
    require_arg(report != nullptr && out != nullptr,
                "report_to_json: arguments must be non-null");
    *out = copy_string(greyfc::report::to_json_string(report->report));
  });
}

void greyfc_report_free(greyfc_report *report) { delete report; }

/* --- metaheuristic search -------------------------------------------- */

greyfc_status greyfc_minimize(greyfc_objective fn, void *user,
                              const double *lower, const double *upper,
                              size_t dim, const greyfc_opt_config *config,
                              greyfc_opt_result **out) {
  return wrap([&] {
    require_arg(fn != nullptr && lower != nullptr && upper != nullptr &&
                    out != nullptr && dim > 0,
                "minimize: fn/bounds/out must be non-null and dim > 0");
    const greyfc::optimize::OptimizerConfig cfg = make_config(config);
    greyfc::optimize::SearchSpace space{
        std::vector<double>(lower, lower + dim),
        std::vector<double>(upper, upper + dim)};
    greyfc::optimize::Objective objective =
        [fn, user](std::span<const double> point) {
          return fn(point.data(), point.size(), user);
        };
    *out = new greyfc_opt_result{
        greyfc::optimize::minimize(objective, space, cfg)};
  });
}

greyfc_status greyfc_search_hyper(const greyfc_series *series, size_t train_n,
                                  const char *model,
                                  const greyfc_opt_config *config,
                                  const double *lower, const double *upper,
                                  greyfc_opt_result **out) {
  return wrap([&] {
    require_arg(series != nullptr && model != nullptr && out != nullptr,
                "search_hyper: series/model/out must be non-null");
    const greyfc::models::Model parsed = greyfc::models::parse_model(model);
    require_arg(parsed == greyfc::models::Model::fgm ||
                    parsed == greyfc::models::Model::ufgm,
                "search_hyper: model must be fgm or ufgm");
    const size_t effective_train =
        train_n == 0 ? series->values.size() : train_n;
    require_arg(effective_train <= series->values.size(),
                "search_hyper: train length exceeds the series length");
    std::vector<double> train(series->values.begin(),
                              series->values.begin() + effective_train);
    greyfc::models::validate_series(train);

    greyfc::optimize::SearchSpace space =
        parsed == greyfc::models::Model::fgm
            ? greyfc::optimize::default_fgm_space()
            : greyfc::optimize::default_ufgm_space();
    const size_t dim = space.lower.size();
    if (lower != nullptr) {
      space.lower.assign(lower, lower + dim);
    }
    if (upper != nullptr) {
      space.upper.assign(upper, upper + dim);
    }
    for (double lo : space.lower) {
      require_arg(lo >= greyfc::models::k_epsilon_singular,
                  "search_hyper: bounds must exceed the singularity epsilon");
    }
    greyfc::optimize::Objective objective =
        parsed == greyfc::models::Model::fgm
            ? greyfc::optimize::fgm_objective(std::move(train))
            : greyfc::optimize::ufgm_objective(std::move(train));
    *out = new greyfc_opt_result{greyfc::optimize::minimize(
        objective, space, make_config(config))};
  });
}

size_t greyfc_opt_dim(const greyfc_opt_result *result) {
  return result == nullptr ? 0 : result->result.best_point.size();
}

greyfc_status greyfc_opt_best_point(const greyfc_opt_result *result,
                                    const double **point, size_t *dim) {
  return wrap([&] {
    require_arg(result != nullptr && point != nullptr && dim != nullptr,
                "opt_best_point: arguments must be non-null");
    *point = result->result.best_point.data();
    *dim = result->result.best_point.size();
  });
}

double greyfc_opt_best_fitness(const greyfc_opt_result *result) {
  return result == nullptr ? 0.0 : result->result.best_fitness;
}

greyfc_status greyfc_opt_trace(const greyfc_opt_result *result,
                               const double **trace, size_t *len) {
  return wrap([&] {
    require_arg(result != nullptr && trace != nullptr && len != nullptr,
                "opt_trace: arguments must be non-null");
    *trace = result->result.trace.data();
    *len = result->result.trace.size();
  });
}

void greyfc_opt_result_free(greyfc_opt_result *result) { delete result; }

/* --- harnesses -------------------------------------------------------- */

greyfc_status greyfc_run_comparison(const greyfc_series *series,
                                    size_t train_n, size_t horizon,
                                    const greyfc_policy *policy,
                                    greyfc_report *reports[4]) {
  return wrap([&] {
    require_arg(series != nullptr && reports != nullptr,
                "run_comparison: series/reports must be non-null");
    greyfc::experiments::SearchPolicy pol;
    if (policy != nullptr) {
      if (policy->population != 0) pol.population = policy->population;
      if (policy->iterations != 0) pol.iterations = policy->iterations;
      pol.seed_base = policy->seed_base;
      if (policy->n_seeds != 0) pol.n_seeds = policy->n_seeds;
    }
    const size_t effective_train =
        train_n == 0 ? series->train_len : train_n;
    require_arg(effective_train != 0,
                "run_comparison: train length required for this series");
    std::vector<greyfc::models::FitReport> result =
        greyfc::experiments::run_comparison(series->values, effective_train,
                                            horizon, pol);
    for (size_t i = 0; i < 4; ++i) {
      reports[i] = new greyfc_report{std::move(result[i])};
    }
  });
}

greyfc_status greyfc_grid_run(const greyfc_series *series, size_t train_n,
                              const greyfc_grid_spec *spec,
                              greyfc_grid **out) {
  return wrap([&] {
    require_arg(series != nullptr && out != nullptr,
                "grid_run: series/out must be non-null");
    greyfc::experiments::GridSpec grid_spec =
        greyfc::experiments::GridSpec::defaults();
    if (spec != nullptr) {
      auto apply = [](const double *values, size_t n,
                      std::vector<double> &axis) {
        if (values != nullptr && n > 0) {
          axis.assign(values, values + n);
        }
      };
      apply(spec->initial, spec->n_initial, grid_spec.initial);
      apply(spec->alpha, spec->n_alpha, grid_spec.alpha);
      apply(spec->r, spec->n_r, grid_spec.r);
      apply(spec->a, spec->n_a, grid_spec.a);
      apply(spec->b, spec->n_b, grid_spec.b);
      apply(spec->c, spec->n_c, grid_spec.c);
    }
    const size_t effective_train =
        train_n == 0 ? (series->train_len == 0 ? series->values.size()
                                               : series->train_len)
                     : train_n;
    *out = new greyfc_grid{greyfc::experiments::grid_search_effects(
        series->values, effective_train, grid_spec)};
  });
}

size_t greyfc_grid_len(const greyfc_grid *grid) {
  return grid == nullptr ? 0 : grid->records.size();
}

greyfc_status greyfc_grid_row(const greyfc_grid *grid, size_t index,
                              double coords[6], double *mape, int *ok) {
  return wrap([&] {
    require_arg(grid != nullptr && coords != nullptr && ok != nullptr,
                "grid_row: arguments must be non-null");
    require_arg(index < grid->records.size(), "grid_row: index out of range");
    const greyfc::experiments::GridRecord &record = grid->records[index];
    coords[0] = record.initial;
    coords[1] = record.alpha;
    coords[2] = record.r;
    coords[3] = record.a;
    coords[4] = record.b;
    coords[5] = record.c;
    *ok = record.ok ? 1 : 0;
    if (record.ok && mape != nullptr) {
      *mape = record.mape;
    }
  });
}

greyfc_status greyfc_grid_to_csv(const greyfc_grid *grid, char **out) {
  return wrap([&] {
    require_arg(grid != nullptr && out != nullptr,
                "grid_to_csv: arguments must be non-null");
    std::string text = "initial_value,alpha,r,a,b,c,mape,status\n";
    auto fmt = [](double v) { return nlohmann::json(v).dump(); };
    for (const greyfc::experiments::GridRecord &record : grid->records) {
      text += fmt(record.initial) + ',' + fmt(record.alpha) + ',' +
              fmt(record.r) + ',' + fmt(record.a) + ',' + fmt(record.b) + ',' +
              fmt(record.c) + ',';
      if (record.ok) {
        text += fmt(record.mape) + ",ok\n";
      } else {
        text += ",singular\n";
      }
    }
    *out = copy_string(text);
  });
}

void greyfc_grid_free(greyfc_grid *grid) { delete grid; }

} /* extern "C" */
