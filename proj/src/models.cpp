#include "models.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "error.hpp"
#include "fracops.hpp"
#include "linalg.hpp"

namespace greyfc::models {
namespace {

void check_finite_curve(std::span<const double> values, const char *what) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      fail(GREYFC_ERR_SINGULAR_PARAMETERS,
           std::string(what) + ": response produced a non-finite value");
    }
  }
}

void require(bool ok, const char *guard) {
  if (!ok) {
    fail(GREYFC_ERR_SINGULAR_PARAMETERS,
         std::string("singular parameters: ") + guard);
  }
}

}  // namespace

Model parse_model(std::string_view name) {
  if (name == "gm") return Model::gm;
  if (name == "dgm") return Model::dgm;
  if (name == "fgm") return Model::fgm;
  if (name == "ufgm") return Model::ufgm;
  fail(GREYFC_ERR_UNKNOWN_NAME,
       "unknown model '" + std::string(name) + "' (expected gm|dgm|fgm|ufgm)");
}

const char *to_string(Model model) noexcept {
  switch (model) {
    case Model::gm:
      return "gm";
    case Model::dgm:
      return "dgm";
    case Model::fgm:
      return "fgm";
    case Model::ufgm:
      return "ufgm";
  }
  return "gm";
}

void validate_series(std::span<const double> train) {
  if (train.size() < 4) {
    std::ostringstream msg;
    msg << "series has " << train.size()
        << " values; model fitting needs at least 4";
    fail(GREYFC_ERR_INVALID_SERIES, msg.str());
  }
  for (std::size_t i = 0; i < train.size(); ++i) {
    if (!std::isfinite(train[i]) || train[i] <= 0.0) {
      std::ostringstream msg;
      msg << "series value at position " << (i + 1)
          << " is not strictly positive and finite";
      fail(GREYFC_ERR_INVALID_SERIES, msg.str());
    }
  }
}

namespace {

std::vector<double> exponential_derivative(std::span<const double> train,
                                           const HyperParams &hyper) {
  return fracops::fago(train, hyper.alpha - hyper.r);
}

bool exponential_validity(const StructuralParams &params,
                          const HyperParams &hyper) {
  return hyper.r >= k_epsilon_singular &&
         std::abs(params.a) >= k_epsilon_singular &&
         std::abs(1.0 - params.a * hyper.r + params.a) >= k_epsilon_singular;
}

}  // namespace

const KernelModelSpec &exponential_kernel_model() noexcept {
  static constexpr KernelModelSpec kernel{
      "exponential", exponential_derivative, ufgm_response,
      exponential_validity};
  return kernel;
}

StructuralParams fit_kernel_model(std::span<const double> train,
                                  const HyperParams &hyper,
                                  const KernelModelSpec &kernel) {
  validate_series(train);
  const std::size_t n = train.size();
  const fracops::AccumulatedSeries xa = fracops::accumulate(train, hyper.alpha);
  const std::vector<double> y = kernel.derivative_sequence(train, hyper);
  const std::vector<double> z = fracops::background(xa.values);

  // chi^2 = sum_{k=2..n} (y(k) + a z(k) - b k - c)^2: regress y on [-z, k, 1].
  const std::size_t rows = n - 1;
  std::vector<double> design(rows * 3);
  std::vector<double> rhs(rows);
  for (std::size_t k = 2; k <= n; ++k) {
    const std::size_t row = k - 2;
    design[row * 3 + 0] = -z[row];
    design[row * 3 + 1] = static_cast<double>(k);
    design[row * 3 + 2] = 1.0;
    rhs[row] = y[k - 1];
  }
  const std::vector<double> sol =
      linalg::solve_ols(design, rows, 3, rhs, k_condition_limit);
  return StructuralParams{sol[0], sol[1], sol[2]};
}

std::vector<double> predict_kernel_model(std::span<const double> train,
                                         const HyperParams &hyper,
                                         const StructuralParams &params,
                                         std::size_t horizon,
                                         const KernelModelSpec &kernel) {
  validate_series(train);
  if (!kernel.validity(params, hyper)) {
    fail(GREYFC_ERR_SINGULAR_PARAMETERS,
         std::string("singular parameters: outside the validity region of "
                     "the ") +
             kernel.name + " kernel");
  }
  const std::size_t total = train.size() + horizon;
  fracops::AccumulatedSeries accumulated{std::vector<double>(total),
                                         hyper.alpha, total};
  for (std::size_t k = 1; k <= total; ++k) {
    accumulated.values[k - 1] = kernel.response(params, hyper, train[0], k);
  }
  std::vector<double> restored = fracops::restore(accumulated);
  check_finite_curve(restored, kernel.name);
  return restored;
}

StructuralParams fit_ufgm(std::span<const double> train,
                          const HyperParams &hyper) {
  return fit_kernel_model(train, hyper, exponential_kernel_model());
}

double ufgm_response(const StructuralParams &params, const HyperParams &hyper,
                     double x_alpha_1, std::size_t k) {
  const double a = params.a;
  const double r = hyper.r;
  require(r >= k_epsilon_singular, "r must exceed epsilon");
  require(std::abs(a) >= k_epsilon_singular, "|a| below epsilon");
  require(std::abs(1.0 - a * r + a) >= k_epsilon_singular,
          "|1 - a r + a| below epsilon");
  if (k == 1) {
    return x_alpha_1;  // algebraic identity of the response at k = 1
  }
  const double linear = (params.b / a) * static_cast<double>(k) +
                        params.c / a - params.b / (a * a * r);
  const double coef =
      x_alpha_1 - params.b / a - params.c / a + params.b / (a * a * r);
  const double exponent =
      -a * r * static_cast<double>(k - 1) / (1.0 - a * r + a);
  return coef * std::exp(exponent) + linear;
}

std::vector<double> predict_ufgm(std::span<const double> train,
                                 const HyperParams &hyper,
                                 const StructuralParams &params,
                                 std::size_t horizon) {
  return predict_kernel_model(train, hyper, params, horizon,
                              exponential_kernel_model());
}

GmParams fit_gm_params(std::span<const double> train) {
  validate_series(train);
  const std::size_t n = train.size();
  const std::vector<double> x1 = fracops::fago(train, 1.0);
  const std::vector<double> z = fracops::background(x1);
  const std::size_t rows = n - 1;
  std::vector<double> design(rows * 2);
  std::vector<double> rhs(rows);
  for (std::size_t k = 2; k <= n; ++k) {
    const std::size_t row = k - 2;
    design[row * 2 + 0] = -z[row];
    design[row * 2 + 1] = 1.0;
    rhs[row] = train[k - 1];
  }
  const std::vector<double> sol =
      linalg::solve_ols(design, rows, 2, rhs, k_condition_limit);
  return GmParams{sol[0], sol[1]};
}

std::vector<double> predict_gm(std::span<const double> train,
                               const GmParams &params, std::size_t horizon) {
  validate_series(train);
  require(std::abs(params.a) >= k_epsilon_singular, "|a| below epsilon");
  const std::size_t total = train.size() + horizon;
  std::vector<double> accumulated(total);
  const double level = params.b / params.a;
  for (std::size_t k = 1; k <= total; ++k) {
    accumulated[k - 1] =
        k == 1 ? train[0]
               : (train[0] - level) *
                         std::exp(-params.a * static_cast<double>(k - 1)) +
                     level;
  }
  std::vector<double> restored =
      fracops::restore(fracops::AccumulatedSeries{accumulated, 1.0, total});
  check_finite_curve(restored, "gm");
  return restored;
}

DgmParams fit_dgm_params(std::span<const double> train) {
  validate_series(train);
  const std::size_t n = train.size();
  const std::vector<double> x1 = fracops::fago(train, 1.0);
  const std::size_t rows = n - 1;
  std::vector<double> design(rows * 2);
  std::vector<double> rhs(rows);
  for (std::size_t k = 2; k <= n; ++k) {
    const std::size_t row = k - 2;
    design[row * 2 + 0] = x1[k - 2];
    design[row * 2 + 1] = 1.0;
    rhs[row] = x1[k - 1];
  }
  const std::vector<double> sol =
      linalg::solve_ols(design, rows, 2, rhs, k_condition_limit);
  return DgmParams{sol[0], sol[1]};
}

std::vector<double> predict_dgm(std::span<const double> train,
                                const DgmParams &params, std::size_t horizon) {
  validate_series(train);
  const std::size_t total = train.size() + horizon;
  std::vector<double> accumulated(total);
  const bool linear_limit = std::abs(params.beta1 - 1.0) < k_epsilon_singular;
  double power = 1.0;  // beta1^(k-1)
  for (std::size_t k = 1; k <= total; ++k) {
    if (k == 1) {
      accumulated[0] = train[0];
    } else if (linear_limit) {
      accumulated[k - 1] =
          train[0] + params.beta2 * static_cast<double>(k - 1);
    } else {
      accumulated[k - 1] = power * train[0] +
                           params.beta2 * (power - 1.0) / (params.beta1 - 1.0);
    }
    power *= params.beta1;
  }
  std::vector<double> restored =
      fracops::restore(fracops::AccumulatedSeries{accumulated, 1.0, total});
  check_finite_curve(restored, "dgm");
  return restored;
}

GmParams fit_fgm_params(std::span<const double> train, double r) {
  validate_series(train);
  if (!(r >= k_epsilon_singular)) {
    fail(GREYFC_ERR_SINGULAR_PARAMETERS,
         "singular parameters: fgm order r must exceed epsilon");
  }
  const std::size_t n = train.size();
  const std::vector<double> xr = fracops::fago(train, r);
  const std::vector<double> z = fracops::background(xr);
  const std::size_t rows = n - 1;
  std::vector<double> design(rows * 2);
  std::vector<double> rhs(rows);
  for (std::size_t k = 2; k <= n; ++k) {
    const std::size_t row = k - 2;
    design[row * 2 + 0] = -z[row];
    design[row * 2 + 1] = 1.0;
    rhs[row] = xr[k - 1] - xr[k - 2];
  }
  const std::vector<double> sol =
      linalg::solve_ols(design, rows, 2, rhs, k_condition_limit);
  return GmParams{sol[0], sol[1]};
}

std::vector<double> predict_fgm(std::span<const double> train, double r,
                                const GmParams &params, std::size_t horizon) {
  validate_series(train);
  require(std::abs(params.a) >= k_epsilon_singular, "|a| below epsilon");
  const std::size_t total = train.size() + horizon;
  std::vector<double> accumulated(total);
  const double level = params.b / params.a;
  for (std::size_t k = 1; k <= total; ++k) {
    accumulated[k - 1] =
        k == 1 ? train[0]
               : (train[0] - level) *
                         std::exp(-params.a * static_cast<double>(k - 1)) +
                     level;
  }
  std::vector<double> restored =
      fracops::restore(fracops::AccumulatedSeries{accumulated, r, total});
  check_finite_curve(restored, "fgm");
  return restored;
}

FitReport fit(std::span<const double> data, std::size_t train_n,
              std::size_t horizon, Model model,
              const std::optional<HyperParams> &hyper) {
  if (train_n > data.size()) {
    fail(GREYFC_ERR_INVALID_ARGUMENT,
         "train length exceeds the series length");
  }
  const std::span<const double> train = data.first(train_n);
  validate_series(train);

  FitReport report;
  report.model = model;
  std::vector<double> restored;
  switch (model) {
    case Model::gm: {
      const GmParams p = fit_gm_params(train);
      restored = predict_gm(train, p, horizon);
      report.params = StructuralParams{p.a, p.b, 0.0};
      break;
    }
    case Model::dgm: {
      const DgmParams p = fit_dgm_params(train);
      restored = predict_dgm(train, p, horizon);
      report.dgm = p;
      break;
    }
    case Model::fgm: {
      if (!hyper) {
        fail(GREYFC_ERR_INVALID_ARGUMENT, "fgm requires the order r");
      }
      const GmParams p = fit_fgm_params(train, hyper->r);
      restored = predict_fgm(train, hyper->r, p, horizon);
      report.hyper = HyperParams{hyper->r, hyper->r};
      report.params = StructuralParams{p.a, p.b, 0.0};
      break;
    }
    case Model::ufgm: {
      if (!hyper) {
        fail(GREYFC_ERR_INVALID_ARGUMENT, "ufgm requires r and alpha");
      }
      const StructuralParams p = fit_ufgm(train, *hyper);
      restored = predict_ufgm(train, *hyper, p, horizon);
      report.hyper = *hyper;
      report.params = p;
      break;
    }
  }

  report.fitted.assign(restored.begin(), restored.begin() + train_n);
  report.forecast.assign(restored.begin() + train_n, restored.end());
  report.metrics_in = metrics::block(train, report.fitted, true);

  const std::size_t holdout =
      std::min(horizon, data.size() - train_n);
  if (holdout > 0) {
    report.metrics_out =
        metrics::block(data.subspan(train_n, holdout),
                       std::span<const double>(report.forecast).first(holdout),
                       false);
  }
  report.lewis = metrics::lewis_grade(
      report.metrics_out ? report.metrics_out->mape : report.metrics_in.mape);
  return report;
}

}  // namespace greyfc::models
