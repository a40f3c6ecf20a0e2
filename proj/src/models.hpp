#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "metrics.hpp"

namespace greyfc::models {

// Guards below this magnitude count as singular (|a|, |1 - a r + a|, r,
// |beta1 - 1| for the DGM linear limit).
inline constexpr double k_epsilon_singular = 1e-8;
inline constexpr double k_condition_limit = 1e12;

enum class Model { gm, dgm, fgm, ufgm };

Model parse_model(std::string_view name);
const char *to_string(Model model) noexcept;

// Emerging coefficients: kernel memory order r and accumulation order alpha.
struct HyperParams {
  double r = 1.0;
  double alpha = 1.0;
};

// Linear coefficients of the whitened equation.
struct StructuralParams {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

struct DgmParams {
  double beta1 = 0.0;
  double beta2 = 0.0;
};

// Provenance of an optimizer-chosen hyperparameter set.
struct SearchProvenance {
  std::string algorithm;
  std::uint64_t seed = 0;
  double best_fitness = 0.0;
  std::vector<double> trace;
};

struct FitReport {
  Model model = Model::gm;
  std::optional<HyperParams> hyper;
  std::optional<StructuralParams> params;
  std::optional<DgmParams> dgm;
  std::vector<double> fitted;
  std::vector<double> forecast;
  metrics::MetricBlock metrics_in;
  std::optional<metrics::MetricBlock> metrics_out;
  metrics::LewisGrade lewis = metrics::LewisGrade::high;
  std::optional<SearchProvenance> search;
};

// Model-fit preconditions: n >= 4, every value finite and strictly positive.
void validate_series(std::span<const double> train);

// Extension point for memory-kernel instances: a kernel plugs in the
// discrete derivative sequence of the whitened equation, its analytically
// solved accumulated response, and the validity region of that response.
// The response must return the supplied initial value exactly at k = 1.
struct KernelModelSpec {
  const char *name;
  std::vector<double> (*derivative_sequence)(std::span<const double> train,
                                             const HyperParams &hyper);
  double (*response)(const StructuralParams &params, const HyperParams &hyper,
                     double initial, std::size_t k);
  bool (*validity)(const StructuralParams &params, const HyperParams &hyper);
};

// The bundled exponential-kernel instance: the derivative sequence is the
// (alpha - r)-order accumulation of the raw series.
const KernelModelSpec &exponential_kernel_model() noexcept;

// Least-squares estimation of (a, b, c) from the kernel's discrete equation
// y(k) + a z^(alpha)(k) = b k + c over k = 2..n.
StructuralParams fit_kernel_model(std::span<const double> train,
                                  const HyperParams &hyper,
                                  const KernelModelSpec &kernel);

// Accumulated response over k = 1..n+horizon anchored at train(1), restored
// at order alpha. Raises SingularParameters outside the validity region.
std::vector<double> predict_kernel_model(std::span<const double> train,
                                         const HyperParams &hyper,
                                         const StructuralParams &params,
                                         std::size_t horizon,
                                         const KernelModelSpec &kernel);

// The exponential-kernel model under its usual name.
StructuralParams fit_ufgm(std::span<const double> train,
                          const HyperParams &hyper);

// Discrete time response of the exponential-kernel model; returns the
// supplied initial value exactly at k = 1.
double ufgm_response(const StructuralParams &params, const HyperParams &hyper,
                     double x_alpha_1, std::size_t k);

// Full restored pipeline: response over k = 1..n+horizon anchored at
// train(1), then inverse accumulation at order alpha.
std::vector<double> predict_ufgm(std::span<const double> train,
                                 const HyperParams &hyper,
                                 const StructuralParams &params,
                                 std::size_t horizon);

struct GmParams {
  double a = 0.0;
  double b = 0.0;
};

GmParams fit_gm_params(std::span<const double> train);
std::vector<double> predict_gm(std::span<const double> train,
                               const GmParams &params, std::size_t horizon);

DgmParams fit_dgm_params(std::span<const double> train);
std::vector<double> predict_dgm(std::span<const double> train,
                                const DgmParams &params, std::size_t horizon);

GmParams fit_fgm_params(std::span<const double> train, double r);
std::vector<double> predict_fgm(std::span<const double> train, double r,
                                const GmParams &params, std::size_t horizon);

// Uniform model contract: fit on the first train_n points of data, forecast
// `horizon` steps, score in-sample (skip-first) and against any holdout
// overlap. hyper is required for fgm (r) and ufgm (r, alpha).
FitReport fit(std::span<const double> data, std::size_t train_n,
              std::size_t horizon, Model model,
              const std::optional<HyperParams> &hyper);

}  // namespace greyfc::models
