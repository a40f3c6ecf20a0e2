#include "metrics.hpp"

#include <cmath>

#include "error.hpp"

namespace greyfc::metrics {
namespace {

void check_lengths(std::span<const double> actual,
                   std::span<const double> predicted, bool skip_first) {
  if (actual.size() != predicted.size()) {
    fail(GREYFC_ERR_INVALID_ARGUMENT, "metric inputs have mismatched lengths");
  }
  const std::size_t skip = skip_first ? 1 : 0;
  if (actual.size() <= skip) {
    fail(GREYFC_ERR_INVALID_ARGUMENT, "metric inputs have no scored points");
  }
}

}  // namespace

double mape(std::span<const double> actual, std::span<const double> predicted,
            bool skip_first) {
  check_lengths(actual, predicted, skip_first);
  const std::size_t start = skip_first ? 1 : 0;
  double sum = 0.0;
  for (std::size_t i = start; i < actual.size(); ++i) {
    if (actual[i] == 0.0) {
      fail(GREYFC_ERR_INVALID_ARGUMENT,
           "mape: scored actual value is zero (division by zero)");
    }
    sum += std::abs(predicted[i] - actual[i]) / std::abs(actual[i]);
  }
  return 100.0 * sum / static_cast<double>(actual.size() - start);
}

double mse(std::span<const double> actual, std::span<const double> predicted,
           bool skip_first) {
  check_lengths(actual, predicted, skip_first);
  const std::size_t start = skip_first ? 1 : 0;
  double sum = 0.0;
  for (std::size_t i = start; i < actual.size(); ++i) {
    const double d = predicted[i] - actual[i];
    sum += d * d;
  }
  return sum / static_cast<double>(actual.size() - start);
}

double mae(std::span<const double> actual, std::span<const double> predicted,
           bool skip_first) {
  check_lengths(actual, predicted, skip_first);
  const std::size_t start = skip_first ? 1 : 0;
  double sum = 0.0;
  for (std::size_t i = start; i < actual.size(); ++i) {
    sum += std::abs(predicted[i] - actual[i]);
  }
  return sum / static_cast<double>(actual.size() - start);
}

MetricBlock block(std::span<const double> actual,
                  std::span<const double> predicted, bool skip_first) {
  MetricBlock out;
  out.mape = mape(actual, predicted, skip_first);
  out.mse = mse(actual, predicted, skip_first);
  out.mae = mae(actual, predicted, skip_first);
  out.count = actual.size() - (skip_first ? 1 : 0);
  return out;
}

LewisGrade lewis_grade(double mape_percent) {
  if (!(mape_percent >= 0.0)) {
    fail(GREYFC_ERR_INVALID_ARGUMENT, "lewis_grade: MAPE must be nonnegative");
  }
  if (mape_percent < 10.0) return LewisGrade::high;
  if (mape_percent < 20.0) return LewisGrade::good;
  if (mape_percent < 50.0) return LewisGrade::reasonable;
  return LewisGrade::inaccurate;
}

const char *to_string(LewisGrade grade) noexcept {
  switch (grade) {
    case LewisGrade::high:
      return "high";
    case LewisGrade::good:
      return "good";
    case LewisGrade::reasonable:
      return "reasonable";
    case LewisGrade::inaccurate:
      return "inaccurate";
  }
  return "inaccurate";
}

}  // namespace greyfc::metrics
