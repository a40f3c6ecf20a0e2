#pragma once

#include <cstddef>
#include <span>

namespace greyfc::metrics {

struct MetricBlock {
  double mape = 0.0;
  double mse = 0.0;
  double mae = 0.0;
  std::size_t count = 0;
};

// Mean absolute percentage error in percent. skip_first excludes the first
// point (in-sample convention); actuals must be nonzero on scored points.
double mape(std::span<const double> actual, std::span<const double> predicted,
            bool skip_first);

double mse(std::span<const double> actual, std::span<const double> predicted,
           bool skip_first);

double mae(std::span<const double> actual, std::span<const double> predicted,
           bool skip_first);

MetricBlock block(std::span<const double> actual,
                  std::span<const double> predicted, bool skip_first);

enum class LewisGrade { high, good, reasonable, inaccurate };

// Conventional bands: <10 high, [10,20) good, [20,50) reasonable, >=50
// inaccurate. Rejects negative input.
LewisGrade lewis_grade(double mape_percent);

const char *to_string(LewisGrade grade) noexcept;

}  // namespace greyfc::metrics
