#include "fracops.hpp"

namespace greyfc::fracops {

double gen_binomial(double order, std::size_t j) noexcept {
  double value = 1.0;
  for (std::size_t i = 0; i < j; ++i) {
    value *= (order + static_cast<double>(i)) / (static_cast<double>(i) + 1.0);
  }
  return value;
}

std::vector<double> binomial_table(double order, std::size_t count) {
  std::vector<double> table(count);
  double value = 1.0;
  for (std::size_t j = 0; j < count; ++j) {
    table[j] = value;
    value *= (order + static_cast<double>(j)) / (static_cast<double>(j) + 1.0);
  }
  return table;
}

std::vector<double> fago(std::span<const double> x, double order) {
  const std::size_t n = x.size();
  const std::vector<double> coef = binomial_table(order, n);
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    double sum = 0.0;
    for (std::size_t i = 0; i <= k; ++i) {
      sum += coef[k - i] * x[i];
    }
    out[k] = sum;
  }
  return out;
}

std::vector<double> ifago(std::span<const double> xa, double order) {
  std::vector<double> cumulative = fago(xa, 1.0 - order);
  std::vector<double> out(xa.size());
  for (std::size_t k = 0; k < xa.size(); ++k) {
    out[k] = k == 0 ? cumulative[0] : cumulative[k] - cumulative[k - 1];
  }
  return out;
}

std::vector<double> background(std::span<const double> xa) {
  std::vector<double> z;
  if (xa.size() < 2) {
    return z;
  }
  z.reserve(xa.size() - 1);
  for (std::size_t k = 1; k < xa.size(); ++k) {
    z.push_back((xa[k] + xa[k - 1]) / 2.0);
  }
  return z;
}

AccumulatedSeries accumulate(std::span<const double> x, double order) {
  return AccumulatedSeries{fago(x, order), order, x.size()};
}

std::vector<double> restore(const AccumulatedSeries &xa) {
  return ifago(xa.values, xa.order);
}

}  // namespace greyfc::fracops
