#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace greyfc::fracops {

// Generalized binomial coefficient binom(order+j-1, j), computed as the
// running product prod_{i=0..j-1} (order+i)/(i+1). Empty product (j=0) is 1.
// Total over all real orders, including zero and negatives.
double gen_binomial(double order, std::size_t j) noexcept;

// Coefficient table [gen_binomial(order, 0) .. gen_binomial(order, count-1)].
std::vector<double> binomial_table(double order, std::size_t count);

// order-FAGO: out(k) = sum_{i=1..k} gen_binomial(order, k-i) * x(i).
// Order 0 is the identity, order 1 the running sum.
std::vector<double> fago(std::span<const double> x, double order);

// Inverse FAGO: first difference of the (1-order)-FAGO, the exact inverse
// of fago at the same order. The first element equals xa(1).
std::vector<double> ifago(std::span<const double> xa, double order);

// Trapezoid background values z(k) = (xa(k) + xa(k-1))/2 for k = 2..n.
std::vector<double> background(std::span<const double> xa);

// Accumulation tagged with the order that produced it, so a restore cannot
// be paired with a mismatched order.
struct AccumulatedSeries {
  std::vector<double> values;
  double order = 0.0;
  std::size_t source_len = 0;
};

AccumulatedSeries accumulate(std::span<const double> x, double order);

std::vector<double> restore(const AccumulatedSeries &xa);

}  // namespace greyfc::fracops
