#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace semiframe {

using cplx = std::complex<double>;
using Index = std::ptrdiff_t;

inline constexpr double kPi = 3.14159265358979323846;

// Pairwise (cascade) summation. Fixed association order, so results are reproducible.
double pairwise_sum(std::span<const double> values);
cplx pairwise_sum(std::span<const cplx> values);
long double pairwise_sum(std::span<const long double> values);

// Least-squares fit of log(y) = exponent * log(x) + intercept.
struct PowerFit {
  double exponent = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

// Requires at least two points with x, y > 0.
PowerFit fit_power_law(std::span<const double> x, std::span<const double> y);

// Linear-interpolated quantile, q in [0, 1].
double quantile(std::vector<double> values, double q);

}  // namespace semiframe
