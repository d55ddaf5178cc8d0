#include "semiframe/numeric.hpp"

#include <algorithm>
#include <cmath>

#include "semiframe/errors.hpp"

namespace semiframe {
namespace {

template <class T>
T cascade(std::span<const T> v) {
  constexpr std::size_t kBlock = 32;
  if (v.size() <= kBlock) {
    T acc{};
    for (const T& x : v) acc += x;
    return acc;
  }
  const std::size_t half = v.size() / 2;
  return cascade(v.first(half)) + cascade(v.subspan(half));
}

}  // namespace

double pairwise_sum(std::span<const double> values) { return cascade(values); }
cplx pairwise_sum(std::span<const cplx> values) { return cascade(values); }
long double pairwise_sum(std::span<const long double> values) { return cascade(values); }

PowerFit fit_power_law(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw InputError("fit_power_law: need >= 2 paired points");
  const std::size_t n = x.size();
  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw InputError("fit_power_law: non-positive value");
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  const double mx = pairwise_sum(lx) / n;
  const double my = pairwise_sum(ly) / n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (sxx == 0.0) throw InputError("fit_power_law: degenerate abscissae");
  PowerFit fit;
  fit.exponent = sxy / sxx;
  fit.intercept = my - fit.exponent * mx;
  fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw InputError("quantile: empty sample");
  if (q < 0.0 || q > 1.0) throw InputError("quantile: q outside [0,1]");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double t = pos - static_cast<double>(lo);
  return values[lo] + t * (values[hi] - values[lo]);
}

}  // namespace semiframe
