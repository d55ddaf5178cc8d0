#pragma once

#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <nlohmann/json.hpp>

#include "semiframe/numeric.hpp"

namespace semiframe::muckenhoupt {

// 100 significant decimal digits; plateau breakpoints differ by ~1e-39 at k = 12.
using Real = boost::multiprecision::cpp_bin_float_100;

// Closed subinterval [lo, hi] of [0, 1].
struct Interval {
  Real lo;
  Real hi;

  Real length() const { return hi - lo; }
};

// Full-precision decimal rendering.
std::string decimal(const Real& x);

// A positive weight on (0, 1): scale * profile(x)^exponent, with profile one of
//   constant   1
//   power      x^alpha
//   plateau    k^k on (s_{k-1}, s_k), k = 2..k_max, and 1 on (s_{k_max}, 1); s_k = sum_{j=2}^k j^{-3j}
//   custom     piecewise constant on M equal cells
class Weight {
 public:
  enum class Kind { Constant, Power, Plateau, Custom };

  static Weight constant(double c);
  static Weight power(double alpha);
  // Throws RefusedError unless 2 <= k_max <= 12.
  static Weight plateau(int k_max);
  static Weight custom(std::vector<double> cell_values);
  // "constant:c", "power:alpha", "plateau:k_max"; custom weights come from files (see lab).
  static Weight parse(const std::string& spec);

  Weight pow(double e) const;
  Weight scaled(double c) const;

  Kind kind() const { return kind_; }
  std::string name() const;
  nlohmann::ordered_json descriptor() const;
  int k_max() const { return k_max_; }
  double exponent() const { return exponent_; }
  double scale() const { return scale_; }

  double value(double x) const;
  // Integral of weight^sign over [lo, hi], sign = +1 or -1; +inf when it diverges.
  Real integral(const Interval& interval, int sign = 1) const;
  // Same without the scale factor.
  Real profile_integral(const Interval& interval, int sign = 1) const;
  // Mean of weight^sign over each of M equal cells of (0, 1).
  std::vector<double> cell_means(Index cells, int sign = 1) const;

 private:
  Weight() = default;

  Kind kind_ = Kind::Constant;
  double scale_ = 1.0;
  double exponent_ = 1.0;  // applied to the profile
  double alpha_ = 0.0;     // power profile
  int k_max_ = 0;          // plateau profile
  std::vector<Real> breaks_;          // plateau: s_1 = 0, s_2, ..., s_{k_max}
  std::vector<double> cells_;         // custom values
  std::vector<Real> cell_prefix_pos_; // custom: cumulative integrals of value^exponent
  std::vector<Real> cell_prefix_neg_;
  std::vector<Real> levels_pos_;      // plateau: k^{k * exponent}
  std::vector<Real> levels_neg_;

  Real plateau_level(int k, int sign) const;
  void build_custom_prefix();
  void build_plateau_levels();
};

// s_1 = 0, s_2, ..., s_{k_max} in extended precision.
std::vector<Real> plateau_breakpoints(int k_max);

// Interval centred at s_k with half-width (k+1)^{-3(k+1)}/2: half on plateau k, half on plateau k+1.
Interval plateau_witness(int k);

// (1/4)(2 + k^{2k}(k+1)^{-2(k+1)} + (k+1)^{2(k+1)} k^{-2k}): the A2 ratio of g^2 on plateau_witness(k).
Real plateau_witness_ratio(int k);

// Integral of g^2 over (0, 1) for the truncated plateau: sum_{k=2}^{k_max} k^{-k} + (1 - s_{k_max}).
Real plateau_square_integral(int k_max);

}  // namespace semiframe::muckenhoupt
