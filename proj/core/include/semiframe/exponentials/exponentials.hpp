#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "semiframe/hilbert/family.hpp"
#include "semiframe/hilbert/grid_function.hpp"
#include "semiframe/muckenhoupt/a2.hpp"
#include "semiframe/muckenhoupt/weight.hpp"
#include "semiframe/report.hpp"

namespace semiframe::exponentials {

using hilbert::GridFunction;
using muckenhoupt::Weight;

// E(g, b) = {g(x) e^{2 pi i n b x}} on (0, 1), g sampled on M midpoint nodes of [0, 1).
// M/b must be an integer W, so the shift 1/b is W nodes and W exponentials form a complete
// discrete window.
class ExponentialSystem {
 public:
  ExponentialSystem(GridFunction g, double b, std::string name);
  static ExponentialSystem from_weight(const Weight& g, double b, Index nodes);

  const GridFunction& g() const { return g_; }
  double b() const { return b_; }
  Index nodes() const { return g_.size(); }
  Index window() const { return window_; }
  const std::string& name() const { return name_; }
  const std::optional<Weight>& weight() const { return weight_; }

  ExponentialSystem refined(Index factor) const;
  // Explicit enumeration of the labels -half..half; the default is ord_Z (0, 1, -1, 2, -2, ...).
  ExponentialSystem with_ordering(std::vector<long> labels) const;
  const std::optional<std::vector<long>>& ordering() const { return ordering_; }
  std::vector<long> order_labels(long half) const;

  GridFunction sample(const std::function<cplx(double)>& f) const;
  nlohmann::ordered_json descriptor() const;

 private:
  GridFunction g_;
  double b_;
  Index window_;
  std::string name_;
  std::optional<Weight> weight_;
  std::optional<std::vector<long>> ordering_;
};

// f |g|^2 / b. Throws InputError for b > 1.
GridFunction t_mult(const GridFunction& f, const ExponentialSystem& system);

// (1/b) g(x) sum_n f(x - n/b) conj g(x - n/b), f and g zero outside (0, 1).
GridFunction t_general(const GridFunction& f, const ExponentialSystem& system);

struct ExponentialCoefficients {
  long first = 0;
  Eigen::VectorXcd values;  // <f, g_n>, n = first, first+1, ...

  cplx at(long n) const { return values(n - first); }
};

// Midpoint quadrature of <f, g_n>. Default window: the W labels n in [-W/2, W/2).
ExponentialCoefficients analysis_exponentials(const GridFunction& f, const ExponentialSystem& system);
ExponentialCoefficients analysis_exponentials(const GridFunction& f, const ExponentialSystem& system, long lo,
                                              long hi);
// sum c_n g_n on the grid.
GridFunction synthesis_exponentials(const ExponentialCoefficients& coeffs, const ExponentialSystem& system);

struct ExponentialClassifyOptions {
  int levels = 4;
  double zero_floor = 1e-12;  // relative to max |g|
};

ClassificationReport classify_exponentials(const ExponentialSystem& system,
                                           const ExponentialClassifyOptions& options = {});

// E(b / conj g, b). Throws RefusedError when |g| <= floor * max|g| at some node.
ExponentialSystem canonical_dual_exponentials(const ExponentialSystem& system, double floor = 1e-12);

struct ExponentialReconstruction {
  GridFunction output;
  ExponentialCoefficients coefficients;
  double relative_error = 0.0;
};

// sum_n <f, g_n> h_n over the complete window.
ExponentialReconstruction reconstruct_exponentials(const GridFunction& f, const ExponentialSystem& system,
                                                   const ExponentialSystem& dual);

struct SchauderReport {
  Verdict schauder = Verdict::Inconclusive;
  muckenhoupt::A2Report a2;
  std::vector<std::string> notes;
};

// Schauder basis under ord_Z iff |g|^2 is an A2 weight.
SchauderReport schauder_test(const ExponentialSystem& system, const muckenhoupt::A2Options& options = {});
nlohmann::ordered_json to_json(const SchauderReport& report);

// Members sqrt(h) g(x_j) e^{2 pi i n b x_j} in C^M for |n| <= half, enumerated by the
// system's ordering; inner products in C^M are midpoint quadratures on (0, 1).
hilbert::VectorFamily exponential_family(const ExponentialSystem& system, long half);

// Position of label n in ord_Z.
Index ord_z_position(long n);

// Within each dyadic band 2^(j-1) <= |n| < 2^j (|n| <= half): even labels first, then odd.
std::vector<long> adversarial_labels(long half);

}  // namespace semiframe::exponentials
