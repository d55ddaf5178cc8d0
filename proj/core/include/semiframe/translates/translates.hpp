#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "semiframe/hilbert/grid_function.hpp"
#include "semiframe/report.hpp"

namespace semiframe::translates {

using hilbert::GridFunction;

// Analytic Fourier-side generator phi^.
struct Profile {
  std::string name;
  nlohmann::ordered_json parameters;
  std::function<cplx(double)> value;
  double support_radius = 0.0;  // phi^ vanishes outside [-r, r]; 0 = unbounded support
};

namespace profiles {
// phi = indicator of [0, 1): phi^(g) = e^{-i pi g} sin(pi g) / (pi g).
Profile unit_indicator();
// c * indicator of [lo, hi).
Profile band(double c, double lo, double hi);
// gamma^(1/4) on [0, 1), so that p_phi(gamma) = sqrt(gamma) for a = 1.
Profile sqrt_power();
// sqrt(1 + q) on [0, 1) with q = 2^(k/2) on [2^-k, 2^-k+1), k >= 1: p_phi >= 1, unbounded above.
Profile dyadic_plateau();
// exp(-pi ((g - center)/width)^2) e^{-2 pi i g shift}.
Profile gaussian(double center, double width, double shift);
}  // namespace profiles

// Translates phi(. - n a) given by phi^ on the line grid [-omega, omega) with step 1/(a M),
// M the number of nodes of [0, 1) used for p_phi. Shifts by 1/a are M nodes.
class TranslateSystem {
 public:
  TranslateSystem(Profile profile, double a, Index nodes, double omega);
  // Grid-only system; refinement and large-K evaluation are unavailable.
  TranslateSystem(GridFunction phi_hat, double a, std::string name);

  const GridFunction& phi_hat() const { return phi_hat_; }
  double a() const { return a_; }
  Index nodes() const { return nodes_; }
  double omega() const { return -phi_hat_.lower(); }
  double step() const { return phi_hat_.step(); }
  const std::string& name() const { return name_; }
  const std::optional<Profile>& profile() const { return profile_; }
  // Aliasing window that covers the whole grid.
  Index grid_periods() const;

  TranslateSystem refined(Index factor) const;
  // Sample another function on the same line grid.
  GridFunction sample(const std::function<cplx(double)>& f) const;
  nlohmann::ordered_json descriptor() const;

 private:
  GridFunction phi_hat_;
  double a_;
  Index nodes_;
  std::string name_;
  std::optional<Profile> profile_;
};

enum class PphiSource { Auto, Grid, Profile };

struct PeriodizedPower {
  GridFunction samples;  // periodic on [0, 1)
  Index K = 0;
  bool stabilized = true;  // K and 2K agree
  double change = 0.0;
  double ess_inf_est = 0.0;  // 0.5% quantile over nodes in Z
  double ess_sup_est = 0.0;  // 99.5% quantile over all nodes
  double min_on_z = 0.0;
  double max_value = 0.0;
  double tau = 0.0;
  std::vector<bool> z_mask;
  std::string source;
};

struct PphiOptions {
  Index K = 0;  // 0: ceil(omega a) + 2 for profile evaluation, the whole grid otherwise
  PphiSource source = PphiSource::Auto;
  double tau_relative = 1e-8;
  double low_quantile = 0.005;
  double high_quantile = 0.995;
};

PeriodizedPower pphi(const TranslateSystem& system, const PphiOptions& options = {});

struct BracketValues {
  GridFunction samples;  // [f^, phi^] on [0, 1)
  Index K = 0;
  bool stabilized = true;
  double l1 = 0.0;
  double l2 = 0.0;
};

// (1/a) sum_{|n| <= K} f^((g+n)/a) conj phi^((g+n)/a) from the shared grid. K = 0 covers the grid.
BracketValues bracket(const GridFunction& f_hat, const TranslateSystem& system, Index K = 0);

struct TranslateCoefficients {
  long first = 0;          // index of values(0)
  Eigen::VectorXcd values; // <f, phi_n>, n = first, first+1, ...
  double bracket_l2 = 0.0;

  cplx at(long n) const { return values(n - first); }
};

// <f, phi_n> = <[f^, phi^], e_{-n}> by midpoint quadrature of the bracket. Default window is
// the M coefficients n in [-M/2, M/2).
TranslateCoefficients analysis_translates(const GridFunction& f_hat, const TranslateSystem& system);
TranslateCoefficients analysis_translates(const GridFunction& f_hat, const TranslateSystem& system, long lo, long hi);

// sum c_n phi_n on the Fourier side: sum c_n e^{-2 pi i n a g} phi^(g).
GridFunction adjoint_translates(const TranslateCoefficients& coeffs, const TranslateSystem& system);

struct WalnutResult {
  GridFunction output;
  bool stabilized = true;
  double output_squared_norm = 0.0;
};

// (1/a) phi^(g) sum_n f^(g - n/a) conj phi^(g - n/a). K = 0 sums over every grid alias,
// otherwise over |n| <= K centred at each node, with a 2K comparison.
WalnutResult walnut_apply(const GridFunction& f_hat, const TranslateSystem& system, Index K = 0);

struct TranslateClassifyOptions {
  int levels = 4;
  double tau_relative = 1e-8;
};

// Bessel / frame / lower semi-frame for the closed span, from p_phi across grid refinements.
ClassificationReport classify_translates(const TranslateSystem& system, const TranslateClassifyOptions& options = {});

// psi^ = phi^ chi_Z / p_phi. Throws RefusedError when Z is empty or p_phi <= tau on Z.
TranslateSystem canonical_dual_translates(const TranslateSystem& system, const PeriodizedPower& p);

struct TranslateReconstruction {
  GridFunction output;
  TranslateCoefficients coefficients;
  double relative_error = 0.0;
};

// sum_n <f, phi_n> psi_n over the DFT-complete window.
TranslateReconstruction reconstruct_translates(const GridFunction& f_hat, const TranslateSystem& system,
                                               const TranslateSystem& dual);

// sum_n |<f, psi_n>|^2 / |f|^2 over the DFT-complete window.
double bessel_ratio(const GridFunction& f_hat, const TranslateSystem& system);

}  // namespace semiframe::translates
