#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "semiframe/hilbert/family.hpp"
#include "semiframe/hilbert/ladder.hpp"

namespace semiframe::ops {

using hilbert::ConvergenceVerdict;
using hilbert::Level;
using hilbert::TruncationLadder;
using hilbert::VectorFamily;

// Coordinate rule k -> f_k, k 1-based; materialized at each level's dimension.
using VectorRule = std::function<cplx(Index k)>;

Eigen::VectorXcd materialize(const VectorRule& rule, Index dim);

struct TraceStatus {
  bool stabilized = false;
  hilbert::Convergence kind = hilbert::Convergence::Inconclusive;
  double window_variation = 0.0;            // relative spread over the last quarter
  std::vector<double> window_oscillation;   // spread over (N/2^(i+1), N/2^i], i = 0..3
  double oscillation_exponent = 0.0;        // slope of the spreads vs window end
  double growth_exponent = 0.0;             // slope of norms at N/8, N/4, N/2, N
  double growth_r_squared = 0.0;
};

// Stabilized when the last quarter varies below window_tolerance (relative), or when the
// dyadic-window spreads decay like a power (slope below -0.1). Divergent when the norms at
// dyadic checkpoints grow with slope > 0.1 and R^2 > 0.99.
TraceStatus assess_trace(std::span<const double> prefix_norms, double window_tolerance = 1e-8);

struct PartialSumTrace {
  std::vector<double> prefix_norms;
  std::vector<Index> ordering;
  TraceStatus status;
  std::optional<Eigen::VectorXcd> limit;  // final partial sum, reported when stabilized
  Eigen::VectorXcd final_sum;
};

void write_csv(std::ostream& out, const PartialSumTrace& trace);
nlohmann::ordered_json to_json(const TraceStatus& status);

// Prefix sums of sum coeffs_n xi_n in the given order (a permutation of positions 0..N-1).
PartialSumTrace synthesis(const VectorFamily& family, const Eigen::VectorXcd& coeffs,
                          const std::vector<Index>& ordering, const Level& level);

// Prefix sums of sum <f, xi_n> xi_n in the given order.
PartialSumTrace s_apply(const VectorFamily& family, const Eigen::VectorXcd& f,
                        const std::vector<Index>& ordering, const Level& level);

Eigen::VectorXcd analysis(const VectorFamily& family, const Eigen::VectorXcd& f, const Level& level);

struct AnalysisResult {
  Eigen::VectorXcd coefficients;  // at the top ladder level
  ConvergenceVerdict tail;        // of sum |<f, xi_n>|^2 across the ladder
};

AnalysisResult analysis(const VectorFamily& family, const VectorRule& f, const TruncationLadder& ladder);

struct WMembership {
  ConvergenceVerdict in_t_domain;
  ConvergenceVerdict in_w_domain;  // sup_k of prefix norms across the ladder
  std::vector<ConvergenceVerdict> pairings;
  double bound_constant = 0.0;     // max |lim <S_N f, g>| / |g| over the test set
};

// Test vectors spanning a model of D(C): e_1..e_3, n^-3, n^-4 and seeded finitely supported vectors.
std::vector<VectorRule> default_test_set(unsigned long seed = 42, int random_count = 3);

WMembership w_membership(const VectorFamily& family, const VectorRule& f,
                         const std::vector<VectorRule>& test_set, const TruncationLadder& ladder);

// Coordinates of the partial sums of S h for the interleaved family with h_n = n^-2:
// alpha_n interior, beta_k at the last full pair, gamma_k before the last eta.
long double chi_alpha(long n);
long double chi_beta(long k);
long double chi_gamma(long k);
// First coordinate of every partial sum past the first pair: 2 - 2^(6/5) + 2^(16/5).
long double chi_first_coordinate();

struct ChiCoefficients {
  std::vector<long> index;
  std::vector<long double> alpha;
  std::vector<long double> beta;
  std::vector<long double> gamma;
};

// Requires 2 <= lo <= hi <= 10^6.
ChiCoefficients alpha_beta_gamma(long lo, long hi);

}  // namespace semiframe::ops
