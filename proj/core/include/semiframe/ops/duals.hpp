#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "semiframe/hilbert/coefficient_vector.hpp"
#include "semiframe/ops/matrices.hpp"
#include "semiframe/report.hpp"

namespace semiframe::ops {

using hilbert::TruncationLadder;

enum class DualRoute { ViaInverse, ViaPseudoInverse };
std::string to_string(DualRoute route);

struct DualFamily {
  std::vector<hilbert::CoefficientVector> vectors;
  DualRoute route = DualRoute::ViaInverse;
  double bessel_bound_estimate = 0.0;
  Level level;

  // d x N matrix with eta_n as columns.
  Eigen::MatrixXcd matrix() const;
};

nlohmann::ordered_json to_json(const DualFamily& dual, bool include_vectors = false);

struct LowerBoundReport {
  std::vector<LevelEvidence> levels;  // lower = lambda_min, upper = lambda_max of PTP on range(P)
  double estimate = 0.0;              // A
  Verdict lower_semi_frame = Verdict::Inconclusive;
  Verdict bessel = Verdict::Inconclusive;
  hilbert::ConvergenceVerdict lower_trend;
  hilbert::ConvergenceVerdict upper_trend;
};

// Per-level spectrum of P T P on range(P). A positive floor below which lambda_min counts as zero.
LowerBoundReport lower_bound(const VectorFamily& family, const ProjectorRule& projector,
                             const TruncationLadder& ladder, double floor = 1e-9);

ClassificationReport classify_family(const VectorFamily& family, const ProjectorRule& projector,
                                     const TruncationLadder& ladder);

// (P T P)^{-1} P xi_n. Throws RefusedError (evidence = lambda_min) when P T P is singular on range(P).
DualFamily canonical_dual(const VectorFamily& family, const Projector& projector, const Level& level);

// eta_n = Y e_n with Y the pseudo-inverse of C restricted to range(P), zero on range(C)^perp.
// Throws RefusedError (evidence = smallest singular value) on rank deficiency.
DualFamily dual_via_pseudoinverse(const VectorFamily& family, const Projector& projector,
                                  const Level& level);

double max_vector_difference(const DualFamily& a, const DualFamily& b);

struct Reconstruction {
  Eigen::VectorXcd output;
  double error_vs_input = 0.0;       // |f~ - f| / |f|
  double error_vs_projection = 0.0;  // |f~ - Pf| / |Pf|, 0 when Pf = 0
  double outside_fraction = 0.0;     // |(I - P) f| / |f|
};

// f~ = sum <Pf, xi_n> eta_n; equals sum <f, xi_n> eta_n for f in the closure of D(C).
Reconstruction reconstruct(const Eigen::VectorXcd& f, const VectorFamily& family, const DualFamily& dual,
                           const Projector& projector);

struct ParsevalFamily {
  Eigen::MatrixXcd vectors;  // d x N, columns T^{-1/2} P xi_n
  double lower = 0.0;        // extreme eigenvalues of its frame matrix on range(P)
  double upper = 0.0;
};

ParsevalFamily parseval_canonical(const VectorFamily& family, const Projector& projector, const Level& level);

struct SurjectivityReport {
  std::vector<double> smallest_singular_values;
  hilbert::ConvergenceVerdict trend;
  Verdict closed_range = Verdict::Inconclusive;
  std::optional<double> reconstruction_error;  // sup over probes of |f - sum <f, eta_n> xi_n| / |f|
  std::vector<std::string> notes;
};

SurjectivityReport surjectivity_check(const VectorFamily& family, const TruncationLadder& ladder,
                                      unsigned long seed = 42);

// count seeded unit vectors followed (optionally) by e_1..e_dim.
std::vector<Eigen::VectorXcd> probe_set(Index dim, unsigned long seed, Index count = 32,
                                        bool include_basis = true);

// max over probes of sum_n |<f, eta_n>|^2 / |f|^2.
double max_bessel_ratio(const Eigen::MatrixXcd& vectors, const std::vector<Eigen::VectorXcd>& probes);

}  // namespace semiframe::ops
