#pragma once

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "semiframe/hilbert/family.hpp"
#include "semiframe/hilbert/ladder.hpp"

namespace semiframe::ops {

using hilbert::Level;
using hilbert::VectorFamily;

// Row n holds the conjugated coordinates of xi_n, so rows * f = {<f, xi_n>}.
struct AnalysisMatrix {
  Eigen::MatrixXcd rows;
  Level level;
};

AnalysisMatrix analysis_matrix(const VectorFamily& family, const Level& level);

// Max entry of |C - D^*| at the level.
double adjoint_check(const VectorFamily& family, const Level& level);

struct MatrixInvariants {
  double hermitian_defect = 0.0;
  double min_eigenvalue = 0.0;
  bool hermitian = false;
  bool positive_semidefinite = false;
};

// Sum of xi_n xi_n^* over the first N members.
struct FrameMatrix {
  Eigen::MatrixXcd matrix;
  Level level;

  MatrixInvariants check() const;
};

// Members are put into a canonical (lexicographic) order and the outer products are
// accumulated in pairwise blocks, so the result does not depend on the enumeration.
FrameMatrix frame_matrix(const VectorFamily& family, const Level& level);
FrameMatrix frame_matrix(const Eigen::MatrixXcd& synthesis, const Level& level);

enum class ProjectorSource { Analytic, Estimated };

struct Projector {
  Eigen::MatrixXcd matrix;
  Eigen::MatrixXcd range_basis;  // orthonormal columns spanning range(P)
  ProjectorSource source = ProjectorSource::Analytic;
  std::vector<Index> axes;  // kept coordinate axes (0-based) when range(P) is spanned by them, else empty

  Index dim() const { return matrix.rows(); }
  Index rank() const { return range_basis.cols(); }
  double idempotence_defect() const;
  double hermitian_defect() const;
};

Projector identity_projector(Index dim);
// Projector onto the orthogonal complement of span(directions).
Projector complement_projector(const std::vector<Eigen::VectorXcd>& directions, Index dim,
                               ProjectorSource source = ProjectorSource::Analytic);
// From the family's complement metadata; identity when the family declares none.
Projector analytic_projector(const VectorFamily& family, Index dim);

using ProjectorRule = std::function<Projector(Index dim)>;
ProjectorRule analytic_projector_rule(const VectorFamily& family);

// Basis axes whose Rayleigh quotient <T_N e_k, e_k> grows faster than N^threshold
// are taken to lie outside the closure of D(C).
struct ProjectorEstimate {
  std::vector<Index> flagged_axes;  // 1-based
  std::vector<double> exponents;    // per probed axis, 1-based order
  Projector at(Index dim) const;
};

ProjectorEstimate estimate_projector(const VectorFamily& family, const hilbert::TruncationLadder& ladder,
                                     double exponent_threshold = 0.5);

// Eigendecomposition of U^* T U for an orthonormal basis U of range(P).
struct RestrictedSpectrum {
  Eigen::VectorXd eigenvalues;    // ascending
  Eigen::MatrixXcd eigenvectors;  // in range coordinates
  Eigen::MatrixXcd basis;         // U
  double floor = 0.0;             // 1e-12 * lambda_max

  double lambda_min() const { return eigenvalues.size() ? eigenvalues(0) : 0.0; }
  double lambda_max() const { return eigenvalues.size() ? eigenvalues(eigenvalues.size() - 1) : 0.0; }
  // U V f(Lambda) V^* U^*, with f applied to eigenvalues above the floor and 0 below.
  Eigen::MatrixXcd function(const std::function<double(double)>& f) const;
};

// With vectors = false only the eigenvalues are computed.
RestrictedSpectrum restricted_spectrum(const FrameMatrix& frame, const Projector& projector, bool vectors = true);

}  // namespace semiframe::ops
