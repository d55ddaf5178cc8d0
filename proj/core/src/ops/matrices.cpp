#include "semiframe/ops/matrices.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

#include "semiframe/errors.hpp"

namespace semiframe::ops {

AnalysisMatrix analysis_matrix(const VectorFamily& family, const Level& level) {
  family.require_compatible(level);
  AnalysisMatrix a{Eigen::MatrixXcd::Zero(level.size, level.dim), level};
  for (Index n = 0; n < level.size; ++n) {
    const hilbert::SparseColumn c = family.column(n, level.dim);
    for (hilbert::SparseColumn::InnerIterator it(c); it; ++it) a.rows(n, it.index()) = std::conj(it.value());
  }
  return a;
}

double adjoint_check(const VectorFamily& family, const Level& level) {
  const AnalysisMatrix c = analysis_matrix(family, level);
  const Eigen::MatrixXcd d = family.synthesis_matrix(level);
  return (c.rows - d.adjoint()).cwiseAbs().maxCoeff();
}

MatrixInvariants FrameMatrix::check() const {
  MatrixInvariants inv;
  inv.hermitian_defect = (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
  inv.hermitian = inv.hermitian_defect <= 1e-12;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(matrix, Eigen::EigenvaluesOnly);
  inv.min_eigenvalue = es.eigenvalues()(0);
  const double scale = std::max(1.0, es.eigenvalues()(es.eigenvalues().size() - 1));
  inv.positive_semidefinite = inv.min_eigenvalue >= -1e-10 * scale;
  return inv;
}

namespace {

bool column_less(const Eigen::MatrixXcd& d, Index a, Index b) {
  for (Index k = 0; k < d.rows(); ++k) {
    const cplx x = d(k, a), y = d(k, b);
    if (x.real() != y.real()) return x.real() < y.real();
    if (x.imag() != y.imag()) return x.imag() < y.imag();
  }
  return false;
}

// Lower triangle of sum over cols[lo, hi) of d_c d_c^*, split in halves.
Eigen::MatrixXcd pairwise_outer(const Eigen::MatrixXcd& d, const std::vector<Index>& cols,
                                std::size_t lo, std::size_t hi) {
  constexpr std::size_t kBlock = 64;
  if (hi - lo <= kBlock) {
    Eigen::MatrixXcd block(d.rows(), static_cast<Index>(hi - lo));
    for (std::size_t i = lo; i < hi; ++i) block.col(static_cast<Index>(i - lo)) = d.col(cols[i]);
    Eigen::MatrixXcd t = Eigen::MatrixXcd::Zero(d.rows(), d.rows());
    t.selfadjointView<Eigen::Lower>().rankUpdate(block);
    return t;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  Eigen::MatrixXcd left = pairwise_outer(d, cols, lo, mid);
  left += pairwise_outer(d, cols, mid, hi);
  return left;
}

}  // namespace

FrameMatrix frame_matrix(const Eigen::MatrixXcd& synthesis, const Level& level) {
  if (synthesis.rows() != level.dim || synthesis.cols() != level.size) {
    throw InputError("frame_matrix: synthesis matrix does not match level");
  }
  std::vector<Index> cols(static_cast<std::size_t>(level.size));
  std::iota(cols.begin(), cols.end(), Index{0});
  std::stable_sort(cols.begin(), cols.end(),
                   [&](Index a, Index b) { return column_less(synthesis, a, b); });
  // Columns with few nonzeros are accumulated entrywise, the rest by blocked rank updates; both in sorted order.
  std::vector<Index> dense;
  Eigen::MatrixXcd sparse_part = Eigen::MatrixXcd::Zero(synthesis.rows(), synthesis.rows());
  std::vector<Index> nz;
  for (Index c : cols) {
    nz.clear();
    for (Index k = 0; k < synthesis.rows(); ++k) {
      if (synthesis(k, c) != cplx(0.0)) nz.push_back(k);
    }
    if (static_cast<Index>(nz.size()) * 8 > synthesis.rows()) {
      dense.push_back(c);
      continue;
    }
    for (std::size_t j = 0; j < nz.size(); ++j) {
      for (std::size_t i = j; i < nz.size(); ++i) {
        sparse_part(nz[i], nz[j]) += synthesis(nz[i], c) * std::conj(synthesis(nz[j], c));
      }
    }
  }
  Eigen::MatrixXcd lower = dense.empty() ? sparse_part : pairwise_outer(synthesis, dense, 0, dense.size());
  if (!dense.empty() && static_cast<Index>(dense.size()) < level.size) lower += sparse_part;
  FrameMatrix f;
  f.level = level;
  f.matrix = lower.selfadjointView<Eigen::Lower>();
  return f;
}

FrameMatrix frame_matrix(const VectorFamily& family, const Level& level) {
  return frame_matrix(family.synthesis_matrix(level), level);
}

double Projector::idempotence_defect() const { return (matrix * matrix - matrix).cwiseAbs().maxCoeff(); }
double Projector::hermitian_defect() const { return (matrix - matrix.adjoint()).cwiseAbs().maxCoeff(); }

Projector identity_projector(Index dim) {
  Projector p{Eigen::MatrixXcd::Identity(dim, dim), Eigen::MatrixXcd::Identity(dim, dim), ProjectorSource::Analytic,
              std::vector<Index>(static_cast<std::size_t>(dim))};
  std::iota(p.axes.begin(), p.axes.end(), Index{0});
  return p;
}

namespace {

// 0-based axis when v is a unimodular multiple of a basis vector.
std::optional<Index> as_axis(const Eigen::VectorXcd& v) {
  std::optional<Index> axis;
  for (Index k = 0; k < v.size(); ++k) {
    if (v(k) == cplx(0.0)) continue;
    if (axis || std::abs(std::abs(v(k)) - 1.0) > 1e-15) return std::nullopt;
    axis = k;
  }
  return axis;
}

}  // namespace

Projector complement_projector(const std::vector<Eigen::VectorXcd>& directions, Index dim,
                               ProjectorSource source) {
  if (directions.empty()) {
    Projector p = identity_projector(dim);
    p.source = source;
    return p;
  }
  for (const auto& v : directions) {
    if (v.size() != dim) throw InputError("complement direction has wrong dimension");
  }
  std::vector<char> removed(static_cast<std::size_t>(dim), 0);
  bool axes = true;
  for (const auto& v : directions) {
    const auto a = as_axis(v);
    if (!a) {
      axes = false;
      break;
    }
    removed[static_cast<std::size_t>(*a)] = 1;
  }
  Projector p;
  p.source = source;
  if (axes) {
    const Index kept = dim - static_cast<Index>(std::count(removed.begin(), removed.end(), 1));
    p.range_basis = Eigen::MatrixXcd::Zero(dim, kept);
    p.matrix = Eigen::MatrixXcd::Zero(dim, dim);
    Index c = 0;
    for (Index k = 0; k < dim; ++k) {
      if (removed[static_cast<std::size_t>(k)]) continue;
      p.range_basis(k, c++) = 1.0;
      p.matrix(k, k) = 1.0;
      p.axes.push_back(k);
    }
    return p;
  }
  Eigen::MatrixXcd q(dim, static_cast<Index>(directions.size()));
  for (std::size_t i = 0; i < directions.size(); ++i) q.col(static_cast<Index>(i)) = directions[i];
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(q);
  const Index r = qr.rank();
  if (r == 0) throw InputError("complement directions are all zero");
  const Eigen::MatrixXcd full = qr.householderQ();
  const Eigen::MatrixXcd span = full.leftCols(r);
  p.range_basis = full.rightCols(dim - r);
  p.matrix = Eigen::MatrixXcd::Identity(dim, dim) - span * span.adjoint();
  return p;
}

Projector analytic_projector(const VectorFamily& family, Index dim) {
  return complement_projector(family.complement(dim), dim, ProjectorSource::Analytic);
}

ProjectorRule analytic_projector_rule(const VectorFamily& family) {
  return [family](Index dim) { return analytic_projector(family, dim); };
}

Projector ProjectorEstimate::at(Index dim) const {
  std::vector<Eigen::VectorXcd> dirs;
  for (Index k : flagged_axes) {
    if (k > dim) continue;
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(dim);
    e(k - 1) = 1.0;
    dirs.push_back(e);
  }
  return complement_projector(dirs, dim, ProjectorSource::Estimated);
}

ProjectorEstimate estimate_projector(const VectorFamily& family, const hilbert::TruncationLadder& ladder,
                                     double exponent_threshold) {
  ladder.require_compatible(family);
  const Index axes = ladder.front().dim;
  std::vector<std::vector<double>> rayleigh(static_cast<std::size_t>(axes));
  for (const Level& level : ladder.levels()) {
    std::vector<double> q(static_cast<std::size_t>(axes), 0.0);
    for (Index n = 0; n < level.size; ++n) {
      const hilbert::SparseColumn c = family.column(n, level.dim);
      for (hilbert::SparseColumn::InnerIterator it(c); it; ++it) {
        if (it.index() < axes) q[static_cast<std::size_t>(it.index())] += std::norm(it.value());
      }
    }
    for (Index k = 0; k < axes; ++k) rayleigh[static_cast<std::size_t>(k)].push_back(q[static_cast<std::size_t>(k)]);
  }
  const std::vector<double> scales = ladder.scales();
  ProjectorEstimate est;
  for (Index k = 0; k < axes; ++k) {
    const auto& values = rayleigh[static_cast<std::size_t>(k)];
    double exponent = 0.0;
    if (std::all_of(values.begin(), values.end(), [](double v) { return v > 0.0; })) {
      exponent = fit_power_law(scales, values).exponent;
    }
    est.exponents.push_back(exponent);
    if (exponent > exponent_threshold) est.flagged_axes.push_back(k + 1);
  }
  return est;
}

RestrictedSpectrum restricted_spectrum(const FrameMatrix& frame, const Projector& projector, bool vectors) {
  if (projector.dim() != frame.matrix.rows()) throw InputError("projector dimension does not match frame matrix");
  if (projector.rank() == 0) throw InputError("projector has zero rank");
  RestrictedSpectrum s;
  s.basis = projector.range_basis;
  // Axis projectors select a principal submatrix; U^* T U is the same matrix without the products.
  const Eigen::MatrixXcd m = projector.axes.empty() ? Eigen::MatrixXcd(s.basis.adjoint() * frame.matrix * s.basis)
                                                    : Eigen::MatrixXcd(frame.matrix(projector.axes, projector.axes));
  const int options = vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly;
  if (m.imag().cwiseAbs().maxCoeff() == 0.0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.real(), options);
    if (es.info() != Eigen::Success) throw RefusedError("eigendecomposition failed", 0.0);
    s.eigenvalues = es.eigenvalues();
    if (vectors) s.eigenvectors = es.eigenvectors().cast<cplx>();
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, options);
    if (es.info() != Eigen::Success) throw RefusedError("eigendecomposition failed", 0.0);
    s.eigenvalues = es.eigenvalues();
    if (vectors) s.eigenvectors = es.eigenvectors();
  }
  s.floor = 1e-12 * std::max(0.0, s.lambda_max());
  return s;
}

Eigen::MatrixXcd RestrictedSpectrum::function(const std::function<double(double)>& f) const {
  Eigen::VectorXd fl(eigenvalues.size());
  for (Index i = 0; i < eigenvalues.size(); ++i) fl(i) = eigenvalues(i) > floor ? f(eigenvalues(i)) : 0.0;
  const Eigen::MatrixXcd w = basis * eigenvectors;
  return w * fl.asDiagonal() * w.adjoint();
}

}  // namespace semiframe::ops
