#include "semiframe/ops/duals.hpp"

#include <algorithm>
#include <cmath>

#include "semiframe/errors.hpp"
#include "semiframe/hilbert/families.hpp"

namespace semiframe::ops {

std::string to_string(DualRoute route) {
  return route == DualRoute::ViaInverse ? "via-inverse" : "via-pseudo-inverse";
}

Eigen::MatrixXcd DualFamily::matrix() const {
  if (vectors.empty()) return {};
  Eigen::MatrixXcd m(vectors.front().size(), static_cast<Index>(vectors.size()));
  for (std::size_t n = 0; n < vectors.size(); ++n) m.col(static_cast<Index>(n)) = vectors[n].entries();
  return m;
}

nlohmann::ordered_json to_json(const DualFamily& dual, bool include_vectors) {
  nlohmann::ordered_json j;
  j["route"] = to_string(dual.route);
  j["level"] = {{"dim", dual.level.dim}, {"size", dual.level.size}};
  j["bessel_bound_estimate"] = dual.bessel_bound_estimate;
  if (include_vectors) {
    auto& vs = j["vectors"] = nlohmann::ordered_json::array();
    for (const auto& v : dual.vectors) {
      nlohmann::ordered_json entries = nlohmann::ordered_json::array();
      for (Index k = 0; k < v.size(); ++k) entries.push_back({v.entries()(k).real(), v.entries()(k).imag()});
      vs.push_back(entries);
    }
  }
  return j;
}

namespace {

DualFamily pack(const Eigen::MatrixXcd& m, DualRoute route, double bound, const Level& level,
                hilbert::BasisTag tag) {
  DualFamily d;
  d.route = route;
  d.bessel_bound_estimate = bound;
  d.level = level;
  d.vectors.reserve(static_cast<std::size_t>(m.cols()));
  for (Index n = 0; n < m.cols(); ++n) d.vectors.emplace_back(m.col(n), tag);
  return d;
}

}  // namespace

LowerBoundReport lower_bound(const VectorFamily& family, const ProjectorRule& projector,
                             const TruncationLadder& ladder, double floor) {
  ladder.require_compatible(family);
  LowerBoundReport r;
  std::vector<double> lows, highs;
  for (const Level& level : ladder.levels()) {
    const FrameMatrix t = frame_matrix(family, level);
    const RestrictedSpectrum s = restricted_spectrum(t, projector(level.dim), false);
    r.levels.push_back({static_cast<long>(level.dim), static_cast<long>(level.size), s.lambda_min(), s.lambda_max()});
    lows.push_back(s.lambda_min());
    highs.push_back(s.lambda_max());
  }
  const std::vector<double> scales = ladder.scales();
  r.lower_trend = hilbert::assess_sequence(scales, lows);
  r.upper_trend = hilbert::assess_sequence(scales, highs);
  r.estimate = r.lower_trend.kind == hilbert::Convergence::Convergent ? r.lower_trend.limit_estimate : lows.back();

  if (r.lower_trend.kind == hilbert::Convergence::Convergent && r.lower_trend.limit_estimate > floor &&
      lows.back() > floor) {
    r.lower_semi_frame = Verdict::Yes;
  } else if (std::all_of(lows.begin(), lows.end(), [](double v) { return v > 0.0; })) {
    std::vector<double> inv;
    for (double v : lows) inv.push_back(1.0 / v);
    if (hilbert::assess_sequence(scales, inv).kind == hilbert::Convergence::Divergent) {
      r.lower_semi_frame = Verdict::No;
    }
  } else if (lows.back() <= floor) {
    r.lower_semi_frame = Verdict::No;
  }
  if (r.upper_trend.kind == hilbert::Convergence::Convergent) r.bessel = Verdict::Yes;
  if (r.upper_trend.kind == hilbert::Convergence::Divergent) r.bessel = Verdict::No;
  return r;
}

ClassificationReport classify_family(const VectorFamily& family, const ProjectorRule& projector,
                                     const TruncationLadder& ladder) {
  const LowerBoundReport lb = lower_bound(family, projector, ladder);
  ClassificationReport c;
  c.subject = family.name();
  c.scope = projector(ladder.back().dim).rank() == ladder.back().dim ? "H" : "closure of D(C)";
  c.bessel = lb.bessel;
  c.lower_semi_frame = lb.lower_semi_frame;
  if (lb.bessel == Verdict::Yes && lb.lower_semi_frame == Verdict::Yes) {
    c.frame = Verdict::Yes;
  } else if (lb.bessel == Verdict::No || lb.lower_semi_frame == Verdict::No) {
    c.frame = Verdict::No;
  }
  c.lower_bound = lb.estimate;
  c.upper_bound = lb.upper_trend.kind == hilbert::Convergence::Convergent ? lb.upper_trend.limit_estimate
                                                                            : lb.levels.back().upper;
  c.lower_growth_exponent = lb.lower_trend.growth_exponent;
  c.upper_growth_exponent = lb.upper_trend.growth_exponent;
  c.evidence = lb.levels;
  return c;
}

DualFamily canonical_dual(const VectorFamily& family, const Projector& projector, const Level& level) {
  family.require_compatible(level);
  const Eigen::MatrixXcd d = family.synthesis_matrix(level);
  const RestrictedSpectrum s = restricted_spectrum(frame_matrix(d, level), projector);
  if (!(s.lambda_min() > s.floor)) {
    throw RefusedError("canonical_dual: P T P is singular on range(P)", s.lambda_min());
  }
  const Eigen::MatrixXcd inverse = s.function([](double l) { return 1.0 / l; });
  return pack(inverse * d, DualRoute::ViaInverse, 1.0 / s.lambda_min(), level, family.basis_tag());
}

DualFamily dual_via_pseudoinverse(const VectorFamily& family, const Projector& projector,
                                  const Level& level) {
  const AnalysisMatrix c = analysis_matrix(family, level);
  if (projector.dim() != level.dim) throw InputError("projector dimension does not match level");
  const Eigen::MatrixXcd cu = c.rows * projector.range_basis;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(cu, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sigma = svd.singularValues();
  if (sigma.size() == 0 || cu.rows() < cu.cols()) {
    throw RefusedError("dual_via_pseudoinverse: fewer members than the rank of P", 0.0);
  }
  const double cutoff = 1e-10 * sigma(0);
  const double smallest = sigma(sigma.size() - 1);
  if (!(smallest > cutoff)) {
    throw RefusedError("dual_via_pseudoinverse: analysis matrix is rank deficient on range(P)", smallest);
  }
  const Eigen::MatrixXcd pinv =
      svd.matrixV() * sigma.cwiseInverse().asDiagonal() * svd.matrixU().adjoint();
  return pack(projector.range_basis * pinv, DualRoute::ViaPseudoInverse, 1.0 / (smallest * smallest), level,
              family.basis_tag());
}

double max_vector_difference(const DualFamily& a, const DualFamily& b) {
  if (a.vectors.size() != b.vectors.size()) throw InputError("dual families differ in size");
  double m = 0.0;
  for (std::size_t n = 0; n < a.vectors.size(); ++n) {
    m = std::max(m, (a.vectors[n].entries() - b.vectors[n].entries()).norm());
  }
  return m;
}

Reconstruction reconstruct(const Eigen::VectorXcd& f, const VectorFamily& family, const DualFamily& dual,
                           const Projector& projector) {
  if (f.size() != dual.level.dim || projector.dim() != dual.level.dim) {
    throw InputError("reconstruct: dimension mismatch");
  }
  const Eigen::MatrixXcd d = family.synthesis_matrix(dual.level);
  const Eigen::VectorXcd pf = projector.matrix * f;
  const Eigen::VectorXcd coeffs = d.adjoint() * pf;
  Reconstruction r;
  r.output = dual.matrix() * coeffs;
  const double fn = f.norm();
  const double pn = pf.norm();
  r.error_vs_input = fn > 0.0 ? (r.output - f).norm() / fn : 0.0;
  r.error_vs_projection = pn > 0.0 ? (r.output - pf).norm() / pn : 0.0;
  r.outside_fraction = fn > 0.0 ? (f - pf).norm() / fn : 0.0;
  return r;
}

ParsevalFamily parseval_canonical(const VectorFamily& family, const Projector& projector, const Level& level) {
  family.require_compatible(level);
  const Eigen::MatrixXcd d = family.synthesis_matrix(level);
  const RestrictedSpectrum s = restricted_spectrum(frame_matrix(d, level), projector);
  if (!(s.lambda_min() > s.floor)) {
    throw RefusedError("parseval_canonical: P T P is singular on range(P)", s.lambda_min());
  }
  ParsevalFamily p;
  p.vectors = s.function([](double l) { return 1.0 / std::sqrt(l); }) * d;
  const RestrictedSpectrum out = restricted_spectrum(frame_matrix(p.vectors, level), projector);
  p.lower = out.lambda_min();
  p.upper = out.lambda_max();
  return p;
}

SurjectivityReport surjectivity_check(const VectorFamily& family, const TruncationLadder& ladder,
                                      unsigned long seed) {
  ladder.require_compatible(family);
  SurjectivityReport r;
  for (const Level& level : ladder.levels()) {
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(family.synthesis_matrix(level));
    const Eigen::VectorXd& s = svd.singularValues();
    r.smallest_singular_values.push_back(s(s.size() - 1));
  }
  const std::vector<double> scales = ladder.scales();
  r.trend = hilbert::assess_sequence(scales, r.smallest_singular_values);
  if (family.has_complement()) {
    r.closed_range = Verdict::NotApplicable;
    r.notes.push_back("D(C) is not dense; singular values reported per level without a verdict");
  } else if (r.trend.kind == hilbert::Convergence::Convergent && r.trend.limit_estimate > 1e-9) {
    r.closed_range = Verdict::Yes;
  } else if (std::all_of(r.smallest_singular_values.begin(), r.smallest_singular_values.end(),
                         [](double v) { return v > 0.0; })) {
    std::vector<double> inv;
    for (double v : r.smallest_singular_values) inv.push_back(1.0 / v);
    if (hilbert::assess_sequence(scales, inv).kind == hilbert::Convergence::Divergent) {
      r.closed_range = Verdict::No;
    }
  }

  const Level top = ladder.back();
  const Projector p = analytic_projector(family, top.dim);
  try {
    const DualFamily dual = canonical_dual(family, p, top);
    const Eigen::MatrixXcd d = family.synthesis_matrix(top);
    const Eigen::MatrixXcd eta = dual.matrix();
    double worst = 0.0;
    for (const Eigen::VectorXcd& f : probe_set(top.dim, seed, 32, false)) {
      const Eigen::VectorXcd pf = p.matrix * f;
      if (pf.norm() == 0.0) continue;
      const Eigen::VectorXcd back = d * (eta.adjoint() * pf);
      worst = std::max(worst, (back - pf).norm() / pf.norm());
    }
    r.reconstruction_error = worst;
  } catch (const RefusedError& e) {
    r.notes.push_back(std::string("dual unavailable: ") + e.what());
  }
  return r;
}

std::vector<Eigen::VectorXcd> probe_set(Index dim, unsigned long seed, Index count, bool include_basis) {
  std::vector<Eigen::VectorXcd> probes;
  for (Index i = 0; i < count; ++i) {
    const std::vector<double> g = hilbert::seeded_gaussians(seed, 1000u + static_cast<unsigned long>(i), 2 * dim);
    Eigen::VectorXcd v(dim);
    for (Index k = 0; k < dim; ++k) v(k) = cplx(g[static_cast<std::size_t>(2 * k)], g[static_cast<std::size_t>(2 * k + 1)]);
    probes.push_back(v / v.norm());
  }
  if (include_basis) {
    for (Index k = 0; k < dim; ++k) probes.push_back(Eigen::VectorXcd::Unit(dim, k));
  }
  return probes;
}

double max_bessel_ratio(const Eigen::MatrixXcd& vectors, const std::vector<Eigen::VectorXcd>& probes) {
  double worst = 0.0;
  for (const auto& f : probes) {
    const double fn = f.squaredNorm();
    if (fn == 0.0) continue;
    worst = std::max(worst, (vectors.adjoint() * f).squaredNorm() / fn);
  }
  return worst;
}

}  // namespace semiframe::ops
