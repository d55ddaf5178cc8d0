#include <cmath>

#include <gtest/gtest.h>

#include "semiframe/errors.hpp"
#include "semiframe/hilbert/families.hpp"
#include "semiframe/ops/duals.hpp"
#include "semiframe/ops/matrices.hpp"
#include "semiframe/ops/partial_sums.hpp"

using namespace semiframe;
using namespace semiframe::hilbert;
using namespace semiframe::ops;

namespace {

Eigen::VectorXcd unit(Index dim, Index k) { return Eigen::VectorXcd::Unit(dim, k - 1); }

VectorRule axis(Index j) {
  return [j](Index k) { return cplx(k == j ? 1.0 : 0.0); };
}

VectorRule inverse_square() {
  return [](Index k) { return cplx(1.0 / (static_cast<double>(k) * static_cast<double>(k))); };
}

}  // namespace

TEST(Analysis, DianaFirstAxisOutsideDomain) {
  const auto r = analysis(diana(), axis(1), TruncationLadder::doubling({33, 32}));
  EXPECT_TRUE((r.coefficients.array() == cplx(1.0)).all());
  EXPECT_EQ(r.tail.kind, Convergence::Divergent);
}

TEST(Analysis, DianaThirdAxisFinitelySupported) {
  const auto r = analysis(diana(), axis(3), TruncationLadder::doubling({33, 32}));
  for (Index p = 0; p < r.coefficients.size(); ++p) EXPECT_EQ(r.coefficients(p), cplx(p == 1 ? 1.0 : 0.0));
  EXPECT_EQ(r.tail.kind, Convergence::Convergent);
}

TEST(Analysis, OrthonormalParseval) {
  const auto f = probe_set(16, 3, 1, false).front();
  const Eigen::VectorXcd c = analysis(orthonormal(), f, {16, 16});
  EXPECT_NEAR(c.squaredNorm(), 1.0, 1e-14);
}

TEST(Synthesis, HarmonicCoefficientsOnOrthonormal) {
  const Index n = 256;
  Eigen::VectorXcd c(n);
  for (Index k = 0; k < n; ++k) c(k) = 1.0 / static_cast<double>(k + 1);
  const auto t = synthesis(orthonormal(), c, identity_order(n), {n, n});
  ASSERT_TRUE(t.limit.has_value());
  EXPECT_LT((*t.limit - c).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_EQ(t.prefix_norms.size(), static_cast<std::size_t>(n));
}

TEST(Synthesis, ZeroCoefficientsGiveZeroTrace) {
  const auto t = synthesis(random_frame(3), Eigen::VectorXcd::Zero(40), identity_order(40), {10, 40});
  for (double v : t.prefix_norms) EXPECT_EQ(v, 0.0);
  EXPECT_TRUE(t.status.stabilized);
}

TEST(Synthesis, RejectsNonPermutation) {
  EXPECT_THROW(synthesis(orthonormal(), Eigen::VectorXcd::Ones(3), {0, 1, 1}, {3, 3}), InputError);
}

TEST(AdjointCheck, ExactOnConstructedFamilies) {
  EXPECT_EQ(adjoint_check(diana(), {5, 4}), 0.0);
  EXPECT_EQ(adjoint_check(stoeva(), {6, 5}), 0.0);
  EXPECT_LE(adjoint_check(random_frame(11), {8, 8}), 1e-14);
}

TEST(FrameMatrix, OrthonormalIsIdentity) {
  EXPECT_EQ(frame_matrix(orthonormal(), {9, 9}).matrix, Eigen::MatrixXcd::Identity(9, 9));
}

TEST(FrameMatrix, DianaRestrictedIsIdentity) {
  const Level l{33, 32};
  const auto t = frame_matrix(diana(), l);
  const auto p = analytic_projector(diana(), l.dim);
  const Eigen::MatrixXcd ptp = p.matrix * t.matrix * p.matrix;
  EXPECT_LT((ptp - p.matrix).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(FrameMatrix, HermitianPsdAndPermutationInvariant) {
  for (const auto& fam : {diana(), stoeva(), random_frame(5), random_lower_semi_frame(6), interleaved_chi()}) {
    const Level l{fam.min_dimension(64) + 3, 64};
    const auto t = frame_matrix(fam, l);
    const auto inv = t.check();
    EXPECT_TRUE(inv.hermitian) << fam.name();
    EXPECT_TRUE(inv.positive_semidefinite) << fam.name() << " " << inv.min_eigenvalue;
    for (unsigned long s = 0; s < 5; ++s) {
      const auto tp = frame_matrix(fam.permuted(random_permutation(64, s)), l);
      EXPECT_LE((tp.matrix - t.matrix).cwiseAbs().maxCoeff(), 1e-11) << fam.name();
    }
  }
}

TEST(Projector, AnalyticComplementOfFirstAxis) {
  const auto p = analytic_projector(diana(), 7);
  EXPECT_EQ(p.rank(), 6);
  EXPECT_LE(p.idempotence_defect(), 1e-10);
  EXPECT_LE(p.hermitian_defect(), 1e-10);
  EXPECT_EQ(p.matrix(0, 0), cplx(0.0));
}

TEST(Projector, GeneralDirections) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Ones(5) / std::sqrt(5.0);
  const auto p = complement_projector({v}, 5);
  EXPECT_EQ(p.rank(), 4);
  EXPECT_LE(p.idempotence_defect(), 1e-12);
  EXPECT_LE((p.matrix * v).norm(), 1e-12);
  EXPECT_LE((p.range_basis.adjoint() * p.range_basis - Eigen::MatrixXcd::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Projector, EstimatorFlagsGrowingAxis) {
  const auto ladder = TruncationLadder::doubling({33, 32});
  for (const auto& fam : {diana(), stoeva()}) {
    const auto est = estimate_projector(fam, ladder);
    ASSERT_EQ(est.flagged_axes.size(), 1u) << fam.name();
    EXPECT_EQ(est.flagged_axes.front(), 1);
    EXPECT_EQ(est.at(40).source, ProjectorSource::Estimated);
  }
  EXPECT_TRUE(estimate_projector(orthonormal(), ladder).flagged_axes.empty());
}

TEST(SApply, OrthonormalStabilizesToInput) {
  const Index n = 256;
  const auto g = probe_set(n, 1, 1, false).front();
  Eigen::VectorXcd f(n);
  for (Index k = 0; k < n; ++k) f(k) = g(k) / static_cast<double>(k + 1);
  const auto t = s_apply(orthonormal(), f, identity_order(n), {n, n});
  ASSERT_TRUE(t.limit.has_value());
  EXPECT_LT((*t.limit - f).norm(), 1e-14);
}

TEST(SApply, InterleavedChiDiverges) {
  const Index k = 100000;
  const Level l{k, 2 * k};
  const auto t = s_apply(interleaved_chi(), materialize(inverse_square(), k), identity_order(2 * k), l);
  EXPECT_FALSE(t.status.stabilized);
  EXPECT_EQ(t.status.kind, Convergence::Divergent);
  EXPECT_NEAR(t.status.growth_exponent, 0.2, 0.05);
}

TEST(SApply, PartialSumCoordinatesMatchClosedForms) {
  const Index k = 50;
  const Eigen::VectorXcd h = materialize(inverse_square(), k);
  const auto fam = interleaved_chi();
  const auto full = s_apply(fam, h, identity_order(2 * k), {k, 2 * k});
  const Eigen::VectorXcd& s = full.final_sum;
  EXPECT_NEAR(s(0).real(), static_cast<double>(chi_first_coordinate()), 1e-12);
  for (long m = 2; m < k; ++m) EXPECT_NEAR(s(m - 1).real(), static_cast<double>(chi_alpha(m)), 1e-12) << m;
  EXPECT_NEAR(s(k - 1).real(), static_cast<double>(chi_beta(k)), 1e-12);
  const auto odd = s_apply(fam, h, identity_order(2 * k - 1), {k, 2 * k - 1});
  EXPECT_NEAR(odd.final_sum(k - 1).real(), static_cast<double>(chi_gamma(k)), 1e-12);
}

TEST(SApply, BesselBoundOnFinalNorm) {
  const auto fam = random_frame(21);
  const Level l{12, 40};
  const auto t = frame_matrix(fam, l);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(t.matrix);
  const double b = es.eigenvalues().maxCoeff();
  for (const auto& f : probe_set(12, 4, 8, false)) {
    const auto tr = s_apply(fam, f, identity_order(40), l);
    EXPECT_LE(tr.prefix_norms.back(), b * f.norm() * (1 + 1e-12));
  }
}

TEST(SApply, StabilizedLimitMatchesFormPairing) {
  const auto fam = random_frame(8);
  const Level l{10, 300};
  const auto t = frame_matrix(fam, l);
  for (const auto& f : probe_set(10, 2, 4, false)) {
    const auto tr = s_apply(fam, f, identity_order(300), l);
    const Eigen::VectorXcd form = t.matrix * f;
    for (const auto& g : probe_set(10, 9, 4, true)) {
      EXPECT_LT(std::abs(g.dot(tr.final_sum) - g.dot(form)), 1e-12);
    }
  }
}

TEST(WMembership, InterleavedChiInTNotInW) {
  const TruncationLadder ladder({{12500, 25000}, {25000, 50000}, {50000, 100000}, {100000, 200000}});
  const auto w = w_membership(interleaved_chi(), inverse_square(), default_test_set(), ladder);
  EXPECT_EQ(w.in_t_domain.kind, Convergence::Convergent);
  EXPECT_EQ(w.in_w_domain.kind, Convergence::Divergent);
  EXPECT_NEAR(w.in_w_domain.growth_exponent, 0.2, 0.05);
}

TEST(WMembership, OrthonormalAndBessel) {
  const auto ladder = TruncationLadder::doubling({32, 32});
  for (const auto& fam : {orthonormal(), diagonal(-1.0)}) {
    const auto w = w_membership(fam, inverse_square(), default_test_set(), ladder);
    EXPECT_EQ(w.in_t_domain.kind, Convergence::Convergent) << fam.name();
    EXPECT_EQ(w.in_w_domain.kind, Convergence::Convergent) << fam.name();
  }
  EXPECT_THROW(w_membership(orthonormal(), inverse_square(), {}, ladder), InputError);
}

TEST(ChiCoefficients, BetaTwoClosedForm) {
  const long double expected = std::pow(2.0L, 3.2L) * (0.25L - 1.0L) + 0.5L;
  EXPECT_NEAR(static_cast<double>(chi_beta(2)), static_cast<double>(expected), 1e-15);
}

TEST(ChiCoefficients, AsymptoticTrends) {
  double previous = 1e9;
  for (long n : {100L, 1000L, 10000L, 100000L, 1000000L}) {
    const double scaled = static_cast<double>(chi_alpha(n) * std::pow(static_cast<long double>(n), 0.8L));
    EXPECT_LT(scaled, previous);
    EXPECT_GT(scaled, 0.4);
    previous = scaled;
  }
  const long k = 1000000;
  EXPECT_NEAR(static_cast<double>(chi_beta(k) * std::pow(static_cast<long double>(k), -0.2L)), -2.0, 0.2);
  EXPECT_NEAR(static_cast<double>(chi_gamma(k) * std::pow(static_cast<long double>(k), -0.2L)), -2.0, 0.2);
  EXPECT_THROW(alpha_beta_gamma(1, 10), InputError);
  EXPECT_THROW(alpha_beta_gamma(2, 1000001), InputError);
  EXPECT_EQ(alpha_beta_gamma(2, 11).alpha.size(), 10u);
}

TEST(LowerBound, DianaAndOrthonormal) {
  const auto ladder = TruncationLadder::tight(diana(), 32);
  const auto d = lower_bound(diana(), analytic_projector_rule(diana()), ladder);
  for (const auto& e : d.levels) EXPECT_NEAR(e.lower, 1.0, 1e-12);
  EXPECT_EQ(d.lower_semi_frame, Verdict::Yes);
  const auto o = lower_bound(orthonormal(), analytic_projector_rule(orthonormal()), TruncationLadder::doubling({16, 16}));
  EXPECT_NEAR(o.estimate, 1.0, 1e-12);
  EXPECT_EQ(o.bessel, Verdict::Yes);
}

TEST(LowerBound, GrowingDiagonal) {
  const auto fam = diagonal(1.0);
  const auto r = lower_bound(fam, analytic_projector_rule(fam), TruncationLadder::doubling({16, 16}));
  for (const auto& e : r.levels) {
    EXPECT_NEAR(e.lower, 1.0, 1e-12);
    EXPECT_NEAR(e.upper, static_cast<double>(e.size * e.size), 1e-9 * e.size * e.size);
  }
  EXPECT_EQ(r.lower_semi_frame, Verdict::Yes);
  EXPECT_EQ(r.bessel, Verdict::No);
  const auto c = classify_family(fam, analytic_projector_rule(fam), TruncationLadder::doubling({16, 16}));
  EXPECT_EQ(c.frame, Verdict::No);
}

TEST(CanonicalDual, DianaGivesStandardBasis) {
  const Level l{65, 64};
  const auto dual = canonical_dual(diana(), analytic_projector(diana(), l.dim), l);
  for (Index p = 0; p < l.size; ++p) {
    EXPECT_LE((dual.vectors[static_cast<std::size_t>(p)].entries() - unit(l.dim, p + 2)).norm(), 1e-12);
  }
  EXPECT_NEAR(dual.bessel_bound_estimate, 1.0, 1e-12);
}

TEST(CanonicalDual, OrthonormalSelfDual) {
  const Level l{12, 12};
  const auto dual = canonical_dual(orthonormal(), identity_projector(12), l);
  EXPECT_LT((dual.matrix() - Eigen::MatrixXcd::Identity(12, 12)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(CanonicalDual, FrameMatchesDirectSolve) {
  const auto fam = random_frame(4);
  const Level l{10, 30};
  const auto dual = canonical_dual(fam, identity_projector(10), l);
  const Eigen::MatrixXcd d = fam.synthesis_matrix(l);
  const Eigen::MatrixXcd s = d * d.adjoint();
  const Eigen::MatrixXcd direct = s.ldlt().solve(d);
  EXPECT_LT((dual.matrix() - direct).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(CanonicalDual, RefusesSingularRestriction) {
  try {
    canonical_dual(diana(), identity_projector(9), {9, 8});
    FAIL() << "expected refusal";
  } catch (const RefusedError& e) {
    EXPECT_LT(std::abs(e.evidence()), 1e-10);
  }
}

TEST(DualRoutes, AgreeOnScenarios) {
  EXPECT_LE(max_vector_difference(canonical_dual(diana(), analytic_projector(diana(), 65), {65, 64}),
                                  dual_via_pseudoinverse(diana(), analytic_projector(diana(), 65), {65, 64})),
            1e-9);
  EXPECT_LE(max_vector_difference(canonical_dual(orthonormal(), identity_projector(8), {8, 8}),
                                  dual_via_pseudoinverse(orthonormal(), identity_projector(8), {8, 8})),
            1e-12);
  for (unsigned long seed = 1; seed <= 3; ++seed) {
    const auto fam = random_lower_semi_frame(seed);
    const Level l{16, 48};
    const auto p = analytic_projector(fam, l.dim);
    EXPECT_LE(max_vector_difference(canonical_dual(fam, p, l), dual_via_pseudoinverse(fam, p, l)), 1e-9);
  }
}

TEST(DualRoutes, PseudoInverseRefusesRankDeficiency) {
  EXPECT_THROW(dual_via_pseudoinverse(random_frame(2), identity_projector(10), {10, 6}), RefusedError);
}

TEST(Reconstruct, DianaInsideAndOutside) {
  const Level l{65, 64};
  const auto p = analytic_projector(diana(), l.dim);
  const auto dual = canonical_dual(diana(), p, l);
  const auto in = reconstruct(unit(l.dim, 3), diana(), dual, p);
  EXPECT_LE(in.error_vs_input, 1e-10);
  const auto out = reconstruct(unit(l.dim, 1), diana(), dual, p);
  EXPECT_LE(out.output.norm(), 1e-14);
  EXPECT_NEAR(out.error_vs_input, 1.0, 1e-10);
  for (const auto& f : probe_set(l.dim, 5, 6, false)) {
    const auto r = reconstruct(f, diana(), dual, p);
    EXPECT_NEAR(r.error_vs_input, r.outside_fraction, 1e-10);
  }
}

TEST(Reconstruct, FrameRecoversEverything) {
  const auto fam = random_frame(14);
  const Level l{12, 36};
  const auto dual = canonical_dual(fam, identity_projector(12), l);
  for (const auto& f : probe_set(12, 3, 8, false)) {
    EXPECT_LE(reconstruct(f, fam, dual, identity_projector(12)).error_vs_input, 1e-9);
  }
}

TEST(Parseval, CanonicalTightFamilies) {
  const auto o = parseval_canonical(orthonormal(), identity_projector(8), {8, 8});
  EXPECT_LT((o.vectors - Eigen::MatrixXcd::Identity(8, 8)).cwiseAbs().maxCoeff(), 1e-14);
  const auto d = parseval_canonical(diana(), analytic_projector(diana(), 33), {33, 32});
  for (Index p = 0; p < 32; ++p) EXPECT_LT((d.vectors.col(p) - unit(33, p + 2)).norm(), 1e-12);
  const auto two = diagonal(0.0, 2.0);
  const auto t = parseval_canonical(two, identity_projector(6), {6, 6});
  EXPECT_LT((t.vectors - Eigen::MatrixXcd::Identity(6, 6)).cwiseAbs().maxCoeff(), 1e-14);
  for (const auto& fam : {stoeva(), random_lower_semi_frame(3)}) {
    const Level l{fam.name() == "stoeva" ? 33 : 16, fam.name() == "stoeva" ? 32 : 48};
    const auto r = parseval_canonical(fam, analytic_projector(fam, l.dim), l);
    EXPECT_NEAR(r.lower, 1.0, 1e-9) << fam.name();
    EXPECT_NEAR(r.upper, 1.0, 1e-9) << fam.name();
  }
}

TEST(DualBessel, BoundedByInverseLowerBound) {
  const auto fam = random_lower_semi_frame(12);
  const Level l{16, 48};
  const auto p = analytic_projector(fam, l.dim);
  const auto dual = canonical_dual(fam, p, l);
  const auto spectrum = restricted_spectrum(frame_matrix(fam, l), p);
  const double ratio = max_bessel_ratio(dual.matrix(), probe_set(l.dim, 42));
  EXPECT_LE(ratio, 1.0 / spectrum.lambda_min() + 1e-6);
  EXPECT_GE(dual.bessel_bound_estimate, ratio * (1 - 1e-12));
}

TEST(Surjectivity, Verdicts) {
  const auto ladder = TruncationLadder::doubling({16, 16});
  const auto o = surjectivity_check(orthonormal(), ladder);
  EXPECT_EQ(o.closed_range, Verdict::Yes);
  for (double s : o.smallest_singular_values) EXPECT_NEAR(s, 1.0, 1e-12);
  ASSERT_TRUE(o.reconstruction_error.has_value());
  EXPECT_LE(*o.reconstruction_error, 1e-12);
  const auto shrink = surjectivity_check(diagonal(-1.0), ladder);
  EXPECT_EQ(shrink.closed_range, Verdict::No);
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    EXPECT_NEAR(shrink.smallest_singular_values[i], 1.0 / static_cast<double>(ladder[i].size), 1e-12);
  }
  const auto d = surjectivity_check(diana(), TruncationLadder::doubling({17, 16}));
  EXPECT_EQ(d.closed_range, Verdict::NotApplicable);
  EXPECT_EQ(d.smallest_singular_values.size(), 4u);
}
