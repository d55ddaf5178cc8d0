#include <cmath>

#include <gtest/gtest.h>

#include "semiframe/errors.hpp"
#include "semiframe/exponentials/exponentials.hpp"
#include "semiframe/hilbert/families.hpp"
#include "semiframe/ops/matrices.hpp"
#include "semiframe/ops/partial_sums.hpp"

using namespace semiframe;
using namespace semiframe::exponentials;

namespace {

GridFunction probe(const ExponentialSystem& s, unsigned long seed) {
  const auto c = hilbert::seeded_gaussians(seed, 41, 6);
  return s.sample([&](double x) {
    return cplx(c[0] + c[1] * std::cos(2 * kPi * x) + c[2] * x * x, c[3] + c[4] * std::sin(6 * kPi * x) + c[5] * x);
  });
}

double l2_distance(const GridFunction& x, const GridFunction& y) {
  std::vector<cplx> d(x.samples().size());
  for (std::size_t j = 0; j < d.size(); ++j) d[j] = x.samples()[j] - y.samples()[j];
  return std::sqrt(x.with_samples(std::move(d)).squared_norm());
}

}  // namespace

TEST(ExponentialSystem, RejectsMisalignedShift) {
  EXPECT_THROW(ExponentialSystem::from_weight(Weight::constant(1.0), 0.7, 64), InputError);
  EXPECT_NO_THROW(ExponentialSystem::from_weight(Weight::constant(1.0), 0.5, 64));
  EXPECT_NO_THROW(ExponentialSystem::from_weight(Weight::constant(1.0), 4.0, 64));
}

TEST(TMult, OrthonormalIsIdentityAndConstantScales) {
  const ExponentialSystem one = ExponentialSystem::from_weight(Weight::constant(1.0), 1.0, 128);
  const ExponentialSystem two = ExponentialSystem::from_weight(Weight::constant(2.0), 1.0, 128);
  const GridFunction f = probe(one, 1);
  EXPECT_EQ(t_mult(f, one).max_abs_difference(f), 0.0);
  for (Index j = 0; j < 128; ++j) EXPECT_NEAR(std::abs(t_mult(f, two)[j] - 4.0 * f[j]), 0.0, 1e-14);
}

TEST(TMult, PlateauIndicator) {
  const ExponentialSystem s = ExponentialSystem::from_weight(Weight::plateau(6), 1.0, 1 << 14);
  const auto breaks = muckenhoupt::plateau_breakpoints(6);
  const double s2 = static_cast<double>(breaks[1]);
  const GridFunction f = s.sample([&](double x) { return x < s2 ? cplx(1.0) : cplx(0.0); });
  const GridFunction out = t_mult(f, s);
  for (Index j = 0; j < f.size(); ++j) EXPECT_EQ(out[j].real(), f[j].real() * 16.0);
}

TEST(TMult, RefusesLargeB) {
  const ExponentialSystem s = ExponentialSystem::from_weight(Weight::constant(1.0), 2.0, 64);
  EXPECT_THROW(t_mult(probe(s, 1), s), InputError);
}

TEST(TGeneral, EqualsTMultForSmallB) {
  for (double b : {1.0, 0.5, 0.25}) {
    const ExponentialSystem s = ExponentialSystem::from_weight(Weight::power(-0.3), b, 256);
    const GridFunction f = probe(s, 3);
    EXPECT_EQ(t_general(f, s).max_abs_difference(t_mult(f, s)), 0.0) << b;
  }
}

TEST(TGeneral, ZeroInput) {
  const ExponentialSystem s = ExponentialSystem::from_weight(Weight::power(0.4), 2.0, 64);
  EXPECT_EQ(t_general(s.sample([](double) { return cplx(0.0); }), s).squared_norm(), 0.0);
}

TEST(TGeneral, TwoTermSumMatchesBruteForce) {
  const ExponentialSystem s = ExponentialSystem::from_weight(Weight::constant(1.0), 2.0, 256);
  const GridFunction f = probe(s, 4);
  const GridFunction t = t_general(f, s);
  // Closed form: (f(x) + f(x -+ 1/2)) / 2 with zero extension.
  for (Index j = 0; j < 256; ++j) {
    const cplx other = j < 128 ? f[j + 128] : f[j - 128];
    EXPECT_NEAR(std::abs(t[j] - 0.5 * (f[j] + other)), 0.0, 1e-14);
  }
  EXPECT_LE(t.max_abs_difference(synthesis_exponentials(analysis_exponentials(f, s), s)), 1e-12);
  double previous = std::numeric_limits<double>::infinity();
  for (long N : {2L, 8L, 32L}) {
    const double d = l2_distance(t, synthesis_exponentials(analysis_exponentials(f, s, -N, N), s));
    EXPECT_LT(d, previous);
    previous = d;
  }
}

TEST(Classify, Orthonormal) {
  const ClassificationReport r =
      classify_exponentials(ExponentialSystem::from_weight(Weight::constant(1.0), 1.0, 256));
  EXPECT_EQ(r.complete, Verdict::Yes);
  EXPECT_EQ(r.minimal, Verdict::Yes);
  EXPECT_EQ(r.bessel, Verdict::Yes);
  EXPECT_EQ(r.lower_semi_frame, Verdict::Yes);
  EXPECT_EQ(r.riesz, Verdict::Yes);
  EXPECT_EQ(r.lower_bound, 1.0);
  EXPECT_EQ(r.upper_bound, 1.0);
}

TEST(Classify, PlateauIsLowerSemiFrameNotBessel) {
  const ClassificationReport r = classify_exponentials(ExponentialSystem::from_weight(Weight::plateau(12), 1.0, 4096));
  EXPECT_EQ(r.complete, Verdict::Yes);
  EXPECT_EQ(r.minimal, Verdict::Yes);
  EXPECT_EQ(r.lower_semi_frame, Verdict::Yes);
  EXPECT_EQ(r.bessel, Verdict::No);
  EXPECT_EQ(r.lower_bound, 1.0);
}

TEST(Classify, QuarterPowerIsBesselNotLowerSemiFrame) {
  const ClassificationReport r = classify_exponentials(ExponentialSystem::from_weight(Weight::power(0.25), 1.0, 1024));
  EXPECT_EQ(r.bessel, Verdict::Yes);
  EXPECT_EQ(r.lower_semi_frame, Verdict::No);
  EXPECT_EQ(r.minimal, Verdict::Yes);
  EXPECT_NEAR(r.lower_growth_exponent, 0.5, 0.05);
}

TEST(Classify, HalfPowerIsNotMinimal) {
  const ClassificationReport r = classify_exponentials(ExponentialSystem::from_weight(Weight::power(0.5), 1.0, 1024));
  EXPECT_EQ(r.minimal, Verdict::No);
}

TEST(Dual, ConstantWeights) {
  const ExponentialSystem s = ExponentialSystem::from_weight(Weight::constant(1.0), 1.0, 64);
  EXPECT_LE(canonical_dual_exponentials(s).g().max_abs_difference(s.g()), 1e-15);
  const GridFunction c = GridFunction::periodic(1.0, std::vector<cplx>(64, cplx(1.0, 2.0)));
  const ExponentialSystem sc(c, 1.0, "complex constant");
  const ExponentialSystem d = canonical_dual_exponentials(sc);
  for (Index j = 0; j < 64; ++j) EXPECT_NEAR(std::abs(d.g()[j] - 1.0 / std::conj(cplx(1.0, 2.0))), 0.0, 1e-15);
}

TEST(Dual, PlateauReconstruction) {
  const ExponentialSystem s = ExponentialSystem::from_weight(Weight::plateau(6), 1.0, 2048);
  const ExponentialSystem d = canonical_dual_exponentials(s);
  for (Index j = 0; j < s.nodes(); ++j) EXPECT_NEAR(d.g()[j].real(), 1.0 / s.g()[j].real(), 1e-15);
  const auto breaks = muckenhoupt::plateau_breakpoints(6);
  const double s2 = static_cast<double>(breaks[1]);
  for (unsigned long seed = 1; seed <= 4; ++seed) {
    GridFunction f = probe(s, seed);
    std::vector<cplx> v = f.samples();
    for (Index j = 0; j < f.size(); ++j) if (f.node(j) >= s2) v[static_cast<std::size_t>(j)] = 0.0;
    f = f.with_samples(std::move(v));
    EXPECT_LE(reconstruct_exponentials(f, s, d).relative_error, 1e-7);
  }
}

TEST(Dual, RedundantReconstruction) {
  const ExponentialSystem s = ExponentialSystem::from_weight(Weight::power(-0.2), 0.5, 256);
  const ExponentialSystem d = canonical_dual_exponentials(s);
  EXPECT_LE(reconstruct_exponentials(probe(s, 7), s, d).relative_error, 1e-10);
}

TEST(Dual, RefusesVanishingWeight) {
  std::vector<cplx> g(64, 1.0);
  g[10] = 0.0;
  EXPECT_THROW(canonical_dual_exponentials(ExponentialSystem(GridFunction::periodic(1.0, g), 1.0, "gap")), RefusedError);
}

TEST(Dual, Biorthogonal) {
  const ExponentialSystem s = ExponentialSystem::from_weight(Weight::power(-0.3), 1.0, 512);
  const ExponentialSystem d = canonical_dual_exponentials(s);
  const auto fs = exponential_family(s, 6), fd = exponential_family(d, 6);
  const hilbert::Level level{512, 13};
  const Eigen::MatrixXcd G = fd.synthesis_matrix(level).adjoint() * fs.synthesis_matrix(level);
  EXPECT_LE((G - Eigen::MatrixXcd::Identity(13, 13)).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(Schauder, ConstantHalfPowerPlateau) {
  EXPECT_EQ(schauder_test(ExponentialSystem::from_weight(Weight::constant(1.0), 1.0, 64)).schauder, Verdict::Yes);
  EXPECT_EQ(schauder_test(ExponentialSystem::from_weight(Weight::power(0.25), 1.0, 64)).schauder, Verdict::Yes);
  EXPECT_EQ(schauder_test(ExponentialSystem::from_weight(Weight::plateau(12), 1.0, 64)).schauder, Verdict::No);
  const auto s = ExponentialSystem::from_weight(Weight::constant(1.0), 1.0, 64).with_ordering(adversarial_labels(8));
  EXPECT_EQ(schauder_test(s).schauder, Verdict::NotApplicable);
}

TEST(Ordering, AdversarialIsAPermutation) {
  const auto labels = adversarial_labels(37);
  EXPECT_EQ(labels.size(), 75u);
  EXPECT_NO_THROW(ExponentialSystem::from_weight(Weight::constant(1.0), 1.0, 128).with_ordering(labels));
}

TEST(FourierConsistency, FrameMatrixMatchesTMult) {
  const ExponentialSystem s = ExponentialSystem::from_weight(Weight::power(-0.2), 1.0, 128);
  const GridFunction f = probe(s, 9);
  const GridFunction t = t_mult(f, s);
  Eigen::VectorXcd v(128);
  const double rh = std::sqrt(f.step());
  for (Index j = 0; j < 128; ++j) v(j) = rh * f[j];
  double previous = std::numeric_limits<double>::infinity();
  for (long half : {8L, 32L, 63L}) {
    const auto fam = exponential_family(s, half);
    const Eigen::MatrixXcd T = ops::frame_matrix(fam, {128, 2 * half + 1}).matrix;
    const Eigen::VectorXcd tv = T * v / rh;
    double d = 0.0;
    for (Index j = 0; j < 128; ++j) d += std::norm(tv(j) - t[j]);
    d = std::sqrt(d * f.step());
    EXPECT_LT(d, previous);
    previous = d;
  }
}

TEST(Ordering, FrameMatrixInvariantPrefixTraceSensitive) {
  const ExponentialSystem s = ExponentialSystem::from_weight(Weight::power(-0.45), 1.0, 4096);
  const long half = 512;
  // f = u / conj(g), u with dyadic bands of Fourier coefficients.
  ExponentialCoefficients u{-half, Eigen::VectorXcd::Zero(2 * half + 1)};
  u.values(half) = 1.0;
  for (int j = 1; j <= 9; ++j) {
    const long lo = 1L << (j - 1), hi = std::min(1L << j, half + 1);
    const double amp = std::pow(2.0, -0.2 * j) / std::sqrt(2.0 * static_cast<double>(hi - lo));
    for (long k = lo; k < hi; ++k) {
      const double t = (static_cast<double>(k - lo) + 0.5) / static_cast<double>(hi - lo);
      const double taper = std::pow(std::sin(kPi * t), 2);
      for (long n : {k, -k}) u.values(n + half) = amp * taper * std::polar(1.0, -kPi * static_cast<double>(n));
    }
  }
  const ExponentialSystem flat = ExponentialSystem::from_weight(Weight::constant(1.0), 1.0, 4096);
  const GridFunction uf = synthesis_exponentials(u, flat);
  Eigen::VectorXcd f(4096);
  for (Index j = 0; j < 4096; ++j) f(j) = std::sqrt(uf.step()) * uf[j] / std::conj(s.g()[j]);

  const hilbert::Level level{4096, 2 * half + 1};
  const auto natural = exponential_family(s, half);
  const auto adversarial = exponential_family(s.with_ordering(adversarial_labels(half)), half);
  const auto id = hilbert::identity_order(2 * half + 1);
  const ops::PartialSumTrace tz = ops::s_apply(natural, f, id, level);
  const ops::PartialSumTrace ta = ops::s_apply(adversarial, f, id, level);
  EXPECT_TRUE(tz.status.stabilized);
  EXPECT_FALSE(ta.status.stabilized);
  EXPECT_LE((tz.final_sum - ta.final_sum).norm(), 1e-9 * tz.final_sum.norm());
}
