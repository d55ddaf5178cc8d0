#include <bit>
#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "semiframe/errors.hpp"
#include "semiframe/hilbert/coefficient_vector.hpp"
#include "semiframe/hilbert/families.hpp"
#include "semiframe/hilbert/grid_function.hpp"
#include "semiframe/hilbert/ladder.hpp"

using namespace semiframe;
using namespace semiframe::hilbert;

TEST(CoefficientVector, OrthonormalBasisPairings) {
  const auto e1 = CoefficientVector::basis(4, 1);
  const auto e2 = CoefficientVector::basis(4, 2);
  EXPECT_EQ(inner_product(e1, e1), cplx(1.0));
  EXPECT_EQ(inner_product(e1, e2), cplx(0.0));
}

TEST(CoefficientVector, ConjugateLinearInSecondArgument) {
  Eigen::VectorXcd u(2), v(2);
  u << 1.0, cplx(0, 1);
  v << cplx(0, 1), 1.0;
  EXPECT_EQ(inner_product(CoefficientVector(u), CoefficientVector(v)), cplx(0.0));
  const cplx a(2.0, -3.0);
  const cplx lhs = inner_product(CoefficientVector(u), CoefficientVector(v * a) + CoefficientVector(u));
  const cplx rhs = std::conj(a) * inner_product(CoefficientVector(u), CoefficientVector(v)) +
                   inner_product(CoefficientVector(u), CoefficientVector(u));
  EXPECT_LT(std::abs(lhs - rhs), 1e-15);
}

TEST(CoefficientVector, RejectsMismatchedModels) {
  const auto a = CoefficientVector::basis(3, 1);
  const auto b = CoefficientVector::basis(4, 1);
  const auto c = CoefficientVector::basis(3, 1, BasisTag::FourierGrid);
  EXPECT_THROW(inner_product(a, b), InputError);
  EXPECT_THROW(inner_product(a, c), InputError);
  EXPECT_THROW(a + c, InputError);
}

TEST(CoefficientVector, NormMatchesSquaredModuli) {
  Eigen::VectorXcd v(3);
  v << cplx(3, 4), cplx(0, -1), 2.0;
  EXPECT_DOUBLE_EQ(CoefficientVector(v).squared_norm(), 25.0 + 1.0 + 4.0);
}

TEST(Families, DianaInstantiation) {
  const auto xs = diana().instantiate({5, 4});
  ASSERT_EQ(xs.size(), 4u);
  for (Index n = 0; n < 4; ++n) {
    Eigen::VectorXcd expected = Eigen::VectorXcd::Zero(5);
    expected(0) = 1.0;
    expected(n + 1) = 1.0;
    EXPECT_EQ(xs[static_cast<std::size_t>(n)].entries(), expected);
  }
}

TEST(Families, StoevaInstantiation) {
  const auto xs = stoeva().instantiate({4, 3});
  for (Index n = 2; n <= 4; ++n) {
    Eigen::VectorXcd expected = Eigen::VectorXcd::Zero(4);
    expected(0) = static_cast<double>(n);
    expected(n - 1) = static_cast<double>(n);
    EXPECT_EQ(xs[static_cast<std::size_t>(n - 2)].entries(), expected);
  }
}

TEST(Families, OrthonormalIsIdentity) {
  EXPECT_EQ(orthonormal().synthesis_matrix({6, 6}), Eigen::MatrixXcd::Identity(6, 6));
}

TEST(Families, GeneratorIsDeterministic) {
  for (const auto& f : {random_frame(7), random_lower_semi_frame(9), interleaved_chi(), stoeva()}) {
    const Level l{12, 10};
    EXPECT_EQ(f.synthesis_matrix(l), f.synthesis_matrix(l)) << f.name();
  }
}

TEST(Families, EveryVectorHasLevelDimension) {
  for (const auto& f : {diana(), stoeva(), interleaved_chi(), random_frame(1)}) {
    for (const auto& v : f.instantiate({f.min_dimension(9), 9})) EXPECT_EQ(v.size(), f.min_dimension(9));
  }
}

TEST(Families, InterleavedChiLayout) {
  const auto d = interleaved_chi().synthesis_matrix({3, 6});
  // xi_1, eta_1, xi_2, eta_2, xi_3, eta_3
  EXPECT_EQ(d(0, 0), cplx(1.0));
  EXPECT_EQ(d(0, 1), cplx(1.0));
  EXPECT_NEAR(d(1, 2).real(), std::pow(2.0, 1.6), 1e-15);
  EXPECT_NEAR(d(0, 2).real(), -std::pow(2.0, 1.6), 1e-15);
  EXPECT_NEAR(d(1, 3).real(), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(d(2, 5).real(), std::sqrt(3.0), 1e-15);
}

TEST(Families, IncompatibleLevelRejected) {
  EXPECT_THROW(diana().synthesis_matrix({4, 4}), InputError);
}

TEST(Families, PermutedEnumeration) {
  const auto f = diana();
  const auto p = f.permuted({2, 0, 1});
  const auto a = f.synthesis_matrix({4, 3});
  const auto b = p.synthesis_matrix({4, 3});
  EXPECT_EQ(b.col(0), a.col(2));
  EXPECT_EQ(b.col(1), a.col(0));
  EXPECT_EQ(p.label(0), 4);
  EXPECT_THROW(f.permuted({0, 0, 1}), InputError);
  EXPECT_EQ(p.descriptor()["enumeration"], "permuted");
}

TEST(IndexSet, OrdZEnumeration) {
  IndexSet z{IndexSet::Kind::Integer, 0};
  const long expected[] = {0, 1, -1, 2, -2, 3, -3};
  for (int p = 0; p < 7; ++p) EXPECT_EQ(z.label(p), expected[p]);
}

TEST(Ladder, Validation) {
  EXPECT_THROW(TruncationLadder({{2, 2}, {4, 4}}), InputError);
  EXPECT_THROW(TruncationLadder({{2, 2}, {4, 4}, {4, 8}}), InputError);
  const auto l = TruncationLadder::doubling({256, 256});
  ASSERT_EQ(l.size(), 4u);
  EXPECT_EQ(l.back(), (Level{2048, 2048}));
}

TEST(TailDiagnostic, BaselSeriesConverges) {
  const auto ladder = TruncationLadder::doubling({1250, 1250});
  const auto v = tail_diagnostic(
      [](const Level& l) {
        double s = 0.0;
        for (Index n = l.size; n >= 1; --n) s += 1.0 / (static_cast<double>(n) * static_cast<double>(n));
        return s;
      },
      ladder);
  ASSERT_EQ(v.kind, Convergence::Convergent);
  EXPECT_NEAR(v.limit_estimate, kPi * kPi / 6.0, 0.01 * kPi * kPi / 6.0);
}

TEST(TailDiagnostic, CountingSumDiverges) {
  const auto v = tail_diagnostic([](const Level& l) { return static_cast<double>(l.size); },
                                 TruncationLadder::doubling({16, 16}));
  ASSERT_EQ(v.kind, Convergence::Divergent);
  EXPECT_NEAR(v.growth_exponent, 1.0, 1e-12);
}

TEST(TailDiagnostic, ZeroConverges) {
  const auto v = tail_diagnostic([](const Level&) { return 0.0; }, TruncationLadder::doubling({4, 4}));
  ASSERT_EQ(v.kind, Convergence::Convergent);
  EXPECT_EQ(v.limit_estimate, 0.0);
}

TEST(TailDiagnostic, PersistentOscillationInconclusive) {
  const auto v = tail_diagnostic([](const Level& l) { return 1.0 + 0.5 * (std::bit_width(static_cast<unsigned long>(l.size)) % 2 == 0 ? 1 : -1); },
                                 TruncationLadder::doubling({16, 16}, 5));
  EXPECT_EQ(v.kind, Convergence::Inconclusive);
}

TEST(TailDiagnostic, MonotoneRulesGiveMonotoneValues) {
  const auto v = tail_diagnostic(
      [](const Level& l) {
        double s = 0.0;
        for (Index n = 1; n <= l.size; ++n) s += 1.0 / std::sqrt(static_cast<double>(n));
        return s;
      },
      TruncationLadder::doubling({8, 8}, 5));
  for (std::size_t i = 1; i < v.values.size(); ++i) EXPECT_GE(v.values[i], v.values[i - 1]);
}

namespace {
GridFunction line(double omega, double step, double (*f)(double)) {
  return GridFunction::sample_line(omega, step, [f](double x) { return cplx(f(x)); });
}
}  // namespace

TEST(GridFunction, MidpointNodes) {
  const auto g = GridFunction::sample_periodic(1.0, 4, [](double x) { return cplx(x); });
  EXPECT_DOUBLE_EQ(g.step(), 0.25);
  EXPECT_DOUBLE_EQ(g.node(0), 0.125);
  EXPECT_DOUBLE_EQ(g.integral().real(), 0.5);
  EXPECT_THROW(GridFunction::sample_line(1.0, 0.3, [](double) { return cplx(1.0); }), InputError);
}

TEST(Periodize, IndicatorTilesToOne) {
  const auto f = line(4.0, 1.0 / 64, [](double x) { return (x >= 0.0 && x < 1.0) ? 1.0 : 0.0; });
  const auto p = periodize(f, 1.0, 8);
  EXPECT_TRUE(p.stabilized);
  for (const cplx& s : p.output.samples()) EXPECT_EQ(s, cplx(1.0));
}

TEST(Periodize, GaussianIntegralPreserved) {
  const auto f = line(8.0, 1.0 / 1024, [](double x) { return std::exp(-kPi * x * x); });
  const auto p = periodize(f, 1.0, 16);
  EXPECT_TRUE(p.stabilized);
  // Oracle: direct line quadrature, and the exact value 1.
  EXPECT_NEAR(p.output.integral().real(), f.integral().real(), 1e-12);
  EXPECT_NEAR(p.output.integral().real(), 1.0, 1e-10);
}

TEST(Periodize, DisjointShiftsKeepRestriction) {
  const auto f = line(4.0, 1.0 / 64, [](double x) { return (x >= 0.0 && x < 0.5) ? std::cos(x) : 0.0; });
  const auto p = periodize(f, 1.0, 8);
  for (Index j = 0; j < p.output.size(); ++j) {
    const double x = p.output.node(j);
    EXPECT_EQ(p.output[j].real(), x < 0.5 ? std::cos(x) : 0.0);
  }
}

TEST(Periodize, IdentityOverDecayingCorpus) {
  double (*corpus[])(double) = {
      [](double x) { return std::exp(-kPi * x * x); },
      [](double x) { return std::exp(-2.0 * std::abs(x - 0.3)); },
      [](double x) { return 1.0 / (1.0 + std::pow(x, 8)); },
      [](double x) { return std::abs(x) < 1.5 ? std::cos(x) * (1.5 - std::abs(x)) : 0.0; },
  };
  for (auto f : corpus) {
    const auto g = line(64.0, 1.0 / 256, f);
    const auto p = periodize(g, 2.0, 32);
    const double whole = g.integral().real();
    EXPECT_LE(std::abs(p.output.integral().real() - whole), 1e-8 * (1.0 + std::abs(whole)));
  }
}

TEST(Periodize, ShortTruncationFlagged) {
  const auto f = line(32.0, 1.0 / 16, [](double x) { return 1.0 / (1.0 + x * x); });
  EXPECT_FALSE(periodize(f, 1.0, 2).stabilized);
}

TEST(GridFunction, CsvRoundTrip) {
  const auto f = GridFunction::sample_line(2.0, 0.25, [](double x) { return cplx(x, -x * x); });
  std::stringstream ss;
  write_csv(ss, f);
  const auto g = read_csv(ss, GridKind::Line);
  EXPECT_TRUE(g.same_grid(f));
  EXPECT_EQ(g.max_abs_difference(f), 0.0);
}
