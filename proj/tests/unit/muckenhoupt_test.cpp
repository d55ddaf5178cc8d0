#include <cmath>

#include <gtest/gtest.h>

#include "semiframe/errors.hpp"
#include "semiframe/hilbert/families.hpp"
#include "semiframe/muckenhoupt/a2.hpp"
#include "semiframe/muckenhoupt/weight.hpp"

using namespace semiframe;
using namespace semiframe::muckenhoupt;

namespace {

// Relative agreement in significant digits.
bool same_digits(const Real& a, const Real& b, int digits) {
  return boost::multiprecision::abs(a - b) <= boost::multiprecision::abs(b) * boost::multiprecision::pow(Real(10), -digits);
}

std::vector<Interval> random_intervals(unsigned long seed, int count) {
  const auto g = hilbert::seeded_gaussians(seed, 77, 2 * count);
  std::vector<Interval> out;
  for (int i = 0; i < count; ++i) {
    double a = 0.5 + 0.5 * std::tanh(g[static_cast<std::size_t>(2 * i)]);
    double b = 0.5 + 0.5 * std::tanh(g[static_cast<std::size_t>(2 * i + 1)]);
    if (a > b) std::swap(a, b);
    if (b - a < 1e-9) b = std::min(1.0, a + 1e-3);
    out.push_back({Real(a), Real(b)});
  }
  return out;
}

}  // namespace

TEST(A2Ratio, ConstantIsOne) {
  for (const auto& I : random_intervals(1, 10)) EXPECT_EQ(a2_ratio(Weight::constant(3.5), I).value, 1);
}

TEST(A2Ratio, PlateauWitnessClosedForm) {
  const Weight g2 = Weight::plateau(12).pow(2.0);
  for (int k = 3; k <= 8; ++k) {
    const A2Ratio r = a2_ratio(g2, plateau_witness(k));
    ASSERT_FALSE(r.divergent);
    EXPECT_TRUE(same_digits(r.value, plateau_witness_ratio(k), 12)) << k;
    EXPECT_GT(r.value, Real((k + 1) * (k + 1)) / 4) << k;
  }
}

TEST(A2Ratio, LinearWeightNearZeroDiverges) {
  const Weight x = Weight::power(1.0);
  const Interval I{Real(0), Real("0.01")};
  EXPECT_TRUE(a2_ratio(x, I).divergent);
  double previous = 0.0;
  for (Index nodes : {256, 1024, 4096, 16384}) {
    const double q = a2_ratio_quadrature(x, I, nodes);
    EXPECT_GT(q, previous + 0.5);
    previous = q;
  }
}

TEST(A2Ratio, RejectsBadIntervals) {
  EXPECT_THROW(a2_ratio(Weight::constant(1), Interval{Real(0.5), Real(0.5)}), InputError);
  EXPECT_THROW(a2_ratio(Weight::constant(1), Interval{Real(-0.1), Real(0.5)}), InputError);
  EXPECT_THROW(a2_ratio(Weight::constant(1), Interval{Real(0.1), Real(1.5)}), InputError);
}

TEST(A2Ratio, AtLeastOneEverywhere) {
  const std::vector<Weight> weights = {Weight::power(0.5), Weight::power(-0.7), Weight::plateau(6).pow(2.0),
                                       Weight::custom({1.0, 5.0, 0.25, 3.0, 7.0, 0.5})};
  for (const auto& w : weights) {
    for (const auto& I : random_intervals(3, 40)) EXPECT_GE(a2_ratio(w, I).as_double(), 1.0 - 1e-12) << w.name();
  }
}

TEST(A2Ratio, ScaleInvarianceIsExact) {
  const std::vector<Weight> weights = {Weight::power(0.5), Weight::plateau(8).pow(2.0), Weight::custom({1.0, 2.0, 9.0})};
  for (const auto& w : weights) {
    for (double c : {1e-6, 0.3, 7.0, 1e9}) {
      for (const auto& I : random_intervals(5, 10)) {
        EXPECT_EQ(a2_ratio(w.scaled(c), I).value, a2_ratio(w, I).value);
      }
    }
  }
}

TEST(A2Estimate, ConstantInA2) {
  const auto r = a2_estimate(Weight::constant(2.0));
  EXPECT_EQ(r.verdict, A2Verdict::InA2);
  EXPECT_EQ(r.sup_estimate, 1);
}

TEST(A2Estimate, SquareRootInA2) {
  const auto r = a2_estimate(Weight::power(0.5));
  EXPECT_EQ(r.verdict, A2Verdict::InA2);
  EXPECT_TRUE(std::isfinite(static_cast<double>(r.sup_estimate)));
  EXPECT_LT(r.sup_estimate, 2);
}

TEST(A2Estimate, PlateauNotInA2) {
  const auto r = a2_estimate(Weight::plateau(8).pow(2.0));
  EXPECT_EQ(r.verdict, A2Verdict::NotInA2);
  EXPECT_GT(r.candidate_growth_exponent, 1.0);
  int witnessed = 0;
  for (const auto& e : r.table) {
    if (e.origin.rfind("plateau-witness", 0) == 0) {
      const int k = std::stoi(e.origin.substr(e.origin.find('=') + 1));
      EXPECT_GE(e.ratio.value, Real((k + 1) * (k + 1)) / 4);
      ++witnessed;
    }
  }
  EXPECT_EQ(witnessed, 6);
}

TEST(A2Estimate, SingularPowersNotInA2) {
  EXPECT_EQ(a2_estimate(Weight::power(-1.0)).verdict, A2Verdict::NotInA2);
  EXPECT_EQ(a2_estimate(Weight::power(1.5)).verdict, A2Verdict::NotInA2);
}

TEST(A2Estimate, BoundedWeightBelowProductOfBounds) {
  const std::vector<double> cells = {1.0, 4.0, 0.5, 2.0, 3.0, 0.25, 1.5, 2.5};
  const auto r = a2_estimate(Weight::custom(cells));
  EXPECT_EQ(r.verdict, A2Verdict::InA2);
  EXPECT_LE(r.sup_estimate, Real(4.0 * 4.0));
}

TEST(A2Estimate, SupDominatesTableAndWitnessAttainsIt) {
  for (const auto& w : {Weight::power(0.5), Weight::plateau(8).pow(2.0)}) {
    const auto r = a2_estimate(w, {.depth = 10});
    for (const auto& e : r.table) EXPECT_LE(e.ratio.value, r.sup_estimate);
    EXPECT_EQ(a2_ratio(w, r.witness).value, r.sup_estimate);
  }
}

TEST(Plateau, Values) {
  const Weight g = Weight::plateau(8);
  EXPECT_EQ(g.value(0.5 * std::ldexp(1.0, -6)), 4.0);
  EXPECT_EQ(g.value(0.5), 1.0);
  const auto s = plateau_breakpoints(8);
  const double mid = static_cast<double>((s[1] + s[2]) / 2);
  EXPECT_EQ(g.value(mid), 27.0);
}

TEST(Plateau, SquareIntegralMatchesSeries) {
  for (int k_max : {2, 5, 8, 12}) {
    const Weight g2 = Weight::plateau(k_max).pow(2.0);
    const Real integral = g2.integral(Interval{Real(0), Real(1)});
    EXPECT_TRUE(same_digits(integral, plateau_square_integral(k_max), 12)) << k_max;
    EXPECT_TRUE(boost::multiprecision::isfinite(g2.integral(Interval{Real(0), Real(1)}, -1)));
  }
}

TEST(Plateau, RefusesOutOfRange) {
  EXPECT_THROW(Weight::plateau(13), RefusedError);
  EXPECT_THROW(Weight::plateau(1), RefusedError);
}

TEST(Weight, ParseSpecs) {
  EXPECT_EQ(Weight::parse("plateau:8").k_max(), 8);
  EXPECT_EQ(Weight::parse("power:0.5").kind(), Weight::Kind::Power);
  EXPECT_THROW(Weight::parse("plateau"), InputError);
  EXPECT_THROW(Weight::parse("banana:3"), InputError);
  EXPECT_THROW(Weight::parse("power:x"), InputError);
}

TEST(Weight, CellMeansIntegrateExactly) {
  const Weight g2 = Weight::plateau(6).pow(2.0);
  const auto means = g2.cell_means(1024);
  double total = 0.0;
  for (double m : means) total += m / 1024.0;
  EXPECT_NEAR(total, static_cast<double>(plateau_square_integral(6)), 1e-12);
  const auto p = Weight::power(-0.5).cell_means(64);
  EXPECT_NEAR(p[0], 2.0 * std::sqrt(1.0 / 64) * 64, 1e-12);
}
