#include "semiframe/muckenhoupt/a2.hpp"

#include <algorithm>
#include <cmath>

#include "semiframe/errors.hpp"

namespace semiframe::muckenhoupt {

A2Ratio a2_ratio(const Weight& w, const Interval& interval) {
  const Real mass = w.profile_integral(interval, 1);
  const Real inverse_mass = w.profile_integral(interval, -1);
  A2Ratio r;
  if (boost::multiprecision::isinf(mass) || boost::multiprecision::isinf(inverse_mass)) {
    r.divergent = true;
    r.value = std::numeric_limits<Real>::infinity();
    return r;
  }
  const Real len = interval.length();
  r.value = mass * inverse_mass / (len * len);
  return r;
}

double a2_ratio_quadrature(const Weight& w, const Interval& interval, Index nodes) {
  if (nodes < 1) throw InputError("a2_ratio_quadrature: need nodes >= 1");
  const double lo = static_cast<double>(interval.lo);
  const double h = static_cast<double>(interval.hi - interval.lo) / static_cast<double>(nodes);
  std::vector<double> v(static_cast<std::size_t>(nodes)), inv(static_cast<std::size_t>(nodes));
  for (Index j = 0; j < nodes; ++j) {
    const double x = lo + (static_cast<double>(j) + 0.5) * h;
    v[static_cast<std::size_t>(j)] = w.value(x);
    inv[static_cast<std::size_t>(j)] = 1.0 / v[static_cast<std::size_t>(j)];
  }
  return (pairwise_sum(v) / static_cast<double>(nodes)) * (pairwise_sum(inv) / static_cast<double>(nodes));
}

std::string to_string(A2Verdict v) {
  switch (v) {
    case A2Verdict::InA2: return "InA2";
    case A2Verdict::NotInA2: return "NotInA2";
    case A2Verdict::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

namespace {

bool ratio_less(const A2Ratio& a, const A2Ratio& b) {
  if (a.divergent != b.divergent) return b.divergent;
  if (a.divergent) return false;
  return a.value < b.value;
}

}  // namespace

A2Report a2_estimate(const Weight& w, const A2Options& options) {
  if (options.depth < 2 || options.depth > 20) throw InputError("a2_estimate: depth must lie in 2..20");
  A2Report report;
  report.weight = w.name();

  A2Entry best{Interval{0, 1}, a2_ratio(w, Interval{0, 1}), "dyadic"};
  std::vector<A2Entry> dyadic;
  for (int depth = 0; depth <= options.depth; ++depth) {
    const long count = 1L << depth;
    for (long i = 0; i < count; ++i) {
      const Interval I{Real(i) / count, Real(i + 1) / count};
      A2Entry e{I, a2_ratio(w, I), "dyadic"};
      if (ratio_less(best.ratio, e.ratio)) best = e;
      dyadic.push_back(std::move(e));
    }
    report.sup_by_depth.push_back(best.ratio.as_double());
  }
  std::stable_sort(dyadic.begin(), dyadic.end(),
                   [](const A2Entry& a, const A2Entry& b) { return ratio_less(b.ratio, a.ratio); });
  dyadic.resize(std::min(dyadic.size(), options.dyadic_rows));

  // Registered candidate sequence with its abscissa.
  std::vector<A2Entry> candidates;
  std::vector<double> abscissa;
  if (w.kind() == Weight::Kind::Plateau) {
    for (int k = 2; k < w.k_max() && k <= 11; ++k) {
      const Interval I = plateau_witness(k);
      candidates.push_back({I, a2_ratio(w, I), "plateau-witness k=" + std::to_string(k)});
      abscissa.push_back(k);
    }
  } else if (w.kind() == Weight::Kind::Power) {
    for (int j = 1; j <= options.depth; ++j) {
      const Interval I{Real(0), Real(1) / Real(1L << j)};
      candidates.push_back({I, a2_ratio(w, I), "left-endpoint j=" + std::to_string(j)});
      abscissa.push_back(std::ldexp(1.0, j));
    }
  }

  for (const auto& c : candidates) {
    if (ratio_less(best.ratio, c.ratio)) best = c;
  }
  report.table = candidates;
  report.table.insert(report.table.end(), dyadic.begin(), dyadic.end());
  report.witness = best.interval;
  report.sup_estimate = best.ratio.value;
  report.sup_infinite = best.ratio.divergent;

  bool growing = false;
  if (candidates.size() >= 3 &&
      std::none_of(candidates.begin(), candidates.end(), [](const A2Entry& e) { return e.ratio.divergent; })) {
    std::vector<double> y;
    for (const auto& c : candidates) y.push_back(c.ratio.as_double());
    const PowerFit fit = fit_power_law(abscissa, y);
    report.candidate_growth_exponent = fit.exponent;
    report.candidate_r_squared = fit.r_squared;
    growing = fit.exponent > options.growth_threshold && fit.r_squared > options.r2_threshold;
  }

  const double half = report.sup_by_depth[static_cast<std::size_t>(options.depth / 2)];
  const double full = report.sup_by_depth.back();
  const bool stable = std::isfinite(full) && std::abs(full - half) <= options.stability_tolerance * full;

  if (report.sup_infinite) {
    report.verdict = A2Verdict::NotInA2;
    report.notes.push_back("an interval average of the weight or its reciprocal diverges");
  } else if (growing) {
    report.verdict = A2Verdict::NotInA2;
    report.notes.push_back("ratios grow without bound along the candidate intervals");
  } else if (stable) {
    report.verdict = A2Verdict::InA2;
  } else {
    report.notes.push_back("dyadic supremum still moving with depth and no certified growth");
  }
  return report;
}

nlohmann::ordered_json to_json(const A2Report& report) {
  nlohmann::ordered_json j;
  j["weight"] = report.weight;
  j["verdict"] = to_string(report.verdict);
  j["sup_estimate"] = report.sup_infinite ? std::string("inf") : decimal(report.sup_estimate);
  j["witness"] = {{"lo", decimal(report.witness.lo)}, {"hi", decimal(report.witness.hi)}};
  j["candidate_growth_exponent"] = report.candidate_growth_exponent;
  j["candidate_r_squared"] = report.candidate_r_squared;
  j["sup_by_depth"] = report.sup_by_depth;
  auto& rows = j["table"] = nlohmann::ordered_json::array();
  for (const auto& e : report.table) {
    rows.push_back({{"origin", e.origin},
                    {"lo", decimal(e.interval.lo)},
                    {"hi", decimal(e.interval.hi)},
                    {"ratio", e.ratio.divergent ? std::string("inf") : decimal(e.ratio.value)}});
  }
  j["notes"] = report.notes;
  return j;
}

}  // namespace semiframe::muckenhoupt
