#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "semiframe/muckenhoupt/weight.hpp"

namespace semiframe::muckenhoupt {

struct A2Ratio {
  Real value;
  bool divergent = false;  // an average is infinite

  double as_double() const { return divergent ? std::numeric_limits<double>::infinity() : static_cast<double>(value); }
};

// (mean of w on I)(mean of 1/w on I). The scale of w cancels before any rounding.
// Throws InputError unless 0 <= lo < hi <= 1.
A2Ratio a2_ratio(const Weight& w, const Interval& interval);

// Midpoint quadrature of both means with `nodes` nodes; diverging weights show growth under refinement.
double a2_ratio_quadrature(const Weight& w, const Interval& interval, Index nodes);

enum class A2Verdict { InA2, NotInA2, Inconclusive };
std::string to_string(A2Verdict v);

struct A2Entry {
  Interval interval;
  A2Ratio ratio;
  std::string origin;  // "dyadic" or the candidate family
};

struct A2Options {
  int depth = 14;
  double growth_threshold = 0.1;
  double r2_threshold = 0.99;
  double stability_tolerance = 1e-3;
  std::size_t dyadic_rows = 8;
};

struct A2Report {
  std::string weight;
  Real sup_estimate;
  bool sup_infinite = false;
  Interval witness;
  std::vector<A2Entry> table;
  A2Verdict verdict = A2Verdict::Inconclusive;
  double candidate_growth_exponent = 0.0;
  double candidate_r_squared = 0.0;
  std::vector<double> sup_by_depth;
  std::vector<std::string> notes;
};

// Dyadic intervals up to options.depth plus profile-aware candidates (plateau witnesses,
// endpoint intervals of power weights). NotInA2 on an infinite ratio or when candidate
// ratios grow along their sequence; InA2 when the dyadic sup is stable across depths.
A2Report a2_estimate(const Weight& w, const A2Options& options = {});

nlohmann::ordered_json to_json(const A2Report& report);

}  // namespace semiframe::muckenhoupt
