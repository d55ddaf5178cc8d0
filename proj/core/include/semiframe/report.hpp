#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace semiframe {

enum class Verdict { Yes, No, Inconclusive, NotApplicable };

std::string to_string(Verdict v);

// Per-level numbers behind a classification (eigenvalues, quantiles, ...).
struct LevelEvidence {
  long dim = 0;
  long size = 0;
  double lower = 0.0;
  double upper = 0.0;
};

// Bessel / frame / lower-semi-frame / Riesz verdicts with bound estimates.
// scope says what space the verdicts refer to ("H", "closed span", "H_xi").
struct ClassificationReport {
  std::string subject;
  std::string scope;
  Verdict complete = Verdict::NotApplicable;
  Verdict minimal = Verdict::NotApplicable;
  Verdict bessel = Verdict::Inconclusive;
  Verdict frame = Verdict::Inconclusive;
  Verdict lower_semi_frame = Verdict::Inconclusive;
  Verdict riesz = Verdict::NotApplicable;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  double lower_growth_exponent = 0.0;
  double upper_growth_exponent = 0.0;
  std::vector<LevelEvidence> evidence;
  std::vector<std::string> notes;
};

nlohmann::ordered_json to_json(const ClassificationReport& report);

}  // namespace semiframe
