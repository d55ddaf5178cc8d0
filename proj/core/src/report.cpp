#include "semiframe/report.hpp"

namespace semiframe {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    case Verdict::Inconclusive: return "inconclusive";
    case Verdict::NotApplicable: return "n/a";
  }
  return "n/a";
}

nlohmann::ordered_json to_json(const ClassificationReport& report) {
  nlohmann::ordered_json j;
  j["subject"] = report.subject;
  j["scope"] = report.scope;
  j["complete"] = to_string(report.complete);
  j["minimal"] = to_string(report.minimal);
  j["bessel"] = to_string(report.bessel);
  j["frame"] = to_string(report.frame);
  j["lower_semi_frame"] = to_string(report.lower_semi_frame);
  j["riesz"] = to_string(report.riesz);
  j["lower_bound"] = report.lower_bound;
  j["upper_bound"] = report.upper_bound;
  j["lower_growth_exponent"] = report.lower_growth_exponent;
  j["upper_growth_exponent"] = report.upper_growth_exponent;
  auto& ev = j["evidence"] = nlohmann::ordered_json::array();
  for (const auto& e : report.evidence) {
    ev.push_back({{"dim", e.dim}, {"size", e.size}, {"lower", e.lower}, {"upper", e.upper}});
  }
  j["notes"] = report.notes;
  return j;
}

}  // namespace semiframe
