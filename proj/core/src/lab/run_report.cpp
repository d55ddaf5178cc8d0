#include "semiframe/lab/run_report.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "semiframe/errors.hpp"

namespace semiframe::lab {
namespace {

// JSON cannot hold inf/nan; they are written as strings.
nlohmann::ordered_json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string compact(const nlohmann::ordered_json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

}  // namespace

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::Pass: return "pass";
    case Outcome::Fail: return "fail";
    case Outcome::Inconclusive: return "inconclusive";
  }
  return "?";
}

Outcome RunReport::overall() const {
  bool inconclusive = false;
  for (const Check& c : checks) {
    if (c.outcome == Outcome::Fail) return Outcome::Fail;
    inconclusive = inconclusive || c.outcome == Outcome::Inconclusive;
  }
  return inconclusive ? Outcome::Inconclusive : Outcome::Pass;
}

int RunReport::exit_code() const {
  switch (overall()) {
    case Outcome::Pass: return 0;
    case Outcome::Fail: return 1;
    case Outcome::Inconclusive: return 2;
  }
  return 1;
}

const Check& RunReport::check(const std::string& name) const {
  for (const Check& c : checks) {
    if (c.name == name) return c;
  }
  throw InputError("no check named " + name);
}

Check check_le(std::string name, double value, double bound, std::string detail) {
  Check c{std::move(name), Outcome::Fail, number(value), "<= " + nlohmann::json(bound).dump(), std::move(detail)};
  if (std::isnan(value)) c.outcome = Outcome::Inconclusive;
  else if (value <= bound) c.outcome = Outcome::Pass;
  return c;
}

Check check_ge(std::string name, double value, double bound, std::string detail) {
  Check c{std::move(name), Outcome::Fail, number(value), ">= " + nlohmann::json(bound).dump(), std::move(detail)};
  if (std::isnan(value)) c.outcome = Outcome::Inconclusive;
  else if (value >= bound) c.outcome = Outcome::Pass;
  return c;
}

Check check_near(std::string name, double value, double target, double tolerance, std::string detail) {
  Check c{std::move(name), Outcome::Fail, number(value),
          nlohmann::json(target).dump() + " +- " + nlohmann::json(tolerance).dump(), std::move(detail)};
  if (std::isnan(value)) c.outcome = Outcome::Inconclusive;
  else if (std::abs(value - target) <= tolerance) c.outcome = Outcome::Pass;
  return c;
}

Check check_relative(std::string name, double value, double target, double tolerance, std::string detail) {
  std::ostringstream e;
  e << nlohmann::json(target).dump() << " within " << tolerance * 100.0 << "%";
  Check c{std::move(name), Outcome::Fail, number(value), e.str(), std::move(detail)};
  if (std::isnan(value)) c.outcome = Outcome::Inconclusive;
  else if (std::abs(value / target - 1.0) <= tolerance) c.outcome = Outcome::Pass;
  return c;
}

Check check_verdict(std::string name, Verdict got, Verdict expected, std::string detail) {
  return check_label(std::move(name), to_string(got), to_string(expected), to_string(Verdict::Inconclusive),
                     std::move(detail));
}

Check check_label(std::string name, const std::string& got, const std::string& expected,
                  const std::string& inconclusive_label, std::string detail) {
  Check c{std::move(name), Outcome::Fail, got, expected, std::move(detail)};
  if (got == expected) c.outcome = Outcome::Pass;
  else if (got == inconclusive_label) c.outcome = Outcome::Inconclusive;
  return c;
}

Check check_true(std::string name, bool ok, nlohmann::ordered_json measured, std::string expected, std::string detail) {
  return Check{std::move(name), ok ? Outcome::Pass : Outcome::Fail, std::move(measured), std::move(expected),
               std::move(detail)};
}

Format parse_format(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  if (s == "plotdata") return Format::PlotData;
  throw InputError("unknown format '" + s + "' (json, csv, plotdata)");
}

nlohmann::ordered_json to_json(const RunReport& report, bool include_timing) {
  nlohmann::ordered_json j;
  j["schema"] = kSchemaVersion;
  j["scenario"] = report.scenario;
  j["description"] = report.description;
  j["config"] = report.config;
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  int pass = 0, fail = 0, inconclusive = 0;
  for (const Check& c : report.checks) {
    nlohmann::ordered_json cj;
    cj["name"] = c.name;
    cj["outcome"] = to_string(c.outcome);
    cj["measured"] = c.measured;
    cj["expected"] = c.expected;
    if (!c.detail.empty()) cj["detail"] = c.detail;
    checks.push_back(std::move(cj));
    (c.outcome == Outcome::Pass ? pass : c.outcome == Outcome::Fail ? fail : inconclusive)++;
  }
  j["checks"] = std::move(checks);
  j["summary"] = {{"outcome", to_string(report.overall())},
                  {"pass", pass},
                  {"fail", fail},
                  {"inconclusive", inconclusive}};
  nlohmann::ordered_json series = nlohmann::ordered_json::array();
  for (const PlotSeries& s : report.series) {
    series.push_back({{"name", s.name}, {"x_label", s.x_label}, {"y_label", s.y_label}, {"points", s.x.size()}});
  }
  j["series"] = std::move(series);
  if (include_timing) j["timing"] = {{"seconds", report.seconds}};
  return j;
}

void emit_report(std::ostream& out, const RunReport& report, Format format) {
  switch (format) {
    case Format::Json:
      out << to_json(report).dump(2) << '\n';
      break;
    case Format::Csv:
      out << "check,outcome,measured,expected,detail\n";
      for (const Check& c : report.checks) {
        out << csv_field(c.name) << ',' << to_string(c.outcome) << ',' << csv_field(compact(c.measured)) << ','
            << csv_field(compact(c.expected)) << ',' << csv_field(c.detail) << '\n';
      }
      break;
    case Format::PlotData:
      out << "series,x,y\n" << std::setprecision(17);
      for (const PlotSeries& s : report.series) {
        for (std::size_t i = 0; i < s.x.size(); ++i) out << csv_field(s.name) << ',' << s.x[i] << ',' << s.y[i] << '\n';
      }
      break;
  }
}

void write_report(const std::string& path, const RunReport& report, Format format) {
  if (path.empty() || path == "-") {
    emit_report(std::cout, report, format);
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  emit_report(out, report, format);
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace semiframe::lab
