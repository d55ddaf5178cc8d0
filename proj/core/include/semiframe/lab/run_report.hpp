#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "semiframe/report.hpp"

namespace semiframe::lab {

enum class Outcome { Pass, Fail, Inconclusive };
std::string to_string(Outcome o);

struct Check {
  std::string name;
  Outcome outcome = Outcome::Inconclusive;
  nlohmann::ordered_json measured;
  nlohmann::ordered_json expected;
  std::string detail;
};

// (x, y) columns for plotting.
struct PlotSeries {
  std::string name;
  std::string x_label;
  std::string y_label;
  std::vector<double> x;
  std::vector<double> y;
};

struct RunReport {
  std::string scenario;
  std::string description;
  nlohmann::ordered_json config;
  std::vector<Check> checks;
  std::vector<PlotSeries> series;
  double seconds = 0.0;

  Outcome overall() const;
  // 0 all pass, 1 any fail, 2 inconclusive without failures.
  int exit_code() const;

  void add(Check c) { checks.push_back(std::move(c)); }
  const Check& check(const std::string& name) const;
};

Check check_le(std::string name, double value, double bound, std::string detail = {});
Check check_ge(std::string name, double value, double bound, std::string detail = {});
Check check_near(std::string name, double value, double target, double tolerance, std::string detail = {});
// Relative tolerance |value/target - 1| <= tolerance.
Check check_relative(std::string name, double value, double target, double tolerance, std::string detail = {});
// Inconclusive when got is Inconclusive and something definite was expected.
Check check_verdict(std::string name, Verdict got, Verdict expected, std::string detail = {});
Check check_label(std::string name, const std::string& got, const std::string& expected,
                  const std::string& inconclusive_label = "Inconclusive", std::string detail = {});
Check check_true(std::string name, bool ok, nlohmann::ordered_json measured, std::string expected, std::string detail = {});

enum class Format { Json, Csv, PlotData };
Format parse_format(const std::string& s);

constexpr int kSchemaVersion = 1;

nlohmann::ordered_json to_json(const RunReport& report, bool include_timing = true);
// json: the document; csv: check,outcome,measured,expected,detail; plotdata: series,x,y.
void emit_report(std::ostream& out, const RunReport& report, Format format);
// Writes to path, "-" for stdout. Throws std::runtime_error when the destination is unwritable.
void write_report(const std::string& path, const RunReport& report, Format format);

}  // namespace semiframe::lab
