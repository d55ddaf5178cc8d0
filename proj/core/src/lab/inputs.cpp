#include "semiframe/lab/inputs.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include "semiframe/errors.hpp"
#include "semiframe/hilbert/families.hpp"

namespace semiframe::lab {
namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string part;
  while (std::getline(in, part, sep)) out.push_back(part);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double to_double(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw InputError("bad number '" + s + "' in " + what);
  return v;
}

unsigned long to_seed(const std::string& s, const std::string& what) {
  const double v = to_double(s, what);
  if (v < 0 || v != static_cast<double>(static_cast<unsigned long>(v))) throw InputError("bad seed in " + what);
  return static_cast<unsigned long>(v);
}

bool ends_with(const std::string& s, const std::string& tail) {
  return s.size() >= tail.size() && s.compare(s.size() - tail.size(), tail.size(), tail) == 0;
}

}  // namespace

hilbert::VectorFamily parse_family(const std::string& spec) {
  const auto p = split(spec, ':');
  const std::string& name = p.empty() ? spec : p[0];
  auto arity = [&](std::size_t lo, std::size_t hi) {
    if (p.size() < lo + 1 || p.size() > hi + 1) throw InputError("wrong number of parameters in family '" + spec + "'");
  };
  if (name == "orthonormal") { arity(0, 0); return hilbert::orthonormal(); }
  if (name == "diana") { arity(0, 0); return hilbert::diana(); }
  if (name == "stoeva") { arity(0, 0); return hilbert::stoeva(); }
  if (name == "interleaved-chi") { arity(0, 0); return hilbert::interleaved_chi(); }
  if (name == "diagonal") {
    arity(1, 2);
    return hilbert::diagonal(to_double(p[1], spec), p.size() > 2 ? to_double(p[2], spec) : 1.0);
  }
  if (name == "random-frame") { arity(1, 1); return hilbert::random_frame(to_seed(p[1], spec)); }
  if (name == "random-lsf") { arity(1, 1); return hilbert::random_lower_semi_frame(to_seed(p[1], spec)); }
  throw InputError("unknown family '" + spec + "'");
}

translates::Profile parse_profile(const std::string& spec) {
  if (!spec.empty() && spec.front() == '{') return profile_from_json(nlohmann::json::parse(spec));
  const auto p = split(spec, ':');
  const std::string& name = p.empty() ? spec : p[0];
  auto arity = [&](std::size_t n) {
    if (p.size() != n + 1) throw InputError("profile '" + name + "' takes " + std::to_string(n) + " parameters");
  };
  if (name == "unit-indicator") { arity(0); return translates::profiles::unit_indicator(); }
  if (name == "sqrt-power") { arity(0); return translates::profiles::sqrt_power(); }
  if (name == "dyadic-plateau") { arity(0); return translates::profiles::dyadic_plateau(); }
  if (name == "band") {
    arity(3);
    return translates::profiles::band(to_double(p[1], spec), to_double(p[2], spec), to_double(p[3], spec));
  }
  if (name == "gaussian") {
    arity(3);
    return translates::profiles::gaussian(to_double(p[1], spec), to_double(p[2], spec), to_double(p[3], spec));
  }
  throw InputError("unknown profile '" + spec + "'");
}

translates::Profile profile_from_json(const nlohmann::json& j) {
  if (j.is_string()) return parse_profile(j.get<std::string>());
  if (!j.is_object() || !j.contains("name")) throw InputError("profile object needs a name");
  const std::string name = j.at("name").get<std::string>();
  auto num = [&](const char* key, double fallback) { return j.contains(key) ? j.at(key).get<double>() : fallback; };
  if (name == "band") return translates::profiles::band(num("c", 1.0), num("lo", 0.0), num("hi", 1.0));
  if (name == "gaussian") return translates::profiles::gaussian(num("center", 0.0), num("width", 1.0), num("shift", 0.0));
  return parse_profile(name);
}

muckenhoupt::Weight load_weight(const std::string& spec) {
  if (!ends_with(spec, ".csv")) return muckenhoupt::Weight::parse(spec);
  std::ifstream in(spec);
  if (!in) throw InputError("cannot read weight file " + spec);
  std::vector<double> cells;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    const std::string& last = fields.size() >= 2 ? fields[1] : fields[0];
    try {
      cells.push_back(to_double(last, spec));
    } catch (const InputError&) {
      if (!first) throw;
    }
    first = false;
  }
  return muckenhoupt::Weight::custom(std::move(cells));
}

translates::TranslateSystem load_translates(const std::string& spec, double a, Index nodes, double omega) {
  if (ends_with(spec, ".csv")) {
    std::ifstream in(spec);
    if (!in) throw InputError("cannot read profile file " + spec);
    return translates::TranslateSystem(hilbert::read_csv(in, hilbert::GridKind::Line), a, spec);
  }
  return translates::TranslateSystem(parse_profile(spec), a, nodes, omega);
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

}  // namespace semiframe::lab
