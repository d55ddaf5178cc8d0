// sflab: command-line front end to the semiframe library.
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "semiframe/errors.hpp"
#include "semiframe/exponentials/exponentials.hpp"
#include "semiframe/hilbert/families.hpp"
#include "semiframe/hilbert/ladder.hpp"
#include "semiframe/lab/inputs.hpp"
#include "semiframe/lab/run_report.hpp"
#include "semiframe/lab/scenarios.hpp"
#include "semiframe/muckenhoupt/a2.hpp"
#include "semiframe/ops/duals.hpp"
#include "semiframe/translates/translates.hpp"

namespace {

using namespace semiframe;
using nlohmann::ordered_json;

constexpr int kUsage = 64;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  Index grid = Index{1} << 14;
  std::string ladder = "256";
  std::optional<double> tol;
  std::string out = "-";
  std::string format = "json";
  unsigned long seed = 42;
};

struct Source {
  std::string family;
  std::string weight;
  std::string profile;
  double b = 1.0;
  double a = 1.0;
  double omega = 1.0;
  std::string config;
};

lab::Format format_of(const Globals& g) {
  try {
    return lab::parse_format(g.format);
  } catch (const InputError& e) {
    throw UsageError(e.what());
  }
}

std::pair<Index, int> ladder_of(const Globals& g) {
  std::stringstream in(g.ladder);
  std::string size, levels;
  std::getline(in, size, ',');
  std::getline(in, levels, ',');
  try {
    const long n = std::stol(size);
    const int l = levels.empty() ? 4 : std::stoi(levels);
    if (n < 1 || l < 3) throw std::out_of_range("ladder");
    return {n, l};
  } catch (const std::exception&) {
    throw UsageError("--ladder expects N or N,levels with N >= 1 and levels >= 3");
  }
}

lab::ScenarioConfig config_of(const Globals& g) {
  lab::ScenarioConfig c;
  c.grid = g.grid;
  std::tie(c.ladder_size, c.ladder_levels) = ladder_of(g);
  c.tol = g.tol;
  c.seed = g.seed;
  return c;
}

// Output stream for --out; "-" is stdout.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (path != "-" && !path.empty()) {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot write " + path);
    }
  }
  std::ostream& get() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

void flatten(std::ostream& out, const ordered_json& j, const std::string& prefix) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(out, it.value(), prefix.empty() ? it.key() : prefix + "." + it.key());
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(out, j[i], prefix + "[" + std::to_string(i) + "]");
  } else {
    out << prefix << ',' << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
  }
}

// json, or key,value rows for csv.
void emit_document(const Globals& g, const ordered_json& doc) {
  const lab::Format f = format_of(g);
  Sink sink(g.out);
  if (f == lab::Format::Json) {
    sink.get() << doc.dump(2) << '\n';
  } else if (f == lab::Format::Csv) {
    sink.get() << "key,value\n";
    flatten(sink.get(), doc, "");
  } else {
    throw UsageError("this command has no plot data; use --format json or csv");
  }
}

void emit_grid(const Globals& g, const hilbert::GridFunction& f, const ordered_json& summary, const std::string& name) {
  const lab::Format fmt = format_of(g);
  Sink sink(g.out);
  if (fmt == lab::Format::Json) {
    ordered_json doc = summary;
    ordered_json samples = ordered_json::array();
    for (Index j = 0; j < f.size(); ++j) samples.push_back({f.node(j), f[j].real(), f[j].imag()});
    doc["samples"] = std::move(samples);
    sink.get() << doc.dump(2) << '\n';
  } else if (fmt == lab::Format::Csv) {
    hilbert::write_csv(sink.get(), f);
  } else {
    sink.get() << "series,x,y\n" << std::setprecision(17);
    for (Index j = 0; j < f.size(); ++j) sink.get() << name << ',' << f.node(j) << ',' << f[j].real() << '\n';
  }
}

int count_sources(const Source& s) {
  return !s.family.empty() + !s.weight.empty() + !s.profile.empty() + !s.config.empty();
}

// A --config JSON file fills weight/profile and their parameters.
Source resolve(Source s) {
  if (count_sources(s) != 1) throw UsageError("give exactly one of --family, --weight, --profile, --config");
  if (s.config.empty()) return s;
  const nlohmann::json j = lab::read_json_file(s.config);
  if (j.contains("weight")) {
    s.weight = j.at("weight").get<std::string>();
    s.b = j.value("b", s.b);
  } else if (j.contains("profile")) {
    s.profile = j.at("profile").is_string() ? j.at("profile").get<std::string>() : j.at("profile").dump();
    s.a = j.value("a", s.a);
    s.omega = j.value("omega", s.omega);
  } else if (j.contains("family")) {
    s.family = j.at("family").get<std::string>();
  } else {
    throw InputError(s.config + ": expected a family, weight or profile entry");
  }
  return s;
}

Index grid_from_config(const Source& s, const Globals& g) {
  if (s.config.empty()) return g.grid;
  const nlohmann::json j = lab::read_json_file(s.config);
  return j.value("nodes", static_cast<long>(g.grid));
}

hilbert::Level first_level(const hilbert::VectorFamily& fam, const Globals& g) {
  const auto [n, levels] = ladder_of(g);
  return hilbert::TruncationLadder::tight(fam, n, levels).front();
}

int verdict_exit(const ClassificationReport& r) {
  return r.bessel == Verdict::Inconclusive || r.lower_semi_frame == Verdict::Inconclusive ? 2 : 0;
}

int cmd_classify(const Globals& g, Source s) {
  s = resolve(s);
  const Index grid = grid_from_config(s, g);
  ClassificationReport r;
  if (!s.family.empty()) {
    const auto fam = lab::parse_family(s.family);
    const auto [n, levels] = ladder_of(g);
    r = ops::classify_family(fam, ops::analytic_projector_rule(fam), hilbert::TruncationLadder::tight(fam, n, levels));
  } else if (!s.weight.empty()) {
    r = exponentials::classify_exponentials(
        exponentials::ExponentialSystem::from_weight(lab::load_weight(s.weight), s.b, grid));
  } else {
    r = translates::classify_translates(lab::load_translates(s.profile, s.a, grid, s.omega));
  }
  emit_document(g, to_json(r));
  return verdict_exit(r);
}

int cmd_dual(const Globals& g, Source s) {
  s = resolve(s);
  const Index grid = grid_from_config(s, g);
  if (!s.family.empty()) {
    const auto fam = lab::parse_family(s.family);
    const hilbert::Level l = first_level(fam, g);
    const ops::DualFamily d = ops::canonical_dual(fam, ops::analytic_projector(fam, l.dim), l);
    const lab::Format fmt = format_of(g);
    if (fmt == lab::Format::PlotData) throw UsageError("dual of a family has no plot data");
    if (fmt == lab::Format::Json) {
      emit_document(g, ops::to_json(d, true));
    } else {
      Sink sink(g.out);
      sink.get() << "member,coordinate,re,im\n" << std::setprecision(17);
      for (std::size_t i = 0; i < d.vectors.size(); ++i) {
        const auto& v = d.vectors[i].entries();
        for (Index k = 0; k < v.size(); ++k) {
          if (v(k) != cplx(0.0)) sink.get() << fam.label(static_cast<Index>(i)) << ',' << k + 1 << ',' << v(k).real() << ',' << v(k).imag() << '\n';
        }
      }
    }
    return 0;
  }
  if (!s.weight.empty()) {
    const auto sys = exponentials::ExponentialSystem::from_weight(lab::load_weight(s.weight), s.b, grid);
    const auto d = exponentials::canonical_dual_exponentials(sys);
    emit_grid(g, d.g(), {{"dual_of", sys.descriptor()}, {"b", sys.b()}}, "dual_weight");
    return 0;
  }
  const auto sys = lab::load_translates(s.profile, s.a, grid, s.omega);
  const auto p = translates::pphi(sys);
  const auto d = translates::canonical_dual_translates(sys, p);
  emit_grid(g, d.phi_hat(), {{"dual_of", sys.descriptor()}, {"tau", p.tau}}, "psi_hat");
  return 0;
}

int cmd_reconstruct(const Globals& g, Source s, const std::string& probe) {
  s = resolve(s);
  const Index grid = grid_from_config(s, g);
  ordered_json doc;
  doc["probe"] = probe;
  if (!s.family.empty()) {
    const auto fam = lab::parse_family(s.family);
    const hilbert::Level l = first_level(fam, g);
    const ops::Projector p = ops::analytic_projector(fam, l.dim);
    const ops::DualFamily d = ops::canonical_dual(fam, p, l);
    Eigen::VectorXcd f;
    if (probe.size() > 1 && probe[0] == 'e') {
      const long k = std::stol(probe.substr(1));
      if (k < 1 || k > l.dim) throw UsageError("probe index outside 1..d");
      f = Eigen::VectorXcd::Unit(l.dim, k - 1);
    } else if (probe == "random") {
      f = ops::probe_set(l.dim, g.seed, 1, false).front();
    } else {
      throw UsageError("--probe expects e<k> or random");
    }
    const ops::Reconstruction r = ops::reconstruct(f, fam, d, p);
    doc["family"] = fam.descriptor();
    doc["level"] = {{"dim", l.dim}, {"size", l.size}};
    doc["error_vs_input"] = r.error_vs_input;
    doc["error_vs_projection"] = r.error_vs_projection;
    doc["outside_fraction"] = r.outside_fraction;
  } else if (!s.weight.empty()) {
    if (probe != "random") throw UsageError("weighted exponentials take --probe random");
    const auto sys = exponentials::ExponentialSystem::from_weight(lab::load_weight(s.weight), s.b, grid);
    const auto c = hilbert::seeded_gaussians(g.seed, 900, 4);
    const auto f = sys.sample([&](double x) { return cplx(c[0] + c[1] * x, c[2] + c[3] * std::cos(2 * kPi * x)); });
    const auto r = exponentials::reconstruct_exponentials(f, sys, exponentials::canonical_dual_exponentials(sys));
    doc["system"] = sys.descriptor();
    doc["relative_error"] = r.relative_error;
  } else {
    if (probe != "random") throw UsageError("translates take --probe random (a random element of the span)");
    const auto sys = lab::load_translates(s.profile, s.a, grid, s.omega);
    const auto dual = translates::canonical_dual_translates(sys, translates::pphi(sys));
    const auto c = hilbert::seeded_gaussians(g.seed, 400, 34);
    translates::TranslateCoefficients coeffs{-8, Eigen::VectorXcd(17), 0.0};
    for (Index n = 0; n < 17; ++n) coeffs.values(n) = cplx(c[2 * n], c[2 * n + 1]);
    const auto r = translates::reconstruct_translates(translates::adjoint_translates(coeffs, sys), sys, dual);
    doc["system"] = sys.descriptor();
    doc["relative_error"] = r.relative_error;
  }
  emit_document(g, doc);
  return 0;
}

int cmd_pphi(const Globals& g, Source s, long K) {
  if (s.profile.empty() && s.config.empty()) throw UsageError("pphi needs --profile or --config");
  s = resolve(s);
  const auto sys = lab::load_translates(s.profile, s.a, grid_from_config(s, g), s.omega);
  translates::PphiOptions o;
  o.K = K;
  const auto p = translates::pphi(sys, o);
  ordered_json summary{{"system", sys.descriptor()},     {"K", p.K},
                       {"source", p.source},             {"stabilized", p.stabilized},
                       {"change", p.change},             {"ess_inf_est", p.ess_inf_est},
                       {"ess_sup_est", p.ess_sup_est},   {"min_on_z", p.min_on_z},
                       {"max", p.max_value},             {"tau", p.tau}};
  emit_grid(g, p.samples, summary, "p_phi");
  return p.stabilized ? 0 : 2;
}

int cmd_a2test(const Globals& g, const std::string& weight, int depth) {
  muckenhoupt::A2Options o;
  o.depth = depth;
  const auto r = muckenhoupt::a2_estimate(lab::load_weight(weight), o);
  emit_document(g, muckenhoupt::to_json(r));
  return r.verdict == muckenhoupt::A2Verdict::Inconclusive ? 2 : 0;
}

int cmd_scenario(const Globals& g, const std::string& name) {
  if (!lab::find_scenario(name)) throw UsageError("unknown scenario '" + name + "' (see sflab list)");
  const lab::Format fmt = format_of(g);
  const lab::RunReport r = lab::run_scenario(name, config_of(g));
  lab::write_report(g.out, r, fmt);
  for (const lab::Check& c : r.checks) {
    if (c.outcome != lab::Outcome::Pass) std::cerr << name << ": " << c.name << " " << lab::to_string(c.outcome) << '\n';
  }
  return r.exit_code();
}

int cmd_list() {
  for (const lab::Scenario& s : lab::registry()) std::cout << s.name << "\t" << s.description << '\n';
  return 0;
}

const char* kFooter = R"(CSV columns:
  pphi, dual of a grid system      node,re,im (one row per grid node)
  dual of a family                 member,coordinate,re,im (nonzero entries)
  scenario                         check,outcome,measured,expected,detail
  classify, reconstruct, a2test    key,value (flattened JSON)
  --format plotdata                series,x,y

Exit codes: 0 all pass, 1 a check failed or a dual was refused, 2 inconclusive only, 64 usage error.)";

void add_source(CLI::App* cmd, Source& s, bool family) {
  if (family) cmd->add_option("--family", s.family, "orthonormal, diana, stoeva, interleaved-chi, diagonal:p[:c], random-frame:seed, random-lsf:seed");
  cmd->add_option("--weight", s.weight, "weighted exponentials E(g,b): constant:c, power:alpha, plateau:k_max, or cells.csv");
  cmd->add_option("--b", s.b, "modulation parameter b");
  cmd->add_option("--profile", s.profile, "translates: unit-indicator, band:c:lo:hi, sqrt-power, dyadic-plateau, gaussian:c:w:s, or samples.csv");
  cmd->add_option("--a", s.a, "shift parameter a");
  cmd->add_option("--omega", s.omega, "half-width of the Fourier grid");
  cmd->add_option("--config", s.config, "JSON file with a family, weight or profile entry");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sflab: frames, lower semi-frames, translates and weighted exponentials", "sflab"};
  app.footer(kFooter);
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--grid", g.grid, "grid nodes M")->check(CLI::PositiveNumber);
  app.add_option("--ladder", g.ladder, "ladder: first N and optional level count, e.g. 256,4");
  app.add_option("--tol", g.tol, "tolerance for checks without a pinned one");
  app.add_option("--out", g.out, "output path, - for stdout");
  app.add_option("--format", g.format, "json, csv or plotdata")->check(CLI::IsMember({"json", "csv", "plotdata"}));
  app.add_option("--seed", g.seed, "random seed");

  Source s;
  std::string probe = "random", weight, scenario;
  long K = 0;
  int depth = 14;

  auto* classify = app.add_subcommand("classify", "Bessel / frame / lower semi-frame verdicts");
  add_source(classify, s, true);
  auto* dual = app.add_subcommand("dual", "canonical dual");
  add_source(dual, s, true);
  auto* reconstruct = app.add_subcommand("reconstruct", "reconstruction through the canonical dual");
  add_source(reconstruct, s, true);
  reconstruct->add_option("--probe", probe, "e<k> or random");
  auto* pphi = app.add_subcommand("pphi", "periodized power p_phi of a translate generator");
  add_source(pphi, s, false);
  pphi->add_option("--K", K, "aliasing terms (0: default)");
  auto* a2 = app.add_subcommand("a2test", "A2 estimate of a weight on (0,1)");
  a2->add_option("--weight", weight, "constant:c, power:alpha, plateau:k_max, or cells.csv")->required();
  a2->add_option("--depth", depth, "dyadic depth")->check(CLI::Range(1, 40));
  auto* scen = app.add_subcommand("scenario", "run a registered scenario");
  scen->add_option("name", scenario, "scenario name")->required();
  auto* list = app.add_subcommand("list", "list scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "sflab: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*classify) return cmd_classify(g, s);
    if (*dual) return cmd_dual(g, s);
    if (*reconstruct) return cmd_reconstruct(g, s, probe);
    if (*pphi) return cmd_pphi(g, s, K);
    if (*a2) return cmd_a2test(g, weight, depth);
    if (*scen) return cmd_scenario(g, scenario);
    if (*list) return cmd_list();
  } catch (const UsageError& e) {
    std::cerr << "sflab: " << e.what() << '\n';
    return kUsage;
  } catch (const InputError& e) {
    std::cerr << "sflab: " << e.what() << '\n';
    return kUsage;
  } catch (const RefusedError& e) {
    std::cerr << "sflab: refused: " << e.what() << " (evidence " << e.evidence() << ")\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "sflab: " << e.what() << '\n';
    return 1;
  }
  return kUsage;
}
