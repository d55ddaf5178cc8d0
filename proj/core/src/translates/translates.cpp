#include "semiframe/translates/translates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "semiframe/errors.hpp"
#include "semiframe/hilbert/ladder.hpp"

namespace semiframe::translates {
namespace {

using hilbert::GridKind;

Index wrap(Index m, Index M) {
  const Index r = m % M;
  return r < 0 ? r + M : r;
}

// Sums over |n| <= K and |n| <= 2K of term(j, n) for each of the M nodes.
template <class Term>
std::pair<std::vector<cplx>, std::vector<cplx>> alias_sums(Index M, Index K, Term&& term) {
  std::vector<cplx> narrow(static_cast<std::size_t>(M)), wide(static_cast<std::size_t>(M));
  std::vector<cplx> terms(static_cast<std::size_t>(4 * K + 1));
  for (Index j = 0; j < M; ++j) {
    for (Index n = -2 * K; n <= 2 * K; ++n) terms[static_cast<std::size_t>(n + 2 * K)] = term(j, n);
    const std::span<const cplx> all(terms);
    narrow[static_cast<std::size_t>(j)] = pairwise_sum(all.subspan(static_cast<std::size_t>(K),
                                                                   static_cast<std::size_t>(2 * K + 1)));
    wide[static_cast<std::size_t>(j)] = pairwise_sum(all);
  }
  return {std::move(narrow), std::move(wide)};
}

double max_change(const std::vector<cplx>& a, const std::vector<cplx>& b, double* scale) {
  double change = 0.0, s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    change = std::max(change, std::abs(a[j] - b[j]));
    s = std::max(s, std::abs(b[j]));
  }
  *scale = s;
  return change;
}

bool settled(double change, double scale) { return change <= 1e-10 * (1.0 + scale); }

std::vector<cplx> unit_roots(Index M, double sign) {
  std::vector<cplx> r(static_cast<std::size_t>(M));
  for (Index k = 0; k < M; ++k) {
    r[static_cast<std::size_t>(k)] = std::polar(1.0, sign * 2.0 * kPi * static_cast<double>(k) / static_cast<double>(M));
  }
  return r;
}

// e^{sign * i pi n / M} with n reduced mod 2M.
cplx half_phase(long n, Index M, double sign) {
  const Index r = wrap(static_cast<Index>(n), 2 * M);
  return std::polar(1.0, sign * kPi * static_cast<double>(r) / static_cast<double>(M));
}

// e^{sign * 2 pi i n (j + 1/2) / M}
cplx node_phase(const std::vector<cplx>& roots, long n, Index j, Index M, double sign) {
  const Index k = (wrap(static_cast<Index>(n), M) * j) % M;
  return roots[static_cast<std::size_t>(k)] * half_phase(n, M, sign);
}

void require_shared_grid(const GridFunction& f_hat, const TranslateSystem& system) {
  if (!f_hat.same_grid(system.phi_hat())) throw InputError("function and generator are on different grids");
}

}  // namespace

namespace profiles {

Profile unit_indicator() {
  Profile p;
  p.name = "unit-indicator";
  p.parameters = nlohmann::ordered_json::object();
  p.value = [](double g) -> cplx {
    if (g == 0.0) return 1.0;
    return std::polar(std::sin(kPi * g) / (kPi * g), -kPi * g);
  };
  return p;
}

Profile band(double c, double lo, double hi) {
  if (!(hi > lo)) throw InputError("band: need lo < hi");
  Profile p;
  p.name = "band";
  p.parameters = {{"c", c}, {"lo", lo}, {"hi", hi}};
  p.value = [=](double g) -> cplx { return g >= lo && g < hi ? cplx(c) : cplx(0.0); };
  p.support_radius = std::max(std::abs(lo), std::abs(hi));
  return p;
}

Profile sqrt_power() {
  Profile p;
  p.name = "sqrt-power";
  p.parameters = nlohmann::ordered_json::object();
  p.value = [](double g) -> cplx { return g > 0.0 && g < 1.0 ? cplx(std::pow(g, 0.25)) : cplx(0.0); };
  p.support_radius = 1.0;
  return p;
}

Profile dyadic_plateau() {
  Profile p;
  p.name = "dyadic-plateau";
  p.parameters = nlohmann::ordered_json::object();
  p.value = [](double g) -> cplx {
    if (!(g > 0.0 && g < 1.0)) return 0.0;
    int e = 0;
    std::frexp(g, &e);  // g in [2^(e-1), 2^e)
    const int k = 1 - e;
    return std::sqrt(1.0 + std::exp2(0.5 * k));
  };
  p.support_radius = 1.0;
  return p;
}

Profile gaussian(double center, double width, double shift) {
  if (!(width > 0.0)) throw InputError("gaussian: width must be positive");
  Profile p;
  p.name = "gaussian";
  p.parameters = {{"center", center}, {"width", width}, {"shift", shift}};
  p.value = [=](double g) -> cplx {
    const double u = (g - center) / width;
    return std::polar(std::exp(-kPi * u * u), -2.0 * kPi * g * shift);
  };
  return p;
}

}  // namespace profiles

TranslateSystem::TranslateSystem(Profile profile, double a, Index nodes, double omega)
    : a_(a), nodes_(nodes), name_(profile.name), profile_(std::move(profile)) {
  if (!(a > 0.0)) throw InputError("shift parameter a must be positive");
  if (nodes < 2) throw InputError("need at least 2 nodes on [0, 1)");
  if (!(omega > 0.0)) throw InputError("omega must be positive");
  phi_hat_ = GridFunction::sample_line(omega, 1.0 / (a * static_cast<double>(nodes)), profile_->value);
}

TranslateSystem::TranslateSystem(GridFunction phi_hat, double a, std::string name)
    : phi_hat_(std::move(phi_hat)), a_(a), name_(std::move(name)) {
  if (phi_hat_.kind() != GridKind::Line) throw InputError("translate generator must live on a line grid");
  if (!(a > 0.0)) throw InputError("shift parameter a must be positive");
  const double m = 1.0 / (a * phi_hat_.step());
  nodes_ = static_cast<Index>(std::llround(m));
  if (nodes_ < 2 || std::abs(m - static_cast<double>(nodes_)) > 1e-9 * m) {
    throw InputError("grid step does not divide 1/a");
  }
  if (!std::isfinite(phi_hat_.squared_norm())) throw InputError("generator is not square integrable on the grid");
}

Index TranslateSystem::grid_periods() const {
  const Index lo = phi_hat_.offset();
  const Index hi = lo + phi_hat_.size();
  return std::max(std::abs(lo), std::abs(hi)) / nodes_ + 1;
}

TranslateSystem TranslateSystem::refined(Index factor) const {
  if (!profile_) throw InputError("refinement needs an analytic profile");
  if (factor < 1) throw InputError("refinement factor must be positive");
  return TranslateSystem(*profile_, a_, nodes_ * factor, omega());
}

GridFunction TranslateSystem::sample(const std::function<cplx(double)>& f) const {
  std::vector<cplx> s(static_cast<std::size_t>(phi_hat_.size()));
  for (Index j = 0; j < phi_hat_.size(); ++j) s[static_cast<std::size_t>(j)] = f(phi_hat_.node(j));
  return phi_hat_.with_samples(std::move(s));
}

nlohmann::ordered_json TranslateSystem::descriptor() const {
  nlohmann::ordered_json j;
  j["name"] = name_;
  if (profile_) j["parameters"] = profile_->parameters;
  j["a"] = a_;
  j["nodes"] = nodes_;
  j["omega"] = omega();
  j["step"] = step();
  return j;
}

BracketValues bracket(const GridFunction& f_hat, const TranslateSystem& system, Index K) {
  require_shared_grid(f_hat, system);
  const Index M = system.nodes();
  const bool whole = K <= 0;
  if (whole) K = system.grid_periods();
  const GridFunction& phi = system.phi_hat();
  const double inv_a = 1.0 / system.a();
  auto [narrow, wide] = alias_sums(M, K, [&](Index j, Index n) {
    const Index m = j + n * M;
    return f_hat.at_origin_index(m) * std::conj(phi.at_origin_index(m)) * inv_a;
  });
  BracketValues b;
  double scale = 0.0;
  const double change = max_change(narrow, wide, &scale);
  b.K = K;
  b.stabilized = whole || settled(change, scale);
  b.samples = GridFunction::periodic(1.0, std::move(narrow));
  std::vector<double> mags(b.samples.samples().size());
  for (std::size_t j = 0; j < mags.size(); ++j) mags[j] = std::abs(b.samples.samples()[j]);
  b.l1 = pairwise_sum(mags) * b.samples.step();
  b.l2 = std::sqrt(b.samples.squared_norm());
  return b;
}

PeriodizedPower pphi(const TranslateSystem& system, const PphiOptions& options) {
  const Index M = system.nodes();
  const bool use_profile = options.source == PphiSource::Profile ||
                           (options.source == PphiSource::Auto && system.profile().has_value());
  PeriodizedPower p;
  std::vector<cplx> values;
  if (use_profile) {
    if (!system.profile()) throw InputError("pphi: system has no analytic profile");
    const auto& f = system.profile()->value;
    const double a = system.a();
    Index K = options.K;
    if (K <= 0) K = static_cast<Index>(std::ceil(system.omega() * a)) + 2;
    auto [narrow, wide] = alias_sums(M, K, [&](Index j, Index n) {
      const double g = ((static_cast<double>(j) + 0.5) / static_cast<double>(M) + static_cast<double>(n)) / a;
      return cplx(std::norm(f(g)) / a);
    });
    double scale = 0.0;
    p.change = max_change(narrow, wide, &scale);
    p.stabilized = settled(p.change, scale);
    p.K = K;
    p.source = "profile";
    values = std::move(narrow);
  } else {
    BracketValues b = bracket(system.phi_hat(), system, options.K);
    p.K = b.K;
    p.stabilized = b.stabilized;
    p.source = "grid";
    values = b.samples.samples();
  }
  std::vector<cplx> real(values.size());
  std::vector<double> all(values.size());
  for (std::size_t j = 0; j < values.size(); ++j) {
    all[j] = std::max(0.0, values[j].real());
    real[j] = all[j];
  }
  p.samples = GridFunction::periodic(1.0, std::move(real));
  p.max_value = *std::max_element(all.begin(), all.end());
  p.ess_sup_est = quantile(all, options.high_quantile);
  p.tau = options.tau_relative * p.ess_sup_est;
  p.z_mask.resize(all.size());
  std::vector<double> on_z;
  for (std::size_t j = 0; j < all.size(); ++j) {
    p.z_mask[j] = all[j] > p.tau;
    if (p.z_mask[j]) on_z.push_back(all[j]);
  }
  if (!on_z.empty()) {
    p.min_on_z = *std::min_element(on_z.begin(), on_z.end());
    p.ess_inf_est = std::min(quantile(on_z, options.low_quantile), p.ess_sup_est);
  }
  return p;
}

TranslateCoefficients analysis_translates(const GridFunction& f_hat, const TranslateSystem& system) {
  const long M = static_cast<long>(system.nodes());
  return analysis_translates(f_hat, system, -M / 2, M - M / 2 - 1);
}

TranslateCoefficients analysis_translates(const GridFunction& f_hat, const TranslateSystem& system, long lo,
                                          long hi) {
  if (hi < lo) throw InputError("analysis_translates: empty coefficient window");
  const BracketValues b = bracket(f_hat, system);
  const Index M = system.nodes();
  const std::vector<cplx> roots = unit_roots(M, 1.0);
  TranslateCoefficients c;
  c.first = lo;
  c.values.resize(hi - lo + 1);
  c.bracket_l2 = b.l2;
  std::vector<cplx> terms(static_cast<std::size_t>(M));
  for (long n = lo; n <= hi; ++n) {
    for (Index j = 0; j < M; ++j) terms[static_cast<std::size_t>(j)] = b.samples[j] * node_phase(roots, n, j, M, 1.0);
    c.values(n - lo) = pairwise_sum(std::span<const cplx>(terms)) / static_cast<double>(M);
  }
  return c;
}

GridFunction adjoint_translates(const TranslateCoefficients& coeffs, const TranslateSystem& system) {
  const Index M = system.nodes();
  const std::vector<cplx> roots = unit_roots(M, -1.0);
  std::vector<cplx> trig(static_cast<std::size_t>(M));
  std::vector<cplx> terms(static_cast<std::size_t>(coeffs.values.size()));
  for (Index j = 0; j < M; ++j) {
    for (Index i = 0; i < coeffs.values.size(); ++i) {
      terms[static_cast<std::size_t>(i)] = coeffs.values(i) * node_phase(roots, coeffs.first + static_cast<long>(i), j, M, -1.0);
    }
    trig[static_cast<std::size_t>(j)] = pairwise_sum(std::span<const cplx>(terms));
  }
  const GridFunction& phi = system.phi_hat();
  std::vector<cplx> out(static_cast<std::size_t>(phi.size()));
  for (Index k = 0; k < phi.size(); ++k) {
    out[static_cast<std::size_t>(k)] = trig[static_cast<std::size_t>(wrap(phi.offset() + k, M))] * phi[k];
  }
  return phi.with_samples(std::move(out));
}

WalnutResult walnut_apply(const GridFunction& f_hat, const TranslateSystem& system, Index K) {
  require_shared_grid(f_hat, system);
  const GridFunction& phi = system.phi_hat();
  const Index M = system.nodes();
  const Index L = phi.size();
  WalnutResult r;
  std::vector<cplx> out(static_cast<std::size_t>(L));
  if (K <= 0) {
    // Every grid alias of a node lies in one residue class, so the full shift sum is the bracket.
    const BracketValues b = bracket(f_hat, system);
    for (Index k = 0; k < L; ++k) {
      out[static_cast<std::size_t>(k)] = phi[k] * b.samples[wrap(phi.offset() + k, M)];
    }
  } else {
    std::vector<cplx> wide(static_cast<std::size_t>(L));
    std::vector<cplx> terms(static_cast<std::size_t>(4 * K + 1));
    const double inv_a = 1.0 / system.a();
    for (Index k = 0; k < L; ++k) {
      const Index m = phi.offset() + k;
      for (Index n = -2 * K; n <= 2 * K; ++n) {
        const Index s = m - n * M;
        terms[static_cast<std::size_t>(n + 2 * K)] = f_hat.at_origin_index(s) * std::conj(phi.at_origin_index(s));
      }
      const std::span<const cplx> all(terms);
      const cplx narrow = pairwise_sum(all.subspan(static_cast<std::size_t>(K), static_cast<std::size_t>(2 * K + 1)));
      out[static_cast<std::size_t>(k)] = phi[k] * narrow * inv_a;
      wide[static_cast<std::size_t>(k)] = phi[k] * pairwise_sum(all) * inv_a;
    }
    double scale = 0.0;
    r.stabilized = settled(max_change(out, wide, &scale), scale);
  }
  r.output = phi.with_samples(std::move(out));
  r.output_squared_norm = r.output.squared_norm();
  return r;
}

ClassificationReport classify_translates(const TranslateSystem& system, const TranslateClassifyOptions& options) {
  ClassificationReport rep;
  rep.subject = system.name();
  rep.scope = "closed span";
  rep.notes.push_back("integer translates are never complete in L2(R); verdicts refer to the closed span");

  const int levels = system.profile() ? std::max(1, options.levels) : 1;
  std::vector<double> scales, sups, inv_mins;
  bool stable = true, full_z = true;
  PeriodizedPower last;
  for (int i = 0; i < levels; ++i) {
    const TranslateSystem s = i == 0 ? system : system.refined(Index{1} << i);
    PphiOptions po;
    po.tau_relative = options.tau_relative;
    last = pphi(s, po);
    stable = stable && last.stabilized;
    full_z = full_z && std::all_of(last.z_mask.begin(), last.z_mask.end(), [](bool b) { return b; });
    scales.push_back(static_cast<double>(s.nodes()));
    sups.push_back(last.max_value);
    inv_mins.push_back(last.min_on_z > 0.0 ? 1.0 / last.min_on_z : std::numeric_limits<double>::infinity());
    rep.evidence.push_back({static_cast<long>(s.nodes()), static_cast<long>(last.K), last.min_on_z, last.max_value});
  }
  rep.lower_bound = last.ess_inf_est;
  rep.upper_bound = last.ess_sup_est;

  if (!stable) {
    rep.notes.push_back("aliasing sum not stabilized between K and 2K");
    return rep;
  }
  if (levels < 3) {
    rep.notes.push_back("no analytic profile: single grid level, verdicts need refinement");
    return rep;
  }
  if (!std::isfinite(inv_mins.back())) {
    rep.notes.push_back("Z is empty on the grid");
    rep.lower_semi_frame = Verdict::No;
    rep.frame = Verdict::No;
    rep.bessel = Verdict::Yes;
    return rep;
  }

  const hilbert::ConvergenceVerdict upper = hilbert::assess_sequence(scales, sups);
  const hilbert::ConvergenceVerdict lower = hilbert::assess_sequence(scales, inv_mins);
  rep.upper_growth_exponent = upper.growth_exponent;
  rep.lower_growth_exponent = lower.growth_exponent;
  if (upper.kind == hilbert::Convergence::Convergent) rep.bessel = Verdict::Yes;
  if (upper.kind == hilbert::Convergence::Divergent) rep.bessel = Verdict::No;
  if (lower.kind == hilbert::Convergence::Convergent) rep.lower_semi_frame = Verdict::Yes;
  if (lower.kind == hilbert::Convergence::Divergent) rep.lower_semi_frame = Verdict::No;

  if (rep.bessel == Verdict::Yes && rep.lower_semi_frame == Verdict::Yes) {
    rep.frame = Verdict::Yes;
    rep.riesz = full_z ? Verdict::Yes : Verdict::No;
  } else if (rep.bessel == Verdict::No || rep.lower_semi_frame == Verdict::No) {
    rep.frame = Verdict::No;
    rep.riesz = Verdict::No;
  }
  if (rep.bessel == Verdict::No) rep.notes.push_back("sup of p_phi grows under refinement");
  if (rep.lower_semi_frame == Verdict::No) rep.notes.push_back("inf of p_phi on Z decays under refinement");
  return rep;
}

TranslateSystem canonical_dual_translates(const TranslateSystem& system, const PeriodizedPower& p) {
  const Index M = system.nodes();
  if (p.samples.size() != M) throw InputError("p_phi was computed on a different grid");
  bool any = false;
  for (Index j = 0; j < M; ++j) {
    const double v = p.samples[j].real();
    if (p.z_mask[static_cast<std::size_t>(j)]) {
      if (!(v > p.tau)) throw RefusedError("p_phi is below tau on Z (inconsistent mask)", v);
      any = true;
    }
  }
  if (!any) throw RefusedError("Z is empty; no dual", 0.0);
  const GridFunction& phi = system.phi_hat();
  std::vector<cplx> out(static_cast<std::size_t>(phi.size()));
  for (Index k = 0; k < phi.size(); ++k) {
    const Index j = wrap(phi.offset() + k, M);
    out[static_cast<std::size_t>(k)] =
        p.z_mask[static_cast<std::size_t>(j)] ? phi[k] / p.samples[j].real() : cplx(0.0);
  }
  return TranslateSystem(phi.with_samples(std::move(out)), system.a(), "dual of " + system.name());
}

TranslateReconstruction reconstruct_translates(const GridFunction& f_hat, const TranslateSystem& system,
                                               const TranslateSystem& dual) {
  if (!dual.phi_hat().same_grid(system.phi_hat())) throw InputError("dual lives on a different grid");
  TranslateReconstruction r;
  r.coefficients = analysis_translates(f_hat, system);
  r.output = adjoint_translates(r.coefficients, dual);
  std::vector<cplx> diff(f_hat.samples().size());
  for (std::size_t j = 0; j < diff.size(); ++j) diff[j] = r.output.samples()[j] - f_hat.samples()[j];
  const double fn = f_hat.squared_norm();
  const double dn = f_hat.with_samples(std::move(diff)).squared_norm();
  r.relative_error = fn > 0.0 ? std::sqrt(dn / fn) : std::sqrt(dn);
  return r;
}

double bessel_ratio(const GridFunction& f_hat, const TranslateSystem& system) {
  const TranslateCoefficients c = analysis_translates(f_hat, system);
  const double fn = f_hat.squared_norm();
  if (fn == 0.0) return 0.0;
  return c.values.squaredNorm() / fn;
}

}  // namespace semiframe::translates
