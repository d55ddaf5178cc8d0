#include "semiframe/exponentials/exponentials.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <utility>

#include "semiframe/errors.hpp"
#include "semiframe/hilbert/ladder.hpp"

namespace semiframe::exponentials {
namespace {

using hilbert::GridKind;

Index wrap(Index m, Index M) {
  const Index r = m % M;
  return r < 0 ? r + M : r;
}

// e^{sign 2 pi i r / (2W)}, r = 0..2W-1.
std::vector<cplx> half_roots(Index W, double sign) {
  std::vector<cplx> r(static_cast<std::size_t>(2 * W));
  for (Index k = 0; k < 2 * W; ++k) {
    r[static_cast<std::size_t>(k)] = std::polar(1.0, sign * kPi * static_cast<double>(k) / static_cast<double>(W));
  }
  return r;
}

// e^{sign 2 pi i n b x_j} = e^{sign 2 pi i n (2j+1) / (2W)}.
cplx phase(const std::vector<cplx>& roots, long n, Index j, Index W) {
  return roots[static_cast<std::size_t>((wrap(static_cast<Index>(n), 2 * W) * (2 * j + 1)) % (2 * W))];
}

void require_same_grid(const GridFunction& f, const ExponentialSystem& s) {
  if (!f.same_grid(s.g())) throw InputError("function and weight are on different grids");
}

GridFunction relabel(const GridFunction& g, std::vector<cplx> v) { return g.with_samples(std::move(v)); }

// Per-node (1/b) sum_n |g(x - n/b)|^2 with zero extension: the local norm of T_g.
std::vector<double> aliased_power(const ExponentialSystem& s) {
  const Index M = s.nodes(), W = s.window();
  std::vector<double> p(static_cast<std::size_t>(M));
  for (Index j = 0; j < M; ++j) {
    double acc = 0.0;
    for (Index m = j % W; m < M; m += W) acc += std::norm(s.g()[m]);
    p[static_cast<std::size_t>(j)] = acc / s.b();
  }
  return p;
}

struct LevelStats {
  double scale = 0.0;
  double sup = 0.0;
  double inf = 0.0;
  double q_low = 0.0;
  double q_high = 0.0;
  double inv_square = 0.0;  // integral of 1/|g|^2
  double zero_fraction = 0.0;
};

LevelStats grid_stats(const ExponentialSystem& s, double zero_floor) {
  LevelStats st;
  st.scale = static_cast<double>(s.nodes());
  const std::vector<double> p = aliased_power(s);
  st.sup = *std::max_element(p.begin(), p.end());
  st.inf = *std::min_element(p.begin(), p.end());
  st.q_low = quantile(p, 0.005);
  st.q_high = quantile(p, 0.995);
  double gmax = 0.0;
  for (const cplx& v : s.g().samples()) gmax = std::max(gmax, std::abs(v));
  std::vector<double> inv(s.g().samples().size());
  Index zeros = 0;
  for (std::size_t j = 0; j < inv.size(); ++j) {
    const double a = std::abs(s.g().samples()[j]);
    if (a <= zero_floor * gmax) ++zeros;
    inv[j] = a > 0.0 ? 1.0 / (a * a) : std::numeric_limits<double>::infinity();
  }
  st.zero_fraction = static_cast<double>(zeros) / static_cast<double>(inv.size());
  st.inv_square = pairwise_sum(inv) * s.g().step();
  if (s.weight()) {
    const muckenhoupt::Real exact = s.weight()->pow(2.0).integral({0, 1}, -1);
    st.inv_square = boost::multiprecision::isinf(exact) ? std::numeric_limits<double>::infinity()
                                                        : static_cast<double>(exact);
  }
  return st;
}

// Exact statistics of a plateau weight truncated at k: levels scale * j^{j e}, j = 2..k, and the tail value scale.
LevelStats plateau_stats(const Weight& w, int k, double b) {
  const Weight wk = Weight::plateau(k).pow(w.exponent()).scaled(w.scale());
  LevelStats st;
  st.scale = k;
  double hi = w.scale(), lo = w.scale();
  for (int j = 2; j <= k; ++j) {
    const double v = w.scale() * std::pow(static_cast<double>(j), j * w.exponent());
    hi = std::max(hi, v);
    lo = std::min(lo, v);
  }
  st.sup = hi * hi / b;
  st.inf = lo * lo / b;
  st.q_low = st.inf;
  st.q_high = st.sup;
  const muckenhoupt::Real inv = wk.pow(2.0).integral({0, 1}, -1);
  st.inv_square = boost::multiprecision::isinf(inv) ? std::numeric_limits<double>::infinity()
                                                    : static_cast<double>(inv);
  return st;
}

Verdict from_trend(hilbert::Convergence c) {
  if (c == hilbert::Convergence::Convergent) return Verdict::Yes;
  if (c == hilbert::Convergence::Divergent) return Verdict::No;
  return Verdict::Inconclusive;
}

}  // namespace

ExponentialSystem::ExponentialSystem(GridFunction g, double b, std::string name)
    : g_(std::move(g)), b_(b), name_(std::move(name)) {
  if (g_.kind() != GridKind::Periodic || std::abs(g_.upper() - 1.0) > 1e-12) {
    throw InputError("exponential weight must be sampled on [0, 1)");
  }
  if (!(b > 0.0)) throw InputError("modulation parameter b must be positive");
  const double w = static_cast<double>(g_.size()) / b;
  window_ = static_cast<Index>(std::llround(w));
  if (window_ < 1 || std::abs(w - static_cast<double>(window_)) > 1e-9 * w) {
    throw InputError("shift 1/b is not a whole number of grid nodes");
  }
  if (!std::isfinite(g_.squared_norm())) throw InputError("weight is not square integrable on the grid");
}

ExponentialSystem ExponentialSystem::from_weight(const Weight& g, double b, Index nodes) {
  ExponentialSystem s(GridFunction::sample_periodic(1.0, nodes, [&](double x) { return cplx(g.value(x)); }), b,
                      g.name());
  s.weight_ = g;
  return s;
}

ExponentialSystem ExponentialSystem::refined(Index factor) const {
  if (!weight_) throw InputError("refinement needs an analytic weight");
  if (factor < 1) throw InputError("refinement factor must be positive");
  ExponentialSystem s = from_weight(*weight_, b_, nodes() * factor);
  s.name_ = name_;
  s.ordering_ = ordering_;
  return s;
}

ExponentialSystem ExponentialSystem::with_ordering(std::vector<long> labels) const {
  const long half = static_cast<long>(labels.size() / 2);
  std::vector<Index> positions;
  positions.reserve(labels.size());
  for (long n : labels) {
    if (n < -half || n > half) throw InputError("ordering label outside the window");
    positions.push_back(ord_z_position(n));
  }
  hilbert::require_permutation(positions, static_cast<Index>(labels.size()));
  ExponentialSystem s = *this;
  s.ordering_ = std::move(labels);
  return s;
}

std::vector<long> ExponentialSystem::order_labels(long half) const {
  if (ordering_) {
    if (static_cast<long>(ordering_->size()) != 2 * half + 1) throw InputError("ordering covers a different window");
    return *ordering_;
  }
  std::vector<long> out{0};
  for (long k = 1; k <= half; ++k) {
    out.push_back(k);
    out.push_back(-k);
  }
  return out;
}

GridFunction ExponentialSystem::sample(const std::function<cplx(double)>& f) const {
  return GridFunction::sample_periodic(1.0, nodes(), f);
}

nlohmann::ordered_json ExponentialSystem::descriptor() const {
  nlohmann::ordered_json j;
  j["name"] = name_;
  if (weight_) j["weight"] = weight_->descriptor();
  j["b"] = b_;
  j["nodes"] = nodes();
  j["enumeration"] = ordering_ ? "explicit" : "ord_Z";
  return j;
}

GridFunction t_mult(const GridFunction& f, const ExponentialSystem& system) {
  require_same_grid(f, system);
  if (system.b() > 1.0) throw InputError("t_mult needs b <= 1; use t_general");
  std::vector<cplx> out(f.samples().size());
  for (Index j = 0; j < f.size(); ++j) {
    const cplx g = system.g()[j];
    out[static_cast<std::size_t>(j)] = g * (f[j] * std::conj(g)) / system.b();
  }
  return relabel(f, std::move(out));
}

GridFunction t_general(const GridFunction& f, const ExponentialSystem& system) {
  require_same_grid(f, system);
  const Index M = system.nodes(), W = system.window();
  std::vector<cplx> out(static_cast<std::size_t>(M));
  std::vector<cplx> terms;
  for (Index j = 0; j < M; ++j) {
    terms.clear();
    for (Index m = j % W; m < M; m += W) terms.push_back(f[m] * std::conj(system.g()[m]));
    out[static_cast<std::size_t>(j)] = system.g()[j] * pairwise_sum(std::span<const cplx>(terms)) / system.b();
  }
  return relabel(f, std::move(out));
}

ExponentialCoefficients analysis_exponentials(const GridFunction& f, const ExponentialSystem& system) {
  const long W = static_cast<long>(system.window());
  return analysis_exponentials(f, system, -W / 2, -W / 2 + W - 1);
}

ExponentialCoefficients analysis_exponentials(const GridFunction& f, const ExponentialSystem& system, long lo,
                                              long hi) {
  require_same_grid(f, system);
  if (hi < lo) throw InputError("analysis_exponentials: empty window");
  const Index M = system.nodes(), W = system.window();
  const std::vector<cplx> roots = half_roots(W, -1.0);
  std::vector<cplx> fg(static_cast<std::size_t>(M)), terms(static_cast<std::size_t>(M));
  for (Index j = 0; j < M; ++j) fg[static_cast<std::size_t>(j)] = f[j] * std::conj(system.g()[j]);
  ExponentialCoefficients c;
  c.first = lo;
  c.values.resize(hi - lo + 1);
  for (long n = lo; n <= hi; ++n) {
    for (Index j = 0; j < M; ++j) terms[static_cast<std::size_t>(j)] = fg[static_cast<std::size_t>(j)] * phase(roots, n, j, W);
    c.values(n - lo) = pairwise_sum(std::span<const cplx>(terms)) * f.step();
  }
  return c;
}

GridFunction synthesis_exponentials(const ExponentialCoefficients& coeffs, const ExponentialSystem& system) {
  const Index M = system.nodes(), W = system.window();
  const std::vector<cplx> roots = half_roots(W, 1.0);
  std::vector<cplx> out(static_cast<std::size_t>(M)), terms(static_cast<std::size_t>(coeffs.values.size()));
  for (Index j = 0; j < M; ++j) {
    for (Index i = 0; i < coeffs.values.size(); ++i) {
      terms[static_cast<std::size_t>(i)] = coeffs.values(i) * phase(roots, coeffs.first + static_cast<long>(i), j, W);
    }
    out[static_cast<std::size_t>(j)] = system.g()[j] * pairwise_sum(std::span<const cplx>(terms));
  }
  return relabel(system.g(), std::move(out));
}

ClassificationReport classify_exponentials(const ExponentialSystem& system,
                                           const ExponentialClassifyOptions& options) {
  ClassificationReport rep;
  rep.subject = system.name();
  rep.scope = "L2(0,1)";

  std::vector<LevelStats> levels;
  const auto& w = system.weight();
  if (w && w->kind() == Weight::Kind::Plateau) {
    rep.notes.push_back("plateau weight: levels are truncations k_max, statistics exact");
    for (int k = std::max(2, w->k_max() - options.levels + 1); k <= w->k_max(); ++k) {
      levels.push_back(plateau_stats(*w, k, system.b()));
    }
  } else if (w) {
    for (int i = 0; i < options.levels; ++i) {
      levels.push_back(grid_stats(i == 0 ? system : system.refined(Index{1} << i), options.zero_floor));
    }
  } else {
    levels.push_back(grid_stats(system, options.zero_floor));
  }
  for (const LevelStats& st : levels) {
    rep.evidence.push_back({static_cast<long>(st.scale), static_cast<long>(system.window()), st.inf, st.sup});
  }
  const LevelStats& top = levels.back();
  rep.lower_bound = top.q_low;
  rep.upper_bound = top.q_high;

  rep.complete = top.zero_fraction == 0.0 ? Verdict::Yes : Verdict::No;
  if (rep.complete == Verdict::No) rep.notes.push_back("g vanishes on a positive fraction of nodes");

  if (levels.size() < 3) {
    rep.notes.push_back("grid-only weight: single level, boundedness verdicts need refinement");
    rep.minimal = std::isfinite(top.inv_square) ? Verdict::Inconclusive : Verdict::No;
    return rep;
  }

  std::vector<double> scales, sups, inv_infs, inv_sq;
  for (const LevelStats& st : levels) {
    scales.push_back(st.scale);
    sups.push_back(st.sup);
    inv_infs.push_back(st.inf > 0.0 ? 1.0 / st.inf : std::numeric_limits<double>::infinity());
    inv_sq.push_back(st.inv_square);
  }

  if (rep.complete == Verdict::No || !std::isfinite(inv_sq.back())) {
    rep.minimal = Verdict::No;
  } else {
    rep.minimal = from_trend(hilbert::assess_sequence(scales, inv_sq).kind);
  }

  const hilbert::ConvergenceVerdict upper = hilbert::assess_sequence(scales, sups);
  rep.bessel = from_trend(upper.kind);
  rep.upper_growth_exponent = upper.growth_exponent;

  if (system.b() > 1.0) {
    rep.lower_semi_frame = Verdict::NotApplicable;
    rep.frame = Verdict::NotApplicable;
    rep.riesz = Verdict::NotApplicable;
    rep.notes.push_back("lower bound criterion is stated for b <= 1 only");
    return rep;
  }
  if (!std::isfinite(inv_infs.back())) {
    rep.lower_semi_frame = Verdict::No;
  } else {
    const hilbert::ConvergenceVerdict lower = hilbert::assess_sequence(scales, inv_infs);
    rep.lower_semi_frame = from_trend(lower.kind);
    rep.lower_growth_exponent = lower.growth_exponent;
  }
  if (rep.bessel == Verdict::Yes && rep.lower_semi_frame == Verdict::Yes) {
    rep.frame = Verdict::Yes;
    rep.riesz = system.b() == 1.0 ? Verdict::Yes : Verdict::No;
  } else if (rep.bessel == Verdict::No || rep.lower_semi_frame == Verdict::No) {
    rep.frame = Verdict::No;
    rep.riesz = Verdict::No;
  } else {
    rep.frame = Verdict::Inconclusive;
    rep.riesz = Verdict::Inconclusive;
  }
  return rep;
}

ExponentialSystem canonical_dual_exponentials(const ExponentialSystem& system, double floor) {
  double gmax = 0.0, gmin = std::numeric_limits<double>::infinity();
  for (const cplx& v : system.g().samples()) {
    gmax = std::max(gmax, std::abs(v));
    gmin = std::min(gmin, std::abs(v));
  }
  if (!(gmin > floor * gmax)) throw RefusedError("|g| falls below the floor; no dual weight", gmin);
  if (system.weight()) {
    ExponentialSystem d = ExponentialSystem::from_weight(system.weight()->pow(-1.0).scaled(system.b()), system.b(),
                                                         system.nodes());
    return d;
  }
  std::vector<cplx> h(system.g().samples().size());
  for (std::size_t j = 0; j < h.size(); ++j) h[j] = system.b() / std::conj(system.g().samples()[j]);
  return ExponentialSystem(system.g().with_samples(std::move(h)), system.b(), "dual of " + system.name());
}

ExponentialReconstruction reconstruct_exponentials(const GridFunction& f, const ExponentialSystem& system,
                                                   const ExponentialSystem& dual) {
  if (!dual.g().same_grid(system.g()) || dual.b() != system.b()) throw InputError("dual lives on a different grid");
  ExponentialReconstruction r;
  r.coefficients = analysis_exponentials(f, system);
  r.output = synthesis_exponentials(r.coefficients, dual);
  std::vector<cplx> diff(f.samples().size());
  for (std::size_t j = 0; j < diff.size(); ++j) diff[j] = r.output.samples()[j] - f.samples()[j];
  const double fn = f.squared_norm();
  const double dn = f.with_samples(std::move(diff)).squared_norm();
  r.relative_error = fn > 0.0 ? std::sqrt(dn / fn) : std::sqrt(dn);
  return r;
}

SchauderReport schauder_test(const ExponentialSystem& system, const muckenhoupt::A2Options& options) {
  SchauderReport r;
  if (system.ordering()) {
    r.notes.push_back("the A2 criterion covers the ord_Z enumeration only");
    r.schauder = Verdict::NotApplicable;
    return r;
  }
  Weight w2 = Weight::constant(1.0);
  if (system.weight()) {
    w2 = system.weight()->pow(2.0);
  } else {
    std::vector<double> cells(system.g().samples().size());
    for (std::size_t j = 0; j < cells.size(); ++j) cells[j] = std::norm(system.g().samples()[j]);
    if (*std::min_element(cells.begin(), cells.end()) <= 0.0) {
      r.schauder = Verdict::No;
      r.notes.push_back("|g|^2 vanishes at a node, so 1/|g|^2 is not integrable");
      return r;
    }
    w2 = Weight::custom(std::move(cells));
    r.notes.push_back("|g|^2 taken piecewise constant on the grid cells");
  }
  r.a2 = muckenhoupt::a2_estimate(w2, options);
  switch (r.a2.verdict) {
    case muckenhoupt::A2Verdict::InA2: r.schauder = Verdict::Yes; break;
    case muckenhoupt::A2Verdict::NotInA2: r.schauder = Verdict::No; break;
    case muckenhoupt::A2Verdict::Inconclusive: r.schauder = Verdict::Inconclusive; break;
  }
  return r;
}

nlohmann::ordered_json to_json(const SchauderReport& report) {
  nlohmann::ordered_json j;
  j["schauder"] = to_string(report.schauder);
  if (report.schauder != Verdict::NotApplicable && !report.a2.weight.empty()) j["a2"] = muckenhoupt::to_json(report.a2);
  j["notes"] = report.notes;
  return j;
}

Index ord_z_position(long n) { return n > 0 ? 2 * n - 1 : -2 * n; }

std::vector<long> adversarial_labels(long half) {
  std::vector<long> out{0};
  for (long lo = 1; lo <= half; lo *= 2) {
    const long hi = std::min(2 * lo, half + 1);
    std::vector<long> band;
    for (long k = lo; k < hi; ++k) {
      band.push_back(k);
      band.push_back(-k);
    }
    for (long n : band) if (n % 2 == 0) out.push_back(n);
    for (long n : band) if (n % 2 != 0) out.push_back(n);
  }
  return out;
}

hilbert::VectorFamily exponential_family(const ExponentialSystem& system, long half) {
  if (half < 0) throw InputError("exponential_family: negative window");
  const Index M = system.nodes(), W = system.window();
  const double root_h = std::sqrt(system.g().step());
  auto g = std::make_shared<std::vector<cplx>>(system.g().samples());
  auto roots = std::make_shared<std::vector<cplx>>(half_roots(W, 1.0));
  const hilbert::IndexSet index_set{hilbert::IndexSet::Kind::Integer, 0};
  const Index count = 2 * half + 1;
  hilbert::VectorFamily::Generator gen = [=](Index position, Index dim) {
    if (dim != M) throw InputError("exponential family lives in C^M with M the grid size");
    if (position >= count) throw InputError("exponential family: position outside the window");
    const long n = index_set.label(position);
    hilbert::SparseColumn col(dim);
    col.reserve(dim);
    for (Index j = 0; j < M; ++j) col.insert(j) = root_h * (*g)[static_cast<std::size_t>(j)] * phase(*roots, n, j, W);
    return col;
  };
  nlohmann::ordered_json params = system.descriptor();
  params["half_window"] = half;
  hilbert::VectorFamily fam("exponentials", params, index_set, gen, [M](Index) { return M; },
                            hilbert::BasisTag::UnitIntervalGrid);
  if (system.ordering()) {
    const std::vector<long> labels = system.order_labels(half);
    std::vector<Index> order;
    for (long n : labels) order.push_back(ord_z_position(n));
    fam = fam.permuted(std::move(order));
  }
  return fam;
}

}  // namespace semiframe::exponentials
