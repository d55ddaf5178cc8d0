#include "semiframe/ops/partial_sums.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>

#include "semiframe/errors.hpp"
#include "semiframe/hilbert/families.hpp"

namespace semiframe::ops {

using hilbert::SparseColumn;

Eigen::VectorXcd materialize(const VectorRule& rule, Index dim) {
  Eigen::VectorXcd v(dim);
  for (Index k = 0; k < dim; ++k) v(k) = rule(k + 1);
  return v;
}

TraceStatus assess_trace(std::span<const double> norms, double window_tolerance) {
  TraceStatus st;
  const auto n = static_cast<Index>(norms.size());
  if (n == 0 || *std::max_element(norms.begin(), norms.end()) == 0.0) {
    st.stabilized = true;
    st.kind = hilbert::Convergence::Convergent;
    return st;
  }
  const auto slice_spread = [&](Index lo, Index hi) {  // 0-based [lo, hi)
    const auto [mn, mx] = std::minmax_element(norms.begin() + lo, norms.begin() + hi);
    return *mx - *mn;
  };
  const Index quarter = std::min(n - 1, (3 * n) / 4);
  st.window_variation = slice_spread(quarter, n) / std::max(norms[static_cast<std::size_t>(n - 1)], 1e-300);

  bool divergent = false;
  if (n >= 32) {
    std::vector<double> ends, spreads, checkpoint_scales, checkpoint_norms;
    for (int i = 0; i < 4; ++i) {
      const Index hi = n >> i;
      const Index lo = n >> (i + 1);
      ends.push_back(static_cast<double>(hi));
      spreads.push_back(slice_spread(lo, hi));
    }
    st.window_oscillation = spreads;
    for (int i = 3; i >= 0; --i) {
      const Index k = n >> i;
      checkpoint_scales.push_back(static_cast<double>(k));
      checkpoint_norms.push_back(norms[static_cast<std::size_t>(k - 1)]);
    }
    if (std::all_of(checkpoint_norms.begin(), checkpoint_norms.end(), [](double v) { return v > 0.0; })) {
      const PowerFit g = fit_power_law(checkpoint_scales, checkpoint_norms);
      st.growth_exponent = g.exponent;
      st.growth_r_squared = g.r_squared;
      divergent = g.exponent > 0.1 && g.r_squared > 0.99;
    }
    if (std::all_of(spreads.begin(), spreads.end(), [](double v) { return v > 0.0; })) {
      st.oscillation_exponent = fit_power_law(ends, spreads).exponent;
    }
    if (!divergent && st.window_variation >= window_tolerance &&
        std::all_of(spreads.begin(), spreads.end(), [](double v) { return v > 0.0; }) &&
        st.oscillation_exponent < -0.1) {
      st.stabilized = true;
    }
  }
  if (!divergent && st.window_variation < window_tolerance) st.stabilized = true;
  if (st.stabilized) {
    st.kind = hilbert::Convergence::Convergent;
  } else if (divergent) {
    st.kind = hilbert::Convergence::Divergent;
  }
  return st;
}

void write_csv(std::ostream& out, const PartialSumTrace& trace) {
  out << "k,norm\n" << std::setprecision(17);
  for (std::size_t k = 0; k < trace.prefix_norms.size(); ++k) out << (k + 1) << ',' << trace.prefix_norms[k] << '\n';
}

nlohmann::ordered_json to_json(const TraceStatus& s) {
  nlohmann::ordered_json j;
  j["stabilized"] = s.stabilized;
  j["kind"] = hilbert::to_string(s.kind);
  j["window_variation"] = s.window_variation;
  j["window_oscillation"] = s.window_oscillation;
  j["oscillation_exponent"] = s.oscillation_exponent;
  j["growth_exponent"] = s.growth_exponent;
  j["growth_r_squared"] = s.growth_r_squared;
  return j;
}

namespace {

cplx sparse_pairing(const Eigen::VectorXcd& f, const SparseColumn& c) {
  cplx acc = 0.0;
  for (SparseColumn::InnerIterator it(c); it; ++it) acc += f(it.index()) * std::conj(it.value());
  return acc;
}

template <class Coefficient>
PartialSumTrace run_partial_sums(const VectorFamily& family, const std::vector<Index>& ordering,
                                 const Level& level, Coefficient&& coefficient) {
  family.require_compatible(level);
  hilbert::require_permutation(ordering, level.size);
  PartialSumTrace t;
  t.ordering = ordering;
  t.prefix_norms.reserve(static_cast<std::size_t>(level.size));
  Eigen::VectorXcd s = Eigen::VectorXcd::Zero(level.dim);
  double norm2 = 0.0;
  constexpr Index kResync = 65536;
  for (Index k = 0; k < level.size; ++k) {
    const Index pos = ordering[static_cast<std::size_t>(k)];
    const SparseColumn col = family.column(pos, level.dim);
    const cplx c = coefficient(pos, col);
    if (4 * col.nonZeros() >= level.dim) {
      for (SparseColumn::InnerIterator it(col); it; ++it) s(it.index()) += c * it.value();
      norm2 = hilbert::squared_norm(s);
    } else {
      double delta = 0.0;
      for (SparseColumn::InnerIterator it(col); it; ++it) {
        const cplx old = s(it.index());
        const cplx updated = old + c * it.value();
        delta += std::norm(updated) - std::norm(old);
        s(it.index()) = updated;
      }
      norm2 += delta;
      if ((k + 1) % kResync == 0) norm2 = hilbert::squared_norm(s);
    }
    t.prefix_norms.push_back(std::sqrt(std::max(norm2, 0.0)));
  }
  // Re-anchor the last value on an exact pairwise norm.
  if (!t.prefix_norms.empty()) t.prefix_norms.back() = std::sqrt(hilbert::squared_norm(s));
  t.status = assess_trace(t.prefix_norms);
  t.final_sum = s;
  if (t.status.stabilized) t.limit = s;
  return t;
}

}  // namespace

PartialSumTrace synthesis(const VectorFamily& family, const Eigen::VectorXcd& coeffs,
                          const std::vector<Index>& ordering, const Level& level) {
  if (coeffs.size() != level.size) throw InputError("synthesis: need exactly N coefficients");
  return run_partial_sums(family, ordering, level,
                          [&](Index pos, const SparseColumn&) { return coeffs(pos); });
}

PartialSumTrace s_apply(const VectorFamily& family, const Eigen::VectorXcd& f,
                        const std::vector<Index>& ordering, const Level& level) {
  if (f.size() != level.dim) throw InputError("s_apply: f has the wrong dimension");
  return run_partial_sums(family, ordering, level,
                          [&](Index, const SparseColumn& col) { return sparse_pairing(f, col); });
}

Eigen::VectorXcd analysis(const VectorFamily& family, const Eigen::VectorXcd& f, const Level& level) {
  family.require_compatible(level);
  if (f.size() != level.dim) throw InputError("analysis: f has the wrong dimension");
  Eigen::VectorXcd c(level.size);
  for (Index n = 0; n < level.size; ++n) c(n) = sparse_pairing(f, family.column(n, level.dim));
  return c;
}

AnalysisResult analysis(const VectorFamily& family, const VectorRule& f, const TruncationLadder& ladder) {
  ladder.require_compatible(family);
  AnalysisResult r;
  std::vector<double> energies;
  for (const Level& level : ladder.levels()) {
    r.coefficients = analysis(family, materialize(f, level.dim), level);
    energies.push_back(hilbert::squared_norm(r.coefficients));
  }
  const std::vector<double> scales = ladder.scales();
  r.tail = hilbert::assess_sequence(scales, energies);
  return r;
}

std::vector<VectorRule> default_test_set(unsigned long seed, int random_count) {
  std::vector<VectorRule> set;
  for (Index j = 1; j <= 3; ++j) set.push_back([j](Index k) { return cplx(k == j ? 1.0 : 0.0); });
  set.push_back([](Index k) { return cplx(std::pow(static_cast<double>(k), -3.0)); });
  set.push_back([](Index k) { return cplx(std::pow(static_cast<double>(k), -4.0)); });
  constexpr Index kSupport = 8;
  for (int i = 0; i < random_count; ++i) {
    const std::vector<double> g = hilbert::seeded_gaussians(seed, 5000u + static_cast<unsigned long>(i), 2 * kSupport);
    set.push_back([g](Index k) {
      if (k > kSupport) return cplx(0.0);
      const auto j = static_cast<std::size_t>(2 * (k - 1));
      return cplx(g[j], g[j + 1]);
    });
  }
  return set;
}

WMembership w_membership(const VectorFamily& family, const VectorRule& f,
                         const std::vector<VectorRule>& test_set, const TruncationLadder& ladder) {
  if (test_set.empty()) throw InputError("w_membership: empty test set");
  ladder.require_compatible(family);
  std::vector<std::vector<cplx>> pairings(test_set.size());
  std::vector<double> sup_norms;
  std::vector<double> g_norms(test_set.size(), 0.0);
  for (const Level& level : ladder.levels()) {
    const PartialSumTrace t = s_apply(family, materialize(f, level.dim), hilbert::identity_order(level.size), level);
    sup_norms.push_back(*std::max_element(t.prefix_norms.begin(), t.prefix_norms.end()));
    for (std::size_t i = 0; i < test_set.size(); ++i) {
      const Eigen::VectorXcd g = materialize(test_set[i], level.dim);
      g_norms[i] = g.norm();
      pairings[i].push_back(g.dot(t.final_sum));  // <S_N f, g>
    }
  }
  const std::vector<double> scales = ladder.scales();
  WMembership w;
  bool all_convergent = true, any_divergent = false;
  std::vector<double> worst(ladder.size(), 0.0);
  for (std::size_t i = 0; i < test_set.size(); ++i) {
    w.pairings.push_back(hilbert::assess_sequence(scales, std::span<const cplx>(pairings[i])));
    const auto& v = w.pairings.back();
    all_convergent = all_convergent && v.kind == hilbert::Convergence::Convergent;
    any_divergent = any_divergent || v.kind == hilbert::Convergence::Divergent;
    if (g_norms[i] > 0.0) {
      if (v.kind == hilbert::Convergence::Convergent) {
        w.bound_constant = std::max(w.bound_constant, std::abs(v.limit_value) / g_norms[i]);
      }
      for (std::size_t l = 0; l < ladder.size(); ++l) worst[l] = std::max(worst[l], std::abs(pairings[i][l]) / g_norms[i]);
    }
  }
  w.in_t_domain.scales = scales;
  w.in_t_domain.values = worst;
  w.in_t_domain.kind = all_convergent ? hilbert::Convergence::Convergent
                                      : (any_divergent ? hilbert::Convergence::Divergent : hilbert::Convergence::Inconclusive);
  if (all_convergent) w.in_t_domain.limit_estimate = w.bound_constant;

  w.in_w_domain = hilbert::assess_sequence(scales, sup_norms);
  if (w.in_t_domain.kind != hilbert::Convergence::Convergent &&
      w.in_w_domain.kind == hilbert::Convergence::Convergent) {
    w.in_w_domain.kind = w.in_t_domain.kind;
  }
  return w;
}

namespace {

using LD = long double;

LD h(long n) { return 1.0L / (static_cast<LD>(n) * static_cast<LD>(n)); }

// h_n - h_{n-1} without cancellation.
LD dh(long n) {
  const LD x = static_cast<LD>(n);
  return -(2.0L * x - 1.0L) / (x * x * (x - 1.0L) * (x - 1.0L));
}

LD pow_16_5(long n) { return std::pow(static_cast<LD>(n), 3.2L); }

}  // namespace

long double chi_alpha(long n) {
  if (n < 2) throw InputError("chi_alpha: n >= 2");
  return pow_16_5(n) * dh(n) - pow_16_5(n + 1) * dh(n + 1) + static_cast<LD>(n) * h(n);
}

long double chi_beta(long k) {
  if (k < 2) throw InputError("chi_beta: k >= 2");
  return pow_16_5(k) * dh(k) + static_cast<LD>(k) * h(k);
}

long double chi_gamma(long k) {
  if (k < 2) throw InputError("chi_gamma: k >= 2");
  return pow_16_5(k) * dh(k);
}

long double chi_first_coordinate() { return 2.0L - std::pow(2.0L, 1.2L) + std::pow(2.0L, 3.2L); }

ChiCoefficients alpha_beta_gamma(long lo, long hi) {
  if (lo < 2 || hi > 1000000 || lo > hi) throw InputError("alpha_beta_gamma: range must lie in 2..10^6");
  ChiCoefficients c;
  const auto count = static_cast<std::size_t>(hi - lo + 1);
  c.index.reserve(count);
  c.alpha.reserve(count);
  c.beta.reserve(count);
  c.gamma.reserve(count);
  for (long k = lo; k <= hi; ++k) {
    c.index.push_back(k);
    c.alpha.push_back(chi_alpha(k));
    c.beta.push_back(chi_beta(k));
    c.gamma.push_back(chi_gamma(k));
  }
  return c;
}

}  // namespace semiframe::ops
