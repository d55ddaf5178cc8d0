#include "semiframe/hilbert/ladder.hpp"

#include <cmath>
#include <type_traits>

#include "semiframe/errors.hpp"

namespace semiframe::hilbert {

TruncationLadder::TruncationLadder(std::vector<Level> levels) : levels_(std::move(levels)) {
  if (levels_.size() < 3) throw InputError("truncation ladder needs at least 3 levels");
  for (std::size_t i = 0; i < levels_.size(); ++i) {
    if (levels_[i].dim < 1 || levels_[i].size < 1) throw InputError("ladder level must be positive");
    if (i > 0 && (levels_[i].dim <= levels_[i - 1].dim || levels_[i].size <= levels_[i - 1].size)) {
      throw InputError("ladder levels must increase strictly in d and N");
    }
  }
}

TruncationLadder TruncationLadder::doubling(Level base, int count) {
  std::vector<Level> levels;
  for (int i = 0; i < count; ++i) {
    levels.push_back(base);
    base.dim *= 2;
    base.size *= 2;
  }
  return TruncationLadder(std::move(levels));
}

TruncationLadder TruncationLadder::tight(const VectorFamily& family, Index base_size, int count) {
  std::vector<Level> levels;
  for (int i = 0; i < count; ++i) {
    const Index n = base_size << i;
    levels.push_back({family.min_dimension(n), n});
  }
  return TruncationLadder(std::move(levels));
}

std::vector<double> TruncationLadder::scales() const {
  std::vector<double> s;
  for (const Level& l : levels_) s.push_back(static_cast<double>(l.size));
  return s;
}

void TruncationLadder::require_compatible(const VectorFamily& family) const {
  for (const Level& l : levels_) family.require_compatible(l);
}

std::string to_string(Convergence kind) {
  switch (kind) {
    case Convergence::Convergent: return "convergent";
    case Convergence::Divergent: return "divergent";
    case Convergence::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

namespace {

template <class T>
ConvergenceVerdict assess(std::span<const double> scales, std::span<const T> values,
                          const DiagnosticOptions& opt) {
  if (scales.size() != values.size() || scales.size() < 3) {
    throw InputError("convergence diagnostic needs >= 3 paired levels");
  }
  const std::size_t n = values.size();
  ConvergenceVerdict v;
  v.scales.assign(scales.begin(), scales.end());
  for (const T& x : values) v.values.push_back(std::abs(x));

  bool all_positive = true;
  for (double m : v.values) all_positive = all_positive && m > 0.0 && std::isfinite(m);
  if (all_positive) {
    const PowerFit fit = fit_power_law(scales, v.values);
    v.growth_exponent = fit.exponent;
    v.r_squared = fit.r_squared;
    if (fit.exponent > opt.exponent_threshold && fit.r_squared > opt.r2_threshold) {
      v.kind = Convergence::Divergent;
      return v;
    }
  }
  for (double m : v.values) {
    if (!std::isfinite(m)) return v;
  }

  const T last = values[n - 1];
  const T step = values[n - 1] - values[n - 2];
  if (std::abs(step) <= opt.tolerance * (1.0 + std::abs(last))) {
    v.kind = Convergence::Convergent;
    v.limit_value = cplx(last);
    v.limit_estimate = std::abs(cplx(last));
    if constexpr (std::is_same_v<T, double>) v.limit_estimate = last;
    return v;
  }

  // Steps decaying like a power of N: sum the remaining geometric tail.
  std::vector<double> step_scales, step_sizes;
  for (std::size_t i = 1; i < n; ++i) {
    step_scales.push_back(scales[i]);
    step_sizes.push_back(std::abs(values[i] - values[i - 1]));
  }
  for (double s : step_sizes) {
    if (!(s > 0.0)) return v;
  }
  const PowerFit decay = fit_power_law(step_scales, step_sizes);
  const double ratio = step_sizes[n - 2] / step_sizes[n - 3];
  if (decay.exponent < -opt.decay_threshold && ratio < 1.0) {
    v.kind = Convergence::Convergent;
    const T limit = last + step * (ratio / (1.0 - ratio));
    v.limit_value = cplx(limit);
    v.limit_estimate = std::abs(cplx(limit));
    if constexpr (std::is_same_v<T, double>) v.limit_estimate = limit;
  }
  return v;
}

}  // namespace

ConvergenceVerdict assess_sequence(std::span<const double> scales, std::span<const double> values,
                                   const DiagnosticOptions& options) {
  return assess(scales, values, options);
}

ConvergenceVerdict assess_sequence(std::span<const double> scales, std::span<const cplx> values,
                                   const DiagnosticOptions& options) {
  return assess(scales, values, options);
}

ConvergenceVerdict tail_diagnostic(const std::function<double(const Level&)>& terms,
                                   const TruncationLadder& ladder, const DiagnosticOptions& options) {
  std::vector<double> values;
  for (const Level& l : ladder.levels()) values.push_back(terms(l));
  const std::vector<double> scales = ladder.scales();
  return assess_sequence(scales, values, options);
}

nlohmann::ordered_json to_json(const ConvergenceVerdict& verdict) {
  nlohmann::ordered_json j;
  j["kind"] = to_string(verdict.kind);
  if (verdict.kind == Convergence::Convergent) j["limit_estimate"] = verdict.limit_estimate;
  j["growth_exponent"] = verdict.growth_exponent;
  j["r_squared"] = verdict.r_squared;
  j["scales"] = verdict.scales;
  j["values"] = verdict.values;
  return j;
}

}  // namespace semiframe::hilbert
