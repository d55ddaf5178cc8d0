#pragma once

#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "semiframe/hilbert/family.hpp"
#include "semiframe/numeric.hpp"

namespace semiframe::hilbert {

// At least three levels, strictly increasing in both d and N.
class TruncationLadder {
 public:
  explicit TruncationLadder(std::vector<Level> levels);

  // count levels, doubling d and N from base.
  static TruncationLadder doubling(Level base, int count = 4);
  // count levels doubling N from base_size, with d the smallest dimension the family admits.
  static TruncationLadder tight(const VectorFamily& family, Index base_size, int count = 4);

  const std::vector<Level>& levels() const { return levels_; }
  std::size_t size() const { return levels_.size(); }
  const Level& operator[](std::size_t i) const { return levels_[i]; }
  const Level& front() const { return levels_.front(); }
  const Level& back() const { return levels_.back(); }
  // N of each level, the abscissa used by the growth fits.
  std::vector<double> scales() const;

  void require_compatible(const VectorFamily& family) const;

 private:
  std::vector<Level> levels_;
};

enum class Convergence { Convergent, Divergent, Inconclusive };
std::string to_string(Convergence kind);

struct DiagnosticOptions {
  double tolerance = 1e-9;           // relative step size counted as settled
  double exponent_threshold = 0.1;   // growth slope that signals divergence
  double r2_threshold = 0.99;        // fit quality required for divergence
  double decay_threshold = 0.1;      // increments must shrink at least like N^-decay_threshold
};

struct ConvergenceVerdict {
  Convergence kind = Convergence::Inconclusive;
  double limit_estimate = std::numeric_limits<double>::quiet_NaN();
  cplx limit_value{std::numeric_limits<double>::quiet_NaN(), 0.0};
  double growth_exponent = 0.0;
  double r_squared = 0.0;
  std::vector<double> scales;
  std::vector<double> values;  // |value| for complex sequences
};

// Divergent: log|v| vs log(scale) slope > exponent_threshold with R^2 > r2_threshold.
// Convergent: last step below tolerance*(1+|v|), or steps decaying as a power law
// (slope < -decay_threshold); the limit then adds the geometric tail of the steps.
ConvergenceVerdict assess_sequence(std::span<const double> scales, std::span<const double> values,
                                   const DiagnosticOptions& options = {});
ConvergenceVerdict assess_sequence(std::span<const double> scales, std::span<const cplx> values,
                                   const DiagnosticOptions& options = {});

ConvergenceVerdict tail_diagnostic(const std::function<double(const Level&)>& terms,
                                   const TruncationLadder& ladder,
                                   const DiagnosticOptions& options = {});

nlohmann::ordered_json to_json(const ConvergenceVerdict& verdict);

}  // namespace semiframe::hilbert
