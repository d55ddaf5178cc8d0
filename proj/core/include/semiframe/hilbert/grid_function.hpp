#pragma once

#include <functional>
#include <iosfwd>
#include <vector>

#include "semiframe/numeric.hpp"

namespace semiframe::hilbert {

enum class GridKind { Periodic, Line };

// Samples at midpoint nodes lower + (j + 1/2) * step, j = 0..M-1.
// Periodic grids cover [0, a); line grids cover [lower, lower + M*step) with lower/step integral,
// so shifts by multiples of step stay on nodes.
class GridFunction {
 public:
  GridFunction() = default;
  GridFunction(GridKind kind, double lower, double step, std::vector<cplx> samples);

  static GridFunction periodic(double period, std::vector<cplx> samples);
  static GridFunction sample_periodic(double period, Index nodes,
                                      const std::function<cplx(double)>& f);
  // Line grid on [-omega, omega); 2*omega/step must be an integer.
  static GridFunction sample_line(double omega, double step, const std::function<cplx(double)>& f);

  GridKind kind() const { return kind_; }
  double lower() const { return lower_; }
  double upper() const { return lower_ + step_ * static_cast<double>(samples_.size()); }
  double step() const { return step_; }
  Index size() const { return static_cast<Index>(samples_.size()); }
  // lower/step as an integer.
  Index offset() const;
  double node(Index j) const { return lower_ + (static_cast<double>(j) + 0.5) * step_; }
  cplx operator[](Index j) const { return samples_[static_cast<std::size_t>(j)]; }
  // Sample at integer node position relative to the origin (node (m + 1/2)*step); zero off-grid.
  cplx at_origin_index(Index m) const;
  const std::vector<cplx>& samples() const { return samples_; }

  bool same_grid(const GridFunction& other) const;
  GridFunction with_samples(std::vector<cplx> samples) const;

  // Midpoint quadrature, pairwise summed.
  cplx integral() const;
  double squared_norm() const;
  cplx inner(const GridFunction& other) const;
  double max_abs_difference(const GridFunction& other) const;

 private:
  GridKind kind_ = GridKind::Periodic;
  double lower_ = 0.0;
  double step_ = 1.0;
  std::vector<cplx> samples_;
};

struct Periodization {
  GridFunction output;
  bool stabilized = true;  // K and 2K agree
  double change = 0.0;     // max node difference between K and 2K
};

// x -> sum_{|k|<=K} f(x - k a) on [0, a); a/step must be an integer.
Periodization periodize(const GridFunction& f, double a, Index K);

// Rows "node,re,im" after a header line.
void write_csv(std::ostream& out, const GridFunction& f);
GridFunction read_csv(std::istream& in, GridKind kind);

}  // namespace semiframe::hilbert
