#include "semiframe/hilbert/grid_function.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "semiframe/errors.hpp"

namespace semiframe::hilbert {
namespace {

// Integer nearest to x when x is within a relative 1e-9 of it.
Index exact_integer(double x, const char* what) {
  const double r = std::round(x);
  if (std::abs(x - r) > 1e-9 * std::max(1.0, std::abs(x))) {
    throw InputError(std::string(what) + " is not an integer multiple of the grid step");
  }
  return static_cast<Index>(r);
}

}  // namespace

GridFunction::GridFunction(GridKind kind, double lower, double step, std::vector<cplx> samples)
    : kind_(kind), lower_(lower), step_(step), samples_(std::move(samples)) {
  if (samples_.size() < 2) throw InputError("grid function needs at least 2 samples");
  if (!(step_ > 0.0)) throw InputError("grid step must be positive");
  if (kind_ == GridKind::Periodic && lower_ != 0.0) throw InputError("periodic grids start at 0");
  exact_integer(lower_ / step_, "grid lower end");
}

GridFunction GridFunction::periodic(double period, std::vector<cplx> samples) {
  const double step = period / static_cast<double>(samples.size());
  return GridFunction(GridKind::Periodic, 0.0, step, std::move(samples));
}

GridFunction GridFunction::sample_periodic(double period, Index nodes,
                                           const std::function<cplx(double)>& f) {
  if (nodes < 2) throw InputError("grid function needs at least 2 samples");
  const double step = period / static_cast<double>(nodes);
  std::vector<cplx> s(static_cast<std::size_t>(nodes));
  for (Index j = 0; j < nodes; ++j) s[static_cast<std::size_t>(j)] = f((static_cast<double>(j) + 0.5) * step);
  return GridFunction(GridKind::Periodic, 0.0, step, std::move(s));
}

GridFunction GridFunction::sample_line(double omega, double step, const std::function<cplx(double)>& f) {
  const Index half = exact_integer(omega / step, "line half-width");
  const Index m = 2 * half;
  if (m < 2) throw InputError("line grid needs at least 2 samples");
  std::vector<cplx> s(static_cast<std::size_t>(m));
  for (Index j = 0; j < m; ++j) {
    s[static_cast<std::size_t>(j)] = f((static_cast<double>(j - half) + 0.5) * step);
  }
  return GridFunction(GridKind::Line, -static_cast<double>(half) * step, step, std::move(s));
}

Index GridFunction::offset() const { return exact_integer(lower_ / step_, "grid lower end"); }

cplx GridFunction::at_origin_index(Index m) const {
  const Index j = m - offset();
  if (j < 0 || j >= size()) return 0.0;
  return samples_[static_cast<std::size_t>(j)];
}

bool GridFunction::same_grid(const GridFunction& other) const {
  return kind_ == other.kind_ && size() == other.size() &&
         std::abs(step_ - other.step_) <= 1e-14 * step_ &&
         std::abs(lower_ - other.lower_) <= 1e-12 * std::max(1.0, std::abs(lower_));
}

GridFunction GridFunction::with_samples(std::vector<cplx> samples) const {
  if (samples.size() != samples_.size()) throw InputError("with_samples: size mismatch");
  return GridFunction(kind_, lower_, step_, std::move(samples));
}

cplx GridFunction::integral() const { return pairwise_sum(std::span<const cplx>(samples_)) * step_; }

double GridFunction::squared_norm() const {
  std::vector<double> sq(samples_.size());
  for (std::size_t j = 0; j < samples_.size(); ++j) sq[j] = std::norm(samples_[j]);
  return pairwise_sum(sq) * step_;
}

cplx GridFunction::inner(const GridFunction& other) const {
  if (!same_grid(other)) throw InputError("inner: grid mismatch");
  std::vector<cplx> t(samples_.size());
  for (std::size_t j = 0; j < samples_.size(); ++j) t[j] = samples_[j] * std::conj(other.samples_[j]);
  return pairwise_sum(std::span<const cplx>(t)) * step_;
}

double GridFunction::max_abs_difference(const GridFunction& other) const {
  if (!same_grid(other)) throw InputError("max_abs_difference: grid mismatch");
  double m = 0.0;
  for (std::size_t j = 0; j < samples_.size(); ++j) m = std::max(m, std::abs(samples_[j] - other.samples_[j]));
  return m;
}

namespace {

std::vector<cplx> periodized_samples(const GridFunction& f, Index period_nodes, Index K) {
  std::vector<cplx> out(static_cast<std::size_t>(period_nodes));
  std::vector<cplx> terms;
  for (Index j = 0; j < period_nodes; ++j) {
    terms.clear();
    for (Index k = -K; k <= K; ++k) terms.push_back(f.at_origin_index(j + k * period_nodes));
    out[static_cast<std::size_t>(j)] = pairwise_sum(std::span<const cplx>(terms));
  }
  return out;
}

}  // namespace

Periodization periodize(const GridFunction& f, double a, Index K) {
  if (f.kind() != GridKind::Line) throw InputError("periodize expects a line grid");
  if (!(a > 0.0) || K < 0) throw InputError("periodize: need a > 0 and K >= 0");
  const Index p = exact_integer(a / f.step(), "period");
  if (p < 2) throw InputError("periodize: period shorter than two nodes");
  std::vector<cplx> base = periodized_samples(f, p, K);
  const std::vector<cplx> doubled = periodized_samples(f, p, 2 * K);
  Periodization result;
  double scale = 0.0;
  for (std::size_t j = 0; j < base.size(); ++j) {
    result.change = std::max(result.change, std::abs(base[j] - doubled[j]));
    scale = std::max(scale, std::abs(doubled[j]));
  }
  result.stabilized = result.change <= 1e-10 * (1.0 + scale);
  result.output = GridFunction(GridKind::Periodic, 0.0, f.step(), std::move(base));
  return result;
}

void write_csv(std::ostream& out, const GridFunction& f) {
  out << "node,re,im\n";
  out << std::setprecision(17);
  for (Index j = 0; j < f.size(); ++j) {
    out << f.node(j) << ',' << f[j].real() << ',' << f[j].imag() << '\n';
  }
}

GridFunction read_csv(std::istream& in, GridKind kind) {
  std::string line;
  std::vector<double> nodes;
  std::vector<cplx> samples;
  while (std::getline(in, line)) {
    if (line.empty() || line.rfind("node", 0) == 0) continue;
    std::istringstream row(line);
    double x = 0, re = 0, im = 0;
    char c1 = 0, c2 = 0;
    if (!(row >> x >> c1 >> re >> c2 >> im) || c1 != ',' || c2 != ',') {
      throw InputError("grid csv: malformed row '" + line + "'");
    }
    nodes.push_back(x);
    samples.emplace_back(re, im);
  }
  if (nodes.size() < 2) throw InputError("grid csv: need at least 2 rows");
  const double step = (nodes.back() - nodes.front()) / static_cast<double>(nodes.size() - 1);
  const double lower = nodes.front() - 0.5 * step;
  const double snapped = std::round(lower / step) * step;
  return GridFunction(kind, kind == GridKind::Periodic ? 0.0 : snapped, step, std::move(samples));
}

}  // namespace semiframe::hilbert
