#include "semiframe/muckenhoupt/weight.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

#include "semiframe/errors.hpp"

namespace semiframe::muckenhoupt {

std::string decimal(const Real& x) {
  std::ostringstream out;
  out << std::setprecision(std::numeric_limits<Real>::max_digits10) << x;
  return out.str();
}

std::vector<Real> plateau_breakpoints(int k_max) {
  std::vector<Real> s{Real(0)};
  Real acc = 0;
  for (int j = 2; j <= k_max; ++j) {
    acc += boost::multiprecision::pow(Real(j), Real(-3 * j));
    s.push_back(acc);
  }
  return s;
}

Weight Weight::constant(double c) {
  if (!(c > 0.0)) throw InputError("constant weight must be positive");
  Weight w;
  w.kind_ = Kind::Constant;
  w.scale_ = c;
  return w;
}

Weight Weight::power(double alpha) {
  Weight w;
  w.kind_ = Kind::Power;
  w.alpha_ = alpha;
  return w;
}

Weight Weight::plateau(int k_max) {
  if (k_max < 2 || k_max > 12) {
    throw RefusedError("plateau weight needs 2 <= k_max <= 12 (interval lengths underflow beyond)", k_max);
  }
  Weight w;
  w.kind_ = Kind::Plateau;
  w.k_max_ = k_max;
  w.breaks_ = plateau_breakpoints(k_max);
  w.build_plateau_levels();
  return w;
}

Weight Weight::custom(std::vector<double> cell_values) {
  if (cell_values.size() < 2) throw InputError("custom weight needs at least 2 cells");
  for (double v : cell_values) {
    if (!(v > 0.0) || !std::isfinite(v)) throw InputError("custom weight must be positive and finite on every cell");
  }
  Weight w;
  w.kind_ = Kind::Custom;
  w.cells_ = std::move(cell_values);
  w.build_custom_prefix();
  return w;
}

Weight Weight::parse(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw InputError("weight spec must look like kind:parameter");
  const std::string kind = spec.substr(0, colon);
  const std::string arg = spec.substr(colon + 1);
  try {
    if (kind == "constant") return constant(std::stod(arg));
    if (kind == "power") return power(std::stod(arg));
    if (kind == "plateau") return plateau(std::stoi(arg));
  } catch (const std::logic_error& e) {
    if (dynamic_cast<const InputError*>(&e)) throw;
    throw InputError("weight spec '" + spec + "': bad parameter");
  }
  throw InputError("unknown weight kind '" + kind + "'");
}

void Weight::build_custom_prefix() {
  const auto m = static_cast<double>(cells_.size());
  cell_prefix_pos_.assign(1, Real(0));
  cell_prefix_neg_.assign(1, Real(0));
  for (double v : cells_) {
    cell_prefix_pos_.push_back(cell_prefix_pos_.back() + boost::multiprecision::pow(Real(v), Real(exponent_)) / m);
    cell_prefix_neg_.push_back(cell_prefix_neg_.back() + boost::multiprecision::pow(Real(v), Real(-exponent_)) / m);
  }
}

Weight Weight::pow(double e) const {
  Weight w = *this;
  w.exponent_ *= e;
  w.scale_ = std::pow(scale_, e);
  if (w.kind_ == Kind::Custom) w.build_custom_prefix();
  if (w.kind_ == Kind::Plateau) w.build_plateau_levels();
  return w;
}

Weight Weight::scaled(double c) const {
  if (!(c > 0.0)) throw InputError("weight scale must be positive");
  Weight w = *this;
  w.scale_ *= c;
  return w;
}

std::string Weight::name() const {
  std::ostringstream out;
  switch (kind_) {
    case Kind::Constant: out << "constant"; break;
    case Kind::Power: out << "power:" << alpha_; break;
    case Kind::Plateau: out << "plateau:" << k_max_; break;
    case Kind::Custom: out << "custom[" << cells_.size() << "]"; break;
  }
  if (exponent_ != 1.0 && kind_ != Kind::Constant) out << "^" << exponent_;
  if (scale_ != 1.0) out << "*" << scale_;
  return out.str();
}

nlohmann::ordered_json Weight::descriptor() const {
  nlohmann::ordered_json j;
  const char* kinds[] = {"constant", "power", "plateau", "custom"};
  j["kind"] = kinds[static_cast<int>(kind_)];
  j["scale"] = scale_;
  j["exponent"] = exponent_;
  if (kind_ == Kind::Power) j["alpha"] = alpha_;
  if (kind_ == Kind::Plateau) j["k_max"] = k_max_;
  if (kind_ == Kind::Custom) j["cells"] = cells_.size();
  return j;
}

Real Weight::plateau_level(int k, int sign) const {
  const auto& cache = sign > 0 ? levels_pos_ : levels_neg_;
  return cache[static_cast<std::size_t>(k - 2)];
}

void Weight::build_plateau_levels() {
  levels_pos_.clear();
  levels_neg_.clear();
  for (int k = 2; k <= k_max_; ++k) {
    levels_pos_.push_back(boost::multiprecision::pow(Real(k), Real(static_cast<double>(k) * exponent_)));
    levels_neg_.push_back(1 / levels_pos_.back());
  }
}

double Weight::value(double x) const {
  double profile = 1.0;
  switch (kind_) {
    case Kind::Constant: break;
    case Kind::Power: profile = std::pow(x, alpha_ * exponent_); break;
    case Kind::Plateau:
      for (int k = 2; k <= k_max_; ++k) {
        if (x < static_cast<double>(breaks_[static_cast<std::size_t>(k - 1)])) {
          profile = std::pow(static_cast<double>(k), k * exponent_);
          break;
        }
      }
      break;
    case Kind::Custom: {
      const auto m = static_cast<Index>(cells_.size());
      const Index j = std::clamp(static_cast<Index>(x * static_cast<double>(m)), Index{0}, m - 1);
      profile = std::pow(cells_[static_cast<std::size_t>(j)], exponent_);
      break;
    }
  }
  return scale_ * profile;
}

namespace {

void require_unit(const Interval& i) {
  if (!(i.lo >= 0) || !(i.hi <= 1) || !(i.lo < i.hi)) {
    throw InputError("interval must satisfy 0 <= lo < hi <= 1");
  }
}

Real overlap(const Real& a, const Real& b, const Real& lo, const Real& hi) {
  const Real l = a > lo ? a : lo;
  const Real r = b < hi ? b : hi;
  return r > l ? Real(r - l) : Real(0);
}

}  // namespace

Real Weight::profile_integral(const Interval& interval, int sign) const {
  require_unit(interval);
  const Real& lo = interval.lo;
  const Real& hi = interval.hi;
  switch (kind_) {
    case Kind::Constant: return hi - lo;
    case Kind::Power: {
      const long double beta = static_cast<long double>(alpha_) * exponent_ * sign;
      if (lo == 0 && beta <= -1.0L) return std::numeric_limits<Real>::infinity();
      const Real width = hi - lo;
      if (width > hi * Real(1e-12)) {
        // Long double suffices here; expm1/log1p avoid cancellation on narrow intervals.
        const auto l = static_cast<long double>(lo);
        const auto h = static_cast<long double>(hi);
        const auto d = static_cast<long double>(width);
        if (l == 0.0L) return Real(std::pow(h, beta + 1.0L) / (beta + 1.0L));
        const long double t = std::log1p(d / l);
        if (beta == -1.0L) return Real(t);
        const long double p = beta + 1.0L;
        return Real(std::pow(l, p) * std::expm1(p * t) / p);
      }
      const Real b = Real(alpha_ * exponent_ * sign);
      if (b == -1) return boost::multiprecision::log(hi / lo);
      return (boost::multiprecision::pow(hi, b + 1) - boost::multiprecision::pow(lo, b + 1)) / (b + 1);
    }
    case Kind::Plateau: {
      Real acc = 0;
      for (int k = 2; k <= k_max_; ++k) {
        const Real len = overlap(breaks_[static_cast<std::size_t>(k - 2)], breaks_[static_cast<std::size_t>(k - 1)], lo, hi);
        if (len > 0) acc += len * plateau_level(k, sign);
      }
      acc += overlap(breaks_.back(), Real(1), lo, hi);
      return acc;
    }
    case Kind::Custom: {
      const auto& prefix = sign > 0 ? cell_prefix_pos_ : cell_prefix_neg_;
      const auto m = static_cast<Index>(cells_.size());
      const auto cumulative = [&](const Real& x) {
        Real scaled = x * m;
        auto j = static_cast<Index>(scaled);
        j = std::clamp(j, Index{0}, m);
        Real c = prefix[static_cast<std::size_t>(j)];
        if (j < m) {
          const Real v = boost::multiprecision::pow(Real(cells_[static_cast<std::size_t>(j)]), Real(exponent_ * sign));
          c += (scaled - j) * v / m;
        }
        return c;
      };
      return cumulative(hi) - cumulative(lo);
    }
  }
  return 0;
}

Real Weight::integral(const Interval& interval, int sign) const {
  const Real s = sign > 0 ? Real(scale_) : Real(1) / Real(scale_);
  return profile_integral(interval, sign) * s;
}

std::vector<double> Weight::cell_means(Index cells, int sign) const {
  if (cells < 1) throw InputError("cell_means: need at least one cell");
  std::vector<double> means(static_cast<std::size_t>(cells));
  const double scale = sign > 0 ? scale_ : 1.0 / scale_;
  const auto exact = [&](Index j) {
    const Interval cell{Real(j) / cells, Real(j + 1) / cells};
    return static_cast<double>(integral(cell, sign) * cells);
  };
  if (kind_ == Kind::Plateau) {
    // Cells without a breakpoint inside carry a single plateau value.
    for (Index j = 0; j < cells; ++j) {
      const Real lo = Real(j) / cells, hi = Real(j + 1) / cells;
      int k = 2;
      bool straddles = false;
      for (; k <= k_max_; ++k) {
        const Real& s = breaks_[static_cast<std::size_t>(k - 1)];
        if (s > lo && s < hi) straddles = true;
        if (hi <= s) break;
      }
      means[static_cast<std::size_t>(j)] =
          straddles ? exact(j) : scale * static_cast<double>(k <= k_max_ ? plateau_level(k, sign) : Real(1));
    }
    return means;
  }
  if (kind_ == Kind::Power) {
    const long double beta = static_cast<long double>(alpha_) * exponent_ * sign;
    for (Index j = 0; j < cells; ++j) {
      const long double a = static_cast<long double>(j) / cells, b = static_cast<long double>(j + 1) / cells;
      long double m;
      if (beta == -1.0L) {
        m = j == 0 ? std::numeric_limits<long double>::infinity() : std::log(b / a) * cells;
      } else if (j == 0 && beta + 1.0L <= 0.0L) {
        m = std::numeric_limits<long double>::infinity();
      } else {
        m = (std::pow(b, beta + 1.0L) - (j == 0 ? 0.0L : std::pow(a, beta + 1.0L))) / (beta + 1.0L) * cells;
      }
      means[static_cast<std::size_t>(j)] = static_cast<double>(m) * scale;
    }
    return means;
  }
  for (Index j = 0; j < cells; ++j) means[static_cast<std::size_t>(j)] = exact(j);
  return means;
}

Interval plateau_witness(int k) {
  if (k < 2 || k > 11) throw InputError("plateau_witness: k outside 2..11");
  const std::vector<Real> s = plateau_breakpoints(k);
  const Real eps = boost::multiprecision::pow(Real(k + 1), Real(-3 * (k + 1))) / 2;
  return Interval{s.back() - eps, s.back() + eps};
}

Real plateau_witness_ratio(int k) {
  const Real a = boost::multiprecision::pow(Real(k), Real(2 * k));
  const Real b = boost::multiprecision::pow(Real(k + 1), Real(2 * (k + 1)));
  return (2 + a / b + b / a) / 4;
}

Real plateau_square_integral(int k_max) {
  Real acc = 0;
  for (int k = 2; k <= k_max; ++k) acc += boost::multiprecision::pow(Real(k), Real(-k));
  return acc + (1 - plateau_breakpoints(k_max).back());
}

}  // namespace semiframe::muckenhoupt
