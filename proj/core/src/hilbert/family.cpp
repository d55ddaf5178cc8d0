#include "semiframe/hilbert/family.hpp"

#include <algorithm>
#include <random>

#include "semiframe/errors.hpp"

namespace semiframe::hilbert {

long IndexSet::label(Index position) const {
  if (kind == Kind::Natural) return first + static_cast<long>(position);
  const long p = static_cast<long>(position);
  return (p % 2 == 1) ? (p + 1) / 2 : -(p / 2);
}

std::string IndexSet::describe() const {
  if (kind == Kind::Natural) return "natural from " + std::to_string(first);
  return "integers in ord_Z order (0, 1, -1, 2, -2, ...)";
}

VectorFamily::VectorFamily(std::string name, nlohmann::ordered_json parameters, IndexSet index_set,
                           Generator generator, DimensionBound dimension_bound, BasisTag tag)
    : name_(std::move(name)),
      parameters_(std::move(parameters)),
      index_set_(index_set),
      generator_(std::move(generator)),
      dimension_bound_(std::move(dimension_bound)),
      tag_(tag) {}

VectorFamily VectorFamily::with_complement(ComplementRule rule) const {
  VectorFamily copy = *this;
  copy.complement_ = std::move(rule);
  return copy;
}

VectorFamily VectorFamily::with_lower_bound(double bound) const {
  VectorFamily copy = *this;
  copy.lower_bound_ = bound;
  return copy;
}

VectorFamily VectorFamily::permuted(std::vector<Index> order) const {
  require_permutation(order, static_cast<Index>(order.size()));
  VectorFamily copy = *this;
  if (!order_.empty()) {
    // Compose with the existing re-enumeration.
    for (Index p = static_cast<Index>(order.size()); p < static_cast<Index>(order_.size()); ++p) {
      order.push_back(p);
    }
    for (Index& p : order) p = source_position(p);
  }
  copy.order_ = std::move(order);
  return copy;
}

Index VectorFamily::source_position(Index position) const {
  if (position < static_cast<Index>(order_.size())) return order_[static_cast<std::size_t>(position)];
  return position;
}

long VectorFamily::label(Index position) const { return index_set_.label(source_position(position)); }

bool VectorFamily::compatible(const Level& level) const {
  return level.size >= 1 && level.dim >= 1 && level.dim >= dimension_bound_(level.size);
}

void VectorFamily::require_compatible(const Level& level) const {
  if (!compatible(level)) {
    throw InputError(name_ + ": level (" + std::to_string(level.dim) + "," +
                     std::to_string(level.size) + ") needs d >= " +
                     std::to_string(dimension_bound_(level.size)));
  }
}

std::vector<Eigen::VectorXcd> VectorFamily::complement(Index dim) const {
  if (!complement_) return {};
  return complement_(dim);
}

SparseColumn VectorFamily::column(Index position, Index dim) const {
  SparseColumn c = generator_(source_position(position), dim);
  if (c.size() != dim) throw InputError(name_ + ": generator returned wrong length");
  return c;
}

Eigen::MatrixXcd VectorFamily::synthesis_matrix(const Level& level) const {
  require_compatible(level);
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(level.dim, level.size);
  for (Index n = 0; n < level.size; ++n) {
    const SparseColumn c = column(n, level.dim);
    for (SparseColumn::InnerIterator it(c); it; ++it) d(it.index(), n) = it.value();
  }
  return d;
}

std::vector<CoefficientVector> VectorFamily::instantiate(const Level& level) const {
  const Eigen::MatrixXcd d = synthesis_matrix(level);
  std::vector<CoefficientVector> out;
  out.reserve(static_cast<std::size_t>(level.size));
  for (Index n = 0; n < level.size; ++n) out.emplace_back(d.col(n), tag_);
  return out;
}

nlohmann::ordered_json VectorFamily::descriptor() const {
  nlohmann::ordered_json j;
  j["name"] = name_;
  j["parameters"] = parameters_;
  j["index_set"] = index_set_.describe();
  if (order_.empty()) {
    j["enumeration"] = "declared";
  } else {
    j["enumeration"] = "permuted";
    j["order"] = order_;
  }
  j["basis"] = to_string(tag_);
  return j;
}

void require_permutation(const std::vector<Index>& order, Index n) {
  if (static_cast<Index>(order.size()) != n) throw InputError("ordering has wrong length");
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (Index p : order) {
    if (p < 0 || p >= n || seen[static_cast<std::size_t>(p)]) {
      throw InputError("ordering is not a permutation of the index window");
    }
    seen[static_cast<std::size_t>(p)] = 1;
  }
}

std::vector<Index> identity_order(Index n) {
  std::vector<Index> order(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
  return order;
}

std::vector<Index> random_permutation(Index n, unsigned long seed) {
  std::vector<Index> order = identity_order(n);
  std::mt19937_64 rng(seed);
  // Explicit Fisher-Yates so the result does not depend on the library's shuffle.
  for (Index i = n - 1; i > 0; --i) {
    const auto j = static_cast<Index>(rng() % static_cast<unsigned long>(i + 1));
    std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
  }
  return order;
}

}  // namespace semiframe::hilbert
