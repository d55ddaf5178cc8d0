#pragma once

#include <compare>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <nlohmann/json.hpp>

#include "semiframe/hilbert/coefficient_vector.hpp"
#include "semiframe/numeric.hpp"

namespace semiframe::hilbert {

// Truncation level: ambient dimension d and number of family members N.
struct Level {
  Index dim = 0;
  Index size = 0;
  auto operator<=>(const Level&) const = default;
};

// Natural: positions 0,1,2,... carry labels first, first+1, ...
// Integer: positions carry 0, 1, -1, 2, -2, ... (the ord_Z enumeration).
struct IndexSet {
  enum class Kind { Natural, Integer };
  Kind kind = Kind::Natural;
  long first = 1;

  long label(Index position) const;
  std::string describe() const;
};

using SparseColumn = Eigen::SparseVector<cplx>;

class VectorFamily {
 public:
  // Member at a 0-based position, as a vector of length dim.
  using Generator = std::function<SparseColumn(Index position, Index dim)>;
  // Smallest admissible dim for N members.
  using DimensionBound = std::function<Index(Index size)>;
  // Orthonormal directions spanning the complement of the closure of D(C) inside a dim-model.
  using ComplementRule = std::function<std::vector<Eigen::VectorXcd>(Index dim)>;

  VectorFamily(std::string name, nlohmann::ordered_json parameters, IndexSet index_set,
               Generator generator, DimensionBound dimension_bound,
               BasisTag tag = BasisTag::SequenceSpace);

  VectorFamily with_complement(ComplementRule rule) const;
  VectorFamily with_lower_bound(double bound) const;
  // Re-enumerate: new position p is old position order[p]; positions beyond order.size() unchanged.
  VectorFamily permuted(std::vector<Index> order) const;

  const std::string& name() const { return name_; }
  const nlohmann::ordered_json& parameters() const { return parameters_; }
  const IndexSet& index_set() const { return index_set_; }
  BasisTag basis_tag() const { return tag_; }
  Index min_dimension(Index size) const { return dimension_bound_(size); }
  bool compatible(const Level& level) const;
  void require_compatible(const Level& level) const;

  bool has_complement() const { return static_cast<bool>(complement_); }
  std::vector<Eigen::VectorXcd> complement(Index dim) const;
  std::optional<double> known_lower_bound() const { return lower_bound_; }

  // Natural index of the member at a position, after any re-enumeration.
  long label(Index position) const;

  SparseColumn column(Index position, Index dim) const;
  // d x N matrix whose columns are the first N members.
  Eigen::MatrixXcd synthesis_matrix(const Level& level) const;
  std::vector<CoefficientVector> instantiate(const Level& level) const;

  // name, parameters, enumeration order.
  nlohmann::ordered_json descriptor() const;

 private:
  Index source_position(Index position) const;

  std::string name_;
  nlohmann::ordered_json parameters_;
  IndexSet index_set_;
  Generator generator_;
  DimensionBound dimension_bound_;
  BasisTag tag_;
  ComplementRule complement_;
  std::optional<double> lower_bound_;
  std::vector<Index> order_;
};

// Validates that order is a permutation of 0..n-1; throws InputError otherwise.
void require_permutation(const std::vector<Index>& order, Index n);
std::vector<Index> identity_order(Index n);
// Deterministic uniformly random permutation of 0..n-1.
std::vector<Index> random_permutation(Index n, unsigned long seed);

}  // namespace semiframe::hilbert
