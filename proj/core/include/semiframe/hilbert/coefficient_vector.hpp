#pragma once

#include <functional>
#include <string>

#include <Eigen/Dense>

#include "semiframe/numeric.hpp"

namespace semiframe::hilbert {

// Ambient model the coordinates refer to.
enum class BasisTag { SequenceSpace, UnitIntervalGrid, FourierGrid };

std::string to_string(BasisTag tag);

// Coordinates of a vector with respect to the orthonormal basis of its model.
class CoefficientVector {
 public:
  CoefficientVector() = default;
  explicit CoefficientVector(Eigen::VectorXcd entries, BasisTag tag = BasisTag::SequenceSpace);

  static CoefficientVector zeros(Index dim, BasisTag tag = BasisTag::SequenceSpace);
  // k is 1-based, so basis(d, 1) is e_1.
  static CoefficientVector basis(Index dim, Index k, BasisTag tag = BasisTag::SequenceSpace);
  // Coordinates k = 1..dim from a rule.
  static CoefficientVector from_rule(Index dim, const std::function<cplx(Index)>& rule,
                                     BasisTag tag = BasisTag::SequenceSpace);

  const Eigen::VectorXcd& entries() const { return entries_; }
  BasisTag basis_tag() const { return tag_; }
  Index size() const { return entries_.size(); }

  double squared_norm() const;
  double norm() const;

  CoefficientVector operator+(const CoefficientVector& other) const;
  CoefficientVector operator-(const CoefficientVector& other) const;
  CoefficientVector operator*(cplx scalar) const;

 private:
  Eigen::VectorXcd entries_;
  BasisTag tag_ = BasisTag::SequenceSpace;
};

// Linear in u, conjugate-linear in v. Throws InputError on tag or length mismatch.
cplx inner_product(const CoefficientVector& u, const CoefficientVector& v);

// Pairwise-summed squared norm of a raw coordinate vector.
double squared_norm(const Eigen::VectorXcd& v);

}  // namespace semiframe::hilbert
