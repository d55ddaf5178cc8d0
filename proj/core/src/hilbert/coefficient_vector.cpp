#include "semiframe/hilbert/coefficient_vector.hpp"

#include <cmath>
#include <vector>

#include "semiframe/errors.hpp"

namespace semiframe::hilbert {

std::string to_string(BasisTag tag) {
  switch (tag) {
    case BasisTag::SequenceSpace: return "sequence-space";
    case BasisTag::UnitIntervalGrid: return "unit-interval-grid";
    case BasisTag::FourierGrid: return "fourier-grid";
  }
  return "sequence-space";
}

CoefficientVector::CoefficientVector(Eigen::VectorXcd entries, BasisTag tag)
    : entries_(std::move(entries)), tag_(tag) {}

CoefficientVector CoefficientVector::zeros(Index dim, BasisTag tag) {
  return CoefficientVector(Eigen::VectorXcd::Zero(dim), tag);
}

CoefficientVector CoefficientVector::basis(Index dim, Index k, BasisTag tag) {
  if (k < 1 || k > dim) throw InputError("basis: index outside 1..dim");
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  v(k - 1) = 1.0;
  return CoefficientVector(std::move(v), tag);
}

CoefficientVector CoefficientVector::from_rule(Index dim, const std::function<cplx(Index)>& rule,
                                               BasisTag tag) {
  Eigen::VectorXcd v(dim);
  for (Index k = 0; k < dim; ++k) v(k) = rule(k + 1);
  return CoefficientVector(std::move(v), tag);
}

double squared_norm(const Eigen::VectorXcd& v) {
  std::vector<double> sq(static_cast<std::size_t>(v.size()));
  for (Index k = 0; k < v.size(); ++k) sq[static_cast<std::size_t>(k)] = std::norm(v(k));
  return pairwise_sum(sq);
}

double CoefficientVector::squared_norm() const { return hilbert::squared_norm(entries_); }
double CoefficientVector::norm() const { return std::sqrt(squared_norm()); }

namespace {
void require_match(const CoefficientVector& u, const CoefficientVector& v) {
  if (u.basis_tag() != v.basis_tag()) throw InputError("coefficient vectors live in different models");
  if (u.size() != v.size()) throw InputError("coefficient vectors have different lengths");
}
}  // namespace

CoefficientVector CoefficientVector::operator+(const CoefficientVector& other) const {
  require_match(*this, other);
  return CoefficientVector(entries_ + other.entries_, tag_);
}

CoefficientVector CoefficientVector::operator-(const CoefficientVector& other) const {
  require_match(*this, other);
  return CoefficientVector(entries_ - other.entries_, tag_);
}

CoefficientVector CoefficientVector::operator*(cplx scalar) const {
  return CoefficientVector(entries_ * scalar, tag_);
}

cplx inner_product(const CoefficientVector& u, const CoefficientVector& v) {
  require_match(u, v);
  std::vector<cplx> terms(static_cast<std::size_t>(u.size()));
  for (Index k = 0; k < u.size(); ++k) {
    terms[static_cast<std::size_t>(k)] = u.entries()(k) * std::conj(v.entries()(k));
  }
  return pairwise_sum(terms);
}

}  // namespace semiframe::hilbert
