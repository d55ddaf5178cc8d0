#include "semiframe/hilbert/families.hpp"

#include <cmath>
#include <random>

namespace semiframe::hilbert {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::vector<Eigen::VectorXcd> first_axis(Index dim) {
  Eigen::VectorXcd e1 = Eigen::VectorXcd::Zero(dim);
  e1(0) = 1.0;
  return {e1};
}

SparseColumn rank_two_column(Index dim, Index n, double scale) {
  SparseColumn c(dim);
  c.insert(0) = scale;
  c.insert(n - 1) = scale;
  return c;
}

SparseColumn random_column(unsigned long seed, Index position, Index dim, Index skip) {
  const std::vector<double> g = seeded_gaussians(seed, static_cast<unsigned long>(position), 2 * dim);
  SparseColumn c(dim);
  c.reserve(dim);
  for (Index k = skip; k < dim; ++k) {
    const auto i = static_cast<std::size_t>(2 * k);
    c.insert(k) = cplx(g[i], g[i + 1]) / std::sqrt(2.0);
  }
  return c;
}

}  // namespace

std::vector<double> seeded_gaussians(unsigned long seed, unsigned long stream, Index count) {
  std::mt19937_64 rng(splitmix64(splitmix64(seed) ^ stream));
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> out(static_cast<std::size_t>(count));
  for (double& x : out) x = normal(rng);
  return out;
}

VectorFamily orthonormal() {
  return VectorFamily(
      "orthonormal", nlohmann::ordered_json::object(), IndexSet{IndexSet::Kind::Natural, 1},
      [](Index p, Index dim) {
        SparseColumn c(dim);
        c.insert(p) = 1.0;
        return c;
      },
      [](Index n) { return n; });
}

VectorFamily diana() {
  return VectorFamily(
             "diana", nlohmann::ordered_json::object(), IndexSet{IndexSet::Kind::Natural, 2},
             [](Index p, Index dim) { return rank_two_column(dim, p + 2, 1.0); },
             [](Index n) { return n + 1; })
      .with_complement(first_axis)
      .with_lower_bound(1.0);
}

VectorFamily stoeva() {
  return VectorFamily(
             "stoeva", nlohmann::ordered_json::object(), IndexSet{IndexSet::Kind::Natural, 2},
             [](Index p, Index dim) {
               const Index n = p + 2;
               return rank_two_column(dim, n, static_cast<double>(n));
             },
             [](Index n) { return n + 1; })
      .with_complement(first_axis)
      .with_lower_bound(4.0);
}

VectorFamily diagonal(double power, double coefficient) {
  nlohmann::ordered_json params{{"power", power}, {"coefficient", coefficient}};
  return VectorFamily(
      "diagonal", params, IndexSet{IndexSet::Kind::Natural, 1},
      [power, coefficient](Index p, Index dim) {
        SparseColumn c(dim);
        c.insert(p) = coefficient * std::pow(static_cast<double>(p + 1), power);
        return c;
      },
      [](Index n) { return n; });
}

VectorFamily interleaved_chi() {
  return VectorFamily(
      "interleaved-chi", nlohmann::ordered_json::object(), IndexSet{IndexSet::Kind::Natural, 1},
      [](Index p, Index dim) {
        SparseColumn c(dim);
        if (p % 2 == 0) {
          const Index n = p / 2 + 1;
          if (n == 1) {
            c.insert(0) = 1.0;
          } else {
            const double w = std::pow(static_cast<double>(n), 1.6);
            c.insert(n - 2) = -w;
            c.insert(n - 1) = w;
          }
        } else {
          const Index n = (p + 1) / 2;
          c.insert(n - 1) = std::sqrt(static_cast<double>(n));
        }
        return c;
      },
      [](Index n) { return (n + 1) / 2; });
}

VectorFamily random_lower_semi_frame(unsigned long seed) {
  nlohmann::ordered_json params{{"seed", seed}};
  return VectorFamily(
             "random-lsf", params, IndexSet{IndexSet::Kind::Natural, 1},
             [seed](Index p, Index dim) {
               SparseColumn c = random_column(seed, p, dim, 1);
               c.coeffRef(0) = 1.0;
               return c;
             },
             [](Index) { return Index{2}; })
      .with_complement(first_axis);
}

VectorFamily random_frame(unsigned long seed) {
  nlohmann::ordered_json params{{"seed", seed}};
  return VectorFamily(
      "random-frame", params, IndexSet{IndexSet::Kind::Natural, 1},
      [seed](Index p, Index dim) {
        SparseColumn c = random_column(seed, p, dim, 0);
        c /= std::sqrt(static_cast<double>(dim));
        return c;
      },
      [](Index) { return Index{1}; });
}

}  // namespace semiframe::hilbert
