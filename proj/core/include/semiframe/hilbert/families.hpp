#pragma once

#include "semiframe/hilbert/family.hpp"

namespace semiframe::hilbert {

// e_n, n >= 1.
VectorFamily orthonormal();
// e_1 + e_n, n >= 2. D(C) is {e_1}^perp; the complement direction is e_1.
VectorFamily diana();
// n (e_1 + e_n), n >= 2. Complement direction e_1; lower bound 4 on {e_1}^perp.
VectorFamily stoeva();
// c n^p e_n, n >= 1.
VectorFamily diagonal(double power, double coefficient = 1.0);
// xi_1, eta_1, xi_2, eta_2, ... with xi_1 = e_1, xi_n = n^(8/5)(e_n - e_{n-1}), eta_n = sqrt(n) e_n.
VectorFamily interleaved_chi();
// e_1 + v_n with v_n a seeded Gaussian vector orthogonal to e_1. Complement direction e_1.
VectorFamily random_lower_semi_frame(unsigned long seed);
// Seeded Gaussian vectors scaled by 1/sqrt(d); a frame of C^d once N >= d.
VectorFamily random_frame(unsigned long seed);

// Deterministic Gaussian stream keyed by (seed, stream).
std::vector<double> seeded_gaussians(unsigned long seed, unsigned long stream, Index count);

}  // namespace semiframe::hilbert
