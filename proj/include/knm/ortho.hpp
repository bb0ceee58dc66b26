#pragma once

// Deterministic orthonormal complements of the collective-mode coefficient
// vectors; these define the complement collective modes and their number
// operators.

#include "knm/fock.hpp"

#include <vector>

namespace knm {

// Orthonormal complement basis of a unit vector: mu[j] span alpha-perp,
// nu[j] span beta-perp.
struct ComplementBasis {
  std::vector<RealVector> mu;  // n-1 vectors of dimension n
  std::vector<RealVector> nu;  // m-1 vectors of dimension m
};

// Deterministic orthonormal basis of v-perp via a Householder reflection,
// sign-fixed so each vector's first nonzero entry is positive.
// Requires ||v|| = 1 within 1e-12; returns d-1 vectors (empty for d=1).
std::vector<RealVector> orthonormal_complement(const RealVector& v);

ComplementBasis complement_basis(const RealVector& alpha,
                                 const RealVector& beta);

}  // namespace knm
