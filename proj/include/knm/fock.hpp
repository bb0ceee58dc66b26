#pragma once

// Bosonic Fock bases at fixed particle number and second-quantized
// operators as explicit matrices.

#include <Eigen/Dense>
#include <complex>
#include <map>
#include <vector>

namespace knm {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

// Occupation numbers per mode; entries sum to the basis particle number.
using OccupationVector = std::vector<int>;

long long binomial(int n, int k);

// All occupation vectors for `particles` bosons in `modes` modes, ordered
// lexicographically descending, with the inverse index map.
struct FockBasis {
  int modes = 0;
  int particles = 0;
  std::vector<OccupationVector> states;
  std::map<OccupationVector, int> index;

  int dim() const { return static_cast<int>(states.size()); }
  int find(const OccupationVector& occ) const;  // throws if absent
};

FockBasis enumerate_basis(int modes, int particles);

// Ladder operator for one mode, as a rectangular matrix between adjacent
// particle-number bases.  creation: `from` has N, `to` has N+1.
RealMatrix creation_matrix(const FockBasis& from, const FockBasis& to, int mode);
RealMatrix annihilation_matrix(const FockBasis& from, const FockBasis& to, int mode);

// Diagonal occupation-number matrix for one mode.
RealMatrix number_matrix(const FockBasis& basis, int mode);

enum class LadderKind { creation, annihilation };

// Linear combination sum_i coeffs[i] * ladder(modes[i]).
RealMatrix collective_operator(const FockBasis& from, const FockBasis& to,
                               const std::vector<int>& modes,
                               const RealVector& coeffs, LadderKind kind);

}  // namespace knm
