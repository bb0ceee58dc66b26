#pragma once

// The multi-well tunneling Hamiltonian on a complete bipartite mode graph,
// its conserved operators, and the conversion between physical couplings
// (U, mu, t) and spectral couplings (eta, omega).

#include "knm/fock.hpp"
#include "knm/ortho.hpp"

#include <vector>

namespace knm {

// Physical couplings.  alpha/beta are the unit coefficient vectors of the
// collective tunneling modes; the tunneling amplitudes factorize as
// t_{i,j} = t * alpha_i * beta_j.
struct CouplingParams {
  int n = 0;  // a-side mode count
  int m = 0;  // b-side mode count
  double U = 0.0;
  double mu = 0.0;
  double t = 0.0;
  RealVector alpha;
  RealVector beta;

  void validate() const;  // throws std::invalid_argument naming the constraint
};

// Spectral-parameter couplings: U = -t*eta^2/4, mu = -t*omega*eta.
struct SpectralParams {
  double eta = 0.0;
  double omega = 0.0;
};

// eta is the positive root of -4U/t; requires U*t < 0.
SpectralParams to_spectral(const CouplingParams& p);

// Inverse map: fills U and mu of a params struct from (eta, omega, t).
CouplingParams make_params_physical(int n, int m, double U, double mu, double t,
                                    RealVector alpha, RealVector beta);
CouplingParams make_params_spectral(int n, int m, double eta, double omega,
                                    double t, RealVector alpha, RealVector beta);

// H = U*(N_A-N_B)^2 + mu*(N_A-N_B) + sum_{i,j} t_{i,j} (a_i b_j^+ + a_i^+ b_j)
// on the fixed-N basis; real symmetric.
RealMatrix build_hamiltonian(const CouplingParams& p, int N);

// N * identity on the fixed-N basis.
RealMatrix build_number_operator(const CouplingParams& p, int N);

// The (n-1)+(m-1) complement-mode number operators Q_i = G_i^+ G_i on the
// fixed-N basis; each commutes with H and with the others.
std::vector<RealMatrix> build_conserved_Q(const CouplingParams& p, int N,
                                          const ComplementBasis& comp);

// Frobenius norm of XY - YX.
double commutator_norm(const RealMatrix& X, const RealMatrix& Y);

}  // namespace knm
