#include "knm/model.hpp"

#include <cmath>
#include <stdexcept>

namespace knm {

void CouplingParams::validate() const {
  if (n < 1 || m < 1) throw std::invalid_argument("n and m must be >= 1");
  if (alpha.size() != n) throw std::invalid_argument("alpha length must equal n");
  if (beta.size() != m) throw std::invalid_argument("beta length must equal m");
  if (std::abs(alpha.squaredNorm() - 1.0) > 1e-12) {
    throw std::invalid_argument("alpha must satisfy sum alpha_i^2 = 1 within 1e-12");
  }
  if (std::abs(beta.squaredNorm() - 1.0) > 1e-12) {
    throw std::invalid_argument("beta must satisfy sum beta_j^2 = 1 within 1e-12");
  }
  if (t == 0.0) throw std::invalid_argument("t must be nonzero");
  if (U * t > 0.0) {
    throw std::invalid_argument("U*t must be <= 0 (imaginary eta out of scope)");
  }
}

SpectralParams to_spectral(const CouplingParams& p) {
  if (p.t == 0.0) throw std::invalid_argument("t must be nonzero");
  if (p.U * p.t > 0.0) {
    throw std::invalid_argument("U*t must be negative (imaginary eta out of scope)");
  }
  if (p.U == 0.0) {
    throw std::invalid_argument("U must be nonzero (eta = 0 is singular)");
  }
  SpectralParams sp;
  sp.eta = std::sqrt(-4.0 * p.U / p.t);
  sp.omega = -p.mu / (p.t * sp.eta);
  return sp;
}

CouplingParams make_params_physical(int n, int m, double U, double mu, double t,
                                    RealVector alpha, RealVector beta) {
  CouplingParams p;
  p.n = n;
  p.m = m;
  p.U = U;
  p.mu = mu;
  p.t = t;
  p.alpha = std::move(alpha);
  p.beta = std::move(beta);
  p.validate();
  return p;
}

CouplingParams make_params_spectral(int n, int m, double eta, double omega,
                                    double t, RealVector alpha, RealVector beta) {
  if (eta == 0.0) throw std::invalid_argument("eta must be nonzero");
  const double U = -t * eta * eta / 4.0;
  const double mu = -t * omega * eta;
  return make_params_physical(n, m, U, mu, t, std::move(alpha), std::move(beta));
}

RealMatrix build_hamiltonian(const CouplingParams& p, int N) {
  p.validate();
  const int M = p.n + p.m;
  const FockBasis basis = enumerate_basis(M, N);
  RealMatrix H = RealMatrix::Zero(basis.dim(), basis.dim());

  for (int c = 0; c < basis.dim(); ++c) {
    const OccupationVector& s = basis.states[c];
    int na = 0, nb = 0;
    for (int i = 0; i < p.n; ++i) na += s[i];
    for (int j = 0; j < p.m; ++j) nb += s[p.n + j];
    const double imbalance = double(na - nb);
    H(c, c) = p.U * imbalance * imbalance + p.mu * imbalance;
  }

  // tunneling: t_{i,j} (a_i^+ b_j + a_i b_j^+), built column by column
  OccupationVector moved;
  for (int c = 0; c < basis.dim(); ++c) {
    const OccupationVector& s = basis.states[c];
    for (int i = 0; i < p.n; ++i) {
      for (int j = 0; j < p.m; ++j) {
        const int bmode = p.n + j;
        if (s[bmode] == 0) continue;
        moved = s;
        moved[bmode] -= 1;
        moved[i] += 1;
        const double amp = p.t * p.alpha[i] * p.beta[j] *
                           std::sqrt(double(s[bmode])) *
                           std::sqrt(double(moved[i]));
        const int row = basis.find(moved);
        H(row, c) += amp;  // a_i^+ b_j term
        H(c, row) += amp;  // its adjoint
      }
    }
  }
  return H;
}

RealMatrix build_number_operator(const CouplingParams& p, int N) {
  const int dim = static_cast<int>(binomial(N + p.n + p.m - 1, p.n + p.m - 1));
  return double(N) * RealMatrix::Identity(dim, dim);
}

std::vector<RealMatrix> build_conserved_Q(const CouplingParams& p, int N,
                                          const ComplementBasis& comp) {
  const int M = p.n + p.m;
  const FockBasis at_n = enumerate_basis(M, N);
  std::vector<RealMatrix> out;
  if (N == 0) {
    // every complement number operator vanishes on the empty-particle space
    const RealMatrix zero = RealMatrix::Zero(1, 1);
    out.assign(comp.mu.size() + comp.nu.size(), zero);
    return out;
  }
  const FockBasis below = enumerate_basis(M, N - 1);

  std::vector<int> a_modes(p.n), b_modes(p.m);
  for (int i = 0; i < p.n; ++i) a_modes[i] = i;
  for (int j = 0; j < p.m; ++j) b_modes[j] = p.n + j;

  for (const RealVector& mu : comp.mu) {
    const RealMatrix ann =
        collective_operator(at_n, below, a_modes, mu, LadderKind::annihilation);
    out.push_back(ann.transpose() * ann);
  }
  for (const RealVector& nu : comp.nu) {
    const RealMatrix ann =
        collective_operator(at_n, below, b_modes, nu, LadderKind::annihilation);
    out.push_back(ann.transpose() * ann);
  }
  return out;
}

double commutator_norm(const RealMatrix& X, const RealMatrix& Y) {
  if (X.rows() != Y.rows() || X.cols() != Y.cols() || X.rows() != X.cols()) {
    throw std::invalid_argument("commutator requires equal square shapes");
  }
  return (X * Y - Y * X).norm();
}

}  // namespace knm
