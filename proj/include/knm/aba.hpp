#pragma once

// The quantum-inverse-scattering layer: R-matrix, Lax operators, monodromy
// entries, transfer matrix, pseudovacua, Bethe states, and the residuals of
// their defining identities, all realized as explicit matrices on the Fock
// tower.

#include "knm/model.hpp"
#include "knm/sector.hpp"
#include "knm/tower.hpp"

#include <array>
#include <vector>

namespace knm {

// Collective-mode tower operators for one model instance.  The tower keeps
// `headroom` sectors above the physical particle number so that operator
// products appearing in the algebra checks stay representable.
struct ModelOperators {
  CouplingParams params;
  SpectralParams sp;
  ComplementBasis comp;
  int particles;  // physical N
  TowerPtr tower;

  TowerOp cre_a, ann_a;  // collective A^+, A
  TowerOp cre_b, ann_b;  // collective B^+, B
  TowerOp num_a, num_b;  // N_A, N_B
  std::vector<TowerOp> cre_gamma, ann_gamma;        // complement modes, a side
  std::vector<TowerOp> cre_gammabar, ann_gammabar;  // complement modes, b side

  static ModelOperators build(const CouplingParams& p, int N, int headroom = 2);
};

// ---- auxiliary-space objects ----

// 4x4 su(2)-invariant R-matrix with b(u) = u/(u+eta), c(u) = eta/(u+eta).
Eigen::Matrix4cd r_matrix(Complex u, double eta);

// || R12(u-v) R13(u) R23(v) - R23(v) R13(u) R12(u-v) || on C^2 x C^2 x C^2.
double ybe_residual(Complex u, Complex v, double eta);

enum class LaxSide { a, b };

// 2x2 auxiliary matrix of tower operators [[u + eta*N_X, X], [X^+, 1/eta]].
std::array<std::array<TowerOp, 2>, 2> lax_matrix(const ModelOperators& ops,
                                                 LaxSide side, Complex u);

// || R12(u-v) L1(u) L2(v) - L2(v) L1(u) R12(u-v) || over sectors [0, N].
double rll_residual(const ModelOperators& ops, LaxSide side, Complex u,
                    Complex v);

// ---- monodromy and transfer matrix ----

struct Monodromy {
  Complex u;
  TowerOp A, B, C, D;  // A, D preserve N; B lowers; C raises
};

// Entries from their closed forms.
Monodromy monodromy(const ModelOperators& ops, Complex u);
// Independent construction multiplying the two Lax matrices blockwise.
Monodromy monodromy_from_lax(const ModelOperators& ops, Complex u);
// Max Frobenius distance between the two constructions over sectors [0, N].
double monodromy_crosscheck(const ModelOperators& ops, Complex u);

// tau(u) = A(u) + D(u).
TowerOp transfer_matrix(const ModelOperators& ops, Complex u);

// || R12(u-v) T1(u) T2(v) - T2(v) T1(u) R12(u-v) || over sectors [0, N].
double rtt_residual(const ModelOperators& ops, Complex u, Complex v);

// Exchange-relation residuals over sectors [0, N]:
//   A(u)C(v) = (u-v+eta)/(u-v) C(v)A(u) - eta/(u-v) C(u)A(v)
//   D(u)C(v) = (u-v-eta)/(u-v) C(v)D(u) + eta/(u-v) C(u)D(v)
double exchange_ac_residual(const ModelOperators& ops, Complex u, Complex v);
double exchange_dc_residual(const ModelOperators& ops, Complex u, Complex v);

// ||[tau(u), tau(v)]|| over sectors [0, N].
double transfer_commutator_norm(const ModelOperators& ops, Complex u, Complex v);

// Quadratic coefficients of tau: evaluates tau at three points and solves
// for the matrix coefficients (c0, c1, c2) on the physical sector.
struct TransferCoefficients {
  Matrix c0, c1, c2;
};
TransferCoefficients transfer_coefficients(const ModelOperators& ops);

// ---- pseudovacua and Bethe states ----

// Normalized pseudovacuum of a sector, living in the r-particle space.
Vector pseudovacuum(const ModelOperators& ops, const SectorLabel& label);

// Residuals of the pseudovacuum conditions at one spectral parameter:
// {||B(u) phi||, ||D(u) phi - eta^-2 phi||, ||A(u) phi - a(u) phi||} with
// a(u) = (u + omega + eta*sum_l)(u - omega + eta*sum_k).
struct PseudovacuumResiduals {
  double b_annihilation;
  double d_eigenvalue;
  double a_eigenvalue;
};
PseudovacuumResiduals pseudovacuum_residuals(const ModelOperators& ops,
                                             const SectorLabel& label,
                                             Complex u);

// Unnormalized Bethe state prod_i C(v_i) |phi_label> in the N-particle
// space; for r = N (no roots) this is the pseudovacuum itself.
Vector bethe_state(const ModelOperators& ops, const SectorLabel& label,
                   const std::vector<Complex>& roots);

// Per-operator deviations ||Q_j psi - l_j psi|| / ||psi|| for all complement
// number operators (a side then b side).
std::vector<double> q_eigenvalue_check(const ModelOperators& ops,
                                       const SectorLabel& label,
                                       const Vector& state);

// Transfer-matrix eigenvalue lambda(u) for a root set (the analytic
// expression whose poles cancel on BAE solutions).
Complex transfer_eigenvalue(const SpectralParams& sp, const SectorLabel& label,
                            const std::vector<Complex>& roots, Complex u);

}  // namespace knm
