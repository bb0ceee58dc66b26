#pragma once

// Per-sector root systems: residuals, the multi-start Newton solver on the
// denominator-cleared polynomial form, spurious-solution filtering, and
// energies.

#include "knm/aba.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace knm {

struct SolverConfig {
  int max_starts = 500;
  double newton_tol = 1e-12;
  int max_iter = 200;
  double dedup_tol = 1e-7;
  double classify_tol = 1e-6;
  std::uint64_t seed = 0;
};

struct BaeDiagnostics {
  double bae_residual = 0.0;        // cleared-form residual 2-norm
  double u_independence_gap = 0.0;  // max energy spread across u samples
  double state_residual = 0.0;      // ||H psi - E psi|| / ||psi||
  bool pole_flag = false;           // some v_i - v_j approaches -eta
};

struct BaeSolution {
  SectorLabel sector;
  std::vector<Complex> roots;  // canonical order: by real, then imaginary part
  Complex energy = 0.0;
  BaeDiagnostics diagnostics;
  bool valid = false;
  std::string verdict_reason;  // empty for valid solutions
};

// Shared context for solving one model instance.
struct BaeContext {
  const ModelOperators& ops;
  RealMatrix hamiltonian;  // physical-sector block, for state residuals

  static BaeContext make(const ModelOperators& ops);
};

// Cleared-denominator residual vector of the root system
//   eta^2 P(v_i) prod_{j!=i}(v_i - v_j + eta) - prod_{j!=i}(v_i - v_j - eta)
// with P(u) = (u + omega + eta*sum_l)(u - omega + eta*sum_k).
// pole_flag is set when some |v_i - v_j + eta| is near zero.
Vector bae_residual(const std::vector<Complex>& roots, const SectorLabel& sector,
                    const SpectralParams& sp, bool* pole_flag = nullptr);

// Canonical root order for deduplication: by real part, then imaginary part.
std::vector<Complex> canonical_roots(std::vector<Complex> roots);

// Energy from the transfer-matrix eigenvalue, averaged over the u samples
// (default {0.37, -1.21, 2.03}, each shifted off any root), plus the max
// pairwise spread as the u-independence diagnostic.
struct EnergyEstimate {
  Complex energy = 0.0;
  double u_gap = 0.0;
};
EnergyEstimate energy_from_roots(const std::vector<Complex>& roots,
                                 const SectorLabel& sector,
                                 const SpectralParams& sp, double t, int N);

// Closed-form energy of a root-free (r = N) sector:
// U*(sum_l - sum_k)^2 + mu*(sum_l - sum_k).
double closed_form_energy(const SectorLabel& sector, const CouplingParams& p);

// Full validity assessment of one converged candidate: coincident roots,
// u-independence of the energy, and the Bethe-state residual.
BaeSolution classify_solution(const std::vector<Complex>& roots,
                              const SectorLabel& sector, const BaeContext& ctx,
                              const SolverConfig& cfg);

// Multi-start Newton search over one sector (requires r < N).  Returns
// deduplicated converged candidates, valid ones first, each sorted by
// energy real part; expected_valid = N - r + 1.
struct SectorSolveResult {
  SectorLabel sector;
  std::vector<BaeSolution> solutions;
  int expected_valid = 0;

  int valid_count() const;
  bool complete() const { return valid_count() == expected_valid; }
};
SectorSolveResult solve_bae(const SectorLabel& sector, const BaeContext& ctx,
                            const SolverConfig& cfg);

}  // namespace knm
