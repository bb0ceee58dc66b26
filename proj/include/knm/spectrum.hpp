#pragma once

// Exact diagonalization, state counting, and matching of the root-system
// spectrum against the diagonalized one.

#include "knm/bae.hpp"

#include <vector>

namespace knm {

// Eigenvalues of a real symmetric matrix, ascending.  Throws when the
// asymmetry exceeds 1e-12 relative to the largest entry.
RealVector diagonalize(const RealMatrix& H);

// State counting: every label with total r contributes N - r + 1 states,
// and the grand total must equal the Fock-space dimension.
struct CompletenessCount {
  int n = 0, m = 0, particles = 0;
  long long hilbert_dim = 0;
  long long bethe_total = 0;
  std::vector<long long> labels_per_r;  // raw label count at each r = 0..N

  bool complete() const { return hilbert_dim == bethe_total; }
};
CompletenessCount completeness_count(int n, int m, int particles);

// Number of raw labels in the (sum_l, sum_k) group: compositions of sum_l
// into n-1 parts times compositions of sum_k into m-1 parts.
long long sector_degeneracy(int n, int m, int sum_l, int sum_k);

// One energy level produced by a root system (or the closed form at r = N),
// carried with the multiplicity of its label group.
struct BaeEntry {
  int sum_l = 0, sum_k = 0;
  double energy = 0.0;
  long long degeneracy = 1;
  bool closed_form = false;
};

// Greedy nearest-pair matching; each entry consumes `degeneracy` eigenvalues.
// A pair matches when the gap is within tol * max(1, |E|).
struct MatchReport {
  long long matched = 0;
  double max_gap = 0.0;
  std::vector<double> unmatched_ed;
  std::vector<double> unmatched_bethe;
  bool success = false;
};
MatchReport match_spectra(const RealVector& ed,
                          const std::vector<BaeEntry>& entries, double tol);

struct LabelResult {
  SectorLabel label;
  SectorSolveResult result;
};

// Full pipeline: diagonalize, solve one representative per label group
// (closed form at r = N), expand by group multiplicity, and match.
struct SpectrumReport {
  RealVector ed;
  std::vector<SectorSolveResult> group_results;  // one per group with r < N
  std::vector<BaeEntry> entries;
  std::vector<LabelResult> label_results;  // filled in exhaustive mode
  MatchReport matching;
  bool sectors_complete = true;  // every group produced N - r + 1 solutions
};
SpectrumReport assemble_spectrum(const ModelOperators& ops,
                                 const SolverConfig& cfg,
                                 double match_tol = 1e-6,
                                 bool exhaustive_labels = false);

}  // namespace knm
