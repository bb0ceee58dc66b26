#include "knm/spectrum.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <stdexcept>

namespace knm {

RealVector diagonalize(const RealMatrix& H) {
  if (H.rows() != H.cols()) {
    throw std::invalid_argument("diagonalize requires a square matrix");
  }
  const double scale = std::max(1.0, H.cwiseAbs().maxCoeff());
  const double asym = (H - H.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * scale) {
    throw std::invalid_argument("diagonalize requires a symmetric matrix");
  }
  Eigen::SelfAdjointEigenSolver<RealMatrix> solver(H);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigenvalue iteration failed to converge");
  }
  return solver.eigenvalues();
}

namespace {

// compositions of `total` into max(modes - 1, 0) parts
long long composition_count(int modes, int total) {
  if (modes <= 1) return total == 0 ? 1 : 0;
  return binomial(total + modes - 2, modes - 2);
}

}  // namespace

long long sector_degeneracy(int n, int m, int sum_l, int sum_k) {
  return composition_count(n, sum_l) * composition_count(m, sum_k);
}

CompletenessCount completeness_count(int n, int m, int particles) {
  CompletenessCount out;
  out.n = n;
  out.m = m;
  out.particles = particles;
  out.hilbert_dim = binomial(particles + n + m - 1, n + m - 1);
  out.labels_per_r.assign(particles + 1, 0);
  const int slots = (n - 1) + (m - 1);
  for (int r = 0; r <= particles; ++r) {
    const long long labels =
        slots == 0 ? (r == 0 ? 1 : 0) : binomial(r + slots - 1, slots - 1);
    out.labels_per_r[r] = labels;
    out.bethe_total += labels * (particles - r + 1);
  }
  return out;
}

MatchReport match_spectra(const RealVector& ed,
                          const std::vector<BaeEntry>& entries, double tol) {
  MatchReport report;
  std::vector<double> bethe;
  for (const BaeEntry& e : entries) {
    for (long long c = 0; c < e.degeneracy; ++c) bethe.push_back(e.energy);
  }
  std::sort(bethe.begin(), bethe.end());

  std::vector<bool> used(ed.size(), false);
  for (double E : bethe) {
    double best = std::numeric_limits<double>::infinity();
    int pick = -1;
    for (int i = 0; i < ed.size(); ++i) {
      if (used[i]) continue;
      const double gap = std::abs(ed[i] - E);
      if (gap < best) {
        best = gap;
        pick = i;
      }
    }
    if (pick >= 0 && best <= tol * std::max(1.0, std::abs(E))) {
      used[pick] = true;
      report.matched += 1;
      report.max_gap = std::max(report.max_gap, best);
    } else {
      report.unmatched_bethe.push_back(E);
    }
  }
  for (int i = 0; i < ed.size(); ++i) {
    if (!used[i]) report.unmatched_ed.push_back(ed[i]);
  }
  report.success = report.unmatched_ed.empty() && report.unmatched_bethe.empty();
  return report;
}

SpectrumReport assemble_spectrum(const ModelOperators& ops,
                                 const SolverConfig& cfg, double match_tol,
                                 bool exhaustive_labels) {
  const CouplingParams& p = ops.params;
  const int N = ops.particles;

  SpectrumReport report;
  const BaeContext ctx = BaeContext::make(ops);
  report.ed = diagonalize(ctx.hamiltonian);

  const std::vector<SectorLabel> labels = enumerate_sectors(p.n, p.m, N);
  std::map<std::pair<int, int>, const SectorLabel*> representative;
  for (const SectorLabel& label : labels) {
    representative.emplace(label.group(), &label);  // keeps the first seen
  }

  for (const auto& [group, label] : representative) {
    const long long deg = sector_degeneracy(p.n, p.m, group.first, group.second);
    if (label->r() == N) {
      BaeEntry entry;
      entry.sum_l = group.first;
      entry.sum_k = group.second;
      entry.energy = closed_form_energy(*label, p);
      entry.degeneracy = deg;
      entry.closed_form = true;
      report.entries.push_back(entry);
      continue;
    }
    SectorSolveResult solved = solve_bae(*label, ctx, cfg);
    if (!solved.complete()) report.sectors_complete = false;
    for (const BaeSolution& sol : solved.solutions) {
      if (!sol.valid) continue;
      BaeEntry entry;
      entry.sum_l = group.first;
      entry.sum_k = group.second;
      entry.energy = sol.energy.real();
      entry.degeneracy = deg;
      report.entries.push_back(entry);
    }
    report.group_results.push_back(std::move(solved));
  }

  if (exhaustive_labels) {
    for (const SectorLabel& label : labels) {
      if (label.r() == N) continue;
      LabelResult lr;
      lr.label = label;
      lr.result = solve_bae(label, ctx, cfg);
      report.label_results.push_back(std::move(lr));
    }
  }

  report.matching = match_spectra(report.ed, report.entries, match_tol);
  return report;
}

}  // namespace knm
