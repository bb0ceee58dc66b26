#include "knm/bae.hpp"

#include "knm/rng.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace knm {

namespace {

Complex sector_poly(Complex u, const SectorLabel& sector,
                    const SpectralParams& sp) {
  return (u + sp.omega + sp.eta * double(sector.sum_l())) *
         (u - sp.omega + sp.eta * double(sector.sum_k()));
}

Complex sector_poly_deriv(Complex u, const SectorLabel& sector,
                          const SpectralParams& sp) {
  return (u + sp.omega + sp.eta * double(sector.sum_l())) +
         (u - sp.omega + sp.eta * double(sector.sum_k()));
}

using Roots = std::vector<Complex>;

Eigen::MatrixXcd bae_jacobian(const Roots& v, const SectorLabel& sector,
                              const SpectralParams& sp) {
  const int r = static_cast<int>(v.size());
  const double eta = sp.eta;
  Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(r, r);
  for (int i = 0; i < r; ++i) {
    Complex p_plus = 1.0, sum_plus = 0.0, sum_minus = 0.0;
    for (int a = 0; a < r; ++a) {
      if (a == i) continue;
      p_plus *= v[i] - v[a] + eta;
    }
    for (int c = 0; c < r; ++c) {
      if (c == i) continue;
      Complex q_plus = 1.0, q_minus = 1.0;
      for (int a = 0; a < r; ++a) {
        if (a == i || a == c) continue;
        q_plus *= v[i] - v[a] + eta;
        q_minus *= v[i] - v[a] - eta;
      }
      sum_plus += q_plus;
      sum_minus += q_minus;
      J(i, c) = -eta * eta * sector_poly(v[i], sector, sp) * q_plus + q_minus;
    }
    J(i, i) = eta * eta *
                  (sector_poly_deriv(v[i], sector, sp) * p_plus +
                   sector_poly(v[i], sector, sp) * sum_plus) -
              sum_minus;
  }
  return J;
}

double inf_norm(const Vector& v) {
  double worst = 0.0;
  for (int i = 0; i < v.size(); ++i) worst = std::max(worst, std::abs(v[i]));
  return worst;
}

// Damped Newton iteration on the cleared-form system; true on convergence.
bool newton_solve(Roots& v, const SectorLabel& sector, const SpectralParams& sp,
                  const SolverConfig& cfg) {
  const int r = static_cast<int>(v.size());
  // nudge exactly coincident seeds apart so the Jacobian is regular
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < i; ++j) {
      if (std::abs(v[i] - v[j]) < 1e-9) {
        v[i] += 1e-6 * double(i + 1) * Complex(1.0, 1.0);
      }
    }
  }
  Vector F = bae_residual(v, sector, sp);
  double fn = inf_norm(F);
  bool step_converged = false;
  for (int iter = 0; iter < cfg.max_iter && !step_converged; ++iter) {
    const Eigen::MatrixXcd J = bae_jacobian(v, sector, sp);
    const Eigen::VectorXcd dv = J.partialPivLu().solve(-F);
    if (!dv.allFinite()) return false;

    double lam = 1.0;
    Roots v2(r);
    Vector F2;
    double fn2 = 0.0;
    bool improved = false;
    for (int halving = 0; halving < 45; ++halving) {
      for (int i = 0; i < r; ++i) v2[i] = v[i] + lam * dv[i];
      F2 = bae_residual(v2, sector, sp);
      fn2 = inf_norm(F2);
      if (fn2 < fn) {
        improved = true;
        break;
      }
      lam *= 0.5;
    }
    if (!improved) return fn < cfg.newton_tol;

    double vscale = 1.0;
    for (int i = 0; i < r; ++i) vscale = std::max(vscale, std::abs(v2[i]));
    const double step = lam * inf_norm(dv);
    v = v2;
    F = std::move(F2);
    fn = fn2;
    if (step < cfg.newton_tol * vscale || fn < cfg.newton_tol) {
      step_converged = true;
    }
  }
  if (!step_converged) return false;

  // polish: full Newton steps while they strictly reduce the residual
  for (int p = 0; p < 3; ++p) {
    const Eigen::MatrixXcd J = bae_jacobian(v, sector, sp);
    const Eigen::VectorXcd dv = J.partialPivLu().solve(-F);
    if (!dv.allFinite()) break;
    Roots v2(r);
    for (int i = 0; i < r; ++i) v2[i] = v[i] + dv[i];
    Vector F2 = bae_residual(v2, sector, sp);
    const double fn2 = inf_norm(F2);
    if (fn2 >= fn) break;
    v = v2;
    F = std::move(F2);
    fn = fn2;
  }
  return true;
}

// Greedy nearest-pair distance between root multisets (infinite when the
// sizes differ).
double multiset_distance(const Roots& a, const Roots& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  std::vector<bool> used(b.size(), false);
  double worst = 0.0;
  for (const Complex& x : a) {
    double best = std::numeric_limits<double>::infinity();
    int pick = -1;
    for (size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(x - b[j]);
      if (d < best) {
        best = d;
        pick = static_cast<int>(j);
      }
    }
    used[pick] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

std::vector<Roots> build_seeds(const SectorLabel& sector,
                               const SpectralParams& sp, int n_roots,
                               const SolverConfig& cfg) {
  const double eta = sp.eta;
  const double omega = sp.omega;
  const double sl = sector.sum_l();
  const double sk = sector.sum_k();

  // closed-form solutions of the one-root system eta^2 P(v) = 1
  const Complex b = eta * eta * ((omega + eta * sl) + (-omega + eta * sk));
  const Complex a = eta * eta;
  const Complex c = eta * eta * (omega + eta * sl) * (-omega + eta * sk) - 1.0;
  const Complex disc = std::sqrt(b * b - 4.0 * a * c);
  const Complex q1 = (-b + disc) / (2.0 * a);
  const Complex q2 = (-b - disc) / (2.0 * a);

  std::vector<Roots> seeds;
  auto ladder = [&](Complex base, double dir, double center) {
    Roots s(n_roots);
    for (int j = 0; j < n_roots; ++j) {
      s[j] = base + dir * eta * (double(j) - center);
    }
    seeds.push_back(std::move(s));
  };
  const std::array<Complex, 4> bases = {q1, q2, Complex(-omega - eta * sl),
                                        Complex(omega - eta * sk)};
  for (const Complex& base : bases) {
    ladder(base, -1.0, 0.0);
    ladder(base, +1.0, 0.0);
    ladder(base, +1.0, (n_roots - 1) / 2.0);
  }
  // mixtures of the two closed-form points with downward ladders
  for (int split = 0; split <= n_roots; ++split) {
    Roots s;
    s.reserve(n_roots);
    for (int j = 0; j < split; ++j) s.push_back(q1 - eta * double(j));
    for (int j = 0; j < n_roots - split; ++j) s.push_back(q2 - eta * double(j));
    seeds.push_back(std::move(s));
  }

  // random starts fill the budget: half real, half complex
  const double scale = std::max({1.0, std::abs(omega) + eta * std::max(1.0, sl + sk),
                                 eta * double(n_roots)});
  SplitMix64 rng(cfg.seed ^ (0x9e3779b97f4a7c15ULL *
                             std::uint64_t(131 * sector.sum_l() + sector.sum_k() + 1)));
  while (static_cast<int>(seeds.size()) < cfg.max_starts) {
    Roots s(n_roots);
    const bool complex_draw = rng.uniform() < 0.5;
    for (int j = 0; j < n_roots; ++j) {
      const double re = scale * rng.normal();
      const double im = complex_draw ? scale * rng.normal() : 0.0;
      s[j] = Complex(re, im);
    }
    seeds.push_back(std::move(s));
  }
  seeds.resize(cfg.max_starts);
  return seeds;
}

}  // namespace

BaeContext BaeContext::make(const ModelOperators& ops) {
  RealMatrix H = build_hamiltonian(ops.params, ops.particles);
  return BaeContext{ops, std::move(H)};
}

Vector bae_residual(const std::vector<Complex>& roots,
                    const SectorLabel& sector, const SpectralParams& sp,
                    bool* pole_flag) {
  const int r = static_cast<int>(roots.size());
  const double eta = sp.eta;
  Vector F(r);
  bool pole = false;
  for (int i = 0; i < r; ++i) {
    Complex p_plus = 1.0, p_minus = 1.0;
    for (int j = 0; j < r; ++j) {
      if (j == i) continue;
      const Complex d = roots[i] - roots[j];
      if (std::abs(d + eta) < 1e-8 * std::max(1.0, eta)) pole = true;
      p_plus *= d + eta;
      p_minus *= d - eta;
    }
    F[i] = eta * eta * sector_poly(roots[i], sector, sp) * p_plus - p_minus;
  }
  if (pole_flag) *pole_flag = pole;
  return F;
}

std::vector<Complex> canonical_roots(std::vector<Complex> roots) {
  std::sort(roots.begin(), roots.end(), [](const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return roots;
}

EnergyEstimate energy_from_roots(const std::vector<Complex>& roots,
                                 const SectorLabel& sector,
                                 const SpectralParams& sp, double t, int N) {
  std::array<double, 3> samples = {0.37, -1.21, 2.03};
  for (double& u : samples) {
    bool clear = false;
    while (!clear) {
      clear = true;
      for (const Complex& v : roots) {
        if (std::abs(Complex(u, 0.0) - v) <= 1e-3) {
          u += 0.0917;
          clear = false;
          break;
        }
      }
    }
  }
  const double eta = sp.eta;
  std::array<Complex, 3> energies;
  for (int s = 0; s < 3; ++s) {
    const Complex u(samples[s], 0.0);
    const Complex lam = transfer_eigenvalue(sp, sector, roots, u);
    energies[s] = t * (lam + sp.omega * sp.omega - u * u - 1.0 / (eta * eta) -
                       u * eta * double(N) - eta * eta * double(N) * double(N) / 4.0);
  }
  EnergyEstimate est;
  est.energy = (energies[0] + energies[1] + energies[2]) / 3.0;
  est.u_gap = std::max({std::abs(energies[0] - energies[1]),
                        std::abs(energies[0] - energies[2]),
                        std::abs(energies[1] - energies[2])});
  return est;
}

double closed_form_energy(const SectorLabel& sector, const CouplingParams& p) {
  const double diff = double(sector.sum_l() - sector.sum_k());
  return p.U * diff * diff + p.mu * diff;
}

BaeSolution classify_solution(const std::vector<Complex>& roots,
                              const SectorLabel& sector, const BaeContext& ctx,
                              const SolverConfig& cfg) {
  BaeSolution sol;
  sol.sector = sector;
  sol.roots = canonical_roots(roots);

  const SpectralParams& sp = ctx.ops.sp;
  bool pole = false;
  sol.diagnostics.bae_residual = bae_residual(sol.roots, sector, sp, &pole).norm();
  sol.diagnostics.pole_flag = pole;

  const EnergyEstimate est = energy_from_roots(sol.roots, sector, sp,
                                               ctx.ops.params.t, ctx.ops.particles);
  sol.energy = est.energy;
  sol.diagnostics.u_independence_gap = est.u_gap;

  double root_scale = 1.0;
  for (const Complex& v : sol.roots) root_scale = std::max(root_scale, std::abs(v));
  for (size_t i = 0; i < sol.roots.size(); ++i) {
    for (size_t j = 0; j < i; ++j) {
      if (std::abs(sol.roots[i] - sol.roots[j]) < cfg.classify_tol * root_scale) {
        sol.verdict_reason = "coincident roots";
        return sol;
      }
    }
  }
  if (pole) {
    sol.verdict_reason = "pole configuration";
    return sol;
  }
  if (est.u_gap > cfg.classify_tol * std::max(1.0, std::abs(est.energy))) {
    sol.verdict_reason = "energy depends on the spectral parameter";
    return sol;
  }

  const Vector psi = bethe_state(ctx.ops, sector, sol.roots);
  const double psi_norm = psi.norm();
  if (!(psi_norm > 1e-12)) {
    sol.verdict_reason = "null Bethe vector";
    return sol;
  }
  const RealVector h_re = ctx.hamiltonian * psi.real();
  const RealVector h_im = ctx.hamiltonian * psi.imag();
  Vector h_psi(psi.size());
  for (int i = 0; i < psi.size(); ++i) h_psi[i] = Complex(h_re[i], h_im[i]);
  sol.diagnostics.state_residual = (h_psi - sol.energy * psi).norm() / psi_norm;
  if (sol.diagnostics.state_residual > cfg.classify_tol) {
    sol.verdict_reason = "Hamiltonian residual";
    return sol;
  }
  if (std::abs(sol.energy.imag()) >=
      1e-8 * std::max(1.0, std::abs(sol.energy.real()))) {
    sol.verdict_reason = "complex energy";
    return sol;
  }
  sol.valid = true;
  return sol;
}

int SectorSolveResult::valid_count() const {
  int c = 0;
  for (const BaeSolution& s : solutions) c += s.valid ? 1 : 0;
  return c;
}

SectorSolveResult solve_bae(const SectorLabel& sector, const BaeContext& ctx,
                            const SolverConfig& cfg) {
  const int N = ctx.ops.particles;
  const int n_roots = N - sector.r();
  if (n_roots <= 0) {
    throw std::invalid_argument(
        "sector has no root system (r = N); use the closed-form energy");
  }
  SectorSolveResult result;
  result.sector = sector;
  result.expected_valid = n_roots + 1;

  const SpectralParams& sp = ctx.ops.sp;
  std::vector<Roots> kept;
  for (Roots& seed : build_seeds(sector, sp, n_roots, cfg)) {
    if (!newton_solve(seed, sector, sp, cfg)) continue;
    const Roots candidate = canonical_roots(seed);
    bool duplicate = false;
    for (const Roots& prev : kept) {
      if (multiset_distance(candidate, prev) < cfg.dedup_tol) {
        duplicate = true;
        break;
      }
    }
    if (duplicate) continue;
    kept.push_back(candidate);
    result.solutions.push_back(classify_solution(candidate, sector, ctx, cfg));
  }

  std::stable_sort(result.solutions.begin(), result.solutions.end(),
                   [](const BaeSolution& a, const BaeSolution& b) {
                     if (a.valid != b.valid) return a.valid;
                     if (a.energy.real() != b.energy.real()) {
                       return a.energy.real() < b.energy.real();
                     }
                     return a.energy.imag() < b.energy.imag();
                   });
  return result;
}

}  // namespace knm
