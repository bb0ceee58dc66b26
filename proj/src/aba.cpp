#include "knm/aba.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>

namespace knm {

namespace {

std::vector<int> a_side_modes(const CouplingParams& p) {
  std::vector<int> modes(p.n);
  for (int i = 0; i < p.n; ++i) modes[i] = i;
  return modes;
}

std::vector<int> b_side_modes(const CouplingParams& p) {
  std::vector<int> modes(p.m);
  for (int j = 0; j < p.m; ++j) modes[j] = p.n + j;
  return modes;
}

void check_label(const ModelOperators& ops, const SectorLabel& label) {
  const auto& p = ops.params;
  if (static_cast<int>(label.l.size()) != p.n - 1 ||
      static_cast<int>(label.k.size()) != p.m - 1) {
    throw std::invalid_argument("sector label lengths must be (n-1, m-1)");
  }
  for (int v : label.l) {
    if (v < 0) throw std::invalid_argument("sector label entries must be >= 0");
  }
  for (int v : label.k) {
    if (v < 0) throw std::invalid_argument("sector label entries must be >= 0");
  }
  if (label.r() > ops.particles) {
    throw std::invalid_argument("sector label exceeds the particle number");
  }
}

// C(u) = (u - omega + eta*N_B) A^+ + eta^-1 B^+
TowerOp monodromy_c(const ModelOperators& ops, Complex u) {
  const double eta = ops.sp.eta;
  const TowerOp fB =
      TowerOp::scalar(ops.tower, u - ops.sp.omega) + eta * ops.num_b;
  return fB * ops.cre_a + (1.0 / eta) * ops.cre_b;
}

using OpMat2 = std::array<std::array<TowerOp, 2>, 2>;

// Residual of R12(u-v) M1 N2 = N2 M1 R12(u-v) for 2x2 auxiliary matrices of
// tower operators, measured over sectors [0, hi].
double aux_exchange_residual(const Eigen::Matrix4cd& R, const OpMat2& M,
                             const OpMat2& N, int hi) {
  double sq = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < 2; ++k) {
        for (int l = 0; l < 2; ++l) {
          std::optional<TowerOp> lhs, rhs;
          for (int p = 0; p < 2; ++p) {
            for (int q = 0; q < 2; ++q) {
              const Complex rl = R(2 * i + j, 2 * p + q);
              if (rl != Complex(0.0)) {
                TowerOp term = (M[p][k] * N[q][l]) * rl;
                lhs = lhs ? (*lhs + term) : term;
              }
              const Complex rr = R(2 * p + q, 2 * k + l);
              if (rr != Complex(0.0)) {
                TowerOp term = (N[j][q] * M[i][p]) * rr;
                rhs = rhs ? (*rhs + term) : term;
              }
            }
          }
          const double part = (*lhs - *rhs).norm(0, hi);
          sq += part * part;
        }
      }
    }
  }
  return std::sqrt(sq);
}

}  // namespace

int SectorLabel::sum_l() const {
  int s = 0;
  for (int v : l) s += v;
  return s;
}

int SectorLabel::sum_k() const {
  int s = 0;
  for (int v : k) s += v;
  return s;
}

std::string SectorLabel::to_string() const {
  auto join = [](const std::vector<int>& xs) {
    std::string out;
    for (size_t i = 0; i < xs.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(xs[i]);
    }
    return out;
  };
  return "l=(" + join(l) + ") k=(" + join(k) + ")";
}

std::vector<SectorLabel> enumerate_sectors(int n, int m, int N) {
  if (n < 1 || m < 1) throw std::invalid_argument("n and m must be >= 1");
  if (N < 0) throw std::invalid_argument("N must be >= 0");
  const int slots = (n - 1) + (m - 1);
  std::vector<SectorLabel> out;
  std::vector<int> current(slots, 0);

  auto emit = [&]() {
    SectorLabel label;
    label.l.assign(current.begin(), current.begin() + (n - 1));
    label.k.assign(current.begin() + (n - 1), current.end());
    out.push_back(std::move(label));
  };

  for (int r = 0; r <= N; ++r) {
    if (slots == 0) {
      if (r == 0) emit();
      continue;
    }
    // compositions of r into `slots` parts, first slot largest first
    auto rec = [&](auto&& self, int slot, int remaining) -> void {
      if (slot == slots - 1) {
        current[slot] = remaining;
        emit();
        return;
      }
      for (int c = remaining; c >= 0; --c) {
        current[slot] = c;
        self(self, slot + 1, remaining - c);
      }
    };
    rec(rec, 0, r);
  }
  return out;
}

ModelOperators ModelOperators::build(const CouplingParams& p, int N,
                                     int headroom) {
  p.validate();
  if (N < 0) throw std::invalid_argument("N must be >= 0");
  if (headroom < 0) throw std::invalid_argument("headroom must be >= 0");

  const SpectralParams sp = to_spectral(p);
  ComplementBasis comp = complement_basis(p.alpha, p.beta);
  TowerPtr tower = std::make_shared<const FockTower>(p.n + p.m, N + headroom);

  const std::vector<int> am = a_side_modes(p);
  const std::vector<int> bm = b_side_modes(p);

  ModelOperators ops{
      p,
      sp,
      std::move(comp),
      N,
      tower,
      TowerOp::ladder(tower, am, p.alpha, LadderKind::creation),
      TowerOp::ladder(tower, am, p.alpha, LadderKind::annihilation),
      TowerOp::ladder(tower, bm, p.beta, LadderKind::creation),
      TowerOp::ladder(tower, bm, p.beta, LadderKind::annihilation),
      TowerOp::number(tower, am),
      TowerOp::number(tower, bm),
      {},
      {},
      {},
      {}};

  for (const RealVector& mu : ops.comp.mu) {
    ops.cre_gamma.push_back(TowerOp::ladder(ops.tower, am, mu, LadderKind::creation));
    ops.ann_gamma.push_back(TowerOp::ladder(ops.tower, am, mu, LadderKind::annihilation));
  }
  for (const RealVector& nu : ops.comp.nu) {
    ops.cre_gammabar.push_back(TowerOp::ladder(ops.tower, bm, nu, LadderKind::creation));
    ops.ann_gammabar.push_back(TowerOp::ladder(ops.tower, bm, nu, LadderKind::annihilation));
  }
  return ops;
}

Eigen::Matrix4cd r_matrix(Complex u, double eta) {
  const Complex b = u / (u + eta);
  const Complex c = eta / (u + eta);
  Eigen::Matrix4cd R = Eigen::Matrix4cd::Zero();
  R(0, 0) = 1.0;
  R(1, 1) = b;
  R(1, 2) = c;
  R(2, 1) = c;
  R(2, 2) = b;
  R(3, 3) = 1.0;
  return R;
}

double ybe_residual(Complex u, Complex v, double eta) {
  using Mat8 = Eigen::Matrix<Complex, 8, 8>;
  const Eigen::Matrix4cd R12 = r_matrix(u - v, eta);
  const Eigen::Matrix4cd R13 = r_matrix(u, eta);
  const Eigen::Matrix4cd R23 = r_matrix(v, eta);

  auto embed = [](const Eigen::Matrix4cd& R, int s1, int s2) {
    // place R on tensor slots (s1, s2) of C^2 x C^2 x C^2
    Mat8 out = Mat8::Zero();
    int idx[3], jdx[3];
    for (int i = 0; i < 8; ++i) {
      idx[0] = (i >> 2) & 1; idx[1] = (i >> 1) & 1; idx[2] = i & 1;
      for (int j = 0; j < 8; ++j) {
        jdx[0] = (j >> 2) & 1; jdx[1] = (j >> 1) & 1; jdx[2] = j & 1;
        bool spectator_ok = true;
        for (int s = 0; s < 3; ++s) {
          if (s != s1 && s != s2 && idx[s] != jdx[s]) spectator_ok = false;
        }
        if (!spectator_ok) continue;
        out(i, j) = R(2 * idx[s1] + idx[s2], 2 * jdx[s1] + jdx[s2]);
      }
    }
    return out;
  };

  const Mat8 L = embed(R12, 0, 1) * embed(R13, 0, 2) * embed(R23, 1, 2);
  const Mat8 Rh = embed(R23, 1, 2) * embed(R13, 0, 2) * embed(R12, 0, 1);
  return (L - Rh).norm();
}

std::array<std::array<TowerOp, 2>, 2> lax_matrix(const ModelOperators& ops,
                                                 LaxSide side, Complex u) {
  const double eta = ops.sp.eta;
  const TowerOp& num = (side == LaxSide::a) ? ops.num_a : ops.num_b;
  const TowerOp& ann = (side == LaxSide::a) ? ops.ann_a : ops.ann_b;
  const TowerOp& cre = (side == LaxSide::a) ? ops.cre_a : ops.cre_b;
  return {{{TowerOp::scalar(ops.tower, u) + eta * num, ann},
           {cre, TowerOp::scalar(ops.tower, 1.0 / eta)}}};
}

double rll_residual(const ModelOperators& ops, LaxSide side, Complex u,
                    Complex v) {
  const OpMat2 Lu = lax_matrix(ops, side, u);
  const OpMat2 Lv = lax_matrix(ops, side, v);
  return aux_exchange_residual(r_matrix(u - v, ops.sp.eta), Lu, Lv,
                               ops.particles);
}

Monodromy monodromy(const ModelOperators& ops, Complex u) {
  const double eta = ops.sp.eta;
  const double omega = ops.sp.omega;
  const TowerOp fA = TowerOp::scalar(ops.tower, u + omega) + eta * ops.num_a;
  const TowerOp fB = TowerOp::scalar(ops.tower, u - omega) + eta * ops.num_b;
  return Monodromy{
      u,
      fA * fB + ops.ann_a * ops.cre_b,
      fA * ops.ann_b + (1.0 / eta) * ops.ann_a,
      monodromy_c(ops, u),
      ops.cre_a * ops.ann_b + TowerOp::scalar(ops.tower, 1.0 / (eta * eta))};
}

Monodromy monodromy_from_lax(const ModelOperators& ops, Complex u) {
  const OpMat2 La = lax_matrix(ops, LaxSide::a, u + ops.sp.omega);
  const OpMat2 Lb = lax_matrix(ops, LaxSide::b, u - ops.sp.omega);
  auto entry = [&](int i, int k) {
    TowerOp sum = La[i][0] * Lb[0][k];
    return sum + La[i][1] * Lb[1][k];
  };
  return Monodromy{u, entry(0, 0), entry(0, 1), entry(1, 0), entry(1, 1)};
}

double monodromy_crosscheck(const ModelOperators& ops, Complex u) {
  const Monodromy closed = monodromy(ops, u);
  const Monodromy product = monodromy_from_lax(ops, u);
  const int hi = ops.particles;
  double worst = 0.0;
  worst = std::max(worst, (closed.A - product.A).norm(0, hi));
  worst = std::max(worst, (closed.B - product.B).norm(0, hi));
  worst = std::max(worst, (closed.C - product.C).norm(0, hi));
  worst = std::max(worst, (closed.D - product.D).norm(0, hi));
  return worst;
}

TowerOp transfer_matrix(const ModelOperators& ops, Complex u) {
  const Monodromy M = monodromy(ops, u);
  return M.A + M.D;
}

double rtt_residual(const ModelOperators& ops, Complex u, Complex v) {
  const Monodromy Tu = monodromy(ops, u);
  const Monodromy Tv = monodromy(ops, v);
  const OpMat2 Mu = {{{Tu.A, Tu.B}, {Tu.C, Tu.D}}};
  const OpMat2 Mv = {{{Tv.A, Tv.B}, {Tv.C, Tv.D}}};
  return aux_exchange_residual(r_matrix(u - v, ops.sp.eta), Mu, Mv,
                               ops.particles);
}

double exchange_ac_residual(const ModelOperators& ops, Complex u, Complex v) {
  const double eta = ops.sp.eta;
  const Monodromy Tu = monodromy(ops, u);
  const Monodromy Tv = monodromy(ops, v);
  const TowerOp lhs = Tu.A * Tv.C;
  const TowerOp rhs = ((u - v + eta) / (u - v)) * (Tv.C * Tu.A) -
                      (eta / (u - v)) * (Tu.C * Tv.A);
  return (lhs - rhs).norm(0, ops.particles);
}

double exchange_dc_residual(const ModelOperators& ops, Complex u, Complex v) {
  const double eta = ops.sp.eta;
  const Monodromy Tu = monodromy(ops, u);
  const Monodromy Tv = monodromy(ops, v);
  const TowerOp lhs = Tu.D * Tv.C;
  const TowerOp rhs = ((u - v - eta) / (u - v)) * (Tv.C * Tu.D) +
                      (eta / (u - v)) * (Tu.C * Tv.D);
  return (lhs - rhs).norm(0, ops.particles);
}

double transfer_commutator_norm(const ModelOperators& ops, Complex u,
                                Complex v) {
  const TowerOp tu = transfer_matrix(ops, u);
  const TowerOp tv = transfer_matrix(ops, v);
  return (tu * tv - tv * tu).norm(0, ops.particles);
}

TransferCoefficients transfer_coefficients(const ModelOperators& ops) {
  const std::array<Complex, 3> us = {0.3, -0.7, 1.1};
  Eigen::Matrix3cd V;
  for (int i = 0; i < 3; ++i) {
    V(i, 0) = 1.0;
    V(i, 1) = us[i];
    V(i, 2) = us[i] * us[i];
  }
  const Eigen::Matrix3cd Vi = V.inverse();
  std::array<Matrix, 3> samples;
  for (int i = 0; i < 3; ++i) {
    samples[i] = transfer_matrix(ops, us[i]).block(ops.particles);
  }
  TransferCoefficients out;
  Matrix* coeffs[3] = {&out.c0, &out.c1, &out.c2};
  for (int c = 0; c < 3; ++c) {
    *coeffs[c] = Vi(c, 0) * samples[0] + Vi(c, 1) * samples[1] +
                 Vi(c, 2) * samples[2];
  }
  return out;
}

Vector pseudovacuum(const ModelOperators& ops, const SectorLabel& label) {
  check_label(ops, label);
  Vector state(1);
  state[0] = 1.0;
  int sector = 0;
  for (size_t i = 0; i < label.l.size(); ++i) {
    for (int q = 0; q < label.l[i]; ++q) {
      state = ops.cre_gamma[i].apply(sector, state);
      ++sector;
    }
  }
  for (size_t j = 0; j < label.k.size(); ++j) {
    for (int q = 0; q < label.k[j]; ++q) {
      state = ops.cre_gammabar[j].apply(sector, state);
      ++sector;
    }
  }
  state /= state.norm();
  return state;
}

PseudovacuumResiduals pseudovacuum_residuals(const ModelOperators& ops,
                                             const SectorLabel& label,
                                             Complex u) {
  const Vector phi = pseudovacuum(ops, label);
  const int r = label.r();
  const Monodromy M = monodromy(ops, u);
  const double eta = ops.sp.eta;
  const Complex a_eig = (u + ops.sp.omega + eta * double(label.sum_l())) *
                        (u - ops.sp.omega + eta * double(label.sum_k()));
  PseudovacuumResiduals res{};
  res.b_annihilation = M.B.apply(r, phi).norm();
  res.d_eigenvalue = (M.D.apply(r, phi) - (1.0 / (eta * eta)) * phi).norm();
  res.a_eigenvalue = (M.A.apply(r, phi) - a_eig * phi).norm();
  return res;
}

Vector bethe_state(const ModelOperators& ops, const SectorLabel& label,
                   const std::vector<Complex>& roots) {
  check_label(ops, label);
  const int r = label.r();
  if (static_cast<int>(roots.size()) != ops.particles - r) {
    throw std::invalid_argument("root count must equal N - r");
  }
  Vector state = pseudovacuum(ops, label);
  int sector = r;
  for (const Complex& v : roots) {
    state = monodromy_c(ops, v).apply(sector, state);
    ++sector;
  }
  return state;
}

std::vector<double> q_eigenvalue_check(const ModelOperators& ops,
                                       const SectorLabel& label,
                                       const Vector& state) {
  check_label(ops, label);
  const double nrm = state.norm();
  if (nrm == 0.0) throw std::invalid_argument("state must be nonzero");
  const int N = ops.particles;
  std::vector<double> out;
  out.reserve(ops.cre_gamma.size() + ops.cre_gammabar.size());
  for (size_t j = 0; j < ops.cre_gamma.size(); ++j) {
    const Vector lowered = ops.ann_gamma[j].apply(N, state);
    const Vector q = ops.cre_gamma[j].apply(N - 1, lowered);
    out.push_back((q - double(label.l[j]) * state).norm() / nrm);
  }
  for (size_t j = 0; j < ops.cre_gammabar.size(); ++j) {
    const Vector lowered = ops.ann_gammabar[j].apply(N, state);
    const Vector q = ops.cre_gammabar[j].apply(N - 1, lowered);
    out.push_back((q - double(label.k[j]) * state).norm() / nrm);
  }
  return out;
}

Complex transfer_eigenvalue(const SpectralParams& sp, const SectorLabel& label,
                            const std::vector<Complex>& roots, Complex u) {
  const double eta = sp.eta;
  const Complex P = (u + sp.omega + eta * double(label.sum_l())) *
                    (u - sp.omega + eta * double(label.sum_k()));
  Complex up = 1.0, down = 1.0;
  for (const Complex& v : roots) {
    up *= (u - v + eta) / (u - v);
    down *= (u - v - eta) / (u - v);
  }
  return P * up + down / (eta * eta);
}

}  // namespace knm
