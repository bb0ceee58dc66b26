#include "knm/model.hpp"
#include "knm/spectrum.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace knm;
using Catch::Approx;
using Catch::Matchers::ContainsSubstring;

namespace {

CouplingParams three_well() {
  RealVector alpha(2);
  alpha << 0.7071067811865475, 0.7071067811865475;
  RealVector beta(1);
  beta << 1.0;
  return make_params_physical(2, 1, 1.0, 0.5, -0.5, alpha, beta);
}

CouplingParams six_well() {
  RealVector alpha(3);
  alpha << 0.75, 0.43301270189221924, 0.5000000000000001;
  RealVector beta(3);
  beta << 0.6370811961317673, 0.30680213417660024, 0.7071067811865476;
  return make_params_physical(3, 3, 1.3, 0.5, -3.7, alpha, beta);
}

}  // namespace

TEST_CASE("coupling validation names the violated constraint", "[model]") {
  CouplingParams p = three_well();
  p.alpha[0] = 0.9;
  CHECK_THROWS_WITH(p.validate(), ContainsSubstring("alpha"));

  p = three_well();
  p.t = 0.0;
  CHECK_THROWS_WITH(p.validate(), ContainsSubstring("t must be nonzero"));

  p = three_well();
  p.U = -1.0;  // U*t = 0.5 > 0
  CHECK_THROWS_WITH(p.validate(), ContainsSubstring("U*t"));

  p = three_well();
  p.beta = RealVector(2);
  p.beta << 0.6, 0.8;
  CHECK_THROWS_WITH(p.validate(), ContainsSubstring("beta length"));
}

TEST_CASE("physical and spectral couplings are inverse maps", "[model]") {
  const CouplingParams p = three_well();
  const SpectralParams sp = to_spectral(p);
  CHECK(sp.eta == Approx(2.8284271247461903).margin(1e-14));
  CHECK(sp.omega == Approx(0.35355339059327373).margin(1e-14));

  const CouplingParams back = make_params_spectral(
      p.n, p.m, sp.eta, sp.omega, p.t, p.alpha, p.beta);
  CHECK(back.U == Approx(p.U).margin(1e-14));
  CHECK(back.mu == Approx(p.mu).margin(1e-14));

  const SpectralParams sp2 = to_spectral(six_well());
  CHECK(sp2.eta == Approx(1.1854979567276382).margin(1e-14));
  CHECK(sp2.omega == Approx(0.11399018814688829).margin(1e-14));

  CouplingParams free = three_well();
  free.U = 0.0;
  CHECK_THROWS_WITH(to_spectral(free), ContainsSubstring("U must be nonzero"));
}

TEST_CASE("Hamiltonian entries on the three-well model", "[model]") {
  const CouplingParams p = three_well();
  const RealMatrix H = build_hamiltonian(p, 3);
  const FockBasis basis = enumerate_basis(3, 3);
  REQUIRE(H.rows() == 10);

  // diagonal: U*(na-nb)^2 + mu*(na-nb)
  CHECK(H(basis.find({3, 0, 0}), basis.find({3, 0, 0})) == Approx(10.5));
  CHECK(H(basis.find({0, 0, 3}), basis.find({0, 0, 3})) == Approx(7.5));
  CHECK(H(basis.find({1, 1, 1}), basis.find({1, 1, 1})) == Approx(1.5));

  // tunneling: t * alpha_i * beta_j * sqrt(n_b) * sqrt(n_a + 1)
  const double amp = H(basis.find({0, 3, 0}), basis.find({0, 2, 1}));
  CHECK(amp == Approx(-0.6123724356957945).margin(1e-14));
  CHECK(H(basis.find({3, 0, 0}), basis.find({0, 0, 3})) == 0.0);

  CHECK((H - H.transpose()).norm() == 0.0);
}

TEST_CASE("spectrum is invariant under orthogonal rotations of alpha",
          "[model]") {
  const CouplingParams p = six_well();
  const RealVector before = diagonalize(build_hamiltonian(p, 3));

  // rotate alpha in the (2,3) coordinate plane; beta analogously in (1,2)
  const double c = std::cos(0.7), s = std::sin(0.7);
  CouplingParams q = p;
  q.alpha[1] = c * p.alpha[1] - s * p.alpha[2];
  q.alpha[2] = s * p.alpha[1] + c * p.alpha[2];
  q.beta[0] = c * p.beta[0] + s * p.beta[1];
  q.beta[1] = -s * p.beta[0] + c * p.beta[1];
  q.validate();

  const RealVector after = diagonalize(build_hamiltonian(q, 3));
  REQUIRE(before.size() == after.size());
  for (int i = 0; i < before.size(); ++i) {
    CHECK(after[i] == Approx(before[i]).margin(1e-10));
  }
}

TEST_CASE("number operator is N times the identity", "[model]") {
  const RealMatrix Nop = build_number_operator(three_well(), 3);
  REQUIRE(Nop.rows() == 10);
  CHECK((Nop - 3.0 * RealMatrix::Identity(10, 10)).norm() == 0.0);
}

TEST_CASE("complement number operators commute with H", "[model]") {
  const CouplingParams p = six_well();
  const ComplementBasis comp = complement_basis(p.alpha, p.beta);
  const RealMatrix H = build_hamiltonian(p, 3);
  const std::vector<RealMatrix> Q = build_conserved_Q(p, 3, comp);

  REQUIRE(static_cast<int>(Q.size()) == (p.n - 1) + (p.m - 1));
  for (size_t i = 0; i < Q.size(); ++i) {
    CHECK(commutator_norm(H, Q[i]) < 1e-10);
    for (size_t j = 0; j < i; ++j) {
      CHECK(commutator_norm(Q[i], Q[j]) < 1e-10);
    }
  }
}

TEST_CASE("commutator norm rejects shape mismatches", "[model]") {
  CHECK_THROWS_AS(commutator_norm(RealMatrix::Zero(2, 2), RealMatrix::Zero(3, 3)),
                  std::invalid_argument);
}
