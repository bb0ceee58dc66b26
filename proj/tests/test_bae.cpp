#include "knm/bae.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

using namespace knm;
using Catch::Approx;

namespace {

CouplingParams three_well_params() {
  RealVector alpha(2);
  alpha << 0.7071067811865475, 0.7071067811865475;
  RealVector beta(1);
  beta << 1.0;
  return make_params_physical(2, 1, 1.0, 0.5, -0.5, alpha, beta);
}

CouplingParams six_well_params() {
  RealVector alpha(3);
  alpha << 0.75, 0.43301270189221924, 0.5000000000000001;
  RealVector beta(3);
  beta << 0.6370811961317673, 0.30680213417660024, 0.7071067811865476;
  return make_params_physical(3, 3, 1.3, 0.5, -3.7, alpha, beta);
}

double root_set_distance(std::vector<Complex> a, std::vector<Complex> b) {
  // greedy nearest-pair matching; enough at test tolerances
  if (a.size() != b.size()) return 1e300;
  double worst = 0.0;
  for (const Complex& x : a) {
    auto best = std::min_element(b.begin(), b.end(),
                                 [&](const Complex& p, const Complex& q) {
                                   return std::abs(x - p) < std::abs(x - q);
                                 });
    worst = std::max(worst, std::abs(x - *best));
    b.erase(best);
  }
  return worst;
}

}  // namespace

TEST_CASE("root-system residual vanishes on a known solution", "[bae]") {
  const CouplingParams p = three_well_params();
  const SpectralParams sp = to_spectral(p);
  const SectorLabel ground{{0}, {}};
  const std::vector<Complex> roots = {Complex(0.3643816442, 0.0),
                                      Complex(-0.4444604439, 0.0),
                                      Complex(-1.894256353, 0.0)};
  bool pole = true;
  const Vector res = bae_residual(roots, ground, sp, &pole);
  REQUIRE(res.size() == 3);
  CHECK(res.norm() < 1e-6);
  CHECK_FALSE(pole);
}

TEST_CASE("root-system residual flags pole configurations", "[bae]") {
  const CouplingParams p = three_well_params();
  const SpectralParams sp = to_spectral(p);
  const SectorLabel sector{{1}, {}};
  // v_1 - v_2 = -eta sits exactly on a cleared-denominator zero
  const std::vector<Complex> roots = {Complex(0.5, 0.0),
                                      Complex(0.5 + sp.eta, 0.0)};
  bool pole = false;
  bae_residual(roots, sector, sp, &pole);
  CHECK(pole);
}

TEST_CASE("canonical root order sorts by real then imaginary part", "[bae]") {
  const std::vector<Complex> out = canonical_roots(
      {Complex(0.5, -1.0), Complex(-2.0, 3.0), Complex(0.5, -2.0)});
  CHECK(out[0] == Complex(-2.0, 3.0));
  CHECK(out[1] == Complex(0.5, -2.0));
  CHECK(out[2] == Complex(0.5, -1.0));
}

TEST_CASE("closed-form energies of root-free sectors", "[bae]") {
  const CouplingParams p3 = three_well_params();
  CHECK(closed_form_energy(SectorLabel{{3}, {}}, p3) == Approx(10.5));

  const CouplingParams p6 = six_well_params();
  CHECK(closed_form_energy(SectorLabel{{3, 0}, {0, 0}}, p6) == Approx(13.2));
  CHECK(closed_form_energy(SectorLabel{{0, 0}, {3, 0}}, p6) == Approx(10.2));
  CHECK(closed_form_energy(SectorLabel{{2, 0}, {1, 0}}, p6) == Approx(1.8));
  CHECK(closed_form_energy(SectorLabel{{1, 0}, {2, 0}}, p6) == Approx(0.8));
}

TEST_CASE("energy from roots is u-independent and matches the spectrum",
          "[bae]") {
  const CouplingParams p = three_well_params();
  const SpectralParams sp = to_spectral(p);
  const SectorLabel ground{{0}, {}};
  const std::vector<Complex> roots = {Complex(0.3643816442, 0.0),
                                      Complex(-0.4444604439, 0.0),
                                      Complex(-1.894256353, 0.0)};
  const EnergyEstimate est = energy_from_roots(roots, ground, sp, p.t, 3);
  CHECK(est.energy.real() == Approx(-0.2078684487).margin(1e-6));
  CHECK(std::abs(est.energy.imag()) < 1e-6);
  // the tabulated roots carry ~10 digits, which bounds the attainable gap
  CHECK(est.u_gap < 1e-5);
}

TEST_CASE("coincident roots are classified as spurious", "[bae]") {
  const ModelOperators ops = ModelOperators::build(three_well_params(), 3);
  const BaeContext ctx = BaeContext::make(ops);
  const SolverConfig cfg;
  const BaeSolution sol = classify_solution(
      {Complex(0.7, 0.0), Complex(0.7, 0.0)}, SectorLabel{{1}, {}}, ctx, cfg);
  CHECK_FALSE(sol.valid);
  CHECK(sol.verdict_reason == "coincident roots");
}

TEST_CASE("solver finds every level of the three-well model", "[bae]") {
  const ModelOperators ops = ModelOperators::build(three_well_params(), 3);
  const BaeContext ctx = BaeContext::make(ops);
  const SolverConfig cfg;

  const struct {
    int l;
    std::vector<std::vector<Complex>> roots;
    std::vector<double> energies;
  } expected[] = {
      {0,
       {{Complex(0.3643816442, 0.0), Complex(-0.4444604439, 0.0),
         Complex(-1.894256353, 0.0)},
        {Complex(0.3359698043, 0.0), Complex(-0.3347796411, 0.0),
         Complex(-3.548367609, 0.0)},
        {Complex(0.3535693555, 0.0), Complex(-2.47636450, 0.0),
         Complex(-5.378123245, 0.0)},
        {Complex(-0.3535609123, 0.0), Complex(-3.182700505, 0.0),
         Complex(-6.068724579, 0.0)}},
       {-0.2078684487, 2.016466453, 7.60790053, 10.58350147}},
      {1,
       {{Complex(-2.206922679, 0.0), Complex(0.3517823376, 0.0)},
        {Complex(-3.413951691, 0.0), Complex(0.3586029944, 0.0)},
        {Complex(-6.049425376, 0.0), Complex(-3.182221204, 0.0)}},
       {0.1235646323, 1.820915566, 10.5555198}},
      {2,
       {{Complex(0.3731349939702344, 0.0)},
        {Complex(-6.029989243462615, 0.0)}},
       {1.472307431, 10.52769257}},
  };

  for (const auto& sector_case : expected) {
    const SectorLabel label{{sector_case.l}, {}};
    const SectorSolveResult res = solve_bae(label, ctx, cfg);
    REQUIRE(res.expected_valid == 3 - sector_case.l + 1);
    REQUIRE(res.complete());

    // every tabulated root multiset and energy appears among the valid ones
    for (std::size_t i = 0; i < sector_case.roots.size(); ++i) {
      bool found = false;
      for (const BaeSolution& sol : res.solutions) {
        if (!sol.valid) continue;
        if (root_set_distance(sol.roots, sector_case.roots[i]) < 1e-6) {
          found = true;
          CHECK(sol.energy.real() ==
                Approx(sector_case.energies[i]).margin(1e-6));
          CHECK(std::abs(sol.energy.imag()) < 1e-8);
          CHECK(sol.diagnostics.state_residual < 1e-6);
        }
      }
      CHECK(found);
    }
  }
}

TEST_CASE("root-free sectors are rejected by the solver", "[bae]") {
  const ModelOperators ops = ModelOperators::build(three_well_params(), 3);
  const BaeContext ctx = BaeContext::make(ops);
  CHECK_THROWS_AS(solve_bae(SectorLabel{{3}, {}}, ctx, SolverConfig{}),
                  std::invalid_argument);
}

TEST_CASE("solver output is deterministic", "[bae]") {
  const ModelOperators ops = ModelOperators::build(three_well_params(), 3);
  const BaeContext ctx = BaeContext::make(ops);
  const SolverConfig cfg;
  const SectorLabel label{{1}, {}};
  const SectorSolveResult r1 = solve_bae(label, ctx, cfg);
  const SectorSolveResult r2 = solve_bae(label, ctx, cfg);
  REQUIRE(r1.solutions.size() == r2.solutions.size());
  for (std::size_t i = 0; i < r1.solutions.size(); ++i) {
    CHECK(r1.solutions[i].roots == r2.solutions[i].roots);
    CHECK(r1.solutions[i].energy == r2.solutions[i].energy);
    CHECK(r1.solutions[i].valid == r2.solutions[i].valid);
  }
}

TEST_CASE("six-well ground group solves to the tabulated energies", "[bae]") {
  const ModelOperators ops = ModelOperators::build(six_well_params(), 3);
  const BaeContext ctx = BaeContext::make(ops);
  const SectorLabel label{{0, 0}, {0, 0}};
  const SectorSolveResult res = solve_bae(label, ctx, SolverConfig{});
  REQUIRE(res.expected_valid == 4);
  REQUIRE(res.complete());

  std::vector<double> energies;
  for (const BaeSolution& sol : res.solutions) {
    if (sol.valid) energies.push_back(sol.energy.real());
  }
  std::sort(energies.begin(), energies.end());
  REQUIRE(energies.size() == 4);
  CHECK(energies[0] == Approx(-8.20422).margin(1e-4));
  CHECK(energies[1] == Approx(3.59673).margin(1e-4));
  CHECK(energies[2] == Approx(13.3926).margin(1e-4));
  CHECK(energies[3] == Approx(17.2149).margin(1e-4));
}
