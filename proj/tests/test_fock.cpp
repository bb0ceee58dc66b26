#include "knm/fock.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace knm;
using Catch::Approx;

TEST_CASE("binomial coefficients", "[fock]") {
  CHECK(binomial(0, 0) == 1);
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(8, 4) == 70);
  CHECK(binomial(3, 5) == 0);
  CHECK(binomial(12, 0) == 1);
  CHECK(binomial(58, 5) == 4582116);
}

TEST_CASE("basis enumeration is descending lexicographic", "[fock]") {
  const FockBasis basis = enumerate_basis(3, 3);
  REQUIRE(basis.dim() == 10);
  CHECK(basis.states.front() == OccupationVector{3, 0, 0});
  CHECK(basis.states.back() == OccupationVector{0, 0, 3});
  for (int i = 1; i < basis.dim(); ++i) {
    CHECK(basis.states[i - 1] > basis.states[i]);
  }
  for (int i = 0; i < basis.dim(); ++i) {
    int total = 0;
    for (int occ : basis.states[i]) total += occ;
    CHECK(total == 3);
    CHECK(basis.find(basis.states[i]) == i);
  }
  CHECK_THROWS_AS(basis.find(OccupationVector{1, 1, 0}), std::invalid_argument);
}

TEST_CASE("basis dimension matches the stars-and-bars count", "[fock]") {
  for (int modes = 1; modes <= 5; ++modes) {
    for (int particles = 0; particles <= 5; ++particles) {
      CHECK(enumerate_basis(modes, particles).dim() ==
            binomial(particles + modes - 1, modes - 1));
    }
  }
}

TEST_CASE("ladder matrix elements carry bosonic square roots", "[fock]") {
  const FockBasis one = enumerate_basis(2, 1);
  const FockBasis two = enumerate_basis(2, 2);
  const RealMatrix cre = creation_matrix(one, two, 0);

  // (1,0) -> (2,0) carries sqrt(2); (0,1) -> (1,1) carries sqrt(1)
  CHECK(cre(two.find({2, 0}), one.find({1, 0})) == Approx(std::sqrt(2.0)));
  CHECK(cre(two.find({1, 1}), one.find({0, 1})) == Approx(1.0));
  CHECK(cre(two.find({0, 2}), one.find({0, 1})) == 0.0);

  // annihilation is the transpose of creation between adjacent sectors
  const RealMatrix ann = annihilation_matrix(two, one, 0);
  CHECK((ann - cre.transpose()).norm() == Approx(0.0).margin(1e-14));

  CHECK_THROWS_AS(creation_matrix(one, one, 0), std::invalid_argument);
  CHECK_THROWS_AS(creation_matrix(one, two, 7), std::invalid_argument);
}

TEST_CASE("canonical commutator on a fixed-N slice", "[fock]") {
  const FockBasis below = enumerate_basis(3, 1);
  const FockBasis mid = enumerate_basis(3, 2);
  const FockBasis above = enumerate_basis(3, 3);
  for (int mode = 0; mode < 3; ++mode) {
    const RealMatrix lower = annihilation_matrix(above, mid, mode) *
                             creation_matrix(mid, above, mode);
    const RealMatrix raise = creation_matrix(below, mid, mode) *
                             annihilation_matrix(mid, below, mode);
    const RealMatrix eye = RealMatrix::Identity(mid.dim(), mid.dim());
    CHECK((lower - raise - eye).norm() == Approx(0.0).margin(1e-13));
  }
}

TEST_CASE("number operators are diagonal occupations", "[fock]") {
  const FockBasis basis = enumerate_basis(3, 2);
  RealMatrix total = RealMatrix::Zero(basis.dim(), basis.dim());
  for (int mode = 0; mode < 3; ++mode) {
    const RealMatrix num = number_matrix(basis, mode);
    for (int i = 0; i < basis.dim(); ++i) {
      CHECK(num(i, i) == Approx(double(basis.states[i][mode])));
    }
    total += num;
  }
  const RealMatrix expect = 2.0 * RealMatrix::Identity(basis.dim(), basis.dim());
  CHECK((total - expect).norm() == Approx(0.0).margin(1e-14));
}

TEST_CASE("collective operators are coefficient sums of ladders", "[fock]") {
  const FockBasis from = enumerate_basis(3, 2);
  const FockBasis to = enumerate_basis(3, 3);
  RealVector coeffs(2);
  coeffs << 0.6, -0.8;
  const std::vector<int> modes = {0, 2};
  const RealMatrix collective =
      collective_operator(from, to, modes, coeffs, LadderKind::creation);
  const RealMatrix direct = 0.6 * creation_matrix(from, to, 0) -
                            0.8 * creation_matrix(from, to, 2);
  CHECK((collective - direct).norm() == Approx(0.0).margin(1e-14));

  RealVector wrong(3);
  wrong << 1.0, 0.0, 0.0;
  CHECK_THROWS_AS(
      collective_operator(from, to, modes, wrong, LadderKind::creation),
      std::invalid_argument);
}
