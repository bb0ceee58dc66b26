#include "knm/fock.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace knm {

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  long long out = 1;
  for (int i = 1; i <= k; ++i) {
    out = out * (n - k + i) / i;
  }
  return out;
}

int FockBasis::find(const OccupationVector& occ) const {
  auto it = index.find(occ);
  if (it == index.end()) {
    throw std::invalid_argument("occupation vector not in basis");
  }
  return it->second;
}

namespace {

void enumerate_rec(int modes_left, int remaining, OccupationVector& current,
                   std::vector<OccupationVector>& out) {
  if (modes_left == 1) {
    current.push_back(remaining);
    out.push_back(current);
    current.pop_back();
    return;
  }
  for (int c = remaining; c >= 0; --c) {
    current.push_back(c);
    enumerate_rec(modes_left - 1, remaining - c, current, out);
    current.pop_back();
  }
}

void check_adjacent(const FockBasis& from, const FockBasis& to, int mode,
                    int delta) {
  if (from.modes != to.modes) {
    throw std::invalid_argument("bases have different mode counts");
  }
  if (to.particles != from.particles + delta) {
    throw std::invalid_argument(
        "codomain basis must differ by " + std::to_string(delta) +
        " particle(s)");
  }
  if (mode < 0 || mode >= from.modes) {
    throw std::invalid_argument("mode index out of range");
  }
}

}  // namespace

FockBasis enumerate_basis(int modes, int particles) {
  if (modes < 1) throw std::invalid_argument("mode count must be >= 1");
  if (particles < 0) throw std::invalid_argument("particle number must be >= 0");
  FockBasis basis;
  basis.modes = modes;
  basis.particles = particles;
  OccupationVector scratch;
  scratch.reserve(modes);
  enumerate_rec(modes, particles, scratch, basis.states);
  for (int p = 0; p < static_cast<int>(basis.states.size()); ++p) {
    basis.index.emplace(basis.states[p], p);
  }
  return basis;
}

RealMatrix creation_matrix(const FockBasis& from, const FockBasis& to,
                           int mode) {
  check_adjacent(from, to, mode, +1);
  RealMatrix out = RealMatrix::Zero(to.dim(), from.dim());
  OccupationVector raised;
  for (int c = 0; c < from.dim(); ++c) {
    raised = from.states[c];
    raised[mode] += 1;
    out(to.find(raised), c) = std::sqrt(double(raised[mode]));
  }
  return out;
}

RealMatrix annihilation_matrix(const FockBasis& from, const FockBasis& to,
                               int mode) {
  check_adjacent(from, to, mode, -1);
  RealMatrix out = RealMatrix::Zero(to.dim(), from.dim());
  OccupationVector lowered;
  for (int c = 0; c < from.dim(); ++c) {
    if (from.states[c][mode] == 0) continue;
    lowered = from.states[c];
    lowered[mode] -= 1;
    out(to.find(lowered), c) = std::sqrt(double(from.states[c][mode]));
  }
  return out;
}

RealMatrix number_matrix(const FockBasis& basis, int mode) {
  if (mode < 0 || mode >= basis.modes) {
    throw std::invalid_argument("mode index out of range");
  }
  RealMatrix out = RealMatrix::Zero(basis.dim(), basis.dim());
  for (int c = 0; c < basis.dim(); ++c) {
    out(c, c) = double(basis.states[c][mode]);
  }
  return out;
}

RealMatrix collective_operator(const FockBasis& from, const FockBasis& to,
                               const std::vector<int>& modes,
                               const RealVector& coeffs, LadderKind kind) {
  if (static_cast<int>(modes.size()) != coeffs.size()) {
    throw std::invalid_argument("coefficient count must match mode count");
  }
  RealMatrix out = RealMatrix::Zero(to.dim(), from.dim());
  for (size_t i = 0; i < modes.size(); ++i) {
    if (kind == LadderKind::creation) {
      out += coeffs[i] * creation_matrix(from, to, modes[i]);
    } else {
      out += coeffs[i] * annihilation_matrix(from, to, modes[i]);
    }
  }
  return out;
}

}  // namespace knm
