#pragma once

// Operators on a truncated Fock tower (all particle sectors 0..max), each
// shifting the particle number by a fixed amount and acting blockwise
// between fixed-N bases.  Compositions that would leave the truncation are
// tracked as unrepresentable instead of being silently truncated.

#include "knm/fock.hpp"

#include <memory>
#include <optional>
#include <vector>

namespace knm {

// Shared stack of fixed-N bases for one mode count.
class FockTower {
 public:
  FockTower(int modes, int max_particles);

  int modes() const { return modes_; }
  int max_particles() const { return max_particles_; }

  // dim(s) = 0 for s < 0 (the zero space); throws for s > max_particles.
  int dim(int particles) const;
  const FockBasis& basis(int particles) const;  // particles in [0, max]

 private:
  int modes_;
  int max_particles_;
  std::vector<FockBasis> bases_;
};

using TowerPtr = std::shared_ptr<const FockTower>;

// A particle-number-shifting operator: block(s) maps the s-particle space
// into the (s+shift)-particle space.  Blocks whose target sector exceeds
// the tower truncation are unrepresentable; accessing one throws.
class TowerOp {
 public:
  TowerOp(TowerPtr tower, int shift);

  static TowerOp zero(const TowerPtr& tower, int shift);
  static TowerOp identity(const TowerPtr& tower);
  // scale * identity
  static TowerOp scalar(const TowerPtr& tower, Complex scale);
  // collective ladder operator (shift +1 or -1)
  static TowerOp ladder(const TowerPtr& tower, const std::vector<int>& modes,
                        const RealVector& coeffs, LadderKind kind);
  // summed occupation-number operator of the given modes (shift 0)
  static TowerOp number(const TowerPtr& tower, const std::vector<int>& modes);

  const FockTower& tower() const { return *tower_; }
  int shift() const { return shift_; }

  bool has_block(int particles) const;
  // The matrix of sector s, shape dim(s+shift) x dim(s).  Throws if the
  // block is not representable at this truncation.
  const Matrix& block(int particles) const;
  void set_block(int particles, Matrix m);

  // composition: (*this) applied after rhs
  TowerOp operator*(const TowerOp& rhs) const;
  TowerOp operator+(const TowerOp& rhs) const;  // requires equal shift
  TowerOp operator-(const TowerOp& rhs) const;
  TowerOp operator*(Complex scale) const;
  friend TowerOp operator*(Complex scale, const TowerOp& op) { return op * scale; }

  TowerOp adjoint() const;

  // Frobenius norm over the direct sum of sectors [lo, hi].
  double norm(int lo, int hi) const;

  // apply to a state vector living in sector s; result lives in s+shift
  Vector apply(int particles, const Vector& state) const;

 private:
  TowerPtr tower_;
  int shift_;
  std::vector<std::optional<Matrix>> blocks_;  // indexed by source sector
};

}  // namespace knm
