#include "knm/tower.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace knm {

FockTower::FockTower(int modes, int max_particles)
    : modes_(modes), max_particles_(max_particles) {
  if (modes < 1) throw std::invalid_argument("mode count must be >= 1");
  if (max_particles < 0) throw std::invalid_argument("max particles must be >= 0");
  bases_.reserve(max_particles + 1);
  for (int s = 0; s <= max_particles; ++s) {
    bases_.push_back(enumerate_basis(modes, s));
  }
}

int FockTower::dim(int particles) const {
  if (particles < 0) return 0;
  if (particles > max_particles_) {
    throw std::out_of_range("sector exceeds tower truncation");
  }
  return bases_[particles].dim();
}

const FockBasis& FockTower::basis(int particles) const {
  if (particles < 0 || particles > max_particles_) {
    throw std::out_of_range("sector outside tower range");
  }
  return bases_[particles];
}

TowerOp::TowerOp(TowerPtr tower, int shift)
    : tower_(std::move(tower)), shift_(shift),
      blocks_(tower_->max_particles() + 1) {}

TowerOp TowerOp::zero(const TowerPtr& tower, int shift) {
  TowerOp op(tower, shift);
  for (int s = 0; s <= tower->max_particles(); ++s) {
    const int target = s + shift;
    if (target > tower->max_particles()) continue;  // unrepresentable
    op.blocks_[s] = Matrix::Zero(tower->dim(target), tower->dim(s));
  }
  return op;
}

TowerOp TowerOp::identity(const TowerPtr& tower) {
  TowerOp op(tower, 0);
  for (int s = 0; s <= tower->max_particles(); ++s) {
    op.blocks_[s] = Matrix::Identity(tower->dim(s), tower->dim(s));
  }
  return op;
}

TowerOp TowerOp::scalar(const TowerPtr& tower, Complex scale) {
  TowerOp op = identity(tower);
  for (int s = 0; s <= tower->max_particles(); ++s) {
    *op.blocks_[s] *= scale;
  }
  return op;
}

TowerOp TowerOp::ladder(const TowerPtr& tower, const std::vector<int>& modes,
                        const RealVector& coeffs, LadderKind kind) {
  const int shift = (kind == LadderKind::creation) ? +1 : -1;
  TowerOp op(tower, shift);
  for (int s = 0; s <= tower->max_particles(); ++s) {
    const int target = s + shift;
    if (target > tower->max_particles()) continue;
    if (target < 0) {
      op.blocks_[s] = Matrix::Zero(0, tower->dim(s));
      continue;
    }
    op.blocks_[s] = collective_operator(tower->basis(s), tower->basis(target),
                                        modes, coeffs, kind)
                        .cast<Complex>();
  }
  return op;
}

TowerOp TowerOp::number(const TowerPtr& tower, const std::vector<int>& modes) {
  TowerOp op(tower, 0);
  for (int s = 0; s <= tower->max_particles(); ++s) {
    RealMatrix num = RealMatrix::Zero(tower->dim(s), tower->dim(s));
    for (int mode : modes) num += number_matrix(tower->basis(s), mode);
    op.blocks_[s] = num.cast<Complex>();
  }
  return op;
}

bool TowerOp::has_block(int particles) const {
  if (particles < 0) return true;
  if (particles > tower_->max_particles()) return false;
  return blocks_[particles].has_value();
}

const Matrix& TowerOp::block(int particles) const {
  static const Matrix empty(0, 0);
  if (particles < 0) return empty;
  if (particles > tower_->max_particles() || !blocks_[particles]) {
    throw std::logic_error("tower block not representable at this truncation");
  }
  return *blocks_[particles];
}

void TowerOp::set_block(int particles, Matrix m) {
  const int target = particles + shift_;
  if (particles < 0 || particles > tower_->max_particles() ||
      target > tower_->max_particles()) {
    throw std::out_of_range("sector outside tower range");
  }
  const int target_dim = target < 0 ? 0 : tower_->dim(target);
  if (m.rows() != target_dim || m.cols() != tower_->dim(particles)) {
    throw std::invalid_argument("block shape does not match sector dimensions");
  }
  blocks_[particles] = std::move(m);
}

TowerOp TowerOp::operator*(const TowerOp& rhs) const {
  if (tower_ != rhs.tower_) throw std::invalid_argument("tower mismatch");
  TowerOp out(tower_, shift_ + rhs.shift_);
  for (int s = 0; s <= tower_->max_particles(); ++s) {
    const int mid = s + rhs.shift_;
    const int target = mid + shift_;
    if (target > tower_->max_particles()) continue;
    if (!rhs.has_block(s)) continue;
    if (mid < 0) {
      // factors through the zero space: exactly the zero operator
      const int target_dim = target < 0 ? 0 : tower_->dim(target);
      out.blocks_[s] = Matrix::Zero(target_dim, tower_->dim(s));
      continue;
    }
    if (!has_block(mid)) continue;
    out.blocks_[s] = block(mid) * rhs.block(s);
  }
  return out;
}

TowerOp TowerOp::operator+(const TowerOp& rhs) const {
  if (tower_ != rhs.tower_) throw std::invalid_argument("tower mismatch");
  if (shift_ != rhs.shift_) {
    throw std::invalid_argument("cannot add tower operators of different shift");
  }
  TowerOp out(tower_, shift_);
  for (int s = 0; s <= tower_->max_particles(); ++s) {
    if (!blocks_[s] || !rhs.blocks_[s]) continue;
    out.blocks_[s] = *blocks_[s] + *rhs.blocks_[s];
  }
  return out;
}

TowerOp TowerOp::operator-(const TowerOp& rhs) const {
  return *this + (rhs * Complex(-1.0, 0.0));
}

TowerOp TowerOp::operator*(Complex scale) const {
  TowerOp out(tower_, shift_);
  for (int s = 0; s <= tower_->max_particles(); ++s) {
    if (!blocks_[s]) continue;
    out.blocks_[s] = *blocks_[s] * scale;
  }
  return out;
}

TowerOp TowerOp::adjoint() const {
  TowerOp out(tower_, -shift_);
  for (int s = 0; s <= tower_->max_particles(); ++s) {
    const int src = s - shift_;  // block(src) maps src -> s; its adjoint s -> src
    if (src < 0) {
      out.blocks_[s] = Matrix::Zero(0, tower_->dim(s));
      continue;
    }
    if (src > tower_->max_particles() || !blocks_[src]) continue;
    out.blocks_[s] = blocks_[src]->adjoint();
  }
  return out;
}

double TowerOp::norm(int lo, int hi) const {
  double sq = 0.0;
  for (int s = lo; s <= hi; ++s) {
    if (s < 0) continue;
    if (!has_block(s)) {
      throw std::logic_error(
          "norm requested over a sector whose block is not representable");
    }
    sq += block(s).squaredNorm();
  }
  return std::sqrt(sq);
}

Vector TowerOp::apply(int particles, const Vector& state) const {
  const Matrix& b = block(particles);
  if (state.size() != b.cols()) {
    throw std::invalid_argument("state dimension does not match sector");
  }
  return b * state;
}

}  // namespace knm
