#include "knm/ortho.hpp"

#include <cmath>
#include <stdexcept>

namespace knm {

std::vector<RealVector> orthonormal_complement(const RealVector& v) {
  const int d = static_cast<int>(v.size());
  if (d < 1) throw std::invalid_argument("vector must have dimension >= 1");
  if (std::abs(v.norm() - 1.0) > 1e-12) {
    throw std::invalid_argument("vector must be unit-norm within 1e-12");
  }
  std::vector<RealVector> out;
  if (d == 1) return out;

  // Householder reflection mapping e1 onto -sign(v0)*v; its remaining
  // columns form an orthonormal basis of v-perp.
  RealVector w = v;
  const double sign0 = (v[0] >= 0.0) ? 1.0 : -1.0;
  w[0] += sign0;
  const RealMatrix house =
      RealMatrix::Identity(d, d) - (2.0 / w.squaredNorm()) * (w * w.transpose());

  out.reserve(d - 1);
  for (int c = 1; c < d; ++c) {
    RealVector col = house.col(c);
    for (int i = 0; i < d; ++i) {
      if (std::abs(col[i]) > 1e-12) {
        if (col[i] < 0.0) col = -col;
        break;
      }
    }
    out.push_back(col);
  }
  return out;
}

ComplementBasis complement_basis(const RealVector& alpha,
                                 const RealVector& beta) {
  ComplementBasis comp;
  comp.mu = orthonormal_complement(alpha);
  comp.nu = orthonormal_complement(beta);
  return comp;
}

}  // namespace knm
