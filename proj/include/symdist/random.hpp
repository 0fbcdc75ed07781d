#pragma once

#include <random>

#include "symdist/hermitian.hpp"

namespace symdist {

using Rng = std::mt19937_64;

inline CMat ginibre(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  CMat g(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) g(i, j) = cplx(n(rng), n(rng));
  return g;
}

inline HermitianMatrix random_hermitian(int d, Rng& rng) {
  CMat g = ginibre(d, d, rng);
  return HermitianMatrix(CMat(0.5 * (g + g.adjoint())));
}

/// Haar-random unitary (QR of a Ginibre matrix with phase correction).
inline CMat random_unitary(int d, Rng& rng) {
  Eigen::HouseholderQR<CMat> qr(ginibre(d, d, rng));
  CMat q = qr.householderQ();
  CMat r = qr.matrixQR();
  for (int i = 0; i < d; ++i) {
    const cplx ph = r(i, i) / std::abs(r(i, i));
    q.col(i) *= ph;
  }
  return q;
}

/// Density matrix G G^dagger / Tr with G of shape d x rank.
inline HermitianMatrix random_state(int d, Rng& rng, int rank = -1) {
  if (rank < 1) rank = d;
  CMat g = ginibre(d, rank, rng);
  CMat rho = g * g.adjoint();
  rho /= rho.trace().real();
  return HermitianMatrix(rho, 1e-6);
}

inline HermitianMatrix random_pure_state(int d, Rng& rng) { return random_state(d, rng, 1); }

inline HermitianMatrix random_diagonal_state(int d, Rng& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  RVec v(d);
  for (int i = 0; i < d; ++i) v(i) = u(rng) + 1e-3;
  return HermitianMatrix::diag(v / v.sum());
}

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

}  // namespace symdist
