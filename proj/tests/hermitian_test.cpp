#include <gtest/gtest.h>

#include "symdist/hermitian.hpp"
#include "symdist/random.hpp"

using namespace symdist;

TEST(Hermitian, ConstructionSymmetrizesSmallAsymmetry) {
  CMat m(2, 2);
  m << 1.0, cplx(0.5, 1e-10), cplx(0.5, 0.0), 2.0;
  HermitianMatrix h(m);
  EXPECT_NEAR(std::abs(h(0, 1) - std::conj(h(1, 0))), 0.0, 1e-15);
}

TEST(Hermitian, ConstructionRejectsLargeAsymmetry) {
  CMat m(2, 2);
  m << 1.0, 0.5, 0.4, 2.0;
  EXPECT_THROW(HermitianMatrix{m}, Error);
}

TEST(Hermitian, EigOfDiagonal) {
  auto e = eig(HermitianMatrix::diag({1.0, 2.0}));
  EXPECT_NEAR(e.eigenvalues(0), 1.0, 1e-14);
  EXPECT_NEAR(e.eigenvalues(1), 2.0, 1e-14);
  EXPECT_NEAR((e.eigenvectors.cwiseAbs() - RMat::Identity(2, 2)).norm(), 0.0, 1e-14);
}

TEST(Hermitian, EigOfIdentity) {
  auto e = eig(HermitianMatrix::identity(2));
  EXPECT_NEAR(e.eigenvalues(0), 1.0, 1e-14);
  EXPECT_NEAR(e.eigenvalues(1), 1.0, 1e-14);
}

TEST(Hermitian, EigOfRankOneProjector) {
  auto h = 0.5 * (HermitianMatrix::identity(2) + pauli_x());
  auto e = eig(h);
  EXPECT_NEAR(e.eigenvalues(0), 0.0, 1e-14);
  EXPECT_NEAR(e.eigenvalues(1), 1.0, 1e-14);
}

TEST(Hermitian, EigReconstructionOnRandomMatrices) {
  Rng rng(11);
  for (int d : {1, 2, 3, 8, 16}) {
    auto h = random_hermitian(d, rng);
    auto e = eig(h);
    CMat rec = e.eigenvectors * e.eigenvalues.asDiagonal() * e.eigenvectors.adjoint();
    EXPECT_LE((rec - h.mat()).norm(), 1e-9 * std::max(1.0, h.fro_norm()));
    for (int i = 1; i < e.eigenvalues.size(); ++i) EXPECT_LE(e.eigenvalues(i - 1), e.eigenvalues(i));
  }
}

TEST(Hermitian, MatrixPowerExamples) {
  auto r = matrix_power(HermitianMatrix::diag({4.0, 0.0}), 0.5);
  EXPECT_NEAR(r.max_abs_diff(HermitianMatrix::diag({2.0, 0.0})), 0.0, 1e-14);
  auto r0 = matrix_power(HermitianMatrix::diag({0.5, 0.5}), 0.0);
  EXPECT_NEAR(r0.max_abs_diff(HermitianMatrix::identity(2)), 0.0, 1e-14);
  Rng rng(3);
  auto rho = random_state(3, rng);
  EXPECT_LE(matrix_power(rho, 1.0).max_abs_diff(rho), 1e-12);
}

TEST(Hermitian, MatrixPowerZeroExponentIsSupportProjector) {
  auto r = matrix_power(HermitianMatrix::diag({0.3, 0.0, 0.7}), 0.0);
  EXPECT_NEAR(r.max_abs_diff(HermitianMatrix::diag({1.0, 0.0, 1.0})), 0.0, 1e-14);
}

TEST(Hermitian, MatrixPowerRejectsNegativeSpectrum) {
  EXPECT_THROW(matrix_power(HermitianMatrix::diag({1.0, -0.1}), 0.5), Error);
  EXPECT_THROW(matrix_power(HermitianMatrix::diag({1.0, 0.0}), 1.5), Error);
}

TEST(Hermitian, TraceNormExamples) {
  EXPECT_NEAR(trace_norm(HermitianMatrix::diag({1.0, -1.0})), 2.0, 1e-14);
  EXPECT_NEAR(trace_norm(HermitianMatrix::zero(3)), 0.0, 1e-14);
  EXPECT_NEAR(trace_norm(HermitianMatrix::diag({1.0 / 3, -2.0 / 3})), 1.0, 1e-14);
}

TEST(Hermitian, PositiveNegativeParts) {
  EXPECT_NEAR(positive_part(HermitianMatrix::diag({2.0, -3.0})).max_abs_diff(HermitianMatrix::diag({2.0, 0.0})),
              0.0, 1e-14);
  EXPECT_NEAR(negative_part(HermitianMatrix::diag({2.0, -3.0})).max_abs_diff(HermitianMatrix::diag({0.0, 3.0})),
              0.0, 1e-14);
}

TEST(Hermitian, PseudoInverseSqrtActsOnSupport) {
  auto r = pseudo_inverse_sqrt(HermitianMatrix::diag({4.0, 0.0}));
  EXPECT_NEAR(r.max_abs_diff(HermitianMatrix::diag({0.5, 0.0})), 0.0, 1e-14);
}

TEST(Hermitian, TensorPowerOfDiagonal) {
  const double a = 0.3, b = 0.7;
  auto t = tensor_power(HermitianMatrix::diag({a, b}), 2);
  EXPECT_NEAR(t.max_abs_diff(HermitianMatrix::diag({a * a, a * b, a * b, b * b})), 0.0, 1e-15);
}

TEST(HermitianProperty, JordanDecomposition) {
  Rng rng(5);
  for (int k = 0; k < 50; ++k) {
    auto h = random_hermitian(1 + k % 6, rng);
    auto pp = positive_part(h);
    auto nn = negative_part(h);
    EXPECT_LE((pp - nn - h).fro_norm(), 1e-9);
    EXPECT_LE((pp.mat() * nn.mat()).norm(), 1e-9 * std::max(1.0, h.fro_norm() * h.fro_norm()));
    EXPECT_NEAR(trace_norm(h), pp.trace() + nn.trace(), 1e-9);
  }
}

TEST(HermitianProperty, ComplementaryPowersMultiplyToSupport) {
  Rng rng(6);
  for (int k = 0; k < 50; ++k) {
    const int d = 1 + k % 5;
    auto h = random_state(d, rng, 1 + k % d);
    const double s = uniform(rng, 0.0, 1.0);
    const double lhs = (matrix_power(h, s).mat() * matrix_power(h, 1.0 - s).mat()).trace().real();
    const double rhs = (h.mat() * support_projector(h).mat()).trace().real();
    EXPECT_NEAR(lhs, rhs, 1e-9);
  }
}

TEST(HermitianProperty, TraceNormMultiplicativeUnderTensorPower) {
  Rng rng(7);
  for (int k = 0; k < 20; ++k) {
    auto h = random_hermitian(2, rng);
    const double t1 = trace_norm(h);
    for (int n = 1; n <= 4; ++n) {
      const double tn = trace_norm(tensor_power(h, n));
      EXPECT_NEAR(tn / std::pow(t1, n), 1.0, 1e-8);
    }
  }
}

TEST(Hermitian, PartialTraces) {
  Rng rng(8);
  auto a = random_state(2, rng);
  auto b = random_state(3, rng);
  auto ab = tensor(a, b);
  EXPECT_LE(partial_trace_second(ab, 2, 3).max_abs_diff(a), 1e-12);
  EXPECT_LE(partial_trace_first(ab, 2, 3).max_abs_diff(b), 1e-12);
}
