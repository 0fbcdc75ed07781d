#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <initializer_list>
#include <string>

#include "symdist/config.hpp"
#include "symdist/error.hpp"

namespace symdist {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

/// Dense complex Hermitian operator. Symmetrized on construction.
class HermitianMatrix {
 public:
  HermitianMatrix() = default;

  explicit HermitianMatrix(int dim) : m_(CMat::Zero(dim, dim)) {}

  explicit HermitianMatrix(const CMat& m) : HermitianMatrix(m, tolerances().hermitian_asymmetry) {}

  HermitianMatrix(const CMat& m, double asym_tol) {
    if (m.rows() != m.cols() || m.rows() < 1)
      throw Error(ErrorKind::DimensionMismatch, "Hermitian matrix must be square and non-empty");
    const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if (asym > asym_tol * scale)
      throw Error(ErrorKind::NotHermitian, "asymmetry " + std::to_string(asym));
    m_ = 0.5 * (m + m.adjoint());
  }

  static HermitianMatrix from_real(const RMat& m) { return HermitianMatrix(CMat(m.cast<cplx>())); }

  static HermitianMatrix identity(int d) { return HermitianMatrix(CMat::Identity(d, d)); }

  static HermitianMatrix zero(int d) { return HermitianMatrix(d); }

  static HermitianMatrix diag(const RVec& v) {
    HermitianMatrix h(static_cast<int>(v.size()));
    for (int i = 0; i < v.size(); ++i) h.m_(i, i) = v(i);
    return h;
  }

  static HermitianMatrix diag(std::initializer_list<double> v) {
    RVec d(static_cast<Eigen::Index>(v.size()));
    int i = 0;
    for (double x : v) d(i++) = x;
    return diag(d);
  }

  /// |v><v|
  static HermitianMatrix projector(const CVec& v) {
    HermitianMatrix h;
    h.m_ = v * v.adjoint();
    return h;
  }

  static HermitianMatrix basis_projector(int d, int k) {
    HermitianMatrix h(d);
    h.m_(k, k) = 1.0;
    return h;
  }

  int dim() const { return static_cast<int>(m_.rows()); }
  const CMat& mat() const { return m_; }
  cplx operator()(int i, int j) const { return m_(i, j); }

  double trace() const { return m_.trace().real(); }
  double fro_norm() const { return m_.norm(); }
  double max_abs() const { return m_.cwiseAbs().maxCoeff(); }

  double max_abs_diff(const HermitianMatrix& o) const {
    check_same_dim(o);
    return (m_ - o.m_).cwiseAbs().maxCoeff();
  }

  /// K H K^dagger
  HermitianMatrix congruence(const CMat& k) const {
    HermitianMatrix h;
    h.m_ = k * m_ * k.adjoint();
    h.m_ = 0.5 * (h.m_ + h.m_.adjoint()).eval();
    return h;
  }

  HermitianMatrix transpose() const {
    HermitianMatrix h;
    h.m_ = m_.transpose();
    return h;
  }

  HermitianMatrix& operator+=(const HermitianMatrix& o) {
    check_same_dim(o);
    m_ += o.m_;
    return *this;
  }
  HermitianMatrix& operator-=(const HermitianMatrix& o) {
    check_same_dim(o);
    m_ -= o.m_;
    return *this;
  }
  HermitianMatrix& operator*=(double s) {
    m_ *= s;
    return *this;
  }

  friend HermitianMatrix operator+(HermitianMatrix a, const HermitianMatrix& b) { return a += b; }
  friend HermitianMatrix operator-(HermitianMatrix a, const HermitianMatrix& b) { return a -= b; }
  friend HermitianMatrix operator*(double s, HermitianMatrix a) { return a *= s; }
  friend HermitianMatrix operator*(HermitianMatrix a, double s) { return a *= s; }
  friend HermitianMatrix operator/(HermitianMatrix a, double s) { return a *= (1.0 / s); }
  HermitianMatrix operator-() const { return (*this) * -1.0; }

 private:
  void check_same_dim(const HermitianMatrix& o) const {
    if (o.dim() != dim()) throw Error(ErrorKind::DimensionMismatch, "operand dimensions differ");
  }

  CMat m_;
};

/// Re Tr[A B]
inline double inner(const HermitianMatrix& a, const HermitianMatrix& b) {
  return (a.mat().conjugate().cwiseProduct(b.mat())).sum().real();
}

struct EigenDecomposition {
  RVec eigenvalues;  // ascending
  CMat eigenvectors;  // columns
};

inline EigenDecomposition eig(const HermitianMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMat> es(h.mat());
  return {es.eigenvalues(), es.eigenvectors()};
}

inline RVec eigenvalues(const HermitianMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMat> es(h.mat(), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

inline double lambda_min(const HermitianMatrix& h) { return eigenvalues(h)(0); }
inline double lambda_max(const HermitianMatrix& h) {
  RVec ev = eigenvalues(h);
  return ev(ev.size() - 1);
}

/// V f(diag) V^dagger
template <class F>
HermitianMatrix spectral_apply(const EigenDecomposition& e, F&& f) {
  RVec fv(e.eigenvalues.size());
  for (int i = 0; i < fv.size(); ++i) fv(i) = f(e.eigenvalues(i));
  return HermitianMatrix(CMat(e.eigenvectors * fv.asDiagonal() * e.eigenvectors.adjoint()), 1e-6);
}

inline bool is_psd(const HermitianMatrix& h, double tol = tolerances().psd_clamp) {
  return lambda_min(h) >= -tol;
}

inline void require_psd(const HermitianMatrix& h, const char* what) {
  const double lm = lambda_min(h);
  if (lm < -tolerances().psd_clamp)
    throw Error(ErrorKind::NotPsd, std::string(what) + " has eigenvalue " + std::to_string(lm));
}

/// H^s on the support, s in [0, 1]; 0^0 = 0.
inline HermitianMatrix matrix_power(const HermitianMatrix& h, double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw Error(ErrorKind::ParameterRange, "matrix_power exponent outside [0,1]");
  const EigenDecomposition e = eig(h);
  const double clamp = tolerances().psd_clamp;
  if (e.eigenvalues(0) < -clamp)
    throw Error(ErrorKind::NotPsd, "matrix_power of a non-PSD matrix");
  return spectral_apply(e, [&](double l) { return l <= clamp ? 0.0 : std::pow(l, s); });
}

inline double trace_norm(const HermitianMatrix& h) { return eigenvalues(h).cwiseAbs().sum(); }

inline HermitianMatrix positive_part(const HermitianMatrix& h) {
  return spectral_apply(eig(h), [](double l) { return l > 0.0 ? l : 0.0; });
}

inline HermitianMatrix negative_part(const HermitianMatrix& h) {
  return spectral_apply(eig(h), [](double l) { return l < 0.0 ? -l : 0.0; });
}

/// Projector onto eigenvectors with eigenvalue above tol.
inline HermitianMatrix support_projector(const HermitianMatrix& h, double tol = tolerances().psd_clamp) {
  return spectral_apply(eig(h), [&](double l) { return l > tol ? 1.0 : 0.0; });
}

/// (H^{-1/2}) restricted to the support of a PSD H.
inline HermitianMatrix pseudo_inverse_sqrt(const HermitianMatrix& h) {
  const EigenDecomposition e = eig(h);
  const double clamp = tolerances().psd_clamp;
  if (e.eigenvalues(0) < -clamp) throw Error(ErrorKind::NotPsd, "pseudo_inverse_sqrt of a non-PSD matrix");
  return spectral_apply(e, [&](double l) { return l > clamp ? 1.0 / std::sqrt(l) : 0.0; });
}

inline HermitianMatrix sqrt_psd(const HermitianMatrix& h) {
  return spectral_apply(eig(h), [](double l) { return l > 0.0 ? std::sqrt(l) : 0.0; });
}

inline CMat kron(const CMat& a, const CMat& b) {
  CMat r(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return r;
}

inline HermitianMatrix tensor(const HermitianMatrix& a, const HermitianMatrix& b) {
  return HermitianMatrix(kron(a.mat(), b.mat()), 1e-6);
}

inline HermitianMatrix tensor_power(const HermitianMatrix& h, int n) {
  if (n < 1) throw Error(ErrorKind::ParameterRange, "tensor_power needs n >= 1");
  CMat r = h.mat();
  for (int k = 1; k < n; ++k) r = kron(r, h.mat());
  return HermitianMatrix(r, 1e-6);
}

/// Tr_B of an operator on A (x) B.
inline HermitianMatrix partial_trace_second(const HermitianMatrix& h, int da, int db) {
  if (h.dim() != da * db) throw Error(ErrorKind::DimensionMismatch, "partial trace dimensions");
  CMat r = CMat::Zero(da, da);
  for (int a = 0; a < da; ++a)
    for (int b = 0; b < da; ++b)
      for (int j = 0; j < db; ++j) r(a, b) += h(a * db + j, b * db + j);
  return HermitianMatrix(r, 1e-6);
}

/// Tr_A of an operator on A (x) B.
inline HermitianMatrix partial_trace_first(const HermitianMatrix& h, int da, int db) {
  if (h.dim() != da * db) throw Error(ErrorKind::DimensionMismatch, "partial trace dimensions");
  CMat r = CMat::Zero(db, db);
  for (int k = 0; k < db; ++k)
    for (int l = 0; l < db; ++l)
      for (int a = 0; a < da; ++a) r(k, l) += h(a * db + k, a * db + l);
  return HermitianMatrix(r, 1e-6);
}

inline HermitianMatrix pauli_x() {
  CMat m(2, 2);
  m << 0, 1, 1, 0;
  return HermitianMatrix(m);
}

inline HermitianMatrix pauli_y() {
  CMat m(2, 2);
  m << 0, cplx(0, -1), cplx(0, 1), 0;
  return HermitianMatrix(m);
}

inline HermitianMatrix pauli_z() { return HermitianMatrix::diag({1.0, -1.0}); }

}  // namespace symdist
