#pragma once

#include <cmath>
#include <string>

#include "symdist/ext_real.hpp"
#include "symdist/hermitian.hpp"

namespace symdist {

/// (p, rho0, rho1), the c-q state p|0><0| (x) rho0 + (1-p)|1><1| (x) rho1.
struct QuantumBox {
  double p = 0.5;
  HermitianMatrix rho0;
  HermitianMatrix rho1;

  int dim() const { return rho0.dim(); }
};

/// Validates a density matrix: PSD and unit trace within tolerance; renormalizes the trace.
inline HermitianMatrix validated_state(const HermitianMatrix& rho, const char* name) {
  const double tol = tolerances().state_trace;
  const double lm = lambda_min(rho);
  if (lm < -tol) throw Error(ErrorKind::InvalidState, std::string(name) + " is not PSD (eigenvalue " + std::to_string(lm) + ")");
  const double tr = rho.trace();
  if (std::abs(tr - 1.0) > tol) throw Error(ErrorKind::InvalidState, std::string(name) + " has trace " + std::to_string(tr));
  return rho / tr;
}

inline QuantumBox make_box(double p, const HermitianMatrix& rho0, const HermitianMatrix& rho1) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::ParameterRange, "prior outside [0,1]");
  if (rho0.dim() != rho1.dim()) throw Error(ErrorKind::DimensionMismatch, "box states differ in dimension");
  return {p, validated_state(rho0, "rho0"), validated_state(rho1, "rho1")};
}

/// p |0><0| (x) rho0 + (1 - p) |1><1| (x) rho1 as a 2d x 2d matrix.
inline HermitianMatrix cq_state(const QuantumBox& b) {
  const int d = b.dim();
  CMat m = CMat::Zero(2 * d, 2 * d);
  m.topLeftCorner(d, d) = b.p * b.rho0.mat();
  m.bottomRightCorner(d, d) = (1.0 - b.p) * b.rho1.mat();
  return HermitianMatrix(m);
}

/// Entrywise max-abs distance of the c-q embeddings.
inline double cq_distance_max_abs(const QuantumBox& a, const QuantumBox& b) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::DimensionMismatch, "boxes differ in dimension");
  return cq_state(a).max_abs_diff(cq_state(b));
}

inline bool boxes_equal(const QuantumBox& a, const QuantumBox& b, double tol = tolerances().box_equality) {
  return cq_distance_max_abs(a, b) <= tol;
}

/// 1/2 || rho_XA - sigma_XA ||_1 between c-q states.
inline double cq_trace_distance(const QuantumBox& a, const QuantumBox& b) {
  if (a.dim() != b.dim()) throw Error(ErrorKind::DimensionMismatch, "boxes differ in dimension");
  return 0.5 * (trace_norm(a.p * a.rho0 - b.p * b.rho0) + trace_norm((1.0 - a.p) * a.rho1 - (1.0 - b.p) * b.rho1));
}

/// Minimum discrimination error 1/2 (1 - || p rho0 - (1-p) rho1 ||_1).
inline double p_err(const QuantumBox& b) {
  const double v = 0.5 * (1.0 - trace_norm(b.p * b.rho0 - (1.0 - b.p) * b.rho1));
  return std::max(0.0, v);
}

inline bool is_infinite_resource(const QuantumBox& b, double tol = tolerances().infinite_perr) {
  return p_err(b) <= tol;
}

/// Golden unit parameters: M in [1, inf], prior q.
struct GoldenUnit {
  ExtReal M = 1.0;
  double q = 0.5;
};

/// (1 - 1/2M)|0><0| + 1/2M |1><1|, with pi_inf = |0><0|.
inline HermitianMatrix pi_M(const ExtReal& M) {
  if (M.is_finite() && !(M.value() >= 1.0)) throw Error(ErrorKind::ParameterRange, "golden unit needs M >= 1");
  const double t = M.is_inf() ? 0.0 : 1.0 / (2.0 * M.value());
  return HermitianMatrix::diag({1.0 - t, t});
}

inline QuantumBox golden_to_box(const GoldenUnit& g) {
  if (!(g.q >= 0.0 && g.q <= 1.0)) throw Error(ErrorKind::ParameterRange, "golden unit prior outside [0,1]");
  const HermitianMatrix pm = pi_M(g.M);
  return {g.q, pm, pm.congruence(pauli_x().mat())};
}

/// (p, rho0^{(x)n}, rho1^{(x)n})
inline QuantumBox tensor_box(const QuantumBox& b, int n) {
  if (n < 1) throw Error(ErrorKind::ParameterRange, "tensor_box needs n >= 1");
  if (std::pow(static_cast<double>(b.dim()), n) > tolerances().dimension_cap)
    throw Error(ErrorKind::DimensionCap, "tensor power exceeds dimension cap");
  return {b.p, tensor_power(b.rho0, n), tensor_power(b.rho1, n)};
}

/// (p, rho0 (x) sigma0, rho1 (x) sigma1) for boxes with equal priors.
inline QuantumBox tensor_states(const QuantumBox& a, const QuantumBox& b) {
  return {a.p, tensor(a.rho0, b.rho0), tensor(a.rho1, b.rho1)};
}

}  // namespace symdist
