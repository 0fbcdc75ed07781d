#pragma once

#include <algorithm>
#include <cmath>
#include <string>

#include "symdist/boxes.hpp"
#include "symdist/sdp/model.hpp"

namespace symdist {

inline void require_solved(const sdp::Model::Result& r, const char* what) {
  if (!r.optimal())
    throw Error(ErrorKind::SolverFailure, std::string(what) + ": solver returned " + sdp::to_string(r.sol.status));
}

/// p_err through the greatest-lower-bound program max{Tr Y : Y <= p rho0, Y <= (1-p) rho1}.
struct GlbResult {
  double value = 0.0;       // Tr Y
  double measurement = 0.0; // value of the measurement program it is dual to
  HermitianMatrix Y;
};

inline GlbResult p_err_sdp(const QuantumBox& b) {
  using namespace sdp;
  const int d = b.dim();
  Model m;
  PsdVar x0 = m.add_psd(d), x1 = m.add_psd(d);
  ScalarExpr obj;
  obj.add_trace(x0, b.p * b.rho0).add_trace(x1, (1.0 - b.p) * b.rho1);
  m.minimize(obj);
  MatExpr sum(d);
  sum.add_var(x0).add_var(x1);
  MatRows rows = m.add_eq(sum, HermitianMatrix::identity(d));
  Model::Result r = m.solve();
  require_solved(r, "p_err_sdp");
  GlbResult g;
  g.Y = Model::dual(r, rows);
  g.value = g.Y.trace();
  g.measurement = r.objective;
  return g;
}

/// -log2(2 p_err), infinite when p_err vanishes.
inline ExtReal sd(const QuantumBox& b) {
  const double pe = p_err(b);
  if (pe <= tolerances().infinite_perr) return ExtReal::infinity();
  return std::max(0.0, -std::log2(2.0 * pe));
}

/// Tr[Pi_rho0 Pi_rho1] below the support tolerance.
inline bool orthogonal_supports(const HermitianMatrix& rho0, const HermitianMatrix& rho1) {
  return inner(support_projector(rho0), support_projector(rho1)) <= tolerances().support;
}

struct QminResult {
  double value = 0.0;
  HermitianMatrix Lambda;  // 2 Tr[Lambda rho0] = value, Tr[Lambda (rho0 + rho1)] = 1
};

/// 2 min{Tr[L rho0] : Tr[L (rho0 + rho1)] = 1, 0 <= L <= I}
inline QminResult q_min(const HermitianMatrix& rho0, const HermitianMatrix& rho1) {
  using namespace sdp;
  if (rho0.dim() != rho1.dim()) throw Error(ErrorKind::DimensionMismatch, "q_min: dimensions differ");
  const int d = rho0.dim();
  if (orthogonal_supports(rho0, rho1)) return {0.0, support_projector(rho1)};
  Model m;
  PsdVar lam = m.add_psd(d);
  ScalarExpr obj;
  obj.add_trace(lam, 2.0 * rho0);
  m.minimize(obj);
  ScalarExpr norm;
  norm.add_trace(lam, rho0 + rho1);
  m.add_eq(norm, 1.0);
  MatExpr le(d);
  le.add_var(lam);
  m.add_psd_le(le, HermitianMatrix::identity(d));
  Model::Result r = m.solve();
  require_solved(r, "q_min");
  // Clip the iterate into [0, I] so it is an exact POVM element.
  const HermitianMatrix l = spectral_apply(eig(Model::value(r, lam)), [](double x) { return std::clamp(x, 0.0, 1.0); });
  return {std::max(0.0, r.objective), l};
}

inline ExtReal xi_from_q_min(double q) {
  if (q <= 2.0 * tolerances().infinite_perr) return ExtReal::infinity();
  return std::max(0.0, -std::log2(q));
}

inline ExtReal xi_min(const HermitianMatrix& rho0, const HermitianMatrix& rho1) {
  return xi_from_q_min(q_min(rho0, rho1).value);
}

/// inf{l : rho <= 2^l sigma}
inline ExtReal d_max(const HermitianMatrix& rho, const HermitianMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw Error(ErrorKind::DimensionMismatch, "d_max: dimensions differ");
  require_psd(rho, "d_max argument rho");
  require_psd(sigma, "d_max argument sigma");
  const HermitianMatrix pi = support_projector(sigma);
  if (inner(HermitianMatrix::identity(rho.dim()) - pi, rho) > tolerances().support) return ExtReal::infinity();
  const HermitianMatrix s = pseudo_inverse_sqrt(sigma);
  return std::log2(lambda_max(rho.congruence(s.mat())));
}

inline ExtReal thompson(const HermitianMatrix& rho0, const HermitianMatrix& rho1) {
  return max(d_max(rho0, rho1), d_max(rho1, rho0));
}

inline ExtReal q_from_thompson(const ExtReal& dt) {
  if (dt.is_inf()) return ExtReal::infinity();
  return std::max(1.0, 0.5 * (std::exp2(dt.value()) + 1.0));
}

/// inf{M : rho0 <= (2M-1) rho1, rho1 <= (2M-1) rho0}
inline ExtReal q_max(const HermitianMatrix& rho0, const HermitianMatrix& rho1) {
  return q_from_thompson(thompson(rho0, rho1));
}

inline ExtReal xi_max(const HermitianMatrix& rho0, const HermitianMatrix& rho1) {
  const ExtReal q = q_max(rho0, rho1);
  if (q.is_inf()) return q;
  return std::max(0.0, std::log2(q.value()));
}

/// Thompson metric of the weighted pair (p rho0, (1-p) rho1).
inline ExtReal q_max_star(const QuantumBox& b) {
  if (b.p <= 0.0 || b.p >= 1.0) return ExtReal::infinity();
  return q_from_thompson(thompson(b.p * b.rho0, (1.0 - b.p) * b.rho1));
}

inline ExtReal xi_max_star(const QuantumBox& b) {
  const ExtReal q = q_max_star(b);
  if (q.is_inf()) return q;
  return std::max(0.0, std::log2(q.value()));
}

struct ChernoffResult {
  ExtReal value;       // -log2 of the minimum
  double minimum = 0;  // min_s Tr[rho0^s rho1^{1-s}]
  double s = 0;        // minimizer
};

/// -log2 min_{s in [0,1]} Tr[rho0^s rho1^{1-s}] by golden-section search.
inline ChernoffResult chernoff_detail(const HermitianMatrix& rho0, const HermitianMatrix& rho1) {
  if (rho0.dim() != rho1.dim()) throw Error(ErrorKind::DimensionMismatch, "chernoff: dimensions differ");
  const Tolerances& tol = tolerances();
  const EigenDecomposition e0 = eig(rho0), e1 = eig(rho1);
  if (e0.eigenvalues(0) < -tol.psd_clamp || e1.eigenvalues(0) < -tol.psd_clamp)
    throw Error(ErrorKind::NotPsd, "chernoff of a non-PSD argument");
  const int d = rho0.dim();
  const RMat overlap = (e0.eigenvectors.adjoint() * e1.eigenvectors).cwiseAbs2();
  double support_overlap = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (e0.eigenvalues(i) > tol.psd_clamp && e1.eigenvalues(j) > tol.psd_clamp) support_overlap += overlap(i, j);
  if (support_overlap <= tol.support) return {ExtReal::infinity(), 0.0, 0.5};

  auto f = [&](double s) {
    double v = 0.0;
    for (int i = 0; i < d; ++i) {
      const double a = e0.eigenvalues(i);
      if (a <= tol.psd_clamp) continue;
      for (int j = 0; j < d; ++j) {
        const double b = e1.eigenvalues(j);
        if (b <= tol.psd_clamp) continue;
        v += std::pow(a, s) * std::pow(b, 1.0 - s) * overlap(i, j);
      }
    }
    return v;
  };

  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double lo = 0.0, hi = 1.0;
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < tol.chernoff_max_iter && hi - lo > tol.chernoff_s; ++it) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = f(x2);
    }
  }
  double s = 0.5 * (lo + hi), best = f(s);
  for (double cand : {0.0, 1.0, x1, x2}) {
    const double v = f(cand);
    if (v < best) {
      best = v;
      s = cand;
    }
  }
  return {std::max(0.0, -std::log2(best)), best, s};
}

inline ExtReal chernoff(const HermitianMatrix& rho0, const HermitianMatrix& rho1) {
  return chernoff_detail(rho0, rho1).value;
}

/// D'(rho, sigma) = 1/2 ||rho - sigma||_1 / p_err(sigma), with the exact cases at p_err(sigma) = 0.
inline ExtReal scaled_trace_distance(const QuantumBox& rho, const QuantumBox& sigma) {
  if (rho.dim() != sigma.dim()) throw Error(ErrorKind::DimensionMismatch, "scaled_trace_distance: dimensions differ");
  const double pe = p_err(sigma);
  if (pe <= tolerances().infinite_perr) {
    if (boxes_equal(rho, sigma)) return 0.0;
    return ExtReal::infinity();
  }
  return cq_trace_distance(rho, sigma) / pe;
}

struct DprimeSdpResult {
  double primal = 0.0;
  double dual = 0.0;
};

/// Primal: max t s.t. -I <= L <= I, -tI <= P <= tI, t - Tr P(q s0 - (1-q) s1) = Tr L(rho - sigma).
/// Dual: min Tr(B + C) s.t. B - C = s(rho - sigma), D - E = s(q s0 - (1-q) s1), Tr(D + E) <= s - 1.
/// Solved as two separate programs.
inline DprimeSdpResult scaled_trace_distance_sdp(const QuantumBox& rho, const QuantumBox& sigma) {
  using namespace sdp;
  if (rho.dim() != sigma.dim()) throw Error(ErrorKind::DimensionMismatch, "scaled_trace_distance_sdp: dimensions differ");
  if (p_err(sigma) <= tolerances().infinite_perr)
    throw Error(ErrorKind::InfiniteResource, "scaled_trace_distance_sdp needs p_err(sigma) > 0");
  const int d = rho.dim();
  const HermitianMatrix diff = cq_state(rho) - cq_state(sigma);
  const HermitianMatrix dsig = sigma.p * sigma.rho0 - (1.0 - sigma.p) * sigma.rho1;
  DprimeSdpResult out;

  {
    // L = 2K - I with 0 <= K <= I; P = 2Q - tI with 0 <= Q <= tI.
    Model m;
    PsdVar k = m.add_psd(2 * d);
    PsdVar q = m.add_psd(d);
    ScalarVar t = m.add_nonneg();
    ScalarExpr obj;
    obj.add(t);
    m.maximize(obj);
    MatExpr ke(2 * d);
    ke.add_var(k);
    m.add_psd_le(ke, HermitianMatrix::identity(2 * d));
    MatExpr qe(d);
    qe.add_var(q).add_scalar(t, -1.0 * HermitianMatrix::identity(d));
    m.add_psd_le(qe, HermitianMatrix::zero(d));
    ScalarExpr link;
    link.add(t, 2.0 * sigma.p).add_trace(q, dsig, -2.0).add_trace(k, diff, -2.0);
    m.add_eq(link, 0.0);
    Model::Result r = m.solve();
    require_solved(r, "scaled_trace_distance_sdp primal");
    out.primal = r.objective;
  }
  {
    // B, C block diagonal over the classical label; s = 1 + s'.
    Model m;
    const HermitianMatrix d0 = rho.p * rho.rho0 - sigma.p * sigma.rho0;
    const HermitianMatrix d1 = (1.0 - rho.p) * rho.rho1 - (1.0 - sigma.p) * sigma.rho1;
    PsdVar b0 = m.add_psd(d), b1 = m.add_psd(d), c0 = m.add_psd(d), c1 = m.add_psd(d);
    PsdVar de = m.add_psd(d), ee = m.add_psd(d);
    ScalarVar sp = m.add_nonneg();
    ScalarExpr obj;
    obj.add_trace(b0).add_trace(b1).add_trace(c0).add_trace(c1);
    m.minimize(obj);
    MatExpr e0(d), e1(d), e2(d);
    e0.add_var(b0).add_var(c0, -1.0).add_scalar(sp, -1.0 * d0);
    e1.add_var(b1).add_var(c1, -1.0).add_scalar(sp, -1.0 * d1);
    e2.add_var(de).add_var(ee, -1.0).add_scalar(sp, -1.0 * dsig);
    m.add_eq(e0, d0);
    m.add_eq(e1, d1);
    m.add_eq(e2, dsig);
    ScalarExpr tr;
    tr.add_trace(de).add_trace(ee).add(sp, -1.0);
    m.add_le(tr, 0.0);
    Model::Result r = m.solve();
    require_solved(r, "scaled_trace_distance_sdp dual");
    out.dual = r.objective;
  }
  return out;
}

struct SmoothThompsonResult {
  HermitianMatrix omega0;
  HermitianMatrix omega1;
  ExtReal d_t;
  double bound = 0.0;  // log2(4/eps), or log2(2/eps) for the normalized variant
  bool normalized = false;
};

/// Smoothed pair inside the eps-balls of (omega0, omega1) with bounded Thompson metric.
/// The unit-trace variant is used when both traces are 1 and allow_normalized is set.
inline SmoothThompsonResult smooth_thompson_witness(const HermitianMatrix& w0, const HermitianMatrix& w1, double eps,
                                                    bool allow_normalized = true) {
  if (!(eps > 0.0 && eps <= 1.0)) throw Error(ErrorKind::ParameterRange, "smoothing parameter outside (0,1]");
  if (w0.dim() != w1.dim()) throw Error(ErrorKind::DimensionMismatch, "smooth_thompson_witness: dimensions differ");
  require_psd(w0, "omega0");
  require_psd(w1, "omega1");
  const double ttol = tolerances().state_trace;
  if (w0.trace() > 1.0 + ttol || w1.trace() > 1.0 + ttol)
    throw Error(ErrorKind::ParameterRange, "smooth_thompson_witness needs subnormalized inputs");
  const HermitianMatrix up0 = positive_part(w1 - w0);  // (w1 - w0)_+
  const HermitianMatrix up1 = positive_part(w0 - w1);  // (w0 - w1)_+
  SmoothThompsonResult r;
  if (allow_normalized && std::abs(w0.trace() - 1.0) <= ttol && std::abs(w1.trace() - 1.0) <= ttol) {
    const double lam = std::max(up1.trace() / eps, 1.0);
    const double ep = up1.trace() / lam;
    r.omega0 = (w0 + up0 / lam) / (1.0 + ep);
    r.omega1 = (w1 + up1 / lam) / (1.0 + ep);
    r.bound = std::log2(2.0 / eps);
    r.normalized = true;
  } else {
    const double l0 = std::max(2.0 * up0.trace() / eps, 1.0);
    const double l1 = std::max(2.0 * up1.trace() / eps, 1.0);
    const double e0 = up0.trace() / l0, e1 = up1.trace() / l1;
    r.omega0 = (w0 + up0 / l0) / (1.0 + e0 + e1);
    r.omega1 = (w1 + up1 / l1) / (1.0 + e0 + e1);
    r.bound = std::log2(4.0 / eps);
  }
  r.d_t = thompson(r.omega0, r.omega1);
  return r;
}

}  // namespace symdist
