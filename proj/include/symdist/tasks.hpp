#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "symdist/channels.hpp"

namespace symdist {

enum class Regime { CptpA, Cds };

inline const char* to_string(Regime r) { return r == Regime::CptpA ? "cptpA" : "cds"; }

inline Regime regime_from_string(const std::string& s) {
  if (s == "cptpA" || s == "cptpa" || s == "CPTP_A") return Regime::CptpA;
  if (s == "cds" || s == "CDS") return Regime::Cds;
  throw Error(ErrorKind::ParameterRange, "unknown regime '" + s + "' (expected cptpA or cds)");
}

struct TaskDiagnostics {
  std::string method = "closed-form";
  std::string solver_status = "n/a";
  double gap = 0.0;            // |primal - dual| where a dual is available
  double witness_error = 0.0;  // violation of the witness claim, 0 when exact
  int solves = 0;
};

/// witness maps witness_input to witness_output; witness_error records how far it misses.
struct TaskResult {
  ExtReal value;
  std::optional<CdsMap> witness;
  std::optional<QuantumBox> witness_input;
  std::optional<QuantumBox> witness_output;
  TaskDiagnostics diagnostics;
};

namespace detail {

inline bool singular_prior(double p) { return p <= 0.0 || p >= 1.0; }

inline void set_witness(TaskResult& t, const CdsMap& m, const QuantumBox& in, const QuantumBox& out) {
  t.witness = m;
  t.witness_input = in;
  t.witness_output = out;
  t.diagnostics.witness_error = cq_trace_distance(apply_cds(m, in), out);
}

/// Nearest valid CDS pair: clip both Choi matrices to PSD, then restore Tr_out(g0 + g1) = I by congruence.
inline CdsMap normalize_cds(const HermitianMatrix& g0, const HermitianMatrix& g1, int d_in, int d_out) {
  const HermitianMatrix a = positive_part(g0), b = positive_part(g1);
  const HermitianMatrix t = partial_trace_second(a + b, d_in, d_out);
  const CMat k = kron(pseudo_inverse_sqrt(t).mat(), CMat::Identity(d_out, d_out));
  return {CpMap(a.congruence(k), d_in, d_out), CpMap(b.congruence(k), d_in, d_out)};
}

/// Unit-trace PSD projection.
inline HermitianMatrix to_state(const HermitianMatrix& h) {
  const HermitianMatrix c = positive_part(h);
  return c / c.trace();
}

/// (p, rho0, rho1) from the weighted pair (w0, w1) with Tr(w0 + w1) = 1.
inline QuantumBox box_from_weighted(const HermitianMatrix& w0, const HermitianMatrix& w1) {
  const HermitianMatrix a = positive_part(w0), b = positive_part(w1);
  const double t0 = a.trace(), t1 = b.trace(), tot = t0 + t1;
  const int d = a.dim();
  const HermitianMatrix mix = HermitianMatrix::identity(d) / static_cast<double>(d);
  return {t0 / tot, t0 > 1e-14 ? a / t0 : mix, t1 > 1e-14 ? b / t1 : mix};
}

inline ExtReal log2_value(const ExtReal& M) {
  if (M.is_inf()) return M;
  return std::max(0.0, std::log2(M.value()));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Exact one-shot distillation and dilution

inline TaskResult distill_exact(const QuantumBox& b, Regime regime) {
  TaskResult t;
  if (regime == Regime::CptpA) {
    if (symdist::detail::singular_prior(b.p)) {
      t.value = ExtReal::infinity();
      return t;
    }
    DistillCptpWitness w = distill_channel_cptpA(b);
    t.value = symdist::detail::log2_value(w.M);
    t.diagnostics.method = "q_min sdp";
    t.diagnostics.solves = 1;
    symdist::detail::set_witness(t, CdsMap::cptp_a(w.channel), b, golden_to_box({w.M, b.p}));
    return t;
  }
  t.value = sd(b);
  if (t.value.is_inf()) {
    const QuantumBox out = golden_to_box({ExtReal::infinity(), 0.5});
    symdist::detail::set_witness(t, inf_to_any(b, out), b, out);
  } else {
    symdist::detail::set_witness(t, distill_channel_cds(b), b, golden_to_box({1.0 / (2.0 * p_err(b)), 0.5}));
  }
  return t;
}

inline TaskResult cost_exact(const QuantumBox& b, Regime regime) {
  TaskResult t;
  if (regime == Regime::CptpA) {
    if (symdist::detail::singular_prior(b.p)) {
      t.value = 0.0;
      symdist::detail::set_witness(t, CdsMap::cptp_a(dilute_channel_cptpA(b, 1.0)), golden_to_box({1.0, b.p}), b);
      return t;
    }
    const ExtReal M = q_max(b.rho0, b.rho1);
    t.value = symdist::detail::log2_value(M);
    symdist::detail::set_witness(t, CdsMap::cptp_a(dilute_channel_cptpA(b, M)), golden_to_box({M, b.p}), b);
    return t;
  }
  const ExtReal M = q_max_star(b);
  t.value = symdist::detail::log2_value(M);
  symdist::detail::set_witness(t, dilute_channel_cds(b, M), golden_to_box({M, 0.5}), b);
  return t;
}

// ---------------------------------------------------------------------------
// Conversion

namespace detail {

struct TraceConversion {
  double value = 0.0;
  double q = 0.0;
  CdsMap channel;
  sdp::Status status{};
};

/// min over free maps of 1/2 |N(rho) - (q, s0, s1)|_1. With free_prior the output prior q is optimized too.
inline TraceConversion trace_distance_conversion(const QuantumBox& src, const HermitianMatrix& s0,
                                                 const HermitianMatrix& s1, double q, bool free_prior, Regime regime) {
  using namespace sdp;
  const int d = src.dim(), e = s0.dim();
  const bool cds = regime == Regime::Cds;
  const CMat w0 = (src.p * src.rho0).mat(), w1 = ((1.0 - src.p) * src.rho1).mat();
  Model m;
  PsdVar g0 = m.add_psd(d * e);
  PsdVar g1 = cds ? m.add_psd(d * e) : g0;
  ScalarVar qv{};
  if (free_prior) {
    qv = m.add_nonneg();
    ScalarExpr ql;
    ql.add(qv);
    m.add_le(ql, 1.0);
  }
  MatExpr tau0(e), tau1(e);
  tau0.add_choi_output(g0, d, e, w0, -1.0);
  tau1.add_choi_output(g0, d, e, w1, -1.0);
  if (cds) {
    tau0.add_choi_output(g1, d, e, w1, -1.0);
    tau1.add_choi_output(g1, d, e, w0, -1.0);
  }
  // Y_i - tau_i(G) >= -q_i s_i
  PsdVar y0 = m.add_psd(e), y1 = m.add_psd(e);
  tau0.add_var(y0);
  tau1.add_var(y1);
  if (free_prior) {
    tau0.add_scalar(qv, s0);
    tau1.add_scalar(qv, -1.0 * s1);
    m.add_psd_ge(tau0, HermitianMatrix::zero(e));
    m.add_psd_ge(tau1, -1.0 * s1);
  } else {
    m.add_psd_ge(tau0, -q * s0);
    m.add_psd_ge(tau1, -(1.0 - q) * s1);
  }
  MatExpr tp(d);
  tp.add_partial_trace_second(g0, d, e);
  if (cds) tp.add_partial_trace_second(g1, d, e);
  m.add_eq(tp, HermitianMatrix::identity(d));
  ScalarExpr obj;
  obj.add_trace(y0).add_trace(y1);
  m.minimize(obj);
  Model::Result r = m.solve();
  require_solved(r, "trace-distance conversion");
  TraceConversion out;
  out.value = std::max(0.0, r.objective);
  out.q = free_prior ? std::clamp(m.value(r, qv), 0.0, 1.0) : q;
  out.status = r.sol.status;
  const HermitianMatrix c0 = Model::value(r, g0);
  const HermitianMatrix c1 = cds ? Model::value(r, g1) : HermitianMatrix::zero(d * e);
  out.channel = normalize_cds(c0, c1, d, e);
  return out;
}

/// Rank-one pieces sqrt(l) u of a PSD matrix.
inline std::vector<CVec> psd_factors(const HermitianMatrix& h) {
  const auto es = eig(h);
  std::vector<CVec> out;
  for (int k = 0; k < h.dim(); ++k)
    if (es.eigenvalues(k) > 1e-15) out.push_back(std::sqrt(es.eigenvalues(k)) * es.eigenvectors.col(k));
  return out;
}

/// += a^T (x) X for PSD a, as a sum of congruences with (sqrt(l) u (x) I).
inline void add_kron_left(sdp::MatExpr& ex, const HermitianMatrix& a, sdp::PsdVar x, int e) {
  for (const CVec& u : psd_factors(a.transpose())) ex.add_congruence(x, kron(CMat(u), CMat::Identity(e, e)));
}

/// += coef * K (x) I_e
inline void add_kron_right_identity(sdp::MatExpr& ex, sdp::PsdVar k, int d, int e, double coef) {
  for (int j = 0; j < e; ++j) {
    CMat ej = CMat::Zero(e, 1);
    ej(j, 0) = 1.0;
    ex.add_congruence(k, kron(CMat::Identity(d, d), ej), coef);
  }
}

/// Dual of the trace-distance conversion program at fixed q:
/// max Tr Y - q Tr[W s0] - (1-q) Tr[Z s1] s.t. 0 <= W, Z <= I, a0^T (x) W + a1^T (x) Z >= Y (x) I (and the flipped LMI for CDS).
inline double trace_distance_conversion_dual(const QuantumBox& src, const HermitianMatrix& s0, const HermitianMatrix& s1,
                                             double q, Regime regime) {
  using namespace sdp;
  const int d = src.dim(), e = s0.dim();
  const HermitianMatrix a0 = src.p * src.rho0, a1 = (1.0 - src.p) * src.rho1;
  Model m;
  // Y = K - d I: Y <= I and Tr Y >= 0 at the optimum keep every eigenvalue above -(d - 1).
  PsdVar k = m.add_psd(d), w = m.add_psd(e), z = m.add_psd(e);
  ScalarExpr obj;
  obj.add_trace(k).add_constant(-static_cast<double>(d * d)).add_trace(w, -q * s0).add_trace(z, -(1.0 - q) * s1);
  m.maximize(obj);
  MatExpr wl(e), zl(e);
  wl.add_var(w);
  zl.add_var(z);
  m.add_psd_le(wl, HermitianMatrix::identity(e));
  m.add_psd_le(zl, HermitianMatrix::identity(e));
  const HermitianMatrix shift = -static_cast<double>(d) * HermitianMatrix::identity(d * e);
  auto lmi = [&](const HermitianMatrix& first, const HermitianMatrix& second) {
    MatExpr ex(d * e);
    add_kron_left(ex, first, w, e);
    add_kron_left(ex, second, z, e);
    add_kron_right_identity(ex, k, d, e, -1.0);
    m.add_psd_ge(ex, shift);
  };
  lmi(a0, a1);
  if (regime == Regime::Cds) lmi(a1, a0);
  Model::Result r = m.solve();
  require_solved(r, "trace-distance conversion dual");
  return r.objective;
}

}  // namespace detail

struct InfiniteConversionResult {
  double primal = 0.0;
  double dual = 0.0;
  double q = 0.0;  // optimal output prior
};

/// min over free maps of 1/2 |N(b) - gamma^(inf, q)|_1; equals p_err(b).
inline InfiniteConversionResult conversion_error_to_infinite(const QuantumBox& b, Regime regime) {
  const auto k0 = HermitianMatrix::basis_projector(2, 0), k1 = HermitianMatrix::basis_projector(2, 1);
  const bool free_prior = regime == Regime::Cds;
  symdist::detail::TraceConversion tc = symdist::detail::trace_distance_conversion(b, k0, k1, b.p, free_prior, regime);
  InfiniteConversionResult out;
  out.primal = tc.value;
  out.q = tc.q;
  out.dual = symdist::detail::trace_distance_conversion_dual(b, k0, k1, tc.q, regime);
  return out;
}

/// d'(source -> target) minimized over free maps.
inline TaskResult min_conversion_error(const QuantumBox& source, const QuantumBox& target, Regime regime) {
  using namespace sdp;
  TaskResult t;
  const int d = source.dim(), e = target.dim();
  const bool cds = regime == Regime::Cds;

  if (is_infinite_resource(target)) {
    // D' is 0 or infinite: only an exact conversion counts.
    symdist::detail::TraceConversion tc =
        symdist::detail::trace_distance_conversion(source, target.rho0, target.rho1, target.p, false, regime);
    t.diagnostics.method = "trace-distance conversion sdp";
    t.diagnostics.solver_status = sdp::to_string(tc.status);
    t.diagnostics.solves = 1;
    t.value = tc.value <= 1e-7 ? ExtReal(0.0) : ExtReal::infinity();
    if (t.value.is_finite()) symdist::detail::set_witness(t, tc.channel, source, target);
    return t;
  }

  const HermitianMatrix s0 = target.p * target.rho0, s1 = (1.0 - target.p) * target.rho1;
  const HermitianMatrix ds = s0 - s1;
  const CMat w0 = (source.p * source.rho0).mat(), w1 = ((1.0 - source.p) * source.rho1).mat();
  Model m;
  PsdVar b0 = m.add_psd(e), b1 = m.add_psd(e), c0 = m.add_psd(e), c1 = m.add_psd(e);
  PsdVar dv = m.add_psd(e), ev = m.add_psd(e);
  PsdVar om0 = m.add_psd(d * e);
  PsdVar om1 = cds ? m.add_psd(d * e) : om0;
  ScalarVar sp = m.add_nonneg();  // s = 1 + s'
  ScalarExpr obj;
  obj.add_trace(b0).add_trace(b1).add_trace(c0).add_trace(c1);
  m.minimize(obj);

  MatExpr blk0(e), blk1(e);
  blk0.add_var(b0).add_var(c0, -1.0).add_choi_output(om0, d, e, w0, -1.0).add_scalar(sp, s0);
  blk1.add_var(b1).add_var(c1, -1.0).add_choi_output(om0, d, e, w1, -1.0).add_scalar(sp, s1);
  if (cds) {
    blk0.add_choi_output(om1, d, e, w1, -1.0);
    blk1.add_choi_output(om1, d, e, w0, -1.0);
  }
  m.add_eq(blk0, -1.0 * s0);
  m.add_eq(blk1, -1.0 * s1);
  MatExpr de(e);
  de.add_var(dv).add_var(ev, -1.0).add_scalar(sp, -1.0 * ds);
  m.add_eq(de, ds);
  ScalarExpr tr;
  tr.add_trace(dv).add_trace(ev).add(sp, -1.0);
  m.add_le(tr, 0.0);
  MatExpr tp(d);
  tp.add_partial_trace_second(om0, d, e);
  if (cds) tp.add_partial_trace_second(om1, d, e);
  tp.add_scalar(sp, -1.0 * HermitianMatrix::identity(d));
  m.add_eq(tp, HermitianMatrix::identity(d));

  Model::Result r = m.solve();
  require_solved(r, "min_conversion_error");
  t.value = std::max(0.0, r.objective);
  t.diagnostics.method = "conversion sdp";
  t.diagnostics.solver_status = sdp::to_string(r.sol.status);
  t.diagnostics.gap = std::abs(r.objective - r.dual_objective);
  t.diagnostics.solves = 1;

  const double s = 1.0 + m.value(r, sp);
  const HermitianMatrix g0 = Model::value(r, om0) / s;
  const HermitianMatrix g1 = cds ? Model::value(r, om1) / s : HermitianMatrix::zero(d * e);
  const CdsMap w = symdist::detail::normalize_cds(g0, g1, d, e);
  const QuantumBox out = apply_cds(w, source);
  t.witness = w;
  t.witness_input = source;
  t.witness_output = out;
  t.diagnostics.witness_error = std::abs(scaled_trace_distance(out, target).value() - t.value.value());
  return t;
}

// ---------------------------------------------------------------------------
// Approximate distillation

namespace detail {

inline double clamp_r(double r) { return std::clamp(r, 0.0, 1.0); }

inline void approx_witness(TaskResult& t, const CdsMap& m, const QuantumBox& b, const QuantumBox& golden, double eps) {
  t.witness = m;
  t.witness_input = b;
  t.witness_output = golden;
  const ExtReal dp = scaled_trace_distance(apply_cds(m, b), golden);
  t.diagnostics.witness_error = std::max(0.0, dp.value() - eps);
}

}  // namespace detail

/// -log2 of the smallest r such that some free map sends b within D' <= eps of the (1/r, .) golden unit.
inline TaskResult distill_approx(const QuantumBox& b, double eps, Regime regime) {
  using namespace sdp;
  if (!(eps >= 0.0)) throw Error(ErrorKind::ParameterRange, "eps must be >= 0");
  if (is_infinite_resource(b) || (regime == Regime::CptpA && symdist::detail::singular_prior(b.p))) {
    TaskResult t = distill_exact(b, regime);
    t.value = ExtReal::infinity();
    return t;
  }
  const int d = b.dim();
  const double p = b.p;
  TaskResult t;
  t.diagnostics.solves = 1;
  Model m;
  ScalarVar r = m.add_nonneg();
  ScalarVar c00 = m.add_nonneg(), c01 = m.add_nonneg(), c10 = m.add_nonneg(), c11 = m.add_nonneg();
  {
    ScalarExpr rl;
    rl.add(r);
    m.add_le(rl, 1.0);
    ScalarExpr obj;
    obj.add(r);
    m.minimize(obj);
  }

  if (regime == Regime::CptpA) {
    t.diagnostics.method = "approximate distillation sdp (cptpA)";
    ScalarVar e0 = m.add_nonneg(), e1 = m.add_nonneg();
    PsdVar lam = m.add_psd(d);
    MatExpr le(d);
    le.add_var(lam);
    m.add_psd_le(le, HermitianMatrix::identity(d));
    // sum c <= eps * p_err(golden(1/r, p)), with p_err = 1 - p - e0 - e1 at the lower bounds of e.
    ScalarExpr budget;
    budget.add(c00).add(c01).add(c10).add(c11).add(e0, eps).add(e1, eps);
    m.add_le(budget, eps * (1.0 - p));
    ScalarExpr a00, a01, a10, a11, f0, f1;
    a00.add(c00).add_trace(lam, p * b.rho0).add(r, 0.5 * p);
    a01.add(c01).add_trace(lam, -p * b.rho0).add(r, -0.5 * p);
    a10.add(c10).add_trace(lam, (1.0 - p) * b.rho1).add(r, -0.5 * (1.0 - p));
    a11.add(c11).add_trace(lam, -(1.0 - p) * b.rho1).add(r, 0.5 * (1.0 - p));
    m.add_ge(a00, p);
    m.add_ge(a01, -p);
    m.add_ge(a10, 0.0);
    m.add_ge(a11, 0.0);
    f0.add(e0).add(r, -0.5);
    f1.add(e1).add(r, 0.5);
    m.add_ge(f0, -p);
    m.add_ge(f1, 1.0 - p);
    Model::Result res = m.solve();
    require_solved(res, "distill_approx cptpA");
    t.diagnostics.solver_status = sdp::to_string(res.sol.status);
    const double rv = symdist::detail::clamp_r(m.value(res, r));
    t.value = rv <= 1e-9 ? ExtReal::infinity() : ExtReal(std::max(0.0, -std::log2(rv)));
    const HermitianMatrix l =
        spectral_apply(eig(Model::value(res, lam)), [](double x) { return std::clamp(x, 0.0, 1.0); });
    const ExtReal M = rv <= 1e-9 ? ExtReal::infinity() : ExtReal(1.0 / rv);
    symdist::detail::approx_witness(t, CdsMap::cptp_a(binary_measure_prepare(HermitianMatrix::identity(d) - l)), b,
                           golden_to_box({M, p}), eps);
    return t;
  }

  t.diagnostics.method = "approximate distillation sdp (cds)";
  PsdVar l00 = m.add_psd(d), l01 = m.add_psd(d), l10 = m.add_psd(d), l11 = m.add_psd(d);
  ScalarExpr budget;
  budget.add(c00, 2.0).add(c01, 2.0).add(c10, 2.0).add(c11, 2.0).add(r, -eps);
  m.add_le(budget, 0.0);
  const HermitianMatrix w0 = p * b.rho0, w1 = (1.0 - p) * b.rho1;
  ScalarExpr a00, a01, a10, a11;
  a00.add_trace(l00, w0).add_trace(l10, w1).add(r, 0.25).add(c00);
  a01.add_trace(l01, w0).add_trace(l11, w1).add(r, -0.25).add(c01);
  a10.add_trace(l10, w0).add_trace(l00, w1).add(r, -0.25).add(c10);
  a11.add_trace(l11, w0).add_trace(l01, w1).add(r, 0.25).add(c11);
  m.add_ge(a00, 0.5);
  m.add_ge(a01, 0.0);
  m.add_ge(a10, 0.0);
  m.add_ge(a11, 0.5);
  MatExpr povm(d);
  povm.add_var(l00).add_var(l01).add_var(l10).add_var(l11);
  m.add_eq(povm, HermitianMatrix::identity(d));
  Model::Result res = m.solve();
  require_solved(res, "distill_approx cds");
  t.diagnostics.solver_status = sdp::to_string(res.sol.status);
  const double rv = symdist::detail::clamp_r(m.value(res, r));
  t.value = rv <= 1e-9 ? ExtReal::infinity() : ExtReal(std::max(0.0, -std::log2(rv)));

  // Outcome (x, k) of the four-outcome POVM prepares |k> on branch e_x; normalize so the effects sum to I.
  std::vector<HermitianMatrix> ls = {positive_part(Model::value(res, l00)), positive_part(Model::value(res, l01)),
                                     positive_part(Model::value(res, l10)), positive_part(Model::value(res, l11))};
  const CMat n = pseudo_inverse_sqrt(ls[0] + ls[1] + ls[2] + ls[3]).mat();
  for (auto& x : ls) x = x.congruence(n);
  const auto k0 = HermitianMatrix::basis_projector(2, 0), k1 = HermitianMatrix::basis_projector(2, 1);
  const CdsMap w{CpMap::measure_prepare({ls[0], ls[1]}, {k0, k1}), CpMap::measure_prepare({ls[2], ls[3]}, {k0, k1})};
  const ExtReal M = rv <= 1e-9 ? ExtReal::infinity() : ExtReal(1.0 / rv);
  symdist::detail::approx_witness(t, w, b, golden_to_box({M, 0.5}), eps);
  return t;
}

// ---------------------------------------------------------------------------
// Approximate cost

namespace detail {

struct SmoothedAtM {
  double distance = 0.0;
  QuantumBox box;
};

/// Closest box to b (in trace distance) whose exact cost is at most M.
inline SmoothedAtM nearest_within_cost(const QuantumBox& b, double M, Regime regime) {
  using namespace sdp;
  const int d = b.dim();
  const double k = 2.0 * M - 1.0;
  Model m;
  PsdVar t0 = m.add_psd(d), t1 = m.add_psd(d);
  PsdVar p0 = m.add_psd(d), n0 = m.add_psd(d), p1 = m.add_psd(d), n1 = m.add_psd(d);
  const double w0 = regime == Regime::CptpA ? b.p : 1.0, w1 = regime == Regime::CptpA ? 1.0 - b.p : 1.0;
  if (regime == Regime::CptpA) {
    ScalarExpr tr0, tr1;
    tr0.add_trace(t0);
    tr1.add_trace(t1);
    m.add_eq(tr0, 1.0);
    m.add_eq(tr1, 1.0);
  } else {
    ScalarExpr tr;
    tr.add_trace(t0).add_trace(t1);
    m.add_eq(tr, 1.0);
  }
  MatExpr up(d), dn(d);
  up.add_var(t1, k).add_var(t0, -1.0);
  dn.add_var(t0, k).add_var(t1, -1.0);
  m.add_psd_ge(up, HermitianMatrix::zero(d));
  m.add_psd_ge(dn, HermitianMatrix::zero(d));
  MatExpr e0(d), e1(d);
  e0.add_var(p0).add_var(n0, -1.0).add_var(t0, -w0);
  e1.add_var(p1).add_var(n1, -1.0).add_var(t1, -w1);
  m.add_eq(e0, -b.p * b.rho0);
  m.add_eq(e1, -(1.0 - b.p) * b.rho1);
  ScalarExpr obj;
  obj.add_trace(p0, 0.5).add_trace(n0, 0.5).add_trace(p1, 0.5).add_trace(n1, 0.5);
  m.minimize(obj);
  Model::Result r = m.solve();
  require_solved(r, "cost_approx feasibility");
  SmoothedAtM out;
  out.distance = std::max(0.0, r.objective);
  const HermitianMatrix a = Model::value(r, t0), c = Model::value(r, t1);
  if (regime == Regime::CptpA) out.box = {b.p, to_state(a), to_state(c)};
  else out.box = box_from_weighted(a, c);
  return out;
}

}  // namespace detail

/// log2 of the smallest M such that the (M, .) golden unit reaches a box within D' <= eps of b.
inline TaskResult cost_approx(const QuantumBox& b, double eps, Regime regime) {
  if (!(eps >= 0.0)) throw Error(ErrorKind::ParameterRange, "eps must be >= 0");
  const double pe = p_err(b);
  if (pe <= tolerances().infinite_perr || (regime == Regime::CptpA && symdist::detail::singular_prior(b.p))) {
    TaskResult t = cost_exact(b, regime);
    t.diagnostics.method = "exact cost (degenerate ball)";
    return t;
  }
  TaskResult t;
  t.diagnostics.method = "bisection over M";
  const double radius = eps * pe;
  const double slack = 5e-8;
  int solves = 0;
  auto feasible = [&](double M, symdist::detail::SmoothedAtM* keep) {
    symdist::detail::SmoothedAtM s = symdist::detail::nearest_within_cost(b, M, regime);
    ++solves;
    if (keep) *keep = s;
    return s.distance <= radius + slack;
  };

  symdist::detail::SmoothedAtM best;
  double lo = 1.0, hi;
  if (feasible(1.0, &best)) {
    hi = 1.0;
  } else {
    const ExtReal exact = regime == Regime::CptpA ? q_max(b.rho0, b.rho1) : q_max_star(b);
    if (exact.is_finite()) {
      // b itself is feasible at its exact cost; no solve needed for the upper bracket.
      hi = std::max(1.0, exact.value());
      best = {0.0, b};
    } else {
      hi = 2.0;
      const double cap = std::ldexp(1.0, 40);
      while (!feasible(hi, &best)) {
        lo = hi;
        hi *= 2.0;
        if (hi > cap) {
          t.value = ExtReal::infinity();
          t.diagnostics.solves = solves;
          return t;
        }
      }
    }
    while (hi - lo > tolerances().bisection_M) {
      const double mid = 0.5 * (lo + hi);
      symdist::detail::SmoothedAtM s;
      if (feasible(mid, &s)) {
        hi = mid;
        best = s;
      } else {
        lo = mid;
      }
    }
  }
  t.value = std::max(0.0, std::log2(hi));
  t.diagnostics.solves = solves;

  // Dilution witness onto the smoothed box; its exact cost can exceed hi by solver accuracy.
  const QuantumBox& sm = best.box;
  const double dist = scaled_trace_distance(sm, b).value();
  try {
    const ExtReal need = regime == Regime::CptpA ? q_max(sm.rho0, sm.rho1) : q_max_star(sm);
    const ExtReal Mw = need.is_finite() ? ExtReal(std::max(hi, need.value())) : need;
    const CdsMap w = regime == Regime::CptpA ? CdsMap::cptp_a(dilute_channel_cptpA(sm, Mw)) : dilute_channel_cds(sm, Mw);
    const QuantumBox in = golden_to_box({Mw, regime == Regime::CptpA ? b.p : 0.5});
    symdist::detail::set_witness(t, w, in, sm);
    t.diagnostics.witness_error += std::max(0.0, dist - eps);
    if (Mw.is_finite()) t.diagnostics.gap = std::log2(Mw.value()) - t.value.value();
  } catch (const Error&) {
    t.diagnostics.method += " (no witness: smoothed box off the dilution domain)";
  }
  return t;
}

// ---------------------------------------------------------------------------
// Asymptotic rates

struct AsymptoticRates {
  ExtReal distill;
  ExtReal exact_cost;
  ExtReal approx_cost;
};

inline AsymptoticRates asymptotic_rates(const QuantumBox& b) {
  if (symdist::detail::singular_prior(b.p)) throw Error(ErrorKind::ParameterRange, "asymptotic_rates needs p in (0,1)");
  const ExtReal c = chernoff(b.rho0, b.rho1);
  return {c, thompson(b.rho0, b.rho1), c};
}

struct TransformRate {
  ExtReal achievable;
  ExtReal strong_converse;
};

namespace detail {

inline bool chernoff_zero(const ExtReal& x) { return x.is_finite() && x.value() <= 1e-9; }

/// a / b with inf/inf = inf, x/0 = inf; 0/0 resolved by the caller.
inline ExtReal rate_ratio(const ExtReal& a, const ExtReal& b) {
  if (a.is_inf()) return ExtReal::infinity();
  if (b.is_inf()) return 0.0;
  if (chernoff_zero(b)) return ExtReal::infinity();
  return a.value() / b.value();
}

}  // namespace detail

/// Optimal achievable and strong converse rates of source -> target as a case table on Chernoff divergences and priors.
inline TransformRate transform_rate(const QuantumBox& source, const QuantumBox& target, Regime regime) {
  const double p = source.p, q = target.p;
  const ExtReal xr = chernoff(source.rho0, source.rho1), xs = chernoff(target.rho0, target.rho1);
  const ExtReal inf = ExtReal::infinity();
  const bool sp = symdist::detail::singular_prior(p), sq = symdist::detail::singular_prior(q);
  const bool zr = symdist::detail::chernoff_zero(xr), zs = symdist::detail::chernoff_zero(xs);

  if (regime == Regime::Cds) {
    if (sp) return {inf, inf};
    if (sq) return xr.is_inf() ? TransformRate{inf, inf} : TransformRate{0.0, 0.0};
    if (!zs) {
      const ExtReal r = zr ? ExtReal(0.0) : symdist::detail::rate_ratio(xr, xs);
      return {r, r};
    }
    if (!zr) return {inf, inf};
    if (std::max(p, 1.0 - p) >= std::max(q, 1.0 - q)) return {inf, inf};
    return {0.0, inf};
  }

  const bool equal_priors = std::abs(p - q) <= 1e-12;
  if (sq) return equal_priors ? TransformRate{inf, inf} : TransformRate{0.0, 0.0};
  if (sp) return zs ? TransformRate{0.0, inf} : TransformRate{0.0, 0.0};
  if (equal_priors) {
    if (zr && zs) return {inf, inf};
    if (zr) return {0.0, 0.0};
    const ExtReal r = symdist::detail::rate_ratio(xr, xs);
    return {r, r};
  }
  return zs ? TransformRate{0.0, inf} : TransformRate{0.0, 0.0};
}

}  // namespace symdist
