#pragma once

#include <cmath>
#include <vector>

#include "symdist/divergences.hpp"
#include "symdist/random.hpp"

namespace symdist {

/// Completely positive map stored as its Choi matrix sum |i><j| (x) N(|i><j|), input first.
class CpMap {
 public:
  CpMap() = default;
  CpMap(HermitianMatrix choi, int d_in, int d_out) : choi_(std::move(choi)), d_in_(d_in), d_out_(d_out) {
    if (choi_.dim() != d_in * d_out) throw Error(ErrorKind::DimensionMismatch, "Choi matrix shape");
    if (lambda_min(choi_) < -1e-9) throw Error(ErrorKind::InvalidChannel, "Choi matrix is not PSD");
  }

  static CpMap zero(int d_in, int d_out) { return {HermitianMatrix::zero(d_in * d_out), d_in, d_out}; }
  static CpMap identity(int d) { return from_kraus({CMat::Identity(d, d)}); }

  static CpMap from_kraus(const std::vector<CMat>& ks) {
    if (ks.empty()) throw Error(ErrorKind::InvalidChannel, "empty Kraus list");
    const int di = static_cast<int>(ks[0].cols()), dout = static_cast<int>(ks[0].rows());
    CMat c = CMat::Zero(di * dout, di * dout);
    for (const CMat& k : ks) {
      if (k.rows() != dout || k.cols() != di) throw Error(ErrorKind::DimensionMismatch, "Kraus operator shape");
      CVec v(di * dout);
      for (int i = 0; i < di; ++i)
        for (int o = 0; o < dout; ++o) v(i * dout + o) = k(o, i);
      c += v * v.adjoint();
    }
    return {HermitianMatrix(c), di, dout};
  }

  /// sum_k Tr[L_k .] w_k
  static CpMap measure_prepare(const std::vector<HermitianMatrix>& effects, const std::vector<HermitianMatrix>& outputs) {
    if (effects.size() != outputs.size() || effects.empty())
      throw Error(ErrorKind::DimensionMismatch, "measure_prepare: effect/output count");
    const int di = effects[0].dim(), dout = outputs[0].dim();
    CMat c = CMat::Zero(di * dout, di * dout);
    for (size_t k = 0; k < effects.size(); ++k) c += kron(effects[k].transpose().mat(), outputs[k].mat());
    return {HermitianMatrix(c, 1e-6), di, dout};
  }

  const HermitianMatrix& choi() const { return choi_; }
  int d_in() const { return d_in_; }
  int d_out() const { return d_out_; }

  /// Tr_A[(rho^T (x) I) choi]
  HermitianMatrix apply(const HermitianMatrix& rho) const {
    if (rho.dim() != d_in_) throw Error(ErrorKind::DimensionMismatch, "channel input dimension");
    CMat out = CMat::Zero(d_out_, d_out_);
    for (int a = 0; a < d_in_; ++a)
      for (int b = 0; b < d_in_; ++b) {
        const cplx w = rho(a, b);
        if (w == 0.0) continue;
        out += w * choi_.mat().block(a * d_out_, b * d_out_, d_out_, d_out_);
      }
    return HermitianMatrix(out, 1e-6);
  }

  /// Tr_out[choi], equal to I for a trace-preserving map.
  HermitianMatrix trace_dual_identity() const { return partial_trace_second(choi_, d_in_, d_out_); }

  bool is_cptp(double tol = 1e-8) const {
    return trace_dual_identity().max_abs_diff(HermitianMatrix::identity(d_in_)) <= tol;
  }

  CpMap operator+(const CpMap& o) const {
    same_shape(o);
    return {choi_ + o.choi_, d_in_, d_out_};
  }
  CpMap scaled(double c) const { return {c * choi_, d_in_, d_out_}; }

  /// U N(.) U^dagger
  CpMap then_unitary(const CMat& u) const {
    CMat k = kron(CMat::Identity(d_in_, d_in_), u);
    return {choi_.congruence(k), d_in_, d_out_};
  }

 private:
  void same_shape(const CpMap& o) const {
    if (o.d_in_ != d_in_ || o.d_out_ != d_out_) throw Error(ErrorKind::DimensionMismatch, "channel shapes differ");
  }

  HermitianMatrix choi_;
  int d_in_ = 0;
  int d_out_ = 0;
};

/// id_X (x) e0 + F_X (x) e1 with e0 + e1 trace preserving. CPTP_A when e1 = 0.
struct CdsMap {
  CpMap e0;
  CpMap e1;

  static CdsMap cptp_a(const CpMap& e) { return {e, CpMap::zero(e.d_in(), e.d_out())}; }

  int d_in() const { return e0.d_in(); }
  int d_out() const { return e0.d_out(); }
  bool is_cptp_a(double tol = 1e-12) const { return e1.choi().max_abs() <= tol; }
};

inline void validate(const CdsMap& m, double tol = 1e-8) {
  if (m.e0.d_in() != m.e1.d_in() || m.e0.d_out() != m.e1.d_out())
    throw Error(ErrorKind::InvalidChannel, "CDS branches differ in shape");
  if (!(m.e0 + m.e1).is_cptp(tol)) throw Error(ErrorKind::InvalidChannel, "CDS branches do not sum to a CPTP map");
}

/// Branch bookkeeping: block 0 = e0(p rho0) + e1((1-p) rho1), block 1 = e1(p rho0) + e0((1-p) rho1).
/// A zero-weight branch gets the maximally mixed state.
inline QuantumBox apply_cds(const CdsMap& m, const QuantumBox& b) {
  if (m.d_in() != b.dim()) throw Error(ErrorKind::DimensionMismatch, "apply_cds: channel input dimension");
  if (m.e0.d_in() != m.e1.d_in() || m.e0.d_out() != m.e1.d_out())
    throw Error(ErrorKind::InvalidChannel, "CDS branches differ in shape");
  const HermitianMatrix a = b.p * b.rho0, c = (1.0 - b.p) * b.rho1;
  const HermitianMatrix o0 = m.e0.apply(a) + m.e1.apply(c);
  const HermitianMatrix o1 = m.e1.apply(a) + m.e0.apply(c);
  const double t0 = o0.trace(), t1 = o1.trace(), tot = t0 + t1;
  const int d = m.d_out();
  constexpr double kZero = 1e-14;
  QuantumBox out;
  out.p = std::clamp(t0 / tot, 0.0, 1.0);
  out.rho0 = t0 > kZero ? o0 / t0 : HermitianMatrix::identity(d) / d;
  out.rho1 = t1 > kZero ? o1 / t1 : HermitianMatrix::identity(d) / d;
  return out;
}

/// CPTP_A action (p, rho0, rho1) -> (p, N(rho0), N(rho1)).
inline QuantumBox apply_cptp(const CpMap& n, const QuantumBox& b) {
  return {b.p, n.apply(b.rho0), n.apply(b.rho1)};
}

/// Generalized amplitude damping with Kraus operators
/// sqrt(1-N)[[1,0],[0,sqrt(1-g)]], sqrt(1-N)[[0,sqrt g],[0,0]], sqrt N[[sqrt(1-g),0],[0,1]], sqrt N[[0,0],[sqrt g,0]].
inline CpMap gad_channel(double gamma, double n) {
  if (!(gamma >= 0.0 && gamma <= 1.0) || !(n >= 0.0 && n <= 1.0))
    throw Error(ErrorKind::ParameterRange, "gad_channel parameters outside [0,1]");
  const double a = std::sqrt(1.0 - n), b = std::sqrt(n), g = std::sqrt(gamma), h = std::sqrt(1.0 - gamma);
  CMat k0(2, 2), k1(2, 2), k2(2, 2), k3(2, 2);
  k0 << a, 0, 0, a * h;
  k1 << 0, a * g, 0, 0;
  k2 << b * h, 0, 0, b;
  k3 << 0, 0, b * g, 0;
  return CpMap::from_kraus({k0, k1, k2, k3});
}

/// Projector onto the strictly negative eigenspace of p rho0 - (1-p) rho1; zero eigenvalues go to the complement.
inline HermitianMatrix helstrom_povm(const QuantumBox& b) {
  const double tol = tolerances().psd_clamp;
  return spectral_apply(eig(b.p * b.rho0 - (1.0 - b.p) * b.rho1), [&](double l) { return l < -tol ? 1.0 : 0.0; });
}

/// p Tr[L rho0] + (1-p) Tr[(I - L) rho1]
inline double measurement_error(const QuantumBox& b, const HermitianMatrix& lam) {
  return b.p * inner(lam, b.rho0) + (1.0 - b.p) * (1.0 - inner(lam, b.rho1));
}

/// (rho0 + rho1)^{-1/2} rho1 (rho0 + rho1)^{-1/2} on the support.
inline HermitianMatrix pgm(const HermitianMatrix& rho0, const HermitianMatrix& rho1) {
  const HermitianMatrix s = pseudo_inverse_sqrt(rho0 + rho1);
  return rho1.congruence(s.mat());
}

/// Tr[(I - L) .] |0><0| + Tr[L .] |1><1|
inline CpMap binary_measure_prepare(const HermitianMatrix& lam) {
  const int d = lam.dim();
  return CpMap::measure_prepare({HermitianMatrix::identity(d) - lam, lam},
                                {HermitianMatrix::basis_projector(2, 0), HermitianMatrix::basis_projector(2, 1)});
}

struct DistillCptpWitness {
  CpMap channel;
  ExtReal M;
};

/// Measure-and-prepare channel from the Q_min minimizer; maps b to the (M, p) golden unit.
inline DistillCptpWitness distill_channel_cptpA(const QuantumBox& b) {
  const QminResult q = q_min(b.rho0, b.rho1);
  const double t = inner(q.Lambda, b.rho0);
  ExtReal M = t <= tolerances().infinite_perr ? ExtReal::infinity() : ExtReal(std::max(1.0, 1.0 / (2.0 * t)));
  return {binary_measure_prepare(q.Lambda), M};
}

/// CDS map from the Helstrom measurement; maps b to the (1/(2 p_err), 1/2) golden unit.
inline CdsMap distill_channel_cds(const QuantumBox& b) {
  if (is_infinite_resource(b))
    throw Error(ErrorKind::InfiniteResource, "distill_channel_cds: infinite-resource box, use inf_to_any");
  const HermitianMatrix lam = helstrom_povm(b);
  const int d = b.dim();
  const HermitianMatrix id = HermitianMatrix::identity(d);
  const auto k0 = HermitianMatrix::basis_projector(2, 0), k1 = HermitianMatrix::basis_projector(2, 1);
  CpMap e0 = CpMap::measure_prepare({0.5 * (id - lam), 0.5 * lam}, {k0, k1});
  CpMap e1 = CpMap::measure_prepare({0.5 * (id - lam), 0.5 * lam}, {k1, k0});
  return {e0, e1};
}

/// [(2M-1) a - b] / (2M-2), checked PSD.
inline HermitianMatrix dilution_state(const HermitianMatrix& a, const HermitianMatrix& b, double num, double den) {
  HermitianMatrix r = (num * a - b) / den;
  if (lambda_min(r) < -1e-9) throw Error(ErrorKind::MTooSmall, "dilution: M below the exact cost");
  return r;
}

/// Measure-and-prepare channel mapping the (M, p) golden unit to the target.
inline CpMap dilute_channel_cptpA(const QuantumBox& target, const ExtReal& M) {
  const auto k0 = HermitianMatrix::basis_projector(2, 0), k1 = HermitianMatrix::basis_projector(2, 1);
  if (target.p <= 0.0 || target.p >= 1.0) {
    const HermitianMatrix& rho = target.p <= 0.0 ? target.rho1 : target.rho0;
    return CpMap::measure_prepare({HermitianMatrix::identity(2)}, {rho});
  }
  if (target.rho0.max_abs_diff(target.rho1) <= tolerances().box_equality)
    return CpMap::measure_prepare({HermitianMatrix::identity(2)}, {target.rho0});
  // pi_inf is sharp: prepare each state directly.
  if (M.is_inf()) return CpMap::measure_prepare({k0, k1}, {target.rho0, target.rho1});
  const double m = M.value();
  if (m <= 1.0) throw Error(ErrorKind::MTooSmall, "dilution: M = 1 needs equal target states");
  const HermitianMatrix t0 = dilution_state(target.rho0, target.rho1, 2.0 * m - 1.0, 2.0 * m - 2.0);
  const HermitianMatrix t1 = dilution_state(target.rho1, target.rho0, 2.0 * m - 1.0, 2.0 * m - 2.0);
  return CpMap::measure_prepare({k0, k1}, {t0, t1});
}

/// CDS map mapping the (M, 1/2) golden unit to the target.
inline CdsMap dilute_channel_cds(const QuantumBox& target, const ExtReal& M) {
  const auto k0 = HermitianMatrix::basis_projector(2, 0), k1 = HermitianMatrix::basis_projector(2, 1);
  const double p = target.p;
  if (M.is_inf()) {
    // pi_inf is sharp: prepare each branch directly.
    CpMap e0 = CpMap::measure_prepare({k0, k1}, {p * target.rho0, (1.0 - p) * target.rho1});
    CpMap e1 = CpMap::measure_prepare({k0, k1}, {(1.0 - p) * target.rho1, p * target.rho0});
    return {e0, e1};
  }
  const double m = M.value();
  const double floor = 0.5 * std::max(1.0 / std::max(p, 1e-300), 1.0 / std::max(1.0 - p, 1e-300));
  if (m < floor - 1e-9) throw Error(ErrorKind::MTooSmall, "dilution: M below 1/(2 min(p, 1-p))");
  const bool equal_states = target.rho0.max_abs_diff(target.rho1) <= tolerances().box_equality;
  if (std::abs(m - floor) <= 1e-9 * std::max(1.0, m)) {
    if (!equal_states) throw Error(ErrorKind::MTooSmall, "dilution: M at the prior floor needs equal target states");
    // E0 = <1|.|1> rho, E1 = <0|.|0> rho for p <= 1/2; flipped labels otherwise.
    const HermitianMatrix& rho = target.rho0;
    const HermitianMatrix z = HermitianMatrix::zero(target.dim());
    if (p <= 0.5) return {CpMap::measure_prepare({k0, k1}, {z, rho}), CpMap::measure_prepare({k0, k1}, {rho, z})};
    return {CpMap::measure_prepare({k0, k1}, {rho, z}), CpMap::measure_prepare({k0, k1}, {z, rho})};
  }
  const double q = (2.0 * m * p - 1.0) / (2.0 * m - 2.0);
  const HermitianMatrix t0 =
      dilution_state(p * target.rho0, (1.0 - p) * target.rho1, 2.0 * m - 1.0, 2.0 * m * p - 1.0);
  const HermitianMatrix t1 =
      dilution_state((1.0 - p) * target.rho1, p * target.rho0, 2.0 * m - 1.0, 2.0 * m * (1.0 - p) - 1.0);
  CpMap e0 = CpMap::measure_prepare({k0, k1}, {q * t0, (1.0 - q) * t1});
  CpMap e1 = CpMap::measure_prepare({k0, k1}, {(1.0 - q) * t1, q * t0});
  return {e0, e1};
}

/// Exact CDS conversion out of an infinite-resource source via a perfect discriminating POVM.
inline CdsMap inf_to_any(const QuantumBox& source, const QuantumBox& target) {
  if (!is_infinite_resource(source)) throw Error(ErrorKind::NotInfiniteResource, "inf_to_any needs p_err(source) = 0");
  const int d = source.dim();
  HermitianMatrix lam;
  if (source.p <= tolerances().infinite_perr) {
    lam = HermitianMatrix::zero(d);  // only the flagged-1 branch carries weight
  } else if (source.p >= 1.0 - tolerances().infinite_perr) {
    lam = HermitianMatrix::identity(d);
  } else {
    // L = I - Pi_rho1 satisfies Tr[L rho0] = 1, Tr[(I - L) rho1] = 1.
    lam = HermitianMatrix::identity(d) - support_projector(source.rho1);
  }
  const HermitianMatrix id = HermitianMatrix::identity(d);
  const double q = target.p;
  CpMap e0 = CpMap::measure_prepare({lam, id - lam}, {q * target.rho0, (1.0 - q) * target.rho1});
  CpMap e1 = CpMap::measure_prepare({id - lam, lam}, {q * target.rho0, (1.0 - q) * target.rho1});
  return {e0, e1};
}

/// l id (x) id + (1 - l) F (x) F, mapping the (M, q2) golden unit to the (M, q1) golden unit.
inline CdsMap golden_majorize(double q1, double q2) {
  if (!(q1 >= 0.0 && q1 <= 1.0 && q2 >= 0.0 && q2 <= 1.0)) throw Error(ErrorKind::ParameterRange, "priors outside [0,1]");
  if (std::max(q1, 1.0 - q1) > std::max(q2, 1.0 - q2) + 1e-12)
    throw Error(ErrorKind::NotMajorized, "(q2, 1-q2) does not majorize (q1, 1-q1)");
  double lam = 1.0;
  if (std::abs(2.0 * q2 - 1.0) > 1e-15) lam = std::clamp((q1 - (1.0 - q2)) / (2.0 * q2 - 1.0), 0.0, 1.0);
  const CpMap id = CpMap::identity(2);
  return {id.scaled(lam), id.then_unitary(pauli_x().mat()).scaled(1.0 - lam)};
}

/// Random CPTP map from a Haar-like isometry d_in -> d_out * rank.
inline CpMap random_channel(int d_in, int d_out, Rng& rng, int rank = -1) {
  if (rank < 1) rank = std::max(1, (d_in + d_out - 1) / d_out) + 1;
  const CMat g = ginibre(d_out * rank, d_in, rng);
  const HermitianMatrix gg(CMat(g.adjoint() * g), 1e-6);
  const CMat v = g * pseudo_inverse_sqrt(gg).mat();
  std::vector<CMat> ks;
  for (int j = 0; j < rank; ++j) ks.push_back(v.block(j * d_out, 0, d_out, d_in));
  return CpMap::from_kraus(ks);
}

/// Random CDS map: a random two-outcome instrument, outcome j feeding branch e_j.
inline CdsMap random_cds(int d_in, int d_out, Rng& rng, int rank = -1) {
  if (rank < 1) rank = std::max(1, (d_in + 2 * d_out - 1) / (2 * d_out)) + 1;
  const CMat g = ginibre(2 * d_out * rank, d_in, rng);
  const HermitianMatrix gg(CMat(g.adjoint() * g), 1e-6);
  const CMat v = g * pseudo_inverse_sqrt(gg).mat();
  std::vector<CMat> k0, k1;
  for (int j = 0; j < rank; ++j) {
    k0.push_back(v.block((2 * j) * d_out, 0, d_out, d_in));
    k1.push_back(v.block((2 * j + 1) * d_out, 0, d_out, d_in));
  }
  return {CpMap::from_kraus(k0), CpMap::from_kraus(k1)};
}

}  // namespace symdist
