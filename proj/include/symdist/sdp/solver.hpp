#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "symdist/config.hpp"
#include "symdist/sdp/problem.hpp"
#include "symdist/sdp/realify.hpp"

namespace symdist::sdp {

struct IterateInfo {
  int iteration;
  double primal_objective;
  double dual_objective;
  double primal_residual;
  double dual_residual;
  double mu;
};

struct SolverOptions {
  double gap_tol = tolerances().sdp_gap;
  double feas_tol = tolerances().sdp_feas;
  int max_iter = tolerances().sdp_max_iter;
  double step_fraction = 0.98;
  std::function<void(const IterateInfo&)> on_iterate;
};

namespace detail {

struct Part {
  int block = 0;
  std::vector<int> r, c;
  std::vector<double> v;
};

struct RowRef {
  int row;
  int part;
};

struct Factor {
  RMat l;     // X = l l^T
  RMat linv;  // l^{-1}
};

inline Factor factor_pd(const RMat& x) {
  Eigen::LLT<RMat> llt(x);
  Factor f;
  if (llt.info() == Eigen::Success) {
    f.l = llt.matrixL();
    f.linv = f.l.triangularView<Eigen::Lower>().solve(RMat::Identity(x.rows(), x.cols()));
    if (f.linv.allFinite()) return f;
  }
  Eigen::SelfAdjointEigenSolver<RMat> es(x);
  RVec ev = es.eigenvalues().cwiseMax(1e-300);
  f.l = es.eigenvectors() * ev.cwiseSqrt().asDiagonal();
  f.linv = ev.cwiseSqrt().cwiseInverse().asDiagonal() * es.eigenvectors().transpose();
  return f;
}

/// Largest a with x + a dx PSD (infinity if unbounded), given x = l l^T.
inline double max_step_psd(const Factor& f, const RMat& dx) {
  RMat m = f.linv * dx * f.linv.transpose();
  m = 0.5 * (m + m.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<RMat> es(m, Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues()(0);
  return lmin >= 0.0 ? std::numeric_limits<double>::infinity() : -1.0 / lmin;
}

/// Real-data homogeneous self-dual interior-point method with Nesterov-Todd scaling.
class RealIpm {
 public:
  RealIpm(const SdpProblem& p, const SolverOptions& o) : opt_(o) { load(p); }

  SdpSolution run();

 private:
  void load(const SdpProblem& p);

  // Block-vector helpers. PSD blocks are n x n, diagonal blocks are n x 1.
  using Blocks = std::vector<RMat>;
  Blocks zeros() const {
    Blocks z(nb_);
    for (int b = 0; b < nb_; ++b) z[b] = diag_[b] ? RMat(RMat::Zero(dim_[b], 1)) : RMat(RMat::Zero(dim_[b], dim_[b]));
    return z;
  }
  Blocks identity() const {
    Blocks z(nb_);
    for (int b = 0; b < nb_; ++b) z[b] = diag_[b] ? RMat(RMat::Ones(dim_[b], 1)) : RMat(RMat::Identity(dim_[b], dim_[b]));
    return z;
  }
  static double dot(const Blocks& a, const Blocks& b) {
    double s = 0.0;
    for (size_t k = 0; k < a.size(); ++k) s += a[k].cwiseProduct(b[k]).sum();
    return s;
  }
  static double norm(const Blocks& a) { return std::sqrt(dot(a, a)); }
  static void axpy(Blocks& y, double a, const Blocks& x) {
    for (size_t k = 0; k < y.size(); ++k) y[k] += a * x[k];
  }

  RVec apply_a(const Blocks& x) const {
    RVec out = RVec::Zero(m_);
    for (int i = 0; i < m_; ++i) {
      double s = 0.0;
      for (const Part& pt : rows_[i]) {
        const RMat& xb = x[pt.block];
        if (diag_[pt.block]) {
          for (size_t k = 0; k < pt.v.size(); ++k) s += pt.v[k] * xb(pt.r[k], 0);
        } else {
          for (size_t k = 0; k < pt.v.size(); ++k)
            s += pt.v[k] * xb(pt.r[k], pt.c[k]) * (pt.r[k] == pt.c[k] ? 1.0 : 2.0);
        }
      }
      out(i) = s;
    }
    return out;
  }

  Blocks apply_at(const RVec& y) const {
    Blocks z = zeros();
    for (int i = 0; i < m_; ++i) {
      if (y(i) == 0.0) continue;
      for (const Part& pt : rows_[i]) {
        RMat& zb = z[pt.block];
        for (size_t k = 0; k < pt.v.size(); ++k) {
          const double a = y(i) * pt.v[k];
          if (diag_[pt.block]) {
            zb(pt.r[k], 0) += a;
          } else {
            zb(pt.r[k], pt.c[k]) += a;
            if (pt.r[k] != pt.c[k]) zb(pt.c[k], pt.r[k]) += a;
          }
        }
      }
    }
    return z;
  }

  // W v W per block (diagonal: w .* v).
  Blocks scale_w(const Blocks& v) const {
    Blocks z(nb_);
    for (int b = 0; b < nb_; ++b) z[b] = diag_[b] ? RMat(w_[b].cwiseProduct(v[b])) : RMat(w_[b] * v[b] * w_[b]);
    return z;
  }

  void compute_scaling();
  bool build_schur();
  RVec solve_schur(const RVec& rhs) const;

  struct Direction {
    Blocks dx, ds;
    RVec dy;
    double dtau = 0.0, dkappa = 0.0;
  };

  Direction direction(const Blocks& rc, double rkappa, double eta);
  double max_step(const Direction& d) const;

  SolverOptions opt_;
  int nb_ = 0;
  int m_ = 0;
  std::vector<int> dim_;
  std::vector<bool> diag_;
  std::vector<std::vector<Part>> rows_;
  std::vector<std::vector<RowRef>> by_block_;
  Blocks c_;
  RVec b_;
  RVec row_scale_;
  double c_scale_ = 1.0;
  std::vector<int> keep_;  // internal row -> original row
  int m_orig_ = 0;
  bool trivially_infeasible_ = false;
  int nu_ = 0;

  // Iterate.
  Blocks x_, s_;
  RVec y_;
  double tau_ = 1.0, kappa_ = 1.0;

  // Per-iteration scaling data.
  std::vector<Factor> fx_, fs_;
  Blocks w_;     // NT scaling (diagonal: x/s)
  Blocks g_;     // W = g g^T
  Blocks ginv_;  // g^{-1}
  Blocks d_;     // scaled point (n x 1)
  RMat schur_;
  Eigen::LLT<RMat> llt_;
  Blocks wcw_;
  RVec aw_;
  double cw_ = 0.0;
  RVec v_;
  double rg_ = 0.0;
  Blocks rd_;
  RVec rp_;
};

inline void RealIpm::load(const SdpProblem& p) {
  nb_ = static_cast<int>(p.blocks.size());
  for (const Block& b : p.blocks) {
    dim_.push_back(b.dim);
    diag_.push_back(b.kind == Block::Kind::Diagonal);
    nu_ += b.dim;
  }
  c_ = zeros();
  for (const Entry& e : p.objective) {
    const double v = e.value.real();
    if (diag_[e.block]) {
      c_[e.block](e.row, 0) += v;
    } else {
      c_[e.block](e.row, e.col) += v;
      if (e.row != e.col) c_[e.block](e.col, e.row) += v;
    }
  }
  const double cn = norm(c_);
  c_scale_ = std::max(1.0, cn);
  for (RMat& cb : c_) cb /= c_scale_;

  const int m0 = static_cast<int>(p.constraints.size());
  std::vector<int> keep;
  std::vector<double> scales;
  for (int i = 0; i < m0; ++i) {
    const Constraint& con = p.constraints[i];
    // Merge duplicate entries per block.
    std::vector<Part> parts;
    double nrm2 = 0.0;
    {
      std::vector<std::vector<std::pair<long, double>>> acc(nb_);
      for (const Entry& e : con.a) acc[e.block].push_back({static_cast<long>(e.row) * dim_[e.block] + e.col, e.value.real()});
      for (int b = 0; b < nb_; ++b) {
        auto& v = acc[b];
        if (v.empty()) continue;
        std::sort(v.begin(), v.end(), [](auto& x, auto& y) { return x.first < y.first; });
        Part pt;
        pt.block = b;
        for (size_t k = 0; k < v.size();) {
          long key = v[k].first;
          double s = 0.0;
          while (k < v.size() && v[k].first == key) s += v[k++].second;
          if (s == 0.0) continue;
          const int r = static_cast<int>(key / dim_[b]);
          const int c = static_cast<int>(key % dim_[b]);
          pt.r.push_back(r);
          pt.c.push_back(c);
          pt.v.push_back(s);
          nrm2 += s * s * ((r == c || diag_[b]) ? 1.0 : 2.0);
        }
        if (!pt.v.empty()) parts.push_back(std::move(pt));
      }
    }
    const double nrm = std::sqrt(nrm2);
    if (nrm == 0.0) {
      if (std::abs(con.b) > 1e-14) trivially_infeasible_ = true;
      continue;
    }
    for (Part& pt : parts)
      for (double& v : pt.v) v /= nrm;
    rows_.push_back(std::move(parts));
    keep.push_back(i);
    scales.push_back(nrm);
  }
  m_ = static_cast<int>(rows_.size());
  b_.resize(m_);
  row_scale_.resize(m_);
  for (int i = 0; i < m_; ++i) {
    row_scale_(i) = scales[i];
    b_(i) = p.constraints[keep[i]].b / scales[i];
  }
  by_block_.assign(nb_, {});
  for (int i = 0; i < m_; ++i)
    for (int k = 0; k < static_cast<int>(rows_[i].size()); ++k) by_block_[rows_[i][k].block].push_back({i, k});
  keep_ = keep;
  m_orig_ = m0;
}

inline void RealIpm::compute_scaling() {
  fx_.resize(nb_);
  fs_.resize(nb_);
  w_.resize(nb_);
  g_.resize(nb_);
  ginv_.resize(nb_);
  d_.resize(nb_);
  for (int b = 0; b < nb_; ++b) {
    if (diag_[b]) {
      w_[b] = x_[b].cwiseQuotient(s_[b]);
      d_[b] = x_[b].cwiseProduct(s_[b]).cwiseSqrt();
      g_[b] = w_[b].cwiseSqrt();
      ginv_[b] = g_[b].cwiseInverse();
      continue;
    }
    fx_[b] = factor_pd(x_[b]);
    fs_[b] = factor_pd(s_[b]);
    RMat rtl = fs_[b].l.transpose() * fx_[b].l;
    Eigen::JacobiSVD<RMat> svd(rtl, Eigen::ComputeFullU | Eigen::ComputeFullV);
    RVec sig = svd.singularValues().cwiseMax(1e-300);
    const RMat& v = svd.matrixV();
    g_[b] = fx_[b].l * v * sig.cwiseSqrt().cwiseInverse().asDiagonal();
    ginv_[b] = sig.cwiseSqrt().asDiagonal() * v.transpose() * fx_[b].linv;
    w_[b] = g_[b] * g_[b].transpose();
    w_[b] = 0.5 * (w_[b] + w_[b].transpose()).eval();
    d_[b] = sig;
  }
}

inline bool RealIpm::build_schur() {
  schur_ = RMat::Zero(m_, m_);
  for (int b = 0; b < nb_; ++b) {
    const auto& refs = by_block_[b];
    if (diag_[b]) {
      // Column lists per diagonal variable.
      std::vector<std::vector<std::pair<int, double>>> cols(dim_[b]);
      for (const RowRef& rr : refs) {
        const Part& pt = rows_[rr.row][rr.part];
        for (size_t k = 0; k < pt.v.size(); ++k) cols[pt.r[k]].push_back({rr.row, pt.v[k]});
      }
      for (int k = 0; k < dim_[b]; ++k) {
        const double wk = w_[b](k, 0);
        for (const auto& ea : cols[k])
          for (const auto& ec : cols[k])
            if (ea.first >= ec.first) schur_(ea.first, ec.first) += wk * ea.second * ec.second;
      }
      continue;
    }
    const int n = dim_[b];
    const RMat& w = w_[b];
    RMat gmat(n, n);
    for (const RowRef& rj : refs) {
      const Part& pj = rows_[rj.row][rj.part];
      const int j = rj.row;
      if (static_cast<int>(pj.v.size()) * 2 <= n) {
        gmat.setZero();
        for (size_t k = 0; k < pj.v.size(); ++k) {
          const int r = pj.r[k], c = pj.c[k];
          if (r == c) {
            gmat.noalias() += pj.v[k] * w.col(r) * w.row(r);
          } else {
            gmat.noalias() += pj.v[k] * w.col(r) * w.row(c);
            gmat.noalias() += pj.v[k] * w.col(c) * w.row(r);
          }
        }
      } else {
        RMat a = RMat::Zero(n, n);
        for (size_t k = 0; k < pj.v.size(); ++k) {
          a(pj.r[k], pj.c[k]) += pj.v[k];
          if (pj.r[k] != pj.c[k]) a(pj.c[k], pj.r[k]) += pj.v[k];
        }
        gmat.noalias() = w * a * w;
      }
      for (const RowRef& ri : refs) {
        const int i = ri.row;
        if (i < j) continue;
        const Part& pi = rows_[i][ri.part];
        double s = 0.0;
        for (size_t k = 0; k < pi.v.size(); ++k)
          s += pi.v[k] * gmat(pi.r[k], pi.c[k]) * (pi.r[k] == pi.c[k] ? 1.0 : 2.0);
        schur_(i, j) += s;
      }
    }
  }
  // Symmetrize from the lower triangle.
  for (int i = 0; i < m_; ++i)
    for (int j = 0; j < i; ++j) schur_(j, i) = schur_(i, j);

  double maxdiag = m_ > 0 ? schur_.diagonal().cwiseAbs().maxCoeff() : 1.0;
  if (maxdiag == 0.0) maxdiag = 1.0;
  double reg = 0.0;
  for (int attempt = 0; attempt < 8; ++attempt) {
    RMat mm = schur_;
    if (reg > 0.0) mm.diagonal().array() += reg;
    llt_.compute(mm);
    if (llt_.info() == Eigen::Success) return true;
    reg = (reg == 0.0) ? 1e-14 * maxdiag : reg * 100.0;
  }
  return false;
}

inline RVec RealIpm::solve_schur(const RVec& rhs) const {
  RVec x = llt_.solve(rhs);
  // One step of iterative refinement against the unregularized matrix.
  RVec r = rhs - schur_ * x;
  x += llt_.solve(r);
  return x;
}

inline RealIpm::Direction RealIpm::direction(const Blocks& rc, double rkappa, double eta) {
  // h = eta rp - A(rc) + eta A(W rd W)
  Blocks wrdw = scale_w(rd_);
  RVec h = eta * rp_ - apply_a(rc) + eta * apply_a(wrdw);
  RVec u = solve_schur(h);
  Blocks t = rc;
  axpy(t, -eta, wrdw);
  const double num = -eta * rg_ - (b_ - aw_).dot(u) + dot(c_, t) + rkappa / tau_;
  const double den = (b_ - aw_).dot(v_) + cw_ + kappa_ / tau_;
  Direction d;
  d.dtau = num / den;
  d.dy = u + v_ * d.dtau;
  d.dkappa = (rkappa - kappa_ * d.dtau) / tau_;
  d.ds = rd_;
  for (auto& m : d.ds) m *= eta;
  axpy(d.ds, d.dtau, c_);
  axpy(d.ds, -1.0, apply_at(d.dy));
  d.dx = rc;
  axpy(d.dx, -1.0, scale_w(d.ds));
  for (int b = 0; b < nb_; ++b)
    if (!diag_[b]) {
      d.dx[b] = 0.5 * (d.dx[b] + d.dx[b].transpose()).eval();
      d.ds[b] = 0.5 * (d.ds[b] + d.ds[b].transpose()).eval();
    }
  return d;
}

inline double RealIpm::max_step(const Direction& d) const {
  double a = std::numeric_limits<double>::infinity();
  for (int b = 0; b < nb_; ++b) {
    if (diag_[b]) {
      for (int k = 0; k < dim_[b]; ++k) {
        if (d.dx[b](k, 0) < 0.0) a = std::min(a, -x_[b](k, 0) / d.dx[b](k, 0));
        if (d.ds[b](k, 0) < 0.0) a = std::min(a, -s_[b](k, 0) / d.ds[b](k, 0));
      }
    } else {
      a = std::min(a, max_step_psd(fx_[b], d.dx[b]));
      a = std::min(a, max_step_psd(fs_[b], d.ds[b]));
    }
  }
  if (d.dtau < 0.0) a = std::min(a, -tau_ / d.dtau);
  if (d.dkappa < 0.0) a = std::min(a, -kappa_ / d.dkappa);
  return a;
}

inline SdpSolution RealIpm::run() {
  SdpSolution sol;
  if (trivially_infeasible_) {
    sol.status = Status::PrimalInfeasible;
    return sol;
  }
  x_ = identity();
  s_ = identity();
  y_ = RVec::Zero(m_);
  tau_ = 1.0;
  kappa_ = 1.0;
  const double bnorm = b_.norm();
  const double cnorm = norm(c_);

  struct Snapshot {
    Blocks x, s;
    RVec y;
    double tau, kappa, score;
  } best{x_, s_, y_, tau_, kappa_, std::numeric_limits<double>::infinity()};

  Status status = Status::MaxIterations;
  int it = 0;
  for (;; ++it) {
    rp_ = b_ * tau_ - apply_a(x_);
    rd_ = c_;
    for (auto& m : rd_) m *= tau_;
    axpy(rd_, -1.0, apply_at(y_));
    axpy(rd_, -1.0, s_);
    const double cx = dot(c_, x_);
    const double by = b_.dot(y_);
    rg_ = by - cx - kappa_;
    const double mu = (dot(x_, s_) + tau_ * kappa_) / (nu_ + 1);

    const double pres = rp_.norm() / tau_ / (1.0 + bnorm);
    const double dres = norm(rd_) / tau_ / (1.0 + cnorm);
    const double pobj = cx / tau_ * c_scale_;
    const double dobj = by / tau_ * c_scale_;
    const double gap_rel = std::abs(pobj - dobj) / (1.0 + std::abs(pobj));
    if (opt_.on_iterate) opt_.on_iterate({it, pobj, dobj, pres, dres, mu});
    const double score = std::max({pres, dres, gap_rel});
    if (score < best.score) best = {x_, s_, y_, tau_, kappa_, score};
    if (pres <= opt_.feas_tol && dres <= opt_.feas_tol && gap_rel <= opt_.gap_tol) {
      status = Status::Optimal;
      break;
    }
    // Infeasibility certificates.
    if (tau_ < kappa_) {
      if (by > 0.0) {
        Blocks aty = apply_at(y_);
        axpy(aty, 1.0, s_);
        if (norm(aty) / by <= opt_.feas_tol * (1.0 + cnorm)) {
          status = Status::PrimalInfeasible;
          break;
        }
      }
      if (cx < 0.0) {
        if (apply_a(x_).norm() / (-cx) <= opt_.feas_tol * (1.0 + bnorm)) {
          status = Status::DualInfeasible;
          break;
        }
      }
    }
    if (it >= opt_.max_iter) {
      status = Status::MaxIterations;
      break;
    }

    compute_scaling();
    if (!build_schur()) {
      status = Status::IllConditioned;
      break;
    }
    wcw_ = scale_w(c_);
    aw_ = apply_a(wcw_);
    cw_ = dot(c_, wcw_);
    v_ = solve_schur(aw_ + b_);

    // Predictor.
    Blocks rc_aff(nb_);
    for (int b = 0; b < nb_; ++b) rc_aff[b] = -x_[b];
    Direction aff = direction(rc_aff, -tau_ * kappa_, 1.0);
    const double a_aff = std::min(1.0, max_step(aff));
    Blocks xa = x_, sa = s_;
    axpy(xa, a_aff, aff.dx);
    axpy(sa, a_aff, aff.ds);
    const double mu_aff =
        (dot(xa, sa) + (tau_ + a_aff * aff.dtau) * (kappa_ + a_aff * aff.dkappa)) / (nu_ + 1);
    double sigma = std::pow(std::max(0.0, mu_aff) / mu, 3);
    sigma = std::clamp(sigma, 0.0, 1.0);

    // Corrector.
    Blocks rc(nb_);
    for (int b = 0; b < nb_; ++b) {
      if (diag_[b]) {
        RMat num = RMat::Constant(dim_[b], 1, sigma * mu) - x_[b].cwiseProduct(s_[b]) -
                   aff.dx[b].cwiseProduct(aff.ds[b]);
        rc[b] = num.cwiseQuotient(s_[b]);
        continue;
      }
      const int n = dim_[b];
      RMat dxs = ginv_[b] * aff.dx[b] * ginv_[b].transpose();
      RMat dss = g_[b].transpose() * aff.ds[b] * g_[b];
      RMat r = -(dxs * dss + dss * dxs);
      const RVec& dd = d_[b];
      for (int i = 0; i < n; ++i) r(i, i) += 2.0 * sigma * mu - 2.0 * dd(i) * dd(i);
      RMat z(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) z(i, j) = r(i, j) / (dd(i) + dd(j));
      rc[b] = g_[b] * z * g_[b].transpose();
      rc[b] = 0.5 * (rc[b] + rc[b].transpose()).eval();
    }
    const double rk = sigma * mu - tau_ * kappa_ - aff.dtau * aff.dkappa;
    Direction d = direction(rc, rk, 1.0 - sigma);
    const double amax = max_step(d);
    const double alpha = std::min(1.0, opt_.step_fraction * amax);
    if (!(alpha > 1e-14) || !std::isfinite(d.dtau)) {
      status = Status::IllConditioned;
      break;
    }
    axpy(x_, alpha, d.dx);
    axpy(s_, alpha, d.ds);
    y_ += alpha * d.dy;
    tau_ += alpha * d.dtau;
    kappa_ += alpha * d.dkappa;
  }

  if (status != Status::Optimal && status != Status::PrimalInfeasible && status != Status::DualInfeasible) {
    x_ = best.x;
    s_ = best.s;
    y_ = best.y;
    tau_ = best.tau;
    kappa_ = best.kappa;
  }
  sol.status = status;
  sol.iterations = it;
  const double scale_t = (status == Status::PrimalInfeasible || status == Status::DualInfeasible) ? 1.0 : tau_;
  sol.X.resize(nb_);
  sol.S.resize(nb_);
  for (int b = 0; b < nb_; ++b) {
    RMat xb = x_[b] / scale_t;
    RMat sb = s_[b] * (c_scale_ / scale_t);
    if (diag_[b]) {
      sol.X[b] = CMat(xb.col(0).asDiagonal()).cast<cplx>();
      sol.S[b] = CMat(sb.col(0).asDiagonal()).cast<cplx>();
    } else {
      sol.X[b] = xb.cast<cplx>();
      sol.S[b] = sb.cast<cplx>();
    }
  }
  // Rows were renormalized; map multipliers back.
  sol.y = RVec::Zero(m_orig_);
  for (int i = 0; i < m_; ++i) sol.y(keep_[i]) = y_(i) * c_scale_ / (row_scale_(i) * scale_t);
  if (status == Status::PrimalInfeasible) {
    sol.value = std::numeric_limits<double>::infinity();
    sol.dual_value = sol.value;
  } else if (status == Status::DualInfeasible) {
    sol.value = -std::numeric_limits<double>::infinity();
    sol.dual_value = sol.value;
  } else {
    RVec rp = b_ * tau_ - apply_a(x_);
    Blocks rd = c_;
    for (auto& m : rd) m *= tau_;
    axpy(rd, -1.0, apply_at(y_));
    axpy(rd, -1.0, s_);
    sol.value = dot(c_, x_) / tau_ * c_scale_;
    sol.dual_value = b_.dot(y_) / tau_ * c_scale_;
    sol.primal_residual = rp.norm() / tau_ / (1.0 + bnorm);
    sol.dual_residual = norm(rd) / tau_ / (1.0 + cnorm);
    sol.gap = std::abs(sol.value - sol.dual_value);
  }
  return sol;
}

}  // namespace detail

}  // namespace symdist::sdp

namespace symdist::sdp {

/// Solves a problem whose coefficients are all real (imaginary parts ignored).
inline SdpSolution solve_real(const SdpProblem& p, const SolverOptions& opt = {}) {
  validate(p);
  detail::RealIpm ipm(p, opt);
  return ipm.run();
}

/// Solves a complex Hermitian problem through its real embedding. Returned blocks are complex.
inline SdpSolution solve(const SdpProblem& p, const SolverOptions& opt = {}) {
  validate(p);
  SdpSolution s = solve_real(realify(p), opt);
  for (size_t b = 0; b < p.blocks.size(); ++b) {
    if (p.blocks[b].kind != Block::Kind::Psd) continue;
    const int n = p.blocks[b].dim;
    if (s.X.size() > b) s.X[b] = unrealify_block(s.X[b], n);
    if (s.S.size() > b) s.S[b] = unrealify_block(s.S[b], n);
  }
  return s;
}

}  // namespace symdist::sdp
