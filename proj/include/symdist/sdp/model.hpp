#pragma once

#include <array>
#include <map>
#include <vector>

#include "symdist/sdp/solver.hpp"

namespace symdist::sdp {

/// Hermitian PSD matrix variable.
struct PsdVar {
  int block = -1;
  int dim = 0;
};

/// Nonnegative real variable.
struct ScalarVar {
  int index = -1;
};

/// Real affine functional: sum Tr[A_b X_b] + sum a_k x_k + constant.
class ScalarExpr {
 public:
  ScalarExpr() = default;
  ScalarExpr(double c) : constant_(c) {}  // NOLINT(google-explicit-constructor)

  /// += coef * Tr[h X]
  ScalarExpr& add_trace(PsdVar v, const HermitianMatrix& h, double coef = 1.0) {
    for (int r = 0; r < v.dim; ++r)
      for (int c = r; c < v.dim; ++c) {
        const cplx val = coef * h(r, c);
        if (val != 0.0) psd_[{v.block, r, c}] += val;
      }
    return *this;
  }

  /// += coef * Tr[X]
  ScalarExpr& add_trace(PsdVar v, double coef = 1.0) {
    for (int r = 0; r < v.dim; ++r) psd_[{v.block, r, r}] += coef;
    return *this;
  }

  /// += Re(c * X_ij)
  ScalarExpr& add_entry_re(int block, int i, int j, cplx c) {
    if (c == 0.0) return *this;
    if (i == j) {
      psd_[{block, i, i}] += c.real();
    } else if (j < i) {
      psd_[{block, j, i}] += 0.5 * c;
    } else {
      psd_[{block, i, j}] += 0.5 * std::conj(c);
    }
    return *this;
  }

  ScalarExpr& add(ScalarVar x, double c = 1.0) {
    lp_[x.index] += c;
    return *this;
  }

  ScalarExpr& add_constant(double c) {
    constant_ += c;
    return *this;
  }

  ScalarExpr& operator+=(const ScalarExpr& o) {
    for (const auto& [k, v] : o.psd_) psd_[k] += v;
    for (const auto& [k, v] : o.lp_) lp_[k] += v;
    constant_ += o.constant_;
    return *this;
  }

  double constant() const { return constant_; }
  const std::map<std::array<int, 3>, cplx>& psd_terms() const { return psd_; }
  const std::map<int, double>& lp_terms() const { return lp_; }

 private:
  std::map<std::array<int, 3>, cplx> psd_;
  std::map<int, double> lp_;
  double constant_ = 0.0;
};

/// Hermitian-matrix-valued affine expression: Y_kl = sum c X_ij + sum c' x + const_kl.
class MatExpr {
 public:
  struct Term {
    int block;
    int i;
    int j;
    cplx c;
  };

  explicit MatExpr(int dim) : dim_(dim), terms_(dim * dim), lp_(dim * dim), constant_(CMat::Zero(dim, dim)) {}

  int dim() const { return dim_; }

  /// += coef * X
  MatExpr& add_var(PsdVar v, double coef = 1.0) {
    require(v.dim == dim_);
    for (int k = 0; k < dim_; ++k)
      for (int l = 0; l < dim_; ++l) at(k, l).push_back({v.block, k, l, coef});
    return *this;
  }

  /// += coef * K X K^dagger
  MatExpr& add_congruence(PsdVar v, const CMat& kmat, double coef = 1.0) {
    require(kmat.rows() == dim_ && kmat.cols() == v.dim);
    for (int k = 0; k < dim_; ++k)
      for (int l = 0; l < dim_; ++l)
        for (int i = 0; i < v.dim; ++i)
          for (int j = 0; j < v.dim; ++j) {
            const cplx c = coef * kmat(k, i) * std::conj(kmat(l, j));
            if (c != 0.0) at(k, l).push_back({v.block, i, j, c});
          }
    return *this;
  }

  /// += coef * Tr_B[Omega] for Omega on A (x) B, dim A = dim().
  MatExpr& add_partial_trace_second(PsdVar omega, int da, int db, double coef = 1.0) {
    require(omega.dim == da * db && da == dim_);
    for (int a = 0; a < da; ++a)
      for (int b = 0; b < da; ++b)
        for (int j = 0; j < db; ++j) at(a, b).push_back({omega.block, a * db + j, b * db + j, coef});
    return *this;
  }

  /// += coef * Tr_A[(M^T (x) I) Omega] for a Choi matrix Omega on A (x) B, dim B = dim().
  MatExpr& add_choi_output(PsdVar omega, int da, int db, const CMat& m, double coef = 1.0) {
    require(omega.dim == da * db && db == dim_ && m.rows() == da);
    for (int k = 0; k < db; ++k)
      for (int l = 0; l < db; ++l)
        for (int a = 0; a < da; ++a)
          for (int b = 0; b < da; ++b) {
            const cplx c = coef * m(b, a);
            if (c != 0.0) at(k, l).push_back({omega.block, b * db + k, a * db + l, c});
          }
    return *this;
  }

  /// += x * H
  MatExpr& add_scalar(ScalarVar x, const HermitianMatrix& h) {
    require(h.dim() == dim_);
    for (int k = 0; k < dim_; ++k)
      for (int l = 0; l < dim_; ++l)
        if (h(k, l) != 0.0) lp_[k * dim_ + l].push_back({x.index, h(k, l)});
    return *this;
  }

  MatExpr& add_constant(const HermitianMatrix& h) {
    require(h.dim() == dim_);
    constant_ += h.mat();
    return *this;
  }

  const std::vector<Term>& terms(int k, int l) const { return terms_[k * dim_ + l]; }
  const std::vector<std::pair<int, cplx>>& lp_terms(int k, int l) const { return lp_[k * dim_ + l]; }
  const CMat& constant() const { return constant_; }

 private:
  std::vector<Term>& at(int k, int l) { return terms_[k * dim_ + l]; }
  static void require(bool ok) {
    if (!ok) throw Error(ErrorKind::DimensionMismatch, "matrix expression dimensions");
  }

  int dim_;
  std::vector<std::vector<Term>> terms_;
  std::vector<std::vector<std::pair<int, cplx>>> lp_;
  CMat constant_;
};

/// Row indices of a matrix equality: one real row per diagonal entry and two per upper entry.
struct MatRows {
  int dim = 0;
  std::vector<int> re;  // (k, l), k <= l, row-major over the upper triangle
  std::vector<int> im;  // (k, l), k < l; -1 on the diagonal
};

/// Modelling layer over the standard-form solver: PSD and nonnegative variables, affine
/// equalities, and matrix inequalities through PSD slack blocks.
class Model {
 public:
  PsdVar add_psd(int dim) {
    if (dim < 1) throw Error(ErrorKind::DimensionMismatch, "PSD variable dimension");
    blocks_.push_back(dim);
    return {static_cast<int>(blocks_.size()) - 1, dim};
  }

  ScalarVar add_nonneg() { return {n_lp_++}; }

  void minimize(const ScalarExpr& e) {
    objective_ = e;
    maximize_ = false;
  }
  void maximize(const ScalarExpr& e) {
    objective_ = e;
    maximize_ = true;
  }

  /// e == rhs
  int add_eq(const ScalarExpr& e, double rhs) {
    rows_.push_back({e, rhs - e.constant()});
    return static_cast<int>(rows_.size()) - 1;
  }

  /// e >= rhs, through a nonnegative surplus variable.
  ScalarVar add_ge(ScalarExpr e, double rhs) {
    ScalarVar s = add_nonneg();
    e.add(s, -1.0);
    add_eq(e, rhs);
    return s;
  }

  /// e <= rhs, through a nonnegative slack variable.
  ScalarVar add_le(ScalarExpr e, double rhs) {
    ScalarVar s = add_nonneg();
    e.add(s, 1.0);
    add_eq(e, rhs);
    return s;
  }

  /// e == rhs entrywise.
  MatRows add_eq(const MatExpr& e, const HermitianMatrix& rhs) {
    const int d = e.dim();
    if (rhs.dim() != d) throw Error(ErrorKind::DimensionMismatch, "matrix equality dimensions");
    MatRows mr;
    mr.dim = d;
    for (int k = 0; k < d; ++k)
      for (int l = k; l < d; ++l) {
        const cplx r = rhs(k, l) - e.constant()(k, l);
        ScalarExpr re, im;
        for (const auto& t : e.terms(k, l)) {
          re.add_entry_re(t.block, t.i, t.j, t.c);
          if (k != l) im.add_entry_re(t.block, t.i, t.j, cplx(0.0, -1.0) * t.c);
        }
        for (const auto& [x, c] : e.lp_terms(k, l)) {
          re.add(ScalarVar{x}, c.real());
          if (k != l) im.add(ScalarVar{x}, c.imag());
        }
        mr.re.push_back(add_eq(re, r.real()));
        mr.im.push_back(k != l ? add_eq(im, r.imag()) : -1);
      }
    return mr;
  }

  /// e >= rhs in the PSD order; returns the slack block e - rhs.
  PsdVar add_psd_ge(MatExpr e, const HermitianMatrix& rhs) {
    PsdVar s = add_psd(e.dim());
    e.add_var(s, -1.0);
    add_eq(e, rhs);
    return s;
  }

  /// e <= rhs in the PSD order; returns the slack block rhs - e.
  PsdVar add_psd_le(MatExpr e, const HermitianMatrix& rhs) {
    PsdVar s = add_psd(e.dim());
    e.add_var(s, 1.0);
    add_eq(e, rhs);
    return s;
  }

  int num_rows() const { return static_cast<int>(rows_.size()); }

  SdpProblem compile() const {
    SdpProblem p;
    for (int d : blocks_) p.blocks.push_back({Block::Kind::Psd, d});
    const int lp_block = static_cast<int>(blocks_.size());
    if (n_lp_ > 0) p.blocks.push_back({Block::Kind::Diagonal, n_lp_});
    auto convert = [&](const ScalarExpr& e, double sign) {
      BlockMatrix bm;
      for (const auto& [key, v] : e.psd_terms())
        if (v != 0.0) bm.push_back({key[0], key[1], key[2], sign * v});
      for (const auto& [k, v] : e.lp_terms())
        if (v != 0.0) bm.push_back({lp_block, k, k, sign * v});
      return bm;
    };
    p.objective = convert(objective_, maximize_ ? -1.0 : 1.0);
    for (const auto& r : rows_) p.constraints.push_back({convert(r.expr, 1.0), r.rhs});
    return p;
  }

  struct Result {
    SdpSolution sol;
    double objective = 0.0;       // in the model's sense (max or min), constant included
    double dual_objective = 0.0;  // same sense
    bool optimal() const { return sol.optimal(); }
  };

  Result solve(const SolverOptions& opt = {}) const {
    Result r;
    r.sol = sdp::solve(compile(), opt);
    const double sign = maximize_ ? -1.0 : 1.0;
    r.objective = sign * r.sol.value + objective_.constant();
    r.dual_objective = sign * r.sol.dual_value + objective_.constant();
    return r;
  }

  static HermitianMatrix value(const Result& r, PsdVar v) { return HermitianMatrix(r.sol.X[v.block], 1e-6); }

  double value(const Result& r, ScalarVar x) const {
    return r.sol.X[blocks_.size()](x.index, x.index).real();
  }

  static double dual(const Result& r, int row) { return r.sol.y(row); }

  /// Hermitian multiplier Z with sum over the rows of y_i A_i = Tr[Z F(X)] structure.
  static HermitianMatrix dual(const Result& r, const MatRows& mr) {
    CMat z = CMat::Zero(mr.dim, mr.dim);
    int idx = 0;
    for (int k = 0; k < mr.dim; ++k)
      for (int l = k; l < mr.dim; ++l, ++idx) {
        if (k == l) {
          z(k, k) = r.sol.y(mr.re[idx]);
        } else {
          const cplx v(0.5 * r.sol.y(mr.re[idx]), 0.5 * r.sol.y(mr.im[idx]));
          z(k, l) = v;
          z(l, k) = std::conj(v);
        }
      }
    return HermitianMatrix(z);
  }

 private:
  struct Row {
    ScalarExpr expr;
    double rhs;
  };

  std::vector<int> blocks_;
  int n_lp_ = 0;
  ScalarExpr objective_;
  bool maximize_ = false;
  std::vector<Row> rows_;
};

}  // namespace symdist::sdp
