#pragma once

#include <string>
#include <vector>

#include "symdist/hermitian.hpp"

namespace symdist::sdp {

/// A block of the variable: a Hermitian PSD matrix, or a vector of nonnegatives (stored as a diagonal).
struct Block {
  enum class Kind { Psd, Diagonal };
  Kind kind = Kind::Psd;
  int dim = 1;
};

/// One upper-triangle entry (row <= col) of a block-diagonal Hermitian coefficient matrix.
/// The mirrored entry carries the conjugate value. Diagonal blocks only use row == col.
struct Entry {
  int block = 0;
  int row = 0;
  int col = 0;
  cplx value = 0.0;
};

using BlockMatrix = std::vector<Entry>;

struct Constraint {
  BlockMatrix a;
  double b = 0.0;
};

/// min <C, X>  s.t.  <A_i, X> = b_i,  X block PSD.
/// Dual: max b.y  s.t.  C - sum_i y_i A_i  block PSD.
struct SdpProblem {
  std::vector<Block> blocks;
  BlockMatrix objective;
  std::vector<Constraint> constraints;
};

enum class Status { Optimal, PrimalInfeasible, DualInfeasible, MaxIterations, IllConditioned };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::Optimal: return "Optimal";
    case Status::PrimalInfeasible: return "PrimalInfeasible";
    case Status::DualInfeasible: return "DualInfeasible";
    case Status::MaxIterations: return "MaxIterations";
    case Status::IllConditioned: return "IllConditioned";
  }
  return "Unknown";
}

struct SdpSolution {
  Status status = Status::MaxIterations;
  double value = 0.0;       // primal objective <C, X>
  double dual_value = 0.0;  // b . y
  std::vector<CMat> X;      // one matrix per block (diagonal blocks as diagonal matrices)
  std::vector<CMat> S;      // dual slack per block
  RVec y;
  double gap = 0.0;  // |value - dual_value|
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  int iterations = 0;

  bool optimal() const { return status == Status::Optimal; }
};

/// <A, X> for one block-sparse coefficient matrix and block values.
inline double evaluate(const BlockMatrix& a, const std::vector<CMat>& x) {
  double s = 0.0;
  for (const Entry& e : a) {
    const cplx v = std::conj(e.value) * x[e.block](e.row, e.col);
    s += (e.row == e.col) ? v.real() : 2.0 * v.real();
  }
  return s;
}

/// Dense matrix of block `blk` of a block-sparse Hermitian coefficient.
inline CMat dense_block(const BlockMatrix& a, int blk, int dim) {
  CMat m = CMat::Zero(dim, dim);
  for (const Entry& e : a) {
    if (e.block != blk) continue;
    m(e.row, e.col) += e.value;
    if (e.row != e.col) m(e.col, e.row) += std::conj(e.value);
  }
  return m;
}

inline void validate(const SdpProblem& p) {
  auto check = [&](const BlockMatrix& a, const char* what) {
    for (const Entry& e : a) {
      if (e.block < 0 || e.block >= static_cast<int>(p.blocks.size()))
        throw Error(ErrorKind::DimensionMismatch, std::string(what) + ": block index out of range");
      const Block& b = p.blocks[e.block];
      if (e.row < 0 || e.col < e.row || e.col >= b.dim)
        throw Error(ErrorKind::DimensionMismatch, std::string(what) + ": entry outside block upper triangle");
      if (b.kind == Block::Kind::Diagonal && e.row != e.col)
        throw Error(ErrorKind::DimensionMismatch, std::string(what) + ": off-diagonal entry in diagonal block");
      if (e.row == e.col && std::abs(e.value.imag()) > 1e-12)
        throw Error(ErrorKind::NotHermitian, std::string(what) + ": complex diagonal entry");
    }
  };
  if (p.blocks.empty()) throw Error(ErrorKind::DimensionMismatch, "problem has no blocks");
  for (const Block& b : p.blocks)
    if (b.dim < 1) throw Error(ErrorKind::DimensionMismatch, "block dimension must be positive");
  check(p.objective, "objective");
  for (const Constraint& c : p.constraints) check(c.a, "constraint");
}

}  // namespace symdist::sdp
