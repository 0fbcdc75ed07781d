#pragma once

#include "symdist/sdp/problem.hpp"

namespace symdist::sdp {

namespace detail {

inline void realify_into(const BlockMatrix& in, const std::vector<Block>& blocks, BlockMatrix& out) {
  for (const Entry& e : in) {
    const Block& b = blocks[e.block];
    if (b.kind == Block::Kind::Diagonal) {
      out.push_back({e.block, e.row, e.col, cplx(e.value.real(), 0.0)});
      continue;
    }
    const int n = b.dim;
    const double re = 0.5 * e.value.real();
    const double im = 0.5 * e.value.imag();
    out.push_back({e.block, e.row, e.col, re});
    out.push_back({e.block, e.row + n, e.col + n, re});
    if (e.row != e.col && im != 0.0) {
      out.push_back({e.block, e.row, e.col + n, -im});
      out.push_back({e.block, e.col, e.row + n, im});
    }
  }
}

}  // namespace detail

/// Real-symmetric embedding: each Hermitian block H becomes [[Re H, -Im H], [Im H, Re H]] with
/// coefficients halved, so <C', X'> = <C, X> on embedded points. Diagonal blocks are unchanged.
inline SdpProblem realify(const SdpProblem& p) {
  SdpProblem r;
  r.blocks = p.blocks;
  for (Block& b : r.blocks)
    if (b.kind == Block::Kind::Psd) b.dim *= 2;
  detail::realify_into(p.objective, p.blocks, r.objective);
  r.constraints.reserve(p.constraints.size());
  for (const Constraint& c : p.constraints) {
    Constraint rc;
    rc.b = c.b;
    detail::realify_into(c.a, p.blocks, rc.a);
    r.constraints.push_back(std::move(rc));
  }
  return r;
}

/// Inverse of the embedding on one block value: X = (X11 + X22)/2 + i (X21 - X12)/2.
inline CMat unrealify_block(const CMat& xr, int n) {
  const RMat re = xr.real();
  CMat x(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      x(i, j) = cplx(0.5 * (re(i, j) + re(i + n, j + n)), 0.5 * (re(i + n, j) - re(i, j + n)));
  return x;
}

}  // namespace symdist::sdp
