#include <gtest/gtest.h>

#include <algorithm>

#include "symdist/random.hpp"
#include "symdist/sdp/model.hpp"

using namespace symdist;
using namespace symdist::sdp;

namespace {

SdpProblem trace_normalized(int d, const BlockMatrix& objective) {
  SdpProblem p;
  p.blocks.push_back({Block::Kind::Psd, d});
  p.objective = objective;
  Constraint c;
  for (int i = 0; i < d; ++i) c.a.push_back({0, i, i, 1.0});
  c.b = 1.0;
  p.constraints.push_back(c);
  return p;
}

BlockMatrix dense_objective(const HermitianMatrix& h) {
  BlockMatrix bm;
  for (int r = 0; r < h.dim(); ++r)
    for (int c = r; c < h.dim(); ++c) bm.push_back({0, r, c, h(r, c)});
  return bm;
}

}  // namespace

TEST(Sdp, TraceOfTraceNormalizedPsdIsOne) {
  BlockMatrix obj{{0, 0, 0, 1.0}, {0, 1, 1, 1.0}};
  SdpSolution s = solve(trace_normalized(2, obj));
  ASSERT_EQ(s.status, Status::Optimal);
  EXPECT_NEAR(s.value, 1.0, 1e-8);
  EXPECT_NEAR(s.dual_value, 1.0, 1e-8);
}

TEST(Sdp, InfeasibleNegativeTraceIsDetected) {
  SdpProblem p;
  p.blocks.push_back({Block::Kind::Psd, 2});
  Constraint c;
  c.a = {{0, 0, 0, 1.0}, {0, 1, 1, 1.0}};
  c.b = -1.0;
  p.constraints.push_back(c);
  EXPECT_EQ(solve(p).status, Status::PrimalInfeasible);
}

TEST(Sdp, UnboundedObjectiveIsDualInfeasible) {
  // min -x0 s.t. x0 - x1 = 0 over nonnegatives.
  SdpProblem p;
  p.blocks.push_back({Block::Kind::Diagonal, 2});
  p.objective = {{0, 0, 0, -1.0}};
  p.constraints.push_back({{{0, 0, 0, 1.0}, {0, 1, 1, -1.0}}, 0.0});
  EXPECT_EQ(solve(p).status, Status::DualInfeasible);
}

TEST(Sdp, GreatestLowerBoundOfEqualOperators) {
  // max Tr Y s.t. Y <= p rho0, Y <= (1-p) rho1, posed as the dual of the measurement program.
  const auto half_i = 0.5 * HermitianMatrix::identity(2);
  Model m;
  PsdVar x0 = m.add_psd(2), x1 = m.add_psd(2);
  ScalarExpr obj;
  obj.add_trace(x0, 0.5 * half_i).add_trace(x1, 0.5 * half_i);
  m.minimize(obj);
  MatExpr sum(2);
  sum.add_var(x0).add_var(x1);
  MatRows rows = m.add_eq(sum, HermitianMatrix::identity(2));
  Model::Result r = m.solve();
  ASSERT_TRUE(r.optimal());
  EXPECT_NEAR(r.objective, 0.5, 1e-8);
  HermitianMatrix y = Model::dual(r, rows);
  EXPECT_NEAR(y.trace(), 0.5, 1e-7);
  EXPECT_GE(lambda_min(0.5 * half_i - y), -1e-7);
}

TEST(Sdp, RealifyDoublesBlocksAndHalvesData) {
  SdpProblem p = trace_normalized(2, dense_objective(pauli_y()));
  SdpProblem r = realify(p);
  ASSERT_EQ(r.blocks[0].dim, 4);
  ASSERT_EQ(r.constraints[0].a.size(), 4u);
  for (const Entry& e : r.constraints[0].a) EXPECT_EQ(e.value, cplx(0.5));
}

TEST(Sdp, RealifyPreservesValueForPauliY) {
  SdpProblem p = trace_normalized(2, dense_objective(pauli_y()));
  SdpSolution complex_form = solve(p);
  SdpSolution real_form = solve_real(realify(p));
  ASSERT_EQ(complex_form.status, Status::Optimal);
  ASSERT_EQ(real_form.status, Status::Optimal);
  EXPECT_NEAR(complex_form.value, -1.0, 1e-8);
  EXPECT_NEAR(real_form.value, complex_form.value, 1e-8);
  HermitianMatrix x(complex_form.X[0], 1e-6);
  EXPECT_NEAR(inner(x, pauli_y()), -1.0, 1e-7);
}

TEST(Sdp, RealifyLeavesRealProblemValue) {
  SdpProblem p = trace_normalized(3, dense_objective(HermitianMatrix::diag({3.0, 1.0, 2.0})));
  EXPECT_NEAR(solve_real(p).value, 1.0, 1e-8);
  EXPECT_NEAR(solve(p).value, 1.0, 1e-8);
}

TEST(Sdp, IdentityObjectiveValueIsExact) {
  SdpProblem p = trace_normalized(3, dense_objective(HermitianMatrix::identity(3)));
  SdpSolution s = solve(p);
  ASSERT_EQ(s.status, Status::Optimal);
  // Identical to the embedded form within gap_tol * (1 + |value|).
  EXPECT_NEAR(s.value, 1.0, 2e-8);
  EXPECT_NEAR(solve_real(realify(p)).value, s.value, 2e-8);
}

TEST(SdpProperty, RandomToyProblemsMatchAnalyticOptima) {
  Rng rng(2024);
  for (int k = 0; k < 50; ++k) {
    const int d = 2 + k % 4;
    const int kf = 1 + k % (d - 1);
    RVec c(d);
    for (int i = 0; i < d; ++i) c(i) = uniform(rng, -2.0, 2.0);
    CMat u = random_unitary(d, rng);
    HermitianMatrix cm = HermitianMatrix::diag(c).congruence(u);
    // min Tr[C X] s.t. 0 <= X <= I, Tr X = kf  ==  sum of the kf smallest eigenvalues.
    Model m;
    PsdVar x = m.add_psd(d);
    ScalarExpr obj;
    obj.add_trace(x, cm);
    m.minimize(obj);
    ScalarExpr tr;
    tr.add_trace(x);
    m.add_eq(tr, kf);
    MatExpr xe(d);
    xe.add_var(x);
    m.add_psd_le(xe, HermitianMatrix::identity(d));
    Model::Result r = m.solve();
    ASSERT_TRUE(r.optimal()) << to_string(r.sol.status);
    std::vector<double> sorted(c.data(), c.data() + d);
    std::sort(sorted.begin(), sorted.end());
    double expect = 0.0;
    for (int i = 0; i < kf; ++i) expect += sorted[i];
    EXPECT_NEAR(r.objective, expect, 1e-6);
    EXPECT_LE(r.dual_objective, r.objective + 1e-7);
  }
}

TEST(SdpProperty, WeakDualityOnFeasibleIterates) {
  Rng rng(77);
  for (int k = 0; k < 10; ++k) {
    const int d = 3;
    HermitianMatrix cm = random_hermitian(d, rng);
    SolverOptions opt;
    int checked = 0;
    opt.on_iterate = [&](const IterateInfo& info) {
      if (info.primal_residual <= 1e-8 && info.dual_residual <= 1e-8) {
        ++checked;
        EXPECT_LE(info.dual_objective, info.primal_objective + 1e-7);
      }
    };
    SdpSolution s = solve(trace_normalized(d, dense_objective(cm)), opt);
    ASSERT_EQ(s.status, Status::Optimal);
    EXPECT_GE(checked, 1);
    EXPECT_NEAR(s.value, lambda_min(cm), 1e-7);
  }
}

TEST(SdpProperty, LinearProgramBlock) {
  // min c.x s.t. sum x = 1 over the simplex.
  Rng rng(9);
  for (int k = 0; k < 20; ++k) {
    const int n = 2 + k % 5;
    Model m;
    ScalarExpr obj, sum;
    double best = 1e9;
    for (int i = 0; i < n; ++i) {
      ScalarVar x = m.add_nonneg();
      const double c = uniform(rng, -1.0, 1.0);
      best = std::min(best, c);
      obj.add(x, c);
      sum.add(x, 1.0);
    }
    m.minimize(obj);
    m.add_eq(sum, 1.0);
    Model::Result r = m.solve();
    ASSERT_TRUE(r.optimal());
    EXPECT_NEAR(r.objective, best, 1e-7);
  }
}
