#include <gtest/gtest.h>

#include "symdist/tasks.hpp"
#include "test_util.hpp"

using namespace symdist;
using namespace symdist::testing;

namespace {

constexpr Regime kRegimes[] = {Regime::CptpA, Regime::Cds};

void expect_witness(const TaskResult& t, double tol) {
  ASSERT_TRUE(t.witness.has_value());
  validate(*t.witness);
  EXPECT_LE(t.diagnostics.witness_error, tol);
}

}  // namespace

TEST(Tasks, DistillExactExamples) {
  for (double M : {1.0, 2.0, 6.0}) {
    TaskResult t = distill_exact(golden(M, 0.3), Regime::CptpA);
    EXPECT_NEAR(t.value.value(), std::log2(M), 1e-6);
    expect_witness(t, 1e-7);
  }
  Rng rng(1);
  QuantumBox b = random_box(2, rng);
  EXPECT_NEAR(distill_exact(b, Regime::Cds).value.value(), sd(b).value(), 1e-12);
  EXPECT_TRUE(distill_exact({0.0, b.rho0, b.rho1}, Regime::CptpA).value.is_inf());
  TaskResult inf = distill_exact(golden_inf(0.4), Regime::Cds);
  EXPECT_TRUE(inf.value.is_inf());
  expect_witness(inf, 1e-12);
}

TEST(Tasks, CostExactExamples) {
  Rng rng(2);
  auto rho = random_state(2, rng);
  TaskResult flat = cost_exact({0.4, rho, rho}, Regime::CptpA);
  EXPECT_NEAR(flat.value.value(), 0.0, 1e-12);
  expect_witness(flat, 1e-12);
  for (double M : {1.0, 3.0, 8.0}) EXPECT_NEAR(cost_exact(golden(M, 0.5), Regime::Cds).value.value(), std::log2(M), 1e-9);
  TaskResult third = cost_exact({1.0 / 3, rho, rho}, Regime::Cds);
  EXPECT_NEAR(third.value.value(), std::log2(1.5), 1e-9);
  expect_witness(third, 1e-9);
  EXPECT_EQ(cost_exact({1.0, rho, random_state(2, rng)}, Regime::CptpA).value.value(), 0.0);
}

TEST(TasksProperty, ExactWitnessesAndIrreversibility) {
  Rng rng(3);
  for (int k = 0; k < 15; ++k) {
    QuantumBox b = random_box(2, rng);
    for (Regime r : kRegimes) {
      TaskResult d = distill_exact(b, r), c = cost_exact(b, r);
      expect_witness(d, 1e-7);
      expect_witness(c, 1e-7);
      EXPECT_LE(d.value.value(), c.value.value() + 1e-7) << to_string(r);
    }
  }
}

TEST(Tasks, MinConversionErrorSameBoxIsZero) {
  Rng rng(4);
  QuantumBox b = random_box(2, rng);
  for (Regime r : kRegimes) {
    TaskResult t = min_conversion_error(b, b, r);
    EXPECT_NEAR(t.value.value(), 0.0, 1e-6);
    EXPECT_LE(t.diagnostics.witness_error, 1e-5);
  }
}

TEST(Tasks, MinConversionErrorFromInfiniteResource) {
  Rng rng(5);
  for (int k = 0; k < 3; ++k) {
    TaskResult t = min_conversion_error(golden_inf(0.5), random_box(2, rng), Regime::Cds);
    EXPECT_NEAR(t.value.value(), 0.0, 1e-6);
  }
}

TEST(Tasks, MinConversionErrorPriorMismatch) {
  Rng rng(6);
  auto rho = random_state(2, rng), sigma = random_state(2, rng);
  for (auto [p, q] : std::vector<std::pair<double, double>>{{1.0 / 3, 0.25}, {0.5, 0.2}, {0.7, 0.6}}) {
    TaskResult t = min_conversion_error({p, rho, rho}, {q, sigma, sigma}, Regime::CptpA);
    EXPECT_NEAR(t.value.value(), std::abs(p - q) / std::min(q, 1.0 - q), 1e-6);
    EXPECT_LE(t.diagnostics.witness_error, 1e-5);
  }
}

TEST(Tasks, MinConversionErrorToInfiniteTarget) {
  Rng rng(7);
  EXPECT_TRUE(min_conversion_error(random_box(2, rng), golden_inf(0.5), Regime::Cds).value.is_inf());
  TaskResult t = min_conversion_error(golden_inf(0.3), golden_inf(0.3), Regime::CptpA);
  EXPECT_EQ(t.value.value(), 0.0);
  EXPECT_LE(t.diagnostics.witness_error, 1e-6);
}

TEST(TasksProperty, ConversionToDistilledGoldenUnit) {
  Rng rng(8);
  for (int k = 0; k < 5; ++k) {
    QuantumBox b = random_box(2, rng);
    const double M = std::exp2(distill_exact(b, Regime::Cds).value.value());
    EXPECT_LE(min_conversion_error(b, golden(M, 0.5), Regime::Cds).value.value(), 1e-6);
  }
}

TEST(TasksProperty, ConversionValueIsAttainedByWitness) {
  Rng rng(9);
  for (int k = 0; k < 8; ++k) {
    QuantumBox a = random_box(2, rng), b = random_box(2, rng);
    for (Regime r : kRegimes) {
      TaskResult t = min_conversion_error(a, b, r);
      EXPECT_LE(t.diagnostics.witness_error, 1e-5) << to_string(r);
      EXPECT_LE(t.value.value(), scaled_trace_distance(a, b).value() + 1e-6);
    }
  }
}

TEST(Tasks, ConversionErrorToInfiniteExamples) {
  for (Regime r : kRegimes) {
    InfiniteConversionResult o = conversion_error_to_infinite(diag_box(0.5, {1, 0}, {0, 1}), r);
    EXPECT_NEAR(o.primal, 0.0, 1e-7);
    EXPECT_NEAR(o.dual, 0.0, 1e-7);
    Rng rng(10);
    auto rho = random_state(2, rng);
    o = conversion_error_to_infinite({0.5, rho, rho}, r);
    EXPECT_NEAR(o.primal, 0.5, 1e-7);
    EXPECT_NEAR(o.dual, 0.5, 1e-7);
  }
}

TEST(TasksProperty, ConversionErrorToInfiniteEqualsErrorProbability) {
  Rng rng(11);
  for (int k = 0; k < 10; ++k) {
    QuantumBox b = random_box(2 + k % 2, rng);
    for (Regime r : kRegimes) {
      InfiniteConversionResult o = conversion_error_to_infinite(b, r);
      EXPECT_NEAR(o.primal, p_err(b), 1e-6) << to_string(r);
      EXPECT_NEAR(o.dual, p_err(b), 1e-6) << to_string(r);
    }
  }
}

TEST(Tasks, DistillApproxAtZeroEps) {
  Rng rng(12);
  for (int k = 0; k < 8; ++k) {
    QuantumBox b = random_box(2, rng);
    EXPECT_NEAR(distill_approx(b, 0.0, Regime::CptpA).value.value(), xi_min(b.rho0, b.rho1).value(), 1e-6);
    EXPECT_NEAR(distill_approx(b, 0.0, Regime::Cds).value.value(), sd(b).value(), 1e-6);
  }
  EXPECT_TRUE(distill_approx(golden_inf(0.5), 0.1, Regime::Cds).value.is_inf());
  EXPECT_THROW(distill_approx(golden(2.0, 0.5), -0.1, Regime::Cds), Error);
}

TEST(TasksProperty, DistillApproxMonotoneAndWitnessed) {
  Rng rng(13);
  for (int k = 0; k < 6; ++k) {
    QuantumBox b = random_box(2, rng);
    for (Regime r : kRegimes) {
      double prev = -1.0;
      for (double eps : {0.0, 0.05, 0.1, 0.3}) {
        TaskResult t = distill_approx(b, eps, r);
        ASSERT_TRUE(t.value.is_finite());
        EXPECT_GE(t.value.value(), prev - 1e-7) << to_string(r) << " eps " << eps;
        prev = t.value.value();
        expect_witness(t, 1e-6);
      }
    }
  }
}

TEST(TasksProperty, DistillApproxAgreesWithConversionError) {
  Rng rng(14);
  for (int k = 0; k < 4; ++k) {
    QuantumBox b = random_box(2, rng);
    const double eps = 0.1;
    TaskResult t = distill_approx(b, eps, Regime::CptpA);
    const double M = std::exp2(t.value.value());
    EXPECT_LE(min_conversion_error(b, golden(M, b.p), Regime::CptpA).value.value(), eps + 1e-6);
    TaskResult c = distill_approx(b, eps, Regime::Cds);
    const double Mc = std::exp2(c.value.value());
    EXPECT_LE(min_conversion_error(b, golden(Mc, 0.5), Regime::Cds).value.value(), eps + 1e-6);
  }
}

TEST(Tasks, CostApproxAtZeroEps) {
  Rng rng(15);
  for (int k = 0; k < 4; ++k) {
    QuantumBox b = random_box(2, rng);
    for (Regime r : kRegimes) {
      TaskResult t = cost_approx(b, 0.0, r);
      EXPECT_NEAR(t.value.value(), cost_exact(b, r).value.value(), 1e-5) << to_string(r);
    }
  }
}

TEST(Tasks, CostApproxGoldenBox) {
  for (double M : {2.0, 4.0}) {
    TaskResult t = cost_approx(golden(M, 0.5), 0.05, Regime::Cds);
    EXPECT_LE(t.value.value(), std::log2(M) + 1e-6);
    EXPECT_GE(t.value.value(), 0.0);
    expect_witness(t, 1e-6);
  }
}

TEST(TasksProperty, CostApproxNonIncreasingInEps) {
  Rng rng(16);
  for (int k = 0; k < 3; ++k) {
    QuantumBox b = random_box(2, rng);
    for (Regime r : kRegimes) {
      double prev = 1e300;
      for (double eps : {0.0, 0.05, 0.2, 0.6}) {
        TaskResult t = cost_approx(b, eps, r);
        EXPECT_LE(t.value.value(), prev + 1e-6) << to_string(r) << " eps " << eps;
        prev = t.value.value();
        if (t.witness) {
          EXPECT_LE(t.diagnostics.witness_error, 1e-6);
        }
      }
    }
  }
}

TEST(Tasks, AsymptoticRatesExamples) {
  Rng rng(17);
  auto rho = random_state(2, rng);
  AsymptoticRates same = asymptotic_rates({0.5, rho, rho});
  EXPECT_NEAR(same.distill.value(), 0.0, 1e-9);
  EXPECT_NEAR(same.exact_cost.value(), 0.0, 1e-9);
  EXPECT_NEAR(same.approx_cost.value(), 0.0, 1e-9);
  AsymptoticRates orth = asymptotic_rates(diag_box(0.3, {1, 0}, {0, 1}));
  EXPECT_TRUE(orth.distill.is_inf() && orth.exact_cost.is_inf() && orth.approx_cost.is_inf());
  EXPECT_NEAR(asymptotic_rates(diag_box(0.5, {1, 0}, {0.5, 0.5})).distill.value(), 1.0, 1e-12);
  EXPECT_THROW(asymptotic_rates({0.0, rho, rho}), Error);
}

TEST(Tasks, TransformRateGenericCases) {
  QuantumBox a = diag_box(0.5, {1, 0}, {0.5, 0.5});     // chernoff 1
  QuantumBox b = diag_box(0.5, {0.9, 0.1}, {0.1, 0.9});
  const double xa = chernoff(a.rho0, a.rho1).value(), xb = chernoff(b.rho0, b.rho1).value();
  TransformRate r = transform_rate(a, b, Regime::CptpA);
  EXPECT_NEAR(r.achievable.value(), xa / xb, 1e-12);
  EXPECT_NEAR(r.strong_converse.value(), xa / xb, 1e-12);
  r = transform_rate(a, b, Regime::Cds);
  EXPECT_NEAR(r.achievable.value(), xa / xb, 1e-12);
}

TEST(Tasks, TransformRateZeroChernoffTarget) {
  Rng rng(18);
  auto rho = random_state(2, rng);
  QuantumBox a = diag_box(0.5, {1, 0}, {0.5, 0.5});
  TransformRate r = transform_rate(a, {0.3, rho, rho}, Regime::Cds);
  EXPECT_TRUE(r.achievable.is_inf() && r.strong_converse.is_inf());
  // (0.3, 0.7) majorizes (1/2, 1/2) but not the other way round.
  r = transform_rate({0.3, rho, rho}, {0.5, rho, rho}, Regime::Cds);
  EXPECT_TRUE(r.achievable.is_inf() && r.strong_converse.is_inf());
  r = transform_rate({0.5, rho, rho}, {0.3, rho, rho}, Regime::Cds);
  EXPECT_EQ(r.achievable.value(), 0.0);
  EXPECT_TRUE(r.strong_converse.is_inf());
}
