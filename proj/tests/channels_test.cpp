#include <gtest/gtest.h>

#include "test_util.hpp"

using namespace symdist;
using namespace symdist::testing;

namespace {

double cq_gap(const QuantumBox& a, const QuantumBox& b) { return cq_trace_distance(a, b); }

}  // namespace

TEST(Channels, IdentityCptpLeavesBox) {
  Rng rng(1);
  QuantumBox b = random_box(2, rng);
  EXPECT_LE(cq_gap(apply_cds(CdsMap::cptp_a(CpMap::identity(2)), b), b), 1e-12);
}

TEST(Channels, FlipOnlyCdsSwapsLabels) {
  Rng rng(2);
  QuantumBox b = random_box(2, rng);
  QuantumBox o = apply_cds({CpMap::zero(2, 2), CpMap::identity(2)}, b);
  EXPECT_NEAR(o.p, 1.0 - b.p, 1e-12);
  EXPECT_LE(o.rho0.max_abs_diff(b.rho1), 1e-12);
  EXPECT_LE(o.rho1.max_abs_diff(b.rho0), 1e-12);
}

TEST(Channels, TraceAndReplace) {
  Rng rng(3);
  QuantumBox b = random_box(2, rng);
  auto w = random_state(3, rng);
  QuantumBox o = apply_cds(CdsMap::cptp_a(CpMap::measure_prepare({HermitianMatrix::identity(2)}, {w})), b);
  EXPECT_NEAR(o.p, b.p, 1e-12);
  EXPECT_LE(o.rho0.max_abs_diff(w), 1e-12);
  EXPECT_LE(o.rho1.max_abs_diff(w), 1e-12);
}

TEST(Channels, ZeroWeightBranchIsMaximallyMixed) {
  QuantumBox b = diag_box(1.0, {1, 0}, {0, 1});
  QuantumBox o = apply_cds(CdsMap::cptp_a(CpMap::identity(2)), b);
  EXPECT_EQ(o.p, 1.0);
  EXPECT_LE(o.rho1.max_abs_diff(HermitianMatrix::diag({0.5, 0.5})), 1e-15);
}

TEST(Channels, GadExamples) {
  EXPECT_LE(gad_channel(0.0, 0.3).choi().max_abs_diff(CpMap::identity(2).choi()), 1e-15);
  EXPECT_LE(gad_channel(1.0, 0.1).apply(HermitianMatrix::diag({1, 0})).max_abs_diff(HermitianMatrix::diag({0.9, 0.1})),
            1e-15);
  for (double g : {0.0, 0.2, 0.7, 1.0})
    for (double n : {0.0, 0.1, 0.5, 1.0}) {
      CpMap a = gad_channel(g, n);
      EXPECT_TRUE(a.is_cptp(1e-10));
      EXPECT_LE(a.apply(HermitianMatrix::diag({1, 0})).max_abs_diff(HermitianMatrix::diag({1 - g * n, g * n})), 1e-14);
      EXPECT_LE(a.apply(HermitianMatrix::diag({0, 1}))
                    .max_abs_diff(HermitianMatrix::diag({g * (1 - n), 1 - g * (1 - n)})),
                1e-14);
    }
  EXPECT_THROW(gad_channel(1.1, 0.1), Error);
}

TEST(Channels, HelstromMeasurementExamples) {
  QuantumBox orth = diag_box(0.5, {1, 0}, {0, 1});
  EXPECT_LE(helstrom_povm(orth).max_abs_diff(HermitianMatrix::diag({0, 1})), 1e-12);
  EXPECT_NEAR(measurement_error(orth, helstrom_povm(orth)), 0.0, 1e-12);

  Rng rng(4);
  auto rho = random_state(2, rng);
  QuantumBox eq{1.0 / 3, rho, rho};
  EXPECT_LE(helstrom_povm(eq).max_abs_diff(HermitianMatrix::identity(2)), 1e-12);
  EXPECT_NEAR(measurement_error(eq, helstrom_povm(eq)), 1.0 / 3, 1e-12);

  QuantumBox g = golden(2.0, 0.5);
  EXPECT_LE(helstrom_povm(g).max_abs_diff(HermitianMatrix::diag({0, 1})), 1e-12);
  EXPECT_NEAR(measurement_error(g, helstrom_povm(g)), 0.25, 1e-12);
}

TEST(ChannelsProperty, HelstromMeasurementAchievesErrorProbability) {
  Rng rng(5);
  for (int k = 0; k < 30; ++k) {
    QuantumBox b = random_box(2 + k % 3, rng);
    EXPECT_NEAR(measurement_error(b, helstrom_povm(b)), p_err(b), 1e-9);
  }
}

TEST(Channels, PrettyGoodMeasurementExamples) {
  EXPECT_LE(pgm(HermitianMatrix::diag({1, 0}), HermitianMatrix::diag({0, 1})).max_abs_diff(HermitianMatrix::diag({0, 1})),
            1e-12);
  auto rho = HermitianMatrix::diag({0.7, 0.3, 0.0});
  EXPECT_LE(pgm(rho, rho).max_abs_diff(HermitianMatrix::diag({0.5, 0.5, 0.0})), 1e-12);
  Rng rng(6);
  auto a = random_state(2, rng), b = random_state(2, rng);
  const CMat s = (a.mat() + b.mat()).inverse();
  Eigen::SelfAdjointEigenSolver<CMat> es(s);
  const CMat root = es.operatorSqrt();
  EXPECT_LE((pgm(a, b).mat() - root * b.mat() * root).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(Channels, DistillCptpOnGoldenBoxIsFixedPoint) {
  for (double M : {1.5, 3.0}) {
    QuantumBox g = golden(M, 0.3);
    DistillCptpWitness w = distill_channel_cptpA(g);
    EXPECT_NEAR(w.M.value(), M, 1e-6);
    EXPECT_LE(cq_gap(apply_cptp(w.channel, g), golden(w.M.value(), 0.3)), 1e-7);
  }
}

TEST(Channels, DistillCptpLimits) {
  EXPECT_TRUE(distill_channel_cptpA(diag_box(0.4, {1, 0}, {0, 1})).M.is_inf());
  Rng rng(7);
  auto rho = random_state(2, rng);
  EXPECT_NEAR(distill_channel_cptpA({0.4, rho, rho}).M.value(), 1.0, 1e-6);
}

TEST(Channels, DistillCdsExamples) {
  QuantumBox g = golden(2.0, 0.5);
  EXPECT_LE(cq_gap(apply_cds(distill_channel_cds(g), g), golden(2.0, 0.5)), 1e-8);
  Rng rng(8);
  auto rho = random_state(2, rng);
  EXPECT_LE(cq_gap(apply_cds(distill_channel_cds({0.5, rho, rho}), {0.5, rho, rho}), golden(1.0, 0.5)), 1e-8);
  EXPECT_LE(cq_gap(apply_cds(distill_channel_cds({1.0 / 3, rho, rho}), {1.0 / 3, rho, rho}), golden(1.5, 0.5)), 1e-8);
  EXPECT_THROW(distill_channel_cds(golden_inf(0.5)), Error);
}

TEST(ChannelsProperty, DistillWitnessesAreValid) {
  Rng rng(9);
  for (int k = 0; k < 10; ++k) {
    QuantumBox b = random_box(2, rng);
    CdsMap m = distill_channel_cds(b);
    validate(m);
    EXPECT_LE(cq_gap(apply_cds(m, b), golden(1.0 / (2.0 * p_err(b)), 0.5)), 1e-8);
    DistillCptpWitness w = distill_channel_cptpA(b);
    EXPECT_TRUE(w.channel.is_cptp());
    EXPECT_LE(cq_gap(apply_cptp(w.channel, b), golden(w.M.value(), b.p)), 1e-7);
  }
}

TEST(Channels, DiluteCptpRoundTrips) {
  QuantumBox g = golden(3.0, 0.4);
  CpMap e = dilute_channel_cptpA(g, 3.0);
  EXPECT_LE(e.apply(g.rho0).max_abs_diff(g.rho0), 1e-12);
  EXPECT_LE(cq_gap(apply_cptp(e, golden(3.0, 0.4)), g), 1e-8);

  Rng rng(10);
  auto rho = random_state(2, rng);
  QuantumBox flat{0.3, rho, rho};
  EXPECT_LE(cq_gap(apply_cptp(dilute_channel_cptpA(flat, 1.0), golden(1.0, 0.3)), flat), 1e-12);

  QuantumBox t = random_box(2, rng);
  const double M = q_max(t.rho0, t.rho1).value();
  EXPECT_LE(cq_gap(apply_cptp(dilute_channel_cptpA(t, M), golden(M, t.p)), t), 1e-8);
  EXPECT_THROW(dilute_channel_cptpA(t, 0.5 * (1.0 + M)), Error);
}

TEST(Channels, DiluteCdsRoundTrips) {
  Rng rng(11);
  auto rho = random_state(2, rng);
  QuantumBox flat{0.25, rho, rho};
  CdsMap m = dilute_channel_cds(flat, 2.0);
  validate(m);
  EXPECT_LE(cq_gap(apply_cds(m, golden(2.0, 0.5)), flat), 1e-12);

  QuantumBox flat_hi{0.8, rho, rho};
  EXPECT_LE(cq_gap(apply_cds(dilute_channel_cds(flat_hi, 2.5), golden(2.5, 0.5)), flat_hi), 1e-12);

  QuantumBox t = random_box(2, rng);
  const double M = q_max_star(t).value();
  CdsMap n = dilute_channel_cds(t, M);
  validate(n);
  EXPECT_LE(cq_gap(apply_cds(n, golden(M, 0.5)), t), 1e-8);

  QuantumBox g = golden(4.0, 0.5);
  EXPECT_LE(cq_gap(apply_cds(dilute_channel_cds(g, 4.0), golden(4.0, 0.5)), g), 1e-8);
  EXPECT_THROW(dilute_channel_cds(t, 0.9 * M), Error);
}

TEST(Channels, InfiniteResourceToAnything) {
  Rng rng(12);
  QuantumBox src = golden_inf(0.5);
  for (int k = 0; k < 5; ++k) {
    QuantumBox t = random_box(2, rng);
    CdsMap m = inf_to_any(src, t);
    validate(m);
    EXPECT_LE(cq_gap(apply_cds(m, src), t), 1e-9);
  }
  EXPECT_LE(cq_gap(apply_cds(inf_to_any(src, src), src), src), 1e-12);
  QuantumBox q0{0.0, random_state(2, rng), random_state(2, rng)};
  EXPECT_LE(cq_gap(apply_cds(inf_to_any(src, q0), src), q0), 1e-9);
  EXPECT_THROW(inf_to_any(golden(2.0, 0.5), q0), Error);
}

TEST(Channels, GoldenMajorization) {
  CdsMap m = golden_majorize(0.5, 1.0 / 3);
  EXPECT_NEAR(m.e0.choi().trace(), 2.0 * 0.5, 1e-12);  // lambda = 1/2
  EXPECT_LE(cq_gap(apply_cds(m, golden(3.0, 1.0 / 3)), golden(3.0, 0.5)), 1e-12);
  CdsMap id = golden_majorize(0.7, 0.7);
  EXPECT_TRUE(id.is_cptp_a());
  EXPECT_LE(cq_gap(apply_cds(golden_majorize(1.0, 0.0), golden(2.0, 0.0)), golden(2.0, 1.0)), 1e-12);
  EXPECT_THROW(golden_majorize(0.2, 0.5), Error);
}

TEST(ChannelsProperty, RandomChannelsAreValid) {
  Rng rng(13);
  for (int k = 0; k < 20; ++k) {
    EXPECT_TRUE(random_channel(2, 3, rng).is_cptp());
    validate(random_cds(3, 2, rng));
  }
}

TEST(ChannelsProperty, ErrorProbabilityMonotoneUnderCds) {
  Rng rng(14);
  for (int k = 0; k < 100; ++k) {
    QuantumBox b = random_box(2, rng, 0.0, 1.0);
    CdsMap m = random_cds(2, 2, rng);
    EXPECT_GE(p_err(apply_cds(m, b)), p_err(b) - 1e-9);
  }
}
