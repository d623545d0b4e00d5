// Copyright 2026 The relkin Authors.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>

#include "relkin/cli/verify.hpp"
#include "relkin/constitutive.hpp"
#include "relkin/worldline.hpp"

namespace {

using namespace relkin;
using namespace relkin::constitutive;
using minkowski::Mat;
using minkowski::Vec;
using kinematics::DeformationGradient;

MaterialParams<2> material(double m0 = 1.0, double c1 = 1.0, double t0 = 1.0, double h = 0.0) {
  MaterialParams<2> p;
  p.m0 = m0;
  p.c1 = c1;
  p.t0 = t0;
  p.hardening = h;
  return p;
}

minkowski::WorldVelocity<2> u_of(double beta) {
  return minkowski::world_velocity<2>(minkowski::SpatialVec<2>::Constant(beta));
}

/// Bar state moving at beta with dx1/dX = a and plastic stretch lp.
struct BarState {
  double beta;
  DeformationGradient<2> fs;
  DeformationGradient<2> fse;
  Mat<2> t;
};

BarState bar_state(double beta, double a, double lp, const MaterialParams<2>& p) {
  BarState s;
  s.beta = beta;
  s.fs = minkowski::projector<2>(u_of(beta)).matrix() * DeformationGradient<2>(a, 0.0);
  s.fse = elastic_split<2>(s.fs, lp);
  s.t = stress<2>(s.fse, kinematics::right_cauchy_green<2>(s.fse), p);
  return s;
}

TEST(ElasticSplit, VirginMaterialAndRecomposition) {
  const DeformationGradient<2> fs(1.5625, 0.9375);
  EXPECT_EQ(elastic_split<2>(fs, 1.0), fs);
  const auto fse = elastic_split<2>(fs, 1.1);
  EXPECT_LE((fse * 1.1 - fs).cwiseAbs().maxCoeff(), 1e-14);
  cli::Rng rng(1);
  const DeformationGradient<4> f4 = cli::random_spatial_gradient<4>(rng, 0.5);
  kinematics::ReferenceTensor<4> fp;
  fp << 1.1, 0.1, 0.0, 0.0, 0.9, 0.2, 0.1, 0.0, 1.2;
  EXPECT_LE((elastic_split<4>(f4, fp) * fp - f4).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(ElasticSplit, NonPositiveStretchIsRejected) {
  EXPECT_THROW(elastic_split<2>(DeformationGradient<2>(1.0, 0.0), 0.0), Error);
}

TEST(ElasticMeasures, RigidBetaPointSix) {
  const auto m = elastic_cg<2>(DeformationGradient<2>(1.5625, 0.9375));
  EXPECT_NEAR(m.c(0, 0), 1.5625, 1e-15);
  const auto pm = plastic_cg<2>(1.0, u_of(0.6));
  EXPECT_NEAR(pm.c(0, 0), 1.0, 1e-15);
  // the plastic B has the same invariant through the metric
  EXPECT_NEAR(minkowski::contract(pm.b, minkowski::metric<2>()), 1.0, 1e-14);
  const auto pm2 = plastic_cg<2>(1.2, u_of(0.6));
  EXPECT_NEAR(minkowski::contract(pm2.b, minkowski::metric<2>()), 1.44, 1e-14);
}

TEST(ElasticMeasures, BoostInvariance) {
  cli::Rng rng(31);
  for (int i = 0; i < 300; ++i) {
    const auto fse = cli::random_spatial_gradient<4>(rng, 0.9);
    const auto lam = cli::random_boost<4>(rng, 0.99);
    const auto c = elastic_cg<4>(fse).c;
    const auto cb = elastic_cg<4>(DeformationGradient<4>(lam.matrix() * fse)).c;
    EXPECT_LE((cb - c).cwiseAbs().maxCoeff(), 1e-10 * std::max(1.0, c.cwiseAbs().maxCoeff()));
  }
}

TEST(FreeEnergy, Values) {
  const auto p = material(1.0, 2.0);
  EXPECT_EQ(free_energy<2>(kinematics::ReferenceTensor<2>::Constant(1.0), p).psi, 0.0);
  EXPECT_DOUBLE_EQ(free_energy<2>(kinematics::ReferenceTensor<2>::Constant(1.5625), p).psi, 0.31640625);
  EXPECT_EQ(free_energy<2>(kinematics::ReferenceTensor<2>::Constant(1.5625), p).entropy, 0.0);
  cli::Rng rng(37);
  for (int i = 0; i < 100; ++i) {
    const auto fse = cli::random_spatial_gradient<4>(rng, 0.9);
    EXPECT_GE(free_energy<4>(kinematics::right_cauchy_green<4>(fse), MaterialParams<4>{}).psi, 0.0);
  }
}

TEST(FreeEnergy, GradientMatchesDifferences) {
  const auto p = material(1.0, 1.7);
  kinematics::ReferenceTensor<4> c;
  c << 1.2, 0.1, 0.0, 0.1, 0.9, 0.05, 0.0, 0.05, 1.1;
  const MaterialParams<4> p4{p.m0, p.c1, p.t0, p.hardening};
  const auto g = free_energy_gradient<4>(c, p4);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      auto cp = c, cm = c;
      cp(i, j) += 1e-6;
      cm(i, j) -= 1e-6;
      const double fd = (free_energy<4>(cp, p4).psi - free_energy<4>(cm, p4).psi) / 2e-6;
      EXPECT_NEAR(g(i, j), fd, 1e-8);
    }
}

TEST(Stress, UnstrainedIsZero) {
  const auto s = bar_state(0.0, 1.0, 1.0, material());
  EXPECT_EQ(s.t, Mat<2>::Zero());
}

TEST(Stress, RestStretch) {
  const auto s = bar_state(0.0, 1.2, 1.0, material());
  EXPECT_NEAR(s.t(0, 0), 2 * 1.44 * 0.44, 1e-14);
  EXPECT_NEAR(s.t(0, 0), 1.2672, 1e-14);
  EXPECT_EQ(s.t(0, 1), 0.0);
  EXPECT_EQ(s.t(1, 1), 0.0);
}

TEST(Stress, ComponentRatiosOfTheBarFamily) {
  cli::Rng rng(41);
  for (int i = 0; i < 200; ++i) {
    const double beta = rng.uniform(-0.95, 0.95);
    const auto s = bar_state(beta, rng.uniform(0.7, 1.5), rng.uniform(0.8, 1.2), material(1.0, rng.uniform(0.5, 2)));
    if (std::abs(s.t(0, 0)) < 1e-8) continue;
    EXPECT_NEAR(s.t(0, 1) / s.t(0, 0), beta, 1e-12);
    EXPECT_NEAR(s.t(1, 0) / s.t(0, 0), beta, 1e-12);
    EXPECT_NEAR(s.t(1, 1) / s.t(0, 0), beta * beta, 1e-12);
  }
}

TEST(EffectiveStress, ZeroAndBarFamily) {
  const auto p = material();
  EXPECT_EQ(effective_stress<2>(Mat<2>::Zero(), p.yield_form), 0.0);
  cli::Rng rng(43);
  for (int i = 0; i < 200; ++i) {
    const double beta = rng.uniform(-0.95, 0.95);
    const auto s = bar_state(beta, rng.uniform(0.7, 1.5), 1.0, p);
    const double f = effective_stress<2>(s.t, p.yield_form);
    EXPECT_NEAR(f, std::abs(s.t(0, 0)) * (1 - beta * beta), 1e-12 * std::max(1.0, f));
    const auto lam = cli::random_boost<2>(rng, 0.99);
    const double fb = effective_stress<2>(minkowski::apply_boost<2>(lam, s.t, minkowski::TensorMode::Direct), p.yield_form);
    EXPECT_NEAR(fb, f, 1e-10 * std::max(1.0, f));
  }
}

TEST(EffectiveStress, NegativeRadicandThrows) {
  Mat<2> t;
  t << 0.0, 1.0, 1.0, 0.0;
  EXPECT_THROW(effective_stress<2>(t, QuadraticForm<2>::paper_example()), NegativeRadicand);
}

TEST(EffectiveStress, WeightsInTwoDimensions) {
  Mat<2> t;
  t << 3.0, 1.0, 2.0, 4.0;
  EXPECT_DOUBLE_EQ(QuadraticForm<2>::paper_example()(t), 9.0 + 16.0 - 1.0 - 4.0);
}

TEST(FlowDirection, BarFamily) {
  const auto p = material();
  const auto s = bar_state(0.6, 1.1, 1.0, p);
  const double f = effective_stress<2>(s.t, p.yield_form);
  Mat<2> expected;
  expected << 1.0, -0.6, -0.6, 0.36;
  expected *= s.t(0, 0) / f;
  EXPECT_LE(minkowski::max_abs(flow_direction<2>(s.t, p.potential_form) - expected), 1e-13);

  const auto r = bar_state(0.0, 1.1, 1.0, p);
  Mat<2> rest;
  rest << 1.0, 0.0, 0.0, 0.0;
  EXPECT_LE(minkowski::max_abs(flow_direction<2>(r.t, p.potential_form) - rest), 1e-14);
}

TEST(FlowDirection, MatchesFiniteDifferences) {
  cli::Rng rng(47);
  MaterialParams<4> p;
  for (int i = 0; i < 100; ++i) {
    const auto fse = cli::random_spatial_gradient<4>(rng, 0.9);
    const Mat<4> t = stress<4>(fse, kinematics::right_cauchy_green<4>(fse), p);
    const Mat<4> n = flow_direction<4>(t, p.potential_form);
    Mat<4> fd;
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        const double h = 1e-6 * std::max(1.0, t.norm());
        Mat<4> tp = t, tm = t;
        tp(a, b) += h;
        tm(a, b) -= h;
        fd(a, b) = (effective_stress<4>(tp, p.potential_form) - effective_stress<4>(tm, p.potential_form)) / (2 * h);
      }
    EXPECT_LE((fd - n).cwiseAbs().maxCoeff() / n.cwiseAbs().maxCoeff(), 1e-6);
  }
}

TEST(FlowDirection, TransformsWithTheDualBoost) {
  cli::Rng rng(53);
  const auto p = material();
  for (int i = 0; i < 200; ++i) {
    const auto s = bar_state(rng.uniform(-0.9, 0.9), rng.uniform(0.8, 1.4), 1.0, p);
    if (effective_stress<2>(s.t, p.yield_form) < 1e-6) continue;
    const auto lam = cli::random_boost<2>(rng, 0.9);
    const Mat<2> nb = flow_direction<2>(minkowski::apply_boost<2>(lam, s.t, minkowski::TensorMode::Direct), p.potential_form);
    const Mat<2> expected = minkowski::apply_boost<2>(lam, flow_direction<2>(s.t, p.potential_form), minkowski::TensorMode::Dual);
    EXPECT_LE(minkowski::max_abs(nb - expected), 1e-10 * std::max(1.0, minkowski::max_abs(expected)));
  }
}

TEST(FlowDirection, ApexThrows) {
  EXPECT_THROW(flow_direction<2>(Mat<2>::Zero(), QuadraticForm<2>::paper_example()), ApexSingularity);
}

TEST(LoadingCheck, Cases) {
  EXPECT_EQ(loading_check<2>(0.0, 0.0, material()), Loading::Elastic);
  EXPECT_EQ(loading_check<2>(1.0, 0.0, material()), Loading::Plastic);
  EXPECT_EQ(loading_check<2>(1.9, 0.5, material(1.0, 1.0, 1.0, 2.0)), Loading::Elastic);
  EXPECT_EQ(flow_stress<2>(0.5, material(1.0, 1.0, 1.0, 2.0)), 2.0);
}

TEST(Material, Validation) {
  EXPECT_NO_THROW(material().validate());
  EXPECT_THROW(material(0.0).validate(), ValidationError);
  EXPECT_THROW(material(1.0, -1.0).validate(), ValidationError);
  EXPECT_THROW(material(1.0, 1.0, 0.0).validate(), ValidationError);
  EXPECT_THROW(material(1.0, 1.0, 1.0, -0.1).validate(), ValidationError);
  auto p = material();
  Mat<2> w;
  w << -1, 1, 1, 1;
  p.potential_form = QuadraticForm<2>::diagonal(w);
  EXPECT_THROW(p.validate(), ValidationError);
}

TEST(RateConversion, Values) {
  EXPECT_EQ(rate_conversion(0.7, 0.0), 0.7);
  EXPECT_NEAR(rate_conversion(1.0, 0.6), 0.8, 1e-15);
  EXPECT_EQ(rate_conversion(0.0, 0.6), 0.0);
  EXPECT_NEAR(rate_conversion(1.0, 0.6, 3.0), 2.4, 1e-15);
  EXPECT_THROW(rate_conversion(1.0, 1.0), BetaSuperluminal);
}

TEST(UpdateInternal, ExponentialMap) {
  const InternalState s0;
  const auto same = update_internal(s0, 0.0, 0.1);
  EXPECT_EQ(same.plastic_stretch, 1.0);
  EXPECT_EQ(same.gamma_p, 0.0);
  InternalState s = s0;
  for (int i = 0; i < 10; ++i) s = update_internal(s, 0.1, 0.1);
  EXPECT_NEAR(s.plastic_stretch, 1.105170918, 1e-9);
  EXPECT_NEAR(s.plastic_stretch, std::exp(0.1), 1e-14);
  const auto full = update_internal(s0, 0.3, 0.2);
  const auto half = update_internal(update_internal(s0, 0.3, 0.1), 0.3, 0.1);
  EXPECT_NEAR(half.plastic_stretch, full.plastic_stretch, 1e-14);
  EXPECT_NEAR(half.gamma_p, full.gamma_p, 1e-14);
  EXPECT_THROW(update_internal(s0, -0.1, 0.1), Error);
}

TEST(Dissipation, Cases) {
  const auto p = material();
  const auto s = bar_state(0.6, 1.15, 1.0, p);
  EXPECT_EQ(dissipation<2>(s.t, Mat<2>::Zero()), 0.0);
  const double f = effective_stress<2>(s.t, p.yield_form);
  const double d = 0.37;
  const auto rates = plastic_rate_tensors<2>(flow_direction<2>(s.t, p.potential_form), d);
  EXPECT_NEAR(dissipation<2>(s.t, rates.ds_eta), f * d, 1e-12);
  EXPECT_NEAR(dissipation<2>(s.t, rates.ds_eta), s.t(0, 0) * s.t(0, 0) * std::pow(1 - 0.36, 2) * d / f, 1e-12);
  const auto r = bar_state(0.0, 1.15, 1.0, p);
  const double fr = effective_stress<2>(r.t, p.yield_form);
  EXPECT_NEAR(dissipation<2>(r.t, plastic_rate_tensors<2>(flow_direction<2>(r.t, p.potential_form), d).ds_eta),
              fr * d, 1e-13);
}

TEST(PlasticRates, SplitAndObjectivity) {
  const auto p = material();
  const auto s = bar_state(0.6, 1.15, 1.0, p);
  const auto n = flow_direction<2>(s.t, p.potential_form);
  kinematics::RateTensors<2> total;
  total.ls_eta = Mat<2>::Random();
  total.ds_eta = 0.5 * (total.ls_eta + total.ls_eta.transpose());
  const auto zero = elastic_remainder<2>(total, plastic_rate_tensors<2>(n, 0.0));
  EXPECT_EQ(zero.ds_eta, total.ds_eta);
  EXPECT_EQ(zero.ls_eta, total.ls_eta);

  const double f = effective_stress<2>(s.t, p.yield_form);
  Mat<2> expected;
  expected << 1.0, -0.6, -0.6, 0.36;
  expected *= s.t(0, 0) / f * 0.5;
  EXPECT_LE(minkowski::max_abs(plastic_rate_tensors<2>(n, 0.5).ds_eta - expected), 1e-13);

  cli::Rng rng(59);
  for (int i = 0; i < 100; ++i) {
    const auto lam = cli::random_boost<2>(rng, 0.9);
    const Mat<2> tb = minkowski::apply_boost<2>(lam, s.t, minkowski::TensorMode::Direct);
    const Mat<2> dp_b = plastic_rate_tensors<2>(flow_direction<2>(tb, p.potential_form), 0.5).ds_eta;
    const Mat<2> expected_b = minkowski::apply_boost<2>(lam, plastic_rate_tensors<2>(n, 0.5).ds_eta,
                                                        minkowski::TensorMode::Dual);
    EXPECT_LE(minkowski::max_abs(dp_b - expected_b), 1e-10 * std::max(1.0, minkowski::max_abs(expected_b)));
  }
}

/// Snapshot of a moving, stretching bar at X, t.
ConsistencySnapshot<2> snapshot(const worldline::MotionSpec& m, double X, double t, double lp,
                                const MaterialParams<2>& p) {
  const auto k = worldline::eval_kinematics(m, X, t);
  const auto fse = elastic_split<2>(k.fs, lp);
  const auto st = evaluate_stress<2>(fse, 0.0, p);
  return {k.rates.l, k.u.vector(), k.s, fse, st.ts, st.t_y};
}

TEST(PlasticMultiplier, RigidMotionGivesZero) {
  const auto p = material(1.0, 1.0, 1.7578125);
  const auto snap = snapshot(worldline::MotionSpec::rigid_boost(0.6), 0.0, 0.3, 1.0, p);
  const auto r = plastic_multiplier<2>(snap, p);
  EXPECT_EQ(r.value, 0.0);
}

TEST(PlasticMultiplier, ResidualAtTheSolution) {
  cli::Rng rng(61);
  for (int i = 0; i < 100; ++i) {
    const auto m = worldline::MotionSpec::boosted_stretch(rng.uniform(-0.8, 0.8), rng.uniform(0.1, 1.0));
    const auto p = material(rng.uniform(0.5, 2), rng.uniform(0.5, 2), 1.0, rng.uniform(0, 2));
    const auto snap = snapshot(m, 0.1, 0.5, 1.0, p);
    const auto r = plastic_multiplier<2>(snap, p);
    ASSERT_EQ(r.status, MultiplierStatus::Converged);
    EXPECT_GT(r.value, 0.0);
    EXPECT_LE(std::abs(r.g1 - r.g2 * r.value), 1e-12 * std::abs(r.g2 * r.value) + 1e-14);
  }
}

// Scalar consistency for the bar: with k = dbeta/dx1 + beta dbeta/dx2 and
// le the rest-frame elastic stretch,
//   (4 m0 c1 le^4 + 2 f) (gamma^3 k - D) = H D.
double bar_multiplier(const worldline::MotionSpec& m, double X, double t, double lp, const MaterialParams<2>& p) {
  const double beta = m.beta(X, t);
  const double g = 1.0 / std::sqrt(1 - beta * beta);
  const double k = m.dbeta_dx1(X, t) + beta * m.dbeta_dx2(X, t);
  const double le = g * m.stretch(t) / lp;
  const double f = 2 * p.m0 * p.c1 * le * le * std::abs(le * le - 1);
  const double stiff = 4 * p.m0 * p.c1 * std::pow(le, 4) + 2 * f;
  return stiff * g * g * g * k / (stiff + p.hardening);
}

TEST(PlasticMultiplier, MatchesScalarBarConsistency) {
  cli::Rng rng(67);
  for (int i = 0; i < 100; ++i) {
    const double beta = rng.uniform(-0.9, 0.9);
    const auto m = worldline::MotionSpec::boosted_stretch(beta, rng.uniform(0.1, 1.0));
    auto p = material(rng.uniform(0.5, 2), rng.uniform(0.5, 2), 1.0, rng.uniform(0, 2));
    const double lp = rng.uniform(1.0, 1.03);
    const double X = rng.uniform(0.0, 0.05);
    // put the state on the yield surface
    p.t0 = evaluate_stress<2>(snapshot(m, X, 0.4, lp, p).fse, 0.0, p).sigma_bar;
    const auto r = plastic_multiplier<2>(snapshot(m, X, 0.4, lp, p), p);
    const double expected = bar_multiplier(m, X, 0.4, lp, p);
    if (expected <= 0) continue;
    EXPECT_NEAR(r.value, expected, 1e-10 * std::max(1.0, expected)) << "beta " << beta;
  }
}

TEST(PlasticMultiplier, RestFrameClosedForm) {
  // At beta = 0, with le = a / lambda_p and k = dbeta/dx1:
  //   g1 = 2 t11 (k - D) + 4 m0 c1 k le^4,  g2 = H + 4 m0 c1 le^4,
  // and equivalently D = s' k / (s' + H) with s' = d f / d ln(le).
  auto p = material(1.0, 1.0, 1.0, 0.5);
  const auto m = worldline::MotionSpec::uniform_stretch(0.5);
  const double t = 0.4, lp = 1.02;
  p.t0 = evaluate_stress<2>(snapshot(m, 0.0, t, lp, p).fse, 0.0, p).sigma_bar;  // on the surface
  const auto snap = snapshot(m, 0.0, t, lp, p);
  const double le = m.stretch(t) / lp;
  const double k = m.dbeta_dx1(0.0, t);
  const double t11 = snap.ts(0, 0);
  const double le4 = std::pow(le, 4);
  const double rest_form = (2 * t11 * k + 4 * p.m0 * p.c1 * le4 * k) / (p.hardening + 4 * p.m0 * p.c1 * le4 + 2 * t11);
  const double s_prime = 2 * p.m0 * p.c1 * (4 * le4 - 2 * le * le);
  const double D = plastic_multiplier<2>(snap, p).value;
  EXPECT_NEAR(D, rest_form, 1e-12);
  EXPECT_NEAR(D, s_prime * k / (s_prime + p.hardening), 1e-12);
}

TEST(PlasticMultiplier, UnloadingGivesZero) {
  const auto p = material(1.0, 1.0, 0.1);
  const auto snap = snapshot(worldline::MotionSpec::uniform_stretch(-0.5), 0.0, 0.1, 0.5, p);
  const auto r = plastic_multiplier<2>(snap, p);
  EXPECT_EQ(r.status, MultiplierStatus::NegativeMultiplier);
  EXPECT_EQ(r.value, 0.0);
}

TEST(ReturnMap, ElasticStaysPut) {
  const auto p = material(1.0, 1.0, 1.0);
  const auto r = return_map<2>(DeformationGradient<2>(1.1, 0.0), InternalState{}, p);
  EXPECT_EQ(r.state.loading, Loading::Elastic);
  EXPECT_EQ(r.state.gamma_p, 0.0);
  EXPECT_EQ(r.state.plastic_stretch, 1.0);
}

TEST(ReturnMap, TensionAndCompressionLandOnTheSurface) {
  for (double rest_stretch : {1.3, 0.8}) {
    for (double beta : {0.0, 0.6, -0.8}) {
      const auto p = material(1.0, 1.0, 0.2, 0.4);
      const double a = rest_stretch * std::sqrt(1 - beta * beta);  // gamma a = rest stretch
      const auto s = bar_state(beta, a, 1.0, p);
      const auto r = return_map<2>(s.fs, InternalState{}, p);
      ASSERT_EQ(r.state.loading, Loading::Plastic);
      EXPECT_GT(r.increment, 0.0);
      EXPECT_NEAR(r.stress.sigma_bar, r.stress.t_y, 1e-10 * p.t0);
      // stretching flow in tension, shortening in compression
      const double le_trial = std::sqrt(kinematics::right_cauchy_green<2>(s.fs)(0, 0));
      EXPECT_EQ(r.flow_sign, le_trial > 1 ? 1.0 : -1.0);
      EXPECT_NEAR(std::log(r.state.plastic_stretch), r.flow_sign * r.increment, 1e-14);
    }
  }
}

TEST(ReturnMap, PlasticVolumeFollowsThePlasticStretch) {
  // For a bar the plastic part is a pure stretch, so its rest-frame
  // volume ratio is lambda_p rather than 1.
  const auto p = material(1.0, 1.0, 0.2, 0.4);
  const auto s = bar_state(0.5, 1.3, 1.0, p);
  const auto r = return_map<2>(s.fs, InternalState{}, p);
  const auto u = u_of(0.5).vector();
  const double j = kinematics::jacobian<2>(s.fs, u);
  const double je = elastic_jacobian<2>(r.fse, u);
  EXPECT_NEAR(j / je, r.state.plastic_stretch, 1e-13);
  EXPECT_GT(r.state.plastic_stretch, 1.0);
}

TEST(EnergyMomentum, Properties) {
  const auto rest = u_of(0.0).vector();
  Mat<2> expected = Mat<2>::Zero();
  expected(1, 1) = 2.5;
  EXPECT_EQ(energy_momentum<2>(2.5, rest, Mat<2>::Zero()), expected);
  cli::Rng rng(71);
  const auto p = material();
  for (int i = 0; i < 100; ++i) {
    const double beta = rng.uniform(-0.9, 0.9);
    const auto s = bar_state(beta, rng.uniform(0.8, 1.3), 1.0, p);
    const auto u = u_of(beta);
    const Mat<2> big_t = energy_momentum<2>(rng.uniform(0, 3), u.vector(), s.t);
    EXPECT_LE(minkowski::max_abs(big_t - big_t.transpose()), 1e-14);
    const Mat<2> back = stress_from_energy_momentum<2>(big_t, minkowski::projector<2>(u).matrix());
    EXPECT_LE(minkowski::max_abs(back - s.t), 1e-10 * std::max(1.0, minkowski::max_abs(s.t)));
  }
}

}  // namespace
