// Copyright 2026 The relkin Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "relkin/constitutive.hpp"
#include "relkin/errors.hpp"
#include "relkin/kinematics.hpp"
#include "relkin/minkowski.hpp"
#include "relkin/solver.hpp"
#include "relkin/worldline.hpp"

/// Property suites behind `relkin verify`.
namespace relkin::cli {

/// Seeded generator. Uniform variates are built from the raw 64-bit
/// output so the trial set is identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}
  double uniform() { return static_cast<double>(g_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n; }

 private:
  std::mt19937_64 g_;
};

/// Random speed-ratio vector with |beta| <= max_beta.
template <int D>
minkowski::SpatialVec<D> random_beta(Rng& rng, double max_beta) {
  minkowski::SpatialVec<D> dir;
  do {
    for (int i = 0; i < D - 1; ++i) dir(i) = rng.uniform(-1.0, 1.0);
  } while (dir.norm() < 1e-3 || dir.norm() > 1.0);
  return dir.normalized() * (max_beta * rng.uniform());
}

template <int D>
minkowski::LorentzBoost<D> random_boost(Rng& rng, double max_beta) {
  return minkowski::LorentzBoost<D>::from_beta(random_beta<D>(rng, max_beta));
}

/// Space-like deformation gradient S F for a random world velocity and a
/// random F with entries in [-2, 2].
template <int D>
kinematics::DeformationGradient<D> random_spatial_gradient(Rng& rng, double max_beta) {
  const auto u = minkowski::WorldVelocity<D>::from_velocity(random_beta<D>(rng, max_beta));
  kinematics::DeformationGradient<D> f;
  for (int j = 0; j < D - 1; ++j)
    for (int i = 0; i < D; ++i) f(i, j) = rng.uniform(-2.0, 2.0);
  return minkowski::Projector<D>(u).matrix() * f;
}

struct CheckResult {
  std::string name;
  bool pass = true;
  double value = 0;  ///< worst observed residual (or ratio)
  std::string criterion;
};

struct Report {
  std::vector<CheckResult> checks;
  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
  }
  std::string text() const {
    std::string out;
    for (const auto& c : checks) {
      char line[256];
      std::snprintf(line, sizeof line, "[%s] %s: %.6e (%s)\n", c.pass ? "PASS" : "FAIL", c.name.c_str(), c.value,
                    c.criterion.c_str());
      out += line;
    }
    char tail[96];
    const auto failed = std::count_if(checks.begin(), checks.end(), [](const CheckResult& c) { return !c.pass; });
    std::snprintf(tail, sizeof tail, "%zu checks, %zu failed\n", checks.size(), static_cast<std::size_t>(failed));
    return out + tail;
  }
};

struct VerifyOptions {
  std::uint64_t seed = 42;
  int trials = 1000;
  /// Bounds for the algebraic identity checks.
  Tolerances tol{};
};

namespace detail {

inline double rel(double a, double b, double floor = 1.0) {
  return std::abs(a - b) / std::max(floor, std::abs(b));
}

template <typename M>
double rel_mat(const M& a, const M& b) {
  return (a - b).cwiseAbs().maxCoeff() / std::max(1.0, b.cwiseAbs().maxCoeff());
}

/// Tracks a running maximum; any thrown library error fails the check.
class Max {
 public:
  void add(double v) { v_ = std::isnan(v) ? std::numeric_limits<double>::infinity() : std::max(v_, v); }
  double value() const { return v_; }

 private:
  double v_ = 0.0;
};

inline CheckResult below(std::string name, double value, double limit) {
  char c[64];
  std::snprintf(c, sizeof c, "limit %.1e", limit);
  return {std::move(name), value <= limit, value, c};
}

template <typename Fn>
CheckResult guarded(const std::string& name, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    return {name, false, std::numeric_limits<double>::infinity(), std::string("error: ") + e.what()};
  }
}

inline worldline::Material default_material() {
  worldline::Material m;
  m.m0 = 1.0;
  m.c1 = 1.0;
  m.t0 = 0.5;
  m.hardening = 0.5;
  return m;
}

/// The three presets on a short grid, used by the per-record checks.
inline std::vector<worldline::BarScenario> preset_scenarios() {
  std::vector<worldline::BarScenario> out;
  const std::array<worldline::MotionSpec, 4> motions{
      worldline::MotionSpec::rigid_boost(0.6), worldline::MotionSpec::uniform_stretch(0.5),
      worldline::MotionSpec::uniform_stretch(-0.3), worldline::MotionSpec::boosted_stretch(0.4, 0.4)};
  for (const auto& m : motions) {
    worldline::BarScenario sc;
    sc.motion = m;
    sc.material = default_material();
    sc.labels = {0.0, 0.25, 0.5, 0.75, 1.0};
    sc.t_end = 1.0;
    sc.dt = 0.02;
    out.push_back(sc);
  }
  return out;
}

/// Scenario i of the seeded second-law sweep over beta in {0, 0.3, 0.6, 0.9}.
inline worldline::BarScenario sweep_scenario(Rng& rng, int i) {
  static constexpr std::array<double, 4> betas{0.0, 0.3, 0.6, 0.9};
  const double beta = betas[static_cast<std::size_t>(i) % betas.size()];
  worldline::BarScenario sc;
  const double rate = rng.uniform(-0.4, 0.8);
  switch (i % 3) {
    case 0: sc.motion = worldline::MotionSpec::boosted_stretch(beta, rate); break;
    case 1: sc.motion = worldline::MotionSpec::rigid_boost(beta); break;
    default:
      sc.motion = beta == 0.0 ? worldline::MotionSpec::uniform_stretch(rate)
                              : worldline::MotionSpec::boosted_stretch(beta, rate);
  }
  sc.material.m0 = rng.uniform(0.5, 2.0);
  sc.material.c1 = rng.uniform(0.5, 2.0);
  sc.material.t0 = rng.uniform(0.05, 0.5);
  sc.material.hardening = rng.uniform(0.0, 1.0);
  sc.labels = {0.0, 0.05, 0.1};
  sc.t_end = 1.0;
  sc.dt = 0.01;
  return sc;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// algebra
// ---------------------------------------------------------------------------

template <int D>
std::vector<CheckResult> algebra_checks(Rng& rng, int trials, const Tolerances& tol) {
  const std::string tag = "d" + std::to_string(D) + " ";
  detail::Max group, product, proj, proj_cov, unit, interval;
  for (int i = 0; i < trials; ++i) {
    const auto lam = random_boost<D>(rng, 0.99);
    group.add(minkowski::lorentz_residuals<D>(lam.matrix()).max());
    const auto lam2 = random_boost<D>(rng, 0.99);
    const minkowski::Mat<D> comp = lam.matrix() * lam2.matrix();
    const double g = std::abs(comp(D - 1, D - 1));
    product.add(minkowski::lorentz_residuals<D>(comp).max() / std::max(1.0, g * g));

    const auto u = minkowski::WorldVelocity<D>::from_velocity(random_beta<D>(rng, 0.99));
    const minkowski::Projector<D> s(u);
    const double gu = u.gamma();
    proj.add(minkowski::projector_residuals<D>(s.matrix(), u.vector()).max() / std::max(1.0, gu * gu * gu));
    const auto ub = minkowski::apply_boost<D>(lam, u);
    const minkowski::Mat<D> s_boosted = minkowski::boost_projector<D>(lam, s);
    proj_cov.add(detail::rel_mat(s_boosted, minkowski::Projector<D>(ub).matrix()));
    unit.add(std::abs(minkowski::norm_sq<D>(ub.vector()) + 1.0) / std::max(1.0, ub.gamma() * ub.gamma()));

    minkowski::FourVector<D> x;
    for (int k = 0; k < D; ++k) x(k) = rng.uniform(-3.0, 3.0);
    const double n0 = minkowski::norm_sq<D>(x);
    interval.add(std::abs(minkowski::norm_sq<D>(lam.matrix() * x) - n0) /
                 std::max(1.0, lam.matrix().cwiseAbs().maxCoeff() * x.squaredNorm()));
  }
  return {
      detail::below(tag + "boost group identities", group.value(), tol.alg),
      detail::below(tag + "composed transformation identities", product.value(), tol.alg),
      detail::below(tag + "projector identities", proj.value(), tol.alg),
      detail::below(tag + "projector covariance", proj_cov.value(), tol.alg),
      detail::below(tag + "boosted world velocity normalization", unit.value(), tol.alg),
      detail::below(tag + "interval invariance", interval.value(), tol.alg),
  };
}

inline Report verify_algebra(const VerifyOptions& o) {
  Rng rng(o.seed);
  Report r;
  for (auto&& c : algebra_checks<2>(rng, o.trials, o.tol)) r.checks.push_back(c);
  for (auto&& c : algebra_checks<4>(rng, o.trials, o.tol)) r.checks.push_back(c);
  return r;
}

// ---------------------------------------------------------------------------
// kinematics
// ---------------------------------------------------------------------------

template <int D>
std::vector<CheckResult> objectivity_checks(Rng& rng, int trials, const Tolerances& tol) {
  const std::string tag = "d" + std::to_string(D) + " ";
  detail::Max c_inv, b_cov, routes, psd;
  for (int i = 0; i < trials; ++i) {
    const auto fs = random_spatial_gradient<D>(rng, 0.9);
    const auto lam = random_boost<D>(rng, 0.99);
    const kinematics::DeformationGradient<D> fs_b = lam.matrix() * fs;
    const auto c = kinematics::right_cauchy_green<D>(fs, tol);
    c_inv.add(detail::rel_mat(kinematics::right_cauchy_green<D>(fs_b, tol), c));
    const minkowski::Mat<D> b = kinematics::left_cauchy_green<D>(fs);
    b_cov.add(detail::rel_mat(kinematics::left_cauchy_green<D>(fs_b),
                              minkowski::apply_boost<D>(lam, b, minkowski::TensorMode::Direct)));
    const auto inv = kinematics::cg_invariants<D>(c, b, tol);
    routes.add(std::max(inv.i1_route_gap / std::max(1.0, inv.i1), inv.i2_route_gap / std::max(1.0, inv.i2)));
    Eigen::SelfAdjointEigenSolver<kinematics::ReferenceTensor<D>> eig(c, Eigen::EigenvaluesOnly);
    psd.add(std::max(0.0, -eig.eigenvalues().minCoeff()) / std::max(1.0, c.cwiseAbs().maxCoeff()));
  }
  return {
      detail::below(tag + "C invariance under boosts", c_inv.value(), 1e-10),
      detail::below(tag + "B covariance under boosts", b_cov.value(), 1e-10),
      detail::below(tag + "invariants from C and from B agree", routes.value(), tol.alg),
      detail::below(tag + "C positive semidefinite", psd.value(), tol.alg),
  };
}

/// Residuals of D(C) = 2 F_s^T D_s^eta F_s and D(j) = j tr(L_s) with
/// central-difference invariant derivatives at step h.
struct RateResiduals {
  double c = 0;
  double j = 0;
};

inline RateResiduals rate_identity_residuals(const worldline::MotionSpec& m, double X, double t, double h) {
  using worldline::BarKinematics;
  const BarKinematics k = worldline::eval_kinematics(m, X, t);
  const worldline::Event x = worldline::event_of(m, X, t);
  const auto c_field = worldline::BarField(m, worldline::Mode::Relativistic, [](const BarKinematics& b) {
    return b.c(0, 0);
  });
  const auto j_field = worldline::BarField(m, worldline::Mode::Relativistic, [](const BarKinematics& b) { return b.j; });
  const double dc = kinematics::invariant_derivative<2>(c_field, k.u.vector(), x, h);
  const double dj = kinematics::invariant_derivative<2>(j_field, k.u.vector(), x, h);
  const double dc_exact = 2.0 * (k.fs.transpose() * k.rates.ds_eta * k.fs)(0, 0);
  const double dj_exact = k.j * k.rates.ls.trace();
  return {std::abs(dc - dc_exact), std::abs(dj - dj_exact)};
}

struct RatePoint {
  worldline::MotionSpec motion;
  double X;
  double t;
};

inline std::vector<RatePoint> rate_points() {
  return {{worldline::MotionSpec::uniform_stretch(0.8), 0.7, 0.4},
          {worldline::MotionSpec::uniform_stretch(-0.3), 0.9, 0.5},
          {worldline::MotionSpec::boosted_stretch(0.3, 0.5), 0.5, 0.3},
          {worldline::MotionSpec::boosted_stretch(0.6, 0.3), 0.8, 0.7},
          {worldline::MotionSpec::boosted_stretch(-0.5, 0.6), 0.2, 0.2}};
}

inline Report verify_kinematics(const VerifyOptions& o) {
  Rng rng(o.seed);
  Report r;
  for (auto&& c : objectivity_checks<2>(rng, o.trials, o.tol)) r.checks.push_back(c);
  for (auto&& c : objectivity_checks<4>(rng, o.trials, o.tol)) r.checks.push_back(c);

  r.checks.push_back(detail::guarded("rate identities converge at second order", [] {
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& p : rate_points()) {
      const RateResiduals coarse = rate_identity_residuals(p.motion, p.X, p.t, 2e-2);
      const RateResiduals fine = rate_identity_residuals(p.motion, p.X, p.t, 1e-2);
      worst = std::min({worst, coarse.c / fine.c, coarse.j / fine.j});
    }
    return CheckResult{"rate identities converge at second order", worst >= 3.5, worst,
                       "min residual ratio for h -> h/2, limit >= 3.5"};
  }));

  r.checks.push_back(detail::guarded("particle conservation for m0 = m/j", [] {
    detail::Max res;
    for (const auto& p : rate_points()) {
      const auto density = worldline::BarField(p.motion, worldline::Mode::Relativistic,
                                               [](const worldline::BarKinematics& b) { return 2.0 / b.j; });
      const worldline::WorldVelocityField u(p.motion);
      const auto x = worldline::event_of(p.motion, p.X, p.t);
      const double scale = std::max(1.0, density(x) * std::abs(u.gradient(x)[0](0)));
      res.add(std::abs(kinematics::particle_conservation_residual<2>(density, u, x, 1e-4)) / scale);
    }
    return detail::below("particle conservation for m0 = m/j", res.value(), 1e-7);
  }));

  r.checks.push_back(detail::guarded("closed-form partials match finite differences", [] {
    detail::Max res;
    for (const auto& p : rate_points()) res.add(worldline::partials_discrepancy(p.motion, p.X, p.t));
    return detail::below("closed-form partials match finite differences", res.value(), 1e-6);
  }));

  r.checks.push_back(detail::guarded("length identity L^2 - T^2 = L'^2", [] {
    detail::Max res;
    for (const auto& sc : detail::preset_scenarios()) {
      for (const auto& rec : worldline::simulate(sc)) {
        const double lp2 = rec.rest_length * rec.rest_length;
        res.add(std::abs(rec.length * rec.length - rec.time_extent * rec.time_extent - lp2) / lp2);
      }
    }
    return detail::below("length identity L^2 - T^2 = L'^2", res.value(), 1e-10);
  }));
  return r;
}

// ---------------------------------------------------------------------------
// constitutive
// ---------------------------------------------------------------------------

/// Central-difference gradient of Q = sqrt(q(t)).
inline minkowski::Mat<4> fd_potential_gradient(const constitutive::QuadraticForm<4>& form, const minkowski::Mat<4>& t) {
  minkowski::Mat<4> g;
  for (int j = 0; j < 4; ++j)
    for (int i = 0; i < 4; ++i) {
      const double h = 1e-6 * std::max(1.0, std::abs(t(i, j)));
      minkowski::Mat<4> tp = t, tm = t;
      tp(i, j) += h;
      tm(i, j) -= h;
      g(i, j) = (std::sqrt(form(tp)) - std::sqrt(form(tm))) / (2.0 * h);
    }
  return g;
}

inline Report verify_constitutive(const VerifyOptions& o) {
  Rng rng(o.seed);
  Report r;
  constitutive::MaterialParams<4> mat4;
  mat4.m0 = 1.3;
  mat4.c1 = 0.7;

  r.checks.push_back(detail::guarded("effective stress is boost invariant", [&] {
    detail::Max res;
    for (int i = 0; i < o.trials; ++i) {
      const auto fse = random_spatial_gradient<4>(rng, 0.9);
      const auto ce = kinematics::right_cauchy_green<4>(fse);
      const auto t = constitutive::stress<4>(fse, ce, mat4);
      const auto lam = random_boost<4>(rng, 0.99);
      const auto tb = minkowski::apply_boost<4>(lam, t, minkowski::TensorMode::Direct);
      const double f = constitutive::effective_stress<4>(t, mat4.yield_form);
      const double fb = constitutive::effective_stress<4>(tb, mat4.yield_form);
      res.add(std::abs(fb - f) / std::max(f, 1e-12 * std::max(1.0, t.cwiseAbs().maxCoeff())));
    }
    return detail::below("effective stress is boost invariant", res.value(), 1e-10);
  }));

  r.checks.push_back(detail::guarded("flow direction matches finite differences of Q", [&] {
    detail::Max res;
    const int n = std::max(1, std::min(o.trials, 100));
    for (int i = 0; i < n; ++i) {
      const auto fse = random_spatial_gradient<4>(rng, 0.9);
      const auto t = constitutive::stress<4>(fse, kinematics::right_cauchy_green<4>(fse), mat4);
      const auto nd = constitutive::flow_direction<4>(t, mat4.potential_form);
      res.add((fd_potential_gradient(mat4.potential_form, t) - nd).cwiseAbs().maxCoeff() / nd.cwiseAbs().maxCoeff());
    }
    return detail::below("flow direction matches finite differences of Q", res.value(), 1e-6);
  }));

  struct SweepStats {
    detail::Max negative_xi, elastic_xi, consistency, newton, frame, product, monotone;
  } st;
  r.checks.push_back(detail::guarded("seeded scenario sweep completes", [&] {
    for (int i = 0; i < 20; ++i) {
      const worldline::BarScenario sc = detail::sweep_scenario(rng, i);
      sc.validate();
      for (double X : sc.labels) {
        const auto steps = worldline::simulate_particle(sc, X);
        double prev_gamma = 0.0;
        for (const auto& s : steps) {
          const auto& rec = s.record;
          st.negative_xi.add(-rec.xi);
          if (rec.loading == constitutive::Loading::Elastic) st.elastic_xi.add(std::abs(rec.xi));
          if (rec.loading == constitutive::Loading::Plastic) {
            st.consistency.add(std::abs(rec.sigma_bar - rec.t_y) / sc.material.t0);
            if (s.detail.multiplier_solved) st.newton.add(s.detail.multiplier_residual);
          }
          st.monotone.add(prev_gamma - rec.gamma_p);
          prev_gamma = rec.gamma_p;
          st.product.add(detail::rel(rec.lambda_e * rec.lambda_p, rec.rest_length / sc.L0));
          const auto lam = random_boost<2>(rng, 0.95);
          const auto view = worldline::boosted_view(s, lam, sc);
          st.frame.add(std::max({detail::rel(view.rest_length, rec.rest_length),
                                 detail::rel(view.sigma_bar, rec.sigma_bar, sc.material.t0),
                                 detail::rel(view.gamma_p, rec.gamma_p),
                                 detail::rel(view.xi, rec.xi, std::max(1e-300, std::abs(rec.xi)))}));
        }
      }
    }
    return CheckResult{"seeded scenario sweep completes", true, 20, "scenarios"};
  }));
  r.checks.push_back(detail::below("dissipation is non-negative", st.negative_xi.value(), 1e-12));
  r.checks.push_back(detail::below("dissipation vanishes on elastic steps", st.elastic_xi.value(), 0.0));
  r.checks.push_back(detail::below("plastic steps sit on the yield surface (relative to t0)", st.consistency.value(),
                                   1e-8));
  r.checks.push_back(detail::below("consistency multiplier residual", st.newton.value(), 1e-12));
  r.checks.push_back(detail::below("two observers agree on L', f, Gamma_p, xi", st.frame.value(), 1e-9));
  r.checks.push_back(detail::below("lambda_e lambda_p = L'/L0", st.product.value(), 1e-12));
  r.checks.push_back(detail::below("Gamma_p never decreases", st.monotone.value(), 0.0));
  return r;
}

// ---------------------------------------------------------------------------
// limit
// ---------------------------------------------------------------------------

struct ClassicalRecord {
  double gamma_p = 0;
  double lambda_p = 1;
  double sigma = 0;
};

/// Small-speed reference: a 1D bar with stretch lambda(t) = 1 + r t,
/// stress 2 m0 c1 le^2 (le^2 - 1) with le = lambda / lambda_p, yield
/// stress t0 + H Gamma_p and lambda_p = exp(+-Gamma_p increments).
inline std::vector<ClassicalRecord> classical_bar(double rate, double t_start, double dt, std::size_t steps,
                                                  const worldline::Material& m) {
  auto sigma = [&](double le) { return 2.0 * m.m0 * m.c1 * le * le * std::abs(le * le - 1.0); };
  std::vector<ClassicalRecord> out;
  ClassicalRecord s;
  for (std::size_t n = 0; n <= steps; ++n) {
    const double lambda = 1.0 + rate * (t_start + static_cast<double>(n) * dt);
    const double le_trial = lambda / s.lambda_p;
    const double excess = sigma(le_trial) - (m.t0 + m.hardening * s.gamma_p);
    if (excess > 0.0) {
      const double sign = le_trial >= 1.0 ? 1.0 : -1.0;
      auto f = [&](double d) {
        return sigma(lambda / (s.lambda_p * std::exp(sign * d))) - (m.t0 + m.hardening * (s.gamma_p + d));
      };
      auto df = [&](double d) {
        const double h = 1e-7 * std::max(1.0, d);
        return (f(d + h) - f(std::max(0.0, d - h))) / (d + h - std::max(0.0, d - h));
      };
      const double hi = std::abs(std::log(le_trial)) + 1e-12;
      const ScalarRoot root = safeguarded_newton(f, df, [&](double) { return 1e-14 * m.t0; }, 0.5 * hi, 0.0, hi, 200);
      s.gamma_p += root.x;
      s.lambda_p *= std::exp(sign * root.x);
    }
    s.sigma = sigma(lambda / s.lambda_p);
    out.push_back(s);
  }
  return out;
}

inline worldline::BarScenario limit_scenario() {
  worldline::BarScenario sc;
  sc.motion = worldline::MotionSpec::uniform_stretch(0.5);
  sc.material = detail::default_material();
  sc.labels = {0.25, 0.5, 1.0};
  sc.t_start = 0.0;
  sc.t_end = 1.0;
  sc.dt = 0.01;
  return sc;
}

/// Largest difference in Gamma_p, lambda_p, f and lambda_e between two
/// runs on the same grid.
inline double run_deviation(const std::vector<worldline::TimeSeriesRecord>& a,
                            const std::vector<worldline::TimeSeriesRecord>& b) {
  if (a.size() != b.size()) throw Error("runs have different grids");
  double dev = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dev = std::max({dev, std::abs(a[i].gamma_p - b[i].gamma_p), std::abs(a[i].lambda_p - b[i].lambda_p),
                    std::abs(a[i].sigma_bar - b[i].sigma_bar), std::abs(a[i].lambda_e - b[i].lambda_e)});
  }
  return dev;
}

inline Report verify_limit(const VerifyOptions&) {
  Report r;
  const worldline::BarScenario base = limit_scenario();
  std::vector<worldline::TimeSeriesRecord> flat;
  r.checks.push_back(detail::guarded("speed-scaled runs approach the zero-speed run at O(s^2)", [&] {
    flat = worldline::nonrelativistic_run(base);
    worldline::BarScenario s2 = base, s3 = base;
    s2.beta_scale = 1e-2;
    s3.beta_scale = 1e-3;
    const double d2 = run_deviation(worldline::simulate(s2), flat);
    const double d3 = run_deviation(worldline::simulate(s3), flat);
    const double ratio = d2 / d3;
    return CheckResult{"speed-scaled runs approach the zero-speed run at O(s^2)", ratio >= 50 && ratio <= 200, ratio,
                       "deviation ratio for s = 1e-2 vs 1e-3, limit [50, 200]"};
  }));
  r.checks.push_back(detail::guarded("zero-speed run matches classical 1D plasticity", [&] {
    if (flat.empty()) flat = worldline::nonrelativistic_run(base);
    detail::Max dev;
    const std::size_t per = base.step_count() + 1;
    for (std::size_t p = 0; p < base.labels.size(); ++p) {
      const auto ref = classical_bar(base.motion.strain_rate(), base.t_start, base.dt, base.step_count(),
                                     base.material);
      for (std::size_t n = 0; n < per; ++n) {
        const auto& rec = flat[p * per + n];
        dev.add(std::max({std::abs(rec.gamma_p - ref[n].gamma_p), std::abs(rec.lambda_p - ref[n].lambda_p),
                          std::abs(rec.sigma_bar - ref[n].sigma)}));
      }
    }
    return detail::below("zero-speed run matches classical 1D plasticity", dev.value(), 1e-8);
  }));
  r.checks.push_back(detail::guarded("zero-speed run has T = 0, L = L', lambda_e lambda_p = dx/dX", [&] {
    if (flat.empty()) flat = worldline::nonrelativistic_run(base);
    detail::Max dev;
    for (const auto& rec : flat) {
      dev.add(std::abs(rec.time_extent));
      dev.add(std::abs(rec.length - rec.rest_length));
      dev.add(detail::rel(rec.lambda_e * rec.lambda_p, base.motion.stretch(rec.t)));
    }
    return detail::below("zero-speed run has T = 0, L = L', lambda_e lambda_p = dx/dX", dev.value(), 1e-12);
  }));
  return r;
}

inline constexpr std::array<const char*, 5> kSuites{"algebra", "kinematics", "constitutive", "limit", "all"};

inline Report verify(const std::string& suite, const VerifyOptions& o) {
  Report r;
  auto append = [&](const std::string& prefix, const Report& part) {
    for (auto c : part.checks) {
      c.name = prefix + ": " + c.name;
      r.checks.push_back(std::move(c));
    }
  };
  const bool all = suite == "all";
  if (!all && std::find(kSuites.begin(), kSuites.end(), suite) == kSuites.end())
    throw ValidationError("unknown suite '" + suite + "'");
  if (all || suite == "algebra") append("algebra", verify_algebra(o));
  if (all || suite == "kinematics") append("kinematics", verify_kinematics(o));
  if (all || suite == "constitutive") append("constitutive", verify_constitutive(o));
  if (all || suite == "limit") append("limit", verify_limit(o));
  return r;
}

}  // namespace relkin::cli
