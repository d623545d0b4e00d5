// Copyright 2026 The relkin Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <exception>
#include <mutex>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "relkin/constitutive.hpp"
#include "relkin/errors.hpp"
#include "relkin/kinematics.hpp"
#include "relkin/minkowski.hpp"
#include "relkin/tolerances.hpp"

/// A one-dimensional bar moving along the x^1 axis of a 1+1D Minkowski
/// space, observed from frame S. Particles are labelled by their position
/// X at t = 0; the motion x^1(X, t) is prescribed in closed form.
namespace relkin::worldline {

using Mat2 = minkowski::Mat<2>;
using Vec2 = minkowski::Vec<2>;
using Event = minkowski::FourVector<2>;
using DefGrad = kinematics::DeformationGradient<2>;
using Material = constitutive::MaterialParams<2>;

enum class Preset { RigidBoost, UniformStretch, BoostedStretch };

inline std::string_view to_string(Preset p) {
  switch (p) {
    case Preset::RigidBoost: return "rigid_boost";
    case Preset::UniformStretch: return "uniform_stretch";
    case Preset::BoostedStretch: return "boosted_stretch";
  }
  return "?";
}

struct PresetInfo {
  Preset preset;
  std::string_view name;
  std::string_view motion;
  std::string_view parameters;
};

inline constexpr std::array<PresetInfo, 3> kPresets{{
    {Preset::RigidBoost, "rigid_boost", "x1 = X + v0 t", "beta (v0/c)"},
    {Preset::UniformStretch, "uniform_stretch", "x1 = (1 + r t) X", "strain_rate r"},
    {Preset::BoostedStretch, "boosted_stretch", "x1 = (1 + r t) X + v0 t", "beta (v0/c), strain_rate r"},
}};

/// Prescribed motion x1 = (1 + r t) X + v0 t. The three presets are the
/// special cases r = 0, v0 = 0 and the general one.
class MotionSpec {
 public:
  MotionSpec() = default;
  MotionSpec(Preset preset, double v0, double strain_rate, double c = 1.0)
      : preset_(preset), v0_(v0), rate_(strain_rate), c_(c) {
    if (preset == Preset::RigidBoost) rate_ = 0.0;
    if (preset == Preset::UniformStretch) v0_ = 0.0;
    if (!(c_ > 0.0)) throw ValidationError("motion: c must be > 0");
  }

  static MotionSpec rigid_boost(double beta, double c = 1.0) { return {Preset::RigidBoost, beta * c, 0.0, c}; }
  static MotionSpec uniform_stretch(double rate, double c = 1.0) { return {Preset::UniformStretch, 0.0, rate, c}; }
  static MotionSpec boosted_stretch(double beta, double rate, double c = 1.0) {
    return {Preset::BoostedStretch, beta * c, rate, c};
  }

  Preset preset() const { return preset_; }
  double c() const { return c_; }
  double v0() const { return v0_; }
  double strain_rate() const { return rate_; }

  /// Same motion seen with the speed of light multiplied by 1/s, which
  /// scales every speed ratio by s.
  MotionSpec with_beta_scale(double s) const {
    if (!(s > 0.0)) throw ValidationError("motion: beta_scale must be > 0");
    MotionSpec m = *this;
    m.c_ = c_ / s;
    return m;
  }

  double stretch(double t) const { return 1.0 + rate_ * t; }
  bool in_domain(double t) const { return stretch(t) > 0.0; }

  double position(double X, double t) const { return stretch(t) * X + v0_ * t; }
  double velocity(double X, double) const { return rate_ * X + v0_; }
  /// Inverse map X(x1, t).
  double label(double x1, double t) const { return (x1 - v0_ * t) / stretch(t); }

  double dx1_dX(double, double t) const { return stretch(t); }
  /// Labels live on the t = 0 slice, so dx2/dX = d(ct)/dX = 0.
  double dx2_dX(double, double) const { return 0.0; }

  double beta(double X, double t) const { return velocity(X, t) / c_; }
  /// d beta / dx1 at fixed x2 = ct.
  double dbeta_dx1(double, double t) const { return rate_ / (c_ * stretch(t)); }
  /// d beta / dx2 at fixed x1.
  double dbeta_dx2(double X, double t) const { return -rate_ * velocity(X, t) / (c_ * c_ * stretch(t)); }

  /// beta as a field on events.
  double beta_at_event(const Event& x) const {
    const double t = x(1) / c_;
    return beta(label(x(0), t), t);
  }

 private:
  Preset preset_ = Preset::RigidBoost;
  double v0_ = 0.0;
  double rate_ = 0.0;
  double c_ = 1.0;
};

/// Largest relative disagreement between the closed-form partials and
/// central differences of the closed-form positions and beta field.
inline double partials_discrepancy(const MotionSpec& m, double X, double t, double h = 1e-6) {
  auto rel = [](double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); };
  const double hX = h * std::max(1.0, std::abs(X));
  const double ht = h * std::max(1.0, std::abs(t));
  const double fd_dx1 = (m.position(X + hX, t) - m.position(X - hX, t)) / (2 * hX);
  const double fd_v = (m.position(X, t + ht) - m.position(X, t - ht)) / (2 * ht);
  const double x1 = m.position(X, t);
  const double x2 = m.c() * t;
  const double hx1 = h * std::max(1.0, std::abs(x1));
  const double hx2 = h * std::max(1.0, std::abs(x2));
  const double fd_b1 = (m.beta_at_event(Event(x1 + hx1, x2)) - m.beta_at_event(Event(x1 - hx1, x2))) / (2 * hx1);
  const double fd_b2 = (m.beta_at_event(Event(x1, x2 + hx2)) - m.beta_at_event(Event(x1, x2 - hx2))) / (2 * hx2);
  return std::max({rel(m.dx1_dX(X, t), fd_dx1), rel(m.velocity(X, t), fd_v), rel(m.dbeta_dx1(X, t), fd_b1),
                   rel(m.dbeta_dx2(X, t), fd_b2)});
}

enum class Mode { Relativistic, Nonrelativistic };

inline std::string_view to_string(Mode m) { return m == Mode::Relativistic ? "relativistic" : "nonrelativistic"; }

/// Kinematic state of one particle at one instant.
struct BarKinematics {
  double X = 0;
  double t = 0;
  double beta = 0;
  minkowski::WorldVelocity<2> u = minkowski::WorldVelocity<2>::from_velocity(minkowski::SpatialVec<2>::Zero());
  Mat2 s = Mat2::Identity();
  DefGrad f = DefGrad::Zero();
  DefGrad fs = DefGrad::Zero();
  kinematics::ReferenceTensor<2> c;
  Mat2 b = Mat2::Zero();
  double j = 0;
  kinematics::RateTensors<2> rates;
};

/// grad(u) for u = gamma (beta, 1): du/dx^b = gamma^3 (1, beta) dbeta/dx^b.
inline Mat2 world_velocity_gradient(double beta, double dbeta_dx1, double dbeta_dx2, double beta_max) {
  const double g = minkowski::lorentz_factor(beta, beta_max);
  const Vec2 du_dbeta = g * g * g * Vec2(1.0, beta);
  return du_dbeta * Eigen::RowVector2d(dbeta_dx1, dbeta_dx2);
}

/// F_s, C, B, j and the rate tensors from the closed-form partials. In
/// nonrelativistic mode beta is forced to zero in every formula while the
/// velocity gradient dv/dx is kept.
inline BarKinematics eval_kinematics(const MotionSpec& m, double X, double t, Mode mode = Mode::Relativistic,
                                     const Tolerances& tol = {}) {
  if (!m.in_domain(t)) {
    std::ostringstream os;
    os << "time " << t << " is outside the motion's domain (1 + r t <= 0)";
    throw ValidationError(os.str());
  }
  BarKinematics k;
  k.X = X;
  k.t = t;
  k.beta = mode == Mode::Relativistic ? m.beta(X, t) : 0.0;
  k.u = minkowski::WorldVelocity<2>::from_velocity(minkowski::SpatialVec<2>::Constant(k.beta), 1.0, tol);
  k.s = minkowski::Projector<2>(k.u).matrix();
  k.f = DefGrad(m.dx1_dX(X, t), m.dx2_dX(X, t));
  k.fs = kinematics::spatial_part<2>(k.f, k.s);
  k.c = kinematics::right_cauchy_green<2>(k.fs, tol);
  k.b = kinematics::left_cauchy_green<2>(k.fs);
  k.j = kinematics::jacobian<2>(k.fs, k.u);
  k.rates = kinematics::rate_tensors<2>(
      world_velocity_gradient(k.beta, m.dbeta_dx1(X, t), m.dbeta_dx2(X, t), tol.beta_max), k.s);
  return k;
}

struct Lengths {
  double length = 0;       ///< L, observed in S
  double rest_length = 0;  ///< L', measured in the co-moving frame
  double time_extent = 0;  ///< T
};

/// L = L0 F_s(1,1), L' = L0 sqrt(C), T = L0 F_s(2,1). L is cross-checked
/// against L0 sqrt(B(1,1)).
inline Lengths observables(const DefGrad& fs, const kinematics::ReferenceTensor<2>& c, const Mat2& b, double L0,
                           const Tolerances& tol = {}) {
  Lengths out{L0 * fs(0, 0), L0 * std::sqrt(c(0, 0)), L0 * fs(1, 0)};
  const double via_b = L0 * std::sqrt(b(0, 0));
  if (std::abs(std::abs(out.length) - via_b) > tol.alg * std::max(1.0, via_b)) {
    throw InvariantViolation("L from F_s(1,1) and from sqrt(B(1,1)) disagree");
  }
  return out;
}

/// Particle labels and time grid of a bar run.
struct BarScenario {
  double L0 = 1.0;
  std::vector<double> labels{0.0};
  double t_start = 0.0;
  double t_end = 1.0;
  double dt = 0.01;
  MotionSpec motion;
  Material material;
  Mode mode = Mode::Relativistic;
  double beta_scale = 1.0;
  /// Cross-check the closed-form partials against finite differences at
  /// every grid point.
  bool validate_partials = false;

  /// Motion actually evaluated (speed ratios scaled by beta_scale).
  MotionSpec effective_motion() const { return motion.with_beta_scale(beta_scale); }

  std::size_t step_count() const {
    return static_cast<std::size_t>(std::llround((t_end - t_start) / dt));
  }
  double time_at(std::size_t n) const { return t_start + static_cast<double>(n) * dt; }

  void validate() const {
    auto fail = [](const std::string& what) { throw ValidationError(what); };
    if (!(L0 > 0.0)) fail("grid: L0 must be > 0");
    if (labels.empty()) fail("grid: at least one particle label is required");
    if (!(dt > 0.0)) fail("grid: dt must be > 0");
    if (!(t_end >= t_start)) fail("grid: t_end must be >= t_start");
    const double n = (t_end - t_start) / dt;
    if (std::abs(n - std::round(n)) > 1e-9 * std::max(1.0, n)) fail("grid: (t_end - t_start) must be a multiple of dt");
    if (!(beta_scale > 0.0)) fail("motion: beta_scale must be > 0");
    material.validate();
    const MotionSpec m = effective_motion();
    double beta_peak = 0.0;
    for (std::size_t i = 0; i <= step_count(); ++i) {
      const double t = time_at(i);
      if (!m.in_domain(t)) fail("motion: the bar collapses (1 + strain_rate t <= 0) inside the time grid");
      for (double X : labels) beta_peak = std::max(beta_peak, std::abs(m.beta(X, t)));
    }
    if (mode == Mode::Relativistic && beta_peak >= material.tol.beta_max) {
      std::ostringstream os;
      os << "motion: |beta| reaches " << beta_peak << " on the grid; it must stay below beta_max = "
         << material.tol.beta_max;
      fail(os.str());
    }
  }
};

/// Per-step observables; the CSV row of a run.
struct TimeSeriesRecord {
  double t = 0;
  double X = 0;
  double beta = 0;
  double c_hat = 0;
  double j = 0;
  double length = 0;
  double rest_length = 0;
  double time_extent = 0;
  double lambda_e = 0;
  double lambda_p = 1;
  double gamma_p = 0;
  double sigma_bar = 0;
  double t_y = 0;
  double xi = 0;
  constitutive::Loading loading = constitutive::Loading::Elastic;
};

/// Tensors behind a record, kept for frame checks and diagnostics.
struct StepDetail {
  BarKinematics kin;
  Mat2 ts = Mat2::Zero();
  Mat2 plastic_rate = Mat2::Zero();  ///< [D_s^eta]^p
  DefGrad fse = DefGrad::Zero();
  double multiplier = 0;           ///< D(Gamma_p) from the consistency condition
  double multiplier_residual = 0;  ///< |g1 - g2 D(Gamma_p)| / max(1, |g2 D(Gamma_p)|)
  /// False when the consistency condition asks for a negative multiplier
  /// (the loading is reversing) and D(Gamma_p) was set to zero.
  bool multiplier_solved = false;
  double increment = 0;            ///< Delta Gamma_p of the return map
  double hardening_rate = 0;       ///< Delta Gamma_p / dt
};

struct StepResult {
  constitutive::InternalState state;
  TimeSeriesRecord record;
  StepDetail detail;
};

namespace detail {

inline StepResult evaluate(const BarScenario& sc, const MotionSpec& motion, double X, double t,
                           const constitutive::InternalState& prev) {
  const Material& mat = sc.material;
  StepResult out;
  StepDetail& d = out.detail;
  d.kin = eval_kinematics(motion, X, t, sc.mode, mat.tol);

  const auto rm = constitutive::return_map<2>(d.kin.fs, prev, mat);
  out.state = rm.state;
  d.fse = rm.fse;
  d.ts = rm.stress.ts;
  d.increment = rm.increment;

  if (rm.state.loading == constitutive::Loading::Plastic) {
    const constitutive::ConsistencySnapshot<2> snap{d.kin.rates.l, d.kin.u.vector(), d.kin.s, rm.fse, rm.stress.ts,
                                                    rm.stress.t_y};
    const auto mult = constitutive::plastic_multiplier<2>(snap, mat);
    d.multiplier = mult.value;
    d.multiplier_residual = std::abs(mult.residual) / std::max(1.0, std::abs(mult.g2 * mult.value));
    d.multiplier_solved = mult.status == constitutive::MultiplierStatus::Converged;
    const Mat2 n = constitutive::flow_direction<2>(rm.stress.ts, mat.potential_form, mat.tol);
    d.plastic_rate = constitutive::plastic_rate_tensors<2>(n, mult.value).ds_eta;
  }

  const Lengths len = observables(d.kin.fs, d.kin.c, d.kin.b, sc.L0, mat.tol);
  const auto ce = kinematics::right_cauchy_green<2>(rm.fse, mat.tol);

  TimeSeriesRecord& r = out.record;
  r.t = t;
  r.X = X;
  r.beta = d.kin.beta;
  r.c_hat = d.kin.c(0, 0);
  r.j = d.kin.j;
  r.length = len.length;
  r.rest_length = len.rest_length;
  r.time_extent = len.time_extent;
  r.lambda_e = std::sqrt(ce.trace());
  r.lambda_p = rm.state.plastic_stretch;
  r.gamma_p = rm.state.gamma_p;
  r.sigma_bar = rm.stress.sigma_bar;
  r.t_y = rm.stress.t_y;
  r.xi = constitutive::dissipation<2>(d.ts, d.plastic_rate);
  r.loading = rm.state.loading;
  return out;
}

}  // namespace detail

/// State at the first grid time; a configuration already beyond yield is
/// returned to the yield surface.
inline StepResult initial_state(const BarScenario& sc, double X, const constitutive::InternalState& s0 = {}) {
  return detail::evaluate(sc, sc.effective_motion(), X, sc.t_start, s0);
}

/// Advances one particle from t to t + dt: elastic predictor with frozen
/// internal state, loading check, return to the yield surface, then the
/// consistency multiplier and dissipation at the converged state.
inline StepResult step(const BarScenario& sc, double X, double t, double dt, const constitutive::InternalState& internal) {
  if (!(dt > 0.0)) throw Error("step: dt must be > 0");
  StepResult r = detail::evaluate(sc, sc.effective_motion(), X, t + dt, internal);
  r.detail.hardening_rate = r.detail.increment / dt;
  return r;
}

/// Records of one particle over the whole time grid.
inline std::vector<StepResult> simulate_particle(const BarScenario& sc, double X) {
  std::vector<StepResult> out;
  const std::size_t n = sc.step_count();
  out.reserve(n + 1);
  out.push_back(initial_state(sc, X));
  for (std::size_t i = 1; i <= n; ++i) {
    const double t_prev = sc.time_at(i - 1);
    // dt chosen so the evaluation time is exactly the grid time
    StepResult r = step(sc, X, t_prev, sc.time_at(i) - t_prev, out.back().state);
    out.push_back(std::move(r));
  }
  return out;
}

/// One record per (X, t), ordered by particle then time. Particles are
/// independent and may run on several threads; the output order does not
/// depend on the thread count.
inline std::vector<TimeSeriesRecord> simulate(const BarScenario& sc, unsigned threads = 1) {
  sc.validate();
  const std::size_t np = sc.labels.size();
  std::vector<std::vector<StepResult>> per(np);
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(np)));
  if (threads == 1) {
    for (std::size_t i = 0; i < np; ++i) per[i] = simulate_particle(sc, sc.labels[i]);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < threads; ++w) {
        pool.emplace_back([&] {
          for (std::size_t i = next++; i < np; i = next++) {
            try {
              per[i] = simulate_particle(sc, sc.labels[i]);
            } catch (...) {
              std::lock_guard lock(error_mutex);
              if (!error) error = std::current_exception();
            }
          }
        });
      }
    }
    if (error) std::rethrow_exception(error);
  }
  std::vector<TimeSeriesRecord> records;
  records.reserve(np * (sc.step_count() + 1));
  for (const auto& p : per)
    for (const auto& r : p) records.push_back(r.record);
  return records;
}

/// The same scenario with beta forced to zero in every formula.
inline std::vector<TimeSeriesRecord> nonrelativistic_run(BarScenario sc, unsigned threads = 1) {
  sc.mode = Mode::Nonrelativistic;
  return simulate(sc, threads);
}

/// L', f, Gamma_p and xi recomputed by a second observer related to S by
/// the boost `lam`.
struct ObserverView {
  double rest_length = 0;
  double sigma_bar = 0;
  double gamma_p = 0;
  double xi = 0;
};

inline ObserverView boosted_view(const StepResult& r, const minkowski::LorentzBoost<2>& lam, const BarScenario& sc) {
  const Tolerances& tol = sc.material.tol;
  const DefGrad fs = lam.matrix() * r.detail.kin.fs;
  const Mat2 ts = minkowski::apply_boost<2>(lam, r.detail.ts, minkowski::TensorMode::Direct);
  const Mat2 dp = minkowski::apply_boost<2>(lam, r.detail.plastic_rate, minkowski::TensorMode::Dual);
  ObserverView v;
  v.rest_length = sc.L0 * std::sqrt(kinematics::right_cauchy_green<2>(fs, tol)(0, 0));
  v.sigma_bar = constitutive::effective_stress<2>(ts, sc.material.yield_form, tol);
  v.gamma_p = r.state.gamma_p;
  v.xi = constitutive::dissipation<2>(ts, dp);
  return v;
}

/// Event of particle X at time t.
inline Event event_of(const MotionSpec& m, double X, double t) { return Event(m.position(X, t), m.c() * t); }

/// Wraps a function of the bar kinematics as a field on events, usable
/// with kinematics::invariant_derivative.
template <typename Fn>
class BarField {
 public:
  BarField(MotionSpec m, Mode mode, Fn fn) : m_(m), mode_(mode), fn_(std::move(fn)) {}
  auto operator()(const Event& x) const {
    const double t = x(1) / m_.c();
    return fn_(eval_kinematics(m_, m_.label(x(0), t), t, mode_));
  }
  bool contains(const Event& x) const { return m_.in_domain(x(1) / m_.c()); }

 private:
  MotionSpec m_;
  Mode mode_;
  Fn fn_;
};

/// World velocity as an event field, with its closed-form gradient.
class WorldVelocityField {
 public:
  explicit WorldVelocityField(MotionSpec m) : m_(m) {}
  Vec2 operator()(const Event& x) const {
    const double b = m_.beta_at_event(x);
    const double g = minkowski::lorentz_factor(b);
    return Vec2(g * b, g);
  }
  std::array<Vec2, 2> gradient(const Event& x) const {
    const double t = x(1) / m_.c();
    const double X = m_.label(x(0), t);
    const Mat2 l = world_velocity_gradient(m_.beta(X, t), m_.dbeta_dx1(X, t), m_.dbeta_dx2(X, t),
                                           Tolerances{}.beta_max);
    return {Vec2(l.col(0)), Vec2(l.col(1))};
  }
  bool contains(const Event& x) const { return m_.in_domain(x(1) / m_.c()); }

 private:
  MotionSpec m_;
};

}  // namespace relkin::worldline
