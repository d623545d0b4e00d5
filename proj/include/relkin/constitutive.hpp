// Copyright 2026 The relkin Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "relkin/errors.hpp"
#include "relkin/kinematics.hpp"
#include "relkin/minkowski.hpp"
#include "relkin/solver.hpp"
#include "relkin/tolerances.hpp"

/// Elastic-plastic constitutive law in Minkowski space.
///
/// Stress is the projected tensor t_s = 2 m0 F_s^e dpsi/dC^e F_s^eT; the
/// yield function and the inelastic potential are square roots of
/// quadratic forms in t_s; plastic flow is normal to the potential and
/// its magnitude D(Gamma_p) follows from the consistency condition
/// D(f - t_y) = 0.
namespace relkin::constitutive {

using kinematics::DeformationGradient;
using kinematics::ReferenceTensor;
using minkowski::Mat;
using minkowski::Vec;

/// q(t) = vec(t)^T A vec(t), the fourth-order weight tensor A stored as a
/// (d*d) x (d*d) matrix acting on column-major vec(t).
template <int D>
class QuadraticForm {
 public:
  using Weights = Eigen::Matrix<double, D * D, D * D>;

  QuadraticForm() : a_(paper_example().matrix()) {}
  explicit QuadraticForm(const Weights& a) : a_(0.5 * (a + a.transpose())) {}

  /// Component weights q = sum_ab w_ab t_ab^2.
  static QuadraticForm diagonal(const Mat<D>& w) {
    Weights a = Weights::Zero();
    for (int j = 0; j < D; ++j)
      for (int i = 0; i < D; ++i) a(i + D * j, i + D * j) = w(i, j);
    return QuadraticForm(a);
  }

  /// w_ab = eta_aa eta_bb: +1 on the space-space and time-time blocks,
  /// -1 on the mixed components. For symmetric t this is
  /// tr(t eta t eta), a Lorentz scalar. In d = 2 it reads
  /// t11^2 + t22^2 - t12^2 - t21^2.
  static QuadraticForm paper_example() {
    const Mat<D> eta = minkowski::metric<D>();
    Mat<D> w;
    for (int j = 0; j < D; ++j)
      for (int i = 0; i < D; ++i) w(i, j) = eta(i, i) * eta(j, j);
    return diagonal(w);
  }

  double operator()(const Mat<D>& t) const {
    const Eigen::Map<const Eigen::Matrix<double, D * D, 1>> v(t.data());
    return v.dot(a_ * v);
  }

  /// dq/dt = 2 A : t.
  Mat<D> gradient(const Mat<D>& t) const {
    const Eigen::Map<const Eigen::Matrix<double, D * D, 1>> v(t.data());
    const Eigen::Matrix<double, D * D, 1> g = 2.0 * (a_ * v);
    return Eigen::Map<const Mat<D>>(g.data());
  }

  /// True when the form is positive semidefinite on symmetric rest-frame
  /// stresses (only the space-space block populated), which is where
  /// sqrt(q) must be a convex norm.
  bool convex_on_rest_frame_stresses(double tol = 1e-12) const {
    constexpr int n = D - 1;
    constexpr int m = n * (n + 1) / 2;
    Eigen::Matrix<double, D * D, m> basis = Eigen::Matrix<double, D * D, m>::Zero();
    int k = 0;
    for (int j = 0; j < n; ++j)
      for (int i = 0; i <= j; ++i, ++k) {
        basis(i + D * j, k) = 1.0;
        basis(j + D * i, k) = 1.0;
      }
    const Eigen::Matrix<double, m, m> r = basis.transpose() * a_ * basis;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix<double, m, m>> eig(r, Eigen::EigenvaluesOnly);
    return eig.eigenvalues().minCoeff() >= -tol * std::max(1.0, r.cwiseAbs().maxCoeff());
  }

  const Weights& matrix() const { return a_; }

 private:
  Weights a_;
};

template <int D>
struct MaterialParams {
  double m0 = 1.0;         ///< rest particle-number density
  double c1 = 1.0;         ///< free-energy stiffness
  /// Initial yield stress and hardening slope, both already multiplied by
  /// m0: t_y = t0 + hardening * Gamma_p, and dt_y0/dGamma_p = hardening/m0.
  double t0 = 1.0;
  double hardening = 0.0;
  QuadraticForm<D> yield_form = QuadraticForm<D>::paper_example();
  QuadraticForm<D> potential_form = QuadraticForm<D>::paper_example();
  Tolerances tol{};

  void validate() const {
    auto fail = [](const std::string& what) { throw ValidationError("material: " + what); };
    if (!(m0 > 0.0)) fail("m0 must be > 0");
    if (!(c1 > 0.0)) fail("c1 must be > 0");
    if (!(t0 > 0.0)) fail("t0 must be > 0");
    if (!(hardening >= 0.0)) fail("H must be >= 0");
    if (!potential_form.convex_on_rest_frame_stresses()) fail("potential weights do not give a convex Q_p");
  }
};

enum class Loading { Elastic, Plastic };

inline const char* to_string(Loading l) { return l == Loading::Plastic ? "plastic" : "elastic"; }

/// Plastic stretch and hardening history of one material point. The
/// plastic part of the deformation gradient is the isotropic stretch
/// lambda_p (a scalar for the bar).
struct InternalState {
  double plastic_stretch = 1.0;
  double gamma_p = 0.0;
  Loading loading = Loading::Elastic;
};

template <int D>
struct StressState {
  Mat<D> ts = Mat<D>::Zero();
  double sigma_bar = 0;  ///< f(t_s)
  double t_y = 0;
  double yield_value = 0;  ///< f - t_y
  double psi = 0;
  double entropy = 0;  ///< h00 = -dpsi/dtheta, zero for the isothermal energy
};

// ---------------------------------------------------------------------------
// Multiplicative split
// ---------------------------------------------------------------------------

template <int D>
DeformationGradient<D> elastic_split(const DeformationGradient<D>& fs, double plastic_stretch) {
  if (!(plastic_stretch > 0.0)) throw Error("plastic stretch must be positive");
  return fs / plastic_stretch;
}

template <int D>
DeformationGradient<D> elastic_split(const DeformationGradient<D>& fs, const ReferenceTensor<D>& fp) {
  Eigen::FullPivLU<ReferenceTensor<D>> lu(fp);
  if (!lu.isInvertible()) throw Error("plastic deformation gradient is singular");
  return fs * lu.inverse();
}

template <int D>
struct ElasticMeasures {
  ReferenceTensor<D> c;
  Mat<D> b;
};

template <int D>
ElasticMeasures<D> elastic_cg(const DeformationGradient<D>& fse, const Tolerances& tol = {}) {
  return {kinematics::right_cauchy_green<D>(fse, tol), kinematics::left_cauchy_green<D>(fse)};
}

/// Spatial axes of the co-moving frame expressed in the observer frame:
/// the first d-1 columns of the boost taking rest-frame components to
/// observer components. Satisfies E^T eta E = I.
template <int D>
DeformationGradient<D> comoving_axes(const minkowski::WorldVelocity<D>& u, const Tolerances& tol = {}) {
  const auto to_rest = minkowski::LorentzBoost<D>::from_beta(u.beta_vector(), tol);
  return to_rest.inverse().template leftCols<D - 1>();
}

template <int D>
struct PlasticMeasures {
  ReferenceTensor<D> c;  ///< F^pT F^p
  Mat<D> b;              ///< F^p pushed onto the co-moving spatial axes
};

template <int D>
PlasticMeasures<D> plastic_cg(double plastic_stretch, const minkowski::WorldVelocity<D>& u, const Tolerances& tol = {}) {
  const DeformationGradient<D> e = comoving_axes<D>(u, tol);
  const double l2 = plastic_stretch * plastic_stretch;
  return {l2 * ReferenceTensor<D>::Identity(), l2 * e * e.transpose()};
}

/// I1 = C:I, I2 = (I1^2 - (C C):I)/2, I3 = det C of the elastic part.
struct ElasticInvariants {
  double i1 = 0, i2 = 0, i3 = 0;
};

template <int D>
ElasticInvariants elastic_invariants(const ReferenceTensor<D>& ce) {
  const double i1 = ce.trace();
  return {i1, 0.5 * (i1 * i1 - (ce * ce).trace()), ce.determinant()};
}

// ---------------------------------------------------------------------------
// Free energy and stress
// ---------------------------------------------------------------------------

/// psi00 = c1/2 (I1e - (d-1))^2, zero in the undeformed state.
struct FreeEnergy {
  double psi = 0;
  double entropy = 0;
};

template <int D>
FreeEnergy free_energy(const ReferenceTensor<D>& ce, const MaterialParams<D>& p) {
  const double e = ce.trace() - (D - 1);
  return {0.5 * p.c1 * e * e, 0.0};
}

/// dpsi00/dC^e.
template <int D>
ReferenceTensor<D> free_energy_gradient(const ReferenceTensor<D>& ce, const MaterialParams<D>& p) {
  return p.c1 * (ce.trace() - (D - 1)) * ReferenceTensor<D>::Identity();
}

/// (d^2 psi00 / dC^e dC^e) : X.
template <int D>
ReferenceTensor<D> free_energy_hessian_apply(const ReferenceTensor<D>& x, const MaterialParams<D>& p) {
  return p.c1 * x.trace() * ReferenceTensor<D>::Identity();
}

template <int D>
Mat<D> stress(const DeformationGradient<D>& fse, const ReferenceTensor<D>& ce, const MaterialParams<D>& p) {
  const Mat<D> t = 2.0 * p.m0 * fse * free_energy_gradient<D>(ce, p) * fse.transpose();
  return 0.5 * (t + t.transpose());
}

/// f = (t : A : t)^(1/2). Small negative radicands from roundoff are
/// clamped to zero.
template <int D>
double effective_stress(const Mat<D>& ts, const QuadraticForm<D>& form, const Tolerances& tol = {}) {
  const double q = form(ts);
  if (q < 0.0) {
    if (q < -tol.alg * std::max(1.0, ts.squaredNorm())) {
      std::ostringstream os;
      os << "stress quadratic form is negative (" << q << "); stress is outside the admissible family";
      throw NegativeRadicand(os.str());
    }
    return 0.0;
  }
  return std::sqrt(q);
}

/// dQ/dt_s = (A : t_s) / Q.
template <int D>
Mat<D> flow_direction(const Mat<D>& ts, const QuadraticForm<D>& form, const Tolerances& tol = {}) {
  const double q = effective_stress<D>(ts, form, tol);
  if (q <= tol.div) throw ApexSingularity("flow direction is undefined at the apex of the potential");
  return form.gradient(ts) / (2.0 * q);
}

template <int D>
double flow_stress(double gamma_p, const MaterialParams<D>& p) {
  return p.t0 + p.hardening * gamma_p;
}

template <int D>
Loading loading_check(double sigma_bar, double gamma_p, const MaterialParams<D>& p) {
  const double f = sigma_bar - flow_stress<D>(gamma_p, p);
  return f >= -p.tol.cons * p.t0 ? Loading::Plastic : Loading::Elastic;
}

/// Full stress evaluation for a given elastic deformation.
template <int D>
StressState<D> evaluate_stress(const DeformationGradient<D>& fse, double gamma_p, const MaterialParams<D>& p) {
  const ReferenceTensor<D> ce = kinematics::right_cauchy_green<D>(fse, p.tol);
  StressState<D> s;
  s.ts = stress<D>(fse, ce, p);
  s.sigma_bar = effective_stress<D>(s.ts, p.yield_form, p.tol);
  s.t_y = flow_stress<D>(gamma_p, p);
  s.yield_value = s.sigma_bar - s.t_y;
  const FreeEnergy fe = free_energy<D>(ce, p);
  s.psi = fe.psi;
  s.entropy = fe.entropy;
  return s;
}

// ---------------------------------------------------------------------------
// Flow rule and consistency
// ---------------------------------------------------------------------------

template <int D>
struct PlasticRates {
  Mat<D> ds_eta;  ///< [D_s^eta]^p
  Mat<D> ls_eta;  ///< [L_s^eta]^p
};

/// Plastic rates along `direction`; the plastic spin is zero, so both
/// tensors share the direction.
template <int D>
PlasticRates<D> plastic_rate_tensors(const Mat<D>& direction, double multiplier) {
  return {direction * multiplier, direction * multiplier};
}

/// Elastic parts by additive split of the total rates.
template <int D>
PlasticRates<D> elastic_remainder(const kinematics::RateTensors<D>& total, const PlasticRates<D>& plastic) {
  return {total.ds_eta - plastic.ds_eta, total.ls_eta - plastic.ls_eta};
}

/// xi = t_s : [D_s^eta]^p.
template <int D>
double dissipation(const Mat<D>& ts, const Mat<D>& plastic_rate) {
  return minkowski::contract(ts, plastic_rate);
}

/// Gamma_p time rate from its invariant derivative: D = gamma/c d/dt.
inline double rate_conversion(double invariant_rate, double beta, double c = 1.0,
                              double beta_max = Tolerances{}.beta_max) {
  return c * invariant_rate / minkowski::lorentz_factor(beta, beta_max);
}

/// Everything the consistency condition needs at one event.
template <int D>
struct ConsistencySnapshot {
  Mat<D> grad_u;  ///< L = grad(u)
  Vec<D> u;
  Mat<D> s;  ///< projector for u
  DeformationGradient<D> fse;
  Mat<D> ts;
  double t_y = 0;
};

enum class MultiplierStatus { Converged, NegativeMultiplier };

struct MultiplierResult {
  double value = 0;  ///< D(Gamma_p) >= 0
  double residual = 0;
  double g1 = 0;  ///< g1 at the solution
  double g2 = 0;
  int iterations = 0;
  MultiplierStatus status = MultiplierStatus::Converged;
};

/// Consistency terms g1(lambda) and g2 for a homogeneous boost family
/// (grad Lambda = 0). g1 is affine in lambda through the elastic part of
/// the velocity gradient.
template <int D>
class ConsistencyEquation {
 public:
  ConsistencyEquation(const ConsistencySnapshot<D>& snap, const MaterialParams<D>& p) : snap_(snap) {
    const Mat<D> eta = minkowski::metric<D>();
    div_u_ = snap.grad_u.trace();
    ls_ = snap.grad_u * snap.s;
    const Mat<D> ls_eta = eta * ls_;
    const Mat<D> ds_eta = 0.5 * (ls_eta + ls_eta.transpose());
    n_yield_ = flow_direction<D>(snap.ts, p.yield_form, p.tol);
    n_flow_ = flow_direction<D>(snap.ts, p.potential_form, p.tol);
    lp_dir_ = eta * n_flow_;
    auto elastic_response = [&](const Mat<D>& rate) -> Mat<D> {
      const ReferenceTensor<D> x = snap.fse.transpose() * rate * snap.fse;
      return snap.fse * free_energy_hessian_apply<D>(x, p) * snap.fse.transpose();
    };
    driving_ = minkowski::contract(n_yield_, Mat<D>(4.0 * p.m0 * elastic_response(ds_eta)));
    g2_ = p.hardening + minkowski::contract(n_yield_, Mat<D>(4.0 * p.m0 * elastic_response(n_flow_)));
  }

  double g1(double lambda) const {
    const Mat<D>& t = snap_.ts;
    const Mat<D> le = ls_ - lambda * lp_dir_;
    const Mat<D> convective = le * t + t * le.transpose() - div_u_ * t;
    return minkowski::contract(n_yield_, convective) + driving_ + div_u_ * snap_.t_y;
  }

  double g1_slope() const {
    const Mat<D>& t = snap_.ts;
    return -minkowski::contract(n_yield_, Mat<D>(lp_dir_ * t + t * lp_dir_.transpose()));
  }

  double g2() const { return g2_; }
  double residual(double lambda) const { return g1(lambda) - g2_ * lambda; }
  const Mat<D>& flow() const { return n_flow_; }

 private:
  ConsistencySnapshot<D> snap_;
  double div_u_ = 0;
  Mat<D> ls_, n_yield_, n_flow_, lp_dir_;
  double driving_ = 0;
  double g2_ = 0;
};

/// Solves g1(D(Gamma_p)) = g2 D(Gamma_p) by safeguarded Newton starting
/// from g1(0)/g2. A negative root means elastic unloading and yields 0.
template <int D>
MultiplierResult plastic_multiplier(const ConsistencySnapshot<D>& snap, const MaterialParams<D>& p) {
  const ConsistencyEquation<D> eq(snap, p);
  const double g2 = eq.g2();
  const double slope = eq.g1_slope() - g2;
  const double r0 = eq.residual(0.0);
  auto tolerance = [&](double x) { return p.tol.newton * std::abs(g2 * x) + 1e-14; };

  MultiplierResult out;
  out.g2 = g2;
  if (std::abs(r0) <= tolerance(0.0)) {
    out.g1 = eq.g1(0.0);
    out.residual = r0;
    return out;
  }
  if (!(slope < 0.0)) throw NoConvergence("consistency residual does not decrease with the multiplier");
  const double root_estimate = -r0 / slope;
  if (root_estimate < -p.tol.newton * std::max(1.0, std::abs(r0 / g2))) {
    out.status = MultiplierStatus::NegativeMultiplier;
    out.g1 = eq.g1(0.0);
    out.residual = r0;
    return out;
  }
  double hi = std::max(2.0 * std::abs(r0 / g2), 1e-300);
  int expand = 0;
  while (eq.residual(hi) > 0.0) {
    hi *= 2.0;
    if (++expand > 2000) throw NoConvergence("could not bracket the plastic multiplier");
  }
  const ScalarRoot root = safeguarded_newton([&](double x) { return eq.residual(x); },
                                             [&](double) { return slope; }, tolerance, r0 / g2, 0.0, hi,
                                             p.tol.max_iter);
  if (std::abs(root.residual) > tolerance(root.x)) {
    std::ostringstream os;
    os << "plastic multiplier residual " << root.residual << " above tolerance";
    throw NoConvergence(os.str());
  }
  out.value = root.x;
  out.residual = root.residual;
  out.g1 = eq.g1(root.x);
  out.iterations = root.iterations;
  return out;
}

/// Advance the internal state by a rate over dt with the exponential map
/// lambda_p <- lambda_p exp(sign * rate * dt). `flow_sign` is +1 when the
/// plastic flow stretches (tension) and -1 when it shortens.
inline InternalState update_internal(const InternalState& s, double rate, double dt, double flow_sign = 1.0) {
  if (!(rate >= 0.0)) throw Error("hardening rate must be non-negative");
  if (!(dt > 0.0)) throw Error("time step must be positive");
  InternalState next = s;
  next.gamma_p = s.gamma_p + rate * dt;
  next.plastic_stretch = s.plastic_stretch * std::exp(flow_sign * rate * dt);
  return next;
}

// ---------------------------------------------------------------------------
// Return mapping
// ---------------------------------------------------------------------------

template <int D>
struct ReturnMapResult {
  InternalState state;
  StressState<D> stress;
  DeformationGradient<D> fse;
  double increment = 0;  ///< Delta Gamma_p
  double flow_sign = 1.0;
  int iterations = 0;
};

/// Sign of the plastic stretching for the scalar plastic stretch: +1 when
/// the flow direction elongates the elastic configuration.
template <int D>
double flow_sign(const Mat<D>& ts, const DeformationGradient<D>& fse, const MaterialParams<D>& p) {
  const Mat<D> n = flow_direction<D>(ts, p.potential_form, p.tol);
  return minkowski::contract(n, Mat<D>(fse * fse.transpose())) >= 0.0 ? 1.0 : -1.0;
}

/// Elastic predictor with frozen internal state, then (if the trial state
/// violates the yield condition) the increment Delta Gamma_p >= 0 that
/// puts the state back on f = t_y, with lambda_p <- lambda_p exp(+-Delta).
template <int D>
ReturnMapResult<D> return_map(const DeformationGradient<D>& fs, const InternalState& prev, const MaterialParams<D>& p) {
  ReturnMapResult<D> out;
  out.state = prev;
  out.fse = elastic_split<D>(fs, prev.plastic_stretch);
  out.stress = evaluate_stress<D>(out.fse, prev.gamma_p, p);
  out.state.loading = loading_check<D>(out.stress.sigma_bar, prev.gamma_p, p);
  if (out.state.loading == Loading::Elastic) return out;
  if (out.stress.yield_value <= 0.0) return out;  // on the surface within the loading band

  const double sign = flow_sign<D>(out.stress.ts, out.fse, p);
  auto state_at = [&](double inc) {
    InternalState s = prev;
    s.gamma_p = prev.gamma_p + inc;
    s.plastic_stretch = prev.plastic_stretch * std::exp(sign * inc);
    return s;
  };
  auto residual = [&](double inc) {
    const InternalState s = state_at(inc);
    return evaluate_stress<D>(elastic_split<D>(fs, s.plastic_stretch), s.gamma_p, p).yield_value;
  };
  auto slope = [&](double inc) {
    const double h = 1e-7 * std::max(1.0, inc);
    const double lo = std::max(0.0, inc - h);
    return (residual(inc + h) - residual(lo)) / (inc + h - lo);
  };
  auto tolerance = [&](double) { return p.tol.newton * p.t0; };

  // The elastic stretch returns to 1 (zero stress) after |ln lambda_e|.
  const ReferenceTensor<D> ce = kinematics::right_cauchy_green<D>(out.fse, p.tol);
  double hi = std::abs(0.5 * std::log(ce.trace() / (D - 1)));
  hi = std::max(hi, 1e-12);
  int expand = 0;
  while (residual(hi) > 0.0) {
    hi *= 2.0;
    if (++expand > 200) throw NoConvergence("could not bracket the plastic increment");
  }
  const double r0 = out.stress.yield_value;
  const double guess = std::clamp(r0 / std::max(-slope(0.0), 1e-300), 0.0, hi);
  const ScalarRoot root = safeguarded_newton(residual, slope, tolerance, guess, 0.0, hi, p.tol.max_iter);

  out.state = state_at(root.x);
  out.state.loading = Loading::Plastic;
  out.increment = root.x;
  out.flow_sign = sign;
  out.iterations = root.iterations;
  out.fse = elastic_split<D>(fs, out.state.plastic_stretch);
  out.stress = evaluate_stress<D>(out.fse, out.state.gamma_p, p);
  return out;
}

// ---------------------------------------------------------------------------
// Energy-momentum
// ---------------------------------------------------------------------------

/// T = w u (x) u - t_s.
template <int D>
Mat<D> energy_momentum(double w, const Vec<D>& u, const Mat<D>& ts) {
  return w * u * u.transpose() - ts;
}

/// Recovers the stress from T: t_s = -S T S^T.
template <int D>
Mat<D> stress_from_energy_momentum(const Mat<D>& t, const Mat<D>& s) {
  return -s * t * s.transpose();
}

/// j^e = det([F_s^e u]); j = j^e det(F^p).
template <int D>
double elastic_jacobian(const DeformationGradient<D>& fse, const Vec<D>& u) {
  return kinematics::jacobian<D>(fse, u);
}

}  // namespace relkin::constitutive
