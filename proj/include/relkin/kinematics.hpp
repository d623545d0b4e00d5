// Copyright 2026 The relkin Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <concepts>
#include <sstream>
#include <type_traits>

#include "relkin/errors.hpp"
#include "relkin/minkowski.hpp"
#include "relkin/tolerances.hpp"

/// Relativistic deformation measures at a single event of a world line.
namespace relkin::kinematics {

using minkowski::FourVector;
using minkowski::Mat;
using minkowski::Vec;

/// dx/dX: d x (d-1), one column per reference direction.
template <int D>
using DeformationGradient = Eigen::Matrix<double, D, D - 1>;
/// Tensor on the (d-1)-dimensional reference configuration.
template <int D>
using ReferenceTensor = Eigen::Matrix<double, D - 1, D - 1>;

/// Space-like part F_s = S F.
template <int D>
DeformationGradient<D> spatial_part(const DeformationGradient<D>& f, const Mat<D>& s) {
  return s * f;
}

template <int D>
DeformationGradient<D> spatial_part(const DeformationGradient<D>& f, const minkowski::Projector<D>& s) {
  return s.matrix() * f;
}

/// C = F_s^T eta F_s; boost invariant. Rejects eigenvalues below
/// -tol.alg (scaled by the magnitude of C).
template <int D>
ReferenceTensor<D> right_cauchy_green(const DeformationGradient<D>& fs, const Tolerances& tol = {}) {
  ReferenceTensor<D> c = fs.transpose() * minkowski::metric<D>() * fs;
  c = 0.5 * (c + c.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<ReferenceTensor<D>> eig(c, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  if (lo < -tol.alg * std::max(1.0, minkowski::max_abs(fs) * minkowski::max_abs(fs))) {
    std::ostringstream os;
    os << "right Cauchy-Green tensor has eigenvalue " << lo << " < 0";
    throw NotPositiveSemidefinite(os.str());
  }
  return c;
}

/// B = F_s F_s^T; transforms as B* = Lambda B Lambda^T.
template <int D>
Mat<D> left_cauchy_green(const DeformationGradient<D>& fs) {
  return fs * fs.transpose();
}

struct Invariants {
  double i1 = 0;  ///< C : I
  double i2 = 0;  ///< (C C) : I
  /// |C : I - B : eta| and |(C C) : I - (B eta B) : eta|
  double i1_route_gap = 0;
  double i2_route_gap = 0;
};

/// First and second invariants, evaluated from C and independently from B.
template <int D>
Invariants cg_invariants(const ReferenceTensor<D>& c, const Mat<D>& b, const Tolerances& tol = {}) {
  const Mat<D> eta = minkowski::metric<D>();
  Invariants inv;
  inv.i1 = c.trace();
  inv.i2 = (c * c).trace();
  const double i1_b = minkowski::contract(b, eta);
  const double i2_b = minkowski::contract(Mat<D>(b * eta * b), eta);
  inv.i1_route_gap = std::abs(inv.i1 - i1_b);
  inv.i2_route_gap = std::abs(inv.i2 - i2_b);
  if (inv.i1_route_gap > tol.alg * std::max(1.0, std::abs(inv.i1)) ||
      inv.i2_route_gap > tol.alg * std::max(1.0, std::abs(inv.i2))) {
    throw InvariantViolation("C and B invariants disagree; they do not come from the same F_s");
  }
  return inv;
}

/// C, B and their invariants from one space-like deformation gradient.
template <int D>
struct CauchyGreenPair {
  ReferenceTensor<D> c;
  Mat<D> b;
  Invariants inv;
};

template <int D>
CauchyGreenPair<D> cauchy_green(const DeformationGradient<D>& fs, const Tolerances& tol = {}) {
  CauchyGreenPair<D> p{right_cauchy_green<D>(fs, tol), left_cauchy_green<D>(fs), {}};
  p.inv = cg_invariants<D>(p.c, p.b, tol);
  return p;
}

template <int D>
struct RateTensors {
  Mat<D> l;       ///< grad(u)
  Mat<D> ls;      ///< L S
  Mat<D> ls_eta;  ///< eta L S, relativistic velocity gradient
  Mat<D> ds_eta;  ///< sym(ls_eta), rate of deformation
  Mat<D> ws_eta;  ///< skew(ls_eta), spin
};

/// Rates from the world-velocity gradient L_ab = du^a/dx^b.
template <int D>
RateTensors<D> rate_tensors(const Mat<D>& grad_u, const Mat<D>& s) {
  RateTensors<D> r;
  r.l = grad_u;
  r.ls = grad_u * s;
  r.ls_eta = minkowski::metric<D>() * r.ls;
  r.ds_eta = 0.5 * (r.ls_eta + r.ls_eta.transpose());
  r.ws_eta = 0.5 * (r.ls_eta - r.ls_eta.transpose());
  return r;
}

/// j = det([F_s u]), the rest-frame volume ratio.
template <int D>
double jacobian(const DeformationGradient<D>& fs, const Vec<D>& u) {
  Mat<D> m;
  m.template leftCols<D - 1>() = fs;
  m.col(D - 1) = u;
  return m.determinant();
}

template <int D>
double jacobian(const DeformationGradient<D>& fs, const minkowski::WorldVelocity<D>& u) {
  return jacobian<D>(fs, u.vector());
}

// ---------------------------------------------------------------------------
// Field samplers and the invariant derivative
// ---------------------------------------------------------------------------

/// Anything callable on an event; the value may be a scalar or an Eigen
/// object.
template <typename F, int D>
concept FieldSampler = std::invocable<const F&, const FourVector<D>&>;

template <typename F, int D>
using FieldValue = std::remove_cvref_t<decltype(std::declval<const F&>()(std::declval<const FourVector<D>&>()))>;

/// Sampler with a closed-form gradient: `gradient(x)[b]` = dA/dx^b.
template <typename F, int D>
concept AnalyticGradient = FieldSampler<F, D> && requires(const F& f, const FourVector<D>& x) {
  { f.gradient(x) } -> std::convertible_to<std::array<FieldValue<F, D>, D>>;
};

template <typename F, int D>
concept BoundedSampler = requires(const F& f, const FourVector<D>& x) {
  { f.contains(x) } -> std::convertible_to<bool>;
};

template <typename T>
T evaluated(const T& v) {
  return v;
}
template <typename Derived>
auto evaluated(const Eigen::MatrixBase<Derived>& v) {
  return v.eval();
}

/// Partial derivatives dA/dx^b. Uses the sampler's closed form when it
/// has one, otherwise second-order central differences with step
/// h * max(1, |x^b|).
template <int D, typename F>
  requires FieldSampler<F, D>
std::array<FieldValue<F, D>, D> partials(const F& field, const FourVector<D>& x, double h) {
  if constexpr (AnalyticGradient<F, D>) {
    return field.gradient(x);
  } else {
    if (!(h > 0.0)) throw Error("finite-difference step must be positive");
    std::array<FieldValue<F, D>, D> out;
    for (int b = 0; b < D; ++b) {
      const double hb = h * std::max(1.0, std::abs(x(b)));
      FourVector<D> xp = x, xm = x;
      xp(b) += hb;
      xm(b) -= hb;
      if constexpr (BoundedSampler<F, D>) {
        if (!field.contains(xp) || !field.contains(xm)) {
          std::ostringstream os;
          os << "stencil point along coordinate " << b + 1 << " leaves the sampler domain";
          throw SamplerDomain(os.str());
        }
      }
      out[b] = evaluated((field(xp) - field(xm)) / (2.0 * hb));
    }
    return out;
  }
}

/// D(A) = grad(A) u: derivative of a field along the world velocity.
template <int D, typename F>
  requires FieldSampler<F, D>
FieldValue<F, D> invariant_derivative(const F& field, const Vec<D>& u, const FourVector<D>& x,
                                      double h = Tolerances{}.fd_step) {
  const auto p = partials<D>(field, x, h);
  FieldValue<F, D> acc = evaluated(p[0] * u(0));
  for (int b = 1; b < D; ++b) acc = evaluated(acc + p[b] * u(b));
  return acc;
}

/// Gradient of a four-vector field, G_ab = dA^a/dx^b.
template <int D, typename F>
  requires FieldSampler<F, D>
Mat<D> vector_gradient(const F& field, const FourVector<D>& x, double h = Tolerances{}.fd_step) {
  const auto p = partials<D>(field, x, h);
  Mat<D> g;
  for (int b = 0; b < D; ++b) g.col(b) = p[b];
  return g;
}

/// D(m0) + m0 div(u) for a particle-density field and a world-velocity
/// field; zero when the particle number is conserved.
template <int D, typename M, typename U>
  requires FieldSampler<M, D> && FieldSampler<U, D>
double particle_conservation_residual(const M& m0, const U& u_field, const FourVector<D>& x,
                                      double h = Tolerances{}.fd_step) {
  const Vec<D> u = u_field(x);
  const double dm = invariant_derivative<D>(m0, u, x, h);
  const double div_u = vector_gradient<D>(u_field, x, h).trace();
  return dm + m0(x) * div_u;
}

}  // namespace relkin::kinematics
