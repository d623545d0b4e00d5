// Copyright 2026 The relkin Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <utility>

#include "relkin/errors.hpp"
#include "relkin/tolerances.hpp"

/// Minkowski-space algebra for d = 2 (one space axis) and d = 4.
///
/// Conventions: the time coordinate is the last component, x^d = c t, and
/// the metric is eta = diag(1, ..., 1, -1). A tensor product a (x) b is the
/// matrix a b^T, and A : B = tr(A B^T).
namespace relkin::minkowski {

template <int D>
concept SpacetimeDim = (D == 2 || D == 4);

template <int D>
using Vec = Eigen::Matrix<double, D, 1>;
template <int D>
using Mat = Eigen::Matrix<double, D, D>;
/// Spatial (d-1)-vector, e.g. particle velocity or reference label.
template <int D>
using SpatialVec = Eigen::Matrix<double, D - 1, 1>;
template <int D>
using FourVector = Vec<D>;

template <int D>
  requires SpacetimeDim<D>
inline Mat<D> metric() {
  Mat<D> eta = Mat<D>::Identity();
  eta(D - 1, D - 1) = -1.0;
  return eta;
}

/// A : B = tr(A B^T).
template <typename A, typename B>
inline double contract(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  return a.cwiseProduct(b).sum();
}

template <typename M>
inline double max_abs(const Eigen::MatrixBase<M>& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

template <int D>
inline double norm_sq(const FourVector<D>& x) {
  double s = -x(D - 1) * x(D - 1);
  for (int a = 0; a < D - 1; ++a) s += x(a) * x(a);
  return s;
}

enum class Causal { TimeLike, SpaceLike, Null };

inline const char* to_string(Causal c) {
  switch (c) {
    case Causal::TimeLike: return "time-like";
    case Causal::SpaceLike: return "space-like";
    case Causal::Null: return "null";
  }
  return "?";
}

template <int D>
inline Causal classify(const FourVector<D>& x, double tol = Tolerances{}.alg) {
  const double n = norm_sq<D>(x);
  if (n < -tol) return Causal::TimeLike;
  if (n > tol) return Causal::SpaceLike;
  return Causal::Null;
}

/// Lorentz factor 1/sqrt(1 - beta^2); throws once |beta| reaches beta_max.
inline double lorentz_factor(double beta, double beta_max = Tolerances{}.beta_max) {
  if (!std::isfinite(beta) || std::abs(beta) >= beta_max) {
    std::ostringstream os;
    os << "speed ratio |beta| = " << std::abs(beta) << " is not below beta_max = " << beta_max;
    throw BetaSuperluminal(os.str());
  }
  return 1.0 / std::sqrt((1.0 - beta) * (1.0 + beta));
}

namespace detail {
inline double scaled_tol(double tol, double gamma) { return tol * std::max(1.0, gamma * gamma); }
}  // namespace detail

/// Unit time-like tangent to a world line, u^T eta u = -1.
template <int D>
  requires SpacetimeDim<D>
class WorldVelocity {
 public:
  /// From a spatial particle velocity v and the speed of light c.
  static WorldVelocity from_velocity(const SpatialVec<D>& v, double c = 1.0,
                                     const Tolerances& tol = {}) {
    if (!(c > 0.0) || !v.allFinite()) throw InvariantViolation("world velocity needs finite v and c > 0");
    const SpatialVec<D> b = v / c;
    const double beta = b.norm();
    const double gamma = lorentz_factor(beta, tol.beta_max);
    Vec<D> u;
    u.template head<D - 1>() = gamma * b;
    u(D - 1) = gamma;
    return WorldVelocity(u, beta);
  }

  /// Validates an externally computed four-vector (e.g. a boosted one).
  static WorldVelocity from_components(const Vec<D>& u, const Tolerances& tol = {}) {
    if (!u.allFinite()) throw InvariantViolation("world velocity has non-finite components");
    if (!(u(D - 1) > 0.0)) throw InvariantViolation("world velocity must point to the future");
    const double gamma = u(D - 1);
    const double resid = std::abs(norm_sq<D>(u) + 1.0);
    if (resid > detail::scaled_tol(tol.alg, gamma)) {
      std::ostringstream os;
      os << "world velocity is not unit time-like: |u.u + 1| = " << resid;
      throw InvariantViolation(os.str());
    }
    const double beta = u.template head<D - 1>().norm() / gamma;
    if (beta >= tol.beta_max) throw BetaSuperluminal("boosted world velocity exceeds beta_max");
    return WorldVelocity(u, beta);
  }

  const Vec<D>& vector() const { return u_; }
  double beta() const { return beta_; }
  double gamma() const { return u_(D - 1); }
  /// Spatial speed-ratio vector v/c.
  SpatialVec<D> beta_vector() const { return u_.template head<D - 1>() / u_(D - 1); }

 private:
  WorldVelocity(const Vec<D>& u, double beta) : u_(u), beta_(beta) {}
  Vec<D> u_;
  double beta_;
};

template <int D>
WorldVelocity<D> world_velocity(const SpatialVec<D>& v, double c = 1.0, const Tolerances& tol = {}) {
  return WorldVelocity<D>::from_velocity(v, c, tol);
}

/// Residuals of the homogeneous Lorentz group identities.
struct LorentzResiduals {
  double metric = 0;        ///< max |L^T eta L - eta|
  double metric_image = 0;  ///< max |L eta L^T - eta|
  double dual = 0;          ///< max of |L L'^T - I| and |L'^T L - I|
  double det = 0;           ///< ||det L| - 1|
  double max() const { return std::max({metric, metric_image, dual, det}); }
};

template <int D>
  requires SpacetimeDim<D>
LorentzResiduals lorentz_residuals(const Mat<D>& lam) {
  const Mat<D> eta = metric<D>();
  const Mat<D> dual = eta * lam * eta;
  const Mat<D> id = Mat<D>::Identity();
  LorentzResiduals r;
  r.metric = max_abs(lam.transpose() * eta * lam - eta);
  r.metric_image = max_abs(lam * eta * lam.transpose() - eta);
  r.dual = std::max(max_abs(lam * dual.transpose() - id), max_abs(dual.transpose() * lam - id));
  r.det = std::abs(std::abs(lam.determinant()) - 1.0);
  return r;
}

/// Homogeneous Lorentz transformation, validated at construction.
template <int D>
  requires SpacetimeDim<D>
class LorentzBoost {
 public:
  static LorentzBoost identity() { return LorentzBoost(Mat<D>::Identity()); }

  /// Accepts any matrix satisfying the group identities; det = -1 is
  /// tolerated since the group includes reflections.
  static LorentzBoost from_matrix(const Mat<D>& m, const Tolerances& tol = {}) {
    if (!m.allFinite()) throw InvariantViolation("Lorentz matrix has non-finite entries");
    const LorentzResiduals r = lorentz_residuals<D>(m);
    const double gamma = std::abs(m(D - 1, D - 1));
    if (r.max() > detail::scaled_tol(tol.alg, gamma)) {
      std::ostringstream os;
      os << "matrix is not a Lorentz transformation (max residual " << r.max() << ")";
      throw InvariantViolation(os.str());
    }
    return LorentzBoost(m);
  }

  /// Pure boost into the frame moving with speed ratio `beta` (vector of
  /// v/c). For d = 2 this is [[g, -g b], [-g b, g]].
  static LorentzBoost from_beta(const SpatialVec<D>& beta, const Tolerances& tol = {}) {
    if (!beta.allFinite()) throw InvariantViolation("boost velocity has non-finite entries");
    const double b = beta.norm();
    const double g = lorentz_factor(b, tol.beta_max);
    Mat<D> m = Mat<D>::Identity();
    // (g - 1) / b^2 written without the cancellation at small b
    const double k = g * g / (g + 1.0);
    m.template topLeftCorner<D - 1, D - 1>() += k * beta * beta.transpose();
    m.template topRightCorner<D - 1, 1>() = -g * beta;
    m.template bottomLeftCorner<1, D - 1>() = -g * beta.transpose();
    m(D - 1, D - 1) = g;
    return from_matrix(m, tol);
  }

  const Mat<D>& matrix() const { return m_; }
  /// Lambda' = eta Lambda eta, satisfying Lambda Lambda'^T = I.
  Mat<D> dual() const {
    const Mat<D> eta = metric<D>();
    return eta * m_ * eta;
  }
  /// Lambda^{-1} = Lambda'^T.
  Mat<D> inverse() const { return dual().transpose(); }

 private:
  explicit LorentzBoost(const Mat<D>& m) : m_(m) {}
  Mat<D> m_;
};

template <int D>
LorentzBoost<D> boost_from_beta(const SpatialVec<D>& beta, const Tolerances& tol = {}) {
  return LorentzBoost<D>::from_beta(beta, tol);
}

/// d = 2 convenience overload taking the scalar speed ratio.
inline LorentzBoost<2> boost_from_beta(double beta, const Tolerances& tol = {}) {
  return LorentzBoost<2>::from_beta(SpatialVec<2>::Constant(beta), tol);
}

struct ProjectorResiduals {
  double annihilation = 0;  ///< max |S u|
  double idempotence = 0;   ///< max |S S - S|
  double max() const { return std::max(annihilation, idempotence); }
};

template <int D>
ProjectorResiduals projector_residuals(const Mat<D>& s, const Vec<D>& u) {
  return {max_abs(s * u), max_abs(s * s - s)};
}

/// S = I + u (x) (eta u): removes the component along the world velocity.
template <int D>
  requires SpacetimeDim<D>
class Projector {
 public:
  explicit Projector(const WorldVelocity<D>& u) {
    const Vec<D>& uv = u.vector();
    m_ = Mat<D>::Identity() + uv * (metric<D>() * uv).transpose();
  }

  /// Validates a matrix against the projector identities for `u`.
  static Projector from_matrix(const Mat<D>& s, const WorldVelocity<D>& u, const Tolerances& tol = {}) {
    const ProjectorResiduals r = projector_residuals<D>(s, u.vector());
    // |S| grows like gamma^2, S u like gamma^3
    const double g = u.gamma();
    if (r.max() > tol.alg * std::max(1.0, g * g * g)) {
      std::ostringstream os;
      os << "matrix is not the projector for the given world velocity (max residual " << r.max() << ")";
      throw InvariantViolation(os.str());
    }
    return Projector(s);
  }

  const Mat<D>& matrix() const { return m_; }

 private:
  explicit Projector(const Mat<D>& s) : m_(s) {}
  Mat<D> m_;
};

template <int D>
Projector<D> projector(const WorldVelocity<D>& u) {
  return Projector<D>(u);
}

template <int D>
struct Split {
  FourVector<D> time_like;   ///< (I - S) f, parallel to u
  FourVector<D> space_like;  ///< S f, orthogonal to u
};

template <int D>
Split<D> split(const FourVector<D>& f, const WorldVelocity<D>& u) {
  const FourVector<D> fs = Projector<D>(u).matrix() * f;
  return {f - fs, fs};
}

/// How a rank-2 tensor transforms: A* = L A L^T for contravariant
/// tensors (B, t_s), A* = L' A L'^T for tensors carrying two metric
/// factors (D_s^eta and its plastic part).
enum class TensorMode { Direct, Dual };

template <int D>
FourVector<D> apply_boost(const LorentzBoost<D>& lam, const FourVector<D>& x) {
  return lam.matrix() * x;
}

template <int D>
Mat<D> apply_boost(const LorentzBoost<D>& lam, const Mat<D>& a, TensorMode mode) {
  if (mode == TensorMode::Direct) return lam.matrix() * a * lam.matrix().transpose();
  const Mat<D> d = lam.dual();
  return d * a * d.transpose();
}

/// The transformed world velocity Lambda u.
template <int D>
WorldVelocity<D> apply_boost(const LorentzBoost<D>& lam, const WorldVelocity<D>& u, const Tolerances& tol = {}) {
  return WorldVelocity<D>::from_components(lam.matrix() * u.vector(), tol);
}

/// Projector seen by the boosted observer, S* = Lambda S Lambda'^T.
template <int D>
Mat<D> boost_projector(const LorentzBoost<D>& lam, const Projector<D>& s) {
  return lam.matrix() * s.matrix() * lam.dual().transpose();
}

/// max |F^T eta F - I| for a d x (d-1) map between a rest-frame
/// configuration and a four-vector configuration; zero when the map adds
/// no deformation.
template <int D>
double metric_isometry_residual(const Eigen::Matrix<double, D, D - 1>& fm) {
  const auto id = Eigen::Matrix<double, D - 1, D - 1>::Identity();
  return max_abs(fm.transpose() * metric<D>() * fm - id);
}

}  // namespace relkin::minkowski
