// Copyright 2026 The relkin Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace relkin {

/// Numerical thresholds shared by every module.
///
/// `alg` is an absolute bound on algebraic identity residuals (metric
/// preservation, projector idempotence, unit world velocity). Quantities
/// whose magnitude grows like gamma^2 near the light cone are checked
/// against `alg * max(1, gamma^2)`.
struct Tolerances {
  double alg = 1e-10;
  /// Relative residual accepted by the scalar Newton solves.
  double newton = 1e-12;
  /// Loading band, relative to the initial yield stress: a state is
  /// plastic when f - t_y >= -cons * t0.
  double cons = 1e-10;
  /// Below this the potential surface has no outward normal.
  double div = 1e-14;
  double beta_max = 1.0 - 1e-9;
  int max_iter = 100;
  /// Default relative step for central differences.
  double fd_step = 1e-6;
};

}  // namespace relkin
