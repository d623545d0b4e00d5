// Copyright 2026 The relkin Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace relkin {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A speed ratio reached or exceeded the configured beta_max.
class BetaSuperluminal : public Error {
 public:
  using Error::Error;
};

/// A user-supplied matrix failed the Lorentz-group, world-velocity or
/// projector identities.
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

/// A finite-difference stencil left the domain of a field sampler.
class SamplerDomain : public Error {
 public:
  using Error::Error;
};

/// Right Cauchy-Green tensor with a negative eigenvalue; a time-like
/// column got past the projector.
class NotPositiveSemidefinite : public Error {
 public:
  using Error::Error;
};

/// Quadratic stress form evaluated below -tol_alg.
class NegativeRadicand : public Error {
 public:
  using Error::Error;
};

/// Flow direction requested at the apex of the potential surface.
class ApexSingularity : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

/// Malformed scenario text.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Scenario value outside its admissible range.
class ValidationError : public Error {
 public:
  using Error::Error;
};

}  // namespace relkin
