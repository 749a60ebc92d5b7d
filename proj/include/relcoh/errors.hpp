// Copyright 2026 The relcoh Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace relcoh {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the domain of the operation (x <= 0, |beta| >= 1, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An iterative or series evaluation stopped before reaching its tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Adaptive quadrature exhausted its subdivision budget.
class QuadratureError : public ConvergenceError {
 public:
  QuadratureError(const std::string& what, double best_value, double error_estimate)
      : ConvergenceError(what, error_estimate), best_value_(best_value) {}

  double best_value() const noexcept { return best_value_; }
  double error_estimate() const noexcept { return residual(); }

 private:
  double best_value_;
};

/// The integrand returned NaN or infinity at a quadrature node.
class NonFiniteIntegrandError : public Error {
 public:
  NonFiniteIntegrandError(const std::string& what, double at) : Error(what), at_(at) {}

  double at() const noexcept { return at_; }

 private:
  double at_;
};

/// A momentum or phase-space grid is too coarse (or too narrow) for the requested accuracy.
class GridResolutionError : public Error {
 public:
  GridResolutionError(const std::string& what, double estimate)
      : Error(what), estimate_(estimate) {}

  double estimate() const noexcept { return estimate_; }

 private:
  double estimate_;
};

}  // namespace relcoh
