// Copyright 2026 The relcoh Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <vector>

namespace relcoh::quad {

using RealFn = std::function<double(double)>;
using ComplexFn = std::function<std::complex<double>(double)>;

struct QuadratureConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_subdivisions = 2000;
  // Explicit truncation point for infinite ranges; 0 means probe for it.
  double tail_cut = 0.0;

  /// Throws DomainError unless rel_tol > 0, abs_tol > 0 and max_subdivisions >= 1.
  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
};

struct ComplexQuadratureResult {
  std::complex<double> value;
  double error_estimate = 0.0;
  long evaluations = 0;
};

/// Where the mass of an integrand on the real line sits.
struct LineHint {
  double center = 0.0;
  double scale = 1.0;
};

struct Window {
  double lo;
  double hi;
};

/// Adaptive Gauss-Kronrod (10/21) integration on [a, b].
///
/// Bisects the panel with the largest error estimate until the total estimate
/// drops below max(abs_tol, rel_tol * |value|). Throws QuadratureError when the
/// subdivision budget runs out and NonFiniteIntegrandError on NaN/inf samples.
QuadratureResult integrate_interval(const RealFn& f, double a, double b,
                                    const QuadratureConfig& cfg = {});
ComplexQuadratureResult integrate_interval_complex(const ComplexFn& f, double a, double b,
                                                   const QuadratureConfig& cfg = {});

/// Same engine, started from the panels [breaks[i], breaks[i+1]] (ascending).
QuadratureResult integrate_breaks(const RealFn& f, const std::vector<double>& breaks,
                                  const QuadratureConfig& cfg = {});
ComplexQuadratureResult integrate_breaks_complex(const ComplexFn& f,
                                                 const std::vector<double>& breaks,
                                                 const QuadratureConfig& cfg = {});

/// Integral over the whole real line of an integrand with Gaussian or
/// exponential decay. The range is truncated where |f| has fallen below the
/// tolerance floor, found by probing outward from hint.center.
QuadratureResult integrate_line(const RealFn& f, const QuadratureConfig& cfg = {},
                                LineHint hint = {});
ComplexQuadratureResult integrate_line_complex(const ComplexFn& f,
                                               const QuadratureConfig& cfg = {},
                                               LineHint hint = {});

/// Integral over [lower, inf) of an exponentially decaying integrand.
QuadratureResult integrate_half_line(const RealFn& f, double lower,
                                     const QuadratureConfig& cfg = {}, double scale = 1.0);

/// Interval on which exp(log_f) stays within `drop` e-folds of its value at
/// `mode`. Expands geometrically from `scale`, then bisects each edge. The
/// result is clipped to [lower, upper].
Window log_window(const RealFn& log_f, double mode, double scale, double drop = 60.0,
                  double lower = -std::numeric_limits<double>::infinity(),
                  double upper = std::numeric_limits<double>::infinity());

}  // namespace relcoh::quad
