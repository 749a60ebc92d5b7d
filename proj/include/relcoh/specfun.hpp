// Copyright 2026 The relcoh Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

namespace relcoh::specfun {

/// Exponentially scaled Macdonald function e^x K_nu(x) for integer nu >= 0.
///
/// Power series below x = 2, Steed's continued fraction on [2, 20] and the
/// Hankel asymptotic expansion above 20; orders >= 2 by upward recurrence.
/// Relative accuracy is ~1e-14 on [1e-6, 1e4] and the result never
/// underflows there. Throws DomainError for x <= 0, non-finite x or nu < 0.
double bessel_k_scaled(int nu, double x);

/// e^x K_nu(x) bundled with its inputs.
struct ScaledBessel {
  int order;
  double argument;
  double scaled_value;

  static ScaledBessel evaluate(int order, double argument) {
    return {order, argument, bessel_k_scaled(order, argument)};
  }
};

/// Tricomi's confluent hypergeometric function U(a, b, z) for real a, b and z > 0.
///
/// a > 0 uses the Laplace-type integral
///   U(a,b,z) = 1/Gamma(a) * int_0^inf e^{-zt} t^{a-1} (1+t)^{b-a-1} dt
/// evaluated in log space. When a <= 0 but a - b + 1 > 0 the Kummer
/// reflection U(a,b,z) = z^{1-b} U(a-b+1, 2-b, z) moves the call onto that
/// branch; otherwise the three-term recurrence in a is run downward from a
/// positive starting parameter. U(0, b, z) = 1.
///
/// Throws DomainError for z <= 0 and ConvergenceError if the internal
/// quadrature misses its 1e-13 relative target.
double confluent_u(double a, double b, double z);

struct HypUParams {
  double a;
  double b;
  double z;
};

inline double confluent_u(const HypUParams& p) { return confluent_u(p.a, p.b, p.z); }

/// Error function, exactly odd.
double erf(double x);

/// log|x| paired with the sign of x.
struct SignedLog {
  double log_abs;
  int sign;  // -1, 0 or +1
};

/// Pochhammer symbol (alpha)_n = alpha (alpha+1) ... (alpha+n-1), (alpha)_0 = 1.
/// Plain product while the running magnitude is representable, log-gamma
/// otherwise; returns +-inf only if the true value overflows a double.
double pochhammer(double alpha, int n);

/// Same symbol in log form, for magnitudes beyond double range.
SignedLog log_pochhammer(double alpha, int n);

/// ln Gamma(x) for x > 0 (thread-safe; no signgam side effect).
double log_gamma(double x);

}  // namespace relcoh::specfun
