// Copyright 2026 The relcoh Authors
// SPDX-License-Identifier: Apache-2.0
#include "relcoh/specfun.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "relcoh/errors.hpp"
#include "relcoh/quad.hpp"
#include "relcoh/summation.hpp"

namespace relcoh::specfun {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kEulerGamma = std::numbers::egamma;

struct K01 {
  double k0;
  double k1;
};

// Ascending series for K0, K1 (x <= 2), multiplied by e^x.
K01 k01_series(double x) {
  const double q = 0.25 * x * x;
  const double log_half = std::log(0.5 * x);

  // term_k = q^k / (k!)^2 and term1_k = q^k / (k! (k+1)!)
  double term = 1.0;
  double term1 = 1.0;
  double harmonic = 0.0;  // H_k
  CompensatedSum i0, i1, s0, s1;
  i0.add(term);
  i1.add(term1);
  s1.add((-2.0 * kEulerGamma + 1.0) * term1);  // psi(1) + psi(2)
  for (int k = 1; k < 60; ++k) {
    term *= q / (double(k) * double(k));
    term1 *= q / (double(k) * double(k + 1));
    harmonic += 1.0 / k;
    i0.add(term);
    i1.add(term1);
    s0.add(harmonic * term);
    // psi(k+1) + psi(k+2) = -2 gamma + 2 H_k + 1/(k+1)
    s1.add((-2.0 * kEulerGamma + 2.0 * harmonic + 1.0 / (k + 1)) * term1);
    if (term < kEps * 1e-3 * i0.value() && term1 < kEps * 1e-3 * i1.value()) break;
  }
  const double bessel_i0 = i0.value();
  const double bessel_i1 = 0.5 * x * i1.value();
  const double k0 = -(log_half + kEulerGamma) * bessel_i0 + s0.value();
  const double k1 = 1.0 / x + bessel_i1 * log_half - 0.25 * x * s1.value();
  const double ex = std::exp(x);
  return {k0 * ex, k1 * ex};
}

// Steed's method for the CF2 continued fraction (Temme), order mu = 0.
K01 k01_steed(double x) {
  double b = 2.0 * (1.0 + x);
  double d = 1.0 / b;
  double h = d;
  double delh = d;
  double q1 = 0.0;
  double q2 = 1.0;
  const double a1 = 0.25;
  double q = a1;
  double c = a1;
  double a = -a1;
  double s = 1.0 + q * delh;
  for (int i = 2; i < 100000; ++i) {
    a -= 2.0 * (i - 1);
    c = -a * c / i;
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::abs(dels / s) < kEps) break;
  }
  h *= a1;
  const double k0 = std::sqrt(std::numbers::pi / (2.0 * x)) / s;
  const double k1 = k0 * (x + 0.5 - h) / x;
  return {k0, k1};
}

// Hankel expansion of e^x K_nu(x); used for x > 20 where the smallest term
// is below 1e-17 for nu <= 1.
double k_asymptotic(int nu, double x) {
  const double mu = 4.0 * nu * nu;
  double term = 1.0;
  CompensatedSum sum;
  sum.add(term);
  for (int k = 1; k < 200; ++k) {
    const double next = term * (mu - (2.0 * k - 1) * (2.0 * k - 1)) / (8.0 * k * x);
    if (std::abs(next) >= std::abs(term)) break;
    term = next;
    sum.add(term);
    if (std::abs(term) < 1e-3 * kEps * std::abs(sum.value())) break;
  }
  return std::sqrt(std::numbers::pi / (2.0 * x)) * sum.value();
}

K01 k01_scaled(double x) {
  if (x <= 2.0) return k01_series(x);
  if (x <= 20.0) return k01_steed(x);
  return {k_asymptotic(0, x), k_asymptotic(1, x)};
}

// log of the U integrand after the substitution that removes the endpoint
// singularity; see confluent_u_positive.
struct UIntegrand {
  double a, c, z, log_norm;
  bool square_map;  // t = u^2 (a >= 1/2) or t = u^(1/a) (0 < a < 1/2)

  double operator()(double u) const {
    if (u <= 0.0) {
      if (square_map) {
        return a == 0.5 ? log_norm : -std::numeric_limits<double>::infinity();
      }
      return log_norm;
    }
    if (square_map) {
      const double t = u * u;
      return log_norm + (2.0 * a - 1.0) * std::log(u) - z * t + c * std::log1p(t);
    }
    const double t = std::pow(u, 1.0 / a);
    return log_norm - z * t + c * std::log1p(t);
  }
};

// U(a,b,z) * exp(log_prefactor) for a > 0.
double confluent_u_positive(double a, double b, double z, double log_prefactor) {
  const double c = b - a - 1.0;
  UIntegrand L{a, c, z, 0.0, a >= 0.5};
  double mode = 0.0;
  double scale = 1.0;
  if (L.square_map) {
    // 1/Gamma(a) * int 2 u^{2a-1} e^{-z u^2} (1+u^2)^c du
    L.log_norm = std::log(2.0) - log_gamma(a) + log_prefactor;
    const double p = 2.0 * a - 1.0;
    const double B = 2.0 * z - p - 2.0 * c;
    const double D = std::sqrt(B * B + 8.0 * z * p);
    const double y = B > 0.0 ? 2.0 * p / (B + D) : (D - B) / (4.0 * z);
    mode = std::sqrt(std::max(0.0, y));
    double curvature = -2.0 * z + 2.0 * c * (1.0 - y) / ((1.0 + y) * (1.0 + y));
    if (mode > 0.0) curvature -= p / y;
    scale = curvature < 0.0 ? 1.0 / std::sqrt(-curvature) : 1.0 / std::sqrt(z);
  } else {
    // 1/Gamma(a+1) * int e^{-z u^{1/a}} (1+u^{1/a})^c du
    L.log_norm = -log_gamma(a + 1.0) + log_prefactor;
    const double t_mode = std::max(0.0, c / z - 1.0);
    mode = std::pow(t_mode, a);
    scale = std::pow(1.0 / z, a);
  }
  const double peak = L(mode);
  const quad::Window w = quad::log_window(L, mode, scale, 50.0, 0.0);
  quad::QuadratureConfig cfg;
  cfg.rel_tol = 1e-13;
  cfg.abs_tol = 1e-300;
  cfg.max_subdivisions = 4000;
  try {
    const auto r = quad::integrate_interval([&](double u) { return std::exp(L(u) - peak); },
                                            w.lo, w.hi, cfg);
    return std::exp(peak) * r.value;
  } catch (const QuadratureError& e) {
    std::ostringstream msg;
    msg << "confluent_u(" << a << ", " << b << ", " << z << ") did not converge";
    throw ConvergenceError(msg.str(), e.error_estimate() / std::max(1e-300, e.best_value()));
  }
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma requires x > 0");
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

double bessel_k_scaled(int nu, double x) {
  if (nu < 0) throw DomainError("bessel_k_scaled: order must be non-negative");
  if (!std::isfinite(x) || !(x > 0.0)) {
    throw DomainError("bessel_k_scaled: argument must be positive and finite");
  }
  const K01 k = k01_scaled(x);
  if (nu == 0) return k.k0;
  if (nu == 1) return k.k1;
  double km1 = k.k0;
  double kn = k.k1;
  for (int n = 1; n < nu; ++n) {
    const double kp1 = km1 + (2.0 * n / x) * kn;
    km1 = kn;
    kn = kp1;
  }
  return kn;
}

double confluent_u(double a, double b, double z) {
  if (!std::isfinite(z) || !(z > 0.0)) throw DomainError("confluent_u: z must be positive");
  if (!std::isfinite(a) || !std::isfinite(b)) throw DomainError("confluent_u: a, b must be finite");
  if (a == 0.0) return 1.0;
  if (a > 0.0) return confluent_u_positive(a, b, z, 0.0);
  const double a_reflected = a - b + 1.0;
  if (a_reflected == 0.0) return std::pow(z, 1.0 - b);
  if (a_reflected > 0.0) return confluent_u_positive(a_reflected, 2.0 - b, z, (1.0 - b) * std::log(z));

  // U(a-1) = -(b - 2a - z) U(a) - a (a - b + 1) U(a+1), run downward.
  const int steps = static_cast<int>(std::floor(-a)) + 1;
  double top = a + steps;  // in (0, 1]
  double u_hi = confluent_u_positive(top + 1.0, b, z, 0.0);
  double u_mid = confluent_u_positive(top, b, z, 0.0);
  for (int k = 0; k < steps; ++k) {
    const double u_lo = -(b - 2.0 * top - z) * u_mid - top * (top - b + 1.0) * u_hi;
    u_hi = u_mid;
    u_mid = u_lo;
    top -= 1.0;
  }
  return u_mid;
}

double erf(double x) {
  const double v = std::erf(std::abs(x));
  return std::signbit(x) ? -v : v;
}

SignedLog log_pochhammer(double alpha, int n) {
  if (n < 0) throw DomainError("pochhammer: n must be non-negative");
  CompensatedSum logs;
  int sign = 1;
  for (int k = 0; k < n; ++k) {
    const double f = alpha + k;
    if (f == 0.0) return {-std::numeric_limits<double>::infinity(), 0};
    if (f < 0.0) sign = -sign;
    logs.add(std::log(std::abs(f)));
  }
  return {logs.value(), sign};
}

double pochhammer(double alpha, int n) {
  if (n < 0) throw DomainError("pochhammer: n must be non-negative");
  double prod = 1.0;
  for (int k = 0; k < n; ++k) {
    prod *= alpha + k;
    if (prod == 0.0) return 0.0;
    if (std::abs(prod) > 1e300 || std::abs(prod) < 1e-300) {
      const SignedLog l = log_pochhammer(alpha, n);
      return l.sign * std::exp(l.log_abs);
    }
  }
  return prod;
}

}  // namespace relcoh::specfun
