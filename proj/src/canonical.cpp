// Copyright 2026 The relcoh Authors
// SPDX-License-Identifier: Apache-2.0
#include "relcoh/canonical.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "relcoh/errors.hpp"
#include "relcoh/specfun.hpp"
#include "relcoh/summation.hpp"

namespace relcoh::canonical {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
const double kPiQuarter = std::pow(std::numbers::pi, -0.25);
const double kInvSqrtPi = 1.0 / std::sqrt(std::numbers::pi);

constexpr int kMaxTerms = 400;
constexpr double kSeriesTol = 1e-12;

void require_r(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("canonical: r = sigma/lambda_c must be positive");
}

// e^(-s^2) sum_n s^(2n+offset)/n! U(a, -n, r^2) for s >= 0, summed with
// log-domain prefactors.
double u_series(double s, double r, double a, int offset) {
  if (s == 0.0) return offset == 0 ? specfun::confluent_u(a, 0.0, r * r) : 0.0;
  const double z = r * r;
  const double log_s = std::log(s);
  CompensatedSum sum;
  for (int n = 0; n <= kMaxTerms; ++n) {
    const double log_pref = (2.0 * n + offset) * log_s - specfun::log_gamma(n + 1.0) - s * s;
    const double term = std::exp(log_pref) * specfun::confluent_u(a, -n, z);
    sum.add(term);
    // Terms grow until n ~ s^2; only test for convergence past the peak.
    if (n > s * s && std::abs(term) < kSeriesTol * std::abs(sum.value())) return sum.value();
  }
  std::ostringstream msg;
  msg << "canonical series did not converge in " << kMaxTerms << " terms at pbar = " << s;
  throw ConvergenceError(msg.str(), 1.0);
}

quad::QuadratureConfig moment_cfg() {
  quad::QuadratureConfig c;
  c.rel_tol = 1e-13;
  c.abs_tol = 1e-300;
  c.max_subdivisions = 4000;
  return c;
}

}  // namespace

Scale Scale::massive(double r) {
  Scale s{r, Regime::massive};
  s.validate();
  return s;
}

void Scale::validate() const {
  if (regime == Regime::massive) require_r(r);
}

cdouble CanonicalState::z() const { return cdouble(xbar, pbar) / kSqrt2; }

CanonicalState CanonicalState::from_z(cdouble z) {
  return {kSqrt2 * z.real(), kSqrt2 * z.imag()};
}

MomentumWavefunction wavefunction(const CanonicalState& state) {
  const double X = state.xbar;
  const double S = state.pbar;
  auto amp = [X, S](double s) {
    const double d = s - S;
    return kPiQuarter * std::exp(cdouble(-0.5 * d * d, -X * s + 0.5 * X * S));
  };
  auto deriv = [X, S, amp](double s) { return cdouble(-(s - S), -X) * amp(s); };
  auto log_density = [S](double s) { return -(s - S) * (s - S); };
  return MomentumWavefunction(Measure::flat, amp, deriv, log_density, S, 1.0);
}

cdouble overlap(const CanonicalState& a, const CanonicalState& b) {
  const cdouble z = a.z();
  const cdouble w = b.z();
  return std::exp(-0.5 * (std::norm(z) + std::norm(w) - 2.0 * std::conj(z) * w));
}

cdouble overlap_quadrature(const CanonicalState& a, const CanonicalState& b) {
  return wavefunction(a).inner(wavefunction(b));
}

double mean_energy_massive(double pbar, double r, Method method) {
  require_r(r);
  const double s = std::abs(pbar);
  if (method == Method::quadrature) {
    const auto f = [r, s](double x) { return std::exp(-(x - s) * (x - s)) * std::hypot(x, r); };
    return quad::integrate_line(f, moment_cfg(), {s, 1.0}).value * kInvSqrtPi / r;
  }
  return u_series(s, r, -0.5, 0) / r;
}

namespace {

// Ē - |s| = e^(-s^2)/sqrt(pi) - |s| erfc|s|, without forming erf(s) - 1.
double massless_gap(double sbar) {
  const double s = std::abs(sbar);
  return std::exp(-s * s) * kInvSqrtPi - s * std::erfc(s);
}

}  // namespace

double mean_energy_massless(double sbar) { return std::abs(sbar) + massless_gap(sbar); }

double mean_energy_massless_quadrature(double sbar) {
  const double s = std::abs(sbar);
  const auto f = [s](double x) { return std::abs(x) * std::exp(-(x - s) * (x - s)); };
  std::vector<double> breaks = {std::min(-10.0, s - 10.0), 0.0, s + 10.0};
  if (s > 0.0) breaks.insert(breaks.begin() + 2, s);
  return quad::integrate_breaks(f, breaks, moment_cfg()).value * kInvSqrtPi;
}

double mean_velocity(double pbar, double r, Method method) {
  require_r(r);
  if (pbar == 0.0) return 0.0;
  const double s = std::abs(pbar);
  double v;
  if (method == Method::quadrature) {
    const auto f = [r, s](double x) { return x / std::hypot(x, r) * std::exp(-(x - s) * (x - s)); };
    v = quad::integrate_line(f, moment_cfg(), {s, 1.0}).value * kInvSqrtPi;
  } else {
    v = u_series(s, r, 0.5, 1);
  }
  return std::copysign(v, pbar);
}

double rest_energy_deviation(double r) {
  const double e = mean_energy_massive(0.0, r, Method::series);
  return (e - 1.0) / e;
}

double massless_energy_deviation(double sbar) {
  return massless_gap(sbar) / mean_energy_massless(sbar);
}

double threshold_r(double target, double lo, double hi, double resolution) {
  if (!(target > 0.0) || !(lo > 0.0) || !(hi > lo) || !(resolution > 0.0)) {
    throw DomainError("threshold_r: need target > 0 and 0 < lo < hi");
  }
  if (rest_energy_deviation(hi) > target) throw DomainError("threshold_r: target not reached below hi");
  if (rest_energy_deviation(lo) <= target) return lo;
  while (hi - lo > resolution) {
    const double mid = 0.5 * (lo + hi);
    (rest_energy_deviation(mid) <= target ? hi : lo) = mid;
  }
  return hi;
}

Uncertainty uncertainty_product(const CanonicalState& state) {
  const MomentumWavefunction wf = wavefunction(state);
  const auto cfg = moment_cfg();
  const double mean_p = wf.expectation([](double s) { return s; }, cfg);
  const double mean_p2 = wf.expectation([](double s) { return s * s; }, cfg);
  // x = i d/ds in σ units
  const double mean_x =
      wf.integrate([&](double s) { return (std::conj(wf(s)) * cdouble(0, 1) * wf.derivative(s)).real(); },
                   cfg);
  const double mean_x2 = wf.integrate([&](double s) { return std::norm(wf.derivative(s)); }, cfg);
  const double var_x = mean_x2 - mean_x * mean_x;
  const double var_p = mean_p2 - mean_p * mean_p;
  return {var_x, var_p, var_x * var_p};
}

IdentityCheck identity_resolution_check(const MomentumWavefunction& phi,
                                        const MomentumWavefunction& psi,
                                        const PhaseSpaceGrid& grid) {
  if (phi.measure() != Measure::flat || psi.measure() != Measure::flat) {
    throw DomainError("canonical resolution of identity needs flat-measure test functions");
  }
  const GridSum sum = phase_space_trapezoid(grid, [&](double X, double S) {
    const MomentumWavefunction z = wavefunction({X, S});
    return phi.inner(z) * z.inner(psi);
  });
  const cdouble full = sum.full / (2.0 * std::numbers::pi);
  const cdouble half = sum.half / (2.0 * std::numbers::pi);
  const double grid_error = std::abs(full - half);
  if (!(grid_error <= grid.tolerance)) {
    std::ostringstream msg;
    msg << "phase-space grid too coarse: full and half grid differ by " << grid_error;
    throw GridResolutionError(msg.str(), grid_error);
  }
  const cdouble direct = phi.inner(psi);
  return {full, direct, std::abs(full - direct), grid_error};
}

MomentReport report(const CanonicalState& state, const Scale& scale, Method method) {
  scale.validate();
  MomentReport rep;
  rep.family = "canonical";
  const Uncertainty u = uncertainty_product(state);
  rep.var_x = {u.var_x, Method::quadrature};
  rep.var_p = {u.var_p, Method::quadrature};
  rep.product_xp = {u.product, Method::quadrature};
  const Method m = method == Method::quadrature ? Method::quadrature : Method::series;
  if (scale.regime == Regime::massless) {
    rep.energy = method == Method::quadrature
                     ? Moment{mean_energy_massless_quadrature(state.pbar), Method::quadrature}
                     : Moment{mean_energy_massless(state.pbar), Method::closed_form};
    rep.momentum = {state.pbar, Method::closed_form};
    return rep;
  }
  rep.energy = {mean_energy_massive(state.pbar, scale.r, m), m};
  rep.momentum = {state.pbar / scale.r, Method::closed_form};
  rep.velocity = {mean_velocity(state.pbar, scale.r, m), m};
  return rep;
}

}  // namespace relcoh::canonical
