// Copyright 2026 The relcoh Authors
// SPDX-License-Identifier: Apache-2.0
#include "relcoh/lorentzian.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "relcoh/errors.hpp"
#include "relcoh/specfun.hpp"

namespace relcoh::lorentzian {

namespace {

using specfun::bessel_k_scaled;

void check_label(double beta, double r) {
  if (!std::isfinite(beta) || !(std::abs(beta) < 1.0)) {
    std::ostringstream msg;
    msg << "lorentzian: |beta| = |v/c| must be below 1 (got beta = " << beta << ")";
    throw DomainError(msg.str());
  }
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("lorentzian: r = sigma/lambda_c must be positive");
}

double one_minus_sq(double beta) { return (1.0 - beta) * (1.0 + beta); }

// K2(w) / K1(w), free of the exponential factor.
double k21(double w) { return bessel_k_scaled(2, w) / bessel_k_scaled(1, w); }

quad::QuadratureConfig tight() {
  quad::QuadratureConfig c;
  c.rel_tol = 1e-13;
  c.abs_tol = 1e-300;
  c.max_subdivisions = 4000;
  return c;
}

}  // namespace

LorentzianState LorentzianState::make(double xbar, double beta, double r, Regime regime) {
  if (regime == Regime::massless) {
    throw DomainError("lorentzian states need a massive particle: they are labelled by velocity");
  }
  LorentzianState s{xbar, beta, r};
  s.validate();
  return s;
}

void LorentzianState::validate() const {
  if (!std::isfinite(xbar)) throw DomainError("lorentzian: xbar must be finite");
  check_label(beta, r);
}

cdouble LorentzianState::zeta() const { return cdouble(xbar, r * beta) / std::numbers::sqrt2; }

double LorentzianState::log_norm_const() const {
  validate();
  const double w = bessel_argument(beta, r);
  // ln K1(w) = ln(e^w K1(w)) - w
  return 0.5 * (0.5 * std::log(one_minus_sq(beta)) - std::numbers::ln2 -
                (std::log(bessel_k_scaled(1, w)) - w));
}

double LorentzianState::norm_const() const { return std::exp(log_norm_const()); }

double bessel_argument(double beta, double r) {
  check_label(beta, r);
  return 2.0 * r * r * std::sqrt(one_minus_sq(beta));
}

MomentumWavefunction wavefunction(const LorentzianState& state) {
  const double log_c = state.log_norm_const();
  const double r2 = state.r * state.r;
  const double beta = state.beta;
  const double k = state.r * state.xbar;
  auto amp = [=](double p) {
    const double e = std::hypot(p, 1.0);
    return std::exp(cdouble(log_c - r2 * e + r2 * beta * p, -k * p));
  };
  auto deriv = [=](double p) {
    const double e = std::hypot(p, 1.0);
    return cdouble(-r2 * p / e + r2 * beta, -k) * amp(p);
  };
  auto log_density = [=](double p) { return 2.0 * (log_c - r2 * std::hypot(p, 1.0) + r2 * beta * p); };
  const double gamma = 1.0 / std::sqrt(one_minus_sq(beta));
  const double mode = gamma * beta;
  const double scale = std::sqrt(gamma * gamma * gamma / (2.0 * r2));
  return MomentumWavefunction(Measure::flat, amp, deriv, log_density, mode, scale);
}

double eigen_residual(const LorentzianState& state, const MomentumGrid& grid) {
  const MomentumWavefunction wf = wavefunction(state);
  const std::vector<cdouble> phi = sample(wf, grid);
  const std::vector<double> ones(grid.points, 1.0);
  const double h = grid.step();
  check_grid_norm(phi, ones, h, 1e-8);
  const std::vector<cdouble> d = grid_derivative(phi, h);
  const cdouble zeta = state.zeta();
  const cdouble i(0.0, 1.0);
  std::vector<cdouble> res(grid.points);
  for (std::size_t j = 0; j < grid.points; ++j) {
    const double p = grid.at(j);
    const cdouble b_phi = (i / state.r * d[j] + i * state.r * (p / std::hypot(p, 1.0)) * phi[j]) /
                          std::numbers::sqrt2;
    res[j] = b_phi - zeta * phi[j];
  }
  return std::sqrt(grid_inner(res, res, ones, h).real() / grid_inner(phi, phi, ones, h).real());
}

double eigen_residual(const LorentzianState& state, std::size_t points) {
  return eigen_residual(state, MomentumGrid::around(wavefunction(state), points));
}

double brace_factor(double beta, double r) {
  const double w = bessel_argument(beta, r);
  const double r2 = r * r;
  // K0(y) = e^-y (e^y K0(y)); the e^-w of K1(w) is pulled into the integrand.
  const auto f = [=](double xi) {
    const double y = 2.0 * r2 * std::sqrt((xi - std::abs(beta)) * (xi + std::abs(beta)));
    return std::exp(-(y - w)) * bessel_k_scaled(0, y);
  };
  const double decay = std::sqrt(one_minus_sq(beta)) / (2.0 * r2);
  const double integral = quad::integrate_half_line(f, 1.0, tight(), decay).value;
  return one_minus_sq(beta) - w / bessel_k_scaled(1, w) * integral;
}

double commutator_average(double beta, double r) { return 2.0 * brace_factor(beta, r); }

VarianceXV variances_xv(double beta, double r) {
  const double q = brace_factor(beta, r);
  return {r * r * q, q, r * r * q * q};
}

double mean_momentum(double beta, double r) {
  const double w = bessel_argument(beta, r);
  return beta / std::sqrt(one_minus_sq(beta)) * k21(w);
}

double mean_energy(double beta, double r) {
  const double w = bessel_argument(beta, r);
  return k21(w) / std::sqrt(one_minus_sq(beta)) - 0.5 / (r * r);
}

double momentum_variance(double beta, double r) {
  const double w = bessel_argument(beta, r);
  const double g2 = 1.0 / one_minus_sq(beta);
  const double ratio = k21(w);
  return g2 * beta * beta * (1.0 - ratio * ratio) +
         0.5 / (r * r) * (1.0 + 3.0 * beta * beta) * g2 * std::sqrt(g2) * ratio;
}

cdouble overlap(const LorentzianState& a, const LorentzianState& b) {
  if (a.r != b.r) throw DomainError("lorentzian overlap: both states must share sigma/lambda_c");
  return wavefunction(a).inner(wavefunction(b));
}

double overlap_real_slice(const LorentzianState& a, const LorentzianState& b) {
  if (a.r != b.r) throw DomainError("lorentzian overlap: both states must share sigma/lambda_c");
  if (a.xbar != b.xbar) throw DomainError("lorentzian overlap closed form needs xbar = xbar'");
  const double bb = 0.5 * (a.beta + b.beta);
  const auto log_a = [&](double beta) {
    const double w = bessel_argument(beta, a.r);
    return 0.5 * (0.5 * std::log(one_minus_sq(beta)) - std::log(bessel_k_scaled(1, w)) + w);
  };
  const double wb = bessel_argument(bb, a.r);
  return std::exp(log_a(a.beta) + log_a(b.beta) + std::log(bessel_k_scaled(1, wb)) - wb -
                  0.5 * std::log(one_minus_sq(bb)));
}

GridObservables grid_observables(const LorentzianState& state, std::size_t points) {
  const MomentumWavefunction wf = wavefunction(state);
  const MomentumGrid grid = MomentumGrid::around(wf, points);
  const std::vector<cdouble> phi = sample(wf, grid);
  const std::vector<double> ones(grid.points, 1.0);
  const double h = grid.step();
  check_grid_norm(phi, ones, h, 1e-8);
  const std::vector<cdouble> d = grid_derivative(phi, h);
  const cdouble i(0.0, 1.0);
  std::vector<cdouble> x_phi(grid.points), v_phi(grid.points);
  for (std::size_t j = 0; j < grid.points; ++j) {
    const double p = grid.at(j);
    x_phi[j] = i / state.r * d[j];
    v_phi[j] = p / std::hypot(p, 1.0) * phi[j];
  }
  const double norm = grid_inner(phi, phi, ones, h).real();
  GridObservables o;
  o.mean_x = grid_inner(phi, x_phi, ones, h).real() / norm;
  o.mean_v = grid_inner(phi, v_phi, ones, h).real() / norm;
  o.var_x = grid_inner(x_phi, x_phi, ones, h).real() / norm - o.mean_x * o.mean_x;
  o.var_v = grid_inner(v_phi, v_phi, ones, h).real() / norm - o.mean_v * o.mean_v;
  o.commutator = 2.0 * std::abs(grid_inner(x_phi, v_phi, ones, h).imag()) / norm / state.r;
  return o;
}

double mean_momentum_quadrature(double beta, double r) {
  return wavefunction({0.0, beta, r}).expectation([](double p) { return p; }, tight());
}

double mean_energy_quadrature(double beta, double r) {
  return wavefunction({0.0, beta, r}).expectation([](double p) { return std::hypot(p, 1.0); }, tight());
}

double momentum_variance_quadrature(double beta, double r) {
  const MomentumWavefunction wf = wavefunction({0.0, beta, r});
  const double mean = wf.expectation([](double p) { return p; }, tight());
  return wf.expectation([mean](double p) { return (p - mean) * (p - mean); }, tight());
}

double brace_factor_quadrature(double beta, double r) {
  const MomentumWavefunction wf = wavefunction({0.0, beta, r});
  const double e3 = wf.expectation([](double p) { return std::pow(std::hypot(p, 1.0), -3.0); }, tight());
  return e3 / (2.0 * r * r);
}

MomentReport report(const LorentzianState& state) {
  state.validate();
  const double beta = state.beta, r = state.r;
  MomentReport rep;
  rep.family = "lorentzian";
  rep.energy = {mean_energy(beta, r), Method::closed_form};
  rep.momentum = {mean_momentum(beta, r), Method::closed_form};
  rep.velocity = {beta, Method::closed_form};
  const VarianceXV xv = variances_xv(beta, r);
  rep.var_x = {xv.var_x, Method::quadrature};
  rep.var_v = {xv.var_v, Method::quadrature};
  rep.product_xv = {xv.product, Method::quadrature};
  rep.var_p = {r * r * momentum_variance(beta, r), Method::closed_form};
  rep.product_xp = {xv.var_x * rep.var_p.value, Method::quadrature};
  return rep;
}

}  // namespace relcoh::lorentzian
