// Copyright 2026 The relcoh Authors
// SPDX-License-Identifier: Apache-2.0
#include "relcoh/poincare.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "relcoh/errors.hpp"
#include "relcoh/specfun.hpp"

namespace relcoh::poincare {

namespace {

using specfun::bessel_k_scaled;

void check_r(double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("poincare: r = sigma/lambda_c must be positive");
}

// ln K_nu(x)
double log_k(int nu, double x) { return std::log(bessel_k_scaled(nu, x)) - x; }

// Invariant-measure exponential family exp(log_c - g E + b p - i a p).
MomentumWavefunction exponential_family(double log_c, double g, double b, double a, Measure measure) {
  const bool flat = measure == Measure::flat;
  auto amp = [=](double p) {
    const double e = std::hypot(p, 1.0);
    const double lf = flat ? -0.5 * std::log(e) : 0.0;
    return std::exp(cdouble(log_c - g * e + b * p + lf, -a * p));
  };
  auto deriv = [=](double p) {
    const double e = std::hypot(p, 1.0);
    const double extra = flat ? -0.5 * p / (e * e) : 0.0;
    return cdouble(-g * p / e + b + extra, -a) * amp(p);
  };
  auto log_density = [=](double p) {
    const double e = std::hypot(p, 1.0);
    return 2.0 * (log_c - g * e + b * p) - std::log(e);
  };
  const double eta = std::sqrt((g - b) * (g + b));
  const double mode = b / eta;
  const double e_mode = g / eta;
  const double scale = std::sqrt(e_mode * e_mode * e_mode / (2.0 * g));
  return MomentumWavefunction(measure, amp, deriv, log_density, mode, scale);
}

quad::QuadratureConfig tight() {
  quad::QuadratureConfig c;
  c.rel_tol = 1e-13;
  c.abs_tol = 1e-300;
  c.max_subdivisions = 4000;
  return c;
}

// b - b0 p/E - p/(2E^2), written to avoid cancelling b against b0 p/E where
// both have the same sign.
double nw_shift(double p, double b, double b0, double eta) {
  const double e = std::hypot(p, 1.0);
  double lead;
  if (b * p > 0.0) {
    lead = (b * b - eta * eta * p * p) / (e * (b * e + b0 * p));
  } else {
    lead = b - b0 * p / e;
  }
  return lead - 0.5 * p / (e * e);
}

}  // namespace

double rho(double r) {
  check_r(r);
  const double x = 2.0 * r * r;
  return bessel_k_scaled(0, x) / bessel_k_scaled(1, x);
}

double effective_mass(double r) { return 1.0 / rho(r); }

PoincareState PoincareState::make(double xbar, double pbar, double r) {
  PoincareState s{xbar, pbar, r};
  s.validate();
  return s;
}

void PoincareState::validate() const {
  check_r(r);
  if (!std::isfinite(xbar) || !std::isfinite(pbar)) throw DomainError("poincare: labels must be finite");
}

double PoincareState::b() const { return r * r * pbar * rho(); }

double PoincareState::b0() const { return std::hypot(eta(), b()); }

double PoincareState::log_norm_const() const {
  validate();
  return -0.5 * (std::numbers::ln2 + log_k(0, 2.0 * r * r));
}

double PoincareState::norm_const() const { return std::exp(log_norm_const()); }

MomentumWavefunction wavefunction(const PoincareState& state) {
  return exponential_family(state.log_norm_const(), state.b0(), state.b(), state.a(), Measure::invariant);
}

MomentumWavefunction flat_wavefunction(const PoincareState& state) {
  return exponential_family(state.log_norm_const(), state.b0(), state.b(), state.a(), Measure::flat);
}

KaiserLabel kaiser_label(const PoincareState& state) {
  state.validate();
  return {state.a(), state.b(), state.eta()};
}

MomentumWavefunction kaiser_wavefunction(const KaiserLabel& label) {
  if (!(label.eta > 0.0)) throw DomainError("kaiser: eta must be positive (timelike b)");
  const double log_c = -0.5 * (std::numbers::ln2 + log_k(0, 2.0 * label.eta));
  return exponential_family(log_c, std::hypot(label.eta, label.b), label.b, label.a, Measure::invariant);
}

Eigen::Matrix2d boost(double k, double m) {
  if (!(m > 0.0)) throw DomainError("boost: mass must be positive");
  const double k0 = std::hypot(k, m);
  Eigen::Matrix2d l;
  l << k0, k, k, k0;
  return l / m;
}

Eigen::Matrix3d group_element(const Eigen::Matrix2d& lambda, const Eigen::Vector2d& a) {
  Eigen::Matrix3d g = Eigen::Matrix3d::Identity();
  g.topLeftCorner<2, 2>() = lambda;
  g.topRightCorner<2, 1>() = a;
  return g;
}

Eigen::Matrix3d BoostSection::section_matrix() const {
  const double k0 = std::hypot(k, m);
  return group_element(lambda_k(), Eigen::Vector2d(tau * k0 / m, (tau * k + m * q) / m));
}

BoostSection BoostSection::from_event(double k, const Eigen::Vector2d& tx, double m) {
  const double k0 = std::hypot(k, m);
  BoostSection s;
  s.k = k;
  s.m = m;
  s.tau = m * tx(0) / k0;
  s.q = tx(1) - k * tx(0) / k0;
  return s;
}

double probe_norm_const(double kappa, double m) {
  if (!(kappa > 0.0) || !(m > 0.0)) throw DomainError("probe: kappa and m must be positive");
  return std::exp(-0.5 * (std::numbers::ln2 + std::log(m) + log_k(0, 2.0 * m / kappa)));
}

cdouble generate_from_section(const BoostSection& section, double kappa, double p) {
  const double m = section.m;
  const double c = probe_norm_const(kappa, m);
  const double k0 = std::hypot(section.k, m);
  const double p0 = std::hypot(p, m);
  const Eigen::Vector2d pulled = section.lambda_k().inverse() * Eigen::Vector2d(p0, p);
  const double phase = (k0 / m) * p0 * section.tau - ((section.k / m) * p * section.tau + p * section.q);
  return std::exp(cdouble(-pulled(0) / kappa, phase)) * c;
}

cdouble section_closed_form(const BoostSection& section, double kappa, double p) {
  const double m = section.m;
  const double k0 = std::hypot(section.k, m);
  const double p0 = std::hypot(p, m);
  return probe_norm_const(kappa, m) *
         std::exp(cdouble(-(k0 * p0 - section.k * p) / (kappa * m), -p * section.q));
}

double section_factorization_check(double k, const Eigen::Vector2d& tx, double m) {
  const BoostSection s = BoostSection::from_event(k, tx, m);
  const Eigen::Matrix3d g = group_element(s.lambda_k(), tx);
  const Eigen::Matrix3d product = group_element(s.lambda_k(), Eigen::Vector2d(0.0, s.q)) *
                                  group_element(Eigen::Matrix2d::Identity(), Eigen::Vector2d(s.tau, 0.0));
  return std::max((g - product).cwiseAbs().maxCoeff(), (product - s.section_matrix()).cwiseAbs().maxCoeff());
}

BoostSection section_for(const PoincareState& state) {
  state.validate();
  BoostSection s;
  s.k = state.rho() * state.pbar;
  s.q = state.a();
  return s;
}

double kappa_for(const PoincareState& state) {
  state.validate();
  return 1.0 / state.eta();
}

double mean_position(const PoincareState& state) {
  state.validate();
  return state.xbar;
}

double mean_momentum(const PoincareState& state) {
  state.validate();
  const double x = 2.0 * state.eta();
  return state.b() / state.eta() * bessel_k_scaled(1, x) / bessel_k_scaled(0, x);
}

double position_variance(const PoincareState& state, const quad::QuadratureConfig& cfg) {
  const MomentumWavefunction wf = wavefunction(state);
  const double b = state.b(), b0 = state.b0(), eta = state.eta();
  const double g2 = wf.expectation(
      [=](double p) {
        const double g = nw_shift(p, b, b0, eta);
        return g * g;
      },
      cfg);
  return g2 / (state.r * state.r);
}

double momentum_variance(const PoincareState& state) {
  state.validate();
  const double x = 2.0 * state.eta();
  const double rh = state.rho();
  const double k21 = bessel_k_scaled(2, x) / bessel_k_scaled(1, x);
  return 0.5 / (state.eta() * rh) + state.pbar * state.pbar * (rh * k21 - 1.0);
}

double mean_energy(const PoincareState& state) {
  state.validate();
  return std::hypot(state.pbar, 1.0 / state.rho());
}

double mean_velocity(const PoincareState& state, const quad::QuadratureConfig& cfg) {
  state.validate();
  if (state.pbar == 0.0) return 0.0;
  const double eta = state.eta();
  const double b = state.b();
  // K1(2u) / K1(2 eta) = e^(-2(u - eta)) (e^2u K1(2u)) / (e^2eta K1(2eta))
  const auto f = [=](double u) {
    return std::exp(-2.0 * (u - eta)) * bessel_k_scaled(1, 2.0 * u) / std::hypot(u, b);
  };
  const double integral = quad::integrate_half_line(f, eta, cfg, 0.5).value;
  return 2.0 * eta * state.pbar / bessel_k_scaled(1, 2.0 * eta) * integral;
}

double mean_momentum_quadrature(const PoincareState& state) {
  return wavefunction(state).expectation([](double p) { return p; }, tight());
}

double momentum_variance_quadrature(const PoincareState& state) {
  const MomentumWavefunction wf = wavefunction(state);
  const double mean = wf.expectation([](double p) { return p; }, tight());
  return wf.expectation([mean](double p) { return (p - mean) * (p - mean); }, tight());
}

double mean_energy_quadrature(const PoincareState& state) {
  return wavefunction(state).expectation([](double p) { return std::hypot(p, 1.0); }, tight());
}

double mean_velocity_quadrature(const PoincareState& state) {
  return wavefunction(state).expectation([](double p) { return p / std::hypot(p, 1.0); }, tight());
}

double position_variance_flat(const PoincareState& state) {
  const MomentumWavefunction wf = flat_wavefunction(state);
  const double a = state.a();
  const cdouble i(0.0, 1.0);
  const double second = wf.integrate([&](double p) { return std::norm(i * wf.derivative(p) - a * wf(p)); });
  return second / (state.r * state.r);
}

NewtonWignerGrid newton_wigner_grid(const PoincareState& state, std::size_t points) {
  const MomentumWavefunction wf = wavefunction(state);
  const MomentumGrid grid = MomentumGrid::around(wf, points);
  const std::vector<cdouble> phi = sample(wf, grid);
  const std::vector<double> w = grid_weights(wf, grid);
  const double h = grid.step();
  check_grid_norm(phi, w, h, 1e-8);
  const cdouble i(0.0, 1.0);
  const auto apply = [&](const std::vector<cdouble>& f) {
    const std::vector<cdouble> d = grid_derivative(f, h);
    std::vector<cdouble> out(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) {
      const double p = grid.at(j);
      out[j] = i * d[j] - 0.5 * i * p / (1.0 + p * p) * f[j];
    }
    return out;
  };
  const std::vector<cdouble> x_phi = apply(phi);
  const std::vector<cdouble> xx_phi = apply(x_phi);
  const double norm = grid_inner(phi, phi, w, h).real();
  const double mean = grid_inner(phi, x_phi, w, h).real() / norm;
  const double second = grid_inner(phi, xx_phi, w, h).real() / norm;
  const double r2 = state.r * state.r;
  return {mean / state.r, (second - mean * mean) / r2};
}

cdouble overlap(const PoincareState& a, const PoincareState& b) {
  if (a.r != b.r) throw DomainError("poincare overlap: both states must share sigma/lambda_c");
  return wavefunction(a).inner(wavefunction(b));
}

double overlap_real_slice(const PoincareState& a, const PoincareState& b) {
  if (a.r != b.r) throw DomainError("poincare overlap: both states must share sigma/lambda_c");
  if (a.xbar != b.xbar) throw DomainError("poincare overlap closed form needs xbar = xbar'");
  const double s0 = a.b0() + b.b0();
  const double s = a.b() + b.b();
  const double arg = std::sqrt((s0 - s) * (s0 + s));
  return std::exp(log_k(0, arg) - log_k(0, 2.0 * a.eta()));
}

namespace {

double probe_log_norm(const ProbeFunction& f) {
  if (!(f.gamma > std::abs(f.beta))) throw DomainError("probe: need gamma > |beta|");
  const double eta = std::sqrt((f.gamma - f.beta) * (f.gamma + f.beta));
  return -0.5 * (std::numbers::ln2 + log_k(0, 2.0 * eta));
}

}  // namespace

MomentumWavefunction probe_wavefunction(const ProbeFunction& f) {
  return exponential_family(probe_log_norm(f), f.gamma, f.beta, f.a, Measure::invariant);
}

double probe_overlap_real(const ProbeFunction& f, const ProbeFunction& g) {
  if (f.a != g.a) throw DomainError("probe overlap closed form needs a = a'");
  const double s0 = f.gamma + g.gamma;
  const double s = f.beta + g.beta;
  return 2.0 * std::exp(probe_log_norm(f) + probe_log_norm(g) + log_k(0, std::sqrt((s0 - s) * (s0 + s))));
}

PhaseSpaceGrid default_grid(double r) {
  check_r(r);
  PhaseSpaceGrid g;
  const double x_max = std::max(8.0, 12.0 / r);
  // Step 1/8 in a = r xbar.
  const double half = std::ceil(8.0 * x_max * r);
  g.x_lo = -x_max;
  g.x_hi = x_max;
  g.x_points = 2 * static_cast<std::size_t>(half) + 1;
  g.p_lo = -5.0;
  g.p_hi = 5.0;
  g.p_points = 31;
  g.tolerance = 1e-6;
  return g;
}

IdentityCheck identity_resolution_check(const MomentumWavefunction& phi, const MomentumWavefunction& psi,
                                        double r, const PhaseSpaceGrid& grid, bool rho_weight) {
  check_r(r);
  if (phi.measure() != Measure::invariant || psi.measure() != Measure::invariant) {
    throw DomainError("poincare resolution of identity needs invariant-measure test functions");
  }
  const double rh = rho(r);
  // pbar = sinh(theta) / rho, so dpbar = cosh(theta) dtheta / rho.
  const GridSum sum = phase_space_trapezoid(grid, [&](double X, double theta) {
    const MomentumWavefunction z = wavefunction({X, std::sinh(theta) / rh, r});
    return phi.inner(z) * z.inner(psi) * std::cosh(theta);
  });
  const double full_weight = r * rh / (2.0 * std::numbers::pi);
  const double grid_error = std::abs(sum.full - sum.half) * full_weight;
  if (!(grid_error <= grid.tolerance)) {
    std::ostringstream msg;
    msg << "phase-space grid too coarse: full and half grid differ by " << grid_error;
    throw GridResolutionError(msg.str(), grid_error);
  }
  const double weight = rho_weight ? full_weight : full_weight / (rh * rh);
  const cdouble reconstructed = sum.full * weight;
  const cdouble direct = phi.inner(psi);
  return {reconstructed, direct, std::abs(reconstructed - direct), grid_error};
}

MomentReport report(const PoincareState& state) {
  state.validate();
  const double r2 = state.r * state.r;
  MomentReport rep;
  rep.family = "poincare";
  rep.energy = {mean_energy(state), Method::closed_form};
  rep.momentum = {mean_momentum(state), Method::closed_form};
  rep.velocity = {mean_velocity(state), Method::quadrature};
  rep.var_x = {position_variance(state), Method::quadrature};
  rep.var_p = {r2 * momentum_variance(state), Method::closed_form};
  rep.product_xp = {rep.var_x.value * rep.var_p.value, Method::quadrature};
  return rep;
}

}  // namespace relcoh::poincare
