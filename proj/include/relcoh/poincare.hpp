// Copyright 2026 The relcoh Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <cstddef>

#include "relcoh/phase_space.hpp"
#include "relcoh/quad.hpp"
#include "relcoh/report.hpp"
#include "relcoh/wavefunction.hpp"

/// Poincaré coherent states of a massive spinless particle in 1+1 dimensions,
/// in the momentum representation with invariant measure dp / E.
///
/// Units: ħ = m = c = 1, momenta in mc, positions in λc unless a name says
/// otherwise. With r = σ/λc the labels map to
///   rho = K0(2r^2) / K1(2r^2),  eta = r^2,
///   b = r^2 pbar rho,  b0 = sqrt(eta^2 + b^2),  a = r xbar,
/// and the amplitude is
///   phi(p) = C exp(-b0 E + b p - i a p),  C^2 = 1 / (2 K0(2 r^2)).
namespace relcoh::poincare {

/// rho(r) = K0(2r^2) / K1(2r^2), in (0, 1).
double rho(double r);
/// K1(2r^2) / K0(2r^2) = 1/rho, in units of m.
double effective_mass(double r);

struct PoincareState {
  double xbar = 0.0;  // x̄/σ
  double pbar = 0.0;  // p̄/mc
  double r = 1.0;     // σ/λc

  static PoincareState make(double xbar, double pbar, double r);
  void validate() const;

  double rho() const { return poincare::rho(r); }
  double eta() const { return r * r; }
  double a() const { return r * xbar; }
  double b() const;
  double b0() const;
  double log_norm_const() const;
  double norm_const() const;
};

/// Invariant-measure amplitude.
MomentumWavefunction wavefunction(const PoincareState& state);
/// The same state under the flat measure, phi(p) / sqrt(E).
MomentumWavefunction flat_wavefunction(const PoincareState& state);

/// Label of the general one-dimensional form C exp(-sqrt(b^2 + eta^2) E + b p - i a p).
struct KaiserLabel {
  double a = 0.0;
  double b = 0.0;
  double eta = 1.0;
};

KaiserLabel kaiser_label(const PoincareState& state);
MomentumWavefunction kaiser_wavefunction(const KaiserLabel& label);

// --- group generation ---------------------------------------------------

/// Lorentz boost (1/m) [[k0, k], [k, k0]], k0 = sqrt(k^2 + m^2).
Eigen::Matrix2d boost(double k, double m = 1.0);
/// [[L, a], [0 0 1]] acting on (t, x, 1).
Eigen::Matrix3d group_element(const Eigen::Matrix2d& lambda, const Eigen::Vector2d& a);

struct BoostSection {
  double k = 0.0;
  double q = 0.0;
  double tau = 0.0;
  double m = 1.0;

  Eigen::Matrix2d lambda_k() const { return boost(k, m); }
  /// Boost with translation (tau k0 / m, (tau k + m q) / m).
  Eigen::Matrix3d section_matrix() const;
  /// Reads (q, tau) off g(L_k, (t, x)) = g(L_k, (0, q)) g(I, (tau, 0)).
  static BoostSection from_event(double k, const Eigen::Vector2d& tx, double m = 1.0);
};

/// C with C^2 = 1 / (2 m K0(2m / kappa)), the norm of C e^(-p0/kappa).
double probe_norm_const(double kappa, double m = 1.0);

/// U(section) applied to the probe C e^(-p0/kappa), evaluated at momentum p:
///   exp{i[(k0/m) p0 tau - (k/m) p tau - p q]} psi0(L_k^-1 p),
/// with L_k^-1 obtained by numerical inversion.
cdouble generate_from_section(const BoostSection& section, double kappa, double p);

/// The time-zero closed form C exp(-(k0 p0 - k p)/(kappa m) - i p q).
cdouble section_closed_form(const BoostSection& section, double kappa, double p);

/// Max elementwise gap between g(L_k, x) and its boost-times-time-translation
/// factorization, and between the latter and section_matrix().
double section_factorization_check(double k, const Eigen::Vector2d& tx, double m = 1.0);

/// Section and probe constant that generate `state`: q = a, k = rho pbar, kappa = 1/eta.
BoostSection section_for(const PoincareState& state);
double kappa_for(const PoincareState& state);

// --- moments -------------------------------------------------------------

/// <x_NW> / σ = xbar.
double mean_position(const PoincareState& state);
/// (b / eta) K1(2 eta) / K0(2 eta), which equals pbar.
double mean_momentum(const PoincareState& state);
/// (Δx_NW / σ)^2 by quadrature of <g^2>, g = b - b0 p/E - p/(2E^2).
double position_variance(const PoincareState& state,
                         const quad::QuadratureConfig& cfg = MomentumWavefunction::tight());
/// (Δp / mc)^2 = 1/(2 r^2 rho) + pbar^2 (rho K2/K1 - 1).
double momentum_variance(const PoincareState& state);
/// sqrt(pbar^2 + 1/rho^2) in mc^2.
double mean_energy(const PoincareState& state);
/// (2 r^2 pbar / K1(2r^2)) int_{r^2}^inf K1(2u) / sqrt(u^2 + b^2) du, in c.
double mean_velocity(const PoincareState& state,
                     const quad::QuadratureConfig& cfg = MomentumWavefunction::tight());

/// Brute-force moments over the invariant-measure amplitude.
double mean_momentum_quadrature(const PoincareState& state);
double momentum_variance_quadrature(const PoincareState& state);
double mean_energy_quadrature(const PoincareState& state);
double mean_velocity_quadrature(const PoincareState& state);
/// (Δx/σ)^2 with x = i d/dp on the flat-measure amplitude.
double position_variance_flat(const PoincareState& state);

/// x_NW = i d/dp - (i/2) p/E^2 applied to the sampled amplitude, in σ units.
struct NewtonWignerGrid {
  double mean_x;
  double var_x;  // <x_NW x_NW> - <x_NW>^2, operator applied twice
};

NewtonWignerGrid newton_wigner_grid(const PoincareState& state, std::size_t points = 4001);

// --- overlaps and completeness -------------------------------------------

/// <a|b> by quadrature under the invariant measure; both states must share r.
cdouble overlap(const PoincareState& a, const PoincareState& b);
/// K0(sqrt((b0 + b0')^2 - (b + b')^2)) / K0(2 r^2) on the slice xbar = xbar';
/// throws DomainError off the slice.
double overlap_real_slice(const PoincareState& a, const PoincareState& b);

/// Test functions N exp(-gamma E + beta p - i a p), gamma > |beta|.
struct ProbeFunction {
  double gamma = 1.0;
  double beta = 0.0;
  double a = 0.0;
};

MomentumWavefunction probe_wavefunction(const ProbeFunction& f);
/// 2 N N' K0(sqrt((gamma + gamma')^2 - (beta + beta')^2)) for a = a'.
double probe_overlap_real(const ProbeFunction& f, const ProbeFunction& g);

/// Grid over (xbar, theta) with pbar = sinh(theta) / rho; theta is the
/// rapidity of the section boost k = rho pbar.
PhaseSpaceGrid default_grid(double r);

/// Rebuilds <phi|psi> as (r rho^2 / 2π) ∫ dxbar dpbar <phi|z><z|psi>, the
/// factor r converting dxbar (σ) to λc. The p-axis of `grid` is the rapidity
/// theta. `rho_weight = false` drops rho^2 for the negative control. Throws
/// GridResolutionError when the full and half grids disagree by more than
/// grid.tolerance.
IdentityCheck identity_resolution_check(const MomentumWavefunction& phi, const MomentumWavefunction& psi,
                                        double r, const PhaseSpaceGrid& grid, bool rho_weight = true);

MomentReport report(const PoincareState& state);

}  // namespace relcoh::poincare
