// Copyright 2026 The relcoh Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>

#include "relcoh/quad.hpp"
#include "relcoh/report.hpp"
#include "relcoh/wavefunction.hpp"

/// Lorentzian coherent states: eigenvectors of
///   b = (x/σ + i (σ/λc) v/c) / sqrt(2),   v = c p / sqrt(p^2 + m^2 c^2),
/// labelled by the mean position xbar = x̄/σ and mean velocity beta = v̄/c.
///
/// Momenta are in units of mc, so the amplitude reads
///   phi(p) = C exp(-r^2 E + r^2 beta p - i r xbar p),  E = sqrt(p^2 + 1),
/// with C^2 = sqrt(1 - beta^2) / (2 K1(w)) and w = 2 r^2 sqrt(1 - beta^2).
/// All Bessel ratios go through e^x K_nu(x), so r = 8 (w up to 128) is safe.
namespace relcoh::lorentzian {

struct LorentzianState {
  double xbar = 0.0;
  double beta = 0.0;
  double r = 1.0;

  /// Validates |beta| < 1 and r > 0; massless particles have no Lorentzian states.
  static LorentzianState make(double xbar, double beta, double r, Regime regime = Regime::massive);
  void validate() const;

  /// zeta = (xbar + i r beta) / sqrt(2)
  cdouble zeta() const;
  /// C in units where the momentum is measured in mc.
  double norm_const() const;
  double log_norm_const() const;
};

/// 2 r^2 sqrt(1 - beta^2)
double bessel_argument(double beta, double r);

MomentumWavefunction wavefunction(const LorentzianState& state);

/// ||b phi - zeta phi|| / ||phi|| with the derivative taken by finite
/// differences on `grid`. Throws GridResolutionError if the grid norm of phi
/// is off by more than 1e-8.
double eigen_residual(const LorentzianState& state, const MomentumGrid& grid);
/// Same, on a grid of `points` nodes spanning the support of the state.
double eigen_residual(const LorentzianState& state, std::size_t points = 4001);

/// The brace factor
///   Q = (1 - beta^2) - (w / K1(w)) int_1^inf K0(2 r^2 sqrt(xi^2 - beta^2)) dxi,
/// equal to <E^-3> / (2 r^2).
double brace_factor(double beta, double r);

/// |<[x, v]>| λc / (σ^2 c) = 2 Q.
double commutator_average(double beta, double r);

struct VarianceXV {
  double var_x;    // (Δx/σ)^2 = r^2 Q
  double var_v;    // (Δv/c)^2 = Q
  double product;  // r^2 Q^2, equal to |<[x,v]>|^2 / 4 in (σ c)^2
};

VarianceXV variances_xv(double beta, double r);

/// <p> / mc = gamma beta K2(w) / K1(w)
double mean_momentum(double beta, double r);
/// <E> / mc^2 = gamma K2(w) / K1(w) - 1 / (2 r^2)
double mean_energy(double beta, double r);
/// (Δp)^2 / (mc)^2
double momentum_variance(double beta, double r);

/// <a|b> by quadrature of the two amplitudes. Both states must share r.
cdouble overlap(const LorentzianState& a, const LorentzianState& b);
/// Closed form on the slice xbar = xbar', where the Bessel argument is real:
///   A(beta) A(beta') K1(2 r^2 sqrt(1 - bb^2)) / sqrt(1 - bb^2),  bb = (beta + beta')/2,
/// with A^2 = sqrt(1 - beta^2) / K1(w). Throws DomainError off the slice.
double overlap_real_slice(const LorentzianState& a, const LorentzianState& b);

/// Moments measured by applying x = (i/r) d/dp and v = p/E to the sampled
/// wavefunction (eighth-order differences, trapezoid sums).
struct GridObservables {
  double mean_x;      // σ
  double mean_v;      // c
  double var_x;       // σ^2
  double var_v;       // c^2
  double commutator;  // |<[x, v]>| λc / (σ^2 c), comparable with commutator_average
};

GridObservables grid_observables(const LorentzianState& state, std::size_t points = 4001);

/// Quadrature oracles over the wavefunction for the closed forms above.
double mean_momentum_quadrature(double beta, double r);
double mean_energy_quadrature(double beta, double r);
double momentum_variance_quadrature(double beta, double r);
/// <E^-3> / (2 r^2) by direct quadrature.
double brace_factor_quadrature(double beta, double r);

MomentReport report(const LorentzianState& state);

}  // namespace relcoh::lorentzian
