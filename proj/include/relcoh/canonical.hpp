// Copyright 2026 The relcoh Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>

#include "relcoh/phase_space.hpp"
#include "relcoh/quad.hpp"
#include "relcoh/report.hpp"
#include "relcoh/wavefunction.hpp"

/// Canonical (Gaussian) coherent states of a free spinless particle and the
/// averages of relativistic observables in them.
///
/// Labels are dimensionless: xbar = x̄/σ, pbar = σp̄/ħ. With r = σ/λc the
/// momentum in units of mc is pbar/r.
namespace relcoh::canonical {

struct Scale {
  double r = 1.0;  // σ/λc; unused when massless
  Regime regime = Regime::massive;

  static Scale massive(double r);
  static Scale massless() { return {0.0, Regime::massless}; }
  /// Throws DomainError unless r > 0 in the massive regime.
  void validate() const;
};

struct CanonicalState {
  double xbar = 0.0;
  double pbar = 0.0;

  /// z = (xbar + i pbar) / sqrt(2)
  cdouble z() const;
  static CanonicalState from_z(cdouble z);
};

/// phi(s) = pi^(-1/4) exp(-(s - pbar)^2 / 2 - i xbar s + i xbar pbar / 2),
/// s = σp/ħ, unit norm under ds. The constant phase makes the overlap of two
/// states exactly exp(-(|z|^2 + |w|^2 - 2 z* w) / 2).
MomentumWavefunction wavefunction(const CanonicalState& state);

cdouble overlap(const CanonicalState& a, const CanonicalState& b);
cdouble overlap_quadrature(const CanonicalState& a, const CanonicalState& b);

/// Mean energy in units of mc^2 for r = σ/λc.
///
/// series:     (1/r) e^(-pbar^2) sum_n pbar^(2n)/n! U(-1/2, -n, r^2)
/// quadrature: (1/(r sqrt(pi))) int e^(-(x - pbar)^2) sqrt(x^2 + r^2) dx
///
/// The series stops once a term drops below 1e-12 of the running sum and
/// throws ConvergenceError if that has not happened by n = 400.
double mean_energy_massive(double pbar, double r, Method method = Method::series);

/// |s| erf|s| + e^(-s^2)/sqrt(pi) in units of cħ/σ, s = σp̄/ħ.
double mean_energy_massless(double sbar);
double mean_energy_massless_quadrature(double sbar);

/// Mean velocity in units of c.
///
/// series:     e^(-pbar^2) sum_n pbar^(2n+1)/n! U(1/2, -n, r^2)
/// quadrature: (1/sqrt(pi)) int x / sqrt(x^2 + r^2) e^(-(x - pbar)^2) dx
double mean_velocity(double pbar, double r, Method method = Method::series);

/// (Ē - mc^2)/Ē at pbar = 0.
double rest_energy_deviation(double r);
/// (Ē - c|p̄|)/Ē for a massless state with s = σp̄/ħ.
double massless_energy_deviation(double sbar);

/// Smallest r (to `resolution`) with rest_energy_deviation(r) <= target,
/// found by bisection on [lo, hi].
double threshold_r(double target, double lo = 0.05, double hi = 1000.0, double resolution = 1e-3);

struct Uncertainty {
  double var_x;    // σ^2
  double var_p;    // (ħ/σ)^2
  double product;  // ħ^2
};

/// Position and momentum variances by quadrature over the wavefunction.
Uncertainty uncertainty_product(const CanonicalState& state);

/// Rebuilds <phi|psi> as (1/2π) ∫ dxbar dpbar <phi|xbar,pbar><xbar,pbar|psi>
/// by the trapezoid rule and compares it with the direct inner product.
/// Throws GridResolutionError when the half-grid sum differs from the full
/// one by more than grid.tolerance.
IdentityCheck identity_resolution_check(const MomentumWavefunction& phi,
                                        const MomentumWavefunction& psi,
                                        const PhaseSpaceGrid& grid = {});

MomentReport report(const CanonicalState& state, const Scale& scale,
                    Method method = Method::series);

}  // namespace relcoh::canonical
