// Copyright 2026 The relcoh Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "relcoh/quad.hpp"

namespace relcoh {

using cdouble = std::complex<double>;

/// Scalar product convention of a momentum representation.
///
/// flat:      <f|g> = int f*(p) g(p) dp
/// invariant: <f|g> = int f*(p) g(p) dp / sqrt(p^2 + 1)   (p in units of mc)
enum class Measure { flat, invariant };

const char* to_string(Measure m);

/// Closed-form evaluator of a normalized momentum-space amplitude.
///
/// The momentum variable is dimensionless: sigma*p/hbar for canonical states,
/// p/(mc) for the Lorentzian and Poincare families. Besides the amplitude the
/// evaluator carries its analytic p-derivative and the log of the probability
/// density (|phi|^2 times the measure weight), which fixes the support window
/// used by quadrature and grids.
class MomentumWavefunction {
 public:
  using Amplitude = std::function<cdouble(double)>;
  using LogDensity = std::function<double(double)>;

  MomentumWavefunction(Measure measure, Amplitude amplitude, Amplitude derivative,
                       LogDensity log_density, double mode, double scale);

  cdouble operator()(double p) const { return amplitude_(p); }
  cdouble derivative(double p) const { return derivative_(p); }
  double log_density(double p) const { return log_density_(p); }
  /// Measure weight: 1 (flat) or 1/sqrt(p^2+1) (invariant).
  double weight(double p) const;
  Measure measure() const { return measure_; }
  double mode() const { return mode_; }
  double scale() const { return scale_; }

  /// Interval outside which the density is below e^-drop of its peak.
  quad::Window support(double drop = 60.0) const;

  /// int f(p) dp over the support window, started from 16 equal panels plus
  /// the mode. The caller supplies the density and measure factors.
  double integrate(const std::function<double(double)>& f,
                   const quad::QuadratureConfig& cfg = tight()) const;
  cdouble integrate_complex(const std::function<cdouble(double)>& f,
                            const quad::QuadratureConfig& cfg = tight()) const;

  /// int obs(p) |phi(p)|^2 dmu(p) by adaptive quadrature over support().
  double expectation(const std::function<double(double)>& obs,
                     const quad::QuadratureConfig& cfg = tight()) const;
  double norm(const quad::QuadratureConfig& cfg = tight()) const;
  /// <this|other>, quadrature over the union of both supports. Both
  /// wavefunctions must share the same measure.
  cdouble inner(const MomentumWavefunction& other,
                const quad::QuadratureConfig& cfg = tight()) const;

  static quad::QuadratureConfig tight() {
    quad::QuadratureConfig c;
    c.rel_tol = 1e-12;
    c.abs_tol = 1e-15;
    c.max_subdivisions = 4000;
    return c;
  }

 private:
  Measure measure_;
  Amplitude amplitude_;
  Amplitude derivative_;
  LogDensity log_density_;
  double mode_;
  double scale_;
};

/// Uniform momentum grid [lo, hi] with `points` nodes.
struct MomentumGrid {
  double lo = -1.0;
  double hi = 1.0;
  std::size_t points = 2001;

  double step() const { return (hi - lo) / static_cast<double>(points - 1); }
  double at(std::size_t i) const { return lo + step() * static_cast<double>(i); }

  /// Grid spanning the support of `wf` (density above e^-drop of its peak).
  static MomentumGrid around(const MomentumWavefunction& wf, std::size_t points,
                             double drop = 70.0);
};

/// Samples of a wavefunction on a grid.
std::vector<cdouble> sample(const MomentumWavefunction& wf, const MomentumGrid& grid);

/// d/dp by eighth-order central differences, lower order near the edges.
std::vector<cdouble> grid_derivative(std::span<const cdouble> values, double step);

/// Trapezoid sum of conj(a) * b * weight over a uniform grid.
cdouble grid_inner(std::span<const cdouble> a, std::span<const cdouble> b,
                   std::span<const double> weight, double step);

/// Measure weights of `wf` on `grid`.
std::vector<double> grid_weights(const MomentumWavefunction& wf, const MomentumGrid& grid);

/// Throws GridResolutionError when the grid norm of `values` deviates from 1
/// by more than `tol`.
void check_grid_norm(std::span<const cdouble> values, std::span<const double> weight, double step,
                     double tol);

}  // namespace relcoh
