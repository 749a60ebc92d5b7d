// Copyright 2026 The relcoh Authors
// SPDX-License-Identifier: Apache-2.0
#include "relcoh/wavefunction.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "relcoh/errors.hpp"
#include "relcoh/summation.hpp"

namespace relcoh {

namespace {

std::vector<double> panels(double lo, double hi, double mode, int count) {
  std::vector<double> b;
  b.reserve(count + 2);
  for (int i = 0; i <= count; ++i) b.push_back(lo + (hi - lo) * i / count);
  b.back() = hi;
  if (mode > lo && mode < hi) b.push_back(mode);
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  return b;
}

}  // namespace

const char* to_string(Measure m) { return m == Measure::flat ? "flat" : "invariant"; }

MomentumWavefunction::MomentumWavefunction(Measure measure, Amplitude amplitude,
                                           Amplitude derivative, LogDensity log_density,
                                           double mode, double scale)
    : measure_(measure),
      amplitude_(std::move(amplitude)),
      derivative_(std::move(derivative)),
      log_density_(std::move(log_density)),
      mode_(mode),
      scale_(scale) {
  if (!(scale > 0.0) || !std::isfinite(scale) || !std::isfinite(mode)) {
    throw DomainError("wavefunction mode must be finite and scale positive");
  }
}

double MomentumWavefunction::weight(double p) const {
  return measure_ == Measure::flat ? 1.0 : 1.0 / std::hypot(p, 1.0);
}

quad::Window MomentumWavefunction::support(double drop) const {
  return quad::log_window(log_density_, mode_, scale_, drop);
}

double MomentumWavefunction::integrate(const std::function<double(double)>& f,
                                       const quad::QuadratureConfig& cfg) const {
  const quad::Window w = support(70.0);
  return quad::integrate_breaks(f, panels(w.lo, w.hi, mode_, 16), cfg).value;
}

cdouble MomentumWavefunction::integrate_complex(const std::function<cdouble(double)>& f,
                                               const quad::QuadratureConfig& cfg) const {
  const quad::Window w = support(70.0);
  return quad::integrate_breaks_complex(f, panels(w.lo, w.hi, mode_, 16), cfg).value;
}

double MomentumWavefunction::expectation(const std::function<double(double)>& obs,
                                         const quad::QuadratureConfig& cfg) const {
  return integrate([&](double p) { return obs(p) * std::norm(amplitude_(p)) * weight(p); }, cfg);
}

double MomentumWavefunction::norm(const quad::QuadratureConfig& cfg) const {
  return expectation([](double) { return 1.0; }, cfg);
}

cdouble MomentumWavefunction::inner(const MomentumWavefunction& other,
                                    const quad::QuadratureConfig& cfg) const {
  if (other.measure_ != measure_) throw DomainError("inner product across different measures");
  const quad::Window a = support(70.0);
  const quad::Window b = other.support(70.0);
  const double lo = std::min(a.lo, b.lo);
  const double hi = std::max(a.hi, b.hi);
  std::vector<double> br = panels(lo, hi, mode_, 24);
  if (other.mode_ > lo && other.mode_ < hi) {
    br.push_back(other.mode_);
    std::sort(br.begin(), br.end());
    br.erase(std::unique(br.begin(), br.end()), br.end());
  }
  const auto f = [&](double p) {
    return std::conj(amplitude_(p)) * other.amplitude_(p) * weight(p);
  };
  return quad::integrate_breaks_complex(f, br, cfg).value;
}

MomentumGrid MomentumGrid::around(const MomentumWavefunction& wf, std::size_t points, double drop) {
  if (points < 9) throw DomainError("momentum grid needs at least 9 points");
  const quad::Window w = wf.support(drop);
  return MomentumGrid{w.lo, w.hi, points};
}

std::vector<cdouble> sample(const MomentumWavefunction& wf, const MomentumGrid& grid) {
  std::vector<cdouble> v(grid.points);
  for (std::size_t i = 0; i < grid.points; ++i) v[i] = wf(grid.at(i));
  return v;
}

std::vector<cdouble> grid_derivative(std::span<const cdouble> values, double step) {
  static constexpr double c8[] = {4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0};
  static constexpr double c6[] = {3.0 / 4.0, -3.0 / 20.0, 1.0 / 60.0};
  static constexpr double c4[] = {2.0 / 3.0, -1.0 / 12.0};
  static constexpr double c2[] = {1.0 / 2.0};
  const std::size_t n = values.size();
  if (n < 2) throw DomainError("grid_derivative needs at least two samples");
  std::vector<cdouble> d(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t reach = std::min(i, n - 1 - i);
    const double* c = nullptr;
    std::size_t order = 0;
    if (reach >= 4) {
      c = c8, order = 4;
    } else if (reach == 3) {
      c = c6, order = 3;
    } else if (reach == 2) {
      c = c4, order = 2;
    } else if (reach == 1) {
      c = c2, order = 1;
    }
    if (order == 0) {
      d[i] = i == 0 ? (values[1] - values[0]) / step : (values[n - 1] - values[n - 2]) / step;
      continue;
    }
    cdouble acc = 0.0;
    for (std::size_t k = 1; k <= order; ++k) acc += c[k - 1] * (values[i + k] - values[i - k]);
    d[i] = acc / step;
  }
  return d;
}

cdouble grid_inner(std::span<const cdouble> a, std::span<const cdouble> b,
                   std::span<const double> weight, double step) {
  if (a.size() != b.size() || a.size() != weight.size() || a.empty()) {
    throw DomainError("grid_inner: size mismatch");
  }
  CompensatedSum re, im;
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double t = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
    const cdouble v = std::conj(a[i]) * b[i] * weight[i] * t;
    re.add(v.real());
    im.add(v.imag());
  }
  return cdouble(re.value(), im.value()) * step;
}

std::vector<double> grid_weights(const MomentumWavefunction& wf, const MomentumGrid& grid) {
  std::vector<double> w(grid.points);
  for (std::size_t i = 0; i < grid.points; ++i) w[i] = wf.weight(grid.at(i));
  return w;
}

void check_grid_norm(std::span<const cdouble> values, std::span<const double> weight, double step,
                     double tol) {
  const double norm = grid_inner(values, values, weight, step).real();
  const double dev = std::abs(norm - 1.0);
  if (!(dev <= tol)) {
    std::ostringstream msg;
    msg << "grid does not resolve the wavefunction: norm deviates from 1 by " << dev
        << " (tolerance " << tol << ")";
    throw GridResolutionError(msg.str(), dev);
  }
}

}  // namespace relcoh
