// Copyright 2026 The relcoh Authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "relcoh/errors.hpp"
#include "relcoh/lorentzian.hpp"
#include "relcoh/specfun.hpp"
#include "support/oracle.hpp"

using namespace relcoh;
using namespace relcoh::lorentzian;

namespace {

// Moments of exp(-2 r^2 E + 2 r^2 beta p) by the trapezoid rule, normalized
// by the same sum; no Bessel functions involved.
struct DensityOracle {
  double beta, r;

  double log_density(double p) const {
    const double r2 = r * r;
    return -2.0 * r2 * (std::hypot(p, 1.0) - beta * p);
  }

  template <class F>
  double moment(const F& f) const {
    const double gamma = 1.0 / std::sqrt(1.0 - beta * beta);
    const double mode = gamma * beta;
    const double peak = log_density(mode);
    double lo = mode, hi = mode, step = 1e-3;
    while (log_density(lo) - peak > -90.0) lo -= (step *= 1.3);
    step = 1e-3;
    while (log_density(hi) - peak > -90.0) hi += (step *= 1.3);
    const int n = 400000;
    const auto w = [&](double p) { return std::exp(log_density(p) - peak); };
    const double norm = oracle::trapezoid<double>(w, lo, hi, n);
    return oracle::trapezoid<double>([&](double p) { return f(p) * w(p); }, lo, hi, n) / norm;
  }
};

const std::vector<double> kBetas = {0.0, 0.2, -0.2, 0.5, -0.5, 0.8, -0.8, 0.95, -0.95};

}  // namespace

TEST_SUITE("lorentzian") {

TEST_CASE("labels are validated") {
  CHECK_THROWS_AS(LorentzianState::make(0.0, 1.0, 8.0), DomainError);
  CHECK_THROWS_AS(LorentzianState::make(0.0, -1.2, 8.0), DomainError);
  CHECK_THROWS_AS(LorentzianState::make(0.0, 0.5, 0.0), DomainError);
  CHECK_THROWS_AS(LorentzianState::make(0.0, 0.5, 8.0, Regime::massless), DomainError);
  CHECK_THROWS_AS(mean_energy(1.0, 2.0), DomainError);
  CHECK_THROWS_AS(commutator_average(-1.0, 2.0), DomainError);
  const LorentzianState s = LorentzianState::make(1.5, 0.6, 8.0);
  const cdouble z = s.zeta();
  CHECK(z.real() == doctest::Approx(1.5 / std::sqrt(2.0)));
  CHECK(z.imag() == doctest::Approx(8.0 * 0.6 / std::sqrt(2.0)));
  // |zeta - zeta*| < sqrt(2) r
  CHECK(std::abs(z - std::conj(z)) < std::sqrt(2.0) * s.r);
}

TEST_CASE("normalization constant") {
  const LorentzianState s{0.0, 0.0, 1.0};
  const double k1_2 = std::exp(-2.0) * oracle::scaled_k(1, 2.0);
  CHECK(oracle::rel(s.norm_const() * s.norm_const(), 1.0 / (2.0 * k1_2)) < 1e-12);
  for (double beta : {0.0, 0.5, -0.9, 0.999}) {
    for (double r : {1.0, 2.0, 8.0}) {
      CAPTURE(beta);
      CAPTURE(r);
      CHECK(std::abs(wavefunction({0.3, beta, r}).norm() - 1.0) < 1e-10);
    }
  }
  CHECK(bessel_argument(0.999, 8.0) == doctest::Approx(5.72).epsilon(1e-3));
}

TEST_CASE("beta = 0 is real up to the position phase") {
  const LorentzianState s{2.0, 0.0, 3.0};
  const auto wf = wavefunction(s);
  for (double p = -2.0; p <= 2.0; p += 0.1) {
    const cdouble v = wf(p) * std::exp(cdouble(0.0, s.r * s.xbar * p));
    CHECK(std::abs(v.imag()) < 1e-15 * std::abs(v) + 1e-300);
    CHECK(v.real() > 0.0);
  }
}

TEST_CASE("eigenvector of the complexifier") {
  CHECK(eigen_residual({0.0, 0.0, 2.0}) < 1e-6);
  CHECK(eigen_residual({1.5, 0.6, 8.0}) < 1e-6);
  CHECK(eigen_residual({-0.7, -0.9, 1.0}) < 1e-6);
  // A label that does not match the state leaves a finite residual.
  const LorentzianState s{1.5, 0.6, 8.0};
  const MomentumWavefunction wf = wavefunction(s);
  const MomentumGrid g = MomentumGrid::around(wf, 2001);
  CHECK(eigen_residual(s, g) < 1e-6);
  // Halving the spacing cuts the residual at least fourfold until the floor.
  const LorentzianState t{0.5, 0.4, 3.0};
  const auto base = MomentumGrid::around(wavefunction(t), 101);
  double coarse = eigen_residual(t, base);
  for (std::size_t pts = 201; pts <= 801; pts = 2 * pts - 1) {
    const double fine = eigen_residual(t, MomentumGrid{base.lo, base.hi, pts});
    CAPTURE(pts);
    CHECK((fine <= coarse / 4.0 || fine < 1e-10));
    coarse = fine;
  }
  CHECK_THROWS_AS(eigen_residual(t, MomentumGrid{base.lo, base.lo + 0.2 * (base.hi - base.lo), 201}),
                  GridResolutionError);
}

TEST_CASE("brace factor equals <E^-3> / (2 r^2)") {
  for (double r : {1.0, 2.0, 8.0}) {
    for (double beta : kBetas) {
      const DensityOracle o{beta, r};
      const double want = o.moment([](double p) { return std::pow(std::hypot(p, 1.0), -3.0); }) / (2 * r * r);
      CAPTURE(r);
      CAPTURE(beta);
      CHECK(oracle::rel(brace_factor(beta, r), want) < 1e-8);
      CHECK(oracle::rel(brace_factor(beta, r), brace_factor_quadrature(beta, r)) < 1e-9);
      CHECK(commutator_average(beta, r) > 0.0);
    }
  }
}

TEST_CASE("commutator at beta = 0, r = 1") {
  // 2 {1 - (2 / K1(2)) int_1^inf K0(2 xi) dxi}, integral by an independent trapezoid.
  const double integral = oracle::simpson(
      [](double xi) { return std::exp(-2.0 * xi) * oracle::scaled_k(0, 2.0 * xi, 4000); }, 1.0, 25.0, 8000);
  const double want = 2.0 * (1.0 - 2.0 / (std::exp(-2.0) * oracle::scaled_k(1, 2.0)) * integral);
  CHECK(oracle::rel(commutator_average(0.0, 1.0), want) < 1e-9);
}

TEST_CASE("Robertson saturation") {
  for (double r : {1.0, 2.0, 8.0}) {
    for (double beta : kBetas) {
      const VarianceXV v = variances_xv(beta, r);
      const double c = commutator_average(beta, r);
      // |<[x,v]>|^2 / 4 in (σ c)^2 is (c r)^2 / 4.
      CHECK(oracle::rel(v.product, 0.25 * c * c * r * r) < 1e-10);
      CHECK(v.var_x == doctest::Approx(r * r * v.var_v).epsilon(1e-14));
    }
  }
}

TEST_CASE("grid operators reproduce the closed forms") {
  const LorentzianState s{0.9, 0.4, 3.0};
  const GridObservables g = grid_observables(s);
  const VarianceXV v = variances_xv(0.4, 3.0);
  CHECK(std::abs(g.mean_x - 0.9) < 1e-8);
  CHECK(std::abs(g.mean_v - 0.4) < 1e-8);
  CHECK(oracle::rel(g.var_x, v.var_x) < 1e-6);
  CHECK(oracle::rel(g.var_v, v.var_v) < 1e-6);
  CHECK(oracle::rel(g.commutator, commutator_average(0.4, 3.0)) < 1e-6);
  for (double beta : {0.0, 0.4, 0.8}) {
    for (double r : {2.0, 8.0}) {
      const GridObservables h = grid_observables({0.0, beta, r});
      const double lhs = h.var_x * h.var_v;
      const double rhs = 0.25 * h.commutator * h.commutator * r * r;
      CAPTURE(beta);
      CAPTURE(r);
      CHECK(oracle::rel(lhs, rhs) < 1e-6);
    }
  }
}

TEST_CASE("moments match quadrature oracles") {
  for (double r : {1.0, 2.0, 8.0}) {
    for (double beta : kBetas) {
      const DensityOracle o{beta, r};
      const double p1 = o.moment([](double p) { return p; });
      const double e1 = o.moment([](double p) { return std::hypot(p, 1.0); });
      const double var = o.moment([&](double p) { return (p - p1) * (p - p1); });
      CAPTURE(r);
      CAPTURE(beta);
      if (beta == 0.0) {
        CHECK(mean_momentum(beta, r) == 0.0);
      } else {
        CHECK(oracle::rel(mean_momentum(beta, r), p1) < 1e-8);
        CHECK(oracle::rel(mean_momentum_quadrature(beta, r), p1) < 1e-8);
      }
      CHECK(oracle::rel(mean_energy(beta, r), e1) < 1e-8);
      CHECK(oracle::rel(mean_energy_quadrature(beta, r), e1) < 1e-8);
      CHECK(oracle::rel(momentum_variance(beta, r), var) < 1e-7);
      CHECK(oracle::rel(momentum_variance_quadrature(beta, r), var) < 1e-7);
      CHECK(mean_momentum(-beta, r) == -mean_momentum(beta, r));
      CHECK(mean_energy(-beta, r) == mean_energy(beta, r));
      CHECK(momentum_variance(beta, r) > 0.0);
    }
  }
}

TEST_CASE("energy-momentum relation of the averages") {
  for (double r : {1.0, 2.0, 8.0}) {
    for (double beta : kBetas) {
      const double w = bessel_argument(beta, r);
      const double ratio = specfun::bessel_k_scaled(2, w) / specfun::bessel_k_scaled(1, w);
      const double e = mean_energy(beta, r) + 0.5 / (r * r);
      const double p = mean_momentum(beta, r);
      CHECK(oracle::rel(e * e - p * p, ratio * ratio) < 1e-12);
    }
  }
}

TEST_CASE("momentum variance at beta = 0") {
  for (double r : {0.5, 1.0, 8.0}) {
    const double w = 2 * r * r;
    const double want = 0.5 / (r * r) * specfun::bessel_k_scaled(2, w) / specfun::bessel_k_scaled(1, w);
    CHECK(oracle::rel(momentum_variance(0.0, r), want) < 1e-14);
  }
}

TEST_CASE("classical limits at r = 8") {
  CHECK(oracle::rel(mean_momentum(0.5, 8.0), 0.5 / std::sqrt(0.75)) < 0.015);
  CHECK(oracle::rel(mean_energy(0.6, 8.0), 1.25) < 0.015);
  const double w = 128.0;
  const double want = specfun::bessel_k_scaled(2, w) / specfun::bessel_k_scaled(1, w) - 1.0 / 128.0;
  CHECK(mean_energy(0.0, 8.0) == doctest::Approx(want).epsilon(1e-15));
  CHECK(mean_energy(0.0, 8.0) == doctest::Approx(1.004).epsilon(1e-3));
  // Hankel asymptotics: K2/K1 = 1 + 3/(2w) + 3/(8w^2) - 3/(8w^3) + ...
  CHECK(std::abs(mean_energy(0.0, 8.0) - (1.0 + 1.5 / w + 0.375 / (w * w) - 0.375 / (w * w * w) - 1.0 / 128.0)) < 1e-6);
}

TEST_CASE("figure shapes at r = 8") {
  const double r = 8.0;
  double last_p = 0.0, last_prod = 0.0;
  for (int i = 0; i <= 95; ++i) {
    const double beta = 0.01 * i;
    const VarianceXV v = variances_xv(beta, r);
    const double var_p = r * r * momentum_variance(beta, r);
    CHECK(v.var_x < 0.5);
    CHECK(v.var_x == doctest::Approx(variances_xv(-beta, r).var_x));
    if (i > 0) {
      CHECK(var_p > last_p);
      CHECK(v.var_x * var_p > last_prod);
    }
    last_p = var_p;
    last_prod = v.var_x * var_p;
  }
}

TEST_CASE("canonical values in the nonrelativistic limit") {
  const double r = 30.0;
  for (double s : {0.0, 0.5, 1.0}) {
    // Mean momentum s in units of ħ/σ.
    const double beta = (s / r) / std::hypot(s / r, 1.0);
    const VarianceXV v = variances_xv(beta, r);
    CAPTURE(s);
    CHECK(std::abs(v.var_x - 0.5) < 5e-3);
    CHECK(std::abs(r * r * momentum_variance(beta, r) - 0.5) < 5e-3);
  }
}

TEST_CASE("overlaps") {
  const LorentzianState a{0.3, 0.4, 2.0}, b{-0.5, -0.2, 2.0};
  CHECK(std::abs(overlap(a, a) - 1.0) < 1e-10);
  CHECK(std::abs(overlap(a, b) - std::conj(overlap(b, a))) < 1e-12);
  for (double b1 : {-0.9, -0.3, 0.0, 0.5, 0.95}) {
    for (double r : {1.0, 2.0, 8.0}) {
      const LorentzianState x{0.7, 0.3, r}, y{0.7, b1, r};
      const cdouble q = overlap(x, y);
      CAPTURE(b1);
      CAPTURE(r);
      CHECK(std::abs(q.imag()) < 1e-12);
      CHECK(oracle::rel(overlap_real_slice(x, y), q.real()) < 1e-9);
    }
  }
  double last = 1.0 + 1e-12;
  for (double d = 0.0; d <= 3.0; d += 0.5) {
    const double m = std::abs(overlap({0.0, 0.0, 2.0}, {d, 0.0, 2.0}));
    CHECK(m < last);
    last = m;
  }
  CHECK_THROWS_AS(overlap_real_slice(a, b), DomainError);
  CHECK_THROWS_AS(overlap(a, {0.3, 0.4, 3.0}), DomainError);
}

TEST_CASE("report") {
  const MomentReport rep = report({0.0, 0.6, 8.0});
  CHECK(rep.family == "lorentzian");
  CHECK(rep.velocity.value == 0.6);
  CHECK(rep.energy.value == doctest::Approx(mean_energy(0.6, 8.0)));
  CHECK(rep.product_xv.present());
  CHECK(rep.product_xp.value >= 0.25);
}

}  // TEST_SUITE
