// Copyright 2026 The relcoh Authors
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "relcoh/canonical.hpp"
#include "relcoh/errors.hpp"
#include "relcoh/specfun.hpp"
#include "support/oracle.hpp"

using namespace relcoh;
using namespace relcoh::canonical;

namespace {

const double kInvSqrtPi = 1.0 / std::sqrt(std::numbers::pi);

double energy_oracle(double S, double r) {
  return oracle::line([&](double x) { return std::exp(-(x - S) * (x - S)) * std::hypot(x, r); }, S, 14.0,
                      60000) *
         kInvSqrtPi / r;
}

double velocity_oracle(double S, double r) {
  return oracle::line([&](double x) { return x / std::hypot(x, r) * std::exp(-(x - S) * (x - S)); }, S,
                      14.0, 60000) *
         kInvSqrtPi;
}

}  // namespace

TEST_SUITE("canonical") {

TEST_CASE("labels round trip through z") {
  const CanonicalState s{1.25, -0.75};
  const cdouble z = s.z();
  CHECK(z.real() == doctest::Approx(1.25 / std::sqrt(2.0)));
  const CanonicalState back = CanonicalState::from_z(z);
  CHECK(back.xbar == doctest::Approx(1.25).epsilon(1e-15));
  CHECK(back.pbar == doctest::Approx(-0.75).epsilon(1e-15));
}

TEST_CASE("wavefunction value, norm and first moment") {
  const auto wf = wavefunction({0.0, 0.0});
  CHECK(wf(0.0).real() == doctest::Approx(std::pow(std::numbers::pi, -0.25)).epsilon(1e-15));
  CHECK(wf(0.0).imag() == 0.0);
  for (const CanonicalState st : {CanonicalState{0, 0}, CanonicalState{3, -2}, CanonicalState{-7, 60}}) {
    const auto w = wavefunction(st);
    CHECK(std::abs(w.norm() - 1.0) < 1e-10);
  }
  const auto w = wavefunction({0.4, 1.3});
  CHECK(w.expectation([](double s) { return s; }) == doctest::Approx(1.3).epsilon(1e-12));
  // The stored derivative agrees with a difference quotient.
  const double h = 1e-5;
  const cdouble fd = (w(0.7 + h) - w(0.7 - h)) / (2 * h);
  CHECK(std::abs(fd - w.derivative(0.7)) < 1e-9);
}

TEST_CASE("overlap closed form and quadrature") {
  CHECK(std::abs(overlap({1, 2}, {1, 2}) - 1.0) < 1e-15);
  const CanonicalState zero{0, 0};
  const CanonicalState one = CanonicalState::from_z(1.0);
  CHECK(std::abs(overlap(zero, one) - std::exp(-0.5)) < 1e-15);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int i = 0; i < 20; ++i) {
    const CanonicalState a{u(rng), u(rng)}, b{u(rng), u(rng)};
    const cdouble o = overlap(a, b);
    CHECK(std::abs(o - overlap_quadrature(a, b)) < 1e-10);
    CHECK(std::norm(o) == doctest::Approx(std::exp(-std::norm(a.z() - b.z()))).epsilon(1e-12));
  }
}

TEST_CASE("rest energy deviation at r = 5 is about one percent") {
  const double dev = rest_energy_deviation(5.0);
  CHECK(dev >= 0.005);
  CHECK(dev <= 0.015);
  CHECK(mean_energy_massive(0.0, 5.0) ==
        doctest::Approx(specfun::confluent_u(-0.5, 0.0, 25.0) / 5.0).epsilon(1e-14));
}

TEST_CASE("series and quadrature agree, and match the oracle") {
  for (double r : {1.0, 2.0, 5.0, 8.0}) {
    for (double S : {0.0, 0.5, 1.0, 2.0, 4.0}) {
      CAPTURE(r);
      CAPTURE(S);
      const double es = mean_energy_massive(S, r, Method::series);
      const double eq = mean_energy_massive(S, r, Method::quadrature);
      CHECK(oracle::rel(es, eq) < 1e-8);
      CHECK(oracle::rel(eq, energy_oracle(S, r)) < 1e-10);
      const double vs = mean_velocity(S, r, Method::series);
      const double vq = mean_velocity(S, r, Method::quadrature);
      if (S == 0.0) {
        CHECK(vs == 0.0);
        CHECK(vq == 0.0);
      } else {
        CHECK(oracle::rel(vs, vq) < 1e-8);
        CHECK(oracle::rel(vq, velocity_oracle(S, r)) < 1e-10);
      }
    }
  }
  CHECK(oracle::rel(mean_velocity(1.0, 3.0, Method::quadrature), velocity_oracle(1.0, 3.0)) < 1e-10);
}

TEST_CASE("energy lower bound and parity") {
  for (double r : {0.5, 1.0, 5.0}) {
    for (double S : {0.0, 0.3, 2.0, 6.0}) {
      const double e = mean_energy_massive(S, r);
      CHECK(e >= 1.0);
      CHECK(e >= S / r);
      CHECK(mean_energy_massive(-S, r) == e);
      CHECK(mean_velocity(-S, r) == -mean_velocity(S, r));
      CHECK(std::abs(mean_velocity(S, r)) < 1.0);
    }
  }
}

TEST_CASE("velocity is the momentum derivative of the energy") {
  for (double r : {1.0, 3.0, 8.0}) {
    for (double S : {0.3, 1.0, 2.5}) {
      // pbar in units of mc is S/r, so dE/dpbar = r dE/dS.
      const double h = 1e-3;
      const double d = r * (-mean_energy_massive(S + 2 * h, r) + 8 * mean_energy_massive(S + h, r) -
                            8 * mean_energy_massive(S - h, r) + mean_energy_massive(S - 2 * h, r)) /
                       (12 * h);
      CHECK(std::abs(d - mean_velocity(S, r)) < 1e-6);
    }
  }
}

TEST_CASE("classical velocity at r = 8") {
  for (double S : {1.0, 4.0, 8.0, 12.0}) {
    const double p = S / 8.0;
    const double classical = p / std::hypot(p, 1.0);
    CAPTURE(S);
    CHECK(oracle::rel(mean_velocity(S, 8.0), classical) < 0.015);
  }
}

TEST_CASE("nonrelativistic limit") {
  // Holds while the momentum stays nonrelativistic, pbar/r << 1.
  const double r = 50.0;
  for (double S : {0.0, 0.5, 1.0, 2.0}) {
    const double kinetic = mean_energy_massive(S, r) - 1.0;
    const double want = 0.5 * (S / r) * (S / r) + 1.0 / (4.0 * r * r);
    CHECK(oracle::rel(kinetic, want) < 1e-3);
  }
}

TEST_CASE("rest deviation decreases with r and the threshold scan inverts it") {
  double last = 1.0;
  for (double r = 0.5; r <= 20.0; r += 0.5) {
    const double d = rest_energy_deviation(r);
    CHECK(d < last);
    last = d;
  }
  const double r01 = threshold_r(0.01);
  CHECK(rest_energy_deviation(r01) <= 0.01);
  CHECK(rest_energy_deviation(r01 - 2e-3) > 0.01);
  CHECK_THROWS_AS(threshold_r(-1.0), DomainError);
}

TEST_CASE("massless energy") {
  CHECK(mean_energy_massless(0.0) == doctest::Approx(0.5641895835477563).epsilon(1e-15));
  const double s = 2.0 * std::numbers::pi * 0.21;
  CHECK(massless_energy_deviation(s) < 0.02);
  double last_gap = 1e300;
  for (double x = -5.0; x <= 5.0; x += 0.25) {
    CHECK(mean_energy_massless(x) == mean_energy_massless(-x));
    CHECK(mean_energy_massless(x) >= std::abs(x));
    CHECK(std::abs(mean_energy_massless(x) - mean_energy_massless_quadrature(x)) < 1e-10);
    // Split at the kink of |t|.
    const auto f = [&](double t) { return std::abs(t) * std::exp(-(t - x) * (t - x)); };
    const double oracle_value =
        (oracle::simpson(f, x - 14.0 - 1.0, 0.0, 40000) + oracle::simpson(f, 0.0, x + 15.0, 40000)) *
        kInvSqrtPi;
    CHECK(std::abs(mean_energy_massless(x) - oracle_value) < 1e-8);
    if (x >= 0.0) {
      const double gap = mean_energy_massless(x) - x;
      CHECK(gap < last_gap);
      last_gap = gap;
    }
  }
}

TEST_CASE("uncertainty product is state independent") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-10, 10);
  for (int i = 0; i < 10; ++i) {
    const Uncertainty q = uncertainty_product({u(rng), u(rng)});
    CHECK(std::abs(q.var_x - 0.5) < 1e-9);
    CHECK(std::abs(q.var_p - 0.5) < 1e-9);
    CHECK(std::abs(q.product - 0.25) < 1e-9);
  }
  const Uncertainty q = uncertainty_product({0.0, 7.0});
  CHECK(std::abs(q.product - 0.25) < 1e-9);
}

TEST_CASE("large momenta recenter the quadrature") {
  const double S = 80.0, r = 2.0;
  CHECK(oracle::rel(mean_energy_massive(S, r, Method::quadrature), energy_oracle(S, r)) < 1e-10);
}

TEST_CASE("resolution of identity") {
  const auto ground = wavefunction({0, 0});
  const IdentityCheck c = identity_resolution_check(ground, ground);
  CHECK(std::abs(c.reconstructed - 1.0) < 1e-6);
  CHECK(c.error < 1e-6);

  const auto a = wavefunction({0.8, -0.5});
  const auto b = wavefunction({-0.3, 1.1});
  const IdentityCheck d = identity_resolution_check(a, b);
  CHECK(d.error < 1e-6);
  CHECK(std::abs(d.direct - overlap({0.8, -0.5}, {-0.3, 1.1})) < 1e-10);

  PhaseSpaceGrid coarse;
  coarse.x_points = coarse.p_points = 9;
  CHECK_THROWS_AS(identity_resolution_check(a, b, coarse), GridResolutionError);
  coarse.x_points = 10;
  CHECK_THROWS_AS(identity_resolution_check(a, b, coarse), DomainError);
}

TEST_CASE("reports") {
  const MomentReport m = report({0.0, 0.0}, Scale::massive(5.0));
  CHECK(m.energy.value == doctest::Approx(1.0098569).epsilon(1e-6));
  CHECK(m.energy.method == Method::series);
  CHECK(m.product_xp.value == doctest::Approx(0.25).epsilon(1e-9));
  CHECK(m.product_xp.value >= 0.25 - 1e-12);
  const MomentReport z = report({0.0, 2.0}, Scale::massless());
  CHECK(z.energy.value == doctest::Approx(mean_energy_massless(2.0)));
  CHECK_FALSE(z.velocity.present());
  CHECK_THROWS_AS(Scale::massive(0.0), DomainError);
  CHECK_THROWS_AS(mean_energy_massive(1.0, -2.0), DomainError);
}

}  // TEST_SUITE
