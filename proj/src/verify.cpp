// Copyright 2026 The relcoh Authors
// SPDX-License-Identifier: Apache-2.0
#include "relcoh/verify.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "relcoh/canonical.hpp"
#include "relcoh/errors.hpp"
#include "relcoh/lorentzian.hpp"
#include "relcoh/poincare.hpp"
#include "relcoh/quad.hpp"
#include "relcoh/specfun.hpp"

namespace relcoh::verify {

namespace {

using specfun::bessel_k_scaled;
using specfun::confluent_u;

struct Measured {
  double value;
  std::string detail;
};

struct Check {
  const char* suite;
  const char* name;
  ToleranceKind kind;
  double tolerance;
  std::function<Measured()> measure;
};

double rel(double got, double want) { return std::abs(got - want) / std::max(std::abs(want), 1e-300); }

// Tracks the worst residual over a grid and where it occurred.
class Worst {
 public:
  void add(double residual, const std::string& where) {
    if (!(residual <= value_)) {
      value_ = residual;
      where_ = where;
      if (std::isnan(residual)) nan_ = true;
    }
  }
  Measured result() const {
    return {nan_ ? std::numeric_limits<double>::quiet_NaN() : value_, where_.empty() ? "" : "worst at " + where_};
  }

 private:
  double value_ = 0.0;
  bool nan_ = false;
  std::string where_;
};

std::string at(std::initializer_list<std::pair<const char*, double>> args) {
  std::ostringstream out;
  bool first = true;
  for (const auto& [k, v] : args) {
    out << (first ? "" : ", ") << k << "=" << v;
    first = false;
  }
  return out.str();
}

quad::QuadratureConfig oracle_cfg() {
  quad::QuadratureConfig c;
  c.rel_tol = 1e-13;
  c.abs_tol = 1e-300;
  c.max_subdivisions = 4000;
  return c;
}

// --- specfun ---------------------------------------------------------------

std::vector<Check> specfun_checks() {
  std::vector<Check> c;
  c.push_back({"specfun", "bessel.recurrence", ToleranceKind::relative, 1e-12, [] {
                 Worst w;
                 for (int nu : {1, 2, 3, 5}) {
                   for (double x : {1e-3, 0.1, 1.0, 2.0, 5.0, 19.9, 20.1, 128.0, 1e3, 1e4}) {
                     const double lhs = bessel_k_scaled(nu + 1, x);
                     const double rhs = bessel_k_scaled(nu - 1, x) + 2.0 * nu / x * bessel_k_scaled(nu, x);
                     w.add(rel(lhs, rhs), at({{"nu", nu}, {"x", x}}));
                   }
                 }
                 return w.result();
               }});
  c.push_back({"specfun", "bessel.tabulated", ToleranceKind::relative, 1e-12, [] {
                 Worst w;
                 const struct {
                   int nu;
                   double x, k;
                 } table[] = {{0, 1.0, 0.42102443824070834},
                              {1, 1.0, 0.60190723019723457},
                              {0, 2.0, 0.11389387274953344},
                              {1, 2.0, 0.13986588181652243}};
                 for (const auto& t : table) {
                   w.add(rel(bessel_k_scaled(t.nu, t.x) * std::exp(-t.x), t.k), at({{"nu", t.nu}, {"x", t.x}}));
                 }
                 return w.result();
               }});
  c.push_back({"specfun", "bessel.integral", ToleranceKind::relative, 1e-10, [] {
                 Worst w;
                 for (int nu : {0, 1, 2}) {
                   for (double x : {0.05, 0.7, 3.0, 25.0, 128.0}) {
                     const auto f = [=](double t) { return std::exp(-x * (std::cosh(t) - 1.0)) * std::cosh(nu * t); };
                     const double want = quad::integrate_half_line(f, 0.0, oracle_cfg()).value;
                     w.add(rel(bessel_k_scaled(nu, x), want), at({{"nu", nu}, {"x", x}}));
                   }
                 }
                 return w.result();
               }});
  c.push_back({"specfun", "confluent_u.reflection", ToleranceKind::relative, 1e-9, [] {
                 Worst w;
                 for (double z : {0.5, 1.0, 5.0, 50.0}) {
                   for (int n : {0, 1, 2, 5}) {
                     for (double a : {-0.5, 0.5}) {
                       const double b = -n;
                       const double lhs = confluent_u(a, b, z);
                       const double rhs = std::pow(z, 1.0 - b) * confluent_u(a - b + 1.0, 2.0 - b, z);
                       w.add(rel(lhs, rhs), at({{"a", a}, {"n", n}, {"z", z}}));
                     }
                   }
                 }
                 return w.result();
               }});
  c.push_back({"specfun", "confluent_u.recurrence", ToleranceKind::relative, 1e-10, [] {
                 Worst w;
                 for (double z : {0.1, 0.5, 1.0, 5.0, 50.0, 200.0}) {
                   const double lhs = confluent_u(-0.5, -1.0, z);
                   const double rhs = confluent_u(-0.5, 0.0, z) + 0.5 * confluent_u(0.5, 0.0, z);
                   w.add(rel(lhs, rhs), at({{"z", z}}));
                 }
                 for (double z : {0.3, 7.0}) w.add(std::abs(confluent_u(0.0, 1.7, z) - 1.0), at({{"a", 0}, {"z", z}}));
                 return w.result();
               }});
  c.push_back({"specfun", "confluent_u.derivative", ToleranceKind::bound, 1e-5, [] {
                 Worst w;
                 const double a = -0.5, b = 0.0;
                 for (double z : {1.0, 10.0}) {
                   const double h = 1e-3 * z;
                   const auto g = [&](double t) { return std::pow(t, b - 1.0) * confluent_u(a, b, t); };
                   const double d1 = (g(z - 2 * h) - 8 * g(z - h) + 8 * g(z + h) - g(z + 2 * h)) / (12 * h);
                   const double d2 =
                       (-g(z - 2 * h) + 16 * g(z - h) - 30 * g(z) + 16 * g(z + h) - g(z + 2 * h)) / (12 * h * h);
                   const double w1 = -specfun::pochhammer(a - b + 1.0, 1) * std::pow(z, b - 2.0) * confluent_u(a, b - 1.0, z);
                   const double w2 = specfun::pochhammer(a - b + 1.0, 2) * std::pow(z, b - 3.0) * confluent_u(a, b - 2.0, z);
                   w.add(rel(d1, w1), at({{"n", 1}, {"z", z}}));
                   w.add(rel(d2, w2), at({{"n", 2}, {"z", z}}));
                 }
                 return w.result();
               }});
  c.push_back({"specfun", "quad.gaussian_sqrt", ToleranceKind::relative, 1e-8, [] {
                 Worst w;
                 for (double beta : {0.5, 1.0, 3.0}) {
                   for (double gamma : {0.05, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0, 30.0, 64.0}) {
                     const auto f = [=](double x) { return std::exp(-beta * x * x) * std::sqrt(x * x + gamma); };
                     const double got = quad::integrate_line(f, oracle_cfg(), {0.0, 1.0 / std::sqrt(beta)}).value;
                     const double want = std::sqrt(std::numbers::pi) / beta * confluent_u(-0.5, 0.0, beta * gamma);
                     w.add(rel(got, want), at({{"beta", beta}, {"gamma", gamma}}));
                   }
                 }
                 return w.result();
               }});
  c.push_back({"specfun", "quad.abs_gaussian_erf", ToleranceKind::relative, 1e-8, [] {
                 Worst w;
                 for (int i = 0; i < 27; ++i) {
                   const double s = -4.0 + 8.0 * i / 26.0;
                   const auto f = [=](double x) { return std::abs(x) * std::exp(-(x - s) * (x - s)); };
                   const double got = quad::integrate_breaks(f, {s - 40.0, std::min(0.0, s), std::max(0.0, s), s + 40.0},
                                                             oracle_cfg())
                                          .value;
                   const double want = s * std::sqrt(std::numbers::pi) * specfun::erf(s) + std::exp(-s * s);
                   w.add(rel(got, want), at({{"s", s}}));
                 }
                 return w.result();
               }});
  const auto bessel_grid = [](bool inverse_sqrt) {
    Worst w;
    for (double mu : {1.0, 2.0, 4.0}) {
      for (double nu : {0.5, 1.0, 2.0}) {
        for (double frac : {0.0, 0.4, 0.8}) {
          const double rho = frac * mu;
          const auto f = [=](double x) {
            const double e = std::hypot(x, nu);
            return std::exp(-mu * e + rho * x) * (1.0 + std::exp(-2.0 * rho * x)) / 2.0 / (inverse_sqrt ? e : 1.0);
          };
          const double got = quad::integrate_half_line(f, 0.0, oracle_cfg(), 1.0 / (mu - rho)).value;
          const double k = std::sqrt((mu - rho) * (mu + rho));
          const double arg = nu * k;
          const double want = inverse_sqrt ? std::exp(-arg) * bessel_k_scaled(0, arg)
                                           : mu * nu / k * std::exp(-arg) * bessel_k_scaled(1, arg);
          w.add(rel(got, want), at({{"mu", mu}, {"nu", nu}, {"rho", rho}}));
        }
      }
    }
    return w.result();
  };
  c.push_back({"specfun", "quad.bessel_k1_integral", ToleranceKind::relative, 1e-8, [=] { return bessel_grid(false); }});
  c.push_back({"specfun", "quad.bessel_k0_integral", ToleranceKind::relative, 1e-8, [=] { return bessel_grid(true); }});
  c.push_back({"specfun", "erf.integral", ToleranceKind::absolute, 1e-12, [] {
                 Worst w;
                 for (int i = 0; i < 20; ++i) {
                   const double x = -4.0 + 8.0 * i / 19.0;
                   const auto f = [](double t) { return std::exp(-t * t); };
                   const double want =
                       (x == 0.0 ? 0.0 : quad::integrate_interval(f, 0.0, x, oracle_cfg()).value) * 2.0 /
                       std::sqrt(std::numbers::pi);
                   w.add(std::abs(specfun::erf(x) - want), at({{"x", x}}));
                 }
                 return w.result();
               }});
  c.push_back({"specfun", "erf.odd", ToleranceKind::bound, 0.0, [] {
                 Worst w;
                 for (double x = 0.0; x <= 6.0; x += 0.37) w.add(std::abs(specfun::erf(-x) + specfun::erf(x)), at({{"x", x}}));
                 return w.result();
               }});
  c.push_back({"specfun", "pochhammer.products", ToleranceKind::relative, 1e-15, [] {
                 Worst w;
                 w.add(std::abs(specfun::pochhammer(3.5, 0) - 1.0), "(3.5)_0");
                 w.add(rel(specfun::pochhammer(1.0, 5), 120.0), "(1)_5");
                 w.add(rel(specfun::pochhammer(-0.5, 3), -0.375), "(-1/2)_3");
                 return w.result();
               }});
  return c;
}

// --- canonical -------------------------------------------------------------

std::vector<Check> canonical_checks() {
  using namespace canonical;
  std::vector<Check> c;
  c.push_back({"canonical", "wavefunction.norm", ToleranceKind::absolute, 1e-10, [] {
                 Worst w;
                 for (const CanonicalState s : {CanonicalState{0, 0}, CanonicalState{3, -2}, CanonicalState{-7, 60}}) {
                   w.add(std::abs(wavefunction(s).norm() - 1.0), at({{"xbar", s.xbar}, {"pbar", s.pbar}}));
                 }
                 return w.result();
               }});
  c.push_back({"canonical", "overlap.quadrature", ToleranceKind::absolute, 1e-10, [] {
                 Worst w;
                 std::mt19937_64 rng(7);
                 std::uniform_real_distribution<double> u(-3, 3);
                 for (int i = 0; i < 20; ++i) {
                   const CanonicalState a{u(rng), u(rng)}, b{u(rng), u(rng)};
                   w.add(std::abs(overlap(a, b) - overlap_quadrature(a, b)), "pair " + std::to_string(i));
                 }
                 return w.result();
               }});
  const auto equivalence = [](bool velocity) {
    Worst w;
    for (double r : {1.0, 2.0, 5.0, 8.0}) {
      for (double S : {0.0, 0.5, 1.0, 2.0, 4.0}) {
        const double a = velocity ? mean_velocity(S, r, Method::series) : mean_energy_massive(S, r, Method::series);
        const double b =
            velocity ? mean_velocity(S, r, Method::quadrature) : mean_energy_massive(S, r, Method::quadrature);
        w.add(a == b ? 0.0 : rel(a, b), at({{"r", r}, {"pbar", S}}));
      }
    }
    return w.result();
  };
  c.push_back({"canonical", "energy.series_vs_quadrature", ToleranceKind::relative, 1e-8, [=] { return equivalence(false); }});
  c.push_back({"canonical", "velocity.series_vs_quadrature", ToleranceKind::relative, 1e-8, [=] { return equivalence(true); }});
  c.push_back({"canonical", "velocity.energy_derivative", ToleranceKind::bound, 1e-6, [] {
                 Worst w;
                 for (double r : {1.0, 3.0, 8.0}) {
                   for (double S : {0.3, 1.0, 2.5}) {
                     const double h = 1e-3;
                     const auto e = [&](double s) { return mean_energy_massive(s, r); };
                     const double d = r * (-e(S + 2 * h) + 8 * e(S + h) - 8 * e(S - h) + e(S - 2 * h)) / (12 * h);
                     w.add(std::abs(d - mean_velocity(S, r)), at({{"r", r}, {"pbar", S}}));
                   }
                 }
                 return w.result();
               }});
  c.push_back({"canonical", "parity", ToleranceKind::bound, 0.0, [] {
                 Worst w;
                 for (double r : {0.5, 1.0, 5.0}) {
                   for (double S : {0.3, 2.0, 6.0}) {
                     w.add(std::abs(mean_energy_massive(-S, r) - mean_energy_massive(S, r)), at({{"r", r}, {"pbar", S}}));
                     w.add(std::abs(mean_velocity(-S, r) + mean_velocity(S, r)), at({{"r", r}, {"pbar", S}}));
                   }
                 }
                 return w.result();
               }});
  c.push_back({"canonical", "nonrelativistic_limit", ToleranceKind::bound, 1e-3, [] {
                 Worst w;
                 const double r = 50.0;
                 for (double S : {0.0, 0.5, 1.0, 2.0}) {
                   const double want = 0.5 * (S / r) * (S / r) + 1.0 / (4.0 * r * r);
                   w.add(rel(mean_energy_massive(S, r) - 1.0, want), at({{"r", r}, {"pbar", S}}));
                 }
                 return w.result();
               }});
  c.push_back({"canonical", "massless.closed_vs_quadrature", ToleranceKind::absolute, 1e-10, [] {
                 Worst w;
                 for (double s = -5.0; s <= 5.0; s += 0.5) {
                   w.add(std::abs(mean_energy_massless(s) - mean_energy_massless_quadrature(s)), at({{"sbar", s}}));
                 }
                 return w.result();
               }});
  c.push_back({"canonical", "massless.bound_and_monotone", ToleranceKind::bound, 0.0, [] {
                 Worst w;
                 double last = 1e300;
                 for (double s = 0.0; s <= 10.0; s += 0.25) {
                   const double gap = mean_energy_massless(s) - s;
                   w.add(gap < 0.0 ? -gap : 0.0, at({{"sbar", s}}));
                   w.add(gap < last ? 0.0 : gap - last, at({{"sbar", s}}));
                   last = gap;
                 }
                 return w.result();
               }});
  c.push_back({"canonical", "uncertainty.minimal", ToleranceKind::absolute, 1e-9, [] {
                 Worst w;
                 std::mt19937_64 rng(11);
                 std::uniform_real_distribution<double> u(-10, 10);
                 for (int i = 0; i < 10; ++i) {
                   const CanonicalState s{u(rng), u(rng)};
                   const Uncertainty q = uncertainty_product(s);
                   const std::string where = at({{"xbar", s.xbar}, {"pbar", s.pbar}});
                   w.add(std::abs(q.var_x - 0.5), where);
                   w.add(std::abs(q.var_p - 0.5), where);
                   w.add(std::abs(q.product - 0.25), where);
                 }
                 return w.result();
               }});
  c.push_back({"canonical", "resolution_of_identity", ToleranceKind::absolute, 1e-6, [] {
                 const auto a = wavefunction({0.8, -0.5});
                 const auto b = wavefunction({-0.3, 1.1});
                 return Measured{identity_resolution_check(a, b, PhaseSpaceGrid{}).error, "displaced Gaussians"};
               }});
  return c;
}

// --- lorentzian ------------------------------------------------------------

const double kBetas[] = {0.0, 0.2, -0.2, 0.5, -0.5, 0.8, -0.8, 0.95, -0.95};

std::vector<Check> lorentzian_checks() {
  using namespace lorentzian;
  std::vector<Check> c;
  c.push_back({"lorentzian", "wavefunction.norm", ToleranceKind::absolute, 1e-10, [] {
                 Worst w;
                 for (double beta : {0.0, 0.5, -0.9, 0.999}) {
                   for (double r : {1.0, 2.0, 8.0}) {
                     w.add(std::abs(wavefunction({0.3, beta, r}).norm() - 1.0), at({{"beta", beta}, {"r", r}}));
                   }
                 }
                 return w.result();
               }});
  c.push_back({"lorentzian", "eigen_residual", ToleranceKind::absolute, 1e-6, [] {
                 Worst w;
                 for (double beta : {0.0, 0.4, 0.8}) {
                   for (double r : {2.0, 8.0}) w.add(eigen_residual({0.5, beta, r}), at({{"beta", beta}, {"r", r}}));
                 }
                 return w.result();
               }});
  c.push_back({"lorentzian", "robertson.closed_form", ToleranceKind::relative, 1e-10, [] {
                 Worst w;
                 for (double r : {1.0, 2.0, 8.0}) {
                   for (double beta : kBetas) {
                     const VarianceXV v = variances_xv(beta, r);
                     const double cm = commutator_average(beta, r);
                     w.add(rel(v.product, 0.25 * cm * cm * r * r), at({{"beta", beta}, {"r", r}}));
                   }
                 }
                 return w.result();
               }});
  c.push_back({"lorentzian", "robertson.grid", ToleranceKind::relative, 1e-6, [] {
                 Worst w;
                 for (double beta : {0.0, 0.4, 0.8}) {
                   for (double r : {2.0, 8.0}) {
                     const GridObservables g = grid_observables({0.0, beta, r});
                     w.add(rel(g.var_x * g.var_v, 0.25 * g.commutator * g.commutator * r * r),
                           at({{"beta", beta}, {"r", r}}));
                   }
                 }
                 return w.result();
               }});
  c.push_back({"lorentzian", "grid_vs_closed_form", ToleranceKind::relative, 1e-6, [] {
                 Worst w;
                 const GridObservables g = grid_observables({0.9, 0.4, 3.0});
                 const VarianceXV v = variances_xv(0.4, 3.0);
                 w.add(rel(g.var_x, v.var_x), "var_x");
                 w.add(rel(g.var_v, v.var_v), "var_v");
                 w.add(rel(g.commutator, commutator_average(0.4, 3.0)), "commutator");
                 w.add(std::abs(g.mean_x - 0.9), "mean_x");
                 w.add(std::abs(g.mean_v - 0.4), "mean_v");
                 return w.result();
               }});
  const auto oracle_grid = [](auto closed, auto brute) {
    Worst w;
    for (double r : {1.0, 2.0, 8.0}) {
      for (double beta : kBetas) {
        const double a = closed(beta, r), b = brute(beta, r);
        w.add(a == b ? 0.0 : rel(a, b), at({{"beta", beta}, {"r", r}}));
      }
    }
    return w.result();
  };
  c.push_back({"lorentzian", "brace_factor.quadrature", ToleranceKind::relative, 1e-6,
               [=] { return oracle_grid(brace_factor, brace_factor_quadrature); }});
  c.push_back({"lorentzian", "mean_momentum.quadrature", ToleranceKind::relative, 1e-6, [=] {
                 Worst w;
                 for (double r : {1.0, 2.0, 8.0}) {
                   for (double beta : kBetas) {
                     const double a = mean_momentum(beta, r), b = mean_momentum_quadrature(beta, r);
                     w.add(beta == 0.0 ? std::abs(a - b) : rel(a, b), at({{"beta", beta}, {"r", r}}));
                   }
                 }
                 return w.result();
               }});
  c.push_back({"lorentzian", "mean_energy.quadrature", ToleranceKind::relative, 1e-6,
               [=] { return oracle_grid(static_cast<double (*)(double, double)>(mean_energy), mean_energy_quadrature); }});
  c.push_back({"lorentzian", "momentum_variance.quadrature", ToleranceKind::relative, 1e-6,
               [=] { return oracle_grid(momentum_variance, momentum_variance_quadrature); }});
  c.push_back({"lorentzian", "energy_momentum_relation", ToleranceKind::relative, 1e-12, [] {
                 Worst w;
                 for (double r : {1.0, 2.0, 8.0}) {
                   for (double beta : kBetas) {
                     const double e = mean_energy(beta, r) + 0.5 / (r * r);
                     const double p = mean_momentum(beta, r);
                     const double wv = bessel_argument(beta, r);
                     const double k21 = bessel_k_scaled(2, wv) / bessel_k_scaled(1, wv);
                     w.add(rel(e * e - p * p, k21 * k21), at({{"beta", beta}, {"r", r}}));
                   }
                 }
                 return w.result();
               }});
  c.push_back({"lorentzian", "nonrelativistic_limit", ToleranceKind::bound, 5e-3, [] {
                 Worst w;
                 const double r = 30.0;
                 for (double s : {0.0, 0.5, 1.0}) {
                   const double beta = (s / r) / std::hypot(s / r, 1.0);
                   w.add(std::abs(variances_xv(beta, r).var_x - 0.5), at({{"sbar", s}}));
                   w.add(std::abs(r * r * momentum_variance(beta, r) - 0.5), at({{"sbar", s}}));
                 }
                 return w.result();
               }});
  c.push_back({"lorentzian", "overlap.real_slice", ToleranceKind::relative, 1e-9, [] {
                 Worst w;
                 for (double b1 : {-0.9, -0.3, 0.0, 0.5, 0.95}) {
                   for (double r : {1.0, 2.0, 8.0}) {
                     const LorentzianState x{0.7, 0.3, r}, y{0.7, b1, r};
                     const cdouble q = overlap(x, y);
                     w.add(std::max(rel(overlap_real_slice(x, y), q.real()), std::abs(q.imag())),
                           at({{"beta'", b1}, {"r", r}}));
                   }
                 }
                 return w.result();
               }});
  c.push_back({"lorentzian", "massless_rejected", ToleranceKind::bound, 0.0, [] {
                 try {
                   (void)LorentzianState::make(0.0, 0.5, 8.0, Regime::massless);
                 } catch (const DomainError&) {
                   return Measured{0.0, "DomainError raised"};
                 }
                 return Measured{1.0, "massless state accepted"};
               }});
  return c;
}

// --- poincare --------------------------------------------------------------

const poincare::PoincareState kPoincareStates[] = {{0.0, 0.0, 1.0}, {0.4, 0.7, 2.0}, {-1.0, -1.2, 2.0},
                                                   {2.0, 2.0, 1.0}, {0.0, 0.5, 8.0}, {0.3, -1.5, 8.0}};

std::string label(const poincare::PoincareState& s) { return at({{"xbar", s.xbar}, {"pbar", s.pbar}, {"r", s.r}}); }

std::vector<Check> poincare_checks() {
  using namespace poincare;
  std::vector<Check> c;
  const auto over_states = [](auto f) {
    Worst w;
    for (const PoincareState& s : kPoincareStates) w.add(f(s), label(s));
    return w.result();
  };
  c.push_back({"poincare", "wavefunction.norm", ToleranceKind::absolute, 1e-10,
               [=] { return over_states([](const PoincareState& s) { return std::abs(wavefunction(s).norm() - 1.0); }); }});
  c.push_back({"poincare", "mean_position.newton_wigner_grid", ToleranceKind::absolute, 1e-8, [=] {
                 return over_states([](const PoincareState& s) { return std::abs(newton_wigner_grid(s).mean_x - s.xbar); });
               }});
  c.push_back({"poincare", "mean_momentum.round_trip", ToleranceKind::absolute, 1e-12,
               [=] { return over_states([](const PoincareState& s) { return std::abs(mean_momentum(s) - s.pbar); }); }});
  c.push_back({"poincare", "mean_momentum.quadrature", ToleranceKind::relative, 1e-6, [=] {
                 return over_states([](const PoincareState& s) {
                   const double q = mean_momentum_quadrature(s);
                   return s.pbar == 0.0 ? std::abs(q) : rel(mean_momentum(s), q);
                 });
               }});
  c.push_back({"poincare", "position_variance.newton_wigner_grid", ToleranceKind::relative, 1e-6, [=] {
                 return over_states(
                     [](const PoincareState& s) { return rel(position_variance(s), newton_wigner_grid(s).var_x); });
               }});
  c.push_back({"poincare", "position_variance.flat_measure", ToleranceKind::relative, 1e-8, [=] {
                 return over_states(
                     [](const PoincareState& s) { return rel(position_variance(s), position_variance_flat(s)); });
               }});
  c.push_back({"poincare", "momentum_variance.quadrature", ToleranceKind::relative, 1e-6, [=] {
                 return over_states(
                     [](const PoincareState& s) { return rel(momentum_variance(s), momentum_variance_quadrature(s)); });
               }});
  c.push_back({"poincare", "mean_energy.quadrature", ToleranceKind::relative, 1e-6, [=] {
                 return over_states([](const PoincareState& s) { return rel(mean_energy(s), mean_energy_quadrature(s)); });
               }});
  c.push_back({"poincare", "effective_mass.dispersion", ToleranceKind::relative, 1e-12, [=] {
                 return over_states([](const PoincareState& s) {
                   const double e = mean_energy(s);
                   return rel(std::sqrt(e * e - s.pbar * s.pbar), effective_mass(s.r));
                 });
               }});
  c.push_back({"poincare", "effective_mass.above_one_decreasing", ToleranceKind::bound, 0.0, [] {
                 Worst w;
                 double last = std::numeric_limits<double>::infinity();
                 for (double r : {1.0, 2.0, 8.0}) {
                   const double excess = effective_mass(r) - 1.0;
                   w.add(excess > 0.0 ? 0.0 : 1.0, at({{"r", r}}));
                   w.add(excess < last ? 0.0 : 1.0, at({{"r", r}}));
                   last = excess;
                 }
                 return w.result();
               }});
  c.push_back({"poincare", "mean_velocity.quadrature", ToleranceKind::relative, 1e-6, [=] {
                 return over_states([](const PoincareState& s) {
                   const double v = mean_velocity(s), q = mean_velocity_quadrature(s);
                   return s.pbar == 0.0 ? std::abs(v - q) : rel(v, q);
                 });
               }});
  c.push_back({"poincare", "overlap.real_slice", ToleranceKind::relative, 1e-9, [] {
                 Worst w;
                 for (double p2 : {-1.5, -0.3, 0.0, 0.5, 2.0}) {
                   for (double r : {1.0, 2.0, 8.0}) {
                     const PoincareState x{0.7, 0.3, r}, y{0.7, p2, r};
                     const cdouble q = overlap(x, y);
                     w.add(std::max(rel(overlap_real_slice(x, y), q.real()), std::abs(q.imag())),
                           at({{"pbar'", p2}, {"r", r}}));
                   }
                 }
                 return w.result();
               }});
  c.push_back({"poincare", "resolution_of_identity", ToleranceKind::absolute, 1e-5, [] {
                 const double r = 1.0;
                 const ProbeFunction f{1.5, 0.3, 0.0}, g{2.0, -0.5, 0.0};
                 const IdentityCheck chk =
                     identity_resolution_check(probe_wavefunction(f), probe_wavefunction(g), r, default_grid(r));
                 return Measured{std::max(chk.error, std::abs(chk.reconstructed - probe_overlap_real(f, g))),
                                 "probe pair at r=1"};
               }});
  c.push_back({"poincare", "overlap.bounded", ToleranceKind::bound, 1e-12, [] {
                 Worst w;
                 std::mt19937_64 rng(23);
                 std::uniform_real_distribution<double> u(-2, 2);
                 for (int i = 0; i < 50; ++i) {
                   const double r = 0.5 + std::abs(u(rng));
                   const cdouble q = overlap({u(rng), u(rng), r}, {u(rng), u(rng), r});
                   w.add(std::max(std::abs(q) - 1.0, 0.0), "pair " + std::to_string(i));
                 }
                 return w.result();
               }});
  c.push_back({"poincare", "resolution_of_identity.negative_control", ToleranceKind::relative, 1e-5, [] {
                 const double r = 1.0;
                 const auto f = probe_wavefunction({1.5, 0.3, 0.0});
                 const auto g = probe_wavefunction({2.0, -0.5, 0.0});
                 const IdentityCheck chk = identity_resolution_check(f, g, r, default_grid(r), false);
                 const double rho2 = rho(r) * rho(r);
                 std::ostringstream d;
                 d << "unweighted miss " << chk.error << ", restored by rho^2 = " << rho2;
                 return Measured{rel(chk.reconstructed.real() * rho2, chk.direct.real()), d.str()};
               }});
  c.push_back({"poincare", "boost.metric", ToleranceKind::absolute, 1e-12, [] {
                 Worst w;
                 const Eigen::Matrix2d eta{{1.0, 0.0}, {0.0, -1.0}};
                 for (double k : {-5.0, -0.3, 0.0, 1.0, 7.5}) {
                   for (double m : {0.5, 1.0, 3.0}) {
                     const Eigen::Matrix2d l = boost(k, m);
                     const double scale = l.cwiseAbs().maxCoeff();
                     w.add((l.transpose() * eta * l - eta).cwiseAbs().maxCoeff() / (scale * scale),
                           at({{"k", k}, {"m", m}}));
                     w.add(std::abs(l.determinant() - 1.0) / (scale * scale), at({{"k", k}, {"m", m}}));
                   }
                 }
                 return w.result();
               }});
  c.push_back({"poincare", "group.section_factorization", ToleranceKind::absolute, 1e-12, [] {
                 Worst w;
                 std::mt19937_64 rng(17);
                 std::uniform_real_distribution<double> u(-3, 3);
                 for (int i = 0; i < 100; ++i) {
                   const Eigen::Vector2d x(u(rng), u(rng));
                   const double k = u(rng), m = 0.5 + std::abs(u(rng));
                   w.add(section_factorization_check(k, x, m), "sample " + std::to_string(i));
                 }
                 return w.result();
               }});
  c.push_back({"poincare", "group.action_vs_kaiser_form", ToleranceKind::absolute, 1e-12, [=] {
                 return over_states([](const PoincareState& s) {
                   const MomentumWavefunction wf = wavefunction(s);
                   const BoostSection sec = section_for(s);
                   const double kappa = kappa_for(s);
                   double worst = 0.0;
                   for (int j = 0; j <= 100; ++j) {
                     const double p = wf.mode() + wf.scale() * (-5.0 + 0.1 * j);
                     worst = std::max(worst, std::abs(generate_from_section(sec, kappa, p) - wf(p)));
                     worst = std::max(worst, std::abs(section_closed_form(sec, kappa, p) - wf(p)));
                   }
                   return worst;
                 });
               }});
  return c;
}

std::vector<Check> checks_for(std::string_view suite) {
  if (suite == "specfun") return specfun_checks();
  if (suite == "canonical") return canonical_checks();
  if (suite == "lorentzian") return lorentzian_checks();
  if (suite == "poincare") return poincare_checks();
  throw DomainError("unknown suite '" + std::string(suite) + "' (expected all, specfun, canonical, lorentzian or poincare)");
}

double parse_positive(std::string_view key, std::string_view value) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size() || !(v > 0.0) || !std::isfinite(v)) {
    throw DomainError("--tol " + std::string(key) + " needs a positive number, got '" + std::string(value) + "'");
  }
  return v;
}

}  // namespace

const char* to_string(ToleranceKind kind) {
  switch (kind) {
    case ToleranceKind::relative:
      return "rel";
    case ToleranceKind::absolute:
      return "abs";
    case ToleranceKind::bound:
      return "bound";
  }
  return "?";
}

ToleranceOverrides ToleranceOverrides::parse(std::string_view text) {
  ToleranceOverrides o;
  while (!text.empty()) {
    const std::size_t comma = text.find(',');
    const std::string_view item = text.substr(0, comma);
    text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
    const std::size_t eq = item.find('=');
    if (eq == std::string_view::npos) throw DomainError("--tol expects key=value, got '" + std::string(item) + "'");
    const std::string_view key = item.substr(0, eq), value = item.substr(eq + 1);
    if (key == "rel") {
      o.rel = parse_positive(key, value);
    } else if (key == "abs") {
      o.abs = parse_positive(key, value);
    } else {
      throw DomainError("--tol key must be rel or abs, got '" + std::string(key) + "'");
    }
  }
  return o;
}

std::vector<std::string> suites() { return {"specfun", "canonical", "lorentzian", "poincare"}; }

std::vector<CheckResult> run(std::string_view suite, const ToleranceOverrides& overrides) {
  std::vector<Check> list;
  if (suite == "all") {
    for (const std::string& s : suites()) {
      std::vector<Check> part = checks_for(s);
      list.insert(list.end(), part.begin(), part.end());
    }
  } else {
    list = checks_for(suite);
  }
  std::vector<CheckResult> out;
  out.reserve(list.size());
  for (const Check& chk : list) {
    double tol = chk.tolerance;
    if (chk.kind == ToleranceKind::relative && overrides.rel) tol = *overrides.rel;
    if (chk.kind == ToleranceKind::absolute && overrides.abs) tol = *overrides.abs;
    CheckResult r{chk.suite, chk.name, chk.kind, std::numeric_limits<double>::quiet_NaN(), tol, false, ""};
    try {
      const Measured m = chk.measure();
      r.measured = m.value;
      r.detail = m.detail;
      r.passed = m.value <= tol;
    } catch (const std::exception& e) {
      r.detail = std::string("error: ") + e.what();
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::string to_tap(const std::vector<CheckResult>& results) {
  std::ostringstream out;
  out << "TAP version 13\n1.." << results.size() << "\n";
  std::size_t i = 0;
  for (const CheckResult& r : results) {
    out << (r.passed ? "ok " : "not ok ") << ++i << " - " << r.suite << "/" << r.name << " # measured=" << r.measured
        << " tol=" << r.tolerance << " (" << to_string(r.kind) << ")";
    if (!r.detail.empty()) out << " " << r.detail;
    out << "\n";
  }
  return out.str();
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.passed; });
}

}  // namespace relcoh::verify
