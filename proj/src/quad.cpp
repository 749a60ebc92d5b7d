// Copyright 2026 The relcoh Authors
// SPDX-License-Identifier: Apache-2.0
#include "relcoh/quad.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "relcoh/errors.hpp"
#include "relcoh/summation.hpp"

namespace relcoh::quad {

namespace {

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 21>;
using Gauss = boost::math::quadrature::gauss<double, 10>;

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = std::numeric_limits<double>::min();

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }
inline bool finite(double v) { return std::isfinite(v); }
inline bool finite(const std::complex<double>& v) {
  return std::isfinite(v.real()) && std::isfinite(v.imag());
}

template <class T>
struct Panel {
  double a;
  double b;
  T value;
  double error;
  double resabs;
};

template <class T>
struct PanelOrder {
  bool operator()(const Panel<T>& x, const Panel<T>& y) const {
    if (x.error != y.error) return x.error < y.error;
    return x.a > y.a;  // deterministic tie break
  }
};

template <class T, class F>
T sample(const F& f, double x, long& evals) {
  ++evals;
  T v = f(x);
  if (!finite(v)) {
    std::ostringstream msg;
    msg << "integrand is not finite at x = " << x;
    throw NonFiniteIntegrandError(msg.str(), x);
  }
  return v;
}

// One application of the 10-point Gauss / 21-point Kronrod pair, with the
// QUADPACK error heuristic.
template <class T, class F>
Panel<T> kronrod21(const F& f, double a, double b, long& evals) {
  const auto& xk = Kronrod::abscissa();
  const auto& wk = Kronrod::weights();
  const auto& wg = Gauss::weights();
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  T fv[21];
  fv[0] = sample<T>(f, center, evals);
  for (std::size_t i = 1; i < xk.size(); ++i) {
    fv[2 * i - 1] = sample<T>(f, center + half * xk[i], evals);
    fv[2 * i] = sample<T>(f, center - half * xk[i], evals);
  }

  T resk = fv[0] * wk[0];
  T resg = T(0);
  double resabs = magnitude(fv[0]) * wk[0];
  for (std::size_t i = 1; i < xk.size(); ++i) {
    const T pair = fv[2 * i - 1] + fv[2 * i];
    resk += pair * wk[i];
    resabs += (magnitude(fv[2 * i - 1]) + magnitude(fv[2 * i])) * wk[i];
    if (i % 2 == 1) resg += pair * wg[i / 2];
  }
  const T mean = resk * 0.5;
  double resasc = wk[0] * magnitude(fv[0] - mean);
  for (std::size_t i = 1; i < xk.size(); ++i) {
    resasc += wk[i] * (magnitude(fv[2 * i - 1] - mean) + magnitude(fv[2 * i] - mean));
  }

  const double h = std::abs(half);
  double err = magnitude((resk - resg) * half);
  resabs *= h;
  resasc *= h;
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  if (resabs > kTiny / (50.0 * kEps)) err = std::max(50.0 * kEps * resabs, err);
  return Panel<T>{a, b, resk * half, err, resabs};
}

template <class T>
struct Totals {
  T value;
  double error;
  double resabs;
};

template <class T>
Totals<T> totals(const std::vector<Panel<T>>& panels) {
  // Sum in order of left endpoint so the result does not depend on heap layout.
  std::vector<const Panel<T>*> order;
  order.reserve(panels.size());
  for (const auto& p : panels) order.push_back(&p);
  std::sort(order.begin(), order.end(),
            [](const Panel<T>* x, const Panel<T>* y) { return x->a < y->a; });
  CompensatedSum re, im, err, abs_sum;
  for (const auto* p : order) {
    if constexpr (std::is_same_v<T, double>) {
      re.add(p->value);
    } else {
      re.add(p->value.real());
      im.add(p->value.imag());
    }
    err.add(p->error);
    abs_sum.add(p->resabs);
  }
  if constexpr (std::is_same_v<T, double>) {
    return {re.value(), err.value(), abs_sum.value()};
  } else {
    return {T(re.value(), im.value()), err.value(), abs_sum.value()};
  }
}

template <class T, class F>
std::pair<T, std::pair<double, long>> adaptive(const F& f, const std::vector<double>& breaks,
                                               const QuadratureConfig& cfg) {
  cfg.validate();
  long evals = 0;
  std::priority_queue<Panel<T>, std::vector<Panel<T>>, PanelOrder<T>> heap;
  std::vector<Panel<T>> done;  // panels too narrow to split further
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    if (breaks[i + 1] > breaks[i]) heap.push(kronrod21<T>(f, breaks[i], breaks[i + 1], evals));
  }
  if (heap.empty()) return {T(0), {0.0, evals}};

  auto snapshot = [&]() {
    std::vector<Panel<T>> all = done;
    auto copy = heap;
    while (!copy.empty()) {
      all.push_back(copy.top());
      copy.pop();
    }
    return totals(all);
  };

  int subdivisions = static_cast<int>(heap.size());
  while (true) {
    const Totals<T> t = snapshot();
    const double target = std::max({cfg.abs_tol, cfg.rel_tol * magnitude(t.value),
                                    100.0 * kEps * t.resabs});
    if (t.error <= target || heap.empty()) {
      if (t.error > target) {
        throw QuadratureError("adaptive quadrature hit the roundoff floor before converging",
                              magnitude(t.value), t.error);
      }
      return {t.value, {t.error, evals}};
    }
    if (subdivisions >= cfg.max_subdivisions) {
      std::ostringstream msg;
      msg << "adaptive quadrature did not converge within " << cfg.max_subdivisions
          << " subdivisions (estimate " << t.error << ", target " << target << ")";
      throw QuadratureError(msg.str(), magnitude(t.value), t.error);
    }
    Panel<T> worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b) ||
        (worst.b - worst.a) < 64.0 * kEps * std::max(std::abs(worst.a), std::abs(worst.b))) {
      done.push_back(worst);
      continue;
    }
    heap.push(kronrod21<T>(f, worst.a, mid, evals));
    heap.push(kronrod21<T>(f, mid, worst.b, evals));
    ++subdivisions;
  }
}

// Probes outward from `start` in direction `dir` (+1/-1) with geometrically
// growing steps until |f| has decayed below the tolerance floor on two
// consecutive probes. Returns the probe abscissae, the last one being the cut.
template <class F>
std::vector<double> probe_tail(const F& mag, double start, double dir, double scale,
                               const QuadratureConfig& cfg, double& fmax) {
  std::vector<double> points;
  double offset = 0.0;
  double step = scale;
  double prev = mag(start);
  fmax = std::max(fmax, prev);
  int quiet = 0;
  for (int k = 0; k < 400; ++k) {
    offset += step;
    step *= 1.5;
    const double x = start + dir * offset;
    const double m = mag(x);
    if (!std::isfinite(m)) throw NonFiniteIntegrandError("integrand is not finite while probing", x);
    fmax = std::max(fmax, m);
    points.push_back(x);
    const double floor = 1e-3 * std::max(cfg.abs_tol, cfg.rel_tol * fmax);
    if (m <= floor && m <= prev) {
      if (++quiet >= 2) return points;
    } else {
      quiet = 0;
    }
    prev = m;
  }
  throw QuadratureError("integrand does not decay on the infinite range", 0.0,
                        std::numeric_limits<double>::infinity());
}

template <class T, class F>
std::pair<T, std::pair<double, long>> line_impl(const F& f, const QuadratureConfig& cfg,
                                                LineHint hint) {
  cfg.validate();
  if (!(hint.scale > 0.0)) throw DomainError("line hint scale must be positive");
  std::vector<double> breaks;
  if (cfg.tail_cut > 0.0) {
    for (int k = -8; k <= 8; ++k) breaks.push_back(hint.center + cfg.tail_cut * k / 8.0);
    return adaptive<T>(f, breaks, cfg);
  }
  long probe_evals = 0;
  auto mag = [&](double x) {
    ++probe_evals;
    return magnitude(T(f(x)));
  };
  double fmax = 0.0;
  auto right = probe_tail(mag, hint.center, +1.0, hint.scale, cfg, fmax);
  auto left = probe_tail(mag, hint.center, -1.0, hint.scale, cfg, fmax);
  for (auto it = left.rbegin(); it != left.rend(); ++it) breaks.push_back(*it);
  breaks.push_back(hint.center);
  breaks.insert(breaks.end(), right.begin(), right.end());
  auto out = adaptive<T>(f, breaks, cfg);
  out.second.second += probe_evals;
  return out;
}

}  // namespace

void QuadratureConfig::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || max_subdivisions < 1 || !(tail_cut >= 0.0)) {
    throw DomainError("invalid quadrature configuration");
  }
}

QuadratureResult integrate_interval(const RealFn& f, double a, double b,
                                    const QuadratureConfig& cfg) {
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw DomainError("integrate_interval needs finite limits");
  }
  const double sign = b < a ? -1.0 : 1.0;
  auto [v, meta] = adaptive<double>(f, {std::min(a, b), std::max(a, b)}, cfg);
  return {sign * v, meta.first, meta.second};
}

ComplexQuadratureResult integrate_interval_complex(const ComplexFn& f, double a, double b,
                                                   const QuadratureConfig& cfg) {
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw DomainError("integrate_interval needs finite limits");
  }
  const double sign = b < a ? -1.0 : 1.0;
  auto [v, meta] = adaptive<std::complex<double>>(f, {std::min(a, b), std::max(a, b)}, cfg);
  return {sign * v, meta.first, meta.second};
}

QuadratureResult integrate_breaks(const RealFn& f, const std::vector<double>& breaks,
                                  const QuadratureConfig& cfg) {
  if (breaks.size() < 2 || !std::is_sorted(breaks.begin(), breaks.end())) {
    throw DomainError("integrate_breaks needs at least two ascending breakpoints");
  }
  auto [v, meta] = adaptive<double>(f, breaks, cfg);
  return {v, meta.first, meta.second};
}

ComplexQuadratureResult integrate_breaks_complex(const ComplexFn& f,
                                                 const std::vector<double>& breaks,
                                                 const QuadratureConfig& cfg) {
  if (breaks.size() < 2 || !std::is_sorted(breaks.begin(), breaks.end())) {
    throw DomainError("integrate_breaks needs at least two ascending breakpoints");
  }
  auto [v, meta] = adaptive<std::complex<double>>(f, breaks, cfg);
  return {v, meta.first, meta.second};
}

QuadratureResult integrate_line(const RealFn& f, const QuadratureConfig& cfg, LineHint hint) {
  auto [v, meta] = line_impl<double>(f, cfg, hint);
  return {v, meta.first, meta.second};
}

ComplexQuadratureResult integrate_line_complex(const ComplexFn& f, const QuadratureConfig& cfg,
                                               LineHint hint) {
  auto [v, meta] = line_impl<std::complex<double>>(f, cfg, hint);
  return {v, meta.first, meta.second};
}

QuadratureResult integrate_half_line(const RealFn& f, double lower, const QuadratureConfig& cfg,
                                     double scale) {
  cfg.validate();
  if (!std::isfinite(lower)) throw DomainError("half-line lower limit must be finite");
  if (!(scale > 0.0)) throw DomainError("half-line scale must be positive");
  std::vector<double> breaks{lower};
  long probe_evals = 0;
  if (cfg.tail_cut > 0.0) {
    if (!(cfg.tail_cut > lower)) throw DomainError("tail_cut must exceed the lower limit");
    for (int k = 1; k <= 16; ++k) breaks.push_back(lower + (cfg.tail_cut - lower) * k / 16.0);
  } else {
    auto mag = [&](double x) {
      ++probe_evals;
      return std::abs(f(x));
    };
    double fmax = 0.0;
    auto pts = probe_tail(mag, lower, +1.0, scale, cfg, fmax);
    breaks.insert(breaks.end(), pts.begin(), pts.end());
  }
  auto [v, meta] = adaptive<double>(f, breaks, cfg);
  return {v, meta.first, meta.second + probe_evals};
}

Window log_window(const RealFn& log_f, double mode, double scale, double drop, double lower,
                  double upper) {
  if (!(scale > 0.0) || !(drop > 0.0)) throw DomainError("log_window needs positive scale and drop");
  mode = std::clamp(mode, lower, upper);
  const double peak = log_f(mode);
  if (!std::isfinite(peak)) throw DomainError("log density is not finite at the mode");

  auto edge = [&](double dir, double limit) {
    double inside = mode;
    double step = scale;
    for (int k = 0; k < 200; ++k) {
      double x = mode + dir * step;
      if ((dir > 0 && x >= limit) || (dir < 0 && x <= limit)) return limit;
      const double v = log_f(x);
      if (!(v > peak - drop)) {
        // Bisect between the last point inside and x.
        double a = inside, b = x;
        for (int i = 0; i < 60; ++i) {
          const double m = 0.5 * (a + b);
          if (log_f(m) > peak - drop) {
            a = m;
          } else {
            b = m;
          }
        }
        return b;
      }
      inside = x;
      step *= 2.0;
    }
    throw DomainError("log density does not decay within the search range");
  };
  return Window{edge(-1.0, lower), edge(+1.0, upper)};
}

}  // namespace relcoh::quad
