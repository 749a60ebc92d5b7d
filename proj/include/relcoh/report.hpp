// Copyright 2026 The relcoh Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <limits>
#include <string>

namespace relcoh {

/// Massive particles use r = σ/λc; massless ones have no Compton wavelength.
enum class Regime { massive, massless };

/// How a reported number was obtained.
enum class Method { closed_form, series, quadrature };

const char* to_string(Method m);

struct Moment {
  double value = std::numeric_limits<double>::quiet_NaN();
  Method method = Method::closed_form;

  bool present() const { return value == value; }
};

/// Dimensionless moments of one coherent state.
///
/// energy in mc^2 (cħ/σ for massless canonical states), momentum in mc
/// (ħ/σ for massless), velocity in c, var_x in σ^2, var_p in (ħ/σ)^2,
/// var_v in c^2, product_xp in ħ^2 (Heisenberg bound 1/4) and product_xv in
/// (σ^2 c/λc)^2. Entries a family does not define stay NaN.
struct MomentReport {
  std::string family;
  Moment energy;
  Moment momentum;
  Moment velocity;
  Moment var_x;
  Moment var_p;
  Moment var_v;
  Moment product_xp;
  Moment product_xv;
};

}  // namespace relcoh
