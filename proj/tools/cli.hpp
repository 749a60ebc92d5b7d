// Copyright 2026 The relcoh Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "relcoh/report.hpp"

namespace relcoh::cli {

enum class Family { canonical, lorentzian, poincare };
enum class Axis { beta, pbar, sbar };

Family parse_family(std::string_view name);
Axis parse_axis(std::string_view name);
const char* to_string(Family f);
const char* to_string(Axis a);

/// energy, momentum, velocity, var_x, var_p, var_v, product_xp, product_xv.
const std::vector<std::string>& quantity_tags();
/// Tags a massive state of `family` defines.
std::vector<std::string> available_quantities(Family family);
/// The report entry for `tag`; throws DomainError for an unknown tag.
const Moment& select(const MomentReport& report, std::string_view tag);

/// Reference value drawn as a dashed line next to `tag` (0.5 for the
/// variances, 0.25 for product_xp), or NaN.
double reference_value(std::string_view tag);

struct SweepSpec {
  std::string figure = "custom";
  Family family = Family::poincare;
  double r = 8.0;
  Axis axis = Axis::sbar;
  double lo = -10.0;
  double hi = 10.0;
  int points = 401;
  bool open = false;  // exclude lo and hi, spacing (hi - lo) / (points + 1)
  std::vector<std::string> quantities;

  /// Figures 1 to 3: Lorentzian var_x, var_p, product_xp over 399 interior
  /// beta points of (-1, 1). Figures 4 to 6: the Poincaré counterparts over
  /// sbar = σp̄/ħ in [-10, 10], 401 points. All at r = 8.
  static SweepSpec figure_preset(int id);

  void validate() const;
  std::vector<double> axis_values() const;
};

struct SweepTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// Evaluates every axis point on `jobs` threads (0: hardware concurrency);
/// rows come back in axis order. A DomainError at one point is rethrown
/// naming that point.
SweepTable run_sweep(const SweepSpec& spec, unsigned jobs = 0);

/// 12 significant digits, locale independent.
std::string format_number(double v);
std::string to_csv(const SweepTable& table);
/// One JSON object per row, newline separated.
std::string to_json_lines(const SweepTable& table);

/// SI constants read from a key = value file.
struct Constants {
  double hbar = 0.0;          // J s
  double c = 0.0;             // m / s
  double electronvolt = 0.0;  // J

  static Constants load(const std::filesystem::path& path);
  double hbar_c_mev_m() const { return hbar * c / electronvolt * 1e-6; }
};

/// Path of the bundled constants file; RELCOH_CONSTANTS overrides it.
std::filesystem::path default_constants_path();

/// Table printed by --explain-units.
std::string units_table();

/// Entry point. Exit codes: 0 success, 1 failure (failed checks, I/O),
/// 2 invalid arguments or constraint violations.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace relcoh::cli
