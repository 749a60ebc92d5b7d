// Copyright 2026 The relcoh Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

/// Registry of invariant and oracle checks, grouped by suite.
namespace relcoh::verify {

/// relative and absolute tolerances bound numerical error and can be
/// overridden; bound checks encode modelling limits or exact properties and
/// keep their stated threshold.
enum class ToleranceKind { relative, absolute, bound };

const char* to_string(ToleranceKind kind);

struct CheckResult {
  std::string suite;
  std::string name;
  ToleranceKind kind;
  double measured;   // worst residual over the check's grid
  double tolerance;  // after overrides
  bool passed;
  std::string detail;
};

/// A given value replaces the default tolerance of every check of that kind.
struct ToleranceOverrides {
  std::optional<double> rel;
  std::optional<double> abs;

  /// Parses "rel=1e-6", "abs=1e-9" or "rel=1e-6,abs=1e-9". Throws
  /// DomainError on unknown keys or non-positive values.
  static ToleranceOverrides parse(std::string_view text);
};

/// specfun, canonical, lorentzian, poincare.
std::vector<std::string> suites();

/// Runs one suite, or every suite for "all". Throws DomainError for an
/// unknown suite name. A check that throws is reported as failed.
std::vector<CheckResult> run(std::string_view suite, const ToleranceOverrides& overrides = {});

/// TAP version 13 report, one line per check with measured vs tolerance.
std::string to_tap(const std::vector<CheckResult>& results);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace relcoh::verify
