// Copyright 2026 The relcoh Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <functional>

namespace relcoh {

/// Uniform grid over the labels (xbar, pbar); point counts must be odd.
struct PhaseSpaceGrid {
  double x_lo = -12.0;
  double x_hi = 12.0;
  std::size_t x_points = 97;
  double p_lo = -12.0;
  double p_hi = 12.0;
  std::size_t p_points = 97;
  /// Largest tolerated gap between the full-grid and half-grid sums.
  double tolerance = 1e-6;
  /// Worker threads for the row sums; 0 picks the hardware concurrency.
  unsigned threads = 0;
};

struct IdentityCheck {
  std::complex<double> reconstructed;
  std::complex<double> direct;
  double error;       // |reconstructed - direct|
  double grid_error;  // |full grid - every-other-point grid|
};

struct GridSum {
  std::complex<double> full;
  std::complex<double> half;  // every other node, step doubled
};

/// Trapezoid sum of f over the grid, times hx * hp. Rows are summed in
/// parallel and reduced in index order, so the result does not depend on the
/// thread count. Throws DomainError for an even or too small point count.
GridSum phase_space_trapezoid(const PhaseSpaceGrid& grid,
                              const std::function<std::complex<double>(double, double)>& f);

}  // namespace relcoh
