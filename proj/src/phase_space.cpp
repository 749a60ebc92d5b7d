// Copyright 2026 The relcoh Authors
// SPDX-License-Identifier: Apache-2.0
#include "relcoh/phase_space.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "relcoh/errors.hpp"
#include "relcoh/summation.hpp"

namespace relcoh {

namespace {

struct RowSum {
  CompensatedSum full_re, full_im, half_re, half_im;
};

}  // namespace

GridSum phase_space_trapezoid(const PhaseSpaceGrid& grid,
                              const std::function<std::complex<double>(double, double)>& f) {
  if (grid.x_points < 5 || grid.p_points < 5 || grid.x_points % 2 == 0 || grid.p_points % 2 == 0 ||
      !(grid.x_hi > grid.x_lo) || !(grid.p_hi > grid.p_lo)) {
    throw DomainError("phase-space grid needs an odd number (>= 5) of points per axis");
  }
  const double hx = (grid.x_hi - grid.x_lo) / static_cast<double>(grid.x_points - 1);
  const double hp = (grid.p_hi - grid.p_lo) / static_cast<double>(grid.p_points - 1);
  std::vector<RowSum> rows(grid.x_points);

  const auto do_row = [&](std::size_t i) {
    const double X = grid.x_lo + hx * static_cast<double>(i);
    const double wi = (i == 0 || i + 1 == grid.x_points) ? 0.5 : 1.0;
    RowSum& s = rows[i];
    for (std::size_t j = 0; j < grid.p_points; ++j) {
      const double P = grid.p_lo + hp * static_cast<double>(j);
      const double wj = (j == 0 || j + 1 == grid.p_points) ? 0.5 : 1.0;
      const std::complex<double> v = f(X, P) * (wi * wj);
      s.full_re.add(v.real());
      s.full_im.add(v.imag());
      if (i % 2 == 0 && j % 2 == 0) {
        s.half_re.add(v.real());
        s.half_im.add(v.imag());
      }
    }
  };

  unsigned n = grid.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : grid.threads;
  n = std::min<unsigned>(n, static_cast<unsigned>(grid.x_points));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto worker = [&] {
    for (std::size_t i = next++; i < grid.x_points; i = next++) {
      try {
        do_row(i);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = grid.x_points;
      }
    }
  };
  if (n <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n);
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  CompensatedSum full_re, full_im, half_re, half_im;
  for (const RowSum& s : rows) {
    full_re.add(s.full_re.value());
    full_im.add(s.full_im.value());
    half_re.add(s.half_re.value());
    half_im.add(s.half_im.value());
  }
  const double area = hx * hp;
  return {std::complex<double>(full_re.value(), full_im.value()) * area,
          std::complex<double>(half_re.value(), half_im.value()) * (4.0 * area)};
}

}  // namespace relcoh
