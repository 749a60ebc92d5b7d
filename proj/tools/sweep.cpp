// Copyright 2026 The relcoh Authors
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <mutex>
#include <json.hpp>
#include <sstream>
#include <thread>

#include "cli.hpp"
#include "relcoh/canonical.hpp"
#include "relcoh/errors.hpp"
#include "relcoh/lorentzian.hpp"
#include "relcoh/poincare.hpp"

namespace relcoh::cli {

Family parse_family(std::string_view name) {
  if (name == "canonical") return Family::canonical;
  if (name == "lorentzian") return Family::lorentzian;
  if (name == "poincare") return Family::poincare;
  throw DomainError("unknown family '" + std::string(name) + "' (canonical, lorentzian or poincare)");
}

Axis parse_axis(std::string_view name) {
  if (name == "beta") return Axis::beta;
  if (name == "pbar") return Axis::pbar;
  if (name == "sbar") return Axis::sbar;
  throw DomainError("unknown axis '" + std::string(name) + "' (beta, pbar or sbar)");
}

const char* to_string(Family f) {
  switch (f) {
    case Family::canonical:
      return "canonical";
    case Family::lorentzian:
      return "lorentzian";
    case Family::poincare:
      return "poincare";
  }
  return "?";
}

const char* to_string(Axis a) {
  switch (a) {
    case Axis::beta:
      return "beta";
    case Axis::pbar:
      return "pbar";
    case Axis::sbar:
      return "sbar";
  }
  return "?";
}

const std::vector<std::string>& quantity_tags() {
  static const std::vector<std::string> tags{"energy", "momentum",   "velocity",  "var_x",
                                             "var_p",  "var_v",      "product_xp", "product_xv"};
  return tags;
}

std::vector<std::string> available_quantities(Family family) {
  if (family == Family::lorentzian) return quantity_tags();
  return {"energy", "momentum", "velocity", "var_x", "var_p", "product_xp"};
}

const Moment& select(const MomentReport& report, std::string_view tag) {
  if (tag == "energy") return report.energy;
  if (tag == "momentum") return report.momentum;
  if (tag == "velocity") return report.velocity;
  if (tag == "var_x") return report.var_x;
  if (tag == "var_p") return report.var_p;
  if (tag == "var_v") return report.var_v;
  if (tag == "product_xp") return report.product_xp;
  if (tag == "product_xv") return report.product_xv;
  throw DomainError("unknown quantity '" + std::string(tag) + "'");
}

double reference_value(std::string_view tag) {
  if (tag == "var_x" || tag == "var_p") return 0.5;
  if (tag == "product_xp") return 0.25;
  return std::nan("");
}

SweepSpec SweepSpec::figure_preset(int id) {
  SweepSpec s;
  s.figure = std::to_string(id);
  s.r = 8.0;
  static const char* const tags[] = {"var_x", "var_p", "product_xp"};
  if (id >= 1 && id <= 3) {
    s.family = Family::lorentzian;
    s.axis = Axis::beta;
    s.lo = -1.0;
    s.hi = 1.0;
    s.points = 399;
    s.open = true;
    s.quantities = {tags[id - 1]};
    return s;
  }
  if (id >= 4 && id <= 6) {
    s.family = Family::poincare;
    s.axis = Axis::sbar;
    s.lo = -10.0;
    s.hi = 10.0;
    s.points = 401;
    s.quantities = {tags[id - 4]};
    return s;
  }
  throw DomainError("figure must be 1 to 6 or custom, got " + std::to_string(id));
}

void SweepSpec::validate() const {
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("sweep: r = sigma/lambda_c must be positive");
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) throw DomainError("sweep: need finite lo < hi");
  if (points < 2) throw DomainError("sweep: need at least 2 points");
  if ((family == Family::lorentzian) != (axis == Axis::beta)) {
    throw DomainError("sweep: the beta axis goes with the lorentzian family, pbar or sbar with the others");
  }
  if (axis == Axis::beta && !open && (lo <= -1.0 || hi >= 1.0)) {
    throw DomainError("sweep: beta range must lie inside (-1, 1)");
  }
  if (quantities.empty()) throw DomainError("sweep: no quantities requested");
  const auto avail = available_quantities(family);
  for (const std::string& q : quantities) {
    (void)select(MomentReport{}, q);
    if (std::find(avail.begin(), avail.end(), q) == avail.end()) {
      throw DomainError("sweep: quantity " + q + " is not defined for the " + to_string(family) + " family");
    }
  }
}

std::vector<double> SweepSpec::axis_values() const {
  std::vector<double> v(static_cast<std::size_t>(points));
  const double span = hi - lo;
  const double n = open ? points + 1.0 : points - 1.0;
  for (int i = 0; i < points; ++i) {
    const double k = open ? i + 1.0 : static_cast<double>(i);
    v[static_cast<std::size_t>(i)] = (2.0 * k == n) ? 0.5 * (lo + hi) : lo + span * (k / n);
  }
  if (!open) v.back() = hi;
  return v;
}

namespace {

MomentReport evaluate(const SweepSpec& spec, double x) {
  switch (spec.family) {
    case Family::lorentzian:
      return lorentzian::report(lorentzian::LorentzianState::make(0.0, x, spec.r));
    case Family::canonical: {
      const double s = spec.axis == Axis::sbar ? x : x * spec.r;
      return canonical::report({0.0, s}, canonical::Scale::massive(spec.r));
    }
    case Family::poincare: {
      const double p = spec.axis == Axis::pbar ? x : x / spec.r;
      return poincare::report(poincare::PoincareState::make(0.0, p, spec.r));
    }
  }
  throw DomainError("sweep: unknown family");
}

}  // namespace

SweepTable run_sweep(const SweepSpec& spec, unsigned jobs) {
  spec.validate();
  SweepTable table;
  table.header.push_back(to_string(spec.axis));
  std::vector<double> refs;
  for (const std::string& q : spec.quantities) table.header.push_back(q);
  for (const std::string& q : spec.quantities) {
    const double ref = reference_value(q);
    if (!std::isnan(ref)) {
      table.header.push_back("ref_" + q);
      refs.push_back(ref);
    }
  }

  const std::vector<double> xs = spec.axis_values();
  table.rows.resize(xs.size());
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<unsigned>(jobs, static_cast<unsigned>(xs.size()));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::size_t failed_at = xs.size();
  std::mutex mu;
  auto worker = [&] {
    for (std::size_t i = next++; i < xs.size(); i = next++) {
      try {
        const MomentReport rep = evaluate(spec, xs[i]);
        std::vector<double> row{xs[i]};
        for (const std::string& q : spec.quantities) row.push_back(select(rep, q).value);
        row.insert(row.end(), refs.begin(), refs.end());
        table.rows[i] = std::move(row);
      } catch (...) {
        std::lock_guard lock(mu);
        if (i < failed_at) {
          failed_at = i;
          failure = std::current_exception();
        }
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
  }
  if (failure) {
    std::ostringstream where;
    where << "sweep point " << failed_at << " (" << to_string(spec.axis) << " = " << format_number(xs[failed_at])
          << "): ";
    try {
      std::rethrow_exception(failure);
    } catch (const DomainError& e) {
      throw DomainError(where.str() + e.what());
    } catch (const std::exception& e) {
      throw Error(where.str() + e.what());
    }
  }
  return table;
}

std::string format_number(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

std::string to_csv(const SweepTable& table) {
  std::string out;
  for (std::size_t j = 0; j < table.header.size(); ++j) out += (j ? "," : "") + table.header[j];
  out += "\r\n";
  for (const auto& row : table.rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out += ',';
      out += format_number(row[j]);
    }
    out += "\r\n";
  }
  return out;
}

std::string to_json_lines(const SweepTable& table) {
  std::string out;
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj;
    for (std::size_t j = 0; j < row.size(); ++j) obj[table.header[j]] = row[j];
    out += obj.dump() + "\n";
  }
  return out;
}

}  // namespace relcoh::cli
