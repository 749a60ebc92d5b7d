// Copyright 2026 The relcoh Authors
// SPDX-License-Identifier: Apache-2.0
#include "cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "relcoh/canonical.hpp"
#include "relcoh/errors.hpp"
#include "relcoh/lorentzian.hpp"
#include "relcoh/poincare.hpp"
#include "relcoh/verify.hpp"

#ifndef RELCOH_DATA_DIR
#define RELCOH_DATA_DIR "data"
#endif

namespace relcoh::cli {

namespace {

using json = nlohmann::ordered_json;

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  return s.substr(first, s.find_last_not_of(" \t\r") - first + 1);
}

struct Unit {
  const char* natural;
  const char* si;
};

// Dimensionless unit of each quantity for massive states, and its SI unit.
const std::map<std::string, Unit, std::less<>>& units() {
  static const std::map<std::string, Unit, std::less<>> table{
      {"energy", {"mc^2", "MeV"}},
      {"momentum", {"mc", "MeV/c"}},
      {"velocity", {"c", "m/s"}},
      {"var_x", {"sigma^2", "m^2"}},
      {"var_p", {"(hbar/sigma)^2", "(MeV/c)^2"}},
      {"var_v", {"c^2", "(m/s)^2"}},
      {"product_xp", {"hbar^2", "(J s)^2"}},
      {"product_xv", {"(sigma^2 c/lambda_c)^2", "(m^2/s)^2"}},
  };
  return table;
}

double si_factor(std::string_view tag, double r, double mass_mev, const Constants& k) {
  const double lambda_c = k.hbar_c_mev_m() / mass_mev;
  const double sigma = r * lambda_c;
  if (tag == "energy" || tag == "momentum") return mass_mev;
  if (tag == "velocity") return k.c;
  if (tag == "var_x") return sigma * sigma;
  if (tag == "var_p") return std::pow(k.hbar_c_mev_m() / sigma, 2);
  if (tag == "var_v") return k.c * k.c;
  if (tag == "product_xp") return k.hbar * k.hbar;
  if (tag == "product_xv") return std::pow(sigma * sigma * k.c / lambda_c, 2);
  throw DomainError("no SI conversion for " + std::string(tag));
}

// --- compute ---------------------------------------------------------------

struct ComputeArgs {
  std::string family;
  double r = 0.0;
  double xbar = 0.0;
  std::optional<double> pbar;
  std::optional<double> sbar;
  std::optional<double> beta;
  bool massless = false;
  std::string quantities;
  bool verify = false;
  bool si = false;
  double mass_mev = 0.0;
  std::string constants;
};

struct Computed {
  MomentReport report;
  json inputs;
  std::map<std::string, double> oracle;  // closed form minus quadrature route
  double r = 0.0;
  bool massless = false;
};

Computed compute(const ComputeArgs& a) {
  Computed c;
  const Family family = parse_family(a.family);
  const auto need_r = [&] {
    if (!(a.r > 0.0)) throw DomainError("--r (sigma/lambda_c) must be given and positive for " + a.family);
    c.r = a.r;
  };
  if (a.pbar && a.sbar) throw DomainError("give at most one of --pbar and --sbar");
  if (a.massless && family != Family::canonical) throw DomainError("--massless applies to the canonical family only");
  if (family != Family::lorentzian && a.beta) throw DomainError("--beta labels lorentzian states only");
  if (family == Family::lorentzian && (a.pbar || a.sbar)) throw DomainError("lorentzian states take --beta, not a momentum");
  c.inputs["xbar"] = a.xbar;

  switch (family) {
    case Family::canonical: {
      if (a.massless) {
        if (a.pbar) throw DomainError("massless canonical states take --sbar (sigma pbar / hbar)");
        if (a.r != 0.0) throw DomainError("massless canonical states have no Compton wavelength; drop --r");
        c.massless = true;
        const double s = a.sbar.value_or(0.0);
        c.inputs["sbar"] = s;
        c.report = canonical::report({a.xbar, s}, canonical::Scale::massless());
        if (a.verify) c.oracle["energy"] = c.report.energy.value - canonical::mean_energy_massless_quadrature(s);
        break;
      }
      need_r();
      const double s = a.sbar ? *a.sbar : a.pbar.value_or(0.0) * a.r;
      c.inputs["r"] = a.r;
      c.inputs["sbar"] = s;
      c.report = canonical::report({a.xbar, s}, canonical::Scale::massive(a.r));
      if (a.verify) {
        c.oracle["energy"] = c.report.energy.value - canonical::mean_energy_massive(s, a.r, Method::quadrature);
        c.oracle["velocity"] = c.report.velocity.value - canonical::mean_velocity(s, a.r, Method::quadrature);
      }
      break;
    }
    case Family::lorentzian: {
      need_r();
      const double beta = a.beta.value_or(0.0);
      c.inputs["r"] = a.r;
      c.inputs["beta"] = beta;
      c.report = lorentzian::report(lorentzian::LorentzianState::make(a.xbar, beta, a.r));
      if (a.verify) {
        c.oracle["energy"] = c.report.energy.value - lorentzian::mean_energy_quadrature(beta, a.r);
        c.oracle["momentum"] = c.report.momentum.value - lorentzian::mean_momentum_quadrature(beta, a.r);
        c.oracle["var_p"] = c.report.var_p.value - a.r * a.r * lorentzian::momentum_variance_quadrature(beta, a.r);
      }
      break;
    }
    case Family::poincare: {
      need_r();
      const double p = a.sbar ? *a.sbar / a.r : a.pbar.value_or(0.0);
      c.inputs["r"] = a.r;
      c.inputs["pbar"] = p;
      const auto state = poincare::PoincareState::make(a.xbar, p, a.r);
      c.report = poincare::report(state);
      if (a.verify) {
        c.oracle["energy"] = c.report.energy.value - poincare::mean_energy_quadrature(state);
        c.oracle["momentum"] = c.report.momentum.value - poincare::mean_momentum_quadrature(state);
        c.oracle["velocity"] = c.report.velocity.value - poincare::mean_velocity_quadrature(state);
        c.oracle["var_x"] = c.report.var_x.value - poincare::position_variance_flat(state);
        c.oracle["var_p"] = c.report.var_p.value - a.r * a.r * poincare::momentum_variance_quadrature(state);
      }
      break;
    }
  }
  return c;
}

json compute_json(const ComputeArgs& a) {
  if (a.si && !(a.mass_mev > 0.0)) throw DomainError("--si needs --mass-mev with a positive mass");
  if (!a.si && a.mass_mev != 0.0) throw DomainError("--mass-mev is only used with --si");
  Computed c = compute(a);
  if (a.si && c.massless) throw DomainError("--si needs a massive state");

  std::vector<std::string> tags;
  if (a.quantities.empty()) {
    for (const std::string& t : quantity_tags()) {
      if (select(c.report, t).present()) tags.push_back(t);
    }
  } else {
    tags = split_list(a.quantities);
    for (const std::string& t : tags) {
      if (!select(c.report, t).present()) {
        throw DomainError("quantity " + t + " is not defined for this " + a.family + " state");
      }
    }
  }

  std::optional<Constants> k;
  if (a.si) k = Constants::load(a.constants.empty() ? default_constants_path() : std::filesystem::path(a.constants));

  json out;
  out["family"] = c.report.family;
  out["inputs"] = c.inputs;
  out["units"] = a.si ? "si" : "dimensionless";
  if (a.si) out["inputs"]["mass_mev"] = a.mass_mev;
  json q = json::object();
  for (const std::string& t : tags) {
    const Moment& m = select(c.report, t);
    const Unit& u = units().at(t);
    const double f = a.si ? si_factor(t, c.r, a.mass_mev, *k) : 1.0;
    const char* unit = a.si ? u.si : u.natural;
    if (c.massless && t == "energy") unit = "c hbar/sigma";
    if (c.massless && t == "momentum") unit = "hbar/sigma";
    json entry{{"value", m.value * f}, {"method", to_string(m.method)}, {"unit", unit}};
    if (!std::isfinite(m.value)) throw Error("non-finite " + t);
    if (const auto it = c.oracle.find(t); it != c.oracle.end()) entry["oracle_delta"] = it->second * f;
    q[t] = std::move(entry);
  }
  out["quantities"] = std::move(q);
  return out;
}

// --- sweep -----------------------------------------------------------------

struct SweepArgs {
  std::string figure;
  std::string family;
  std::optional<double> r;
  std::string axis;
  std::optional<double> lo, hi;
  std::optional<int> points;
  std::string quantities;
  unsigned jobs = 0;
  std::string format = "csv";
  std::string out;
};

SweepSpec build_spec(const SweepArgs& a) {
  SweepSpec s;
  if (a.figure != "custom") {
    int id = 0;
    const auto [ptr, ec] = std::from_chars(a.figure.data(), a.figure.data() + a.figure.size(), id);
    if (ec != std::errc() || ptr != a.figure.data() + a.figure.size()) {
      throw DomainError("--figure must be 1 to 6 or custom, got '" + a.figure + "'");
    }
    if (!a.family.empty() || !a.axis.empty() || a.lo || a.hi || a.points || !a.quantities.empty()) {
      throw DomainError("--family, --axis, --lo, --hi, --points and --quantities need --figure custom");
    }
    s = SweepSpec::figure_preset(id);
    if (a.r) s.r = *a.r;
    return s;
  }
  if (a.family.empty() || a.axis.empty() || !a.lo || !a.hi || !a.points) {
    throw DomainError("a custom sweep needs --family, --axis, --lo, --hi and --points");
  }
  s.family = parse_family(a.family);
  s.axis = parse_axis(a.axis);
  s.r = a.r.value_or(8.0);
  s.lo = *a.lo;
  s.hi = *a.hi;
  s.points = *a.points;
  s.quantities = a.quantities.empty() ? available_quantities(s.family) : split_list(a.quantities);
  return s;
}

std::filesystem::path output_path(const SweepArgs& a, const SweepSpec& s) {
  const char* env = std::getenv("RELCOH_OUTPUT_DIR");
  const std::filesystem::path dir = env && *env ? env : "";
  if (!a.out.empty()) {
    const std::filesystem::path p(a.out);
    return p.is_absolute() || dir.empty() ? p : dir / p;
  }
  if (dir.empty()) return {};
  const std::string stem = s.figure == "custom" ? "sweep_custom" : "figure" + s.figure;
  return dir / (stem + (a.format == "json" ? ".jsonl" : ".csv"));
}

int cmd_sweep(const SweepArgs& a, std::ostream& out, std::ostream& err) {
  if (a.format != "csv" && a.format != "json") throw DomainError("--format must be csv or json");
  const SweepSpec spec = build_spec(a);
  const SweepTable table = run_sweep(spec, a.jobs);
  const std::string text = a.format == "csv" ? to_csv(table) : to_json_lines(table);
  const std::filesystem::path path = output_path(a, spec);
  if (path.empty()) {
    out << text;
    return 0;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file || !(file << text) || !file.flush()) {
    err << "relcoh: cannot write " << path.string() << "\n";
    return 1;
  }
  err << "wrote " << table.rows.size() << " rows to " << path.string() << "\n";
  return 0;
}

// Fills options the command line left unset from a key=value file.
void apply_config(CLI::App& cmd, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read config file " + path.string());
  int lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string key = trim(line.substr(0, eq));
    if (eq == std::string::npos || key.empty()) {
      throw DomainError(path.string() + ":" + std::to_string(lineno) + ": expected key=value");
    }
    CLI::Option* opt = key == "config" ? nullptr : cmd.get_option_no_throw("--" + key);
    if (!opt) throw DomainError(path.string() + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    if (opt->count() > 0) continue;
    opt->add_result(trim(line.substr(eq + 1)));
    try {
      opt->run_callback();
    } catch (const CLI::ParseError& e) {
      throw DomainError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
}

}  // namespace

Constants Constants::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read constants file " + path.string());
  Constants k;
  std::map<std::string, double*> slots{{"hbar", &k.hbar}, {"c", &k.c}, {"electronvolt", &k.electronvolt}};
  for (std::string line; std::getline(in, line);) {
    line = line.substr(0, line.find('#'));
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = trim(line.substr(0, eq));
    const auto it = slots.find(key);
    if (it == slots.end()) continue;
    std::istringstream value(line.substr(eq + 1));
    value.imbue(std::locale::classic());
    if (!(value >> *it->second)) throw Error("constants file: bad value for " + key);
  }
  if (!(k.hbar > 0.0 && k.c > 0.0 && k.electronvolt > 0.0)) {
    throw Error("constants file " + path.string() + " must define hbar, c and electronvolt");
  }
  return k;
}

std::filesystem::path default_constants_path() {
  if (const char* env = std::getenv("RELCOH_CONSTANTS"); env && *env) return env;
  return std::filesystem::path(RELCOH_DATA_DIR) / "codata.txt";
}

std::string units_table() {
  std::ostringstream t;
  t << "Internal units: hbar = m = c = 1, r = sigma/lambda_c, sbar = sigma pbar/hbar.\n\n"
    << "quantity     dimensionless           --si --mass-mev M\n";
  for (const std::string& tag : quantity_tags()) {
    const Unit& u = units().at(tag);
    t << tag << std::string(13 - tag.size(), ' ') << u.natural << std::string(24 - std::string(u.natural).size(), ' ')
      << u.si << "\n";
  }
  t << "\nMassless canonical states: energy in c hbar/sigma, momentum in hbar/sigma.\n"
    << "Sweep axes: beta = v/c, pbar in mc, sbar = sigma pbar/hbar (pbar = sbar/r).\n"
    << "Reference columns ref_var_x = ref_var_p = 0.5 and ref_product_xp = 0.25 are the canonical values.\n";
  return t.str();
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Relativistic coherent states: moments, figure sweeps and self-checks", "relcoh"};
  app.require_subcommand(0, 1);
  bool explain_units = false;
  app.add_flag("--explain-units", explain_units, "Print the unit conventions and exit");

  ComputeArgs ca;
  auto* compute_cmd = app.add_subcommand("compute", "Moments of one coherent state as JSON");
  compute_cmd->add_option("--family", ca.family, "canonical, lorentzian or poincare");
  compute_cmd->add_option("--r", ca.r, "sigma/lambda_c");
  compute_cmd->add_option("--xbar", ca.xbar, "mean position in sigma");
  compute_cmd->add_option("--pbar", ca.pbar, "mean momentum in mc");
  compute_cmd->add_option("--sbar", ca.sbar, "sigma pbar / hbar");
  compute_cmd->add_option("--beta", ca.beta, "velocity label v/c of a lorentzian state");
  compute_cmd->add_flag("--massless", ca.massless, "massless canonical state");
  compute_cmd->add_option("--quantities", ca.quantities, "comma-separated tags (default: all defined)");
  compute_cmd->add_flag("--verify", ca.verify, "add closed-form minus quadrature deltas");
  compute_cmd->add_flag("--si", ca.si, "convert to SI-style units");
  compute_cmd->add_option("--mass-mev", ca.mass_mev, "particle mass in MeV/c^2 for --si");
  compute_cmd->add_option("--constants", ca.constants, "constants file for --si");

  SweepArgs sa;
  auto* sweep_cmd = app.add_subcommand("sweep", "Figure data as CSV or JSON lines");
  sweep_cmd->add_option("--figure", sa.figure, "1 to 6, or custom");
  sweep_cmd->add_option("--family", sa.family, "custom: canonical, lorentzian or poincare");
  sweep_cmd->add_option("--r", sa.r, "sigma/lambda_c (figure presets use 8)");
  sweep_cmd->add_option("--axis", sa.axis, "custom: beta, pbar or sbar");
  sweep_cmd->add_option("--lo", sa.lo, "custom: first axis value");
  sweep_cmd->add_option("--hi", sa.hi, "custom: last axis value");
  sweep_cmd->add_option("--points", sa.points, "custom: number of points");
  sweep_cmd->add_option("--quantities", sa.quantities, "custom: comma-separated tags");
  sweep_cmd->add_option("--jobs", sa.jobs, "worker threads (0: all cores)");
  sweep_cmd->add_option("--format", sa.format, "csv or json");
  sweep_cmd->add_option("--out", sa.out, "output file (relative to RELCOH_OUTPUT_DIR when set)");

  std::string config;
  for (CLI::App* sub : {compute_cmd, sweep_cmd}) {
    sub->add_option("--config", config, "key=value file of long option names; command-line flags win");
  }

  std::string suite = "all", tol;
  auto* verify_cmd = app.add_subcommand("verify", "Run invariant and oracle checks, TAP output");
  verify_cmd->add_option("--suite", suite, "all, specfun, canonical, lorentzian or poincare");
  verify_cmd->add_option("--tol", tol, "override tolerances, e.g. rel=1e-6,abs=1e-9");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "relcoh: " << e.what() << "\n";
    return 2;
  }

  try {
    if (explain_units) {
      out << units_table();
      return 0;
    }
    for (CLI::App* sub : {compute_cmd, sweep_cmd}) {
      if (sub->parsed() && !config.empty()) apply_config(*sub, config);
    }
    if (compute_cmd->parsed()) {
      if (ca.family.empty()) throw DomainError("compute needs --family");
      out << compute_json(ca).dump(2) << "\n";
      return 0;
    }
    if (sweep_cmd->parsed() && sa.figure.empty()) throw DomainError("sweep needs --figure");
    if (sweep_cmd->parsed()) return cmd_sweep(sa, out, err);
    if (verify_cmd->parsed()) {
      const auto overrides = verify::ToleranceOverrides::parse(tol);
      const auto results = verify::run(suite, overrides);
      out << verify::to_tap(results);
      return verify::all_passed(results) ? 0 : 1;
    }
    out << app.help();
    return 2;
  } catch (const DomainError& e) {
    err << "relcoh: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "relcoh: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace relcoh::cli
