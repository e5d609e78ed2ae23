// Copyright 2026 The samplerdp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end over the samplerdp C API. Emits deterministic
// CSV/JSON curve data: amplified RDP curves, composition sweeps, (eps,
// delta) conversions and sandwich verification reports.

#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "samplerdp.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitVerification = 3;

class CliError : public std::runtime_error {
 public:
  CliError(int code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  int code() const { return code_; }

 private:
  int code_;
};

void check(srdp_status status, const std::string& context) {
  if (status == SRDP_OK) return;
  const int code =
      status == SRDP_ERR_NUMERIC ? kExitVerification : kExitUsage;
  throw CliError(code, context + ": " + srdp_last_error());
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

// Owned curve handle.
class Curve {
 public:
  Curve() = default;
  explicit Curve(srdp_curve* c) : c_(c) {}
  Curve(Curve&& o) noexcept : c_(o.c_) { o.c_ = nullptr; }
  Curve& operator=(Curve&& o) noexcept {
    if (this != &o) {
      srdp_curve_free(c_);
      c_ = o.c_;
      o.c_ = nullptr;
    }
    return *this;
  }
  Curve(const Curve&) = delete;
  Curve& operator=(const Curve&) = delete;
  ~Curve() { srdp_curve_free(c_); }
  srdp_curve* get() const { return c_; }

 private:
  srdp_curve* c_ = nullptr;
};

class Ledger {
 public:
  Ledger() { check(srdp_ledger_create(&l_), "ledger"); }
  explicit Ledger(srdp_ledger* l) : l_(l) {}
  Ledger(Ledger&& o) noexcept : l_(o.l_) { o.l_ = nullptr; }
  Ledger& operator=(Ledger&& o) noexcept {
    if (this != &o) {
      srdp_ledger_free(l_);
      l_ = o.l_;
      o.l_ = nullptr;
    }
    return *this;
  }
  Ledger(const Ledger&) = delete;
  Ledger& operator=(const Ledger&) = delete;
  ~Ledger() { srdp_ledger_free(l_); }
  srdp_ledger* get() const { return l_; }

 private:
  srdp_ledger* l_ = nullptr;
};

struct CommonOptions {
  std::string mech_json;
  std::string mech_file;
  std::string config_path;
  std::string output_path;
  std::string format = "csv";
};

struct GridOptions {
  double alpha_min = 2;
  double alpha_max = 256;
  int alpha_points = 0;  // 0 => integer grid
};

std::string load_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError(kExitUsage, "cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json load_config(const std::string& path) {
  try {
    return json::parse(load_file(path));
  } catch (const json::exception& e) {
    throw CliError(kExitUsage, "config: " + std::string(e.what()));
  }
}

// Config values override parsed flags (the --config contract).
void apply_config(const json& cfg, const char* key, double* out) {
  if (cfg.contains(key)) *out = cfg.at(key).get<double>();
}
void apply_config(const json& cfg, const char* key, int* out) {
  if (cfg.contains(key)) *out = cfg.at(key).get<int>();
}
void apply_config(const json& cfg, const char* key, std::int64_t* out) {
  if (cfg.contains(key)) *out = cfg.at(key).get<std::int64_t>();
}
void apply_config(const json& cfg, const char* key, std::string* out) {
  if (cfg.contains(key)) {
    if (cfg.at(key).is_string()) {
      *out = cfg.at(key).get<std::string>();
    } else {
      *out = cfg.at(key).dump();
    }
  }
}

std::string resolve_mechanism(const CommonOptions& common) {
  if (!common.mech_json.empty() && !common.mech_file.empty()) {
    throw CliError(kExitUsage, "pass either --mech or --mech-file, not both");
  }
  if (!common.mech_json.empty()) return common.mech_json;
  if (!common.mech_file.empty()) return load_file(common.mech_file);
  throw CliError(kExitUsage, "a mechanism spec is required (--mech/--mech-file)");
}

std::vector<double> alpha_grid(const GridOptions& grid) {
  if (!(grid.alpha_min > 1) || !(grid.alpha_max >= grid.alpha_min)) {
    throw CliError(kExitUsage, "alpha grid must satisfy 1 < min <= max");
  }
  std::vector<double> alphas;
  if (grid.alpha_points <= 0) {
    for (std::int64_t a = static_cast<std::int64_t>(std::ceil(grid.alpha_min));
         a <= static_cast<std::int64_t>(std::floor(grid.alpha_max)); ++a) {
      alphas.push_back(static_cast<double>(a));
    }
  } else {
    const double lo = std::log(grid.alpha_min);
    const double hi = std::log(grid.alpha_max);
    for (int i = 0; i < grid.alpha_points; ++i) {
      const double t = grid.alpha_points == 1
                           ? 0.0
                           : static_cast<double>(i) / (grid.alpha_points - 1);
      alphas.push_back(std::exp(lo + (hi - lo) * t));
    }
  }
  if (alphas.empty()) {
    throw CliError(kExitUsage, "alpha grid is empty");
  }
  return alphas;
}

// Rows of named columns, rendered as CSV or a JSON array of objects.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::string render(const std::string& format) const {
    if (format == "csv") {
      std::string out;
      for (std::size_t i = 0; i < columns.size(); ++i) {
        out += (i ? "," : "") + columns[i];
      }
      out += "\n";
      for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
          out += (i ? "," : "") + fmt(row[i]);
        }
        out += "\n";
      }
      return out;
    }
    if (format == "json") {
      json arr = json::array();
      for (const auto& row : rows) {
        json obj;
        for (std::size_t i = 0; i < row.size(); ++i) {
          if (std::isfinite(row[i])) {
            obj[columns[i]] = row[i];
          } else {
            obj[columns[i]] = fmt(row[i]);  // "inf"/"nan" as strings
          }
        }
        arr.push_back(obj);
      }
      return arr.dump(2) + "\n";
    }
    throw CliError(kExitUsage, "unknown format: " + format);
  }
};

void write_output(const CommonOptions& common, const std::string& payload) {
  if (common.output_path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream out(common.output_path, std::ios::binary);
  if (!out) {
    throw CliError(kExitUsage, "cannot write file: " + common.output_path);
  }
  out << payload;
}

Curve curve_from_spec(const std::string& spec) {
  srdp_curve* raw = nullptr;
  check(srdp_curve_from_json(spec.c_str(), &raw), "mechanism spec");
  return Curve(raw);
}

std::optional<srdp_bound_kind> parse_bound_kind(const std::string& name) {
  static const std::map<std::string, srdp_bound_kind> kKinds = {
      {"general", SRDP_BOUND_GENERAL},
      {"tight", SRDP_BOUND_TIGHT},
      {"lower", SRDP_BOUND_LOWER},
      {"puredp_form", SRDP_BOUND_PUREDP_FORM},
      {"asymptotic_bad", SRDP_BOUND_ASYMPTOTIC_BAD},
      {"asymptotic_good", SRDP_BOUND_ASYMPTOTIC_GOOD},
  };
  const auto it = kKinds.find(name);
  if (it == kKinds.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream ss(s);
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::int64_t default_asymptotic_n(double gamma, std::int64_t n) {
  if (n > 0) return n;
  return std::max<std::int64_t>(2, std::llround(100.0 / gamma));
}

// ---- subcommands ----------------------------------------------------------

int run_mech(const CommonOptions& common, const GridOptions& grid) {
  const std::string spec = resolve_mechanism(common);
  const Curve curve = curve_from_spec(spec);
  Table table;
  table.columns = {"alpha", "epsilon"};
  for (double alpha : alpha_grid(grid)) {
    double eps = 0;
    check(srdp_curve_eval(curve.get(), alpha, &eps), "eval");
    table.rows.push_back({alpha, eps});
  }
  write_output(common, table.render(common.format));
  return kExitOk;
}

int run_amplify(const CommonOptions& common, const GridOptions& grid,
                double gamma, const std::string& bounds_csv, int alpha_thresh,
                std::int64_t n) {
  const std::string spec = resolve_mechanism(common);
  const Curve base = curve_from_spec(spec);
  const std::vector<std::string> bound_names = split_csv(bounds_csv);
  if (bound_names.empty()) {
    throw CliError(kExitUsage, "--bounds must name at least one bound kind");
  }

  std::vector<Curve> curves;
  Table table;
  table.columns = {"alpha"};
  for (const std::string& name : bound_names) {
    const auto kind = parse_bound_kind(name);
    if (!kind) throw CliError(kExitUsage, "unknown bound kind: " + name);
    srdp_curve* raw = nullptr;
    const std::int64_t n_eff =
        (*kind == SRDP_BOUND_ASYMPTOTIC_BAD || *kind == SRDP_BOUND_ASYMPTOTIC_GOOD)
            ? default_asymptotic_n(gamma, n)
            : n;
    check(srdp_curve_subsample(base.get(), gamma, *kind, alpha_thresh, n_eff,
                               &raw),
          "subsample(" + name + ")");
    curves.emplace_back(raw);
    table.columns.push_back(name);
  }

  for (double alpha : alpha_grid(grid)) {
    std::vector<double> row{alpha};
    for (const Curve& c : curves) {
      double eps = 0;
      check(srdp_curve_eval(c.get(), alpha, &eps), "eval");
      row.push_back(eps);
    }
    table.rows.push_back(std::move(row));
  }
  write_output(common, table.render(common.format));
  return kExitOk;
}

std::vector<std::int64_t> rounds_grid(std::int64_t rounds_max, int points) {
  if (rounds_max < 1 || points < 1) {
    throw CliError(kExitUsage, "rounds grid must be positive");
  }
  std::vector<std::int64_t> ks;
  const double hi = std::log(static_cast<double>(rounds_max));
  for (int i = 0; i < points; ++i) {
    const double t = points == 1 ? 1.0 : static_cast<double>(i) / (points - 1);
    const std::int64_t k =
        std::max<std::int64_t>(1, std::llround(std::exp(hi * t)));
    if (ks.empty() || k > ks.back()) ks.push_back(k);
  }
  return ks;
}

int run_compose(const CommonOptions& common, double gamma, double delta,
                std::int64_t rounds_max, int rounds_points,
                const std::string& methods_csv, int alpha_thresh) {
  if (!(delta > 0 && delta < 1)) {
    throw CliError(kExitUsage, "--delta must lie in (0, 1)");
  }
  const std::string spec = resolve_mechanism(common);
  const Curve base = curve_from_spec(spec);
  const std::vector<std::string> methods = split_csv(methods_csv);

  Curve general, lower;
  for (const std::string& m : methods) {
    if (m == "rdp_general" && !general.get()) {
      srdp_curve* raw = nullptr;
      check(srdp_curve_subsample(base.get(), gamma, SRDP_BOUND_GENERAL,
                                 alpha_thresh, 0, &raw),
            "subsample(general)");
      general = Curve(raw);
    } else if (m == "rdp_lower" && !lower.get()) {
      srdp_curve* raw = nullptr;
      check(srdp_curve_subsample(base.get(), gamma, SRDP_BOUND_LOWER,
                                 alpha_thresh, 0, &raw),
            "subsample(lower)");
      lower = Curve(raw);
    } else if (m != "naive" && m != "strong" && m != "rdp_general" &&
               m != "rdp_lower") {
      throw CliError(kExitUsage, "unknown compose method: " + m);
    }
  }
  if (methods.empty()) {
    throw CliError(kExitUsage, "--methods must name at least one method");
  }

  auto rdp_eps = [&](const Curve& curve, std::int64_t k) {
    Ledger ledger;
    check(srdp_ledger_compose(ledger.get(), curve.get(), k), "compose");
    srdp_conversion conv{};
    check(srdp_ledger_eps_from_delta(ledger.get(), delta, 0, &conv),
          "eps_from_delta");
    return conv.value;
  };

  Table table;
  table.columns = {"k"};
  for (const std::string& m : methods) table.columns.push_back("eps_" + m);

  for (std::int64_t k : rounds_grid(rounds_max, rounds_points)) {
    std::vector<double> row{static_cast<double>(k)};
    for (const std::string& m : methods) {
      if (m == "rdp_general") {
        row.push_back(rdp_eps(general, k));
      } else if (m == "rdp_lower") {
        row.push_back(rdp_eps(lower, k));
      } else if (m == "naive") {
        double eps = 0;
        int feasible = 0;
        check(srdp_calibrated_naive_dp(base.get(), gamma, k, delta, &eps,
                                       &feasible),
              "naive baseline");
        row.push_back(feasible ? eps : std::numeric_limits<double>::infinity());
      } else {
        double eps = 0;
        int feasible = 0;
        check(srdp_calibrated_strong_dp(base.get(), gamma, k, delta, &eps,
                                        &feasible),
              "strong baseline");
        row.push_back(feasible ? eps : std::numeric_limits<double>::infinity());
      }
    }
    table.rows.push_back(std::move(row));
  }
  write_output(common, table.render(common.format));
  return kExitOk;
}

int run_convert(const CommonOptions& common, const std::string& ledger_path,
                double gamma, const std::string& bound_kind_name,
                std::int64_t count, double delta, double eps, double tol,
                int alpha_thresh) {
  const bool has_delta = !std::isnan(delta);
  const bool has_eps = !std::isnan(eps);
  if (has_delta == has_eps) {
    throw CliError(kExitUsage, "pass exactly one of --delta / --eps");
  }

  Ledger ledger = [&] {
    if (!ledger_path.empty()) {
      if (!common.mech_json.empty() || !common.mech_file.empty()) {
        throw CliError(kExitUsage,
                       "pass either --ledger or a mechanism spec, not both");
      }
      srdp_ledger* raw = nullptr;
      check(srdp_ledger_from_json(load_file(ledger_path).c_str(), &raw),
            "ledger file");
      return Ledger(raw);
    }
    const std::string spec = resolve_mechanism(common);
    Curve curve = curve_from_spec(spec);
    if (gamma > 0) {
      const auto kind = parse_bound_kind(bound_kind_name);
      if (!kind) {
        throw CliError(kExitUsage, "unknown bound kind: " + bound_kind_name);
      }
      srdp_curve* raw = nullptr;
      check(srdp_curve_subsample(curve.get(), gamma, *kind, alpha_thresh, 0,
                                 &raw),
            "subsample");
      curve = Curve(raw);
    }
    Ledger built;
    check(srdp_ledger_compose(built.get(), curve.get(), count), "compose");
    return built;
  }();

  srdp_conversion conv{};
  json out;
  if (has_delta) {
    if (!(delta > 0 && delta < 1)) {
      throw CliError(kExitUsage, "--delta must lie in (0, 1)");
    }
    check(srdp_ledger_eps_from_delta(ledger.get(), delta, tol, &conv),
          "eps_from_delta");
    out["eps"] = conv.value;
    out["delta"] = delta;
  } else {
    if (!(eps >= 0)) throw CliError(kExitUsage, "--eps must be >= 0");
    check(srdp_ledger_delta_from_eps(ledger.get(), eps, tol, &conv),
          "delta_from_eps");
    out["eps"] = eps;
    out["delta"] = conv.value;
  }
  out["lambda_star"] = std::isfinite(conv.lambda_star)
                           ? json(conv.lambda_star)
                           : json(fmt(conv.lambda_star));
  json flags = json::array();
  if (conv.infimum_limited) flags.push_back("infimum-limited");
  out["flags"] = flags;
  write_output(common, out.dump(2) + "\n");
  return kExitOk;
}

int run_verify(const CommonOptions& common, const GridOptions& grid,
               double gamma, double quad_tol, std::int64_t n) {
  const std::string spec = resolve_mechanism(common);
  const std::vector<double> alphas = alpha_grid(grid);
  std::vector<srdp_bound_row> rows(alphas.size());
  check(srdp_sandwich_report(spec.c_str(), gamma, alphas.data(), alphas.size(),
                             quad_tol, n, rows.data()),
        "sandwich report");

  Table table;
  table.columns = {"alpha",          "lower",          "oracle",
                   "upper_general",  "upper_tight",    "asymptotic_bad",
                   "asymptotic_good", "pass"};
  bool all_pass = true;
  bool all_oracle_ok = true;
  for (const srdp_bound_row& r : rows) {
    table.rows.push_back({r.alpha, r.lower, r.oracle, r.upper_general,
                          r.upper_tight, r.asymptotic_bad, r.asymptotic_good,
                          static_cast<double>(r.pass)});
    all_pass = all_pass && r.pass;
    all_oracle_ok = all_oracle_ok && r.oracle_ok;
  }
  write_output(common, table.render(common.format));
  if (!all_oracle_ok || !all_pass) return kExitVerification;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Privacy accounting for subsampled mechanisms via Renyi DP"};
  app.require_subcommand(1);

  CommonOptions common;
  GridOptions grid;
  double gamma = 0;
  double delta = std::numeric_limits<double>::quiet_NaN();
  double eps = std::numeric_limits<double>::quiet_NaN();
  double quad_tol = 0;
  double tol = 0;
  std::int64_t n = 0;
  std::int64_t rounds_max = 600000;
  std::int64_t count = 1;
  int rounds_points = 600;
  int alpha_thresh = 0;
  std::string bounds = "general,lower";
  std::string methods = "rdp_general,rdp_lower,naive,strong";
  std::string ledger_path;
  std::string bound_kind_name = "general";

  auto add_common = [&](CLI::App* cmd, bool needs_mech) {
    if (needs_mech) {
      cmd->add_option("--mech", common.mech_json, "mechanism spec JSON");
      cmd->add_option("--mech-file", common.mech_file, "mechanism spec file");
    }
    cmd->add_option("--config", common.config_path,
                    "JSON config file overriding flags");
    cmd->add_option("-o,--output", common.output_path,
                    "output path (default stdout)");
    cmd->add_option("--format", common.format, "csv or json");
  };
  auto add_grid = [&](CLI::App* cmd) {
    cmd->add_option("--alpha-min", grid.alpha_min, "smallest order (> 1)");
    cmd->add_option("--alpha-max", grid.alpha_max, "largest order");
    cmd->add_option("--alpha-points", grid.alpha_points,
                    "log-spaced point count (0 = integer grid)");
  };

  CLI::App* mech = app.add_subcommand("mech", "evaluate a base RDP curve");
  add_common(mech, true);
  add_grid(mech);

  CLI::App* amplify =
      app.add_subcommand("amplify", "subsampled RDP curves for bound kinds");
  add_common(amplify, true);
  add_grid(amplify);
  amplify->add_option("--gamma", gamma, "sampling fraction")->required();
  amplify->add_option("--bounds", bounds, "comma list of bound kinds");
  amplify->add_option("--alpha-thresh", alpha_thresh,
                      "exact-summation cutoff (default 256)");
  amplify->add_option("--n", n, "dataset size for asymptotic kinds");

  CLI::App* compose =
      app.add_subcommand("compose", "epsilon as a function of rounds k");
  add_common(compose, true);
  compose->add_option("--gamma", gamma, "sampling fraction")->required();
  compose->add_option("--delta", delta, "target delta")->required();
  compose->add_option("--rounds-max", rounds_max, "largest k (default 600000)");
  compose->add_option("--rounds-points", rounds_points,
                      "k grid size (default 600)");
  compose->add_option("--methods", methods, "comma list of methods");
  compose->add_option("--alpha-thresh", alpha_thresh,
                      "exact-summation cutoff (default 256)");

  CLI::App* convert =
      app.add_subcommand("convert", "(eps, delta) conversion queries");
  add_common(convert, true);
  convert->add_option("--ledger", ledger_path, "ledger JSON file");
  convert->add_option("--gamma", gamma, "subsample the mechanism first");
  convert->add_option("--bound-kind", bound_kind_name,
                      "bound kind when subsampling");
  convert->add_option("--count", count, "composition count (default 1)");
  convert->add_option("--delta", delta, "target delta (solves for eps)");
  convert->add_option("--eps", eps, "target eps (solves for delta)");
  convert->add_option("--tol", tol, "solver argument tolerance");
  convert->add_option("--alpha-thresh", alpha_thresh,
                      "exact-summation cutoff (default 256)");

  CLI::App* verify =
      app.add_subcommand("verify", "sandwich check against the oracle");
  add_common(verify, true);
  add_grid(verify);
  verify->add_option("--gamma", gamma, "sampling fraction")->required();
  verify->add_option("--quad-tol", quad_tol, "quadrature tolerance");
  verify->add_option("--n", n, "dataset size for asymptotic columns");

  grid.alpha_max = 256;

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (!common.config_path.empty()) {
      const json cfg = load_config(common.config_path);
      apply_config(cfg, "mech", &common.mech_json);
      apply_config(cfg, "mech-file", &common.mech_file);
      apply_config(cfg, "output", &common.output_path);
      apply_config(cfg, "format", &common.format);
      apply_config(cfg, "alpha-min", &grid.alpha_min);
      apply_config(cfg, "alpha-max", &grid.alpha_max);
      apply_config(cfg, "alpha-points", &grid.alpha_points);
      apply_config(cfg, "gamma", &gamma);
      apply_config(cfg, "delta", &delta);
      apply_config(cfg, "eps", &eps);
      apply_config(cfg, "quad-tol", &quad_tol);
      apply_config(cfg, "tol", &tol);
      apply_config(cfg, "n", &n);
      apply_config(cfg, "rounds-max", &rounds_max);
      apply_config(cfg, "rounds-points", &rounds_points);
      apply_config(cfg, "count", &count);
      apply_config(cfg, "alpha-thresh", &alpha_thresh);
      apply_config(cfg, "bounds", &bounds);
      apply_config(cfg, "methods", &methods);
      apply_config(cfg, "ledger", &ledger_path);
      apply_config(cfg, "bound-kind", &bound_kind_name);
    }

    if (mech->parsed()) return run_mech(common, grid);
    if (amplify->parsed()) {
      return run_amplify(common, grid, gamma, bounds, alpha_thresh, n);
    }
    if (compose->parsed()) {
      return run_compose(common, gamma, delta, rounds_max, rounds_points,
                         methods, alpha_thresh);
    }
    if (convert->parsed()) {
      return run_convert(common, ledger_path, gamma, bound_kind_name, count,
                         delta, eps, tol, alpha_thresh);
    }
    if (verify->parsed()) {
      return run_verify(common, grid, gamma, quad_tol, n);
    }
    std::cerr << "no subcommand\n";
    return kExitUsage;
  } catch (const CliError& e) {
    std::cerr << e.what() << "\n";
    return e.code();
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }
}
