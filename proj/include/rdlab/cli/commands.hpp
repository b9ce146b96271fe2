#pragma once

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "rdlab/cli/config.hpp"
#include "rdlab/cli/manifest.hpp"
#include "rdlab/cli/scenarios.hpp"
#include "rdlab/functionals/energy.hpp"
#include "rdlab/functionals/entropy.hpp"
#include "rdlab/functionals/gagliardo_nirenberg.hpp"
#include "rdlab/functionals/windowed_sup.hpp"
#include "rdlab/grid/holder.hpp"
#include "rdlab/grid/snapshot_io.hpp"
#include "rdlab/model/assumptions.hpp"
#include "rdlab/solver/run.hpp"
#include "rdlab/theta/theta.hpp"

namespace rdlab::cli {

namespace fs = std::filesystem;

enum ExitCode : int { exit_ok = 0, exit_crash = 1, exit_violated = 2, exit_blowup = 3, exit_config = 4 };

inline constexpr const char* output_root_env = "RDLAB_OUTPUT_ROOT";

struct CommandOptions {
  std::optional<std::string> out;
  std::size_t workers = 0;  // 0: hardware concurrency
};

inline fs::path output_root(const RunConfig& cfg, const CommandOptions& opts) {
  if (opts.out) return *opts.out;
  if (cfg.output) return *cfg.output;
  if (const char* env = std::getenv(output_root_env); env && *env) return env;
  return "rdlab-runs";
}

inline std::string run_id(const RunConfig& cfg) { return config_hash(cfg.resolved).substr(0, 16); }

// ---------------------------------------------------------------------------------------------
// check

struct CheckOutcome {
  std::vector<AssumptionReport> reports;
  std::vector<ThetaWeights> theta;
  std::vector<InequalityReport> theta_reports;
  std::vector<Assumption> violated_declared;

  int exit_code() const { return violated_declared.empty() ? exit_ok : exit_violated; }
};

inline double isc_order(const RunConfig& cfg) { return cfg.system.isc ? cfg.system.isc->r : cfg.diagnostics.r; }

/// Runs every checker the system has structure for; only declared ones decide the exit status.
inline CheckOutcome run_checks(const RunConfig& cfg) {
  const ReactionSystem& sys = cfg.system;
  SamplerConfig sampler;
  sampler.seed = sampler.seed + cfg.seed;
  if (!sys.is_autonomous()) sampler.times = {0.0, 0.5, 1.0};
  CheckOutcome out;
  out.reports.push_back(check_quasi_positivity(sys, sampler));
  if (sys.mass_control) {
    out.reports.push_back(check_mass_control(sys, sampler));
    if (sys.weights) out.reports.push_back(check_mass_control(sys, *sys.weights, sampler, Assumption::WeightedMassControl));
  }
  out.reports.push_back(check_growth(sys, sampler));
  if (sys.isc) out.reports.push_back(check_intermediate_sum(sys, sampler));
  if (sys.entropy) out.reports.push_back(check_entropy(sys, sampler));
  for (Assumption a : cfg.declares) {
    const auto it = std::find_if(out.reports.begin(), out.reports.end(),
                                 [a](const AssumptionReport& r) { return r.assumption == a; });
    if (it == out.reports.end()) {
      throw ConfigError("assumption " + tag(a) + " is declared but the system lacks the data to check it");
    }
    if (it->violated()) out.violated_declared.push_back(a);
  }
  for (unsigned p : cfg.diagnostics.energy_p) {
    ThetaWeights w = find_theta(sys.diffusion.species_minima(), p);
    out.theta_reports.push_back(verify_weighted_isc(sys, w, isc_order(cfg), sampler));
    out.theta.push_back(std::move(w));
  }
  return out;
}

inline json to_json(const CheckOutcome& c) {
  json reports = json::array(), theta = json::array(), declared = json::array();
  for (const auto& r : c.reports) reports.push_back(to_json(r));
  for (std::size_t k = 0; k < c.theta.size(); ++k) {
    json t = to_json(c.theta[k]);
    t["weighted_isc"] = to_json(c.theta_reports[k]);
    theta.push_back(t);
  }
  for (Assumption a : c.violated_declared) declared.push_back(tag(a));
  return json{{"assumptions", reports}, {"theta", theta}, {"violated_declared", declared}};
}

inline std::string format_point(const std::vector<double>& u) {
  std::ostringstream os;
  os << '(';
  for (std::size_t k = 0; k < u.size(); ++k) os << (k ? ", " : "") << u[k];
  os << ')';
  return os.str();
}

inline void print_checks(std::ostream& os, const RunConfig& cfg, const CheckOutcome& c) {
  for (const auto& r : c.reports) {
    const bool declared = std::find(cfg.declares.begin(), cfg.declares.end(), r.assumption) != cfg.declares.end();
    os << std::left << std::setw(12) << tag(r.assumption) << std::setw(20) << to_string(r.verdict)
       << "samples=" << r.samples << " max_slack=" << r.max_slack << (declared ? "" : " (informational)") << '\n';
    if (r.witness) {
      os << "    witness u=" << format_point(r.witness->u) << " t=" << r.witness->t << " row=" << r.witness->row
         << " lhs=" << r.witness->lhs << " rhs=" << r.witness->rhs << '\n';
    }
    if (!r.note.empty()) os << "    " << r.note << '\n';
  }
  for (std::size_t k = 0; k < c.theta.size(); ++k) {
    const auto& w = c.theta[k];
    os << "theta p=" << w.p << " " << format_point(w.theta) << " alpha_p=" << w.alpha_p << " K=" << w.K_theta
       << " provenance=" << to_string(w.provenance) << " weighted-isc=" << (c.theta_reports[k].holds ? "holds" : "fails")
       << '\n';
  }
  os << (c.violated_declared.empty() ? "all declared assumptions hold" : "declared assumptions violated") << '\n';
}

inline int cmd_check(const RunConfig& cfg, const CommandOptions& opts, std::ostream& os) {
  const CheckOutcome c = run_checks(cfg);
  print_checks(os, cfg, c);
  if (opts.out || cfg.output || std::getenv(output_root_env)) {
    const fs::path dir = output_root(cfg, opts) / run_id(cfg);
    fs::create_directories(dir);
    json j = to_json(c);
    j["config"] = cfg.resolved;
    j["config_hash"] = config_hash(cfg.resolved);
    j["code_version"] = code_version;
    write_json(dir / "check.json", j);
  }
  return c.exit_code();
}

// ---------------------------------------------------------------------------------------------
// run

inline void write_diagnostics_csv(std::ostream& os, const Trajectory& traj, std::size_t m,
                                  const std::vector<unsigned>& extra_p) {
  os << "# rdlab-diagnostics v1\n";
  os << "t";
  for (const char* name : {"mass", "supnorm", "l2"}) {
    for (std::size_t i = 1; i <= m; ++i) os << ',' << name << '_' << i;
  }
  os << ",entropy,E_2";
  for (unsigned p : extra_p) os << ",E_" << p;
  os << ",dual_residual,min_value\n";
  for (const auto& row : traj.diagnostics) {
    os << rdlab::detail::format_double(row.t);
    for (const auto* v : {&row.mass, &row.supnorm, &row.l2}) {
      for (double x : *v) os << ',' << rdlab::detail::format_double(x);
    }
    os << ',' << rdlab::detail::format_double(row.entropy) << ',' << rdlab::detail::format_double(row.e2);
    for (double e : row.energies) os << ',' << rdlab::detail::format_double(e);
    os << ',' << rdlab::detail::format_double(row.dual_residual) << ',' << rdlab::detail::format_double(row.min_value) << '\n';
  }
}

struct RunSummary {
  std::string id;
  fs::path dir;
  Termination termination = Termination::Completed;
  std::optional<double> blowup_t;
  std::optional<double> plateau_ratio;
  std::optional<bool> bounded;
  std::vector<std::pair<unsigned, double>> energy_constants;
  int exit_code = exit_ok;
};

inline std::vector<unsigned> extra_energy_orders(const RunConfig& cfg) {
  std::vector<unsigned> out;
  for (unsigned p : cfg.diagnostics.energy_p) {
    if (p != 2) out.push_back(p);
  }
  return out;
}

/// Post-run monitors: mass drift, entropy, energy inequalities, windowed sup, duality, MMS error, GN.
inline json run_monitors(const RunConfig& cfg, const RunResult& res, const CheckOutcome& checks, RunSummary& summary,
                         std::ostream& os) {
  const ReactionSystem& sys = cfg.system;
  const auto& rows = res.trajectory.diagnostics;
  const auto& snaps = res.trajectory.snapshots;
  json mon = json::object();

  {
    json drift = json::object();
    json per = json::array();
    for (std::size_t i = 0; i < sys.size(); ++i) {
      const double m0 = rows.front().mass[i], m1 = rows.back().mass[i];
      per.push_back(number(m0 != 0.0 ? (m1 - m0) / std::abs(m0) : m1 - m0));
    }
    drift["per_species"] = per;
    if (sys.weights) {
      auto weighted = [&](const DiagnosticsRow& r) {
        double s = 0.0;
        for (std::size_t i = 0; i < sys.size(); ++i) s += (*sys.weights)[i] * r.mass[i];
        return s;
      };
      const double w0 = weighted(rows.front());
      drift["weighted"] = number((weighted(rows.back()) - w0) / std::abs(w0));
    }
    mon["mass_drift"] = drift;
  }

  if (cfg.diagnostics.entropy) {
    std::vector<double> t, H;
    for (const auto& r : rows) {
      if (std::isfinite(r.entropy)) {
        t.push_back(r.t);
        H.push_back(r.entropy);
      }
    }
    if (t.size() >= 2) {
      const EntropyStructure spec = sys.entropy ? *sys.entropy : EntropyStructure{std::vector<double>(sys.size(), 0.0), 0.0, 0.0};
      const auto rep = entropy_dissipation_check(t, H, spec, cfg.grid.length());
      mon["entropy"] = to_json(rep);
      os << "entropy: " << (rep.holds ? "non-increasing" : "increase detected") << " (" << rep.violations << "/"
         << rep.checked << " steps over slack)\n";
    } else {
      mon["entropy"] = "not collected";
    }
  }

  if (snaps.size() >= 3) {
    json energies = json::array();
    for (std::size_t k = 0; k < checks.theta.size(); ++k) {
      const EnergySpec spec(checks.theta[k]);
      const auto eo = energy_check_options(cfg.scheme.dt, cfg.grid, cfg.system.diffusion);
      const auto rep = energy_inequality_check(res.trajectory, spec, isc_order(cfg), eo);
      energies.push_back(to_json(rep));
      summary.energy_constants.emplace_back(spec.p, rep.fitted_constant);
      os << "energy p=" << spec.p << ": fitted C = " << rep.fitted_constant << '\n';
    }
    mon["energy"] = energies;
  } else {
    mon["energy"] = "not collected";
  }

  {
    std::vector<double> t, s;
    for (const auto& r : rows) {
      t.push_back(r.t);
      s.push_back(r.max_supnorm());
    }
    try {
      const auto w = windowed_sup_test(t, s, cfg.diagnostics.window);
      mon["windowed_sup"] = {{"bounded", w.bounded}, {"plateau_ratio", number(w.plateau_ratio)},
                             {"increase_growth", number(w.increase_growth)}, {"windows", w.y.size()}};
      summary.plateau_ratio = w.plateau_ratio;
      summary.bounded = w.bounded;
      os << "windowed sup: " << (w.bounded ? "bounded" : "not bounded") << " (plateau ratio " << w.plateau_ratio
         << ")\n";
    } catch (const InvalidInput& e) {
      mon["windowed_sup"] = std::string("not collected: ") + e.what();
    }
  }

  if (res.dual) {
    const auto& d = *res.dual;
    const Field grad = face_gradient(d.v, cfg.grid);
    mon["dual"] = {{"residual", number(d.residual)},
                   {"g_exact", d.g_exact},
                   {"b_bounds", {number(d.b_lower), number(d.b_upper)}},
                   {"b_observed", {number(d.b_min_observed), number(d.b_max_observed)}},
                   {"holder_v", to_json(holder_fit(d.v, cfg.grid))},
                   {"holder_dv", to_json(holder_fit(grad, cfg.grid.h()))}};
    os << "dual residual: " << d.residual << (d.g_exact ? "" : " (G without the reaction integral)") << '\n';
  } else {
    mon["dual"] = "not collected";
  }

  if (const auto exact = exact_solution(cfg); exact && !snaps.empty()) {
    const GridState& last = snaps.back();
    double err = 0.0;
    for (std::size_t i = 0; i < last.species(); ++i) {
      for (std::size_t j = 0; j < cfg.grid.size(); ++j) {
        const double e = last.u[i][j] - (*exact)(i, cfg.grid.x(j), last.t);
        err += e * e;
      }
    }
    err = std::sqrt(cfg.grid.h() * err);
    mon["mms_l2_error"] = number(err);
    os << "L2 error against exact solution: " << err << '\n';
  }

  if (cfg.diagnostics.gn_suite && !snaps.empty()) {
    const double C = estimate_gn_constant(cfg.grid, 10000, cfg.seed + 7);
    json suite = json::array();
    for (double eps : cfg.diagnostics.gn_eps) {
      const auto cert = gn_certificate(eps, C);
      std::size_t held = 0, total = 0;
      for (const auto& s : snaps) {
        for (const auto& field : s.u) {
          held += gn_check(field, cert, cfg.grid).holds ? 1 : 0;
          ++total;
        }
      }
      suite.push_back({{"eps", eps}, {"log2_N", cert.log2_N}, {"log2_c_eps", cert.log2_c_eps}, {"held", held},
                       {"checked", total}});
    }
    mon["gn"] = {{"C_GN", C}, {"suite", suite}};
  } else {
    mon["gn"] = "not collected";
  }
  return mon;
}

/// Runs one configuration into <root>/<hash>/; returns the summary. The manifest is marked
/// "running" first and "crashed" if anything throws.
inline RunSummary execute_run(const RunConfig& cfg, const CommandOptions& opts, std::ostream& os) {
  RunSummary summary;
  summary.id = run_id(cfg);
  summary.dir = output_root(cfg, opts) / summary.id;
  fs::create_directories(summary.dir / "snapshots");
  const fs::path manifest_path = summary.dir / "manifest.json";
  json manifest{{"code_version", code_version},
                {"config", cfg.resolved},
                {"config_hash", config_hash(cfg.resolved)},
                {"seed", cfg.seed},
                {"status", "running"}};
  write_json(manifest_path, manifest);
  try {
    const CheckOutcome checks = run_checks(cfg);
    manifest["checks"] = to_json(checks);

    RunOptions ro;
    ro.entropy = cfg.diagnostics.entropy;
    ro.dual = cfg.diagnostics.dual;
    ro.truncation_eps = cfg.diagnostics.truncation_eps;
    const auto extra = extra_energy_orders(cfg);
    for (unsigned p : extra) ro.energies.push_back(make_energy_spec(cfg.system.diffusion.species_minima(), p));
    const RunResult res = run(cfg.system, initial_state(cfg), cfg.scheme, ro);

    json files = json::array({"manifest.json", "diagnostics.csv"});
    {
      std::ofstream csv(summary.dir / "diagnostics.csv");
      write_diagnostics_csv(csv, res.trajectory, cfg.system.size(), extra);
    }
    for (std::size_t k = 0; k < res.trajectory.snapshots.size(); ++k) {
      std::ostringstream name;
      name << "snapshots/snap_" << std::setw(6) << std::setfill('0') << k << ".txt";
      std::ofstream snap(summary.dir / name.str());
      write_snapshot(snap, res.trajectory.snapshots[k]);
      files.push_back(name.str());
    }
    summary.termination = res.termination;
    json term{{"status", to_string(res.termination)}, {"steps", res.steps}, {"min_value", number(res.min_value)}};
    if (res.blowup) {
      summary.blowup_t = res.blowup->t;
      term["t"] = res.blowup->t;
      term["supnorm"] = number(res.blowup->supnorm);
      term["non_finite"] = res.blowup->non_finite;
      os << "blow-up detected at t = " << res.blowup->t << " (sup-norm " << res.blowup->supnorm << ")\n";
    } else {
      os << "completed " << res.steps << " steps to t = " << cfg.scheme.t_end << '\n';
    }
    manifest["termination"] = term;
    manifest["monitors"] = run_monitors(cfg, res, checks, summary, os);
    manifest["files"] = files;
    manifest["status"] = to_string(res.termination);
    write_json(manifest_path, manifest);
    summary.exit_code = res.completed() ? exit_ok : exit_blowup;
    os << "artifacts in " << summary.dir.string() << '\n';
  } catch (const std::exception& e) {
    manifest["status"] = "crashed";
    manifest["error"] = e.what();
    write_json(manifest_path, manifest);
    throw;
  }
  return summary;
}

inline int cmd_run(const RunConfig& cfg, const CommandOptions& opts, std::ostream& os) {
  return execute_run(cfg, opts, os).exit_code;
}

// ---------------------------------------------------------------------------------------------
// sweep

struct SweepAxis {
  std::string path;
  std::vector<json> values;
};

/// "path=v1,v2,..." with JSON-or-string values; commas inside brackets belong to the value, so
/// "params.d=[1,0.5],[0.5,1]" has two values. "path=" gives an empty axis.
inline SweepAxis parse_axis(const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError("axis '" + spec + "' must have the form path=v1,v2,...");
  SweepAxis axis{spec.substr(0, eq), {}};
  std::string item;
  int depth = 0;
  auto flush = [&] {
    if (!item.empty()) axis.values.push_back(detail::parse_value(item));
    item.clear();
  };
  for (char c : spec.substr(eq + 1)) {
    if (c == '[' || c == '{') ++depth;
    if (c == ']' || c == '}') --depth;
    if (c == ',' && depth == 0) {
      flush();
    } else {
      item += c;
    }
  }
  if (depth != 0) throw ConfigError("axis '" + spec + "' has unbalanced brackets");
  flush();
  return axis;
}

inline std::vector<std::vector<json>> cartesian(const std::vector<SweepAxis>& axes) {
  std::vector<std::vector<json>> points{{}};
  for (const auto& axis : axes) {
    std::vector<std::vector<json>> next;
    for (const auto& p : points) {
      for (const auto& v : axis.values) {
        auto q = p;
        q.push_back(v);
        next.push_back(std::move(q));
      }
    }
    points = std::move(next);
  }
  return points;
}

struct SweepRow {
  std::vector<json> values;
  std::string id;
  int check_status = -1;
  std::string termination;
  std::string blowup_t;
  std::string plateau_ratio;
  std::string bounded;
  std::vector<std::pair<unsigned, double>> energy_constants;
  std::string error;
};

/// Every point of the axis product runs independently on a bounded worker pool; failures are
/// recorded in their row and do not stop the sweep.
inline std::vector<SweepRow> sweep(const json& user, const std::vector<SweepAxis>& axes, const CommandOptions& opts) {
  const auto points = cartesian(axes);
  std::vector<SweepRow> rows(points.size());
  std::size_t workers = opts.workers ? opts.workers : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, std::max<std::size_t>(points.size(), 1));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t k = next++; k < points.size(); k = next++) {
      SweepRow& row = rows[k];
      row.values = points[k];
      try {
        json doc = user;
        for (std::size_t a = 0; a < axes.size(); ++a) set_path(doc, axes[a].path, points[k][a]);
        const RunConfig cfg = resolve_config(doc);
        row.id = run_id(cfg);
        row.check_status = run_checks(cfg).exit_code();
        std::ostringstream quiet;
        const RunSummary s = execute_run(cfg, opts, quiet);
        row.termination = to_string(s.termination);
        if (s.blowup_t) row.blowup_t = rdlab::detail::format_double(*s.blowup_t);
        if (s.plateau_ratio) row.plateau_ratio = rdlab::detail::format_double(*s.plateau_ratio);
        if (s.bounded) row.bounded = *s.bounded ? "true" : "false";
        row.energy_constants = s.energy_constants;
      } catch (const std::exception& e) {
        row.termination = "error";
        row.error = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  return rows;
}

inline std::string csv_field(std::string s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

inline void write_sweep_csv(std::ostream& os, const std::vector<SweepAxis>& axes, const std::vector<SweepRow>& rows,
                            const std::vector<unsigned>& energy_p) {
  os << "run_id";
  for (const auto& a : axes) os << ',' << csv_field(a.path);
  os << ",check_status,termination,blowup_t,plateau_ratio,bounded";
  for (unsigned p : energy_p) os << ",energy_C_p" << p;
  os << ",error\n";
  for (const auto& r : rows) {
    os << r.id;
    for (const auto& v : r.values) os << ',' << csv_field(v.is_string() ? v.get<std::string>() : v.dump());
    os << ',' << (r.check_status >= 0 ? std::to_string(r.check_status) : "") << ',' << r.termination << ','
       << r.blowup_t << ',' << r.plateau_ratio << ',' << r.bounded;
    for (unsigned p : energy_p) {
      std::string c;
      for (const auto& [q, value] : r.energy_constants) {
        if (q == p) c = rdlab::detail::format_double(value);
      }
      os << ',' << c;
    }
    os << ',' << csv_field(r.error) << '\n';
  }
}

inline int cmd_sweep(const json& user, const std::vector<SweepAxis>& axes, const CommandOptions& opts,
                     std::ostream& os) {
  const RunConfig base = resolve_config(user);
  json key = base.resolved;
  for (const auto& a : axes) key["sweep_axes"][a.path] = a.values;
  const fs::path dir = output_root(base, opts) / ("sweep-" + config_hash(key).substr(0, 16));
  fs::create_directories(dir);
  const auto rows = sweep(user, axes, opts);
  {
    std::ofstream csv(dir / "sweep.csv");
    write_sweep_csv(csv, axes, rows, base.diagnostics.energy_p);
  }
  std::size_t failed = 0;
  for (const auto& r : rows) failed += r.termination == "error" ? 1 : 0;
  os << rows.size() << " runs, " << failed << " failed; table in " << (dir / "sweep.csv").string() << '\n';
  write_sweep_csv(os, axes, rows, base.diagnostics.energy_p);
  return exit_ok;
}

// ---------------------------------------------------------------------------------------------
// report

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::ptrdiff_t column(const std::string& name) const {
    const auto it = std::find(header.begin(), header.end(), name);
    return it == header.end() ? -1 : it - header.begin();
  }
};

inline CsvTable read_diagnostics_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path.string());
  CsvTable t;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    std::string cell;
    if (t.header.empty()) {
      while (std::getline(ss, cell, ',')) t.header.push_back(cell);
      continue;
    }
    std::vector<double> row;
    while (std::getline(ss, cell, ',')) row.push_back(std::strtod(cell.c_str(), nullptr));
    if (row.size() != t.header.size()) throw InvalidInput("corrupt diagnostics row in " + path.string());
    t.rows.push_back(std::move(row));
  }
  return t;
}

inline std::string value_text(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_float()) {
    std::ostringstream os;
    os << j.get<double>();
    return os.str();
  }
  return j.dump();
}

inline int cmd_report(const fs::path& dir, std::ostream& os) {
  const json m = read_json(dir / "manifest.json");
  if (!m.contains("status") || !m.contains("config")) throw InvalidInput("manifest in " + dir.string() + " is incomplete");
  os << "run " << dir.filename().string() << "  status: " << m["status"].get<std::string>() << '\n';
  if (m["config"].contains("scenario")) os << "scenario: " << value_text(m["config"]["scenario"]) << '\n';
  if (m.contains("termination")) {
    const auto& t = m["termination"];
    os << "termination: " << value_text(t["status"]) << " after " << value_text(t["steps"]) << " steps";
    if (t.contains("t")) os << " at t = " << value_text(t["t"]);
    os << "; min value " << value_text(t["min_value"]) << '\n';
  }
  const json empty = json::object();
  const json& mon = m.contains("monitors") ? m["monitors"] : empty;
  auto section = [&](const std::string& title) { os << "\n== " << title << " ==\n"; };
  auto missing = [&](const std::string& key) { return !mon.contains(key) || mon[key].is_string(); };

  section("mass drift");
  const fs::path csv_path = dir / "diagnostics.csv";
  if (fs::exists(csv_path)) {
    const CsvTable t = read_diagnostics_csv(csv_path);
    if (!t.rows.empty()) {
      os << "series t in [" << t.rows.front()[0] << ", " << t.rows.back()[0] << "], " << t.rows.size() << " rows\n";
      for (std::size_t c = 0; c < t.header.size(); ++c) {
        if (t.header[c].rfind("mass_", 0) != 0) continue;
        const double a = t.rows.front()[c], b = t.rows.back()[c];
        os << "  " << std::left << std::setw(10) << t.header[c] << " start " << std::setw(14) << a << " end "
           << std::setw(14) << b << " relative change " << (a != 0.0 ? (b - a) / std::abs(a) : b - a) << '\n';
      }
    }
  } else {
    os << "not collected\n";
  }
  if (!missing("mass_drift") && mon["mass_drift"].contains("weighted")) {
    os << "  weighted mass relative drift " << value_text(mon["mass_drift"]["weighted"]) << '\n';
  }

  section("entropy monotonicity");
  if (missing("entropy")) {
    os << "not collected\n";
  } else {
    const auto& e = mon["entropy"];
    os << "violations " << value_text(e["violations"]) << " of " << value_text(e["checked"]) << " steps; worst excess "
       << value_text(e["worst_slack"]) << " at t = " << value_text(e["worst_t"]) << "; " << value_text(e["note"]) << '\n';
  }

  section("energy inequality");
  if (missing("energy")) {
    os << "not collected\n";
  } else {
    for (const auto& e : mon["energy"]) {
      os << "  " << value_text(e["name"]) << ": fitted C = " << value_text(e["fitted_constant"]) << " (worst t = "
         << value_text(e["worst_t"]) << ", " << value_text(e["note"]) << ")\n";
    }
  }

  section("windowed sup");
  if (missing("windowed_sup")) {
    os << (mon.contains("windowed_sup") ? value_text(mon["windowed_sup"]) : "not collected") << '\n';
  } else {
    const auto& w = mon["windowed_sup"];
    os << (w["bounded"].get<bool>() ? "bounded" : "not bounded") << ", plateau ratio " << value_text(w["plateau_ratio"])
       << ", " << value_text(w["windows"]) << " windows\n";
  }

  section("Hoelder fits of v and dv/dx");
  if (missing("dual")) {
    os << "not collected\n";
  } else {
    const auto& d = mon["dual"];
    os << "  v:     exponent " << value_text(d["holder_v"]["exponent"]) << ", constant "
       << value_text(d["holder_v"]["constant"]) << '\n';
    os << "  dv/dx: exponent " << value_text(d["holder_dv"]["exponent"]) << ", constant "
       << value_text(d["holder_dv"]["constant"]) << '\n';
    os << "  dual residual " << value_text(d["residual"]) << ", b observed in [" << value_text(d["b_observed"][0])
       << ", " << value_text(d["b_observed"][1]) << "] within bounds [" << value_text(d["b_bounds"][0]) << ", "
       << value_text(d["b_bounds"][1]) << "]\n";
  }

  section("GN suite");
  if (missing("gn")) {
    os << "not collected\n";
  } else {
    os << "C_GN = " << value_text(mon["gn"]["C_GN"]) << '\n';
    for (const auto& s : mon["gn"]["suite"]) {
      os << "  eps " << value_text(s["eps"]) << ": " << value_text(s["held"]) << "/" << value_text(s["checked"])
         << " fields pass (log2 c_eps = " << value_text(s["log2_c_eps"]) << ")\n";
    }
  }
  if (mon.contains("mms_l2_error")) os << "\nL2 error against exact solution: " << value_text(mon["mms_l2_error"]) << '\n';
  return exit_ok;
}

// ---------------------------------------------------------------------------------------------
// gn-test, energy-test

struct GnSuiteResult {
  double C_GN = 0.0;
  std::vector<GnCertificate> certificates;
  std::vector<std::size_t> violations;
  std::vector<double> max_empirical_c;
  std::size_t fields = 0;
};

/// Certified inequality on `fields` random fields (alternating bump mixtures and Fourier sums).
inline GnSuiteResult gn_suite(const Grid1D& grid, std::size_t fields, const std::vector<double>& eps,
                              std::uint64_t seed) {
  GnSuiteResult out;
  out.C_GN = estimate_gn_constant(grid, 10000, seed + 7);
  out.fields = fields;
  for (double e : eps) out.certificates.push_back(gn_certificate(e, out.C_GN));
  out.violations.assign(eps.size(), 0);
  out.max_empirical_c.assign(eps.size(), 0.0);
  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; k < fields; ++k) {
    const auto family = k % 2 == 0 ? GnFamily::GaussianBumps : GnFamily::Fourier;
    const Field f = random_gn_field(family, grid, rng);
    for (std::size_t e = 0; e < eps.size(); ++e) {
      const GnResult r = gn_check(f, out.certificates[e], grid);
      if (!r.holds) ++out.violations[e];
      out.max_empirical_c[e] = std::max(out.max_empirical_c[e], r.empirical_c);
    }
  }
  return out;
}

inline int cmd_gn_test(const RunConfig& cfg, std::ostream& os) {
  const auto r = gn_suite(cfg.grid, cfg.diagnostics.gn_fields, cfg.diagnostics.gn_eps, cfg.seed);
  os << "C_GN = " << r.C_GN << " on n = " << cfg.grid.size() << ", " << r.fields << " fields\n";
  bool ok = true;
  for (std::size_t e = 0; e < r.certificates.size(); ++e) {
    const auto& c = r.certificates[e];
    os << "eps " << c.eps << ": N = 2^" << c.log2_N << ", c_eps = 2^" << c.log2_c_eps << ", violations "
       << r.violations[e] << ", max empirical c " << r.max_empirical_c[e] << '\n';
    ok = ok && r.violations[e] == 0;
  }
  return ok ? exit_ok : exit_violated;
}

inline int cmd_energy_test(const RunConfig& cfg, std::ostream& os) {
  RunOptions ro;
  ro.entropy = false;
  ro.dual = false;
  const RunResult res = run(cfg.system, initial_state(cfg), cfg.scheme, ro);
  if (res.trajectory.snapshots.size() < 3) throw ConfigError("energy test needs at least three snapshots");
  const double r = isc_order(cfg);
  for (unsigned p : cfg.diagnostics.energy_p) {
    const EnergySpec spec = make_energy_spec(cfg.system.diffusion.species_minima(), p);
    const auto eo = energy_check_options(cfg.scheme.dt, cfg.grid, cfg.system.diffusion);
    const auto rep = energy_inequality_check(res.trajectory, spec, r, eo);
    os << "p=" << p << " r=" << r << " alpha_p=" << spec.theta.alpha_p << " fitted C = " << rep.fitted_constant
       << " (worst t = " << rep.worst_t << ", " << rep.checked << " interior snapshots)\n";
  }
  if (!res.completed()) {
    os << "run blew up at t = " << res.blowup->t << "; constants cover the computed part only\n";
    return exit_blowup;
  }
  return exit_ok;
}

}  // namespace rdlab::cli
