#pragma once

#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "rdlab/cli/config.hpp"
#include "rdlab/error.hpp"
#include "rdlab/grid/grid.hpp"
#include "rdlab/model/reaction_system.hpp"

namespace rdlab::cli {

/// Exact solution u_i(x, t) for manufactured-solution scenarios.
using ExactSolution = std::function<double(std::size_t species, double x, double t)>;

struct Scenario {
  std::string name;
  std::string summary;
  json defaults;  // merged under the user configuration
  std::function<ReactionSystem(const json& params, const Grid1D& grid)> build;
  std::function<std::optional<ExactSolution>(const json& params, const Grid1D& grid)> exact;
};

namespace detail {

/// alpha U + beta V <-> gamma W with rates kf, kb.
inline ReactionSystem example15_system(const json& params, DiffusionField diffusion) {
  const auto a = field_or<unsigned>(params, "params", "alpha", 2);
  const auto b = field_or<unsigned>(params, "params", "beta", 2);
  const auto g = field_or<unsigned>(params, "params", "gamma", 3);
  const double kf = field_or<double>(params, "params", "kf", 1.0);
  const double kb = field_or<double>(params, "params", "kb", 1.0);
  rdlab::detail::require_config(a >= 1 && b >= 1 && g >= 1, "params.alpha, beta, gamma must be >= 1");
  MassActionNetwork net;
  net.species = 3;
  net.reactions.push_back(Reaction{{a, b, 0}, {0, 0, g}, kf, kb});
  ReactionSystem sys = compile_network(net, std::move(diffusion), {"u", "v", "w"});
  const double ga = static_cast<double>(g);
  sys.mass_control = MassControl{0.0, 0.0};
  sys.weights = std::vector<double>{ga, ga, static_cast<double>(a + b)};
  sys.entropy = EntropyStructure{{0.0, 0.0, 0.0}, 0.0, 0.0};
  sys.isc = IntermediateSum{{{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {ga / a, 0.0, 1.0}},
                            field_or<double>(params, "params", "r", 3.0)};
  sys.validate();
  return sys;
}

inline json example15_defaults(unsigned alpha, unsigned beta, unsigned gamma) {
  return json{
      {"params", {{"alpha", alpha}, {"beta", beta}, {"gamma", gamma}, {"kf", 1.0}, {"kb", 1.0}, {"d", {1.0, 2.0, 3.0}}}},
      {"grid", {{"L", 1.0}, {"n", 128}}},
      {"scheme", {{"mode", "robust-patankar"}, {"dt", 1e-3}, {"t_end", 200.0}, {"snapshot_every", 100},
                  {"diagnostics_every", 10}}},
      {"initial", {{"base", {1.0, 1.0, 0.5}}, {"amplitude", {0.5, 0.4, 0.3}}, {"mode", {1, 2, 3}}}},
      {"declares", {"A1", "A2-weighted", "A4", "E"}},
  };
}

}  // namespace detail

inline const std::vector<Scenario>& scenario_library() {
  static const std::vector<Scenario> library = [] {
    std::vector<Scenario> s;
    s.push_back(Scenario{
        "example15-cubic",
        "2U + 2V <-> 3W, unit rates, d = (1, 2, 3)",
        detail::example15_defaults(2, 2, 3),
        [](const json& p, const Grid1D&) {
          return detail::example15_system(p, DiffusionField::constant(detail::field<std::vector<double>>(p, "params", "d")));
        },
        nullptr});
    s.push_back(Scenario{
        "example15-lowdeg",
        "U + V <-> 3W, unit rates, d = (1, 2, 3)",
        detail::example15_defaults(1, 1, 3),
        [](const json& p, const Grid1D&) {
          return detail::example15_system(p, DiffusionField::constant(detail::field<std::vector<double>>(p, "params", "d")));
        },
        nullptr});
    {
      json d = detail::example15_defaults(2, 2, 3);
      d["params"].erase("d");
      d["params"]["low"] = 0.1;
      d["params"]["high"] = 10.0;
      d["scheme"]["t_end"] = 50.0;
      d["diagnostics"] = {{"dual", false}};
      s.push_back(Scenario{
          "example15-discdiff",
          "2U + 2V <-> 3W with diffusion jumping between 0.1 and 10 at x = L/2",
          d,
          [](const json& p, const Grid1D& grid) {
            const double lo = detail::field<double>(p, "params", "low");
            const double hi = detail::field<double>(p, "params", "high");
            std::vector<Field> values;
            for (std::size_t i = 0; i < 3; ++i) {
              Field f(grid.size());
              for (std::size_t j = 0; j < grid.size(); ++j) {
                const bool left = grid.x(j) < 0.5 * grid.length();
                f[j] = (left == (i % 2 == 0)) ? lo : hi;
              }
              values.push_back(std::move(f));
            }
            return detail::example15_system(p, DiffusionField::per_cell(std::move(values)));
          },
          nullptr});
    }
    s.push_back(Scenario{
        "lotka",
        "u' = u - uv, v' = uv - v, d = (1, 0.5)",
        json{{"params", {{"d", {1.0, 0.5}}}},
             {"grid", {{"L", 1.0}, {"n", 128}}},
             {"scheme", {{"mode", "robust-patankar"}, {"dt", 1e-3}, {"t_end", 20.0}, {"snapshot_every", 100},
                         {"diagnostics_every", 10}}},
             {"initial", {{"base", {1.0, 0.5}}, {"amplitude", {0.5, 0.25}}, {"mode", {1, 2}}}},
             {"declares", {"A1", "A2-weighted"}}},
        [](const json& p, const Grid1D&) {
          ReactionSystem sys;
          sys.species = {"u", "v"};
          sys.f = {canonicalize({make_monomial(1.0, {1, 0}), make_monomial(-1.0, {1, 1})}),
                   canonicalize({make_monomial(1.0, {1, 1}), make_monomial(-1.0, {0, 1})})};
          sys.diffusion = DiffusionField::constant(detail::field<std::vector<double>>(p, "params", "d"));
          sys.mass_control = MassControl{0.0, 1.0};
          sys.weights = std::vector<double>{1.0, 1.0};
          sys.validate();
          return sys;
        },
        nullptr});
    s.push_back(Scenario{
        "heat-mms",
        "u_t = d u_xx + 1 - u/2 with d = 1/(2 pi^2): exact u = 2 + cos(pi x / L) e^{-t} for L = 1",
        json{{"params", json::object()},
             {"grid", {{"L", 1.0}, {"n", 128}}},
             {"scheme", {{"mode", "conservative-explicit"}, {"dt", 1e-5}, {"t_end", 0.5}, {"snapshot_every", 10000},
                         {"diagnostics_every", 1000}}},
             {"initial", {{"base", {2.0}}, {"amplitude", {1.0}}, {"mode", {1}}}},
             {"diagnostics", {{"dual", false}}},
             {"declares", {"A1", "A2"}}},
        [](const json&, const Grid1D& grid) {
          const double pi2 = std::numbers::pi * std::numbers::pi;
          const double L = grid.length();
          // lambda = d (pi/L)^2 = 1/2 fixes the forcing 1 - u/2.
          ReactionSystem sys;
          sys.species = {"u"};
          sys.f = {canonicalize({make_monomial(1.0, {0}), make_monomial(-0.5, {1})})};
          sys.diffusion = DiffusionField::constant({L * L / (2.0 * pi2)});
          sys.mass_control = MassControl{1.0, 0.0};
          sys.validate();
          return sys;
        },
        [](const json&, const Grid1D& grid) -> std::optional<ExactSolution> {
          const double L = grid.length();
          return ExactSolution([L](std::size_t, double x, double t) {
            return 2.0 + std::cos(std::numbers::pi * x / L) * std::exp(-t);
          });
        }});
    s.push_back(Scenario{
        "blowup-demo",
        "u' = u^2 without diffusion from u0 = 10: blows up at t = 0.1",
        json{{"params", json::object()},
             {"grid", {{"L", 1.0}, {"n", 16}}},
             {"scheme", {{"mode", "robust-patankar"}, {"dt", 1e-5}, {"t_end", 0.2}, {"snapshot_every", 1000},
                         {"diagnostics_every", 100}, {"M_max", 1e6}, {"diffusion", false}}},
             {"initial", {{"base", {10.0}}}},
             {"diagnostics", {{"dual", false}}},
             {"declares", {"A1", "A2"}}},
        [](const json&, const Grid1D&) {
          ReactionSystem sys;
          sys.species = {"u"};
          sys.f = {{make_monomial(1.0, {2})}};
          sys.diffusion = DiffusionField::constant({1.0});
          sys.mass_control = MassControl{0.0, 0.0};
          sys.validate();
          return sys;
        },
        nullptr});
    return s;
  }();
  return library;
}

inline const Scenario& find_scenario(const std::string& name) {
  for (const auto& s : scenario_library()) {
    if (s.name == name) return s;
  }
  std::string known;
  for (const auto& s : scenario_library()) known += (known.empty() ? "" : ", ") + s.name;
  throw ConfigError("unknown scenario '" + name + "' (known: " + known + ")");
}

/// Merges defaults, scenario defaults and the user document, then builds every component.
inline RunConfig resolve_config(const json& user) {
  json merged = default_config();
  std::string scenario = user.value("scenario", std::string());
  const Scenario* sc = nullptr;
  if (!scenario.empty()) {
    sc = &find_scenario(scenario);
    merged.merge_patch(sc->defaults);
  } else if (!user.contains("system")) {
    throw ConfigError("config needs either 'scenario' or 'system'");
  }
  merged.merge_patch(user);

  RunConfig cfg;
  cfg.scenario = scenario;
  const json& g = merged.at("grid");
  cfg.grid = Grid1D(detail::field<double>(g, "grid", "L"), detail::field<std::size_t>(g, "grid", "n"));
  cfg.scheme = parse_scheme(merged.at("scheme"));
  cfg.diagnostics = parse_diagnostics(merged.at("diagnostics"));
  if (sc) {
    if (user.contains("system")) throw ConfigError("'system' cannot be combined with 'scenario'; use 'params'");
    cfg.system = sc->build(merged.value("params", json::object()), cfg.grid);
  } else {
    cfg.system = parse_inline_system(merged.at("system"), cfg.grid);
  }
  if (!merged.contains("initial")) throw ConfigError("missing field 'initial'");
  cfg.initial = parse_initial(merged.at("initial"), cfg.system.size());
  cfg.declares = merged.contains("declares") ? parse_declares(merged.at("declares")) : default_declares(cfg.system);
  if (merged.contains("output") && merged["output"].is_string()) cfg.output = merged["output"].get<std::string>();
  cfg.seed = detail::field<std::uint64_t>(merged, "", "seed");
  merged.erase("output");
  cfg.resolved = std::move(merged);
  return cfg;
}

inline std::optional<ExactSolution> exact_solution(const RunConfig& cfg) {
  if (cfg.scenario.empty()) return std::nullopt;
  const Scenario& sc = find_scenario(cfg.scenario);
  if (!sc.exact) return std::nullopt;
  return sc.exact(cfg.resolved.value("params", json::object()), cfg.grid);
}

/// Grid state from the initial-data section; noise is drawn from the run seed.
inline GridState initial_state(const RunConfig& cfg) {
  GridState s{cfg.grid, 0.0, {}};
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double L = cfg.grid.length();
  for (std::size_t i = 0; i < cfg.system.size(); ++i) {
    Field f(cfg.grid.size());
    for (std::size_t j = 0; j < f.size(); ++j) {
      const double x = cfg.grid.x(j);
      f[j] = cfg.initial.base[i] + cfg.initial.amplitude[i] * std::cos(cfg.initial.mode[i] * std::numbers::pi * x / L);
      if (cfg.initial.noise[i] > 0.0) f[j] += cfg.initial.noise[i] * unit(rng);
    }
    if (*std::min_element(f.begin(), f.end()) < 0.0) {
      throw ConfigError("initial data for species " + cfg.system.species[i] + " is negative somewhere");
    }
    s.u.push_back(std::move(f));
  }
  return s;
}

}  // namespace rdlab::cli
