#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "rdlab/error.hpp"
#include "rdlab/grid/grid.hpp"
#include "rdlab/model/assumptions.hpp"
#include "rdlab/model/reaction_system.hpp"
#include "rdlab/solver/scheme.hpp"

namespace rdlab::cli {

using nlohmann::json;

/// Initial data u_i(x) = base_i + amplitude_i cos(mode_i pi x / L), or the same plus uniform noise
/// of size `noise_i` drawn from the run seed.
struct InitialSpec {
  std::vector<double> base;
  std::vector<double> amplitude;
  std::vector<unsigned> mode;
  std::vector<double> noise;
};

struct DiagnosticsSpec {
  bool entropy = true;
  std::vector<unsigned> energy_p{2};
  bool dual = true;
  bool gn_suite = false;
  std::size_t gn_fields = 1000;
  std::vector<double> gn_eps{1.0, 0.1, 0.01};
  double window = 1.0;
  double r = 3.0;
  double truncation_eps = 0.0;
};

struct RunConfig {
  json resolved;  // fully merged configuration, the input to the content hash
  std::string scenario;
  ReactionSystem system;
  Grid1D grid{1.0, 64};
  SchemeConfig scheme;
  InitialSpec initial;
  DiagnosticsSpec diagnostics;
  std::vector<Assumption> declares;
  std::optional<std::string> output;
  std::uint64_t seed = 0;
};

namespace detail {

inline std::string line_of(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

/// Typed access to a configuration field, reporting the dotted path on failure.
template <class T>
T field(const json& j, const std::string& path, const std::string& key) {
  const std::string where = path.empty() ? key : path + "." + key;
  if (!j.contains(key)) throw ConfigError("missing field '" + where + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError("field '" + where + "' has the wrong type: " + j.at(key).dump());
  }
}

template <class T>
T field_or(const json& j, const std::string& path, const std::string& key, T fallback) {
  if (!j.is_object() || !j.contains(key) || j.at(key).is_null()) return fallback;
  return field<T>(j, path, key);
}

inline json parse_value(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error&) {
    return json(text);
  }
}

inline Polynomial parse_polynomial(const json& terms, std::size_t m, const std::string& path) {
  if (!terms.is_array()) throw ConfigError("field '" + path + "' must be a list of terms");
  Polynomial p;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const std::string where = path + "[" + std::to_string(k) + "]";
    const auto& t = terms[k];
    auto e = field<std::vector<unsigned>>(t, where, "e");
    if (e.size() != m) throw ConfigError("field '" + where + ".e' must have " + std::to_string(m) + " exponents");
    p.push_back(make_monomial(field<double>(t, where, "c"), std::move(e), field_or<double>(t, where, "rate", 0.0)));
  }
  return canonicalize(std::move(p));
}

inline DiffusionField parse_diffusion(const json& d, std::size_t m, const Grid1D& grid, const std::string& path) {
  if (d.is_object()) {
    // {"left": [...], "right": [...], "split": 0.5}: piecewise constant per species
    const auto left = field<std::vector<double>>(d, path, "left");
    const auto right = field<std::vector<double>>(d, path, "right");
    const double split = field_or<double>(d, path, "split", 0.5);
    if (left.size() != m || right.size() != m) throw ConfigError("field '" + path + "' needs one value per species");
    std::vector<Field> values;
    for (std::size_t i = 0; i < m; ++i) {
      Field f(grid.size());
      for (std::size_t j = 0; j < grid.size(); ++j) f[j] = grid.x(j) < split * grid.length() ? left[i] : right[i];
      values.push_back(std::move(f));
    }
    return DiffusionField::per_cell(std::move(values));
  }
  if (!d.is_array() || d.size() != m) throw ConfigError("field '" + path + "' needs one entry per species");
  std::vector<Field> values;
  for (std::size_t i = 0; i < m; ++i) {
    if (d[i].is_number()) {
      values.push_back({d[i].get<double>()});
    } else if (d[i].is_array()) {
      values.push_back(d[i].get<Field>());
    } else {
      throw ConfigError("field '" + path + "[" + std::to_string(i) + "]' must be a number or a list");
    }
  }
  try {
    return DiffusionField::per_cell(std::move(values));
  } catch (const ConfigError& e) {
    throw ConfigError("field '" + path + "': " + e.what());
  }
}

}  // namespace detail

/// Sets `path` (dot-separated; numeric segments index arrays) to `value`, creating objects as needed.
inline void set_path(json& root, const std::string& path, json value) {
  if (path.empty()) throw ConfigError("override has an empty key");
  json* node = &root;
  std::stringstream ss(path);
  std::string segment;
  std::vector<std::string> parts;
  while (std::getline(ss, segment, '.')) parts.push_back(segment);
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const std::string& key = parts[k];
    const bool last = k + 1 == parts.size();
    if (node->is_array()) {
      std::size_t idx = 0;
      try {
        idx = std::stoul(key);
      } catch (const std::exception&) {
        throw ConfigError("override '" + path + "': '" + key + "' is not an array index");
      }
      if (idx >= node->size()) throw ConfigError("override '" + path + "': index " + key + " out of range");
      node = &(*node)[idx];
    } else {
      if (!node->is_object()) *node = json::object();
      node = &(*node)[key];
    }
    if (last) *node = std::move(value);
  }
}

/// Applies "key=value" overrides; values parse as JSON when possible, else as strings.
inline void apply_overrides(json& root, const std::vector<std::string>& overrides) {
  for (const auto& o : overrides) {
    const auto eq = o.find('=');
    if (eq == std::string::npos) throw ConfigError("override '" + o + "' must have the form key=value");
    set_path(root, o.substr(0, eq), detail::parse_value(o.substr(eq + 1)));
  }
}

inline json parse_config_text(const std::string& text, const std::string& source) {
  try {
    json j = json::parse(text);
    if (!j.is_object()) throw ConfigError(source + ": configuration must be an object");
    return j;
  } catch (const json::parse_error& e) {
    throw ConfigError(source + ": " + detail::line_of(text, e.byte == 0 ? 0 : e.byte - 1) + ": " + e.what());
  }
}

inline json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str(), path);
}

inline json default_config() {
  return json{
      {"grid", {{"L", 1.0}, {"n", 128}}},
      {"scheme",
       {{"mode", "robust-patankar"},
        {"dt", 1e-3},
        {"t_end", 10.0},
        {"snapshot_every", 100},
        {"diagnostics_every", 0},
        {"M_max", 1e8},
        {"dt_safety", 0.5},
        {"diffusion", true}}},
      {"diagnostics",
       {{"entropy", true},
        {"energy_p", {2}},
        {"dual", true},
        {"gn_suite", false},
        {"gn_fields", 1000},
        {"gn_eps", {1.0, 0.1, 0.01}},
        {"window", 1.0},
        {"r", 3.0},
        {"truncation_eps", 0.0}}},
      {"seed", 0},
  };
}

inline SchemeConfig parse_scheme(const json& s) {
  const std::string p = "scheme";
  SchemeConfig cfg;
  cfg.mode = scheme_mode_from_string(detail::field<std::string>(s, p, "mode"));
  cfg.dt = detail::field<double>(s, p, "dt");
  cfg.t_end = detail::field<double>(s, p, "t_end");
  cfg.snapshot_every = detail::field<std::size_t>(s, p, "snapshot_every");
  cfg.diagnostics_every = detail::field_or<std::size_t>(s, p, "diagnostics_every", 0);
  cfg.blowup_threshold = detail::field<double>(s, p, "M_max");
  cfg.dt_safety = detail::field_or<double>(s, p, "dt_safety", 0.5);
  cfg.diffusion = detail::field_or<bool>(s, p, "diffusion", true);
  cfg.validate();
  return cfg;
}

inline DiagnosticsSpec parse_diagnostics(const json& d) {
  const std::string p = "diagnostics";
  DiagnosticsSpec spec;
  spec.entropy = detail::field_or<bool>(d, p, "entropy", spec.entropy);
  spec.energy_p = detail::field_or<std::vector<unsigned>>(d, p, "energy_p", spec.energy_p);
  for (unsigned q : spec.energy_p) rdlab::detail::require_config(q >= 2, "diagnostics.energy_p values must be >= 2");
  spec.dual = detail::field_or<bool>(d, p, "dual", spec.dual);
  spec.gn_suite = detail::field_or<bool>(d, p, "gn_suite", spec.gn_suite);
  spec.gn_fields = detail::field_or<std::size_t>(d, p, "gn_fields", spec.gn_fields);
  spec.gn_eps = detail::field_or<std::vector<double>>(d, p, "gn_eps", spec.gn_eps);
  spec.window = detail::field_or<double>(d, p, "window", spec.window);
  rdlab::detail::require_config(spec.window > 0.0, "diagnostics.window must be positive");
  spec.r = detail::field_or<double>(d, p, "r", spec.r);
  spec.truncation_eps = detail::field_or<double>(d, p, "truncation_eps", spec.truncation_eps);
  rdlab::detail::require_config(spec.truncation_eps >= 0.0, "diagnostics.truncation_eps must be non-negative");
  return spec;
}

inline InitialSpec parse_initial(const json& j, std::size_t m) {
  const std::string p = "initial";
  InitialSpec s;
  s.base = detail::field<std::vector<double>>(j, p, "base");
  s.amplitude = detail::field_or<std::vector<double>>(j, p, "amplitude", std::vector<double>(m, 0.0));
  s.mode = detail::field_or<std::vector<unsigned>>(j, p, "mode", std::vector<unsigned>(m, 1));
  s.noise = detail::field_or<std::vector<double>>(j, p, "noise", std::vector<double>(m, 0.0));
  for (const auto* v : {&s.base, &s.amplitude, &s.noise}) {
    rdlab::detail::require_config(v->size() == m, "initial data needs one entry per species");
  }
  rdlab::detail::require_config(s.mode.size() == m, "initial.mode needs one entry per species");
  return s;
}

/// Inline system: species names, either mass-action "reactions" or explicit polynomial "f",
/// "diffusion", and the optional structure sections.
inline ReactionSystem parse_inline_system(const json& s, const Grid1D& grid) {
  const std::string p = "system";
  const auto names = detail::field<std::vector<std::string>>(s, p, "species");
  const std::size_t m = names.size();
  rdlab::detail::require_config(m > 0, "system.species must not be empty");
  ReactionSystem sys;
  const DiffusionField diffusion = detail::parse_diffusion(s.value("diffusion", json()), m, grid, "system.diffusion");
  if (s.contains("reactions")) {
    MassActionNetwork net;
    net.species = m;
    for (std::size_t k = 0; k < s["reactions"].size(); ++k) {
      const auto& r = s["reactions"][k];
      const std::string where = "system.reactions[" + std::to_string(k) + "]";
      net.reactions.push_back(Reaction{detail::field<std::vector<unsigned>>(r, where, "reactants"),
                                       detail::field<std::vector<unsigned>>(r, where, "products"),
                                       detail::field<double>(r, where, "k_forward"),
                                       detail::field_or<double>(r, where, "k_backward", 0.0)});
    }
    sys = compile_network(net, diffusion, names);
  } else if (s.contains("f")) {
    const auto& f = s["f"];
    rdlab::detail::require_config(f.is_array() && f.size() == m, "system.f needs one term list per species");
    for (std::size_t i = 0; i < m; ++i) sys.f.push_back(detail::parse_polynomial(f[i], m, "system.f[" + std::to_string(i) + "]"));
    sys.species = names;
    sys.diffusion = diffusion;
  } else {
    throw ConfigError("system needs either 'reactions' or 'f'");
  }
  if (s.contains("mass_control")) {
    sys.mass_control = MassControl{detail::field<double>(s["mass_control"], "system.mass_control", "k0"),
                                   detail::field<double>(s["mass_control"], "system.mass_control", "k1")};
  }
  if (s.contains("weights")) sys.weights = detail::field<std::vector<double>>(s, p, "weights");
  if (s.contains("entropy")) {
    const auto& e = s["entropy"];
    sys.entropy = EntropyStructure{detail::field<std::vector<double>>(e, "system.entropy", "mu"),
                                   detail::field_or<double>(e, "system.entropy", "k2", 0.0),
                                   detail::field_or<double>(e, "system.entropy", "k3", 0.0)};
  }
  if (s.contains("isc")) {
    sys.isc = IntermediateSum{detail::field<std::vector<std::vector<double>>>(s["isc"], "system.isc", "A"),
                              detail::field<double>(s["isc"], "system.isc", "r")};
  }
  sys.validate();
  return sys;
}

inline std::vector<Assumption> parse_declares(const json& j) {
  std::vector<Assumption> out;
  for (const auto& tagj : j) {
    if (!tagj.is_string()) throw ConfigError("declares entries must be assumption tags");
    out.push_back(assumption_from_tag(tagj.get<std::string>()));
  }
  return out;
}

/// Assumptions a system is checked against when the config does not list them.
inline std::vector<Assumption> default_declares(const ReactionSystem& sys) {
  std::vector<Assumption> out{Assumption::QuasiPositivity};
  if (sys.mass_control && sys.weights) {
    out.push_back(Assumption::WeightedMassControl);
  } else if (sys.mass_control) {
    out.push_back(Assumption::MassControl);
  }
  if (sys.isc) out.push_back(Assumption::IntermediateSum);
  if (sys.entropy) out.push_back(Assumption::Entropy);
  return out;
}

}  // namespace rdlab::cli
