#pragma once

#include <openssl/evp.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include "json.hpp"
#include "rdlab/error.hpp"
#include "rdlab/grid/holder.hpp"
#include "rdlab/inequality_report.hpp"
#include "rdlab/model/assumptions.hpp"
#include "rdlab/theta/theta.hpp"

namespace rdlab::cli {

using nlohmann::json;

inline constexpr const char* code_version = "rdlab 0.1.0";

inline std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx, data.data(), data.size()) != 1 || EVP_DigestFinal_ex(ctx, digest, &len) != 1) {
    EVP_MD_CTX_free(ctx);
    throw Error("sha256 computation failed");
  }
  EVP_MD_CTX_free(ctx);
  std::ostringstream os;
  for (unsigned int k = 0; k < len; ++k) os << std::hex << std::setw(2) << std::setfill('0') << int(digest[k]);
  return os.str();
}

/// Hash of the canonical (key-sorted, compact) serialization of the resolved config.
inline std::string config_hash(const json& resolved) { return sha256_hex(resolved.dump()); }

/// JSON numbers cannot carry inf or nan; those become strings.
inline json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

inline json to_json(const AssumptionReport& r) {
  json j{{"assumption", tag(r.assumption)},
         {"verdict", to_string(r.verdict)},
         {"samples", r.samples},
         {"max_slack", number(r.max_slack)},
         {"note", r.note}};
  if (r.witness) {
    json u = json::array();
    for (double v : r.witness->u) u.push_back(number(v));
    j["witness"] = {{"u", u}, {"t", r.witness->t}, {"row", r.witness->row}, {"lhs", number(r.witness->lhs)},
                    {"rhs", number(r.witness->rhs)}};
  }
  if (!r.exponents.empty()) {
    json e = json::array(), c = json::array();
    for (double v : r.exponents) e.push_back(number(v));
    for (double v : r.constants) c.push_back(number(v));
    j["exponents"] = e;
    j["constants"] = c;
  }
  return j;
}

inline json to_json(const InequalityReport& r) {
  json e = json::array();
  for (double v : r.exponents) e.push_back(number(v));
  return json{{"name", r.name},
              {"holds", r.holds},
              {"satisfied", number(r.satisfied)},
              {"fitted_constant", number(r.fitted_constant)},
              {"worst_t", number(r.worst_t)},
              {"worst_slack", number(r.worst_slack)},
              {"checked", r.checked},
              {"violations", r.violations},
              {"exponents", e},
              {"note", r.note}};
}

inline json to_json(const ThetaWeights& w) {
  return json{{"p", w.p},
              {"theta", w.theta},
              {"alpha_p", number(w.alpha_p)},
              {"K_theta", number(w.K_theta)},
              {"provenance", to_string(w.provenance)},
              {"isc_verified", w.isc_verified}};
}

inline json to_json(const HolderEstimate& h) {
  return json{{"exponent", number(h.exponent)}, {"constant", number(h.constant)}, {"fit_residual", number(h.fit_residual)}};
}

inline void write_json(const std::filesystem::path& path, const json& j) {
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) throw Error("cannot write " + path.string());
    out << j.dump(2) << '\n';
  }
  std::filesystem::rename(tmp, path);
}

inline json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidInput("corrupt manifest " + path.string() + ": " + e.what());
  }
}

}  // namespace rdlab::cli
