/**********
 *   Copyright 2026 The radpol Authors
 *
 *   Licensed under the Apache License, Version 2.0 (the "License");
 *   you may not use this file except in compliance with the License.
 *   You may obtain a copy of the License at
 *
 *       http://www.apache.org/licenses/LICENSE-2.0
 *
 *   Unless required by applicable law or agreed to in writing, software
 *   distributed under the License is distributed on an "AS IS" BASIS,
 *   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 *   See the License for the specific language governing permissions and
 *   limitations under the License.
\**********/
#pragma once

// JSON experiment configuration. The accepted schema (all angles need an
// explicit unit suffix):
//
// {
//   "sample": [ {"kind": "hwp", "theta_deg": 22.5}, ... ]        // chain, or
//   "sample": {"ensemble": [ {"weight": 0.5, "element": {...}},
//                            ... ]},                             // mixture
//   "scheme": "oracle" | "conventional" | "two_dof_bench" | "all",
//   "noise":  {"sigma_rel": 1e-3, "dark": 0.0, "poisson_photons": 1e6},
//   "trials": 200,
//   "seed":   12345,
//   "render": {"nx": 512, "ny": 512, "extent": 3.0, "waist": 1.0}
// }
//
// Element kinds: hwp, qwp, rotator, polarizer (each takes theta_deg or
// theta_rad) and custom (takes "matrix": 2x2 of [re, im] pairs). The chain
// is listed in traversal order: the first entry is hit first.

#include <cstdint>
#include <fstream>
#include <initializer_list>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "radpol/bench.hpp"
#include "radpol/elements.hpp"
#include "radpol/errors.hpp"
#include "radpol/fields.hpp"

namespace radpol {

inline constexpr const char* kVersion = "1.0.0";

enum class Scheme { oracle, conventional, two_dof_bench, all };

inline std::string scheme_name(Scheme s) {
  switch (s) {
    case Scheme::oracle: return "oracle";
    case Scheme::conventional: return "conventional";
    case Scheme::two_dof_bench: return "two_dof_bench";
    case Scheme::all: return "all";
  }
  throw ValidationError("unreachable scheme value");
}

inline Scheme scheme_from_name(const std::string& name) {
  if (name == "oracle") return Scheme::oracle;
  if (name == "conventional") return Scheme::conventional;
  if (name == "two_dof_bench") return Scheme::two_dof_bench;
  if (name == "all") return Scheme::all;
  throw ValidationError("unknown scheme \"" + name +
                        "\" (expected oracle, conventional, two_dof_bench or all)");
}

struct ExperimentConfig {
  bool is_ensemble = false;
  std::vector<ElementSpec> chain;   // valid when !is_ensemble
  DepolarizingEnsemble ensemble;    // valid when is_ensemble
  Scheme scheme = Scheme::all;
  std::optional<NoiseSpec> noise;
  int trials = 1;
  std::uint64_t seed = 1;
  std::optional<Grid> render;
  std::string config_hash;  // 16 hex digits over the canonical form

  // Composed Jones matrix of a pure (non-ensemble) sample.
  Complex2x2 jones() const {
    if (is_ensemble) throw ValidationError("sample is an ensemble, not a single Jones matrix");
    return compose(chain);
  }

  // Uniform handle: a pure sample becomes a weight-1 singleton.
  DepolarizingEnsemble effective_ensemble() const {
    if (is_ensemble) return ensemble;
    return DepolarizingEnsemble{{{1.0, jones()}}};
  }
};

namespace detail {

inline std::uint64_t fnv1a64(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[static_cast<std::size_t>(i)] = digits[v & 0xF];
    v >>= 4;
  }
  return s;
}

inline void require_keys(const nlohmann::json& j, std::initializer_list<const char*> allowed,
                         const std::string& where) {
  for (const auto& item : j.items()) {
    bool ok = false;
    for (const char* k : allowed)
      if (item.key() == k) ok = true;
    if (!ok) throw ValidationError("unknown key \"" + item.key() + "\" in " + where);
  }
}

inline double require_number(const nlohmann::json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw ValidationError("missing \"" + std::string(key) + "\" in " + where);
  if (!j.at(key).is_number())
    throw ValidationError("\"" + std::string(key) + "\" in " + where + " must be a number");
  return j.at(key).get<double>();
}

inline std::string kind_name(ElementType t) {
  switch (t) {
    case ElementType::half_wave: return "hwp";
    case ElementType::quarter_wave: return "qwp";
    case ElementType::rotator: return "rotator";
    case ElementType::polarizer: return "polarizer";
    case ElementType::custom: return "custom";
  }
  throw ValidationError("unreachable element kind");
}

inline ElementSpec element_from_json(const nlohmann::json& j, const std::string& where) {
  if (!j.is_object()) throw ValidationError(where + " must be an object");
  if (!j.contains("kind") || !j.at("kind").is_string())
    throw ValidationError(where + " needs a string \"kind\"");
  if (j.contains("theta"))
    throw ValidationError(where + ": bare \"theta\" is ambiguous, use theta_deg or theta_rad");
  const std::string kind = j.at("kind").get<std::string>();

  ElementSpec spec;
  if (kind == "custom") {
    require_keys(j, {"kind", "matrix"}, where);
    spec.type = ElementType::custom;
    if (!j.contains("matrix") || !j.at("matrix").is_array() || j.at("matrix").size() != 2)
      throw ValidationError(where + ": custom element needs a 2x2 \"matrix\"");
    for (int r = 0; r < 2; ++r) {
      const auto& row = j.at("matrix").at(static_cast<std::size_t>(r));
      if (!row.is_array() || row.size() != 2)
        throw ValidationError(where + ": matrix rows must hold two [re, im] pairs");
      for (int c = 0; c < 2; ++c) {
        const auto& cell = row.at(static_cast<std::size_t>(c));
        if (!cell.is_array() || cell.size() != 2 || !cell.at(0).is_number() ||
            !cell.at(1).is_number())
          throw ValidationError(where + ": matrix entries must be [re, im] number pairs");
        spec.custom.e[r][c] = cplx(cell.at(0).get<double>(), cell.at(1).get<double>());
      }
    }
    return spec;
  }

  if (kind == "hwp")
    spec.type = ElementType::half_wave;
  else if (kind == "qwp")
    spec.type = ElementType::quarter_wave;
  else if (kind == "rotator")
    spec.type = ElementType::rotator;
  else if (kind == "polarizer")
    spec.type = ElementType::polarizer;
  else
    throw ValidationError(where + ": unknown element kind \"" + kind + "\"");

  require_keys(j, {"kind", "theta_deg", "theta_rad"}, where);
  const bool has_deg = j.contains("theta_deg");
  const bool has_rad = j.contains("theta_rad");
  if (has_deg == has_rad)
    throw ValidationError(where + " needs exactly one of theta_deg or theta_rad");
  spec.theta = has_deg ? require_number(j, "theta_deg", where) * kPi / 180.0
                       : require_number(j, "theta_rad", where);
  return spec;
}

inline nlohmann::json element_to_canonical(const ElementSpec& spec) {
  nlohmann::json j;
  j["kind"] = kind_name(spec.type);
  if (spec.type == ElementType::custom) {
    nlohmann::json m = nlohmann::json::array();
    for (int r = 0; r < 2; ++r) {
      nlohmann::json row = nlohmann::json::array();
      for (int c = 0; c < 2; ++c)
        row.push_back({spec.custom.e[r][c].real(), spec.custom.e[r][c].imag()});
      m.push_back(row);
    }
    j["matrix"] = m;
  } else {
    j["theta_rad"] = spec.theta;
  }
  return j;
}

// Canonical form: defaults materialized, angles in radians, keys sorted by
// the serializer. Hashing this makes the hash insensitive to formatting.
inline std::string canonical_dump(const ExperimentConfig& cfg) {
  nlohmann::json j;
  if (cfg.is_ensemble) {
    nlohmann::json members = nlohmann::json::array();
    for (const auto& m : cfg.ensemble.members) {
      nlohmann::json e;
      e["element"] = element_to_canonical(ElementSpec{ElementType::custom, 0.0, m.jones});
      e["weight"] = m.weight;
      members.push_back(e);
    }
    j["sample"] = nlohmann::json{{"ensemble", members}};
  } else {
    nlohmann::json chain = nlohmann::json::array();
    for (const auto& spec : cfg.chain) chain.push_back(element_to_canonical(spec));
    j["sample"] = chain;
  }
  j["scheme"] = scheme_name(cfg.scheme);
  j["trials"] = cfg.trials;
  j["seed"] = cfg.seed;
  if (cfg.noise) {
    nlohmann::json n;
    n["sigma_rel"] = cfg.noise->sigma_rel;
    n["dark"] = cfg.noise->dark;
    n["poisson_photons"] = cfg.noise->poisson_photons;
    j["noise"] = n;
  }
  if (cfg.render) {
    nlohmann::json g;
    g["nx"] = cfg.render->nx;
    g["ny"] = cfg.render->ny;
    g["extent"] = cfg.render->extent;
    g["waist"] = cfg.render->waist;
    j["render"] = g;
  }
  return j.dump();
}

}  // namespace detail

inline ExperimentConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ValidationError("config root must be an object");
  detail::require_keys(j, {"sample", "scheme", "noise", "trials", "seed", "render"}, "config");
  if (!j.contains("sample")) throw ValidationError("config needs a \"sample\"");

  ExperimentConfig cfg;
  const auto& sample = j.at("sample");
  if (sample.is_array()) {
    if (sample.empty()) throw ValidationError("sample chain must not be empty");
    for (std::size_t i = 0; i < sample.size(); ++i)
      cfg.chain.push_back(
          detail::element_from_json(sample.at(i), "sample[" + std::to_string(i) + "]"));
  } else if (sample.is_object()) {
    detail::require_keys(sample, {"ensemble"}, "sample");
    if (!sample.contains("ensemble") || !sample.at("ensemble").is_array() ||
        sample.at("ensemble").empty())
      throw ValidationError("sample object needs a nonempty \"ensemble\" array");
    cfg.is_ensemble = true;
    const auto& members = sample.at("ensemble");
    for (std::size_t i = 0; i < members.size(); ++i) {
      const std::string where = "ensemble[" + std::to_string(i) + "]";
      const auto& m = members.at(i);
      if (!m.is_object()) throw ValidationError(where + " must be an object");
      detail::require_keys(m, {"weight", "element"}, where);
      const double w = detail::require_number(m, "weight", where);
      if (!m.contains("element"))
        throw ValidationError(where + " needs an \"element\"");
      cfg.ensemble.members.push_back(
          {w, detail::element_from_json(m.at("element"), where + ".element").jones()});
    }
    cfg.ensemble.validate();
  } else {
    throw ValidationError("\"sample\" must be a chain array or an ensemble object");
  }

  if (j.contains("scheme")) {
    if (!j.at("scheme").is_string()) throw ValidationError("\"scheme\" must be a string");
    cfg.scheme = scheme_from_name(j.at("scheme").get<std::string>());
  }

  if (j.contains("noise")) {
    const auto& n = j.at("noise");
    if (!n.is_object()) throw ValidationError("\"noise\" must be an object");
    detail::require_keys(n, {"sigma_rel", "dark", "poisson_photons"}, "noise");
    NoiseSpec spec;
    if (n.contains("sigma_rel")) spec.sigma_rel = detail::require_number(n, "sigma_rel", "noise");
    if (n.contains("dark")) spec.dark = detail::require_number(n, "dark", "noise");
    if (n.contains("poisson_photons") && !n.at("poisson_photons").is_null())
      spec.poisson_photons = detail::require_number(n, "poisson_photons", "noise");
    spec.validate();
    cfg.noise = spec;
  }

  if (j.contains("trials")) {
    if (!j.at("trials").is_number_integer())
      throw ValidationError("\"trials\" must be an integer");
    cfg.trials = j.at("trials").get<int>();
    if (cfg.trials < 1) throw ValidationError("\"trials\" must be at least 1");
  }

  if (j.contains("seed")) {
    if (!j.at("seed").is_number_integer())
      throw ValidationError("\"seed\" must be an integer");
    cfg.seed = j.at("seed").get<std::uint64_t>();
  }

  if (j.contains("render")) {
    const auto& g = j.at("render");
    if (!g.is_object()) throw ValidationError("\"render\" must be an object");
    detail::require_keys(g, {"nx", "ny", "extent", "waist"}, "render");
    Grid grid;
    if (g.contains("nx")) grid.nx = static_cast<int>(detail::require_number(g, "nx", "render"));
    if (g.contains("ny")) grid.ny = static_cast<int>(detail::require_number(g, "ny", "render"));
    if (g.contains("extent")) grid.extent = detail::require_number(g, "extent", "render");
    if (g.contains("waist")) grid.waist = detail::require_number(g, "waist", "render");
    grid.validate();
    cfg.render = grid;
  }

  cfg.config_hash = detail::hex64(detail::fnv1a64(detail::canonical_dump(cfg)));
  return cfg;
}

inline ExperimentConfig parse_config(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("config parse failed: ") + e.what());
  }
  return config_from_json(j);
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open config file " + path);
  std::string text((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
  return parse_config(text);
}

}  // namespace radpol
