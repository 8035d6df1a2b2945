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

// Batch driver: runs the requested reconstruction schemes against the exact
// Mueller matrix of the configured sample, attaches noise statistics for the
// bench scheme, and serializes results with stable ordering so a fixed
// config and seed reproduce identical bytes.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "radpol/bench.hpp"
#include "radpol/config.hpp"
#include "radpol/errors.hpp"
#include "radpol/polarimetry.hpp"
#include "radpol/rng.hpp"

namespace radpol {

struct SchemeResult {
  std::string name;
  MuellerMatrix mueller_hat;
  double max_abs_err = 0.0;
  double frobenius_err = 0.0;
  bool has_noise_stats = false;
  double median_frobenius = 0.0;
  double p5_frobenius = 0.0;
  double p95_frobenius = 0.0;
  std::vector<double> trial_frobenius;  // per-trial errors, trial order
};

struct ResultRecord {
  std::string version;
  std::string config_hash;
  std::uint64_t seed = 0;
  int trials = 1;
  MuellerMatrix mueller_true;
  std::vector<SchemeResult> schemes;
  double cross_scheme_max_discrepancy = 0.0;
  bool has_detectors = false;
  DetectorMap detectors;  // noiseless bench readout

  const SchemeResult* scheme(const std::string& name) const {
    for (const auto& s : schemes)
      if (s.name == name) return &s;
    return nullptr;
  }
};

namespace detail {

// Linear interpolation between order statistics of a sorted sample.
inline double quantile_sorted(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return 0.0;
  const double pos = q * (static_cast<double>(sorted.size()) - 1.0);
  const std::size_t lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] * (1.0 - frac) + sorted[lo + 1] * frac;
}

inline MuellerMatrix reconstruct_from_detectors(const DetectorMap& d) {
  const IntensityMatrix intens = calibrate(d);
  return two_dof_reconstruct(intensities_to_two_dof_stokes(intens));
}

inline SchemeResult make_scheme_result(const std::string& name, const MuellerMatrix& hat,
                                       const MuellerMatrix& truth) {
  SchemeResult r;
  r.name = name;
  r.mueller_hat = hat;
  r.max_abs_err = max_abs_diff(hat.m, truth.m);
  r.frobenius_err = frobenius_diff(hat.m, truth.m);
  return r;
}

// Monte Carlo over independent noisy readouts of one clean detector map.
// Trials are striped across threads by index; errs[t] depends only on
// (seed, t), so thread count never changes the result.
inline std::vector<double> noise_trial_errors(const DetectorMap& clean, const NoiseSpec& model,
                                              std::uint64_t seed, int trials,
                                              const MuellerMatrix& truth) {
  std::vector<double> errs(static_cast<std::size_t>(trials), 0.0);
  unsigned nthreads = std::thread::hardware_concurrency();
  if (nthreads == 0) nthreads = 1;
  nthreads = std::min<unsigned>(nthreads, static_cast<unsigned>(trials));
  std::vector<std::exception_ptr> fail(nthreads);
  auto worker = [&](unsigned w) {
    try {
      for (int t = static_cast<int>(w); t < trials; t += static_cast<int>(nthreads)) {
        const DetectorMap noisy = noisy_readout(clean, model, derive_seed(seed, static_cast<std::uint64_t>(t)));
        errs[static_cast<std::size_t>(t)] =
            frobenius_diff(reconstruct_from_detectors(noisy).m, truth.m);
      }
    } catch (...) {
      fail[w] = std::current_exception();
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < nthreads; ++w) pool.emplace_back(worker, w);
  worker(0);
  for (auto& th : pool) th.join();
  for (auto& f : fail)
    if (f) std::rethrow_exception(f);
  return errs;
}

}  // namespace detail

inline ResultRecord run(const ExperimentConfig& cfg) {
  ResultRecord rec;
  rec.version = kVersion;
  rec.config_hash = cfg.config_hash;
  rec.seed = cfg.seed;
  rec.trials = cfg.trials;

  const DepolarizingEnsemble ens = cfg.effective_ensemble();
  rec.mueller_true = mueller_depolarizing(ens);

  const auto wants = [&](Scheme s) { return cfg.scheme == Scheme::all || cfg.scheme == s; };

  if (wants(Scheme::oracle))
    rec.schemes.push_back(detail::make_scheme_result("oracle", rec.mueller_true, rec.mueller_true));

  if (wants(Scheme::conventional)) {
    const MuellerMatrix hat = conventional_reconstruct(ens, conventional_probe_set());
    rec.schemes.push_back(detail::make_scheme_result("conventional", hat, rec.mueller_true));
  }

  if (wants(Scheme::two_dof_bench)) {
    const DetectorMap clean = full_bench(ens);
    rec.detectors = clean;
    rec.has_detectors = true;
    const MuellerMatrix hat = detail::reconstruct_from_detectors(clean);
    SchemeResult sr = detail::make_scheme_result("two_dof_bench", hat, rec.mueller_true);
    if (cfg.noise) {
      sr.trial_frobenius =
          detail::noise_trial_errors(clean, *cfg.noise, cfg.seed, cfg.trials, rec.mueller_true);
      std::vector<double> sorted = sr.trial_frobenius;
      std::sort(sorted.begin(), sorted.end());
      sr.has_noise_stats = true;
      sr.median_frobenius = detail::quantile_sorted(sorted, 0.5);
      sr.p5_frobenius = detail::quantile_sorted(sorted, 0.05);
      sr.p95_frobenius = detail::quantile_sorted(sorted, 0.95);
    }
    rec.schemes.push_back(std::move(sr));
  }

  double cross = 0.0;
  for (std::size_t i = 0; i < rec.schemes.size(); ++i)
    for (std::size_t j = i + 1; j < rec.schemes.size(); ++j)
      cross = std::max(
          cross, frobenius_diff(rec.schemes[i].mueller_hat.m, rec.schemes[j].mueller_hat.m));
  rec.cross_scheme_max_discrepancy = cross;
  return rec;
}

// ------------------------------------------------------------- serialization

namespace detail {

inline nlohmann::ordered_json matrix_to_json(const Real4x4& m) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (int r = 0; r < 4; ++r) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (int c = 0; c < 4; ++c) row.push_back(m.e[r][c]);
    rows.push_back(row);
  }
  return rows;
}

inline nlohmann::ordered_json detector_map_to_json(const DetectorMap& d) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json prim;
  for (const auto& [key, r] : d.readings)
    prim[key] = nlohmann::ordered_json{{"power", r.power}, {"power_scale", r.power_scale}};
  j["primary"] = prim;
  nlohmann::ordered_json aux;
  for (const auto& [key, r] : d.auxiliary)
    aux[key] = nlohmann::ordered_json{{"power", r.power}, {"power_scale", r.power_scale}};
  j["auxiliary"] = aux;
  return j;
}

}  // namespace detail

inline nlohmann::ordered_json results_to_json(const ResultRecord& rec) {
  nlohmann::ordered_json j;
  j["version"] = rec.version;
  j["config_hash"] = rec.config_hash;
  j["seed"] = rec.seed;
  j["trials"] = rec.trials;
  j["mueller_true"] = detail::matrix_to_json(rec.mueller_true.m);
  nlohmann::ordered_json schemes;
  for (const auto& s : rec.schemes) {
    nlohmann::ordered_json sj;
    sj["mueller_hat"] = detail::matrix_to_json(s.mueller_hat.m);
    sj["errors"] =
        nlohmann::ordered_json{{"max_abs", s.max_abs_err}, {"frobenius", s.frobenius_err}};
    if (s.has_noise_stats) {
      sj["noise_trials"] = nlohmann::ordered_json{
          {"count", static_cast<int>(s.trial_frobenius.size())},
          {"median_frobenius", s.median_frobenius},
          {"p5_frobenius", s.p5_frobenius},
          {"p95_frobenius", s.p95_frobenius}};
    }
    schemes[s.name] = sj;
  }
  j["schemes"] = schemes;
  j["cross_scheme_max_discrepancy"] = rec.cross_scheme_max_discrepancy;
  if (rec.has_detectors) j["detectors"] = detail::detector_map_to_json(rec.detectors);
  return j;
}

inline std::string results_json_text(const ResultRecord& rec) {
  return results_to_json(rec).dump(2) + "\n";
}

// Flat table: one row for the true matrix, one per scheme estimate.
inline std::string results_csv_text(const ResultRecord& rec) {
  std::string out =
      "matrix,scheme,m00,m01,m02,m03,m10,m11,m12,m13,m20,m21,m22,m23,"
      "m30,m31,m32,m33,max_abs_err,frobenius_err,config_hash,seed\n";
  char buf[64];
  const auto append_matrix = [&](const Real4x4& m) {
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) {
        std::snprintf(buf, sizeof buf, ",%.17g", m.e[r][c]);
        out += buf;
      }
  };
  out += "true,";
  append_matrix(rec.mueller_true.m);
  out += ",0,0," + rec.config_hash + "," + std::to_string(rec.seed) + "\n";
  for (const auto& s : rec.schemes) {
    out += "estimate," + s.name;
    append_matrix(s.mueller_hat.m);
    std::snprintf(buf, sizeof buf, ",%.17g,%.17g", s.max_abs_err, s.frobenius_err);
    out += buf;
    out += "," + rec.config_hash + "," + std::to_string(rec.seed) + "\n";
  }
  return out;
}

enum class ResultFormat { json, csv };

inline void emit_results(const ResultRecord& rec, const std::string& path, ResultFormat format) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open " + path + " for writing");
  os << (format == ResultFormat::json ? results_json_text(rec) : results_csv_text(rec));
  if (!os) throw IoError("write failed for " + path);
}

}  // namespace radpol
