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

// Command-line driver. Subcommands:
//   simulate  run the configured schemes and emit a result record
//   render    write field maps of the radial probe after the sample
//   sweep     Monte Carlo noise sweep over a sigma grid
//   selftest  run the built-in acceptance suite
// Exit codes: 0 ok, 2 config error, 3 numerical or selftest failure, 4 I/O.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "radpol/radpol.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  std::string out;
  std::string format = "json";
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::optional<std::string> scheme;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_format) {
  cmd->add_option("--config", o.config_path, "experiment config file (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_option("--out", o.out, "output path (stdout if omitted)");
  cmd->add_option("--seed", o.seed, "override the config seed");
  cmd->add_option("--trials", o.trials, "override the config trial count");
  cmd->add_option("--scheme", o.scheme, "override the config scheme");
  if (with_format)
    cmd->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
}

radpol::ExperimentConfig load_with_overrides(const CommonOpts& o) {
  radpol::ExperimentConfig cfg = radpol::load_config(o.config_path);
  if (o.seed) cfg.seed = *o.seed;
  if (o.trials) {
    if (*o.trials < 1) throw radpol::ValidationError("--trials must be at least 1");
    cfg.trials = *o.trials;
  }
  if (o.scheme) cfg.scheme = radpol::scheme_from_name(*o.scheme);
  // Overrides change what runs, so recompute the provenance hash.
  cfg.config_hash =
      radpol::detail::hex64(radpol::detail::fnv1a64(radpol::detail::canonical_dump(cfg)));
  return cfg;
}

int cmd_simulate(const CommonOpts& o) {
  const radpol::ExperimentConfig cfg = load_with_overrides(o);
  const radpol::ResultRecord rec = radpol::run(cfg);
  const radpol::ResultFormat fmt =
      o.format == "csv" ? radpol::ResultFormat::csv : radpol::ResultFormat::json;
  if (o.out.empty()) {
    std::cout << (fmt == radpol::ResultFormat::json ? radpol::results_json_text(rec)
                                                    : radpol::results_csv_text(rec));
  } else {
    radpol::emit_results(rec, o.out, fmt);
  }
  return 0;
}

int cmd_render(const CommonOpts& o) {
  const radpol::ExperimentConfig cfg = load_with_overrides(o);
  if (cfg.is_ensemble)
    throw radpol::ValidationError("render needs a pure sample chain, not an ensemble");
  const radpol::Grid grid = cfg.render ? *cfg.render : radpol::Grid{};
  const radpol::TwoQubitAmplitudes state =
      radpol::apply_to_pol(cfg.jones(), radpol::radial_beam());
  const radpol::FieldMap map = radpol::render(state, grid);

  const std::string prefix = o.out.empty() ? "field" : o.out;
  radpol::emit_pixmap(map, radpol::MapLayer::intensity, prefix + "_intensity.ppm");
  radpol::emit_pixmap(map, radpol::MapLayer::phase_x, prefix + "_phase_x.ppm");
  radpol::emit_pixmap(map, radpol::MapLayer::phase_y, prefix + "_phase_y.ppm");
  radpol::emit_csv(map, prefix + ".csv");
  std::cout << "wrote " << prefix << "_intensity.ppm, " << prefix << "_phase_x.ppm, " << prefix
            << "_phase_y.ppm, " << prefix << ".csv\n";
  return 0;
}

int cmd_sweep(const CommonOpts& o, const std::vector<double>& sigmas) {
  const radpol::ExperimentConfig cfg = load_with_overrides(o);
  const radpol::DepolarizingEnsemble ens = cfg.effective_ensemble();
  const radpol::MuellerMatrix truth = radpol::mueller_depolarizing(ens);
  const radpol::DetectorMap clean = radpol::full_bench(ens);

  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  std::string csv = "sigma_rel,median_frobenius,p5_frobenius,p95_frobenius,config_hash,seed\n";
  for (const double sigma : sigmas) {
    radpol::NoiseSpec model = cfg.noise ? *cfg.noise : radpol::NoiseSpec{};
    model.sigma_rel = sigma;
    model.validate();
    std::vector<double> errs =
        radpol::detail::noise_trial_errors(clean, model, cfg.seed, cfg.trials, truth);
    std::sort(errs.begin(), errs.end());
    const double med = radpol::detail::quantile_sorted(errs, 0.5);
    const double p5 = radpol::detail::quantile_sorted(errs, 0.05);
    const double p95 = radpol::detail::quantile_sorted(errs, 0.95);
    rows.push_back(nlohmann::ordered_json{{"sigma_rel", sigma},
                                          {"median_frobenius", med},
                                          {"p5_frobenius", p5},
                                          {"p95_frobenius", p95}});
    char buf[160];
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,", sigma, med, p5, p95);
    csv += buf + cfg.config_hash + "," + std::to_string(cfg.seed) + "\n";
  }
  nlohmann::ordered_json j;
  j["version"] = radpol::kVersion;
  j["config_hash"] = cfg.config_hash;
  j["seed"] = cfg.seed;
  j["trials"] = cfg.trials;
  j["sweep"] = rows;
  const std::string text = o.format == "csv" ? csv : j.dump(2) + "\n";
  if (o.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream os(o.out, std::ios::binary);
    if (!os) throw radpol::IoError("cannot open " + o.out + " for writing");
    os << text;
    if (!os) throw radpol::IoError("write failed for " + o.out);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"single-shot Mueller-matrix polarimetry simulator"};
  app.require_subcommand(1);

  CommonOpts sim_opts;
  CLI::App* sim = app.add_subcommand("simulate", "run reconstruction schemes and emit results");
  add_common(sim, sim_opts, true);

  CommonOpts render_opts;
  CLI::App* rend = app.add_subcommand("render", "write field maps (PPM images and CSV)");
  rend->add_option("--config", render_opts.config_path, "experiment config file (JSON)")
      ->required()
      ->check(CLI::ExistingFile);
  rend->add_option("--out", render_opts.out, "output path prefix (default \"field\")");
  rend->add_option("--seed", render_opts.seed, "override the config seed");

  CommonOpts sweep_opts;
  std::vector<double> sigmas{1e-2, 1e-3, 1e-4};
  CLI::App* swp = app.add_subcommand("sweep", "Monte Carlo noise sweep over sigma levels");
  add_common(swp, sweep_opts, true);
  swp->add_option("--sigma", sigmas, "relative noise levels to sweep");

  CLI::App* self = app.add_subcommand("selftest", "run the built-in acceptance suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (app.got_subcommand(sim)) return cmd_simulate(sim_opts);
    if (app.got_subcommand(rend)) return cmd_render(render_opts);
    if (app.got_subcommand(swp)) return cmd_sweep(sweep_opts, sigmas);
    if (app.got_subcommand(self)) {
      const int failures = radpol::run_acceptance(std::cout);
      return failures == 0 ? 0 : 3;
    }
  } catch (const radpol::ParseError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const radpol::ValidationError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const radpol::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 4;
  } catch (const radpol::SingularMatrixError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const radpol::RankDeficientError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const radpol::InconsistentScaleError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
