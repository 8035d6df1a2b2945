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

// Element-level simulation of the single-shot polarimeter bench.
//
// Layout: a radially polarized probe passes the sample, is split into three
// equal-power branches, and each branch is sorted by a mode-sensitive
// interferometer. Branch A carries a quarter-phase mode converter at 45
// degrees (circular spatial analyzer), branch B a half-phase converter at
// 22.5 degrees (diagonal spatial analyzer), branch C nothing (mode basis
// analyzer, both ports used). Each selected port feeds a three-branch
// polarization analyzer. 16 primary detectors produce the intensity matrix;
// 10 auxiliary detectors (2 unselected interferometer ports, 8 complementary
// analyzer ports) are simulated but unused by the reconstruction.
//
// Two power mechanisms coexist: the polarization-maintaining splitters are
// ideal power dividers tracked by a scalar power_scale (their phases never
// interfere downstream), while the interferometer operates on amplitudes,
// where phases matter.

#include <array>
#include <cmath>
#include <map>
#include <string>
#include <utility>

#include "radpol/algebra.hpp"
#include "radpol/elements.hpp"
#include "radpol/errors.hpp"
#include "radpol/polarimetry.hpp"
#include "radpol/rng.hpp"
#include "radpol/states.hpp"

namespace radpol {

struct PortField {
  TwoQubitAmplitudes amplitudes;
  double power_scale = 1.0;
  std::string port_label;

  double physical_power() const { return power_scale * amplitudes.norm2(); }
};

inline PortField vacuum_port(double power_scale, const std::string& label) {
  return PortField{TwoQubitAmplitudes{}, power_scale, label};
}

struct DetectorReading {
  double power = 0.0;        // physical power landing on the detector
  double power_scale = 1.0;  // accumulated ideal splitter factor
};

struct DetectorMap {
  // Primary readings keyed "ab" with a the polarization analyzer index and
  // b the spatial port index, both 0..3.
  std::map<std::string, DetectorReading> readings;
  std::map<std::string, DetectorReading> auxiliary;

  void validate() const {
    if (readings.size() != 16)
      throw InconsistentScaleError("detector map must hold exactly 16 primary readings");
    for (const auto& [k, r] : readings)
      if (!(r.power >= 0.0) || !(r.power_scale > 0.0))
        throw InconsistentScaleError("bad primary reading at " + k);
    for (const auto& [k, r] : auxiliary)
      if (!(r.power >= 0.0) || !(r.power_scale > 0.0))
        throw InconsistentScaleError("bad auxiliary reading at " + k);
  }
};

// ------------------------------------------------------- mirrors and BSs

// Mirror reflection: the x field component flips sign, and the coordinate
// reversal flips the parity-odd spatial mode. Net amplitude action is
// i * (sigma3 (x) sigma3).
inline PortField mirror(const PortField& f) {
  PortField out = f;
  out.amplitudes.a[0] = kImag * f.amplitudes.a[0];
  out.amplitudes.a[1] = -kImag * f.amplitudes.a[1];
  out.amplitudes.a[2] = -kImag * f.amplitudes.a[2];
  out.amplitudes.a[3] = kImag * f.amplitudes.a[3];
  return out;
}

// Half-wave plate in the beam path, fast axis horizontal, acting on the
// polarization qubit only. Same matrix as retarder(pi).
inline PortField inline_hwp(const PortField& f) {
  PortField out = f;
  out.amplitudes = apply_to_pol(retarder(kPi), f.amplitudes);
  return out;
}

// Symmetric 50/50 beam splitter. The reflected contribution picks up the
// same sign structure as a mirror (x-component flip plus parity flip).
inline std::pair<PortField, PortField> beamsplitter50(const PortField& f1, const PortField& f2) {
  const double smax = std::max(f1.power_scale, f2.power_scale);
  if (std::abs(f1.power_scale - f2.power_scale) > 1e-12 * std::max(smax, 1.0))
    throw InconsistentScaleError("beam splitter inputs carry different power scales");
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const PortField r1 = mirror(f2);
  const PortField r2 = mirror(f1);
  PortField out1{TwoQubitAmplitudes{}, f1.power_scale, f1.port_label + "|bs1"};
  PortField out2{TwoQubitAmplitudes{}, f1.power_scale, f1.port_label + "|bs2"};
  for (std::size_t k = 0; k < 4; ++k) {
    out1.amplitudes.a[k] = inv_sqrt2 * (f1.amplitudes.a[k] + r1.amplitudes.a[k]);
    out2.amplitudes.a[k] = inv_sqrt2 * (f2.amplitudes.a[k] + r2.amplitudes.a[k]);
  }
  return {out1, out2};
}

// --------------------------------------------------------- mode sorting

// Mode-sorting interferometer: a Mach-Zehnder with one extra mirror. Arm 1
// holds two mirrors, arm 2 one mirror and one half-wave plate; a final
// half-wave plate cleans up port 2. This composition reproduces the closed
// port relations with no residual phase: port 1 carries the first spatial
// mode with a sign flip, port 2 the second unchanged.
inline std::pair<PortField, PortField> mode_beam_splitter(const PortField& f) {
  auto [arm1, arm2] = beamsplitter50(f, vacuum_port(f.power_scale, f.port_label + "~vac"));
  arm1 = mirror(mirror(arm1));
  arm2 = inline_hwp(mirror(arm2));
  auto [port1, port2] = beamsplitter50(arm1, arm2);
  port2 = inline_hwp(port2);
  port1.port_label = f.port_label + "/port1";
  port2.port_label = f.port_label + "/port2";
  return {port1, port2};
}

// Closed-form port relations of the same device, kept as an independent
// cross-check of the composition above.
inline std::pair<PortField, PortField> mode_beam_splitter_net(const PortField& f) {
  PortField port1{TwoQubitAmplitudes{}, f.power_scale, f.port_label + "/port1"};
  PortField port2{TwoQubitAmplitudes{}, f.power_scale, f.port_label + "/port2"};
  port1.amplitudes.a[0] = -f.amplitudes.a[0];
  port1.amplitudes.a[2] = -f.amplitudes.a[2];
  port2.amplitudes.a[1] = f.amplitudes.a[1];
  port2.amplitudes.a[3] = f.amplitudes.a[3];
  return {port1, port2};
}

enum class ConverterStation { A, B, C };

// Spatial-mode converter ahead of the interferometer. Station A analyzes the
// circular mode combination, station B the diagonal one, station C is empty
// space.
inline PortField mode_converter(ConverterStation which, const PortField& f) {
  PortField out = f;
  switch (which) {
    case ConverterStation::A:
      out.amplitudes = apply_to_spa(quarter_wave(kPi / 4.0), f.amplitudes);
      return out;
    case ConverterStation::B:
      out.amplitudes = apply_to_spa(half_wave(kPi / 8.0), f.amplitudes);
      return out;
    case ConverterStation::C:
      return out;
  }
  throw std::invalid_argument("unknown converter station");
}

// ------------------------------------------------- polarization analysis

struct CpmResult {
  // Powers behind the four labeled analyzers x, y, +45, left-circular.
  std::array<DetectorReading, 4> primary;
  // Complementary ports of the diagonal and circular branches.
  DetectorReading minus_port;
  DetectorReading rcirc_port;
};

namespace detail {

// Power split at a polarizing beam splitter: port 0 integrates the x
// component over both spatial modes, port 1 the y component.
inline std::pair<double, double> pbs_powers(const PortField& f) {
  const double px = std::norm(f.amplitudes.a[0]) + std::norm(f.amplitudes.a[1]);
  const double py = std::norm(f.amplitudes.a[2]) + std::norm(f.amplitudes.a[3]);
  return {f.power_scale * px, f.power_scale * py};
}

}  // namespace detail

// Three-branch polarization analyzer: the beam is split into three equal
// parts; one branch meets a bare polarizing splitter (x/y), one a half-wave
// plate at 22.5 degrees then a splitter (+45/-45), one a quarter-wave plate
// at 45 degrees then a splitter (left/right circular).
inline CpmResult cpm(const PortField& f) {
  const double branch_scale = f.power_scale / 3.0;
  const PortField base{f.amplitudes, branch_scale, f.port_label + "/pc"};

  CpmResult out;
  const auto [cx, cy] = detail::pbs_powers(base);
  out.primary[0] = {cx, branch_scale};
  out.primary[1] = {cy, branch_scale};

  PortField diag_branch = base;
  diag_branch.amplitudes = apply_to_pol(half_wave(kPi / 8.0), base.amplitudes);
  const auto [dplus, dminus] = detail::pbs_powers(diag_branch);
  out.primary[2] = {dplus, branch_scale};
  out.minus_port = {dminus, branch_scale};

  PortField circ_branch = base;
  circ_branch.amplitudes = apply_to_pol(quarter_wave(kPi / 4.0), base.amplitudes);
  const auto [cleft, cright] = detail::pbs_powers(circ_branch);
  out.primary[3] = {cleft, branch_scale};
  out.rcirc_port = {cright, branch_scale};

  return out;
}

// ----------------------------------------------------------- full bench

// Three equal-power branches from the polarization-maintaining splitter
// cascade (1:2 then 1:1), modeled as ideal power division.
inline std::array<PortField, 3> split_three_way(const PortField& f) {
  const double s = f.power_scale / 3.0;
  return {PortField{f.amplitudes, s, f.port_label + "/A"},
          PortField{f.amplitudes, s, f.port_label + "/B"},
          PortField{f.amplitudes, s, f.port_label + "/C"}};
}

namespace detail {

inline void add_cpm(DetectorMap& d, const PortField& port, int beta, const std::string& port_name) {
  const CpmResult r = cpm(port);
  for (int alpha = 0; alpha < 4; ++alpha) {
    const std::string key{static_cast<char>('0' + alpha), static_cast<char>('0' + beta)};
    d.readings[key] = r.primary[static_cast<std::size_t>(alpha)];
  }
  d.auxiliary["cpm_" + port_name + "_eMinus"] = r.minus_port;
  d.auxiliary["cpm_" + port_name + "_eR"] = r.rcirc_port;
}

}  // namespace detail

// Runs the whole apparatus for one Jones sample: radial probe, sample,
// three-way split, mode converters, interferometers, analyzers. Detector
// readings are true physical powers including every split factor.
inline DetectorMap full_bench(const Complex2x2& sample) {
  const PortField probe{radial_beam(), 1.0, "probe"};
  const PortField after_sample{apply_to_pol(sample, probe.amplitudes), 1.0, "sample"};
  const auto branches = split_three_way(after_sample);

  const PortField a_in = mode_converter(ConverterStation::A, branches[0]);
  auto [a_sel, a_unsel] = mode_beam_splitter(a_in);

  const PortField b_in = mode_converter(ConverterStation::B, branches[1]);
  auto [b_sel, b_unsel] = mode_beam_splitter(b_in);

  auto [c_mode10, c_mode01] = mode_beam_splitter(branches[2]);

  DetectorMap d;
  detail::add_cpm(d, c_mode10, 0, "psi10");
  detail::add_cpm(d, c_mode01, 1, "psi01");
  detail::add_cpm(d, b_sel, 2, "psiPlus");
  detail::add_cpm(d, a_sel, 3, "psiL");
  d.auxiliary["mbsA_port2_psiR"] = {a_unsel.physical_power(), a_unsel.power_scale};
  d.auxiliary["mbsB_port2_psiMinus"] = {b_unsel.physical_power(), b_unsel.power_scale};
  d.validate();
  return d;
}

// Depolarizing sample: detector powers are ensemble averages, summed in
// member order.
inline DetectorMap full_bench(const DepolarizingEnsemble& ens) {
  ens.validate();
  DetectorMap acc;
  bool first = true;
  for (const auto& member : ens.members) {
    DetectorMap d = full_bench(member.jones);
    if (first) {
      acc = d;
      for (auto& [k, r] : acc.readings) r.power *= member.weight;
      for (auto& [k, r] : acc.auxiliary) r.power *= member.weight;
      first = false;
      continue;
    }
    for (auto& [k, r] : acc.readings) r.power += member.weight * d.readings.at(k).power;
    for (auto& [k, r] : acc.auxiliary) r.power += member.weight * d.auxiliary.at(k).power;
  }
  return acc;
}

// --------------------------------------------------------- calibration

// Undo the known ideal split factors so readings line up with the abstract
// projective intensities.
inline IntensityMatrix calibrate(const DetectorMap& d) {
  if (d.readings.size() != 16)
    throw InconsistentScaleError("calibration needs all 16 primary readings");
  IntensityMatrix out;
  for (const auto& [key, r] : d.readings) {
    if (!(r.power_scale > 0.0))
      throw InconsistentScaleError("reading " + key + " has non-positive power scale");
    const int alpha = key[0] - '0';
    const int beta = key[1] - '0';
    out.i.e[alpha][beta] = r.power / r.power_scale;
  }
  return out;
}

// ---------------------------------------------------------- noise model

struct NoiseSpec {
  double sigma_rel = 0.0;        // multiplicative Gaussian readout error
  double dark = 0.0;             // additive Gaussian dark level (std dev)
  double poisson_photons = 0.0;  // photons per unit calibrated power; 0 = off

  void validate() const {
    if (sigma_rel < 0.0 || dark < 0.0 || poisson_photons < 0.0)
      throw ValidationError("noise parameters must be nonnegative");
  }
};

// Applies shot noise, gain error, and dark noise to every reading.
// Deterministic for a fixed seed: each detector draws from its own counter
// stream, so the outcome does not depend on evaluation order.
inline DetectorMap noisy_readout(const DetectorMap& d, const NoiseSpec& model, std::uint64_t seed) {
  model.validate();
  DetectorMap out = d;
  std::uint64_t det_index = 0;
  auto apply = [&](DetectorReading& r) {
    CounterRng rng(seed, det_index++);
    double p = r.power;
    if (model.poisson_photons > 0.0)
      p = rng.poisson(p * model.poisson_photons) / model.poisson_photons;
    p *= 1.0 + model.sigma_rel * rng.gaussian();
    p += model.dark * rng.gaussian();
    r.power = p < 0.0 ? 0.0 : p;
  };
  for (auto& [k, r] : out.readings) apply(r);
  for (auto& [k, r] : out.auxiliary) apply(r);
  return out;
}

}  // namespace radpol
