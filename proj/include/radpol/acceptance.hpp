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

// End-to-end acceptance checks for the whole pipeline. Each check is
// self-contained, uses fixed seeds, and reports a measured number so a
// failure is diagnosable from the log line alone. The same suite backs the
// `selftest` CLI subcommand and the acceptance test binary.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "radpol/bench.hpp"
#include "radpol/config.hpp"
#include "radpol/elements.hpp"
#include "radpol/fields.hpp"
#include "radpol/polarimetry.hpp"
#include "radpol/rng.hpp"
#include "radpol/runner.hpp"
#include "radpol/states.hpp"

namespace radpol {

struct CriterionOutcome {
  std::string name;
  bool pass = false;
  std::string detail;
};

namespace detail {

inline constexpr std::uint64_t kAcceptanceSeed = 20260822ull;

inline std::string fmt(const char* format, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, format, a, b);
  return buf;
}

inline double max_port_amplitude(const PortField& f) {
  double m = 0.0;
  for (const auto& z : f.amplitudes.a) m = std::max(m, std::abs(z));
  return m;
}

}  // namespace detail

// 1. Bench round trip: simulate the full instrument for random passive
// samples and compare the reconstructed Mueller matrix with the exact one.
inline CriterionOutcome criterion_bench_oracle_agreement() {
  CriterionOutcome out;
  out.name = "bench reconstruction matches exact Mueller matrices (10000 random samples)";
  const auto t0 = std::chrono::steady_clock::now();
  CounterRng rng(detail::kAcceptanceSeed, 1);
  double worst = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const Complex2x2 t = random_passive_jones(rng);
    const MuellerMatrix truth = mueller_from_jones(t);
    const MuellerMatrix hat = detail::reconstruct_from_detectors(full_bench(t));
    worst = std::max(worst, max_abs_diff(hat.m, truth.m));
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  out.pass = worst < 1e-9 && secs < 60.0;
  out.detail = detail::fmt("max elementwise error %.3g (limit 1e-9), %.2f s (limit 60 s)", worst,
                           secs);
  return out;
}

// 2. The four-probe scheme agrees with the exact matrix on the same samples.
inline CriterionOutcome criterion_conventional_agreement() {
  CriterionOutcome out;
  out.name = "four-probe reconstruction matches exact Mueller matrices (same 10000 samples)";
  CounterRng rng(detail::kAcceptanceSeed, 1);
  const ProbeSet probes = conventional_probe_set();
  double worst = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const Complex2x2 t = random_passive_jones(rng);
    const MuellerMatrix truth = mueller_from_jones(t);
    const MuellerMatrix hat = conventional_reconstruct(t, probes);
    worst = std::max(worst, max_abs_diff(hat.m, truth.m));
  }
  out.pass = worst < 1e-10;
  out.detail = detail::fmt("max elementwise error %.3g (limit 1e-10)", worst);
  return out;
}

// 3. The radial probe is maximally entangled: both reduced coherency
// matrices are I/2, the polarization Stokes vector is (1,0,0,0), and the
// two-DoF Stokes matrix is diag(1,1,-1,1).
inline CriterionOutcome criterion_probe_invariants() {
  CriterionOutcome out;
  out.name = "radial probe invariants (reductions, Stokes vector, two-DoF Stokes)";
  const CoherencyMatrix4 rho = coherency_of(radial_beam());
  const Complex2x2 half_identity = 0.5 * Complex2x2::identity();

  double worst = 0.0;
  worst = std::max(worst, max_abs_diff(reduce_pol(rho).rho, half_identity));
  worst = std::max(worst, max_abs_diff(reduce_spa(rho).rho, half_identity));

  const StokesVector s = stokes_of(reduce_pol(rho));
  const double expect_s[4] = {1.0, 0.0, 0.0, 0.0};
  for (int mu = 0; mu < 4; ++mu)
    worst = std::max(worst, std::abs(s.s[static_cast<std::size_t>(mu)] - expect_s[mu]));

  const TwoDofStokes st = two_dof_stokes(rho);
  const Real4x4 expect = Real4x4::diagonal(1.0, 1.0, -1.0, 1.0);
  worst = std::max(worst, max_abs_diff(st.s, expect));

  out.pass = worst < 1e-12;
  out.detail = detail::fmt("max deviation %.3g (limit 1e-12)", worst);
  return out;
}

// 4. The detector-sum formulas, the matrix route F I F^T, and the direct
// trace definition give the same two-DoF Stokes parameters.
inline CriterionOutcome criterion_stokes_route_consistency() {
  CriterionOutcome out;
  out.name = "intensity-to-Stokes routes agree (1000 random coherency matrices)";
  CounterRng rng(detail::kAcceptanceSeed, 4);
  const Real4x4 f = intensity_to_stokes_coeffs();
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const CoherencyMatrix4 rho{random_coherency4(rng)};
    const IntensityMatrix im = intensity_matrix_of(rho);
    const Real4x4 via_matrix = f * im.i * f.transpose();
    const Real4x4 via_sums = detail::two_dof_stokes_expanded(im.i);
    const Real4x4 via_trace = two_dof_stokes(rho).s;
    worst = std::max(worst, max_abs_diff(via_matrix, via_sums));
    worst = std::max(worst, max_abs_diff(via_matrix, via_trace));
  }
  out.pass = worst < 1e-12;
  out.detail = detail::fmt("max route disagreement %.3g (limit 1e-12)", worst);
  return out;
}

// 5. Mode splitter routing: the five reference inputs exit the documented
// ports with dark ports empty, and the element-by-element interferometer
// equals its net input-output relation up to a per-port global phase.
inline CriterionOutcome criterion_mode_splitter_routing() {
  CriterionOutcome out;
  out.name = "mode splitter port routing and interferometer composition";

  struct Scenario {
    TwoQubitAmplitudes in;
    int lit_port;  // 0 or 1; -1 means both ports carry light
  };
  const std::vector<Scenario> scenarios = {
      {TwoQubitAmplitudes{{cplx(1.0), cplx(0.0), cplx(0.0), cplx(0.0)}}, 0},
      {TwoQubitAmplitudes{{cplx(0.0), cplx(0.0), cplx(1.0), cplx(0.0)}}, 0},
      {TwoQubitAmplitudes{{cplx(0.0), cplx(1.0), cplx(0.0), cplx(0.0)}}, 1},
      {TwoQubitAmplitudes{{cplx(0.0), cplx(0.0), cplx(0.0), cplx(1.0)}}, 1},
      {radial_beam(), -1},
  };

  double worst_dark = 0.0;
  double worst_routed = 0.0;
  for (const auto& sc : scenarios) {
    const PortField in{sc.in, 1.0, "in"};
    const auto [p1, p2] = mode_beam_splitter(in);
    // Expected content per port: the mode-10 column in port 1, mode-01 in
    // port 2, polarization untouched.
    const TwoQubitAmplitudes want1{{sc.in.a[0], cplx(0.0), sc.in.a[2], cplx(0.0)}};
    const TwoQubitAmplitudes want2{{cplx(0.0), sc.in.a[1], cplx(0.0), sc.in.a[3]}};
    if (sc.lit_port == 0) {
      worst_dark = std::max(worst_dark, detail::max_port_amplitude(p2));
      worst_routed = std::max(worst_routed, phase_aligned_distance(p1.amplitudes, want1));
    } else if (sc.lit_port == 1) {
      worst_dark = std::max(worst_dark, detail::max_port_amplitude(p1));
      worst_routed = std::max(worst_routed, phase_aligned_distance(p2.amplitudes, want2));
    } else {
      worst_routed = std::max(worst_routed, phase_aligned_distance(p1.amplitudes, want1));
      worst_routed = std::max(worst_routed, phase_aligned_distance(p2.amplitudes, want2));
    }
  }

  CounterRng rng(detail::kAcceptanceSeed, 5);
  double worst_net = 0.0;
  for (int k = 0; k < 50; ++k) {
    const PortField in{TwoQubitAmplitudes{random_pure4(rng)}, 1.0, "in"};
    const auto [c1, c2] = mode_beam_splitter(in);
    const auto [n1, n2] = mode_beam_splitter_net(in);
    worst_net = std::max(worst_net, phase_aligned_distance(c1.amplitudes, n1.amplitudes));
    worst_net = std::max(worst_net, phase_aligned_distance(c2.amplitudes, n2.amplitudes));
  }

  const double worst = std::max({worst_dark, worst_routed, worst_net});
  out.pass = worst < 1e-12;
  out.detail = detail::fmt("dark/routing deviation %.3g, composition vs net %.3g (limit 1e-12)",
                           std::max(worst_dark, worst_routed), worst_net);
  return out;
}

// 6. Converter phase identities, including the -i factors.
inline CriterionOutcome criterion_converter_phases() {
  CriterionOutcome out;
  out.name = "converter identities map the diagonal and circular bases with exact phases";
  const Complex2x2 upi = half_wave(kPi / 8.0);
  const Complex2x2 upi2 = quarter_wave(kPi / 4.0);
  const cplx mi(0.0, -1.0);

  auto dist = [](const Ket2& got, const Ket2& want) {
    double m = 0.0;
    for (int k = 0; k < 2; ++k) m = std::max(m, std::abs(got.a[static_cast<std::size_t>(k)] - want.a[static_cast<std::size_t>(k)]));
    return m;
  };

  double worst = 0.0;
  worst = std::max(worst, dist(upi * ket_diag(), mi * ket_x()));
  worst = std::max(worst, dist(upi * ket_antidiag(), mi * ket_y()));
  worst = std::max(worst, dist(upi2 * ket_lcirc(), ket_x()));
  worst = std::max(worst, dist(upi2 * ket_rcirc(), mi * ket_y()));

  out.pass = worst < 1e-14;
  out.detail = detail::fmt("max phase deviation %.3g (limit 1e-14)", worst);
  return out;
}

// 7. Postselected intensities for the half-wave sample at 22.5 degrees.
inline CriterionOutcome criterion_postselected_intensities() {
  CriterionOutcome out;
  out.name = "calibrated postselected intensities for a 22.5-degree half-wave sample";
  const IntensityMatrix im = calibrate(full_bench(half_wave(kPi / 8.0)));
  const double d00 = std::abs(im.i.e[0][0] - 0.25);
  const double d20 = std::abs(im.i.e[2][0] - 0.50);
  const double worst = std::max(d00, d20);
  out.pass = worst < 1e-12;
  out.detail = detail::fmt("I00 %.12f, I20 %.12f (want 0.25, 0.50; limit 1e-12)", im.i.e[0][0],
                           im.i.e[2][0]);
  return out;
}

// 8. Ensemble averages: a large random-unitary ensemble is fully
// depolarizing; the half {identity, 180-degree retarder} mixture keeps
// exactly the two invariant contrasts.
inline CriterionOutcome criterion_depolarizing_averages() {
  CriterionOutcome out;
  out.name = "depolarizing ensemble averages (random unitaries and a two-member mixture)";
  CounterRng rng(detail::kAcceptanceSeed, 8);
  const int n = 100000;
  DepolarizingEnsemble haar;
  haar.members.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) haar.members.push_back({1.0 / n, haar_unitary2(rng)});
  const MuellerMatrix mbar = mueller_depolarizing(haar);
  const double haar_dev = max_abs_diff(mbar.m, Real4x4::diagonal(1.0, 0.0, 0.0, 0.0));

  DepolarizingEnsemble pair;
  pair.members.push_back({0.5, Complex2x2::identity()});
  pair.members.push_back({0.5, Complex2x2::diagonal(1.0, -1.0)});
  const MuellerMatrix mpair = mueller_depolarizing(pair);
  const double pair_dev = max_abs_diff(mpair.m, Real4x4::diagonal(1.0, 0.0, 0.0, 1.0));

  out.pass = haar_dev < 0.02 && pair_dev < 1e-12;
  out.detail = detail::fmt("random-unitary deviation %.3g (limit 0.02), mixture deviation %.3g "
                           "(limit 1e-12)",
                           haar_dev, pair_dev);
  return out;
}

// 9. Median reconstruction error scales linearly with the relative readout
// noise level, and reruns with the same seed reproduce it exactly.
inline CriterionOutcome criterion_noise_scaling() {
  CriterionOutcome out;
  out.name = "median error scales linearly in readout noise and is seed-deterministic";
  const MuellerMatrix truth = mueller_from_jones(half_wave(kPi / 8.0));
  const DetectorMap clean = full_bench(half_wave(kPi / 8.0));
  const double sigmas[3] = {1e-2, 1e-3, 1e-4};

  auto median_at = [&](double sigma) {
    NoiseSpec model;
    model.sigma_rel = sigma;
    std::vector<double> errs =
        detail::noise_trial_errors(clean, model, detail::kAcceptanceSeed, 200, truth);
    std::sort(errs.begin(), errs.end());
    return detail::quantile_sorted(errs, 0.5);
  };

  double med[3], med_again[3];
  for (int k = 0; k < 3; ++k) med[k] = median_at(sigmas[k]);
  for (int k = 0; k < 3; ++k) med_again[k] = median_at(sigmas[k]);

  bool deterministic = true;
  for (int k = 0; k < 3; ++k)
    if (med[k] != med_again[k]) deterministic = false;

  // One decade in sigma should move the median by one decade, within x3.
  bool linear = true;
  for (int k = 0; k + 1 < 3; ++k) {
    const double ratio = med[k] / med[k + 1];
    if (!(ratio > 10.0 / 3.0 && ratio < 30.0)) linear = false;
  }

  out.pass = deterministic && linear;
  out.detail = "medians " + detail::fmt("%.3g, %.3g", med[0], med[1]) +
               detail::fmt(", %.3g; ", med[2]) +
               (linear ? "linear within x3" : "NOT linear within x3") + "; " +
               (deterministic ? "deterministic" : "NOT deterministic");
  return out;
}

// 10. The three equivalent decompositions of the radial beam render to the
// same field, and the mode maps are orthonormal under grid integration.
inline CriterionOutcome criterion_decomposition_rendering() {
  CriterionOutcome out;
  out.name = "equivalent radial-beam decompositions render identically on a 512x512 grid";
  const Grid grid;  // 512 x 512, extent 3
  const std::vector<cplx> m10 = hg_mode(1, 0, grid);
  const std::vector<cplx> m01 = hg_mode(0, 1, grid);

  const double r = 1.0 / std::sqrt(2.0);
  const cplx i1(0.0, 1.0);
  const std::size_t n = grid.npix();

  double worst_pix = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    // Linear-basis form: e_x psi10 + e_y psi01, all over sqrt(2).
    const cplx bx = r * m10[k];
    const cplx by = r * m01[k];
    // Diagonal-basis form: e_+ psi_+ + e_- psi_-.
    const cplx psip = r * (m10[k] + m01[k]);
    const cplx psim = r * (m10[k] - m01[k]);
    const cplx cx = 0.5 * (psip + psim);
    const cplx cy = 0.5 * (psip - psim);
    // Circular-basis form: e_L psi_R + e_R psi_L.
    const cplx psil = r * (m10[k] + i1 * m01[k]);
    const cplx psir = r * (m10[k] - i1 * m01[k]);
    const cplx dx = 0.5 * (psir + psil);
    const cplx dy = 0.5 * i1 * (psir - psil);
    worst_pix = std::max({worst_pix, std::abs(bx - cx), std::abs(by - cy), std::abs(bx - dx),
                          std::abs(by - dy)});
  }

  const double n10 = std::abs(mode_overlap(m10, m10, grid).real() - 1.0);
  const double n01 = std::abs(mode_overlap(m01, m01, grid).real() - 1.0);
  const double xterm = std::abs(mode_overlap(m10, m01, grid));
  const double worst_norm = std::max({n10, n01, xterm});

  out.pass = worst_pix < 1e-12 && worst_norm < 1e-6;
  out.detail = detail::fmt("max pixel disagreement %.3g (limit 1e-12), orthonormality deviation "
                           "%.3g (limit 1e-6)",
                           worst_pix, worst_norm);
  return out;
}

// Runs the whole gate, printing one line per criterion. Returns the number
// of failed criteria.
inline int run_acceptance(std::ostream& os) {
  using Fn = CriterionOutcome (*)();
  const Fn checks[] = {
      &criterion_bench_oracle_agreement,   &criterion_conventional_agreement,
      &criterion_probe_invariants,         &criterion_stokes_route_consistency,
      &criterion_mode_splitter_routing,    &criterion_converter_phases,
      &criterion_postselected_intensities, &criterion_depolarizing_averages,
      &criterion_noise_scaling,            &criterion_decomposition_rendering,
  };
  int failures = 0;
  int index = 0;
  for (const Fn fn : checks) {
    ++index;
    const CriterionOutcome r = fn();
    if (!r.pass) ++failures;
    os << (r.pass ? "[PASS] " : "[FAIL] ") << index << ". " << r.name << ": " << r.detail
       << "\n";
  }
  os << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria FAILED")
     << "\n";
  return failures;
}

}  // namespace radpol
