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

// Counter-based random numbers built on the splitmix64 finalizer. The k-th
// draw of stream s under seed x is a pure function of (x, s, k), so results
// are reproducible across platforms and trials can run on any thread without
// sharing state. Substreams are cheap: construct with a different stream id.

#include <array>
#include <cmath>
#include <cstdint>

#include "radpol/algebra.hpp"

namespace radpol {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

// splitmix64 finalizer: bijective avalanche mix.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Stable per-task subseed, used to give every Monte Carlo trial its own
// independent seed regardless of execution order.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t task) {
  return mix64(mix64(seed + kGolden) + task * kGolden);
}

class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : base_(mix64(mix64(seed + kGolden) + stream)) {}

  std::uint64_t next_u64() {
    ++counter_;
    return mix64(base_ + counter_ * kGolden);
  }

  // Uniform in [0, 1), 53 random bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller. Consumes exactly two uniforms per call
  // and caches nothing, keeping the draw count deterministic.
  double gaussian() {
    const double u1 = 1.0 - uniform01();  // (0, 1], keeps the log finite
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  }

  cplx complex_gaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return cplx(re, im);
  }

  // Poisson counts: exact inversion for small means, rounded Gaussian
  // approximation for large ones (relative error far below readout noise
  // levels of interest there).
  double poisson(double mean) {
    if (mean <= 0.0) return 0.0;
    if (mean < 256.0) {
      const double limit = std::exp(-mean);
      double p = 1.0;
      std::uint64_t k = 0;
      do {
        ++k;
        p *= uniform01();
      } while (p > limit);
      return static_cast<double>(k - 1);
    }
    const double n = std::round(mean + std::sqrt(mean) * gaussian());
    return n < 0.0 ? 0.0 : n;
  }

 private:
  std::uint64_t base_;
  std::uint64_t counter_ = 0;
};

// ------------------------------------------------------- matrix ensembles

// 2x2 matrix of independent standard complex Gaussians.
inline Complex2x2 ginibre2(CounterRng& rng) {
  Complex2x2 g;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) g.e[r][c] = rng.complex_gaussian();
  return g;
}

// Haar-distributed 2x2 unitary: QR of a Ginibre matrix via Gram-Schmidt.
// The R diagonal comes out real positive, which is exactly the phase fix
// that makes the Q factor Haar.
inline Complex2x2 haar_unitary2(CounterRng& rng) {
  const Complex2x2 g = ginibre2(rng);
  Ket2 c1{{g.e[0][0], g.e[1][0]}};
  Ket2 c2{{g.e[0][1], g.e[1][1]}};
  const Ket2 q1 = c1.normalized();
  const cplx overlap = inner(q1, c2);
  const Ket2 q2 = (c2 - overlap * q1).normalized();
  Complex2x2 u;
  u.e[0][0] = q1[0];
  u.e[1][0] = q1[1];
  u.e[0][1] = q2[0];
  u.e[1][1] = q2[1];
  return u;
}

// Random passive Jones matrix: Ginibre entries rescaled so the largest
// singular value is 1 (no gain anywhere).
inline Complex2x2 random_passive_jones(CounterRng& rng) {
  const Complex2x2 g = ginibre2(rng);
  const auto ev = hermitian_eigenvalues(g.adjoint() * g);
  const double smax = std::sqrt(std::max(ev[1], 0.0));
  if (smax == 0.0) return Complex2x2::zero();
  return (1.0 / smax) * g;
}

// Random normalized pure two-qubit amplitudes.
inline std::array<cplx, 4> random_pure4(CounterRng& rng) {
  std::array<cplx, 4> a{};
  double n2 = 0.0;
  for (auto& z : a) {
    z = rng.complex_gaussian();
    n2 += std::norm(z);
  }
  const double n = std::sqrt(n2);
  for (auto& z : a) z /= n;
  return a;
}

inline Complex2x2 random_hermitian2(CounterRng& rng) {
  const Complex2x2 g = ginibre2(rng);
  return 0.5 * (g + g.adjoint());
}

inline Complex4x4 random_hermitian4(CounterRng& rng) {
  Complex4x4 g;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) g.e[r][c] = rng.complex_gaussian();
  return 0.5 * (g + g.adjoint());
}

// Random physical coherency matrix, trace normalized to 1: G G^dag / tr.
inline Complex4x4 random_coherency4(CounterRng& rng) {
  Complex4x4 g;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) g.e[r][c] = rng.complex_gaussian();
  Complex4x4 rho = g * g.adjoint();
  const double tr = rho.trace().real();
  return (1.0 / tr) * rho;
}

}  // namespace radpol
