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

// Mueller-matrix construction and the two reconstruction schemes: the
// sequential four-probe method and the single-shot two-degree-of-freedom
// method that reads everything off one entangled probe.
//
// The analyzer basis is {x, y, +45, left-circular} (indices 0..3). The
// spatial postselection basis pairs x/y mode content with +45 and
// right-circular combinations; no correction is needed anywhere because the
// intensity matrix is defined directly through projector expectations.

#include <array>
#include <cmath>
#include <utility>
#include <vector>

#include "radpol/algebra.hpp"
#include "radpol/elements.hpp"
#include "radpol/errors.hpp"
#include "radpol/states.hpp"

namespace radpol {

// Signature relating two-DoF Stokes parameters to Mueller elements for the
// radial probe: S'_{mu nu} = M_{mu nu} * kLambda[nu].
inline constexpr std::array<double, 4> kLambda{1.0, 1.0, -1.0, 1.0};

struct MuellerMatrix {
  Real4x4 m;
};

inline StokesVector transform(const MuellerMatrix& mm, const StokesVector& s) {
  StokesVector out;
  out.s = mm.m * s.s;
  return out;
}

// M_{mu nu} = tr(sigma_mu T sigma_nu T^dag) / 2. The traces are real for
// every T; residual imaginary parts are checked and dropped.
inline MuellerMatrix mueller_from_jones(const Complex2x2& t) {
  MuellerMatrix out;
  const Complex2x2 tdag = t.adjoint();
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      const cplx tr = (pauli(mu) * t * pauli(nu) * tdag).trace();
      if (std::abs(tr.imag()) > 1e-9)
        throw std::logic_error("Mueller trace developed an imaginary part");
      out.m.e[mu][nu] = 0.5 * tr.real();
    }
  return out;
}

// Ensemble average, summed in member order for reproducibility.
inline MuellerMatrix mueller_depolarizing(const DepolarizingEnsemble& ens) {
  ens.validate();
  MuellerMatrix acc;
  for (const auto& member : ens.members) {
    const MuellerMatrix mk = mueller_from_jones(member.jones);
    acc.m = acc.m + member.weight * mk.m;
  }
  return acc;
}

// ------------------------------------------------------------- probe sets

struct ProbeSet {
  std::array<Ket2, 4> kets;
  Real4x4 v;  // column alpha holds the Stokes vector of probe alpha

  static ProbeSet from_kets(const std::array<Ket2, 4>& kets, double det_threshold = kDetTol) {
    ProbeSet p;
    p.kets = kets;
    for (int alpha = 0; alpha < 4; ++alpha) {
      const StokesVector s = stokes_of(CoherencyMatrix2{outer(kets[static_cast<std::size_t>(alpha)],
                                                              kets[static_cast<std::size_t>(alpha)])});
      for (int mu = 0; mu < 4; ++mu) p.v.e[mu][alpha] = s[mu];
    }
    if (std::abs(det4(p.v)) < det_threshold)
      throw SingularMatrixError("probe set does not span Stokes space");
    return p;
  }
};

// The standard sequential set: x, y, +45, left circular.
inline ProbeSet conventional_probe_set() {
  return ProbeSet::from_kets({ket_x(), ket_y(), ket_diag(), ket_lcirc()});
}

// Four-probe reconstruction M = V' V^{-1}: send each probe through the
// sample, read its output Stokes vector into a column of V'.
inline MuellerMatrix conventional_reconstruct(const Complex2x2& t, const ProbeSet& probes) {
  Real4x4 vprime;
  for (int alpha = 0; alpha < 4; ++alpha) {
    const Ket2& k = probes.kets[static_cast<std::size_t>(alpha)];
    const Complex2x2 rho_out = t * outer(k, k) * t.adjoint();
    const StokesVector s = stokes_of(CoherencyMatrix2{rho_out});
    for (int mu = 0; mu < 4; ++mu) vprime.e[mu][alpha] = s[mu];
  }
  return MuellerMatrix{vprime * invert4(probes.v)};
}

inline MuellerMatrix conventional_reconstruct(const DepolarizingEnsemble& ens, const ProbeSet& probes) {
  ens.validate();
  Real4x4 vprime;
  for (int alpha = 0; alpha < 4; ++alpha) {
    const Ket2& k = probes.kets[static_cast<std::size_t>(alpha)];
    Complex2x2 rho_out;
    for (const auto& member : ens.members)
      rho_out = rho_out + member.weight * (member.jones * outer(k, k) * member.jones.adjoint());
    const StokesVector s = stokes_of(CoherencyMatrix2{rho_out});
    for (int mu = 0; mu < 4; ++mu) vprime.e[mu][alpha] = s[mu];
  }
  return MuellerMatrix{vprime * invert4(probes.v)};
}

// Overdetermined variant: ordinary least squares over (input, output) Stokes
// pairs via the normal equations.
inline MuellerMatrix least_squares_mueller(const std::vector<std::pair<StokesVector, StokesVector>>& pairs) {
  if (pairs.size() < 4) throw RankDeficientError("need at least 4 probe pairs");
  Real4x4 gram;
  Real4x4 cross;
  for (const auto& [sin_, sout] : pairs)
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) {
        gram.e[r][c] += sin_[r] * sin_[c];
        cross.e[r][c] += sout[r] * sin_[c];
      }
  Real4x4 ginv;
  try {
    ginv = invert4(gram);
  } catch (const SingularMatrixError&) {
    throw RankDeficientError("probe Gram matrix is singular: probes do not span Stokes space");
  }
  return MuellerMatrix{cross * ginv};
}

// --------------------------------------------------------- intensity route

// The 16 projective intensities I_{alpha beta} = tr[rho (E_alpha (x)
// E_beta)], polarization analyzer index alpha, spatial analyzer index beta.
struct IntensityMatrix {
  Real4x4 i;

  double transmitted_power() const {
    return i.e[0][0] + i.e[0][1] + i.e[1][0] + i.e[1][1];
  }
};

inline IntensityMatrix intensity_matrix_of(const CoherencyMatrix4& rho) {
  IntensityMatrix out;
  for (int alpha = 0; alpha < 4; ++alpha)
    for (int beta = 0; beta < 4; ++beta) {
      const Complex4x4 prod = rho.rho * kron(projector(alpha), projector(beta));
      out.i.e[alpha][beta] = prod.trace().real();
    }
  return out;
}

namespace detail {

// The expanded per-detector sums, kept fully spelled out as an independent
// cross-check of the matrix route.
inline Real4x4 two_dof_stokes_expanded(const Real4x4& i) {
  const double i00 = i.e[0][0], i01 = i.e[0][1], i02 = i.e[0][2], i03 = i.e[0][3];
  const double i10 = i.e[1][0], i11 = i.e[1][1], i12 = i.e[1][2], i13 = i.e[1][3];
  const double i20 = i.e[2][0], i21 = i.e[2][1], i22 = i.e[2][2], i23 = i.e[2][3];
  const double i30 = i.e[3][0], i31 = i.e[3][1], i32 = i.e[3][2], i33 = i.e[3][3];

  Real4x4 s;
  s.e[0][0] = i00 + i01 + i10 + i11;
  s.e[0][1] = -i00 - i01 + 2.0 * i02 - i10 - i11 + 2.0 * i12;
  s.e[0][2] = -i00 - i01 + 2.0 * i03 - i10 - i11 + 2.0 * i13;
  s.e[0][3] = i00 - i01 + i10 - i11;
  s.e[1][0] = -i00 - i01 - i10 - i11 + 2.0 * (i20 + i21);
  s.e[1][1] = i00 + i01 - 2.0 * i02 + i10 + i11 - 2.0 * i12 - 2.0 * i20 - 2.0 * i21 + 4.0 * i22;
  s.e[1][2] = i00 + i01 - 2.0 * i03 + i10 + i11 - 2.0 * i13 - 2.0 * i20 - 2.0 * i21 + 4.0 * i23;
  s.e[1][3] = -i00 + i01 - i10 + i11 + 2.0 * (i20 - i21);
  s.e[2][0] = -i00 - i01 - i10 - i11 + 2.0 * (i30 + i31);
  s.e[2][1] = i00 + i01 - 2.0 * i02 + i10 + i11 - 2.0 * i12 - 2.0 * i30 - 2.0 * i31 + 4.0 * i32;
  s.e[2][2] = i00 + i01 - 2.0 * i03 + i10 + i11 - 2.0 * i13 - 2.0 * i30 - 2.0 * i31 + 4.0 * i33;
  s.e[2][3] = -i00 + i01 - i10 + i11 + 2.0 * (i30 - i31);
  s.e[3][0] = i00 + i01 - i10 - i11;
  s.e[3][1] = -i00 - i01 + 2.0 * i02 + i10 + i11 - 2.0 * i12;
  s.e[3][2] = -i00 - i01 + 2.0 * i03 + i10 + i11 - 2.0 * i13;
  s.e[3][3] = i00 - i01 - i10 + i11;
  return s;
}

}  // namespace detail

// Converts measured intensities to two-DoF Stokes parameters, S = F I F^T
// with F the inverse projector coupling. Both the matrix form and the
// expanded sums are evaluated and must agree; a mismatch means a broken
// build, not bad data.
inline TwoDofStokes intensities_to_two_dof_stokes(const IntensityMatrix& im) {
  const Real4x4 f = intensity_to_stokes_coeffs();
  const Real4x4 via_matrix = f * im.i * f.transpose();
  const Real4x4 via_sums = detail::two_dof_stokes_expanded(im.i);
  if (max_abs_diff(via_matrix, via_sums) > 1e-12)
    throw std::logic_error("intensity-to-Stokes routes disagree");
  return TwoDofStokes{via_matrix};
}

// For the radial probe the two-DoF Stokes parameters are the Mueller
// elements up to the fixed signature: M_{mu nu} = S'_{mu nu} * lambda_nu.
// Only the nu = 2 column flips sign.
inline MuellerMatrix two_dof_reconstruct(const TwoDofStokes& s) {
  MuellerMatrix out;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu)
      out.m.e[mu][nu] = s.s.e[mu][nu] * kLambda[static_cast<std::size_t>(nu)];
  return out;
}

inline TwoDofStokes two_dof_from_mueller(const MuellerMatrix& mm) {
  TwoDofStokes out;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu)
      out.s.e[mu][nu] = mm.m.e[mu][nu] * kLambda[static_cast<std::size_t>(nu)];
  return out;
}

}  // namespace radpol
