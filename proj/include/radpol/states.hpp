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

// Two-qubit description of a paraxial beam: one qubit for transverse
// polarization (x, y), one for the first-order spatial mode pair
// (mode 10, mode 01). Amplitudes are stored as [A00, A01, A10, A11] with
// composite index 2*i_pol + j_spa.
//
// Stokes component order follows the Pauli labeling in algebra.hpp: S1 is
// the +45/-45 contrast, S2 the circular contrast, S3 the x/y contrast. A
// horizontally polarized beam therefore has S = (1, 0, 0, 1), not the
// (1, 1, 0, 0) of the common instrument convention.

#include <array>
#include <cmath>

#include "radpol/algebra.hpp"

namespace radpol {

inline constexpr double kNormTol = 1e-12;

struct TwoQubitAmplitudes {
  std::array<cplx, 4> a{};

  double norm2() const {
    return std::norm(a[0]) + std::norm(a[1]) + std::norm(a[2]) + std::norm(a[3]);
  }

  bool is_normalized(double tol = kNormTol) const { return std::abs(norm2() - 1.0) <= tol; }

  TwoQubitAmplitudes normalized() const {
    const double n = std::sqrt(norm2());
    if (n == 0.0) throw std::invalid_argument("cannot normalize a zero amplitude vector");
    TwoQubitAmplitudes out;
    for (std::size_t k = 0; k < 4; ++k) out.a[k] = a[k] / n;
    return out;
  }

  // Amplitudes reshaped to the 2x2 matrix A with A[i_pol][j_spa].
  Complex2x2 amplitude_matrix() const {
    Complex2x2 m;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) m.e[i][j] = a[static_cast<std::size_t>(2 * i + j)];
    return m;
  }

  static TwoQubitAmplitudes from_matrix(const Complex2x2& m) {
    TwoQubitAmplitudes e;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) e.a[static_cast<std::size_t>(2 * i + j)] = m.e[i][j];
    return e;
  }
};

inline TwoQubitAmplitudes operator+(const TwoQubitAmplitudes& u, const TwoQubitAmplitudes& v) {
  TwoQubitAmplitudes out;
  for (std::size_t k = 0; k < 4; ++k) out.a[k] = u.a[k] + v.a[k];
  return out;
}

inline TwoQubitAmplitudes operator*(cplx s, const TwoQubitAmplitudes& v) {
  TwoQubitAmplitudes out;
  for (std::size_t k = 0; k < 4; ++k) out.a[k] = s * v.a[k];
  return out;
}

// Product state pol (x) spa.
inline TwoQubitAmplitudes product_state(const Ket2& pol, const Ket2& spa) {
  TwoQubitAmplitudes e;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) e.a[static_cast<std::size_t>(2 * i + j)] = pol[i] * spa[j];
  return e;
}

// Radially polarized beam, (|x,10> + |y,01>)/sqrt(2). Maximally entangled
// between the two degrees of freedom.
inline TwoQubitAmplitudes radial_beam() {
  const double r = 1.0 / std::sqrt(2.0);
  return TwoQubitAmplitudes{{cplx(r), cplx(0.0), cplx(0.0), cplx(r)}};
}

// ------------------------------------------------------ polarization kets

inline Ket2 ket_x() { return Ket2{{1.0, 0.0}}; }
inline Ket2 ket_y() { return Ket2{{0.0, 1.0}}; }
inline Ket2 ket_diag() {
  const double r = 1.0 / std::sqrt(2.0);
  return Ket2{{r, r}};
}
inline Ket2 ket_antidiag() {
  const double r = 1.0 / std::sqrt(2.0);
  return Ket2{{r, -r}};
}
inline Ket2 ket_lcirc() {
  const double r = 1.0 / std::sqrt(2.0);
  return Ket2{{cplx(r), cplx(0.0, r)}};
}
inline Ket2 ket_rcirc() {
  const double r = 1.0 / std::sqrt(2.0);
  return Ket2{{cplx(r), cplx(0.0, -r)}};
}

// -------------------------------------------------------- coherency forms

struct CoherencyMatrix2 {
  Complex2x2 rho;

  double power() const { return rho.trace().real(); }

  bool is_physical(double tol = kElementTol) const {
    return is_hermitian(rho, tol) && hermitian_eigenvalues(rho)[0] >= -tol;
  }
};

struct CoherencyMatrix4 {
  Complex4x4 rho;

  double power() const { return rho.trace().real(); }

  bool is_physical(double tol = kElementTol) const {
    return is_hermitian(rho, tol) && hermitian_eigenvalues(rho)[0] >= -tol;
  }
};

// Rank-one coherency matrix |e><e| of a fully coherent beam.
inline CoherencyMatrix4 coherency_of(const TwoQubitAmplitudes& e) {
  CoherencyMatrix4 m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c)
      m.rho.e[r][c] = e.a[static_cast<std::size_t>(r)] * std::conj(e.a[static_cast<std::size_t>(c)]);
  return m;
}

// Polarization coherency matrix: trace over the spatial mode. Equals A A^dag
// for a pure beam with amplitude matrix A.
inline CoherencyMatrix2 reduce_pol(const CoherencyMatrix4& m) {
  CoherencyMatrix2 out;
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 2; ++k) {
      cplx s = 0.0;
      for (int j = 0; j < 2; ++j) s += m.rho.e[2 * i + j][2 * k + j];
      out.rho.e[i][k] = s;
    }
  return out;
}

// Spatial-mode coherency matrix: trace over polarization. Equals the
// transpose of A^dag A for a pure beam, which is what tracing the composite
// coherency matrix produces directly.
inline CoherencyMatrix2 reduce_spa(const CoherencyMatrix4& m) {
  CoherencyMatrix2 out;
  for (int j = 0; j < 2; ++j)
    for (int l = 0; l < 2; ++l) {
      cplx s = 0.0;
      for (int i = 0; i < 2; ++i) s += m.rho.e[2 * i + j][2 * i + l];
      out.rho.e[j][l] = s;
    }
  return out;
}

// ----------------------------------------------------------- Stokes forms

struct StokesVector {
  std::array<double, 4> s{};

  double& operator[](int i) { return s[static_cast<std::size_t>(i)]; }
  const double& operator[](int i) const { return s[static_cast<std::size_t>(i)]; }
};

inline StokesVector stokes_of(const CoherencyMatrix2& m) {
  StokesVector v;
  for (int mu = 0; mu < 4; ++mu) {
    const Complex2x2 prod = m.rho * pauli(mu);
    v[mu] = prod.trace().real();
  }
  return v;
}

inline CoherencyMatrix2 pol_from_stokes(const StokesVector& v) {
  Complex2x2 acc;
  for (int mu = 0; mu < 4; ++mu) acc = acc + (0.5 * v[mu]) * pauli(mu);
  return CoherencyMatrix2{acc};
}

// Two-degree-of-freedom Stokes parameters S_{mu nu} = tr[rho (sigma_mu (x)
// sigma_nu)], the joint generalization of the polarization Stokes vector.
struct TwoDofStokes {
  Real4x4 s;
};

inline TwoDofStokes two_dof_stokes(const CoherencyMatrix4& m) {
  TwoDofStokes out;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) {
      const Complex4x4 prod = m.rho * kron(pauli(mu), pauli(nu));
      out.s.e[mu][nu] = prod.trace().real();
    }
  return out;
}

inline CoherencyMatrix4 coherency_from_two_dof(const TwoDofStokes& st) {
  Complex4x4 acc;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) acc = acc + (0.25 * st.s.e[mu][nu]) * kron(pauli(mu), pauli(nu));
  return CoherencyMatrix4{acc};
}

// ------------------------------------------------------------ diagnostics

// Schmidt coefficients of the polarization/spatial split, descending.
// Squares sum to the total power; equal coefficients mean maximal
// entanglement between the two degrees of freedom.
inline std::array<double, 2> schmidt_coefficients(const TwoQubitAmplitudes& e) {
  const Complex2x2 a = e.amplitude_matrix();
  const auto ev = hermitian_eigenvalues(a.adjoint() * a);
  const double lo = std::max(ev[0], 0.0);
  const double hi = std::max(ev[1], 0.0);
  return {std::sqrt(hi), std::sqrt(lo)};
}

// Distance between amplitude vectors minimized over a global phase,
// min_phi || e1 - exp(i phi) e2 ||. The residual is formed componentwise
// after applying the optimal phase; the closed form n1 + n2 - 2|ov| would
// cancel catastrophically for nearly identical vectors.
inline double phase_aligned_distance(const TwoQubitAmplitudes& e1, const TwoQubitAmplitudes& e2) {
  cplx ov = 0.0;
  for (std::size_t k = 0; k < 4; ++k) ov += std::conj(e1.a[k]) * e2.a[k];
  const double mag = std::abs(ov);
  const cplx phase = mag > 0.0 ? std::conj(ov) / mag : cplx(1.0, 0.0);
  double d2 = 0.0;
  for (std::size_t k = 0; k < 4; ++k) d2 += std::norm(e1.a[k] - phase * e2.a[k]);
  return std::sqrt(d2);
}

}  // namespace radpol
