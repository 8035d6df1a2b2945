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

// Optical elements as 2x2 Jones operators. The same matrices act on either
// qubit: a retarder on the polarization qubit is a mode converter on the
// spatial qubit. Phase conventions are fixed once here; every downstream
// identity (projector synthesis, interferometer ports) depends on them.

#include <array>
#include <cmath>
#include <numeric>
#include <vector>

#include "radpol/algebra.hpp"
#include "radpol/errors.hpp"
#include "radpol/states.hpp"

namespace radpol {

// Rotation of the transverse plane by theta.
inline Complex2x2 rotation(double theta) {
  Complex2x2 m;
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  m.e[0][0] = c;
  m.e[0][1] = -s;
  m.e[1][0] = s;
  m.e[1][1] = c;
  return m;
}

// Retarder (wave plate / mode converter) with fast axis along x and overall
// phase split symmetrically: exp(-i phi/2) diag(1, exp(i phi)). With this
// choice the half-wave at pi/8 sends the diagonal kets to the computational
// basis with a pure -i prefactor, and the quarter-wave at pi/4 sends the
// left-circular ket to |x> with no prefactor at all.
inline Complex2x2 retarder(double phi) {
  const cplx pre = std::exp(cplx(0.0, -0.5 * phi));
  return pre * Complex2x2::diagonal(1.0, std::exp(cplx(0.0, phi)));
}

// Element with its axis rotated by theta: D(theta) m D(-theta).
inline Complex2x2 rotated(const Complex2x2& m, double theta) {
  return rotation(theta) * m * rotation(-theta);
}

inline Complex2x2 half_wave(double theta) { return rotated(retarder(kPi), theta); }

inline Complex2x2 quarter_wave(double theta) { return rotated(retarder(0.5 * kPi), theta); }

// Ideal linear polarizer along theta.
inline Complex2x2 polarizer(double theta) {
  const Ket2 p{{std::cos(theta), std::sin(theta)}};
  return outer(p, p);
}

inline double largest_singular_value(const Complex2x2& t) {
  const auto ev = hermitian_eigenvalues(t.adjoint() * t);
  return std::sqrt(std::max(ev[1], 0.0));
}

// ------------------------------------------------------------- projectors

// Analyzer projectors in the fixed measurement order: 0 = x, 1 = y,
// 2 = +45 diagonal, 3 = left circular.
inline Complex2x2 projector(int mu) {
  switch (mu) {
    case 0:
      return outer(ket_x(), ket_x());
    case 1:
      return outer(ket_y(), ket_y());
    case 2:
      return outer(ket_diag(), ket_diag());
    case 3:
      return outer(ket_lcirc(), ket_lcirc());
    default:
      throw std::out_of_range("projector index must be 0..3");
  }
}

// The diagonal and circular analyzers realized actively: a converter ahead
// of an x projector. Equal to projector(2) and projector(3).
inline Complex2x2 projector_via_converter(int mu) {
  if (mu == 2) {
    const Complex2x2 u = half_wave(kPi / 8.0);
    return u.adjoint() * projector(0) * u;
  }
  if (mu == 3) {
    const Complex2x2 u = quarter_wave(kPi / 4.0);
    return u.adjoint() * projector(0) * u;
  }
  throw std::out_of_range("converter-synthesized projectors exist for indices 2 and 3");
}

// Coupling matrix from Stokes components to analyzer intensities:
// I_alpha = sum_mu g[alpha][mu] S_mu for a single polarization qubit.
inline Real4x4 projector_coupling() {
  Real4x4 g;
  for (int alpha = 0; alpha < 4; ++alpha)
    for (int mu = 0; mu < 4; ++mu) {
      const Complex2x2 prod = projector(alpha) * pauli(mu);
      g.e[alpha][mu] = 0.5 * prod.trace().real();
    }
  return g;
}

// Inverse coupling: S_mu = sum_alpha f[mu][alpha] I_alpha.
inline Real4x4 intensity_to_stokes_coeffs() { return invert4(projector_coupling()); }

// ------------------------------------------------- acting on the two qubits

// (T (x) 1): polarization qubit only.
inline TwoQubitAmplitudes apply_to_pol(const Complex2x2& t, const TwoQubitAmplitudes& e) {
  TwoQubitAmplitudes out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      cplx s = 0.0;
      for (int k = 0; k < 2; ++k) s += t.e[i][k] * e.a[static_cast<std::size_t>(2 * k + j)];
      out.a[static_cast<std::size_t>(2 * i + j)] = s;
    }
  return out;
}

// (1 (x) W): spatial qubit only.
inline TwoQubitAmplitudes apply_to_spa(const Complex2x2& w, const TwoQubitAmplitudes& e) {
  TwoQubitAmplitudes out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      cplx s = 0.0;
      for (int l = 0; l < 2; ++l) s += w.e[j][l] * e.a[static_cast<std::size_t>(2 * i + l)];
      out.a[static_cast<std::size_t>(2 * i + j)] = s;
    }
  return out;
}

// Tags a Jones matrix with the degree of freedom it acts on so a spatial
// mode converter cannot be applied to the polarization qubit by accident.
struct PolarizationOp {
  Complex2x2 m;
};

struct SpatialOp {
  Complex2x2 m;
};

inline TwoQubitAmplitudes apply(const PolarizationOp& op, const TwoQubitAmplitudes& e) {
  return apply_to_pol(op.m, e);
}

inline TwoQubitAmplitudes apply(const SpatialOp& op, const TwoQubitAmplitudes& e) {
  return apply_to_spa(op.m, e);
}

// -------------------------------------------------------- sample elements

enum class ElementType { half_wave, quarter_wave, rotator, polarizer, custom };

struct ElementSpec {
  ElementType type = ElementType::custom;
  double theta = 0.0;        // axis angle, radians; ignored for custom
  Complex2x2 custom;         // used only when type == custom

  Complex2x2 jones() const {
    switch (type) {
      case ElementType::half_wave:
        return half_wave(theta);
      case ElementType::quarter_wave:
        return quarter_wave(theta);
      case ElementType::rotator:
        return rotation(theta);
      case ElementType::polarizer:
        return polarizer(theta);
      case ElementType::custom:
        return custom;
    }
    throw std::invalid_argument("unknown element type");
  }
};

// Composite Jones matrix of a sample chain. List order is traversal order:
// the first element is hit first, so the product is T_n * ... * T_1.
inline Complex2x2 compose(const std::vector<ElementSpec>& chain) {
  Complex2x2 t = Complex2x2::identity();
  for (const auto& el : chain) t = el.jones() * t;
  return t;
}

// ------------------------------------------------- depolarizing ensembles

// Statistical mixture of Jones operators: the beam sees member k with
// probability weight[k]. Weights must be nonnegative and sum to one.
struct DepolarizingEnsemble {
  struct Member {
    double weight = 0.0;
    Complex2x2 jones;
  };

  std::vector<Member> members;

  void validate(double tol = kNormTol) const {
    if (members.empty()) throw ValidationError("ensemble has no members");
    // Compensated summation: the check must not fail on summation roundoff
    // for large ensembles of tiny weights.
    double sum = 0.0;
    double comp = 0.0;
    for (const auto& m : members) {
      if (m.weight < 0.0) throw ValidationError("ensemble weights must be nonnegative");
      const double y = m.weight - comp;
      const double t = sum + y;
      comp = (t - sum) - y;
      sum = t;
    }
    if (std::abs(sum - 1.0) > tol)
      throw ValidationError("ensemble weights must sum to 1, got " + std::to_string(sum));
  }

  static DepolarizingEnsemble pure(const Complex2x2& t) {
    return DepolarizingEnsemble{{Member{1.0, t}}};
  }
};

}  // namespace radpol
