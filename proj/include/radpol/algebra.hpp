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

// Fixed-size complex/real matrix algebra for two-qubit optics.
//
// Everything here is O(1)-sized (2x2, 4x4), so operations are written out
// explicitly instead of pulling in a linear-algebra library. Amplitudes are
// O(1) throughout the codebase, so comparisons use absolute element
// tolerances (default kElementTol).
//
// Index convention for 4-dimensional objects: the composite index is
// r = 2*i + j with i the polarization bit and j the spatial-mode bit, i.e.
// kron(P, S) acts with P on polarization and S on the spatial mode.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "radpol/errors.hpp"

namespace radpol {

using cplx = std::complex<double>;

inline constexpr double kElementTol = 1e-10;  // default absolute comparison tolerance
inline constexpr double kDetTol = 1e-12;      // default singularity threshold for inversion
inline constexpr cplx kImag{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;

inline bool approx(double a, double b, double tol = kElementTol) {
  return std::abs(a - b) <= tol;
}

inline bool approx(cplx a, cplx b, double tol = kElementTol) {
  return std::abs(a - b) <= tol;
}

// ---------------------------------------------------------------- 2-vectors

// Two-component complex amplitude vector. Serves both polarization kets
// (x, y components) and spatial-mode kets (mode-10, mode-01 coefficients).
struct Ket2 {
  std::array<cplx, 2> a{};

  cplx& operator[](int i) { return a[static_cast<std::size_t>(i)]; }
  const cplx& operator[](int i) const { return a[static_cast<std::size_t>(i)]; }

  double norm2() const { return std::norm(a[0]) + std::norm(a[1]); }

  Ket2 normalized() const {
    const double n = std::sqrt(norm2());
    if (n == 0.0) throw std::invalid_argument("cannot normalize a zero ket");
    return Ket2{{a[0] / n, a[1] / n}};
  }
};

// Inner product, conjugate-linear in the first argument.
inline cplx inner(const Ket2& u, const Ket2& v) {
  return std::conj(u.a[0]) * v.a[0] + std::conj(u.a[1]) * v.a[1];
}

inline Ket2 operator+(const Ket2& u, const Ket2& v) {
  return Ket2{{u.a[0] + v.a[0], u.a[1] + v.a[1]}};
}

inline Ket2 operator-(const Ket2& u, const Ket2& v) {
  return Ket2{{u.a[0] - v.a[0], u.a[1] - v.a[1]}};
}

inline Ket2 operator*(cplx s, const Ket2& v) { return Ket2{{s * v.a[0], s * v.a[1]}}; }

// ------------------------------------------------------------- 2x2 complex

struct Complex2x2 {
  std::array<std::array<cplx, 2>, 2> e{};

  static Complex2x2 zero() { return {}; }

  static Complex2x2 identity() {
    Complex2x2 m;
    m.e[0][0] = 1.0;
    m.e[1][1] = 1.0;
    return m;
  }

  static Complex2x2 diagonal(cplx d0, cplx d1) {
    Complex2x2 m;
    m.e[0][0] = d0;
    m.e[1][1] = d1;
    return m;
  }

  Complex2x2 adjoint() const {
    Complex2x2 m;
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) m.e[r][c] = std::conj(e[c][r]);
    return m;
  }

  Complex2x2 transpose() const {
    Complex2x2 m;
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) m.e[r][c] = e[c][r];
    return m;
  }

  cplx trace() const { return e[0][0] + e[1][1]; }

  cplx det() const { return e[0][0] * e[1][1] - e[0][1] * e[1][0]; }
};

inline Complex2x2 operator+(const Complex2x2& x, const Complex2x2& y) {
  Complex2x2 m;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) m.e[r][c] = x.e[r][c] + y.e[r][c];
  return m;
}

inline Complex2x2 operator-(const Complex2x2& x, const Complex2x2& y) {
  Complex2x2 m;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) m.e[r][c] = x.e[r][c] - y.e[r][c];
  return m;
}

inline Complex2x2 operator*(const Complex2x2& x, const Complex2x2& y) {
  Complex2x2 m;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) m.e[r][c] = x.e[r][0] * y.e[0][c] + x.e[r][1] * y.e[1][c];
  return m;
}

inline Complex2x2 operator*(cplx s, const Complex2x2& x) {
  Complex2x2 m;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) m.e[r][c] = s * x.e[r][c];
  return m;
}

inline Complex2x2 operator*(double s, const Complex2x2& x) { return cplx(s, 0.0) * x; }

inline Ket2 operator*(const Complex2x2& m, const Ket2& v) {
  return Ket2{{m.e[0][0] * v.a[0] + m.e[0][1] * v.a[1],
               m.e[1][0] * v.a[0] + m.e[1][1] * v.a[1]}};
}

// |u><v|
inline Complex2x2 outer(const Ket2& u, const Ket2& v) {
  Complex2x2 m;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) m.e[r][c] = u.a[r] * std::conj(v.a[c]);
  return m;
}

inline double max_abs_diff(const Complex2x2& x, const Complex2x2& y) {
  double d = 0.0;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) d = std::max(d, std::abs(x.e[r][c] - y.e[r][c]));
  return d;
}

inline bool approx_equal(const Complex2x2& x, const Complex2x2& y, double tol = kElementTol) {
  return max_abs_diff(x, y) <= tol;
}

inline bool is_unitary(const Complex2x2& m, double tol = kElementTol) {
  return approx_equal(m.adjoint() * m, Complex2x2::identity(), tol);
}

inline bool is_hermitian(const Complex2x2& m, double tol = kElementTol) {
  return approx_equal(m, m.adjoint(), tol);
}

// Eigenvalues of a Hermitian 2x2 matrix, ascending.
inline std::array<double, 2> hermitian_eigenvalues(const Complex2x2& m) {
  const double a = m.e[0][0].real();
  const double b = m.e[1][1].real();
  const double r = std::hypot(0.5 * (a - b), std::abs(m.e[0][1]));
  const double mean = 0.5 * (a + b);
  return {mean - r, mean + r};
}

// ------------------------------------------------------------- 4x4 complex

struct Complex4x4 {
  std::array<std::array<cplx, 4>, 4> e{};

  static Complex4x4 zero() { return {}; }

  static Complex4x4 identity() {
    Complex4x4 m;
    for (int r = 0; r < 4; ++r) m.e[r][r] = 1.0;
    return m;
  }

  Complex4x4 adjoint() const {
    Complex4x4 m;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) m.e[r][c] = std::conj(e[c][r]);
    return m;
  }

  cplx trace() const { return e[0][0] + e[1][1] + e[2][2] + e[3][3]; }
};

inline Complex4x4 operator+(const Complex4x4& x, const Complex4x4& y) {
  Complex4x4 m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m.e[r][c] = x.e[r][c] + y.e[r][c];
  return m;
}

inline Complex4x4 operator-(const Complex4x4& x, const Complex4x4& y) {
  Complex4x4 m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m.e[r][c] = x.e[r][c] - y.e[r][c];
  return m;
}

inline Complex4x4 operator*(const Complex4x4& x, const Complex4x4& y) {
  Complex4x4 m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      cplx s = 0.0;
      for (int k = 0; k < 4; ++k) s += x.e[r][k] * y.e[k][c];
      m.e[r][c] = s;
    }
  return m;
}

inline Complex4x4 operator*(cplx s, const Complex4x4& x) {
  Complex4x4 m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m.e[r][c] = s * x.e[r][c];
  return m;
}

inline Complex4x4 operator*(double s, const Complex4x4& x) { return cplx(s, 0.0) * x; }

inline std::array<cplx, 4> operator*(const Complex4x4& m, const std::array<cplx, 4>& v) {
  std::array<cplx, 4> out{};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out[static_cast<std::size_t>(r)] += m.e[r][c] * v[static_cast<std::size_t>(c)];
  return out;
}

inline cplx inner4(const std::array<cplx, 4>& u, const std::array<cplx, 4>& v) {
  cplx s = 0.0;
  for (std::size_t k = 0; k < 4; ++k) s += std::conj(u[k]) * v[k];
  return s;
}

inline double max_abs_diff(const Complex4x4& x, const Complex4x4& y) {
  double d = 0.0;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) d = std::max(d, std::abs(x.e[r][c] - y.e[r][c]));
  return d;
}

inline bool approx_equal(const Complex4x4& x, const Complex4x4& y, double tol = kElementTol) {
  return max_abs_diff(x, y) <= tol;
}

inline bool is_hermitian(const Complex4x4& m, double tol = kElementTol) {
  return approx_equal(m, m.adjoint(), tol);
}

// Eigenvalues of a Hermitian 4x4 matrix, ascending. Cyclic Jacobi with the
// off-diagonal phase removed per pivot and the 2x2 sub-rotation taken from
// the closed-form eigenvector, so every pivot is annihilated exactly.
inline std::array<double, 4> hermitian_eigenvalues(const Complex4x4& m) {
  Complex4x4 h = m;
  double scale = 0.0;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) scale = std::max(scale, std::abs(h.e[r][c]));
  if (scale == 0.0) return {0.0, 0.0, 0.0, 0.0};

  for (int sweep = 0; sweep < 50; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < 4; ++p)
      for (int q = p + 1; q < 4; ++q) off = std::max(off, std::abs(h.e[p][q]));
    if (off <= scale * 1e-15) break;

    for (int p = 0; p < 4; ++p) {
      for (int q = p + 1; q < 4; ++q) {
        const double absh = std::abs(h.e[p][q]);
        if (absh <= scale * 1e-18) continue;
        const cplx phase = h.e[p][q] / absh;
        const double a = h.e[p][p].real();
        const double b = h.e[q][q].real();
        const double rad = std::hypot(0.5 * (a - b), absh);
        const double lp = 0.5 * (a + b) + rad;
        // eigenvector of [[a, absh], [absh, b]] for the larger eigenvalue,
        // the branch keeping both components well away from cancellation
        double vx, vy;
        if (a >= b) {
          vx = lp - b;
          vy = absh;
        } else {
          vx = absh;
          vy = lp - a;
        }
        const double vn = std::hypot(vx, vy);
        const double c = vx / vn;
        const double s = vy / vn;
        // pair rotation J: J[p][p] = c, J[p][q] = -s,
        // J[q][p] = conj(phase)*s, J[q][q] = conj(phase)*c
        const cplx jqp = std::conj(phase) * s;
        const cplx jqq = std::conj(phase) * c;
        for (int k = 0; k < 4; ++k) {  // h <- h * J
          const cplx hp = h.e[k][p];
          const cplx hq = h.e[k][q];
          h.e[k][p] = hp * c + hq * jqp;
          h.e[k][q] = hp * (-s) + hq * jqq;
        }
        for (int k = 0; k < 4; ++k) {  // h <- J^dagger * h
          const cplx hp = h.e[p][k];
          const cplx hq = h.e[q][k];
          h.e[p][k] = c * hp + std::conj(jqp) * hq;
          h.e[q][k] = -s * hp + std::conj(jqq) * hq;
        }
        // keep the iterate exactly Hermitian against roundoff drift
        for (int r = 0; r < 4; ++r) h.e[r][r] = h.e[r][r].real();
        for (int r = 0; r < 4; ++r)
          for (int c2 = r + 1; c2 < 4; ++c2) {
            const cplx avg = 0.5 * (h.e[r][c2] + std::conj(h.e[c2][r]));
            h.e[r][c2] = avg;
            h.e[c2][r] = std::conj(avg);
          }
      }
    }
  }

  std::array<double, 4> ev{h.e[0][0].real(), h.e[1][1].real(), h.e[2][2].real(), h.e[3][3].real()};
  std::sort(ev.begin(), ev.end());
  return ev;
}

// ---------------------------------------------------------------- 4x4 real

struct Real4x4 {
  std::array<std::array<double, 4>, 4> e{};

  static Real4x4 zero() { return {}; }

  static Real4x4 identity() {
    Real4x4 m;
    for (int r = 0; r < 4; ++r) m.e[r][r] = 1.0;
    return m;
  }

  static Real4x4 diagonal(double d0, double d1, double d2, double d3) {
    Real4x4 m;
    m.e[0][0] = d0;
    m.e[1][1] = d1;
    m.e[2][2] = d2;
    m.e[3][3] = d3;
    return m;
  }

  Real4x4 transpose() const {
    Real4x4 m;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) m.e[r][c] = e[c][r];
    return m;
  }
};

inline Real4x4 operator+(const Real4x4& x, const Real4x4& y) {
  Real4x4 m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m.e[r][c] = x.e[r][c] + y.e[r][c];
  return m;
}

inline Real4x4 operator-(const Real4x4& x, const Real4x4& y) {
  Real4x4 m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m.e[r][c] = x.e[r][c] - y.e[r][c];
  return m;
}

inline Real4x4 operator*(const Real4x4& x, const Real4x4& y) {
  Real4x4 m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      double s = 0.0;
      for (int k = 0; k < 4; ++k) s += x.e[r][k] * y.e[k][c];
      m.e[r][c] = s;
    }
  return m;
}

inline Real4x4 operator*(double s, const Real4x4& x) {
  Real4x4 m;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m.e[r][c] = s * x.e[r][c];
  return m;
}

inline std::array<double, 4> operator*(const Real4x4& m, const std::array<double, 4>& v) {
  std::array<double, 4> out{};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out[static_cast<std::size_t>(r)] += m.e[r][c] * v[static_cast<std::size_t>(c)];
  return out;
}

inline double max_abs_diff(const Real4x4& x, const Real4x4& y) {
  double d = 0.0;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) d = std::max(d, std::abs(x.e[r][c] - y.e[r][c]));
  return d;
}

inline bool approx_equal(const Real4x4& x, const Real4x4& y, double tol = kElementTol) {
  return max_abs_diff(x, y) <= tol;
}

inline double frobenius_diff(const Real4x4& x, const Real4x4& y) {
  double s = 0.0;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      const double d = x.e[r][c] - y.e[r][c];
      s += d * d;
    }
  return std::sqrt(s);
}

// Determinant by partially pivoted elimination.
inline double det4(Real4x4 m) {
  double det = 1.0;
  for (int col = 0; col < 4; ++col) {
    int piv = col;
    for (int r = col + 1; r < 4; ++r)
      if (std::abs(m.e[r][col]) > std::abs(m.e[piv][col])) piv = r;
    if (piv != col) {
      std::swap(m.e[piv], m.e[col]);
      det = -det;
    }
    const double p = m.e[col][col];
    if (p == 0.0) return 0.0;
    det *= p;
    for (int r = col + 1; r < 4; ++r) {
      const double f = m.e[r][col] / p;
      for (int c = col; c < 4; ++c) m.e[r][c] -= f * m.e[col][c];
    }
  }
  return det;
}

// Inverse by Gauss-Jordan elimination with partial pivoting. Raises
// SingularMatrixError when |det| falls below the threshold.
inline Real4x4 invert4(const Real4x4& m, double threshold = kDetTol) {
  const double det = det4(m);
  if (std::abs(det) < threshold) {
    throw SingularMatrixError("matrix inversion rejected: |det| = " + std::to_string(std::abs(det)) +
                              " below threshold " + std::to_string(threshold));
  }
  std::array<std::array<double, 8>, 4> aug{};
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) aug[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = m.e[r][c];
    aug[static_cast<std::size_t>(r)][static_cast<std::size_t>(4 + r)] = 1.0;
  }
  for (int col = 0; col < 4; ++col) {
    int piv = col;
    for (int r = col + 1; r < 4; ++r)
      if (std::abs(aug[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)]) >
          std::abs(aug[static_cast<std::size_t>(piv)][static_cast<std::size_t>(col)]))
        piv = r;
    std::swap(aug[static_cast<std::size_t>(piv)], aug[static_cast<std::size_t>(col)]);
    const double p = aug[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
    if (p == 0.0) throw SingularMatrixError("matrix inversion hit a zero pivot");
    for (int c = 0; c < 8; ++c) aug[static_cast<std::size_t>(col)][static_cast<std::size_t>(c)] /= p;
    for (int r = 0; r < 4; ++r) {
      if (r == col) continue;
      const double f = aug[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)];
      if (f == 0.0) continue;
      for (int c = 0; c < 8; ++c)
        aug[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] -=
            f * aug[static_cast<std::size_t>(col)][static_cast<std::size_t>(c)];
    }
  }
  Real4x4 inv;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) inv.e[r][c] = aug[static_cast<std::size_t>(r)][static_cast<std::size_t>(4 + c)];
  return inv;
}

// ------------------------------------------------------- Pauli and products

// Pauli basis in the labeling used throughout: index 1 is the diagonal
// (+45/-45) operator, index 2 the circular one, index 3 the x/y contrast.
// Consumers relying on Stokes component order inherit exactly this labeling.
inline Complex2x2 pauli(int mu) {
  Complex2x2 m;
  switch (mu) {
    case 0:
      m.e[0][0] = 1.0;
      m.e[1][1] = 1.0;
      return m;
    case 1:
      m.e[0][1] = 1.0;
      m.e[1][0] = 1.0;
      return m;
    case 2:
      m.e[0][1] = cplx(0.0, -1.0);
      m.e[1][0] = cplx(0.0, 1.0);
      return m;
    case 3:
      m.e[0][0] = 1.0;
      m.e[1][1] = -1.0;
      return m;
    default:
      throw std::out_of_range("pauli index must be 0..3");
  }
}

// Tensor product with the polarization factor on the left: the composite row
// index is 2*i_pol + i_spa.
inline Complex4x4 kron(const Complex2x2& p, const Complex2x2& s) {
  Complex4x4 m;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) m.e[2 * i + j][2 * k + l] = p.e[i][k] * s.e[j][l];
  return m;
}

}  // namespace radpol
