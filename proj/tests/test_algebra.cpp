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

#include <catch2/catch_amalgamated.hpp>

#include "radpol/algebra.hpp"
#include "radpol/rng.hpp"
#include "support.hpp"

using namespace radpol;

TEST_CASE("pauli matrices match the reference set", "[algebra]") {
  for (int mu = 0; mu < 4; ++mu)
    REQUIRE(oracle::max_abs_diff(to_oracle(pauli(mu)), oracle::pauli(mu)) == 0.0);
  REQUIRE_THROWS_AS(pauli(4), std::out_of_range);
  REQUIRE_THROWS_AS(pauli(-1), std::out_of_range);
}

TEST_CASE("pauli algebra closes", "[algebra]") {
  // sigma1 sigma2 = i sigma3 and cyclic permutations fix the labeling.
  const cplx i(0.0, 1.0);
  REQUIRE(max_abs_diff(pauli(1) * pauli(2), i * pauli(3)) < 1e-15);
  REQUIRE(max_abs_diff(pauli(2) * pauli(3), i * pauli(1)) < 1e-15);
  REQUIRE(max_abs_diff(pauli(3) * pauli(1), i * pauli(2)) < 1e-15);
  for (int mu = 1; mu < 4; ++mu)
    REQUIRE(max_abs_diff(pauli(mu) * pauli(mu), Complex2x2::identity()) < 1e-15);
}

TEST_CASE("kron uses polarization-major composite indexing", "[algebra]") {
  CounterRng rng(11, 0);
  for (int k = 0; k < 20; ++k) {
    const Complex2x2 p = ginibre2(rng);
    const Complex2x2 s = ginibre2(rng);
    REQUIRE(oracle::max_abs_diff(to_oracle(kron(p, s)),
                                 oracle::kron(to_oracle(p), to_oracle(s))) < 1e-14);
  }
}

TEST_CASE("kron acts as the product on factored vectors", "[algebra]") {
  CounterRng rng(12, 0);
  const Complex2x2 p = ginibre2(rng);
  const Complex2x2 s = ginibre2(rng);
  const Ket2 u{{rng.complex_gaussian(), rng.complex_gaussian()}};
  const Ket2 v{{rng.complex_gaussian(), rng.complex_gaussian()}};
  const Ket2 pu = p * u;
  const Ket2 sv = s * v;
  std::array<cplx, 4> uv{}, puv{};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      uv[static_cast<std::size_t>(2 * a + b)] = u.a[static_cast<std::size_t>(a)] * v.a[static_cast<std::size_t>(b)];
      puv[static_cast<std::size_t>(2 * a + b)] = pu.a[static_cast<std::size_t>(a)] * sv.a[static_cast<std::size_t>(b)];
    }
  const std::array<cplx, 4> got = kron(p, s) * uv;
  for (int k = 0; k < 4; ++k)
    REQUIRE(std::abs(got[static_cast<std::size_t>(k)] - puv[static_cast<std::size_t>(k)]) < 1e-13);
}

TEST_CASE("2x2 determinant, trace, adjoint", "[algebra]") {
  Complex2x2 m;
  m.e[0][0] = cplx(1.0, 2.0);
  m.e[0][1] = cplx(0.0, -1.0);
  m.e[1][0] = cplx(3.0, 0.5);
  m.e[1][1] = cplx(-2.0, 1.0);
  REQUIRE(std::abs(m.det() - (m.e[0][0] * m.e[1][1] - m.e[0][1] * m.e[1][0])) < 1e-15);
  REQUIRE(std::abs(m.trace() - (m.e[0][0] + m.e[1][1])) < 1e-15);
  const Complex2x2 ad = m.adjoint();
  REQUIRE(std::abs(ad.e[0][1] - std::conj(m.e[1][0])) < 1e-15);
}

TEST_CASE("2x2 hermitian eigenvalues ascend and match hand values", "[algebra]") {
  // [[2, i], [-i, 2]] has eigenvalues 1 and 3.
  Complex2x2 m;
  m.e[0][0] = 2.0;
  m.e[0][1] = cplx(0.0, 1.0);
  m.e[1][0] = cplx(0.0, -1.0);
  m.e[1][1] = 2.0;
  const auto ev = hermitian_eigenvalues(m);
  REQUIRE(ev[0] == Catch::Approx(1.0).margin(1e-12));
  REQUIRE(ev[1] == Catch::Approx(3.0).margin(1e-12));
}

TEST_CASE("4x4 hermitian eigenvalues recover a known spectrum", "[algebra]") {
  CounterRng rng(13, 0);
  // Conjugate a fixed diagonal by a random unitary built from two blocks.
  const Complex2x2 u2 = haar_unitary2(rng);
  const Complex2x2 v2 = haar_unitary2(rng);
  const Complex4x4 u = kron(u2, v2);
  Complex4x4 d;
  const double spec[4] = {-1.5, 0.25, 0.25, 2.0};
  for (int k = 0; k < 4; ++k) d.e[k][k] = spec[k];
  const Complex4x4 m = u * d * u.adjoint();
  const auto ev = hermitian_eigenvalues(m);
  for (int k = 0; k < 4; ++k) REQUIRE(ev[static_cast<std::size_t>(k)] == Catch::Approx(spec[k]).margin(1e-10));
}

TEST_CASE("4x4 eigenvalue sum equals the trace on random hermitians", "[algebra]") {
  CounterRng rng(14, 0);
  for (int k = 0; k < 25; ++k) {
    const Complex4x4 m = random_hermitian4(rng);
    const auto ev = hermitian_eigenvalues(m);
    const double sum = ev[0] + ev[1] + ev[2] + ev[3];
    REQUIRE(sum == Catch::Approx(m.trace().real()).margin(1e-10));
    REQUIRE(ev[0] <= ev[1]);
    REQUIRE(ev[1] <= ev[2]);
    REQUIRE(ev[2] <= ev[3]);
  }
}

TEST_CASE("random coherency matrices are positive within tolerance", "[algebra]") {
  CounterRng rng(15, 0);
  for (int k = 0; k < 50; ++k) {
    const Complex4x4 rho = random_coherency4(rng);
    REQUIRE(is_hermitian(rho, 1e-12));
    REQUIRE(rho.trace().real() == Catch::Approx(1.0).margin(1e-12));
    const auto ev = hermitian_eigenvalues(rho);
    REQUIRE(ev[0] > -1e-10);
  }
}

TEST_CASE("4x4 inversion round-trips", "[algebra]") {
  CounterRng rng(16, 0);
  for (int k = 0; k < 100; ++k) {
    Real4x4 m;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) m.e[r][c] = rng.gaussian();
    if (std::abs(det4(m)) < 1e-6) continue;
    const Real4x4 inv = invert4(m);
    REQUIRE(max_abs_diff(m * inv, Real4x4::identity()) < 1e-9);
    REQUIRE(max_abs_diff(inv * m, Real4x4::identity()) < 1e-9);
  }
}

TEST_CASE("singular matrices are rejected", "[algebra]") {
  Real4x4 m = Real4x4::identity();
  m.e[2][2] = 0.0;  // rank 3
  REQUIRE(std::abs(det4(m)) < 1e-15);
  REQUIRE_THROWS_AS(invert4(m), SingularMatrixError);
}

TEST_CASE("determinant matches cofactor expansion on a fixed matrix", "[algebra]") {
  Real4x4 m;
  const double vals[4][4] = {{4, 3, 2, 2}, {0, 1, -3, 3}, {0, -1, 3, 3}, {0, 3, 1, 1}};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) m.e[r][c] = vals[r][c];
  // Expanding along the first column: 4 * det([[1,-3,3],[-1,3,3],[3,1,1]]) = -240.
  REQUIRE(det4(m) == Catch::Approx(-240.0).margin(1e-10));
}

TEST_CASE("ket helpers normalize and project", "[algebra]") {
  Ket2 v{{cplx(3.0, 0.0), cplx(0.0, 4.0)}};
  REQUIRE(v.norm2() == Catch::Approx(25.0));
  const Ket2 n = v.normalized();
  REQUIRE(n.norm2() == Catch::Approx(1.0).margin(1e-14));
  // inner conjugates its first argument.
  const Ket2 u{{cplx(0.0, 1.0), cplx(0.0, 0.0)}};
  REQUIRE(std::abs(inner(u, v) - cplx(0.0, -3.0)) < 1e-14);
  const Complex2x2 p = outer(u, u);
  REQUIRE(is_hermitian(p));
  REQUIRE(std::abs(p.trace() - cplx(1.0)) < 1e-14);
}
