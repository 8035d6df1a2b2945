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

// Converters between library matrices and the plain arrays the reference
// implementations in oracles.hpp work on.

#include "oracles.hpp"
#include "radpol/algebra.hpp"

inline oracle::M2 to_oracle(const radpol::Complex2x2& m) {
  oracle::M2 out{};
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) out[r][c] = m.e[r][c];
  return out;
}

inline oracle::M4 to_oracle(const radpol::Complex4x4& m) {
  oracle::M4 out{};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out[r][c] = m.e[r][c];
  return out;
}

inline oracle::R4 to_oracle(const radpol::Real4x4& m) {
  oracle::R4 out{};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out[r][c] = m.e[r][c];
  return out;
}

inline radpol::Complex2x2 from_oracle(const oracle::M2& m) {
  radpol::Complex2x2 out;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) out.e[r][c] = m[r][c];
  return out;
}

inline radpol::Real4x4 from_oracle(const oracle::R4& m) {
  radpol::Real4x4 out;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out.e[r][c] = m[r][c];
  return out;
}
