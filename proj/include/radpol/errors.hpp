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

#include <stdexcept>
#include <string>

namespace radpol {

// Matrix inversion hit a determinant below the singularity threshold
// (degenerate probe set, ill-posed reconstruction input).
struct SingularMatrixError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Least-squares normal equations are rank deficient: the probe set does
// not span Stokes space.
struct RankDeficientError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Detector readings carry power bookkeeping that does not match the known
// splitter layout (non-positive or mismatched power scale).
struct InconsistentScaleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Configuration text is not valid JSON.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Configuration parsed but violates the schema (bad weights, negative
// noise parameters, unknown element kind, ...).
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Filesystem failure while reading or writing result artifacts.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace radpol
