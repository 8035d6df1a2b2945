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

// Convenience umbrella: pulls in the whole library.

#include "radpol/acceptance.hpp"
#include "radpol/algebra.hpp"
#include "radpol/bench.hpp"
#include "radpol/config.hpp"
#include "radpol/elements.hpp"
#include "radpol/errors.hpp"
#include "radpol/fields.hpp"
#include "radpol/polarimetry.hpp"
#include "radpol/rng.hpp"
#include "radpol/runner.hpp"
#include "radpol/states.hpp"
