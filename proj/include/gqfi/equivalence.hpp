// Copyright 2026 The gqfi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gqfi {

struct EquivalenceRow {
  std::string name;
  int draws = 0;
  double max_deviation = 0.0;
  bool pass = false;
};

/// Closed-form families checked against qfi_unitary on random probes:
/// combined-one-mode, phase, squeeze, st-separable, st-bs, st-full,
/// mix-separable, mix-bs, mix-full, mix-universal, one-mode-on-st, one-mode-on-mix.
std::vector<std::string> equivalence_families();

/// Worst relative deviation |engine - closed| / max(1, |closed|) per family
/// over `draws` seeded draws. engine_scale multiplies the engine value (fault injection).
std::vector<EquivalenceRow> run_equivalence_panel(int draws, std::uint64_t seed, double tol = 1e-9,
                                                  double engine_scale = 1.0);

}  // namespace gqfi
