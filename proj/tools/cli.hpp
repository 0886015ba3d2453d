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

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace gqfi::cli {

enum ExitCode : int {
  kOk = 0,
  kValidationFailed = 1,
  kParseFailure = 2,
  kPhysicsError = 3,
  kDegenerateOptimizerInput = 4,
};

/// Labels accepted by the closed-form subcommand.
std::vector<std::string> closed_form_labels();

/// Runs the tool; args[0] is the program name. Results go to `out` unless
/// --output names a file, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gqfi::cli
