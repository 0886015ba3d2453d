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

/**
 * @file
 * JSON and CSV interchange for the command-line tool. Every input document
 * carries "schema": 1. Complex numbers are [re, im] pairs and matrices are
 * row-major flat arrays of them. Numbers are written with 15 significant digits.
 */
#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "gqfi/channels.hpp"
#include "gqfi/gaussian_core.hpp"
#include "gqfi/optimizer.hpp"
#include "gqfi/probe_params.hpp"
#include "gqfi/qfi.hpp"

namespace gqfi::io {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// Malformed, incomplete or unknown configuration content.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// x rounded to 15 significant digits, so it prints with at most 15.
double round15(double x);
std::string format_number(double x);

/// Parses a document and checks "schema" == 1.
json parse_document(std::string_view text);
json read_document(const std::string& path);

json to_json(const GaussianState& s);
GaussianState state_from_json(const json& j);

json to_json(const GeneratorW& w);
GeneratorW generator_from_json(const json& j);

/// {"kind", "chi", "omega_p", "omega_s"}, plus "modes" for a one-mode
/// squeezer on two modes and "custom_W" for custom generators.
json to_json(const ChannelSpec& c);
ChannelSpec channel_from_json(const json& j);

/// Probe given by its preparation parameters or directly as a state.
using ProbeConfig = std::variant<OneModeProbeParams, TwoModeProbeParams, GaussianState>;

json to_json(const ProbeConfig& p);
ProbeConfig probe_from_json(const json& j);
/// A one-mode parameter set on a two-mode channel leaves mode 2 in vacuum.
ProbeState build_probe(const ProbeConfig& p, int channel_modes);

json to_json(const QfiBreakdown& b);
QfiBreakdown breakdown_from_json(const json& j);

json to_json(const OptimizerConfig& c);
/// Fields absent from `j` keep the values in `base`.
OptimizerConfig optimizer_config_from_json(const json& j, OptimizerConfig base = {});

json to_json(const EnergyBudget& b);
EnergyBudget budget_from_json(const json& j);

/// Everything but the per-iteration trace and log.
json to_json(const OptimizationResult& r);
OptimizationResult result_from_json(const json& j);

json to_json(const ScalingFit& f);
ScalingFit scaling_from_json(const json& j);

struct SweepSpec {
  /// Dotted path into `base`, e.g. "probe.lambda1" or "channel.chi".
  std::string parameter;
  std::vector<double> grid;
  /// {"probe": ..., "channel": ...}
  json base;
};

json to_json(const SweepSpec& s);
SweepSpec sweep_from_json(const json& j);
/// `base` with the parameter set to `value`.
json sweep_point(const SweepSpec& s, double value);

struct SweepRow {
  double value = 0.0;
  std::optional<QfiBreakdown> qfi;  // empty for rows marked "error"
};

inline constexpr std::string_view kSweepHeader = "value,r_term,q_term,eigen_term,disp_term,total,status";

std::string sweep_csv(const std::vector<SweepRow>& rows);
std::vector<SweepRow> parse_sweep_csv(std::string_view text);

inline constexpr std::string_view kEllipseHeader = "block,row,col,value";

/// Named real matrices written one entry per line.
using MatrixBlocks = std::vector<std::pair<std::string, RMat>>;

std::string ellipse_csv(const MatrixBlocks& blocks);
MatrixBlocks parse_ellipse_csv(std::string_view text);

}  // namespace gqfi::io
