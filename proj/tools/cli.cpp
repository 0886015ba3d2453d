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

#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>

#include "gqfi/closed_forms.hpp"
#include "gqfi/equivalence.hpp"
#include "gqfi/fock.hpp"
#include "gqfi/optimizer.hpp"
#include "io.hpp"

namespace gqfi::cli {

namespace {

using io::json;
using io::ParseError;

struct Options {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> jobs;
  std::string output;
  // closed-form
  std::string label;
  bool list = false;
  // limits
  std::vector<double> n_grid;
  // validate
  std::string panel = "all";
  int draws = 1000;
  double fault_scale = 1.0;
};

/// Signals a failed validation panel after its report has been written.
struct PanelFailed {
  std::string report;
  std::vector<std::string> failed;
};

json load(const Options& o) {
  if (o.config.empty()) throw ParseError("--config PATH is required");
  return io::read_document(o.config);
}

void allow_keys(const json& doc, std::initializer_list<std::string_view> keys) {
  for (const auto& [key, value] : doc.items()) {
    bool known = key == "schema";
    for (auto k : keys) known = known || key == k;
    if (!known) throw ParseError(fmt::format("unknown field '{}' in document", key));
  }
}

const json& member(const json& doc, const char* key) {
  if (!doc.contains(key)) throw ParseError(fmt::format("document lacks \"{}\"", key));
  return doc[key];
}

double member_number(const json& doc, const char* key, double fallback) {
  if (!doc.contains(key)) return fallback;
  if (!doc[key].is_number()) throw ParseError(fmt::format("\"{}\" must be a number", key));
  return doc[key].get<double>();
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

int worker_count(const Options& o) { return std::max(1, o.jobs.value_or(1)); }

OptimizerConfig optimizer_config(const json& doc, const Options& o) {
  OptimizerConfig c;
  if (doc.contains("optimizer")) c = io::optimizer_config_from_json(doc["optimizer"]);
  if (o.seed) c.seed = *o.seed;
  if (o.jobs) c.jobs = worker_count(o);
  return c;
}

ProbeFamily family_for(const json& doc, const ChannelSpec& channel) {
  if (!doc.contains("family")) {
    return channel.modes() == 1 ? ProbeFamily::kOneMode : ProbeFamily::kTwoModeRestricted;
  }
  if (!doc["family"].is_string()) throw ParseError("\"family\" must be a string");
  try {
    return parse_probe_family(doc["family"].get<std::string>());
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

// qfi

std::string cmd_qfi(const Options& o) {
  const json doc = load(o);
  allow_keys(doc, {"probe", "channel"});
  const auto channel = io::channel_from_json(member(doc, "channel"));
  const auto probe = io::probe_from_json(member(doc, "probe"));
  return dump(io::to_json(qfi_unitary(io::build_probe(probe, channel.modes()), channel)));
}

// closed-form

struct ClosedFormArgs {
  io::ProbeConfig probe;
  double chi = 0.0;
  double omega_p = 0.0;
  double omega_s = 0.0;
};

struct ClosedForm {
  std::string_view label;
  bool two_mode;
  std::function<double(const ClosedFormArgs&)> eval;
};

const OneModeProbeParams& one(const ClosedFormArgs& a) { return std::get<OneModeProbeParams>(a.probe); }
const TwoModeProbeParams& two(const ClosedFormArgs& a) { return std::get<TwoModeProbeParams>(a.probe); }

const std::vector<ClosedForm>& closed_forms() {
  using closed::TwoModeChannel;
  static const std::vector<ClosedForm> table = {
      {"eq19", false, [](const auto& a) { return closed::qfi_one_mode_combined(one(a), a.omega_p, a.omega_s, a.chi); }},
      {"eq20", false, [](const auto& a) { return closed::qfi_phase(one(a)); }},
      {"eq21", false, [](const auto& a) { return closed::qfi_squeeze1(one(a), a.chi); }},
      {"eq28", true, [](const auto& a) { return closed::qfi_twomode_squeeze_separable(two(a), a.chi); }},
      {"eq29", true, [](const auto& a) { return closed::twomode_squeeze_separable_max(two(a)); }},
      {"eq30", true, [](const auto& a) { return closed::qfi_twomode_squeeze_bs(two(a), a.chi); }},
      {"eq32", true, [](const auto& a) { return closed::twomode_squeeze_bs_max(two(a)); }},
      {"eq33", true, [](const auto& a) { return closed::twomode_squeeze_bs_max_negative(two(a)); }},
      {"eq34", true,
       [](const auto& a) {
         const auto& p = two(a);
         return closed::twomode_squeeze_bs_advantage(p.r1, p.r2, p.d1_mag, p.d2_mag);
       }},
      {"eq36", true, [](const auto& a) { return closed::qfi_mix_separable(two(a), a.chi); }},
      {"eq37", true, [](const auto& a) { return closed::mix_separable_max(two(a)); }},
      {"eq38", true, [](const auto& a) { return closed::qfi_mix_bs(two(a), a.chi); }},
      {"appC-st", true, [](const auto& a) { return closed::qfi_twomode_squeeze_full(two(a), a.chi); }},
      {"appC-mix", true, [](const auto& a) { return closed::qfi_mix_full(two(a), a.chi); }},
      {"universal-mix", true,
       [](const auto& a) {
         const auto& p = two(a);
         return closed::universal_mix_probe_qfi(p.r1, p.d1_mag, p.d2_mag);
       }},
      {"one-mode-on-st", false,
       [](const auto& a) {
         const auto& p = one(a);
         return closed::qfi_onemode_probe_on_twomode(TwoModeChannel::kTwoModeSqueeze, p.lambda1, p.r, p.d_mag);
       }},
      {"one-mode-on-mix", false,
       [](const auto& a) {
         const auto& p = one(a);
         return closed::qfi_onemode_probe_on_twomode(TwoModeChannel::kMix, p.lambda1, p.r, p.d_mag);
       }},
  };
  return table;
}

std::string cmd_closed_form(const Options& o) {
  if (o.list) {
    std::string out;
    for (const auto& c : closed_forms()) out += fmt::format("{}\t{}\n", c.label, c.two_mode ? "two-mode" : "one-mode");
    return out;
  }
  const json doc = load(o);
  allow_keys(doc, {"label", "probe", "chi", "omega_p", "omega_s"});
  std::string label = o.label;
  if (label.empty()) {
    const auto& l = member(doc, "label");
    if (!l.is_string()) throw ParseError("\"label\" must be a string");
    label = l.get<std::string>();
  }
  const auto it = std::find_if(closed_forms().begin(), closed_forms().end(),
                               [&](const ClosedForm& c) { return c.label == label; });
  if (it == closed_forms().end()) throw ParseError(fmt::format("unknown closed-form label '{}'", label));
  ClosedFormArgs args{io::probe_from_json(member(doc, "probe")), member_number(doc, "chi", 0.0),
                      member_number(doc, "omega_p", 0.0), member_number(doc, "omega_s", 0.0)};
  const bool is_two = std::holds_alternative<TwoModeProbeParams>(args.probe);
  const bool is_one = std::holds_alternative<OneModeProbeParams>(args.probe);
  if ((it->two_mode && !is_two) || (!it->two_mode && !is_one)) {
    throw ParseError(fmt::format("label '{}' needs a {} probe", label, it->two_mode ? "two-mode" : "one-mode"));
  }
  const double value = it->eval(args);
  if (!std::isfinite(value)) throw Error(ErrorKind::kNumericalInstability, "closed form is not finite");
  return dump(json{{"label", label}, {"value", io::round15(value)}});
}

// sweep

template <class F>
void parallel_for(std::size_t count, int jobs, F&& body) {
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) body(i);
  };
  std::vector<std::jthread> pool;
  for (int t = 1; t < std::min<int>(jobs, static_cast<int>(count)); ++t) pool.emplace_back(worker);
  worker();
}

std::string cmd_sweep(const Options& o, std::ostream& err) {
  const auto spec = io::sweep_from_json(load(o));
  std::vector<json> points;
  for (double v : spec.grid) points.push_back(io::sweep_point(spec, v));
  std::vector<io::SweepRow> rows(points.size());
  std::vector<std::string> errors(points.size());
  parallel_for(points.size(), worker_count(o), [&](std::size_t i) {
    rows[i].value = spec.grid[i];
    try {
      const auto channel = io::channel_from_json(points[i]["channel"]);
      const auto probe = io::probe_from_json(points[i]["probe"]);
      rows[i].qfi = qfi_unitary(io::build_probe(probe, channel.modes()), channel);
    } catch (const Error& e) {
      errors[i] = e.what();
    }
  });
  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!errors[i].empty()) err << fmt::format("row {} ({}={}): {}\n", i, spec.parameter, io::format_number(spec.grid[i]), errors[i]);
  }
  return io::sweep_csv(rows);
}

// optimize, scaling

std::string cmd_optimize(const Options& o) {
  const json doc = load(o);
  allow_keys(doc, {"channel", "family", "budget", "optimizer"});
  const auto channel = io::channel_from_json(member(doc, "channel"));
  const auto family = family_for(doc, channel);
  const auto budget = io::budget_from_json(member(doc, "budget"));
  const auto config = optimizer_config(doc, o);
  return dump(io::to_json(optimize_probe(channel, family, budget, config)));
}

std::string cmd_scaling(const Options& o) {
  const json doc = load(o);
  allow_keys(doc, {"channel", "family", "strategy", "n_grid", "optimizer"});
  const auto channel = io::channel_from_json(member(doc, "channel"));
  const auto family = family_for(doc, channel);
  auto strategy = ScalingStrategy::kOptimalSqueezing;
  if (doc.contains("strategy")) {
    const auto& s = doc["strategy"];
    if (s == "optimal-squeezing") {
      strategy = ScalingStrategy::kOptimalSqueezing;
    } else if (s == "coherent-only") {
      strategy = ScalingStrategy::kCoherentOnly;
    } else {
      throw ParseError("\"strategy\" must be \"optimal-squeezing\" or \"coherent-only\"");
    }
  }
  const auto& g = member(doc, "n_grid");
  if (!g.is_array()) throw ParseError("\"n_grid\" must be an array of numbers");
  std::vector<double> grid;
  for (const auto& x : g) {
    if (!x.is_number()) throw ParseError("\"n_grid\" must be an array of numbers");
    grid.push_back(x.get<double>());
  }
  return dump(io::to_json(scaling_exponent(channel, family, strategy, grid, optimizer_config(doc, o))));
}

// ellipse

std::string cmd_ellipse(const Options& o) {
  const json doc = load(o);
  allow_keys(doc, {"probe", "channel", "epsilon"});
  const auto channel = io::channel_from_json(member(doc, "channel"));
  const auto probe = io::build_probe(io::probe_from_json(member(doc, "probe")), channel.modes());
  const double eps = member_number(doc, "epsilon", 0.0);
  const auto w = channel.generator.scaled(eps);
  const auto s = exp_generator(w);
  const auto before = probe.state();
  const auto after = GaussianState::from_moments(s.dense() * before.displacement() + displacement_shift(w),
                                                 s.conjugate(before.covariance()));
  const auto rb = complex_to_real(before);
  const auto ra = complex_to_real(after);
  const int n = channel.modes();
  io::MatrixBlocks blocks{{"sigma_before", rb.covariance},
                          {"sigma_after", ra.covariance},
                          {"mean_before", rb.displacement},
                          {"mean_after", ra.displacement}};
  if (n == 2) {
    blocks.emplace_back("x_before", rb.covariance.topLeftCorner(2, 2));
    blocks.emplace_back("x_after", ra.covariance.topLeftCorner(2, 2));
    blocks.emplace_back("p_before", rb.covariance.bottomRightCorner(2, 2));
    blocks.emplace_back("p_after", ra.covariance.bottomRightCorner(2, 2));
  }
  return io::ellipse_csv(blocks);
}

// limits

std::string cmd_limits(const Options& o) {
  std::vector<double> grid = o.n_grid;
  if (!o.config.empty()) {
    const json doc = load(o);
    allow_keys(doc, {"n"});
    const auto& g = member(doc, "n");
    if (!g.is_array()) throw ParseError("\"n\" must be an array of numbers");
    for (const auto& x : g) {
      if (!x.is_number()) throw ParseError("\"n\" must be an array of numbers");
      grid.push_back(x.get<double>());
    }
  }
  if (grid.empty()) grid = {1.0, 2.0};
  std::string out = "channel,n,heisenberg,shot_noise\n";
  for (const auto& row : closed::limit_table()) {
    for (double n : grid) {
      if (!(n >= 0.0) || !std::isfinite(n)) throw Error(ErrorKind::kInvalidInput, "photon numbers must be >= 0");
      out += fmt::format("{},{},{},{}\n", closed::to_string(row.channel), io::format_number(n),
                         io::format_number(row.heisenberg(n)), io::format_number(row.shot_noise(n)));
    }
  }
  return out;
}

// validate

std::string cmd_validate(const Options& o) {
  if (o.panel != "all" && o.panel != "closed-form" && o.panel != "fock") {
    throw ParseError(fmt::format("unknown panel '{}' (all, closed-form, fock)", o.panel));
  }
  if (o.draws < 1) throw ParseError("--draws must be positive");
  struct Check {
    std::string name;
    double deviation;
    double tol;
    bool pass;
  };
  std::vector<Check> checks;
  if (o.panel != "fock") {
    constexpr double kTol = 1e-9;
    for (const auto& r : run_equivalence_panel(o.draws, o.seed.value_or(20260101), kTol, o.fault_scale)) {
      checks.push_back({"closed-form/" + r.name, r.max_deviation, kTol, r.pass});
    }
  }
  if (o.panel != "closed-form") {
    constexpr double kTol = 1e-3;
    for (const auto& r : run_fock_panel(kTol, {}, o.fault_scale)) {
      checks.push_back({"fock/" + r.name, r.deviation, kTol, r.pass});
    }
  }
  std::string out = fmt::format("{:<44} {:>13} {:>10}  {}\n", "check", "max deviation", "tolerance", "result");
  std::vector<std::string> failed;
  for (const auto& c : checks) {
    if (!c.pass) failed.push_back(c.name);
    out += fmt::format("{:<44} {:>13.3e} {:>10.0e}  {}\n", c.name, c.deviation, c.tol, c.pass ? "pass" : "FAIL");
  }
  out += fmt::format("{} checks, {} failed\n", checks.size(), failed.size());
  if (!failed.empty()) throw PanelFailed{out, failed};
  return out;
}

void emit(const Options& o, const std::string& text, std::ostream& out) {
  if (o.output.empty() || o.output == "-") {
    out << text;
    return;
  }
  std::ofstream file(o.output, std::ios::binary);
  if (!file) throw ParseError(fmt::format("cannot write '{}'", o.output));
  file << text;
}

int exit_code_for(const Error& e, bool optimizer) {
  if (optimizer && (e.kind() == ErrorKind::kDegenerateBudget || e.kind() == ErrorKind::kInvalidFamily)) {
    return kDegenerateOptimizerInput;
  }
  return kPhysicsError;
}

}  // namespace

std::vector<std::string> closed_form_labels() {
  std::vector<std::string> out;
  for (const auto& c : closed_forms()) out.emplace_back(c.label);
  return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum Fisher information of Gaussian probes under Gaussian unitary channels", "gqfi"};
  app.require_subcommand(1);
  Options o;
  auto add_common = [&](CLI::App* sub, bool config) {
    if (config) sub->add_option("--config", o.config, "JSON configuration document");
    sub->add_option("--output", o.output, "Write results to PATH instead of standard output");
    sub->add_option("--seed", o.seed, "Random seed");
    sub->add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
  };
  auto* qfi = app.add_subcommand("qfi", "QFI breakdown of a probe under a channel");
  add_common(qfi, true);
  auto* closed_form = app.add_subcommand("closed-form", "Evaluate a closed-form QFI expression by label");
  add_common(closed_form, true);
  closed_form->add_option("--label", o.label, "Expression label (overrides the document)");
  closed_form->add_flag("--list", o.list, "List labels");
  auto* sweep = app.add_subcommand("sweep", "QFI over a grid of one parameter, as CSV");
  add_common(sweep, true);
  auto* optimize = app.add_subcommand("optimize", "Search for the best probe at fixed mean energy");
  add_common(optimize, true);
  auto* scaling = app.add_subcommand("scaling", "Fit the QFI exponent in the photon number");
  add_common(scaling, true);
  auto* ellipse = app.add_subcommand("ellipse", "Real-form covariances before and after the channel, as CSV");
  add_common(ellipse, true);
  auto* limits = app.add_subcommand("limits", "Heisenberg and shot-noise limits for the four channels, as CSV");
  add_common(limits, true);
  limits->add_option("--n", o.n_grid, "Mean photon numbers");
  auto* validate = app.add_subcommand("validate", "Cross-check panels; nonzero exit on any failure");
  add_common(validate, false);
  validate->add_option("--panel", o.panel, "all, closed-form or fock");
  validate->add_option("--draws", o.draws, "Random draws per closed-form family");
  validate->add_option("--fault-scale", o.fault_scale, "Multiply engine values (fault injection)");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "error: " << e.what() << "\n";
    return kParseFailure;
  }

  const bool optimizer = optimize->parsed() || scaling->parsed();
  try {
    std::string text;
    if (qfi->parsed()) text = cmd_qfi(o);
    if (closed_form->parsed()) text = cmd_closed_form(o);
    if (sweep->parsed()) text = cmd_sweep(o, err);
    if (optimize->parsed()) text = cmd_optimize(o);
    if (scaling->parsed()) text = cmd_scaling(o);
    if (ellipse->parsed()) text = cmd_ellipse(o);
    if (limits->parsed()) text = cmd_limits(o);
    if (validate->parsed()) text = cmd_validate(o);
    emit(o, text, out);
    return kOk;
  } catch (const PanelFailed& f) {
    emit(o, f.report, out);
    err << "validation failed: " << fmt::format("{}", fmt::join(f.failed, ", ")) << "\n";
    return kValidationFailed;
  } catch (const ParseError& e) {
    err << "config error: " << e.what() << "\n";
    return kParseFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e, optimizer);
  }
}

}  // namespace gqfi::cli
