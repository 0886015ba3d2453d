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

#include "io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <tuple>

#include <fmt/format.h>

namespace gqfi::io {

namespace {

std::string where(std::string_view what, std::string_view key) { return fmt::format("{}.{}", what, key); }

void require_object(const json& j, std::string_view what) {
  if (!j.is_object()) throw ParseError(fmt::format("{} must be a JSON object", what));
}

void check_keys(const json& j, std::initializer_list<std::string_view> allowed, std::string_view what) {
  require_object(j, what);
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (auto a : allowed) known = known || key == a;
    if (!known) throw ParseError(fmt::format("unknown field '{}' in {}", key, what));
  }
}

const json& field(const json& j, std::string_view key, std::string_view what) {
  const auto it = j.find(std::string(key));
  if (it == j.end()) throw ParseError(fmt::format("missing field {}", where(what, key)));
  return *it;
}

double as_number(const json& v, std::string_view what) {
  if (!v.is_number()) throw ParseError(fmt::format("{} must be a number", what));
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ParseError(fmt::format("{} must be finite", what));
  return x;
}

double number(const json& j, std::string_view key, double fallback, std::string_view what) {
  const auto it = j.find(std::string(key));
  return it == j.end() ? fallback : as_number(*it, where(what, key));
}

long long integer(const json& j, std::string_view key, long long fallback, std::string_view what) {
  const auto it = j.find(std::string(key));
  if (it == j.end()) return fallback;
  if (!it->is_number_integer()) throw ParseError(fmt::format("{} must be an integer", where(what, key)));
  return it->get<long long>();
}

std::string text(const json& j, std::string_view key, std::string_view what) {
  const auto& v = field(j, key, what);
  if (!v.is_string()) throw ParseError(fmt::format("{} must be a string", where(what, key)));
  return v.get<std::string>();
}

std::vector<double> numbers(const json& v, std::string_view what) {
  if (!v.is_array()) throw ParseError(fmt::format("{} must be an array of numbers", what));
  std::vector<double> out;
  for (const auto& x : v) out.push_back(as_number(x, what));
  return out;
}

json real_array(const std::vector<double>& v) {
  json out = json::array();
  for (double x : v) out.push_back(round15(x));
  return out;
}

json complex_value(cplx z) { return json::array({round15(z.real()), round15(z.imag())}); }

cplx complex_from(const json& v, std::string_view what) {
  if (!v.is_array() || v.size() != 2) throw ParseError(fmt::format("{} entries must be [re, im] pairs", what));
  return {as_number(v[0], what), as_number(v[1], what)};
}

json complex_vector(const CVec& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_value(v(i)));
  return out;
}

CVec complex_vector_from(const json& v, int n, std::string_view what) {
  if (!v.is_array() || static_cast<int>(v.size()) != n) {
    throw ParseError(fmt::format("{} must hold {} [re, im] pairs", what, n));
  }
  CVec out(n);
  for (int i = 0; i < n; ++i) out(i) = complex_from(v[i], what);
  return out;
}

json complex_matrix(const CMat& m) {
  json out = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index k = 0; k < m.cols(); ++k) out.push_back(complex_value(m(i, k)));
  return out;
}

CMat complex_matrix_from(const json& v, int n, std::string_view what) {
  if (!v.is_array() || static_cast<int>(v.size()) != n * n) {
    throw ParseError(fmt::format("{} must hold {} row-major [re, im] pairs", what, n * n));
  }
  CMat out(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) out(i, k) = complex_from(v[static_cast<std::size_t>(i * n + k)], what);
  return out;
}

int mode_count(const json& j, std::string_view what) {
  const long long n = integer(j, "modes", -1, what);
  if (n < 1 || n > 64) throw ParseError(fmt::format("{}.modes must be a positive integer", what));
  return static_cast<int>(n);
}

template <class F>
auto translate(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

json one_mode_json(const OneModeProbeParams& p) {
  return {{"type", "one-mode"},         {"lambda1", round15(p.lambda1)}, {"r", round15(p.r)},
          {"theta", round15(p.theta)},  {"d_mag", round15(p.d_mag)},     {"phi_d", round15(p.phi_d)}};
}

json two_mode_json(const TwoModeProbeParams& p) {
  return {{"type", "two-mode"},           {"lambda1", round15(p.lambda1)}, {"lambda2", round15(p.lambda2)},
          {"r1", round15(p.r1)},          {"r2", round15(p.r2)},           {"theta", round15(p.theta)},
          {"psi", round15(p.psi)},        {"phi1", round15(p.phi1)},       {"phi2", round15(p.phi2)},
          {"d1_mag", round15(p.d1_mag)},  {"d2_mag", round15(p.d2_mag)},   {"phi_d1", round15(p.phi_d1)},
          {"phi_d2", round15(p.phi_d2)}};
}

std::vector<std::string_view> split_line(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<std::string_view> lines_of(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) out.push_back(line);
    start = end + 1;
  }
  return out;
}

double parse_csv_number(std::string_view s) {
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || ptr != s.data() + s.size()) throw ParseError(fmt::format("bad CSV number '{}'", s));
  return x;
}

int parse_csv_index(std::string_view s) {
  int x = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || ptr != s.data() + s.size() || x < 0) throw ParseError(fmt::format("bad CSV index '{}'", s));
  return x;
}

}  // namespace

double round15(double x) {
  if (!std::isfinite(x)) return x;
  return std::stod(format_number(x));
}

std::string format_number(double x) { return fmt::format("{:.15g}", x); }

json parse_document(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(fmt::format("invalid JSON: {}", e.what()));
  }
  require_object(doc, "document");
  const auto it = doc.find("schema");
  if (it == doc.end()) throw ParseError("document lacks a \"schema\" field");
  if (!it->is_number_integer() || it->get<long long>() != kSchemaVersion) {
    throw ParseError(fmt::format("unsupported schema {} (expected {})", it->dump(), kSchemaVersion));
  }
  return doc;
}

json read_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(fmt::format("cannot read '{}'", path));
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str());
}

json to_json(const GaussianState& s) {
  return {{"modes", s.modes()},
          {"d_tilde", complex_vector(s.d_tilde())},
          {"sigma_X", complex_matrix(s.x())},
          {"sigma_Y", complex_matrix(s.y())}};
}

GaussianState state_from_json(const json& j) {
  constexpr std::string_view what = "state";
  check_keys(j, {"type", "modes", "d_tilde", "sigma_X", "sigma_Y"}, what);
  const int n = mode_count(j, what);
  return translate([&] {
    return GaussianState(complex_vector_from(field(j, "d_tilde", what), n, "state.d_tilde"),
                         complex_matrix_from(field(j, "sigma_X", what), n, "state.sigma_X"),
                         complex_matrix_from(field(j, "sigma_Y", what), n, "state.sigma_Y"));
  });
}

json to_json(const GeneratorW& w) {
  return {{"modes", w.modes()},
          {"X", complex_matrix(w.x())},
          {"Y", complex_matrix(w.y())},
          {"gamma", complex_vector(w.gamma_tilde())}};
}

GeneratorW generator_from_json(const json& j) {
  constexpr std::string_view what = "custom_W";
  check_keys(j, {"modes", "X", "Y", "gamma"}, what);
  const int n = mode_count(j, what);
  const CVec gamma = j.contains("gamma") ? complex_vector_from(j["gamma"], n, "custom_W.gamma") : CVec(CVec::Zero(n));
  return translate([&] {
    return GeneratorW(complex_matrix_from(field(j, "X", what), n, "custom_W.X"),
                      complex_matrix_from(field(j, "Y", what), n, "custom_W.Y"), gamma);
  });
}

json to_json(const ChannelSpec& c) {
  json out{{"kind", std::string(to_string(c.kind))},
           {"chi", round15(c.chi)},
           {"omega_p", round15(c.omega_p)},
           {"omega_s", round15(c.omega_s)}};
  if (c.kind == ChannelKind::kSqueezeMode1 && c.modes() != 1) out["modes"] = c.modes();
  if (c.kind == ChannelKind::kCustom) out["custom_W"] = to_json(c.generator);
  return out;
}

ChannelSpec channel_from_json(const json& j) {
  constexpr std::string_view what = "channel";
  check_keys(j, {"kind", "chi", "omega_p", "omega_s", "modes", "custom_W"}, what);
  const auto kind = translate([&] { return parse_channel_kind(text(j, "kind", what)); });
  const double chi = number(j, "chi", 0.0, what);
  const long long modes = integer(j, "modes", 1, what);
  if (j.contains("modes") && kind != ChannelKind::kSqueezeMode1) {
    throw ParseError("channel.modes applies only to squeeze1-mode1");
  }
  if (modes != 1 && modes != 2) throw ParseError("channel.modes must be 1 or 2");
  if (j.contains("custom_W") != (kind == ChannelKind::kCustom)) {
    throw ParseError("channel.custom_W is required for, and only for, kind \"custom\"");
  }
  switch (kind) {
    case ChannelKind::kPhase: return phase_channel();
    case ChannelKind::kSqueezeMode1: return squeeze_channel(chi, static_cast<int>(modes), 0);
    case ChannelKind::kSqueezeMode2: return squeeze_channel(chi, 2, 1);
    case ChannelKind::kBeamsplit: return mix_channel(chi);
    case ChannelKind::kTwoModeSqueeze: return twomode_squeeze_channel(chi);
    case ChannelKind::kCombinedOneMode:
      return combined_channel(number(j, "omega_p", 0.0, what), number(j, "omega_s", 0.0, what), chi);
    case ChannelKind::kCustom: return custom_channel(generator_from_json(j["custom_W"]));
  }
  throw ParseError("unhandled channel kind");
}

json to_json(const ProbeConfig& p) {
  if (const auto* one = std::get_if<OneModeProbeParams>(&p)) return one_mode_json(*one);
  if (const auto* two = std::get_if<TwoModeProbeParams>(&p)) return two_mode_json(*two);
  json out{{"type", "state"}};
  const json state = to_json(std::get<GaussianState>(p));
  for (const auto& [key, value] : state.items()) out[key] = value;
  return out;
}

ProbeConfig probe_from_json(const json& j) {
  constexpr std::string_view what = "probe";
  require_object(j, what);
  const std::string type = text(j, "type", what);
  if (type == "one-mode") {
    check_keys(j, {"type", "lambda1", "r", "theta", "d_mag", "phi_d"}, what);
    return OneModeProbeParams{number(j, "lambda1", 1.0, what), number(j, "r", 0.0, what),
                              number(j, "theta", 0.0, what), number(j, "d_mag", 0.0, what),
                              number(j, "phi_d", 0.0, what)};
  }
  if (type == "two-mode") {
    check_keys(j,
               {"type", "lambda1", "lambda2", "r1", "r2", "theta", "psi", "phi1", "phi2", "d1_mag", "d2_mag",
                "phi_d1", "phi_d2"},
               what);
    TwoModeProbeParams p;
    p.lambda1 = number(j, "lambda1", 1.0, what);
    p.lambda2 = number(j, "lambda2", 1.0, what);
    p.r1 = number(j, "r1", 0.0, what);
    p.r2 = number(j, "r2", 0.0, what);
    p.theta = number(j, "theta", 0.0, what);
    p.psi = number(j, "psi", 0.0, what);
    p.phi1 = number(j, "phi1", 0.0, what);
    p.phi2 = number(j, "phi2", 0.0, what);
    p.d1_mag = number(j, "d1_mag", 0.0, what);
    p.d2_mag = number(j, "d2_mag", 0.0, what);
    p.phi_d1 = number(j, "phi_d1", 0.0, what);
    p.phi_d2 = number(j, "phi_d2", 0.0, what);
    return p;
  }
  if (type == "state") return state_from_json(j);
  throw ParseError(fmt::format("unknown probe type '{}' (one-mode, two-mode, state)", type));
}

ProbeState build_probe(const ProbeConfig& p, int channel_modes) {
  if (const auto* one = std::get_if<OneModeProbeParams>(&p)) {
    if (channel_modes == 1) return make_one_mode_probe(*one);
    if (channel_modes == 2) return make_one_mode_probe_embedded(*one);
    throw Error(ErrorKind::kInvalidInput, fmt::format("one-mode probe on a {}-mode channel", channel_modes));
  }
  if (const auto* two = std::get_if<TwoModeProbeParams>(&p)) {
    if (channel_modes != 2) {
      throw Error(ErrorKind::kInvalidInput, fmt::format("two-mode probe on a {}-mode channel", channel_modes));
    }
    return make_two_mode_probe(*two);
  }
  return probe_from_state(std::get<GaussianState>(p));
}

json to_json(const QfiBreakdown& b) {
  return {{"r_term", round15(b.r_term)},
          {"q_term", round15(b.q_term)},
          {"eigen_term", round15(b.eigen_term)},
          {"disp_term", round15(b.disp_term)},
          {"total", round15(b.total)}};
}

QfiBreakdown breakdown_from_json(const json& j) {
  constexpr std::string_view what = "qfi";
  check_keys(j, {"r_term", "q_term", "eigen_term", "disp_term", "total"}, what);
  QfiBreakdown b;
  b.r_term = as_number(field(j, "r_term", what), "qfi.r_term");
  b.q_term = as_number(field(j, "q_term", what), "qfi.q_term");
  b.eigen_term = as_number(field(j, "eigen_term", what), "qfi.eigen_term");
  b.disp_term = as_number(field(j, "disp_term", what), "qfi.disp_term");
  b.total = as_number(field(j, "total", what), "qfi.total");
  return b;
}

json to_json(const OptimizerConfig& c) {
  return {{"restarts", c.restarts},
          {"max_iter", c.max_iter},
          {"seed", c.seed},
          {"tol", round15(c.tol)},
          {"jobs", c.jobs},
          {"warm_starts", c.warm_starts}};
}

OptimizerConfig optimizer_config_from_json(const json& j, OptimizerConfig base) {
  constexpr std::string_view what = "optimizer";
  check_keys(j, {"restarts", "max_iter", "seed", "tol", "jobs", "warm_starts"}, what);
  base.restarts = static_cast<int>(integer(j, "restarts", base.restarts, what));
  base.max_iter = static_cast<int>(integer(j, "max_iter", base.max_iter, what));
  base.jobs = static_cast<int>(integer(j, "jobs", base.jobs, what));
  base.tol = number(j, "tol", base.tol, what);
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw ParseError("optimizer.seed must be a non-negative integer");
    base.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("warm_starts")) {
    if (!j["warm_starts"].is_boolean()) throw ParseError("optimizer.warm_starts must be true or false");
    base.warm_starts = j["warm_starts"].get<bool>();
  }
  if (base.restarts < 1 || base.max_iter < 1 || base.jobs < 1 || !(base.tol > 0.0)) {
    throw ParseError("optimizer needs restarts, max_iter, jobs >= 1 and tol > 0");
  }
  return base;
}

json to_json(const EnergyBudget& b) {
  return {{"n", round15(b.n_total)}, {"strategy", std::string(to_string(b.strategy))}};
}

EnergyBudget budget_from_json(const json& j) {
  constexpr std::string_view what = "budget";
  check_keys(j, {"n", "strategy"}, what);
  EnergyBudget b;
  b.n_total = as_number(field(j, "n", what), "budget.n");
  if (j.contains("strategy")) b.strategy = translate([&] { return parse_energy_strategy(text(j, "strategy", what)); });
  return b;
}

json to_json(const OptimizationResult& r) {
  json split = json::array();
  for (const auto& s : r.best.split) {
    split.push_back({{"n", round15(s.n)}, {"f_d", round15(s.f_d)}, {"f_th", round15(s.f_th)}, {"f_sq", round15(s.f_sq)}});
  }
  const bool one = r.best.family == ProbeFamily::kOneMode;
  return {{"family", std::string(to_string(r.best.family))},
          {"modes", r.best.modes},
          {"best_qfi", round15(r.best_qfi)},
          {"best_params", real_array(r.best_params)},
          {"probe", one ? one_mode_json(r.best.one) : two_mode_json(r.best.two)},
          {"split", split},
          {"restarts", r.restarts},
          {"aborted", r.aborted},
          {"converged", r.converged}};
}

OptimizationResult result_from_json(const json& j) {
  constexpr std::string_view what = "result";
  check_keys(j, {"family", "modes", "best_qfi", "best_params", "probe", "split", "restarts", "aborted", "converged"},
             what);
  OptimizationResult r;
  r.best.family = translate([&] { return parse_probe_family(text(j, "family", what)); });
  r.best.modes = static_cast<int>(integer(j, "modes", 1, what));
  r.best_qfi = as_number(field(j, "best_qfi", what), "result.best_qfi");
  r.best_params = numbers(field(j, "best_params", what), "result.best_params");
  const auto probe = probe_from_json(field(j, "probe", what));
  if (const auto* one = std::get_if<OneModeProbeParams>(&probe)) {
    r.best.one = *one;
  } else if (const auto* two = std::get_if<TwoModeProbeParams>(&probe)) {
    r.best.two = *two;
  } else {
    throw ParseError("result.probe must be a parameter set");
  }
  const auto& split = field(j, "split", what);
  if (!split.is_array()) throw ParseError("result.split must be an array");
  for (const auto& s : split) {
    check_keys(s, {"n", "f_d", "f_th", "f_sq"}, "result.split");
    r.best.split.push_back({as_number(field(s, "n", "split"), "split.n"), as_number(field(s, "f_d", "split"), "split.f_d"),
                            as_number(field(s, "f_th", "split"), "split.f_th"),
                            as_number(field(s, "f_sq", "split"), "split.f_sq")});
  }
  r.restarts = static_cast<int>(integer(j, "restarts", 0, what));
  r.aborted = static_cast<int>(integer(j, "aborted", 0, what));
  const auto& conv = field(j, "converged", what);
  if (!conv.is_boolean()) throw ParseError("result.converged must be true or false");
  r.converged = conv.get<bool>();
  return r;
}

json to_json(const ScalingFit& f) {
  return {{"exponent", round15(f.exponent)},
          {"prefactor", round15(f.prefactor)},
          {"n", real_array(f.n)},
          {"qfi", real_array(f.qfi)}};
}

ScalingFit scaling_from_json(const json& j) {
  constexpr std::string_view what = "scaling";
  check_keys(j, {"exponent", "prefactor", "n", "qfi"}, what);
  return {as_number(field(j, "exponent", what), "scaling.exponent"),
          as_number(field(j, "prefactor", what), "scaling.prefactor"), numbers(field(j, "n", what), "scaling.n"),
          numbers(field(j, "qfi", what), "scaling.qfi")};
}

json to_json(const SweepSpec& s) {
  return {{"schema", kSchemaVersion}, {"parameter", s.parameter}, {"grid", real_array(s.grid)}, {"base", s.base}};
}

SweepSpec sweep_from_json(const json& j) {
  constexpr std::string_view what = "sweep";
  check_keys(j, {"schema", "parameter", "grid", "base"}, what);
  SweepSpec s{text(j, "parameter", what), numbers(field(j, "grid", what), "sweep.grid"), field(j, "base", what)};
  if (s.grid.empty()) throw ParseError("sweep.grid is empty");
  check_keys(s.base, {"probe", "channel"}, "sweep.base");
  sweep_point(s, s.grid.front());
  return s;
}

json sweep_point(const SweepSpec& s, double value) {
  json doc = s.base;
  json* node = &doc;
  std::string_view path = s.parameter;
  for (;;) {
    const auto dot = path.find('.');
    const std::string key(path.substr(0, dot));
    if (key.empty()) throw ParseError(fmt::format("bad sweep parameter '{}'", s.parameter));
    if (dot == std::string_view::npos) {
      if (!node->is_object()) throw ParseError(fmt::format("sweep parameter '{}' has no parent object", s.parameter));
      (*node)[key] = value;
      break;
    }
    if (!node->is_object() || !node->contains(key)) {
      throw ParseError(fmt::format("sweep parameter '{}' does not name a field of the base", s.parameter));
    }
    node = &(*node)[key];
    path.remove_prefix(dot + 1);
  }
  // Unknown leaf names surface here as parse errors.
  probe_from_json(field(doc, "probe", "sweep.base"));
  channel_from_json(field(doc, "channel", "sweep.base"));
  return doc;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out(kSweepHeader);
  out += '\n';
  for (const auto& row : rows) {
    out += format_number(row.value);
    if (row.qfi) {
      for (double x : {row.qfi->r_term, row.qfi->q_term, row.qfi->eigen_term, row.qfi->disp_term, row.qfi->total}) {
        out += ',' + format_number(x);
      }
      out += ",ok\n";
    } else {
      out += ",,,,,,error\n";
    }
  }
  return out;
}

std::vector<SweepRow> parse_sweep_csv(std::string_view text) {
  const auto lines = lines_of(text);
  if (lines.empty() || lines.front() != kSweepHeader) throw ParseError("sweep CSV lacks its header");
  std::vector<SweepRow> rows;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = split_line(lines[i]);
    if (f.size() != 7) throw ParseError(fmt::format("sweep CSV line {} has {} fields", i + 1, f.size()));
    SweepRow row{parse_csv_number(f[0]), std::nullopt};
    if (f[6] == "ok") {
      QfiBreakdown b;
      b.r_term = parse_csv_number(f[1]);
      b.q_term = parse_csv_number(f[2]);
      b.eigen_term = parse_csv_number(f[3]);
      b.disp_term = parse_csv_number(f[4]);
      b.total = parse_csv_number(f[5]);
      row.qfi = b;
    } else if (f[6] != "error") {
      throw ParseError(fmt::format("sweep CSV line {} has status '{}'", i + 1, f[6]));
    }
    rows.push_back(row);
  }
  return rows;
}

std::string ellipse_csv(const MatrixBlocks& blocks) {
  std::string out(kEllipseHeader);
  out += '\n';
  for (const auto& [name, m] : blocks) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      for (Eigen::Index k = 0; k < m.cols(); ++k) out += fmt::format("{},{},{},{}\n", name, i, k, format_number(m(i, k)));
    }
  }
  return out;
}

MatrixBlocks parse_ellipse_csv(std::string_view text) {
  const auto lines = lines_of(text);
  if (lines.empty() || lines.front() != kEllipseHeader) throw ParseError("ellipse CSV lacks its header");
  std::vector<std::pair<std::string, std::vector<std::tuple<int, int, double>>>> raw;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto f = split_line(lines[i]);
    if (f.size() != 4) throw ParseError(fmt::format("ellipse CSV line {} has {} fields", i + 1, f.size()));
    if (raw.empty() || raw.back().first != f[0]) raw.emplace_back(std::string(f[0]), std::vector<std::tuple<int, int, double>>{});
    raw.back().second.emplace_back(parse_csv_index(f[1]), parse_csv_index(f[2]), parse_csv_number(f[3]));
  }
  MatrixBlocks out;
  for (const auto& [name, entries] : raw) {
    int rows = 0;
    int cols = 0;
    for (const auto& [r, c, v] : entries) {
      rows = std::max(rows, r + 1);
      cols = std::max(cols, c + 1);
    }
    if (static_cast<std::size_t>(rows * cols) != entries.size()) {
      throw ParseError(fmt::format("ellipse block '{}' is not a full matrix", name));
    }
    RMat m(rows, cols);
    for (const auto& [r, c, v] : entries) m(r, c) = v;
    out.emplace_back(name, m);
  }
  return out;
}

}  // namespace gqfi::io
