// Copyright 2026 The beamq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "beamq/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <limits>
#include <map>
#include <type_traits>
#include <sstream>
#include <string_view>

#include <nlohmann/json.hpp>
#include <toml.hpp>

namespace beamq {

namespace {

using nlohmann::json;

void append_double(std::string& out, double v) {
  if (!std::isfinite(v)) {
    out += "null";
    return;
  }
  char buf[512];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed);
  out.append(buf, res.ptr);
}

void dump_plain(const json& j, int indent, int depth, std::string& out) {
  const auto newline = [&](int d) {
    if (indent < 0) return;
    out += '\n';
    out.append(static_cast<std::size_t>(indent * d), ' ');
  };
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += '{';
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ',';
        first = false;
        newline(depth + 1);
        out += json(it.key()).dump();
        out += indent < 0 ? ":" : ": ";
        dump_plain(it.value(), indent, depth + 1, out);
      }
      newline(depth);
      out += '}';
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += '[';
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += (indent < 0 || e.is_structured()) ? "," : ", ";
        first = false;
        // Arrays of scalars stay on one line.
        if (e.is_structured()) newline(depth + 1);
        dump_plain(e, indent, depth + 1, out);
      }
      if (j.back().is_structured()) newline(depth);
      out += ']';
      return;
    }
    case json::value_t::number_float:
      append_double(out, j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

std::string plain(const json& j) {
  std::string out;
  dump_plain(j, 2, 0, out);
  out += '\n';
  return out;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid JSON: ") + e.what());
  }
}

template <typename T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) throw ConfigError(std::string("missing field '") + key + "'");
  try {
    if constexpr (std::is_same_v<T, double>) {
      if (j.at(key).is_null()) return std::numeric_limits<double>::quiet_NaN();
    }
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad field '") + key + "': " + e.what());
  }
}

json spec_json(const CaseSpec& c) {
  return {{"case_id", c.case_id}, {"theta0", c.theta0}, {"bits", c.bits},
          {"amp_opt", c.amp_opt}, {"seed", c.seed}};
}

CaseSpec spec_from(const json& j) {
  CaseSpec c;
  c.case_id = field<std::string>(j, "case_id");
  c.theta0 = field<double>(j, "theta0");
  c.bits = field<int>(j, "bits");
  c.amp_opt = field<bool>(j, "amp_opt");
  c.seed = field<std::uint64_t>(j, "seed");
  c.validate();
  return c;
}

json breakdown_json(const ScoreBreakdown& b) {
  return {{"theta_peak", b.theta_peak},
          {"pointing_error", b.pointing_error},
          {"W", b.W},
          {"penalty_a", b.penalty_a},
          {"penalty_b", b.penalty_b},
          {"penalty_c", b.penalty_c},
          {"y", b.y},
          {"zero_reason", std::string(to_string(b.zero_reason))}};
}

ScoreBreakdown breakdown_from(const json& j) {
  ScoreBreakdown b;
  b.theta_peak = field<double>(j, "theta_peak");
  b.pointing_error = field<double>(j, "pointing_error");
  b.W = field<double>(j, "W");
  b.penalty_a = field<double>(j, "penalty_a");
  b.penalty_b = field<double>(j, "penalty_b");
  b.penalty_c = field<double>(j, "penalty_c");
  b.y = field<double>(j, "y");
  const auto reason = parse_zero_reason(field<std::string>(j, "zero_reason"));
  if (!reason) throw ConfigError("unknown zero_reason");
  b.zero_reason = *reason;
  return b;
}

json solver_json(const SolverConfig& s) {
  json j = {{"batch_size", s.batch_size}, {"iterations", s.iterations},
            {"dt", s.dt},                 {"readout_interval", s.readout_interval},
            {"overrides", s.overrides}};
  j["xi"] = s.xi ? json(*s.xi) : json(nullptr);
  j["noise_amplitude"] = s.noise_amplitude ? json(*s.noise_amplitude) : json(nullptr);
  return j;
}

json adam_json(const AdamConfig& a) {
  return {{"learning_rate", a.learning_rate}, {"beta1", a.beta1}, {"beta2", a.beta2},
          {"epsilon", a.epsilon},             {"iterations", a.iterations}};
}

// ---- TOML ----

void check_keys(const toml::table& t, std::initializer_list<std::string_view> allowed,
                std::string_view context) {
  for (auto&& [key, node] : t) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key.str() == a;
    if (!ok) {
      throw ConfigError("unknown key '" + std::string(key.str()) + "' in " + std::string(context));
    }
  }
}

template <typename T>
void read(const toml::table& t, std::string_view key, T& out) {
  const toml::node* node = t.get(key);
  if (!node) return;
  std::optional<T> v;
  if constexpr (std::is_same_v<T, bool>) {
    v = node->value_exact<bool>();
  } else if constexpr (std::is_integral_v<T>) {
    if (const auto i = node->value_exact<std::int64_t>()) {
      if (*i < 0 && std::is_unsigned_v<T>) throw ConfigError("'" + std::string(key) + "' must be >= 0");
      v = static_cast<T>(*i);
    }
  } else {
    v = node->value<T>();
  }
  if (!v) throw ConfigError("key '" + std::string(key) + "' has the wrong type");
  out = *v;
}

void read_opt(const toml::table& t, std::string_view key, std::optional<double>& out) {
  if (!t.contains(key)) return;
  double v = 0.0;
  read(t, key, v);
  out = v;
}

const toml::table* subtable(const toml::table& t, std::string_view key) {
  const toml::node* node = t.get(key);
  if (!node) return nullptr;
  const toml::table* tbl = node->as_table();
  if (!tbl) throw ConfigError("'" + std::string(key) + "' must be a table");
  return tbl;
}

void read_double_map(const toml::table& t, std::map<std::string, double>& out) {
  for (auto&& [key, node] : t) {
    const auto v = node.value<double>();
    if (!v) throw ConfigError("override '" + std::string(key.str()) + "' must be a number");
    out[std::string(key.str())] = *v;
  }
}

void read_solver(const toml::table& t, SolverConfig& s, std::string_view context) {
  check_keys(t, {"batch_size", "iterations", "dt", "xi", "noise_amplitude", "readout_interval",
                 "overrides"},
             context);
  read(t, "batch_size", s.batch_size);
  read(t, "iterations", s.iterations);
  read(t, "dt", s.dt);
  read_opt(t, "xi", s.xi);
  read_opt(t, "noise_amplitude", s.noise_amplitude);
  read(t, "readout_interval", s.readout_interval);
  if (const auto* o = subtable(t, "overrides")) read_double_map(*o, s.overrides);
}

void read_adam(const toml::table& t, AdamConfig& a, std::string_view context) {
  check_keys(t, {"learning_rate", "beta1", "beta2", "epsilon", "iterations"}, context);
  read(t, "learning_rate", a.learning_rate);
  read(t, "beta1", a.beta1);
  read(t, "beta2", a.beta2);
  read(t, "epsilon", a.epsilon);
  read(t, "iterations", a.iterations);
}

SolverKind kind_from(std::string_view name) {
  const auto k = parse_solver_kind(name);
  if (!k) throw ConfigError("unknown solver kind '" + std::string(name) + "'");
  return *k;
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::string cases_to_json(const std::vector<CaseSpec>& cases) {
  json arr = json::array();
  for (const auto& c : cases) arr.push_back(spec_json(c));
  return plain(arr);
}

std::vector<CaseSpec> cases_from_json(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_array()) throw ConfigError("cases file must hold a JSON array");
  std::vector<CaseSpec> out;
  for (const auto& e : j) out.push_back(spec_from(e));
  return out;
}

std::string breakdown_to_json(const ScoreBreakdown& breakdown) {
  return plain(breakdown_json(breakdown));
}

std::string result_to_json(const CaseResult& r) {
  json j = {{"case", spec_json(r.spec)},
            {"excitation",
             {{"phases", r.excitation.phases()}, {"amplitudes", r.excitation.amplitudes()}}},
            {"breakdown", breakdown_json(r.breakdown)},
            {"elapsed_seconds", r.elapsed_seconds},
            {"branch_provenance", r.branch_provenance},
            {"config_fingerprint", r.config_fingerprint}};
  if (r.error) j["error"] = *r.error;
  return plain(j);
}

CaseResult result_from_json(const std::string& text) {
  const json j = parse_json(text);
  CaseResult r;
  r.spec = spec_from(field<json>(j, "case"));
  const json ex = field<json>(j, "excitation");
  r.excitation = Excitation(field<std::vector<double>>(ex, "phases"),
                            field<std::vector<double>>(ex, "amplitudes"));
  r.breakdown = breakdown_from(field<json>(j, "breakdown"));
  r.elapsed_seconds = field<double>(j, "elapsed_seconds");
  r.branch_provenance = field<std::string>(j, "branch_provenance");
  r.config_fingerprint = field<std::string>(j, "config_fingerprint");
  if (j.contains("error")) r.error = field<std::string>(j, "error");
  return r;
}

std::string summary_to_json(const std::vector<CaseResult>& results, double mean_score) {
  json cases = json::array();
  for (const auto& r : results) {
    json e = {{"case_id", r.spec.case_id},
              {"breakdown", breakdown_json(r.breakdown)},
              {"elapsed_seconds", r.elapsed_seconds}};
    if (r.error) e["error"] = *r.error;
    cases.push_back(std::move(e));
  }
  return plain({{"cases", cases}, {"mean_score", mean_score}, {"n_cases", results.size()}});
}

std::string phase_code_to_json(const PhaseCode& code) {
  json re = json::array(), im = json::array();
  for (const auto& c : code.coefficients) {
    re.push_back(c.real());
    im.push_back(c.imag());
  }
  return plain({{"bits", code.bits},
                {"spins_per_antenna", code.spins_per_antenna},
                {"coefficients_re", re},
                {"coefficients_im", im},
                {"allowed_grid", code.allowed_grid},
                {"residual", code.residual}});
}

RunConfig parse_run_config(const std::string& toml_text) {
  toml::table root;
  try {
    root = toml::parse(toml_text);
  } catch (const toml::parse_error& e) {
    throw ConfigError(std::string("invalid TOML: ") + std::string(e.description()));
  }
  RunConfig c;
  check_keys(root,
             {"budget_seconds", "seed", "n_antennas", "threads", "cluster_m", "amp_bits", "amp_top",
              "pool_cap", "classical_restarts", "kinds", "branches", "budget_split", "sidelobe",
              "phase_solver", "amp_solver", "kind_overrides", "adam", "amp_adam", "scoring"},
             "run config");
  read(root, "budget_seconds", c.budget_seconds);
  read(root, "seed", c.seed);
  read(root, "n_antennas", c.n_antennas);
  read(root, "threads", c.threads);
  read(root, "cluster_m", c.cluster_m);
  read(root, "amp_bits", c.amp_bits);
  read(root, "amp_top", c.amp_top);
  read(root, "pool_cap", c.pool_cap);
  read(root, "classical_restarts", c.classical_restarts);

  if (const toml::node* node = root.get("kinds")) {
    const toml::array* arr = node->as_array();
    if (!arr) throw ConfigError("'kinds' must be an array of solver names");
    c.kinds.clear();
    for (const auto& e : *arr) {
      const auto name = e.value<std::string>();
      if (!name) throw ConfigError("'kinds' must be an array of solver names");
      c.kinds.push_back(kind_from(*name));
    }
  }
  if (const auto* t = subtable(root, "branches")) {
    check_keys(*t, {"quantum", "classical"}, "branches");
    read(*t, "quantum", c.quantum_branch);
    read(*t, "classical", c.classical_branch);
  }
  if (const auto* t = subtable(root, "budget_split")) {
    check_keys(*t, {"phase_solve", "quantum_amplitude", "gradient_branch", "refine_eval"},
               "budget_split");
    read(*t, "phase_solve", c.split.phase_solve);
    read(*t, "quantum_amplitude", c.split.quantum_amplitude);
    read(*t, "gradient_branch", c.split.gradient_branch);
    read(*t, "refine_eval", c.split.refine_eval);
  }
  if (const auto* t = subtable(root, "sidelobe")) {
    check_keys(*t, {"guard_halfwidth", "sample_step", "near_weight", "far_weight", "blend_weight"},
               "sidelobe");
    read(*t, "guard_halfwidth", c.sidelobe.guard_halfwidth);
    read(*t, "sample_step", c.sidelobe.sample_step);
    read(*t, "near_weight", c.sidelobe.near_weight);
    read(*t, "far_weight", c.sidelobe.far_weight);
    read(*t, "blend_weight", c.sidelobe.blend_weight);
  }
  if (const auto* t = subtable(root, "phase_solver")) read_solver(*t, c.phase_solver, "phase_solver");
  if (const auto* t = subtable(root, "amp_solver")) read_solver(*t, c.amp_solver, "amp_solver");
  if (const auto* t = subtable(root, "kind_overrides")) {
    for (auto&& [key, node] : *t) {
      const toml::table* kt = node.as_table();
      if (!kt) throw ConfigError("kind_overrides entries must be tables");
      const SolverKind kind = kind_from(key.str());
      std::map<std::string, double> values;
      read_double_map(*kt, values);
      // An empty table changes nothing and must not change the fingerprint.
      if (!values.empty()) c.kind_overrides[kind] = std::move(values);
    }
  }
  if (const auto* t = subtable(root, "adam")) read_adam(*t, c.adam, "adam");
  if (const auto* t = subtable(root, "amp_adam")) read_adam(*t, c.amp_adam, "amp_adam");
  if (const auto* t = subtable(root, "scoring")) {
    check_keys(*t, {"step", "pointing_limit", "time_limit"}, "scoring");
    read(*t, "step", c.score_step);
    read(*t, "pointing_limit", c.limits.pointing_limit_deg);
    read(*t, "time_limit", c.limits.time_limit_seconds);
  }
  c.validate();
  return c;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  return parse_run_config(read_text_file(path));
}

std::string run_config_canonical(const RunConfig& c) {
  json kinds = json::array();
  for (SolverKind k : c.kinds) kinds.push_back(std::string(to_string(k)));
  json overrides = json::object();
  for (const auto& [k, m] : c.kind_overrides) overrides[std::string(to_string(k))] = m;
  const json j = {
      {"budget_seconds", c.budget_seconds},
      {"budget_split",
       {{"phase_solve", c.split.phase_solve},
        {"quantum_amplitude", c.split.quantum_amplitude},
        {"gradient_branch", c.split.gradient_branch},
        {"refine_eval", c.split.refine_eval}}},
      {"seed", c.seed},
      {"n_antennas", c.n_antennas},
      {"sidelobe",
       {{"guard_halfwidth", c.sidelobe.guard_halfwidth},
        {"sample_step", c.sidelobe.sample_step},
        {"near_weight", c.sidelobe.near_weight},
        {"far_weight", c.sidelobe.far_weight},
        {"blend_weight", c.sidelobe.blend_weight}}},
      {"phase_solver", solver_json(c.phase_solver)},
      {"amp_solver", solver_json(c.amp_solver)},
      {"kind_overrides", overrides},
      {"kinds", kinds},
      {"cluster_m", c.cluster_m},
      {"amp_bits", c.amp_bits},
      {"amp_top", c.amp_top},
      {"pool_cap", c.pool_cap},
      {"adam", adam_json(c.adam)},
      {"amp_adam", adam_json(c.amp_adam)},
      {"classical_restarts", c.classical_restarts},
      {"branches", {{"quantum", c.quantum_branch}, {"classical", c.classical_branch}}},
      {"scoring",
       {{"step", c.score_step},
        {"pointing_limit", c.limits.pointing_limit_deg},
        {"time_limit", c.limits.time_limit_seconds}}}};
  std::string out;
  dump_plain(j, -1, 0, out);
  return out;
}

std::string pattern_to_csv(const std::vector<std::pair<double, double>>& rows) {
  std::string out = "theta_deg,power_db\n";
  for (const auto& [theta, db] : rows) {
    append_double(out, theta);
    out += ',';
    append_double(out, db);
    out += '\n';
  }
  return out;
}

std::vector<std::pair<double, double>> pattern_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line.rfind("theta_deg,power_db", 0) != 0) {
    throw ConfigError("pattern CSV must start with 'theta_deg,power_db'");
  }
  std::vector<std::pair<double, double>> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw ConfigError("malformed pattern row: " + line);
    double theta = 0.0, db = 0.0;
    const char* b = line.data();
    const auto r1 = std::from_chars(b, b + comma, theta);
    const auto r2 = std::from_chars(b + comma + 1, b + line.size(), db);
    if (r1.ec != std::errc() || r2.ec != std::errc()) {
      throw ConfigError("malformed pattern row: " + line);
    }
    rows.emplace_back(theta, db);
  }
  return rows;
}

}  // namespace beamq
