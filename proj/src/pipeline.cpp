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

#include "beamq/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>

#include "beamq/encoding.hpp"
#include "beamq/io.hpp"
#include "beamq/refine.hpp"
#include "beamq/rng.hpp"

namespace beamq {

namespace {

using Clock = std::chrono::steady_clock;

struct PoolEntry {
  Excitation excitation;
  std::string provenance;
};

KindConfigs kind_configs(const SolverConfig& shared, const RunConfig& config, std::uint64_t seed) {
  KindConfigs out;
  for (SolverKind kind : config.kinds) {
    SolverConfig c = shared;
    c.seed = seed;
    if (const auto it = config.kind_overrides.find(kind); it != config.kind_overrides.end()) {
      for (const auto& [key, value] : it->second) c.overrides[key] = value;
    }
    out[kind] = std::move(c);
  }
  return out;
}

Excitation to_excitation(const Candidate& c) {
  return c.amplitudes.empty() ? Excitation::with_phases(c.phases)
                              : Excitation(c.phases, c.amplitudes);
}

}  // namespace

void CaseSpec::validate() const {
  if (!(theta0 >= 45.0 && theta0 <= 134.0)) throw ConfigError("theta0 must lie in [45, 134]");
  if (bits < 1 || bits > 4) throw ConfigError("bits must lie in 1..4");
}

void RunConfig::validate() const {
  if (!(budget_seconds > 0.0)) throw ConfigError("budget_seconds must be > 0");
  const double fractions[] = {split.phase_solve, split.quantum_amplitude, split.gradient_branch,
                              split.refine_eval};
  double total = 0.0;
  for (double f : fractions) {
    if (!(f >= 0.0)) throw ConfigError("budget split fractions must be >= 0");
    total += f;
  }
  if (total > 1.0 + 1e-12) throw ConfigError("budget split fractions must sum to <= 1");
  if (n_antennas < 1) throw ConfigError("n_antennas must be >= 1");
  sidelobe.validate();
  phase_solver.validate();
  amp_solver.validate();
  if (quantum_branch && kinds.empty()) throw ConfigError("quantum branch needs at least one solver kind");
  if (cluster_m < 1) throw ConfigError("cluster_m must be >= 1");
  if (amp_bits < 1 || amp_bits > 16) throw ConfigError("amp_bits must lie in 1..16");
  if (amp_top < 1) throw ConfigError("amp_top must be >= 1");
  if (pool_cap < 1) throw ConfigError("pool_cap must be >= 1");
  adam.validate();
  amp_adam.validate();
  if (classical_restarts < 0) throw ConfigError("classical_restarts must be >= 0");
  if (!(score_step > 0.0)) throw ConfigError("score_step must be > 0");
}

std::vector<CaseSpec> generate_cases(int n, std::uint64_t seed) {
  if (n < 0) throw ConfigError("case count must be >= 0");
  Rng rng = Rng(seed).derive("cases");
  std::vector<CaseSpec> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    CaseSpec c;
    char id[32];
    std::snprintf(id, sizeof id, "case_%04d", i);
    c.case_id = id;
    c.theta0 = rng.uniform(45.0, 134.0);
    c.bits = static_cast<int>(rng.uniform_int(1, 4));
    c.amp_opt = rng.bernoulli(0.5);
    c.seed = rng.next_u64();
    out.push_back(std::move(c));
  }
  return out;
}

Excitation fallback_excitation(int n_antennas, double theta0, int bits) {
  std::vector<double> phases = steered_uniform(n_antennas, theta0).phases();
  for (double& p : phases) p = snap_phase(p, bits);
  return Excitation::with_phases(std::move(phases));
}

CaseResult run_case(const CaseSpec& spec, const RunConfig& config) {
  const auto start = Clock::now();
  const auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };
  config.validate();
  spec.validate();

  const double budget = config.budget_seconds;
  const double phase_deadline = budget * config.split.phase_solve;
  const double amp_deadline = phase_deadline + budget * config.split.quantum_amplitude;
  const double gradient_deadline = amp_deadline + budget * config.split.gradient_branch;

  SidelobeConfig sidelobe = config.sidelobe;
  sidelobe.theta0 = spec.theta0;
  const RatioObjective objective = RatioObjective::from_config(sidelobe);
  const Rng case_rng = Rng(config.seed).derive(spec.seed);
  const int n = config.n_antennas;

  std::vector<PoolEntry> pool;

  if (config.quantum_branch && elapsed() < phase_deadline) {
    const PhaseCode& code = phase_code(spec.bits);
    const IsingProblem problem = phase_problem(code, sidelobe, n);
    const KindConfigs configs =
        kind_configs(config.phase_solver, config, case_rng.derive("phase").next_u64());
    const CandidateBatch batch = rainbow_solve(problem, configs, config.kinds, config.threads);
    const CandidateSet refined =
        cluster_refine(decode_candidates(batch, code), static_cast<std::size_t>(config.cluster_m));

    if (!spec.amp_opt) {
      for (const auto& c : refined) pool.push_back({to_excitation(c), "quantum:" + c.provenance});
    } else {
      const AmpCode amp_code = build_amp_code(config.amp_bits);
      const Rng amp_rng = case_rng.derive("amplitude");
      for (std::size_t i = 0; i < refined.size(); ++i) {
        const Candidate& c = refined[i];
        const std::string tag = "quantum:" + c.provenance;
        if (elapsed() < amp_deadline) {
          const IsingProblem amp_problem = amplitude_problem(amp_code, c.phases, sidelobe, n);
          const KindConfigs amp_configs =
              kind_configs(config.amp_solver, config, amp_rng.derive(i).next_u64());
          const CandidateBatch amp_batch =
              rainbow_solve(amp_problem, amp_configs, config.kinds, config.threads);

          std::vector<std::size_t> order(amp_batch.size());
          for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
          std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return amp_batch.energies[a] < amp_batch.energies[b];
          });
          std::set<std::vector<double>> seen;
          int kept = 0;
          for (std::size_t k : order) {
            if (kept >= config.amp_top) break;
            std::vector<double> beta = decode_amplitudes(amp_code, amp_batch.spins[k]);
            if (!seen.insert(beta).second) continue;
            const AdamResult polished = amplitude_refine(c.phases, beta, objective, config.amp_adam);
            pool.push_back({Excitation(c.phases, polished.x), tag + "+amp"});
            ++kept;
          }
        }
        pool.push_back({Excitation::with_phases(c.phases), tag});
      }
    }
  }

  if (config.classical_branch && elapsed() < gradient_deadline) {
    AdamConfig adam = config.adam;
    adam.seed = case_rng.derive("classical").next_u64();
    const CandidateSet classical =
        classical_branch({n, spec.bits, spec.amp_opt}, objective, adam, config.classical_restarts);
    for (const auto& c : classical) pool.push_back({to_excitation(c), c.provenance});
  }

  if (pool.size() > static_cast<std::size_t>(config.pool_cap - 1)) {
    pool.resize(static_cast<std::size_t>(config.pool_cap - 1));
  }

  // The fallback is scored first so a result always exists, but ranks last on ties.
  const AngleGrid grid(0.0, 180.0, config.score_step);
  const ScoringLimits no_timeout{config.limits.pointing_limit_deg,
                                 std::numeric_limits<double>::infinity()};
  PoolEntry best{fallback_excitation(n, spec.theta0, spec.bits), "fallback"};
  double best_y = case_score(pattern(best.excitation, grid), spec.theta0, 0.0, no_timeout).y;
  bool best_is_fallback = true;
  for (auto& entry : pool) {
    if (elapsed() >= budget) break;
    const double y = case_score(pattern(entry.excitation, grid), spec.theta0, 0.0, no_timeout).y;
    if (y > best_y || (y == best_y && best_is_fallback)) {
      best_y = y;
      best = std::move(entry);
      best_is_fallback = false;
    }
  }

  CaseResult result;
  result.spec = spec;
  result.excitation = std::move(best.excitation);
  result.branch_provenance = std::move(best.provenance);
  result.config_fingerprint = config_fingerprint(config);
  result.elapsed_seconds = elapsed();
  result.breakdown =
      case_score(pattern(result.excitation, grid), spec.theta0, result.elapsed_seconds, config.limits);
  return result;
}

BatchResult run_batch(const std::vector<CaseSpec>& cases, const RunConfig& config) {
  if (cases.empty()) throw std::invalid_argument("run_batch needs at least one case");
  config.validate();
  BatchResult out;
  out.results.reserve(cases.size());
  std::vector<ScoreBreakdown> breakdowns;
  for (const auto& spec : cases) {
    const auto start = Clock::now();
    try {
      out.results.push_back(run_case(spec, config));
    } catch (const std::exception& e) {
      CaseResult failed;
      failed.spec = spec;
      failed.config_fingerprint = config_fingerprint(config);
      failed.error = e.what();
      failed.elapsed_seconds = std::chrono::duration<double>(Clock::now() - start).count();
      out.results.push_back(std::move(failed));
    }
    breakdowns.push_back(out.results.back().breakdown);
  }
  out.mean_score = batch_score(breakdowns);
  return out;
}

std::vector<std::pair<double, double>> export_pattern(const Excitation& excitation,
                                                      const AngleGrid& grid) {
  const Pattern p = pattern(excitation, grid);
  const double p_peak = *std::max_element(p.power.begin(), p.power.end());
  if (!(p_peak > 0.0)) throw ScoringError("pattern has zero peak power");
  std::vector<std::pair<double, double>> rows;
  rows.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double ratio = p.power[i] / p_peak;
    // Floor at -400 dB so zero power stays finite in text output.
    const double db = ratio > 0.0 ? std::max(-400.0, 10.0 * std::log10(ratio)) : -400.0;
    rows.emplace_back(grid[i], p.power[i] == p_peak ? 0.0 : db);
  }
  return rows;
}

Pattern import_pattern(const std::vector<std::pair<double, double>>& rows) {
  if (rows.size() < 2) throw ScoringError("pattern needs at least two rows");
  const double first = rows.front().first, last = rows.back().first;
  const AngleGrid grid(first, last, (last - first) / static_cast<double>(rows.size() - 1));
  if (grid.size() != rows.size()) throw ScoringError("pattern rows are not uniformly spaced");
  Pattern p{grid, {}};
  p.power.reserve(rows.size());
  for (const auto& [theta, db] : rows) p.power.push_back(std::pow(10.0, db / 10.0));
  return p;
}

std::string config_fingerprint(const RunConfig& config) {
  const std::string canonical = run_config_canonical(config);
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace beamq
