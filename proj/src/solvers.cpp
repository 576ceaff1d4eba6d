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

#include "beamq/solvers.hpp"

#include <algorithm>
#include <bit>
#include <limits>

#include "beamq/parallel.hpp"
#include "beamq/rng.hpp"
#include "beamq/simd/kernels.hpp"

namespace beamq {
namespace {

// State shared by all dynamics: zero-diagonal coupling, half bias, and the
// per-slot best sign readout.
class Workspace {
 public:
  Workspace(const IsingProblem& problem, const SolverConfig& config)
      : problem_(problem),
        k_(problem.size),
        batch_(static_cast<std::size_t>(config.batch_size)),
        kern_(simd::active_kernels()),
        off_diag_(problem.coupling),
        half_bias_(problem.bias),
        xi_(config.xi.value_or(auto_xi(problem))),
        readout_interval_(config.readout_interval),
        signs_(batch_ * k_),
        scratch_(batch_ * k_),
        best_energy_(batch_, std::numeric_limits<double>::infinity()),
        best_spins_(batch_, SpinVector(k_, 1)) {
    for (std::size_t i = 0; i < k_; ++i) off_diag_[i * k_ + i] = 0.0;
    for (double& h : half_bias_) h *= 0.5;
  }

  std::size_t k() const { return k_; }
  std::size_t batch() const { return batch_; }
  std::size_t n() const { return k_ * batch_; }
  double xi() const { return xi_; }

  /// g = J_off x + h/2 for every batch row.
  void field(const std::vector<double>& x, std::vector<double>& g) const {
    kern_.matvec_rows(off_diag_.data(), k_, x.data(), batch_, g.data());
    for (std::size_t r = 0; r < batch_; ++r) {
      double* gr = g.data() + r * k_;
      for (std::size_t i = 0; i < k_; ++i) gr[i] += half_bias_[i];
    }
  }

  /// Readout at step `it` (0-based) when on the checkpoint schedule.
  void maybe_readout(int it, int iterations, const std::vector<double>& x) {
    if ((it + 1) % readout_interval_ == 0 || it + 1 == iterations) readout(x);
  }

  void readout(const std::vector<double>& x) {
    for (std::size_t i = 0; i < x.size(); ++i) signs_[i] = x[i] >= 0.0 ? 1.0 : -1.0;
    kern_.matvec_rows(problem_.coupling.data(), k_, signs_.data(), batch_, scratch_.data());
    for (std::size_t r = 0; r < batch_; ++r) {
      const double* s = signs_.data() + r * k_;
      const double* js = scratch_.data() + r * k_;
      double e = problem_.offset;
      for (std::size_t i = 0; i < k_; ++i) e -= s[i] * (js[i] + problem_.bias[i]);
      if (e < best_energy_[r]) {
        best_energy_[r] = e;
        for (std::size_t i = 0; i < k_; ++i) best_spins_[r][i] = static_cast<Spin>(s[i]);
      }
    }
  }

  std::vector<SpinVector> take_best() { return std::move(best_spins_); }

 private:
  const IsingProblem& problem_;
  std::size_t k_;
  std::size_t batch_;
  const simd::KernelTable& kern_;
  std::vector<double> off_diag_;
  std::vector<double> half_bias_;
  double xi_;
  int readout_interval_;
  std::vector<double> signs_;
  std::vector<double> scratch_;
  std::vector<double> best_energy_;
  std::vector<SpinVector> best_spins_;
};

double sgn(double v) { return v >= 0.0 ? 1.0 : -1.0; }

std::vector<double> random_state(Rng& rng, std::size_t n, double scale) {
  std::vector<double> x(n);
  for (double& v : x) v = rng.uniform(-scale, scale);
  return x;
}

// Linear ramp from `from` to `to` over the run.
double ramp(int it, int iterations, double from, double to) {
  const double t = iterations > 1 ? static_cast<double>(it) / (iterations - 1) : 1.0;
  return from + (to - from) * t;
}

// Simulated bifurcation: y' = -(a0 - a(t)) x + xi g, x' = a0 y, with
// inelastic walls at |x| = 1. The discrete variant feeds sign(x) to g.
void run_sb(Workspace& ws, const SolverConfig& cfg, Rng& rng, bool discrete) {
  const double a0 = cfg.param("a0", 1.0);
  const double scale = cfg.param("init_scale", 0.01);
  auto x = random_state(rng, ws.n(), scale);
  auto y = random_state(rng, ws.n(), scale);
  std::vector<double> in(ws.n()), g(ws.n());
  for (int it = 0; it < cfg.iterations; ++it) {
    const double a = a0 * static_cast<double>(it + 1) / cfg.iterations;
    if (discrete) {
      for (std::size_t i = 0; i < in.size(); ++i) in[i] = sgn(x[i]);
      ws.field(in, g);
    } else {
      ws.field(x, g);
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
      y[i] += cfg.dt * (-(a0 - a) * x[i] + ws.xi() * g[i]);
      x[i] += cfg.dt * a0 * y[i];
      if (std::abs(x[i]) > 1.0) {
        x[i] = sgn(x[i]);
        y[i] = 0.0;
      }
    }
    ws.maybe_readout(it, cfg.iterations, x);
  }
}

// Simulated coherent Ising machine: first-order amplitude iteration with a
// linearly ramped pump and Gaussian noise, clipped to the unit box.
void run_simcim(Workspace& ws, const SolverConfig& cfg, Rng& rng) {
  const double p0 = cfg.param("pump_start", -1.0);
  const double p1 = cfg.param("pump_end", 1.0);
  const double noise = cfg.noise_amplitude.value_or(cfg.param("noise", 0.05));
  auto x = random_state(rng, ws.n(), cfg.param("init_scale", 0.01));
  std::vector<double> g(ws.n()), z(ws.n());
  for (int it = 0; it < cfg.iterations; ++it) {
    const double p = ramp(it, cfg.iterations, p0, p1);
    ws.field(x, g);
    rng.fill_normal(z);
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] += cfg.dt * ((p - 1.0) * x[i] + ws.xi() * g[i]) + noise * z[i];
      x[i] = std::clamp(x[i], -1.0, 1.0);
    }
    ws.maybe_readout(it, cfg.iterations, x);
  }
}

// Local quantum annealing: product-state angles phi = (pi/2) tanh(w),
// spin expectation z = sin(phi), transverse expectation cos(phi). The cost
// (1-t)(-sum cos phi) + t*gamma*xi*(-z^T J z - h^T z)/2 is minimized by
// Adam-style momentum descent on w.
void run_lqa(Workspace& ws, const SolverConfig& cfg, Rng& rng) {
  const double gamma = cfg.param("gamma", 1.0);
  const double lr = cfg.param("lr", 0.1);
  constexpr double kB1 = 0.9, kB2 = 0.999, kEps = 1e-8;
  auto w = random_state(rng, ws.n(), cfg.param("init_scale", 0.01));
  std::vector<double> z(ws.n()), g(ws.n()), m(ws.n(), 0.0), v(ws.n(), 0.0);
  double b1t = 1.0, b2t = 1.0;
  for (int it = 0; it < cfg.iterations; ++it) {
    const double t = static_cast<double>(it + 1) / cfg.iterations;
    for (std::size_t i = 0; i < w.size(); ++i) z[i] = std::sin(0.5 * kPi * std::tanh(w[i]));
    ws.field(z, g);
    b1t *= kB1;
    b2t *= kB2;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const double th = std::tanh(w[i]);
      const double phi = 0.5 * kPi * th;
      const double grad = 0.5 * kPi * (1.0 - th * th) *
                          (-t * gamma * ws.xi() * g[i] * std::cos(phi) + (1.0 - t) * std::sin(phi));
      m[i] = kB1 * m[i] + (1.0 - kB1) * grad;
      v[i] = kB2 * v[i] + (1.0 - kB2) * grad * grad;
      w[i] -= lr * (m[i] / (1.0 - b1t)) / (std::sqrt(v[i] / (1.0 - b2t)) + kEps);
    }
    ws.maybe_readout(it, cfg.iterations, w);
  }
}

// Chaotic amplitude control (feedback_on_field = false) and chaotic
// feedback control (true). Both integrate x' = -x^3 + (p-1)x + e*xi*g with
// per-spin error variables e. CAC regulates x^2 toward the target; CFC
// regulates the squared injected field (xi*g)^2 instead.
void run_chaotic(Workspace& ws, const SolverConfig& cfg, Rng& rng, bool feedback_on_field) {
  const double p0 = cfg.param("pump_start", -1.0);
  const double p1 = cfg.param("pump_end", 1.0);
  const double target = cfg.param("target", 1.0);
  const double beta = cfg.param("beta", 0.3);
  // Field feedback is stiffer than amplitude feedback and needs a finer step.
  const double dt = cfg.dt * (feedback_on_field ? cfg.param("step_scale", 1.0 / 3.0) : 1.0);
  constexpr double kWall = 1.5, kMinErr = 0.01, kMaxErr = 100.0;
  auto x = random_state(rng, ws.n(), cfg.param("init_scale", 0.01));
  std::vector<double> e(ws.n(), 1.0), g(ws.n());
  for (int it = 0; it < cfg.iterations; ++it) {
    const double p = ramp(it, cfg.iterations, p0, p1);
    ws.field(x, g);
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double inj = ws.xi() * g[i];
      const double xi_ = x[i];
      x[i] += dt * (-xi_ * xi_ * xi_ + (p - 1.0) * xi_ + e[i] * inj);
      x[i] = std::clamp(x[i], -kWall, kWall);
      const double level = feedback_on_field ? inj * inj : xi_ * xi_;
      e[i] += dt * (-beta * e[i] * (level - target));
      e[i] = std::clamp(e[i], kMinErr, kMaxErr);
    }
    ws.maybe_readout(it, cfg.iterations, x);
  }
}

// Noisy mean-field annealing: damped tanh updates of the magnetizations
// under a geometric temperature schedule with Gaussian field noise.
void run_nmfa(Workspace& ws, const SolverConfig& cfg, Rng& rng) {
  const double rho = cfg.param("rho", 0.15);
  const double t0 = cfg.param("t_start", 2.0);
  const double t1 = cfg.param("t_end", 0.02);
  const double noise = cfg.noise_amplitude.value_or(cfg.param("noise", 0.15));
  auto m = random_state(rng, ws.n(), cfg.param("init_scale", 0.01));
  std::vector<double> g(ws.n()), z(ws.n());
  for (int it = 0; it < cfg.iterations; ++it) {
    const double frac = cfg.iterations > 1 ? static_cast<double>(it) / (cfg.iterations - 1) : 1.0;
    const double temp = t0 * std::pow(t1 / t0, frac);
    ws.field(m, g);
    rng.fill_normal(z);
    for (std::size_t i = 0; i < m.size(); ++i) {
      const double phi = ws.xi() * g[i] + noise * z[i];
      m[i] = (1.0 - rho) * m[i] + rho * std::tanh(phi / temp);
    }
    ws.maybe_readout(it, cfg.iterations, m);
  }
}

void check_problem(const IsingProblem& problem) {
  if (problem.size == 0) throw std::invalid_argument("Ising problem has no spins");
  problem.validate();
}

}  // namespace

std::string_view to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::BSB: return "BSB";
    case SolverKind::DSB: return "DSB";
    case SolverKind::SimCIM: return "SimCIM";
    case SolverKind::LQA: return "LQA";
    case SolverKind::CAC: return "CAC";
    case SolverKind::CFC: return "CFC";
    case SolverKind::NMFA: return "NMFA";
  }
  return "unknown";
}

std::optional<SolverKind> parse_solver_kind(std::string_view name) {
  for (SolverKind k : kAllSolverKinds) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

void SolverConfig::validate() const {
  if (batch_size < 1) throw ConfigError("solver batch_size must be >= 1");
  if (iterations < 1) throw ConfigError("solver iterations must be >= 1");
  if (!(dt > 0.0)) throw ConfigError("solver dt must be positive");
  if (xi && !(*xi > 0.0)) throw ConfigError("solver xi must be positive");
  if (noise_amplitude && !(*noise_amplitude >= 0.0)) throw ConfigError("noise_amplitude must be >= 0");
  if (readout_interval < 1) throw ConfigError("readout_interval must be >= 1");
}

double SolverConfig::param(const std::string& key, double fallback) const {
  const auto it = overrides.find(key);
  return it == overrides.end() ? fallback : it->second;
}

std::size_t CandidateBatch::best_index() const {
  if (energies.empty()) throw std::logic_error("best_index of empty batch");
  return static_cast<std::size_t>(std::min_element(energies.begin(), energies.end()) -
                                  energies.begin());
}

void CandidateBatch::append(const CandidateBatch& other) {
  spins.insert(spins.end(), other.spins.begin(), other.spins.end());
  energies.insert(energies.end(), other.energies.begin(), other.energies.end());
  provenance.insert(provenance.end(), other.provenance.begin(), other.provenance.end());
}

double auto_xi(const IsingProblem& problem) {
  const std::size_t k = problem.size;
  double sq = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (i != j) sq += problem.j(i, j) * problem.j(i, j);
    }
  }
  double sigma = k > 1 ? std::sqrt(sq / static_cast<double>(k * (k - 1))) : 0.0;
  if (!(sigma > 1e-300)) {
    // Bias-only problem: scale by the rms of the half bias instead.
    double hs = 0.0;
    for (double h : problem.bias) hs += 0.25 * h * h;
    sigma = std::sqrt(hs / static_cast<double>(std::max<std::size_t>(k, 1)));
  }
  if (!(sigma > 1e-300)) return 1.0;
  return 0.5 / (std::sqrt(static_cast<double>(k)) * sigma);
}

CandidateBatch solve(const IsingProblem& problem, SolverKind kind, const SolverConfig& config) {
  check_problem(problem);
  config.validate();
  Rng rng = Rng(config.seed).derive(to_string(kind));
  Workspace ws(problem, config);
  switch (kind) {
    case SolverKind::BSB: run_sb(ws, config, rng, false); break;
    case SolverKind::DSB: run_sb(ws, config, rng, true); break;
    case SolverKind::SimCIM: run_simcim(ws, config, rng); break;
    case SolverKind::LQA: run_lqa(ws, config, rng); break;
    case SolverKind::CAC: run_chaotic(ws, config, rng, false); break;
    case SolverKind::CFC: run_chaotic(ws, config, rng, true); break;
    case SolverKind::NMFA: run_nmfa(ws, config, rng); break;
  }
  CandidateBatch out;
  out.spins = ws.take_best();
  out.energies.reserve(out.spins.size());
  for (const auto& s : out.spins) out.energies.push_back(energy(problem, s));
  out.provenance.assign(out.spins.size(), kind);
  return out;
}

CandidateBatch rainbow_solve(const IsingProblem& problem, const KindConfigs& configs,
                             std::span<const SolverKind> enabled, int threads) {
  check_problem(problem);
  for (SolverKind k : enabled) {
    if (!configs.contains(k)) {
      throw ConfigError("no solver config for kind " + std::string(to_string(k)));
    }
  }
  std::vector<CandidateBatch> parts(enabled.size());
  parallel_for(
      enabled.size(),
      [&](std::size_t i) { parts[i] = solve(problem, enabled[i], configs.at(enabled[i])); },
      threads);
  CandidateBatch out;
  for (const auto& p : parts) out.append(p);
  return out;
}

CandidateBatch rainbow_solve(const IsingProblem& problem, const SolverConfig& shared,
                             std::span<const SolverKind> enabled, int threads) {
  KindConfigs configs;
  for (SolverKind k : enabled) configs[k] = shared;
  return rainbow_solve(problem, configs, enabled, threads);
}

std::pair<SpinVector, double> brute_force(const IsingProblem& problem) {
  check_problem(problem);
  const std::size_t k = problem.size;
  if (k > 24) throw std::invalid_argument("brute_force supports at most 24 spins");

  // Gray-code walk with incremental energy. Spin i maps to bit (k-1-i) of
  // the state code, bit value 1 meaning -1, so smaller codes are
  // lexicographically earlier.
  SpinVector s(k, 1);
  std::vector<double> local(k, 0.0);  // sum_{j != i} J_ij s_j
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (j != i) local[i] += problem.j(i, j);
    }
  }
  double e = energy(problem, s);
  double best_e = e;
  std::uint32_t code = 0;
  std::uint32_t best_code = 0;
  const std::uint64_t states = std::uint64_t{1} << k;
  for (std::uint64_t step = 1; step < states; ++step) {
    const int bit = std::countr_zero(step);
    const std::size_t i = k - 1 - static_cast<std::size_t>(bit);
    const double si = s[i];
    e += 4.0 * si * local[i] + 2.0 * problem.bias[i] * si;
    s[i] = static_cast<Spin>(-s[i]);
    for (std::size_t j = 0; j < k; ++j) {
      if (j != i) local[j] -= 2.0 * problem.j(j, i) * si;
    }
    code ^= std::uint32_t{1} << bit;
    const double tol = 1e-12 * std::max(1.0, std::abs(best_e));
    if (e < best_e - tol || (std::abs(e - best_e) <= tol && code < best_code)) {
      best_e = std::min(e, best_e);
      best_code = code;
    }
  }
  SpinVector best(k);
  for (std::size_t i = 0; i < k; ++i) best[i] = ((best_code >> (k - 1 - i)) & 1U) ? -1 : 1;
  return {best, energy(problem, best)};
}

}  // namespace beamq
