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

#include "beamq/gradient.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "beamq/array_model.hpp"
#include "beamq/rng.hpp"

namespace beamq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_lengths(std::span<const double> phases, std::span<const double> amplitudes) {
  if (phases.size() != amplitudes.size()) {
    throw std::invalid_argument("phase and amplitude vectors differ in length");
  }
}

// Fills z_n = e^{i alpha_n} e^{i pi n cos theta}, returns F = sum beta_n z_n.
cdouble field_terms(std::span<const double> phases, std::span<const double> amplitudes,
                    double theta_deg, std::vector<cdouble>& z) {
  const cdouble step = std::polar(1.0, kPi * std::cos(deg_to_rad(theta_deg)));
  cdouble u = step;
  cdouble f{0.0, 0.0};
  for (std::size_t n = 0; n < phases.size(); ++n) {
    z[n] = std::polar(1.0, phases[n]) * u;
    f += amplitudes[n] * z[n];
    u *= step;
  }
  return f;
}

// Accumulates weight * dP/d(alpha, beta) at one angle; returns P.
double add_power_gradient(std::span<const double> phases, std::span<const double> amplitudes,
                          double theta_deg, double weight, std::vector<cdouble>& z,
                          std::vector<double>& d_alpha, std::vector<double>& d_beta) {
  const double e = element_factor_power(theta_deg);
  const cdouble f = field_terms(phases, amplitudes, theta_deg, z);
  const cdouble fc = std::conj(f);
  for (std::size_t n = 0; n < phases.size(); ++n) {
    const cdouble t = fc * z[n];
    d_beta[n] += weight * 2.0 * e * t.real();
    d_alpha[n] -= weight * 2.0 * e * amplitudes[n] * t.imag();
  }
  return e * std::norm(f);
}

}  // namespace

void AdamConfig::validate() const {
  if (!(learning_rate > 0.0)) throw ConfigError("adam learning_rate must be > 0");
  if (!(beta1 > 0.0 && beta1 < 1.0)) throw ConfigError("adam beta1 must lie in (0, 1)");
  if (!(beta2 > 0.0 && beta2 < 1.0)) throw ConfigError("adam beta2 must lie in (0, 1)");
  if (!(epsilon > 0.0)) throw ConfigError("adam epsilon must be > 0");
  if (iterations < 0) throw ConfigError("adam iterations must be >= 0");
}

RatioObjective RatioObjective::from_config(const SidelobeConfig& config) {
  config.validate();
  return {config.theta0, sidelobe_samples(config), config.blend_weight};
}

double ratio_loss(std::span<const double> phases, std::span<const double> amplitudes,
                  const RatioObjective& objective) {
  check_lengths(phases, amplitudes);
  const Excitation ex({phases.begin(), phases.end()}, {amplitudes.begin(), amplitudes.end()});
  const double main = objective.blend_weight * power(ex, objective.theta0);
  if (!(main > 0.0)) return kInf;
  double side = 0.0;
  for (const auto& s : objective.sidelobes) side += s.weight * power(ex, s.theta_deg);
  return side / main;
}

double ratio_loss(std::span<const double> phases, std::span<const double> amplitudes,
                  const SidelobeConfig& config) {
  return ratio_loss(phases, amplitudes, RatioObjective::from_config(config));
}

LossGradient power_gradient(std::span<const double> phases, std::span<const double> amplitudes,
                            double theta_deg) {
  check_lengths(phases, amplitudes);
  const std::size_t n = phases.size();
  std::vector<cdouble> z(n);
  LossGradient out{0.0, std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
  out.loss = add_power_gradient(phases, amplitudes, theta_deg, 1.0, z, out.d_phases, out.d_amplitudes);
  return out;
}

LossGradient loss_gradients(std::span<const double> phases, std::span<const double> amplitudes,
                            const RatioObjective& objective) {
  check_lengths(phases, amplitudes);
  const std::size_t n = phases.size();
  std::vector<cdouble> z(n);
  std::vector<double> da_main(n, 0.0), db_main(n, 0.0);
  std::vector<double> da_side(n, 0.0), db_side(n, 0.0);

  const double p_main = objective.blend_weight *
                        add_power_gradient(phases, amplitudes, objective.theta0,
                                           objective.blend_weight, z, da_main, db_main);
  LossGradient out{kInf, std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
  if (!(p_main > 0.0)) return out;

  double p_side = 0.0;
  for (const auto& s : objective.sidelobes) {
    p_side += s.weight *
              add_power_gradient(phases, amplitudes, s.theta_deg, s.weight, z, da_side, db_side);
  }
  // d(S/M) = dS/M - S dM/M^2
  out.loss = p_side / p_main;
  const double inv = 1.0 / p_main;
  for (std::size_t k = 0; k < n; ++k) {
    out.d_phases[k] = (da_side[k] - out.loss * da_main[k]) * inv;
    out.d_amplitudes[k] = (db_side[k] - out.loss * db_main[k]) * inv;
  }
  return out;
}

LossGradient loss_gradients(std::span<const double> phases, std::span<const double> amplitudes,
                            const SidelobeConfig& config) {
  return loss_gradients(phases, amplitudes, RatioObjective::from_config(config));
}

AdamResult adam_minimize(std::vector<double> initial, const ObjectiveFn& fn, const Bounds& bounds,
                         const AdamConfig& config) {
  config.validate();
  const std::size_t n = initial.size();
  if ((!bounds.lower.empty() && bounds.lower.size() != n) ||
      (!bounds.upper.empty() && bounds.upper.size() != n)) {
    throw std::invalid_argument("bounds do not match parameter count");
  }
  auto project = [&](std::vector<double>& x) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!bounds.lower.empty()) x[i] = std::max(x[i], bounds.lower[i]);
      if (!bounds.upper.empty()) x[i] = std::min(x[i], bounds.upper[i]);
    }
  };

  std::vector<double> x = std::move(initial);
  project(x);
  std::vector<double> grad(n, 0.0), m(n, 0.0), v(n, 0.0);

  AdamResult result;
  double loss = fn(x, grad);
  result.x = x;
  result.loss = loss;
  result.initial_loss = loss;

  double b1t = 1.0, b2t = 1.0;
  for (int it = 0; it < config.iterations; ++it) {
    if (!std::all_of(grad.begin(), grad.end(), [](double g) { return std::isfinite(g); })) break;
    b1t *= config.beta1;
    b2t *= config.beta2;
    for (std::size_t i = 0; i < n; ++i) {
      m[i] = config.beta1 * m[i] + (1.0 - config.beta1) * grad[i];
      v[i] = config.beta2 * v[i] + (1.0 - config.beta2) * grad[i] * grad[i];
      const double m_hat = m[i] / (1.0 - b1t);
      const double v_hat = v[i] / (1.0 - b2t);
      x[i] -= config.learning_rate * m_hat / (std::sqrt(v_hat) + config.epsilon);
    }
    project(x);
    loss = fn(x, grad);
    result.iterations = it + 1;
    if (loss < result.loss) {
      result.loss = loss;
      result.x = x;
    }
  }
  return result;
}

AdamResult amplitude_refine(std::span<const double> fixed_phases,
                            std::span<const double> initial_amplitudes,
                            const RatioObjective& objective, const AdamConfig& config) {
  check_lengths(fixed_phases, initial_amplitudes);
  std::vector<double> start(initial_amplitudes.begin(), initial_amplitudes.end());
  if (std::all_of(start.begin(), start.end(), [](double b) { return b == 0.0; })) {
    std::fill(start.begin(), start.end(), 0.5);
  }
  const std::vector<double> phases(fixed_phases.begin(), fixed_phases.end());
  const ObjectiveFn fn = [&](std::span<const double> beta, std::span<double> grad) {
    LossGradient lg = loss_gradients(phases, beta, objective);
    std::copy(lg.d_amplitudes.begin(), lg.d_amplitudes.end(), grad.begin());
    return lg.loss;
  };
  const std::size_t n = start.size();
  return adam_minimize(std::move(start), fn, {std::vector<double>(n, 0.0), std::vector<double>(n, 1.0)},
                       config);
}

CandidateSet classical_branch(const ClassicalCase& problem, const RatioObjective& objective,
                              const AdamConfig& config, int n_restarts) {
  if (problem.n_antennas < 1) throw ConfigError("n_antennas must be >= 1");
  if (problem.bits < 1 || problem.bits > 4) throw ConfigError("phase bits must lie in 1..4");
  const auto n = static_cast<std::size_t>(problem.n_antennas);
  const Rng root = Rng(config.seed).derive("classical");
  CandidateSet out;

  for (int r = 0; r < n_restarts; ++r) {
    Rng rng = root.derive(static_cast<std::uint64_t>(r));
    std::vector<double> x(problem.amp_opt ? 2 * n : n, 1.0);
    for (std::size_t k = 0; k < n; ++k) x[k] = rng.uniform(0.0, kTwoPi);

    Bounds bounds;
    if (problem.amp_opt) {
      constexpr double inf = std::numeric_limits<double>::infinity();
      bounds.lower.assign(2 * n, -inf);
      bounds.upper.assign(2 * n, inf);
      std::fill(bounds.lower.begin() + n, bounds.lower.end(), 0.0);
      std::fill(bounds.upper.begin() + n, bounds.upper.end(), 1.0);
    }
    const std::vector<double> unit(n, 1.0);
    const ObjectiveFn fn = [&](std::span<const double> p, std::span<double> grad) {
      const auto alpha = p.first(n);
      const auto beta = problem.amp_opt ? p.subspan(n, n) : std::span<const double>(unit);
      LossGradient lg = loss_gradients(alpha, beta, objective);
      std::copy(lg.d_phases.begin(), lg.d_phases.end(), grad.begin());
      if (problem.amp_opt) std::copy(lg.d_amplitudes.begin(), lg.d_amplitudes.end(), grad.begin() + n);
      return lg.loss;
    };
    const AdamResult res = adam_minimize(std::move(x), fn, bounds, config);

    Candidate c;
    c.phases.resize(n);
    for (std::size_t k = 0; k < n; ++k) c.phases[k] = snap_phase(res.x[k], problem.bits);
    if (problem.amp_opt) {
      const std::vector<double> beta(res.x.begin() + static_cast<std::ptrdiff_t>(n), res.x.end());
      c.amplitudes = amplitude_refine(c.phases, beta, objective, config).x;
      c.energy = ratio_loss(c.phases, c.amplitudes, objective);
    } else {
      c.energy = ratio_loss(c.phases, unit, objective);
    }
    c.provenance = "classical";
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace beamq
