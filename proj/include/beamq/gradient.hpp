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

#pragma once

// Continuous optimization of the sidelobe-to-mainlobe power ratio
//
//   L(alpha, beta) = sum_j w_j P(theta_j) / (blend * P(theta0))
//
// over the same weighted angle set the Ising builders use.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "beamq/ising.hpp"
#include "beamq/refine.hpp"

namespace beamq {

struct AdamConfig {
  double learning_rate = 0.05;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  int iterations = 500;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Angle set, target and blend of one ratio objective.
struct RatioObjective {
  double theta0 = 90.0;
  std::vector<WeightedAngle> sidelobes;
  double blend_weight = 0.5;

  static RatioObjective from_config(const SidelobeConfig& config);
};

/// +infinity when the mainlobe power vanishes.
double ratio_loss(std::span<const double> phases, std::span<const double> amplitudes,
                  const RatioObjective& objective);
double ratio_loss(std::span<const double> phases, std::span<const double> amplitudes,
                  const SidelobeConfig& config);

struct LossGradient {
  double loss = 0.0;  ///< or the power, for power_gradient
  std::vector<double> d_phases;
  std::vector<double> d_amplitudes;
};

/// P(theta) and its partial derivatives at one angle.
LossGradient power_gradient(std::span<const double> phases, std::span<const double> amplitudes,
                            double theta_deg);

/// Loss and analytic gradients. Gradients are zero when the loss is infinite.
LossGradient loss_gradients(std::span<const double> phases, std::span<const double> amplitudes,
                            const RatioObjective& objective);
LossGradient loss_gradients(std::span<const double> phases, std::span<const double> amplitudes,
                            const SidelobeConfig& config);

/// Returns f(x) and writes df/dx into grad.
using ObjectiveFn = std::function<double(std::span<const double> x, std::span<double> grad)>;

/// Per-coordinate box; empty vectors mean unbounded.
struct Bounds {
  std::vector<double> lower;
  std::vector<double> upper;
};

struct AdamResult {
  std::vector<double> x;  ///< best iterate seen
  double loss = 0.0;
  double initial_loss = 0.0;
  int iterations = 0;
};

/// Adam with bias correction, projected onto `bounds` after each step.
/// Stops early if the gradient becomes non-finite.
AdamResult adam_minimize(std::vector<double> initial, const ObjectiveFn& fn, const Bounds& bounds,
                         const AdamConfig& config);

/// Adam over amplitudes with phases fixed, box [0, 1]. An all-zero start is
/// re-seeded at 0.5 since the loss is undefined there.
AdamResult amplitude_refine(std::span<const double> fixed_phases,
                            std::span<const double> initial_amplitudes,
                            const RatioObjective& objective, const AdamConfig& config);

struct ClassicalCase {
  int n_antennas = 32;
  int bits = 1;
  bool amp_opt = false;
};

/// Random-restart gradient search on relaxed phases, snapped to the 2^bits
/// grid afterwards. Amplitudes are optimized jointly and then refined with
/// the snapped phases when amp_opt is set, otherwise they stay at 1.
/// Candidates carry the ratio loss as their energy and empty spins.
CandidateSet classical_branch(const ClassicalCase& problem, const RatioObjective& objective,
                              const AdamConfig& config, int n_restarts);

}  // namespace beamq
