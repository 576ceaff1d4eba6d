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

// Quadratic Ising problems for beam synthesis.
//
// Energy convention throughout: E(s) = -s^T J s - h^T s + offset.
//
// For a field vector v with field(s) = v^T s, |field|^2 = s^T Re(v v^H) s, so
// a weighted sum of pattern powers is a real symmetric quadratic form. Since
// v = d (x) c (antenna factor times code coefficients), v v^H = (d d^H) (x)
// (c c^H), and the angle sum collapses onto the N x N antenna factor before
// the Kronecker product with the code.

#include <span>
#include <vector>

#include "beamq/common.hpp"
#include "beamq/encoding.hpp"

namespace beamq {

struct IsingProblem {
  std::size_t size = 0;          ///< K spins
  std::vector<double> coupling;  ///< J, K x K row-major, symmetric
  std::vector<double> bias;      ///< h, length K
  double offset = 0.0;

  double j(std::size_t row, std::size_t col) const { return coupling[row * size + col]; }

  /// Throws std::invalid_argument on inconsistent dimensions, non-finite
  /// entries or asymmetry beyond 1e-12 relative.
  void validate() const;

  static IsingProblem zeros(std::size_t k);
};

struct WeightedAngle {
  double theta_deg;
  double weight;
};

struct SidelobeConfig {
  double theta0 = 90.0;
  double guard_halfwidth = 5.0;  ///< samples with |theta - theta0| < guard are skipped
  double sample_step = 1.0;
  double near_weight = 10.0;     ///< inside |theta - theta0| <= 30
  double far_weight = 1.0;
  double blend_weight = 0.5;     ///< objective: blend*P_side - (1-blend)*P_main

  void validate() const;
};

/// Sampled sidelobe angles with weights. Throws ConfigError when empty.
std::vector<WeightedAngle> sidelobe_samples(const SidelobeConfig& config);

/// sqrt(E(theta)) * (e_theta (x) c), antenna-major.
std::vector<cdouble> phase_field_vector(const PhaseCode& code, double theta_deg, int n_antennas);

/// Re(v v^H), row-major.
std::vector<double> rank_one_coupling(std::span<const cdouble> v);

IsingProblem phase_problem(const PhaseCode& code, const SidelobeConfig& config, int n_antennas);

/// Same construction with an explicit (possibly empty) sidelobe sample set.
IsingProblem phase_problem(const PhaseCode& code, double theta0_deg,
                           std::span<const WeightedAngle> sidelobes, double blend_weight,
                           int n_antennas);

/// c' = (-c_0, ..., -c_{b-1}, sum c).
std::vector<double> augmented_coefficients(const AmpCode& code);

/// d_theta,n = sqrt(E(theta)) * exp(i alpha_n) * exp(i pi n cos theta).
std::vector<cdouble> amplitude_drive(std::span<const double> phases, double theta_deg);

/// d (x) c', the per-angle augmented field vector over N(b+1) slots.
std::vector<cdouble> augmented_field_vector(std::span<const cdouble> drive, const AmpCode& code);

/// Fixed phases, amplitude spins free. Spin layout is antenna-major over
/// N*b_a slots; energy(s) equals blend*P_side - (1-blend)*P_main of the
/// decoded amplitudes.
IsingProblem amplitude_problem(const AmpCode& code, std::span<const double> fixed_phases,
                               const SidelobeConfig& config, int n_antennas);

IsingProblem amplitude_problem(const AmpCode& code, std::span<const double> fixed_phases,
                               double theta0_deg, std::span<const WeightedAngle> sidelobes,
                               double blend_weight, int n_antennas);

double energy(const IsingProblem& problem, std::span<const Spin> spins);

}  // namespace beamq
