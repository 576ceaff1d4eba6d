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

// Far-field model of an N-element uniform linear array with half-wavelength
// spacing. Element n (1-based) contributes beta_n * exp(i*alpha_n) *
// exp(i*pi*n*cos(theta)); the single-element factor E(theta) scales power.
// Angles are degrees at this API boundary.

#include <span>
#include <vector>

#include "beamq/common.hpp"

namespace beamq {

struct ArrayConfig {
  int n_antennas = 32;

  void validate() const {
    if (n_antennas < 1) throw ConfigError("n_antennas must be >= 1");
  }
};

/// Per-antenna phase (radians, wrapped to [0, 2pi)) and amplitude in [0, 1].
class Excitation {
 public:
  Excitation() = default;
  Excitation(std::vector<double> phases, std::vector<double> amplitudes);

  /// Unit amplitudes.
  static Excitation with_phases(std::vector<double> phases);

  std::size_t size() const { return phases_.size(); }
  const std::vector<double>& phases() const { return phases_; }
  const std::vector<double>& amplitudes() const { return amplitudes_; }

  /// beta_n * exp(i * alpha_n), n = 0..N-1.
  std::vector<cdouble> complex_weights() const;

  friend bool operator==(const Excitation&, const Excitation&) = default;

 private:
  std::vector<double> phases_;
  std::vector<double> amplitudes_;
};

/// Uniformly spaced angles in degrees. The last sample is exactly `end`:
/// when the span is not a multiple of the step, `end` is appended.
class AngleGrid {
 public:
  AngleGrid(double start_deg, double end_deg, double step_deg);

  /// 0..180 degrees at 0.05 degree spacing (3601 samples).
  static AngleGrid scoring_default() { return {0.0, 180.0, 0.05}; }

  double start() const { return start_; }
  double end() const { return end_; }
  double step() const { return step_; }
  std::size_t size() const { return samples_.size(); }
  const std::vector<double>& samples() const { return samples_; }
  double operator[](std::size_t i) const { return samples_[i]; }

 private:
  double start_;
  double end_;
  double step_;
  std::vector<double> samples_;
};

/// Linear-scale power pattern (element factor included) over a grid.
struct Pattern {
  AngleGrid grid;
  std::vector<double> power;
};

/// -min(12 * ((theta - 90) / 90)^2, 30). Throws std::domain_error outside [0, 180].
double element_factor_db(double theta_deg);

/// 10^(element_factor_db / 10).
double element_factor_power(double theta_deg);

/// exp(i*pi*n*cos(theta)) for n = 1..N.
std::vector<cdouble> steering_vector(double theta_deg, int n_antennas);

/// Array factor without the element factor.
cdouble field_sum(const Excitation& excitation, double theta_deg);

/// E(theta) * |field_sum|^2, never negative.
double power(const Excitation& excitation, double theta_deg);

/// Vectorized power() over every grid sample.
Pattern pattern(const Excitation& excitation, const AngleGrid& grid);

/// Continuous phases alpha_n = -pi*n*cos(theta0) with unit amplitudes; the
/// field at theta0 then sums coherently to N.
Excitation steered_uniform(int n_antennas, double theta0_deg);

}  // namespace beamq
