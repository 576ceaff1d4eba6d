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

// Pattern scoring: y = 1000 - 100a - 80b - 20c, clamped to [0, 1000], with
//   a = max(0, 15 + worst far sidelobe dB)    far:  |theta - theta0| > 30
//   b = max(0, W - 6)                          W: -30 dB mainlobe width
//   c = max(0, 30 + worst near sidelobe dB)   near: outside the mainlobe, within 30
// All levels are relative to the peak grid sample.

#include <optional>
#include <span>
#include <string_view>

#include "beamq/array_model.hpp"

namespace beamq {

enum class ZeroReason { None, Pointing, Timeout };

std::string_view to_string(ZeroReason reason);
std::optional<ZeroReason> parse_zero_reason(std::string_view name);

struct ScoreBreakdown {
  double theta_peak = 0.0;
  double pointing_error = 0.0;
  double W = 0.0;
  double penalty_a = 0.0;
  double penalty_b = 0.0;
  double penalty_c = 0.0;
  double y = 0.0;
  ZeroReason zero_reason = ZeroReason::None;
};

struct ScoringLimits {
  double pointing_limit_deg = 1.0;
  double time_limit_seconds = 90.0;
};

struct Peak {
  double theta = 0.0;     ///< interpolated
  double power = 0.0;     ///< grid maximum
  std::size_t index = 0;  ///< grid argmax, first on ties
};

struct MainlobeEdges {
  double theta1 = 0.0;
  double theta2 = 180.0;
  bool left_found = false;   ///< false: theta1 is the domain boundary
  bool right_found = false;
};

struct Penalties {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

/// Level threshold of the mainlobe edges relative to peak power.
inline constexpr double kEdgeRatio = 1e-3;

Peak peak(const Pattern& pattern);

/// Nearest -30 dB crossings on each side of the peak, interpolated linearly
/// in dB between bracketing samples.
MainlobeEdges mainlobe_edges(const Pattern& pattern, double theta_peak);

double far_penalty(double worst_far_db);
double beamwidth_penalty(double width_deg);
double near_penalty(double worst_near_db);

/// Largest 10 log10(P / P_peak) over grid samples with lo <= theta <= hi
/// (open ends excluded when the flags say so). -inf when no sample qualifies.
double max_relative_db(const Pattern& pattern, double lo, double hi, bool lo_open = false,
                       bool hi_open = false);

/// Throws ScoringError when the pattern has no positive sample.
Penalties penalties(const Pattern& pattern, double theta0, const MainlobeEdges& edges);

ScoreBreakdown case_score(const Pattern& pattern, double theta0, double elapsed_seconds,
                          const ScoringLimits& limits = {});

/// Mean y. Throws std::invalid_argument on an empty batch.
double batch_score(std::span<const ScoreBreakdown> breakdowns);

}  // namespace beamq
