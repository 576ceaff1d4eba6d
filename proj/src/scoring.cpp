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

#include "beamq/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace beamq {

namespace {

constexpr double kFloorDb = -400.0;  // stands in for 10 log10(0)
constexpr double kAngleTol = 1e-9;

void check_pattern(const Pattern& pattern) {
  if (pattern.power.size() != pattern.grid.size() || pattern.power.empty()) {
    throw ScoringError("pattern power does not match its grid");
  }
}

double relative_db(double p, double p_peak) {
  if (!(p > 0.0)) return kFloorDb;
  return std::max(kFloorDb, 10.0 * std::log10(p / p_peak));
}

std::size_t nearest_index(const AngleGrid& grid, double theta) {
  const auto& s = grid.samples();
  const auto it = std::lower_bound(s.begin(), s.end(), theta);
  if (it == s.begin()) return 0;
  if (it == s.end()) return s.size() - 1;
  const auto hi = static_cast<std::size_t>(it - s.begin());
  return (theta - s[hi - 1] <= s[hi] - theta) ? hi - 1 : hi;
}

// Angle where the dB level crosses `level` between samples i and j.
double crossing(const Pattern& pattern, std::size_t i, std::size_t j, double p_peak,
                double level) {
  const double di = relative_db(pattern.power[i], p_peak);
  const double dj = relative_db(pattern.power[j], p_peak);
  const double ti = pattern.grid[i], tj = pattern.grid[j];
  if (di == dj) return ti;
  return ti + (level - di) / (dj - di) * (tj - ti);
}

}  // namespace

std::string_view to_string(ZeroReason reason) {
  switch (reason) {
    case ZeroReason::None: return "none";
    case ZeroReason::Pointing: return "pointing";
    case ZeroReason::Timeout: return "timeout";
  }
  return "none";
}

std::optional<ZeroReason> parse_zero_reason(std::string_view name) {
  for (auto r : {ZeroReason::None, ZeroReason::Pointing, ZeroReason::Timeout}) {
    if (to_string(r) == name) return r;
  }
  return std::nullopt;
}

Peak peak(const Pattern& pattern) {
  check_pattern(pattern);
  const auto& p = pattern.power;
  const auto it = std::max_element(p.begin(), p.end());
  Peak out;
  out.index = static_cast<std::size_t>(it - p.begin());
  out.power = *it;
  out.theta = pattern.grid[out.index];
  const std::size_t i = out.index;
  if (i == 0 || i + 1 >= p.size()) return out;

  // Vertex of the parabola through the three samples around the argmax.
  const double x0 = pattern.grid[i - 1], x1 = pattern.grid[i], x2 = pattern.grid[i + 1];
  const double y0 = p[i - 1], y1 = p[i], y2 = p[i + 1];
  const double num = (x1 - x0) * (x1 - x0) * (y1 - y2) - (x1 - x2) * (x1 - x2) * (y1 - y0);
  const double den = (x1 - x0) * (y1 - y2) - (x1 - x2) * (y1 - y0);
  if (den == 0.0 || !std::isfinite(num / den)) return out;
  const double vertex = x1 - 0.5 * num / den;
  out.theta = std::clamp(vertex, x0, x2);
  return out;
}

MainlobeEdges mainlobe_edges(const Pattern& pattern, double theta_peak) {
  check_pattern(pattern);
  const double p_peak = *std::max_element(pattern.power.begin(), pattern.power.end());
  if (!(p_peak > 0.0)) throw ScoringError("pattern has zero peak power");
  const double threshold = kEdgeRatio * p_peak;
  const double level = 10.0 * std::log10(kEdgeRatio);
  const std::size_t ip = nearest_index(pattern.grid, theta_peak);

  MainlobeEdges edges{pattern.grid.start(), pattern.grid.end(), false, false};
  for (std::size_t i = ip; i-- > 0;) {
    if (pattern.power[i] < threshold) {
      edges.theta1 = crossing(pattern, i, i + 1, p_peak, level);
      edges.left_found = true;
      break;
    }
  }
  for (std::size_t i = ip + 1; i < pattern.power.size(); ++i) {
    if (pattern.power[i] < threshold) {
      edges.theta2 = crossing(pattern, i - 1, i, p_peak, level);
      edges.right_found = true;
      break;
    }
  }
  return edges;
}

double far_penalty(double worst_far_db) { return std::max(0.0, 15.0 + worst_far_db); }
double beamwidth_penalty(double width_deg) { return std::max(0.0, width_deg - 6.0); }
double near_penalty(double worst_near_db) { return std::max(0.0, 30.0 + worst_near_db); }

double max_relative_db(const Pattern& pattern, double lo, double hi, bool lo_open, bool hi_open) {
  check_pattern(pattern);
  const double p_peak = *std::max_element(pattern.power.begin(), pattern.power.end());
  if (!(p_peak > 0.0)) throw ScoringError("pattern has zero peak power");
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pattern.power.size(); ++i) {
    const double t = pattern.grid[i];
    const bool above_lo = lo_open ? t > lo + kAngleTol : t >= lo - kAngleTol;
    const bool below_hi = hi_open ? t < hi - kAngleTol : t <= hi + kAngleTol;
    if (above_lo && below_hi) worst = std::max(worst, relative_db(pattern.power[i], p_peak));
  }
  return worst;
}

Penalties penalties(const Pattern& pattern, double theta0, const MainlobeEdges& edges) {
  const double lo = pattern.grid.start(), hi = pattern.grid.end();
  const double far = std::max(max_relative_db(pattern, lo, theta0 - 30.0, false, true),
                              max_relative_db(pattern, theta0 + 30.0, hi, true, false));
  const double near = std::max(max_relative_db(pattern, theta0 - 30.0, edges.theta1),
                               max_relative_db(pattern, edges.theta2, theta0 + 30.0));
  return {far_penalty(far), beamwidth_penalty(edges.theta2 - edges.theta1), near_penalty(near)};
}

ScoreBreakdown case_score(const Pattern& pattern, double theta0, double elapsed_seconds,
                          const ScoringLimits& limits) {
  const Peak pk = peak(pattern);
  if (!(pk.power > 0.0)) throw ScoringError("pattern has zero peak power");
  const MainlobeEdges edges = mainlobe_edges(pattern, pk.theta);
  const Penalties pen = penalties(pattern, theta0, edges);

  ScoreBreakdown b;
  b.theta_peak = pk.theta;
  b.pointing_error = std::abs(pk.theta - theta0);
  b.W = edges.theta2 - edges.theta1;
  b.penalty_a = pen.a;
  b.penalty_b = pen.b;
  b.penalty_c = pen.c;
  if (b.pointing_error > limits.pointing_limit_deg) {
    b.zero_reason = ZeroReason::Pointing;
  } else if (elapsed_seconds > limits.time_limit_seconds) {
    b.zero_reason = ZeroReason::Timeout;
  }
  b.y = b.zero_reason != ZeroReason::None
            ? 0.0
            : std::clamp(1000.0 - 100.0 * pen.a - 80.0 * pen.b - 20.0 * pen.c, 0.0, 1000.0);
  return b;
}

double batch_score(std::span<const ScoreBreakdown> breakdowns) {
  if (breakdowns.empty()) throw std::invalid_argument("batch_score needs at least one case");
  double total = 0.0;
  for (const auto& b : breakdowns) total += b.y;
  return total / static_cast<double>(breakdowns.size());
}

}  // namespace beamq
