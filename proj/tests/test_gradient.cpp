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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "beamq/encoding.hpp"
#include "beamq/gradient.hpp"
#include "oracles.hpp"

using namespace beamq;

namespace {

// Loss recomputed from the oracle power.
double oracle_loss(const std::vector<double>& a, const std::vector<double>& b,
                   const RatioObjective& obj) {
  const double main = obj.blend_weight * oracle::power(a, b, obj.theta0);
  if (!(main > 0.0)) return std::numeric_limits<double>::infinity();
  double side = 0.0;
  for (const auto& s : obj.sidelobes) side += s.weight * oracle::power(a, b, s.theta_deg);
  return side / main;
}

std::vector<double> steered(int n, double theta0) {
  std::vector<double> a(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) a[static_cast<std::size_t>(k)] = -oracle::kPi * (k + 1) * std::cos(theta0 * oracle::kPi / 180.0);
  return a;
}

RatioObjective random_objective(Rng& rng, int n_angles) {
  RatioObjective obj;
  obj.theta0 = rng.uniform(45.0, 134.0);
  obj.blend_weight = rng.uniform(0.1, 0.9);
  for (int j = 0; j < n_angles; ++j) obj.sidelobes.push_back({rng.uniform(0.0, 180.0), rng.uniform(0.5, 10.0)});
  return obj;
}

}  // namespace

TEST_CASE("ratio_loss matches the oracle on fixed examples") {
  const auto a = steered(8, 70.0);
  const std::vector<double> ones(8, 1.0);
  RatioObjective empty{70.0, {}, 0.5};
  CHECK(ratio_loss(a, ones, empty) == 0.0);

  const std::vector<double> zeros(8, 0.0);
  CHECK(std::isinf(ratio_loss(a, zeros, empty)));

  // Two elements, broadside, one sample at 60 degrees with weight 1.
  // P(90) = 4, P(60) = E(60) |1 + e^{i pi/2}|^2 = 2 E(60).
  RatioObjective two{90.0, {{60.0, 1.0}}, 0.5};
  const std::vector<double> a2{0.0, 0.0}, b2{1.0, 1.0};
  const double expected = 2.0 * oracle::element_power(60.0) / (0.5 * 4.0);
  CHECK(ratio_loss(a2, b2, two) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(expected == doctest::Approx(0.7357).epsilon(1e-4));
}

TEST_CASE("ratio_loss agrees with the oracle on random instances") {
  Rng rng(7);
  for (int t = 0; t < 50; ++t) {
    const auto obj = random_objective(rng, 6);
    std::vector<double> a(10), b(10);
    for (auto& x : a) x = rng.uniform(0.0, 2.0 * oracle::kPi);
    for (auto& x : b) x = rng.uniform(0.0, 1.0);
    CHECK(oracle::rel_err(ratio_loss(a, b, obj), oracle_loss(a, b, obj)) < 1e-12);
  }
}

TEST_CASE("SidelobeConfig overload uses the sampled angle set") {
  SidelobeConfig cfg;
  cfg.theta0 = 100.0;
  const auto a = steered(16, 100.0);
  const std::vector<double> ones(16, 1.0);
  CHECK(ratio_loss(a, ones, cfg) == ratio_loss(a, ones, RatioObjective::from_config(cfg)));
}

TEST_CASE("analytic gradients match central finite differences") {
  Rng rng(11);
  constexpr double h = 1e-6;
  for (int t = 0; t < 50; ++t) {
    const auto obj = random_objective(rng, 5);
    std::vector<double> a(8), b(8);
    for (auto& x : a) x = rng.uniform(0.0, 2.0 * oracle::kPi);
    for (auto& x : b) x = rng.uniform(0.2, 1.0);
    const LossGradient g = loss_gradients(a, b, obj);
    CHECK(oracle::rel_err(g.loss, oracle_loss(a, b, obj)) < 1e-12);

    std::vector<double> fd_a(8), fd_b(8);
    for (std::size_t k = 0; k < 8; ++k) {
      auto ap = a, am = a;
      ap[k] += h;
      am[k] -= h;
      fd_a[k] = (oracle_loss(ap, b, obj) - oracle_loss(am, b, obj)) / (2 * h);
      auto bp = b, bm = b;
      bp[k] += h;
      bm[k] -= h;
      fd_b[k] = (oracle_loss(a, bp, obj) - oracle_loss(a, bm, obj)) / (2 * h);
    }
    // Relative to the gradient's max norm, so tiny components do not dominate.
    CHECK(oracle::matrix_rel_err(g.d_phases, fd_a) < 1e-5);
    CHECK(oracle::matrix_rel_err(g.d_amplitudes, fd_b) < 1e-5);
  }
}

TEST_CASE("power gradient: global phase invariance and aligned amplitudes") {
  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    std::vector<double> a(12), b(12);
    for (auto& x : a) x = rng.uniform(0.0, 2.0 * oracle::kPi);
    for (auto& x : b) x = rng.uniform(0.0, 1.0);
    const double theta = rng.uniform(0.0, 180.0);
    const auto g = power_gradient(a, b, theta);
    CHECK(oracle::rel_err(g.loss, oracle::power(a, b, theta)) < 1e-12);
    const double sum = std::accumulate(g.d_phases.begin(), g.d_phases.end(), 0.0);
    CHECK(std::abs(sum) < 1e-9 * (1.0 + g.loss));
  }
  // Steered, unit amplitudes: F = N at theta0, so dP/dbeta_n = 2 N E(theta0).
  const int n = 16;
  const double theta0 = 75.0;
  const auto g = power_gradient(steered(n, theta0), std::vector<double>(n, 1.0), theta0);
  for (double d : g.d_amplitudes) {
    CHECK(d == doctest::Approx(2.0 * n * oracle::element_power(theta0)).epsilon(1e-10));
  }
  for (double d : g.d_phases) CHECK(std::abs(d) < 1e-9);
}

TEST_CASE("loss gradients are zero where the loss is infinite") {
  RatioObjective obj{90.0, {{40.0, 1.0}}, 0.5};
  const auto g = loss_gradients(std::vector<double>(4, 0.0), std::vector<double>(4, 0.0), obj);
  CHECK(std::isinf(g.loss));
  for (double d : g.d_phases) CHECK(d == 0.0);
  for (double d : g.d_amplitudes) CHECK(d == 0.0);
  CHECK_THROWS_AS(loss_gradients(std::vector<double>(3, 0.0), std::vector<double>(4, 1.0), obj),
                  std::invalid_argument);
}

TEST_CASE("adam_minimize converges on a quadratic bowl") {
  const ObjectiveFn bowl = [](std::span<const double> x, std::span<double> g) {
    g[0] = 2.0 * (x[0] - 3.0);
    return (x[0] - 3.0) * (x[0] - 3.0);
  };
  AdamConfig cfg;
  const auto r = adam_minimize({0.0}, bowl, {}, cfg);
  CHECK(r.x[0] == doctest::Approx(3.0).epsilon(1e-3));
  CHECK(r.iterations == cfg.iterations);
  CHECK(r.loss <= r.initial_loss);
}

TEST_CASE("adam_minimize respects box bounds") {
  const ObjectiveFn lin = [](std::span<const double> x, std::span<double> g) {
    g[0] = -1.0;
    return -x[0];
  };
  const auto r = adam_minimize({0.2}, lin, {{0.0}, {1.0}}, AdamConfig{});
  CHECK(r.x[0] == 1.0);
  // An out-of-box start is projected.
  const auto r2 = adam_minimize({5.0}, lin, {{0.0}, {1.0}}, AdamConfig{});
  CHECK(r2.initial_loss == -1.0);
  CHECK_THROWS_AS(adam_minimize({0.0, 0.0}, lin, {{0.0}, {1.0}}, AdamConfig{}),
                  std::invalid_argument);
}

TEST_CASE("adam_minimize keeps the best iterate and is deterministic") {
  Rng rng(5);
  const auto obj = random_objective(rng, 8);
  const ObjectiveFn fn = [&](std::span<const double> x, std::span<double> g) {
    const std::vector<double> ones(x.size(), 1.0);
    const auto lg = loss_gradients(x, ones, obj);
    std::copy(lg.d_phases.begin(), lg.d_phases.end(), g.begin());
    return lg.loss;
  };
  std::vector<double> x0(12);
  for (auto& x : x0) x = rng.uniform(0.0, 6.0);
  AdamConfig cfg;
  cfg.learning_rate = 0.5;  // large steps make the loss non-monotone
  const auto r1 = adam_minimize(x0, fn, {}, cfg);
  const auto r2 = adam_minimize(x0, fn, {}, cfg);
  CHECK(r1.x == r2.x);
  CHECK(r1.loss == r2.loss);
  CHECK(r1.loss <= r1.initial_loss);
  std::vector<double> g(12);
  CHECK(fn(r1.x, g) == r1.loss);
}

TEST_CASE("adam_minimize with zero iterations returns the start") {
  const ObjectiveFn f = [](std::span<const double> x, std::span<double> g) {
    g[0] = 1.0;
    return x[0];
  };
  AdamConfig cfg;
  cfg.iterations = 0;
  const auto r = adam_minimize({0.7}, f, {}, cfg);
  CHECK(r.x[0] == 0.7);
  CHECK(r.iterations == 0);
  cfg.learning_rate = 0.0;
  CHECK_THROWS_AS(adam_minimize({0.7}, f, {}, cfg), ConfigError);
}

TEST_CASE("amplitude_refine stays in the box and never worsens the loss") {
  Rng rng(21);
  for (int t = 0; t < 10; ++t) {
    const auto obj = random_objective(rng, 10);
    std::vector<double> a(8), b(8);
    for (auto& x : a) x = snap_phase(rng.uniform(0.0, 6.3), 2);
    for (auto& x : b) x = rng.uniform(0.0, 1.0);
    AdamConfig cfg;
    cfg.iterations = 100;
    const auto r = amplitude_refine(a, b, obj, cfg);
    CHECK(r.loss <= r.initial_loss);
    for (double x : r.x) {
      CHECK(x >= 0.0);
      CHECK(x <= 1.0);
    }
  }
}

TEST_CASE("amplitude_refine re-seeds an all-zero start") {
  RatioObjective obj{90.0, {{50.0, 1.0}, {130.0, 1.0}}, 0.5};
  const auto r = amplitude_refine(std::vector<double>(6, 0.0), std::vector<double>(6, 0.0), obj,
                                  AdamConfig{});
  CHECK(std::isfinite(r.initial_loss));
  CHECK(std::isfinite(r.loss));
}

TEST_CASE("amplitude_refine leaves a stationary point in place") {
  // One element: the ratio does not depend on its amplitude at all.
  RatioObjective obj{80.0, {{30.0, 2.0}, {150.0, 1.0}}, 0.4};
  const std::vector<double> a{0.3}, b{0.6};
  const auto r = amplitude_refine(a, b, obj, AdamConfig{});
  CHECK(r.x[0] == doctest::Approx(0.6).epsilon(1e-6));
}

TEST_CASE("classical_branch produces snapped, bounded candidates") {
  SidelobeConfig cfg;
  cfg.theta0 = 110.0;
  const auto obj = RatioObjective::from_config(cfg);
  AdamConfig adam;
  adam.iterations = 60;
  adam.seed = 9;

  CHECK(classical_branch({16, 2, false}, obj, adam, 0).empty());

  const auto phase_only = classical_branch({16, 2, false}, obj, adam, 3);
  REQUIRE(phase_only.size() == 3);
  for (const auto& c : phase_only) {
    CHECK(c.amplitudes.empty());
    CHECK(c.spins.empty());
    CHECK(c.provenance == "classical");
    REQUIRE(c.phases.size() == 16);
    for (double p : c.phases) CHECK(snap_phase(p, 2) == p);
    CHECK(c.energy == doctest::Approx(ratio_loss(c.phases, std::vector<double>(16, 1.0), obj)));
  }

  const auto with_amp = classical_branch({16, 3, true}, obj, adam, 2);
  REQUIRE(with_amp.size() == 2);
  for (const auto& c : with_amp) {
    REQUIRE(c.amplitudes.size() == 16);
    for (double b : c.amplitudes) {
      CHECK(b >= 0.0);
      CHECK(b <= 1.0);
    }
    for (double p : c.phases) CHECK(snap_phase(p, 3) == p);
  }

  const auto again = classical_branch({16, 3, true}, obj, adam, 2);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(again[i].phases == with_amp[i].phases);
    CHECK(again[i].amplitudes == with_amp[i].amplitudes);
  }
  CHECK_THROWS_AS(classical_branch({16, 5, false}, obj, adam, 1), ConfigError);
}
