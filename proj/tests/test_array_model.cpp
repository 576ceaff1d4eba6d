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

#include <cmath>

#include "beamq/array_model.hpp"
#include "beamq/rng.hpp"
#include "oracles.hpp"

using namespace beamq;

TEST_CASE("element factor") {
  CHECK(element_factor_db(90.0) == 0.0);
  CHECK(element_factor_db(45.0) == doctest::Approx(-3.0).epsilon(1e-12));
  CHECK(element_factor_db(0.0) == doctest::Approx(-12.0).epsilon(1e-12));
  CHECK(element_factor_db(180.0) == doctest::Approx(-12.0).epsilon(1e-12));
  CHECK(element_factor_power(90.0) == 1.0);
  CHECK(element_factor_power(45.0) == doctest::Approx(std::pow(10.0, -0.3)).epsilon(1e-12));
  CHECK(element_factor_power(0.0) == doctest::Approx(0.0631).epsilon(1e-3));
  CHECK_THROWS_AS(element_factor_db(-0.1), std::domain_error);
  CHECK_THROWS_AS(element_factor_db(180.1), std::domain_error);
}

TEST_CASE("steering vector") {
  for (const auto& v : steering_vector(90.0, 3)) {
    CHECK(std::abs(v - cdouble(1.0, 0.0)) < 1e-15);
  }
  const auto s60 = steering_vector(60.0, 2);
  CHECK(std::abs(s60[0] - cdouble(0.0, 1.0)) < 1e-12);
  CHECK(std::abs(s60[1] - cdouble(-1.0, 0.0)) < 1e-12);
  CHECK(std::abs(steering_vector(0.0, 1)[0] - cdouble(-1.0, 0.0)) < 1e-12);
  for (const auto& v : steering_vector(37.0, 16)) CHECK(std::abs(std::abs(v) - 1.0) < 1e-14);
}

TEST_CASE("field sum and power examples") {
  const Excitation ex({0.0, 0.0}, {1.0, 1.0});
  CHECK(std::abs(field_sum(ex, 90.0) - cdouble(2.0, 0.0)) < 1e-12);
  CHECK(std::abs(field_sum(ex, 60.0) - cdouble(-1.0, 1.0)) < 1e-12);
  CHECK(power(ex, 90.0) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(power(ex, 60.0) == doctest::Approx(2.0 * std::pow(10.0, -12.0 / 90.0)).epsilon(1e-12));
  CHECK(power(ex, 60.0) == doctest::Approx(1.4713).epsilon(1e-4));
  const Excitation zero({1.3}, {0.0});
  CHECK(std::abs(field_sum(zero, 17.0)) == 0.0);
  CHECK(power(zero, 17.0) == 0.0);
}

TEST_CASE("excitation validation") {
  CHECK_THROWS(Excitation({0.0, 0.0}, {1.0}));
  CHECK_THROWS(Excitation({0.0}, {1.5}));
  CHECK_THROWS(Excitation({0.0}, {-0.1}));
  const Excitation ex({-0.5, 7.0}, {1.0, 0.5});
  for (double p : ex.phases()) {
    CHECK(p >= 0.0);
    CHECK(p < kTwoPi);
  }
  CHECK(ex.phases()[0] == doctest::Approx(kTwoPi - 0.5));
}

TEST_CASE("angle grid") {
  const AngleGrid g = AngleGrid::scoring_default();
  CHECK(g.size() == 3601);
  CHECK(g[0] == 0.0);
  CHECK(g[g.size() - 1] == 180.0);
  const AngleGrid odd(0.0, 1.0, 0.3);
  CHECK(odd.size() == 5);
  CHECK(odd[4] == 1.0);
  CHECK_THROWS(AngleGrid(0.0, 10.0, 0.0));
}

TEST_CASE("power matches the direct oracle") {
  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + static_cast<int>(rng.uniform_int(0, 31));
    std::vector<double> a(n), b(n);
    for (int k = 0; k < n; ++k) {
      a[k] = rng.uniform(0.0, kTwoPi);
      b[k] = rng.uniform();
    }
    const Excitation ex(a, b);
    for (int t = 0; t < 10; ++t) {
      const double theta = rng.uniform(0.0, 180.0);
      CHECK(oracle::rel_err(power(ex, theta), oracle::power(a, b, theta)) < 1e-12);
      CHECK(oracle::rel_err(power(ex, theta),
                            element_factor_power(theta) * std::norm(field_sum(ex, theta))) < 1e-12);
    }
    const AngleGrid grid(0.0, 180.0, 0.7);
    const Pattern p = pattern(ex, grid);
    REQUIRE(p.power.size() == grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      CHECK(p.power[i] >= 0.0);
      const double ref = oracle::power(a, b, grid[i]);
      CHECK(std::abs(p.power[i] - ref) <= 1e-10 * std::max(1.0, ref));
    }
  }
}

TEST_CASE("amplitude scaling scales power by k^2") {
  Rng rng(9);
  std::vector<double> a(12), b(12);
  for (int k = 0; k < 12; ++k) {
    a[k] = rng.uniform(0.0, kTwoPi);
    b[k] = rng.uniform(0.2, 1.0);
  }
  const double scale = 0.37;
  std::vector<double> bs = b;
  for (double& v : bs) v *= scale;
  for (int t = 0; t < 10; ++t) {
    const double theta = rng.uniform(0.0, 180.0);
    CHECK(oracle::rel_err(power(Excitation(a, bs), theta),
                          scale * scale * power(Excitation(a, b), theta)) < 1e-12);
  }
}

TEST_CASE("steered uniform excitation") {
  for (double theta0 : {45.0, 71.3, 90.0, 134.0}) {
    const Excitation ex = steered_uniform(32, theta0);
    CHECK(std::abs(std::abs(field_sum(ex, theta0)) - 32.0) < 1e-12);
    const AngleGrid grid = AngleGrid::scoring_default();
    const Pattern p = pattern(ex, grid);
    // The array factor peaks at theta0; the element factor tilts the product
    // slightly toward broadside, by about 0.1 degree at the range ends.
    const auto it = std::max_element(p.power.begin(), p.power.end());
    const double at = grid[static_cast<std::size_t>(it - p.power.begin())];
    CHECK(std::abs(at - theta0) <= 0.15 + 1e-9);
    CHECK(std::abs(at - 90.0) <= std::abs(theta0 - 90.0) + 1e-9);
  }
}

TEST_CASE("broadside symmetry") {
  const Excitation ex = Excitation::with_phases(std::vector<double>(9, 0.0));
  for (double d : {0.5, 13.0, 44.4, 89.9}) {
    CHECK(std::abs(std::abs(field_sum(ex, 90.0 + d)) - std::abs(field_sum(ex, 90.0 - d))) < 1e-12);
  }
}

TEST_CASE("single-point and empty patterns") {
  const Excitation ex({0.3, 1.1}, {0.9, 0.4});
  const AngleGrid one(33.0, 33.0, 1.0);
  REQUIRE(one.size() == 1);
  CHECK(pattern(ex, one).power[0] == doctest::Approx(power(ex, 33.0)).epsilon(1e-12));
  const Excitation empty({0.0, 0.0}, {0.0, 0.0});
  for (double v : pattern(empty, AngleGrid(0.0, 180.0, 5.0)).power) CHECK(v == 0.0);
}
