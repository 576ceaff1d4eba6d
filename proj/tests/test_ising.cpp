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
#include "beamq/ising.hpp"
#include "beamq/solvers.hpp"
#include "oracles.hpp"

using namespace beamq;

namespace {

double objective(std::span<const double> phases, std::span<const double> beta, double theta0,
                 std::span<const WeightedAngle> side, double blend) {
  double p_side = 0.0;
  for (const auto& s : side) p_side += s.weight * oracle::power(phases, beta, s.theta_deg);
  return blend * p_side - (1.0 - blend) * oracle::power(phases, beta, theta0);
}

}  // namespace

TEST_CASE("sidelobe samples") {
  SidelobeConfig c;
  c.theta0 = 90.0;
  const auto s = sidelobe_samples(c);
  // 0..180 at 1 degree minus the 9 samples with |theta - 90| < 5.
  CHECK(s.size() == 181 - 9);
  for (const auto& w : s) {
    CHECK(std::abs(w.theta_deg - 90.0) >= 5.0);
    CHECK(w.weight == (std::abs(w.theta_deg - 90.0) <= 30.0 ? 10.0 : 1.0));
  }
  c.guard_halfwidth = 29.0;
  c.sample_step = 200.0;  // grid {0, 180}
  CHECK(sidelobe_samples(c).size() == 2);
  SidelobeConfig bad;
  bad.blend_weight = 1.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = SidelobeConfig{};
  bad.guard_halfwidth = 30.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = SidelobeConfig{};
  bad.near_weight = 0.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("phase field vector") {
  const auto v1 = phase_field_vector(phase_code(1), 90.0, 1);
  REQUIRE(v1.size() == 1);
  CHECK(std::abs(v1[0] - cdouble(1.0, 0.0)) < 1e-15);
  const auto v2 = phase_field_vector(phase_code(1), 60.0, 2);
  const double g = std::sqrt(element_factor_power(60.0));
  CHECK(std::abs(v2[0] - g * cdouble(0.0, 1.0)) < 1e-12);
  CHECK(std::abs(v2[1] - g * cdouble(-1.0, 0.0)) < 1e-12);

  // v^T s equals sqrt(E) * field_sum of the decoded excitation.
  Rng rng(3);
  for (int b = 1; b <= 2; ++b) {
    const PhaseCode& code = phase_code(b);
    const auto v = phase_field_vector(code, 71.0, 5);
    for (int t = 0; t < 20; ++t) {
      const SpinVector s = oracle::random_spins(rng, v.size());
      cdouble acc{0.0, 0.0};
      for (std::size_t i = 0; i < v.size(); ++i) acc += v[i] * static_cast<double>(s[i]);
      const Excitation ex = Excitation::with_phases(decode_phases(code, s));
      CHECK(std::abs(acc - std::sqrt(element_factor_power(71.0)) * field_sum(ex, 71.0)) < 1e-10);
    }
  }
}

TEST_CASE("rank one coupling") {
  CHECK(rank_one_coupling(std::vector<cdouble>{{1.0, 0.0}}) == std::vector<double>{1.0});
  const auto j = rank_one_coupling(std::vector<cdouble>{{1.0, 0.0}, {0.0, 1.0}});
  CHECK(j == std::vector<double>{1.0, 0.0, 0.0, 1.0});
  Rng rng(4);
  std::vector<cdouble> v(9);
  for (auto& z : v) z = {rng.normal(), rng.normal()};
  const auto jr = rank_one_coupling(v);
  for (int t = 0; t < 50; ++t) {
    const SpinVector s = oracle::random_spins(rng, v.size());
    double q = 0.0;
    cdouble f{0.0, 0.0};
    for (std::size_t a = 0; a < v.size(); ++a) {
      f += v[a] * static_cast<double>(s[a]);
      for (std::size_t b = 0; b < v.size(); ++b) q += s[a] * jr[a * v.size() + b] * s[b];
    }
    CHECK(oracle::rel_err(q, std::norm(f)) < 1e-12);
  }
}

TEST_CASE("phase coupling matches the element-wise reference") {
  for (int n : {2, 8, 32}) {
    for (int b = 1; b <= 4; ++b) {
      SidelobeConfig c;
      c.theta0 = 63.0 + b;
      const PhaseCode& code = phase_code(b);
      const IsingProblem p = phase_problem(code, c, n);
      CHECK_NOTHROW(p.validate());
      CHECK(p.size == static_cast<std::size_t>(n * code.spins_per_antenna));
      for (double h : p.bias) CHECK(h == 0.0);
      CHECK(p.offset == 0.0);
      const auto side = sidelobe_samples(c);
      const auto ref = oracle::phase_coupling(code.coefficients, c.theta0, side, c.blend_weight, n);
      CHECK(oracle::matrix_rel_err(p.coupling, ref) < 1e-12);
      for (std::size_t r = 0; r < p.size; ++r) {
        for (std::size_t q = 0; q < r; ++q) CHECK(p.j(r, q) == p.j(q, r));
      }
    }
  }
}

TEST_CASE("phase energy equals the weighted power difference") {
  Rng rng(21);
  for (int b = 1; b <= 4; ++b) {
    SidelobeConfig c;
    c.theta0 = 104.0;
    c.blend_weight = 0.3;
    const PhaseCode& code = phase_code(b);
    const int n = 6;
    const IsingProblem p = phase_problem(code, c, n);
    const auto side = sidelobe_samples(c);
    for (int t = 0; t < 100; ++t) {
      const SpinVector s = oracle::random_spins(rng, p.size);
      double side_power = 0.0;
      for (const auto& w : side) side_power += w.weight * oracle::raw_power(code.coefficients, s, w.theta_deg);
      const double expect = c.blend_weight * side_power -
                            (1.0 - c.blend_weight) * oracle::raw_power(code.coefficients, s, c.theta0);
      CHECK(oracle::rel_err(energy(p, s), expect) < 1e-9);
      CHECK(oracle::rel_err(energy(p, s), oracle::energy(p, s)) < 1e-12);
      if (b <= 2) {
        const auto phases = decode_phases(code, s);
        const std::vector<double> ones(n, 1.0);
        CHECK(oracle::rel_err(energy(p, s), objective(phases, ones, c.theta0, side, c.blend_weight)) <
              1e-9);
      }
    }
  }
}

TEST_CASE("degenerate phase problems") {
  // Main term only: J = (1 - blend) Re(v0 v0^H), ground states +-(1, 1).
  const PhaseCode& code = phase_code(1);
  const IsingProblem p = phase_problem(code, 90.0, {}, 0.5, 2);
  const auto v0 = phase_field_vector(code, 90.0, 2);
  const auto j0 = rank_one_coupling(v0);
  for (std::size_t i = 0; i < 4; ++i) CHECK(p.coupling[i] == doctest::Approx(0.5 * j0[i]));
  const auto [s, e] = brute_force(p);
  CHECK(s == SpinVector{1, 1});
  CHECK(energy(p, SpinVector{-1, -1}) == doctest::Approx(e));
  CHECK(e == doctest::Approx(-0.5 * 4.0));

  // blend -> 0 limit leaves only the mainlobe term.
  SidelobeConfig c;
  c.theta0 = 75.0;
  c.blend_weight = 1e-9;
  const IsingProblem near_main = phase_problem(phase_code(2), c, 3);
  const auto jm = rank_one_coupling(phase_field_vector(phase_code(2), 75.0, 3));
  CHECK(oracle::matrix_rel_err(near_main.coupling, jm) < 1e-6);
}

TEST_CASE("augmented construction") {
  const AmpCode a2 = build_amp_code(2);
  CHECK(augmented_coefficients(a2) == std::vector<double>{-0.25, -0.125, 0.375});
  // With unit drive the augmented vector is 1_N (x) c'.
  const std::vector<cdouble> ones(3, cdouble(1.0, 0.0));
  const auto v = augmented_field_vector(ones, a2);
  const auto cp = augmented_coefficients(a2);
  REQUIRE(v.size() == 9);
  for (std::size_t i = 0; i < v.size(); ++i) CHECK(v[i] == cdouble(cp[i % 3], 0.0));
}

TEST_CASE("amplitude energy contract") {
  Rng rng(77);
  for (int ba : {1, 2, 4}) {
    const AmpCode code = build_amp_code(ba);
    const int n = 3;
    std::vector<double> phases(n);
    for (double& a : phases) a = rng.uniform(0.0, kTwoPi);
    SidelobeConfig c;
    c.theta0 = 80.0;
    const IsingProblem p = amplitude_problem(code, phases, c, n);
    CHECK_NOTHROW(p.validate());
    CHECK(p.size == static_cast<std::size_t>(n * ba));
    const auto side = sidelobe_samples(c);
    for (int t = 0; t < 200; ++t) {
      const SpinVector s = oracle::random_spins(rng, p.size);
      const auto beta = decode_amplitudes(code, s);
      const double expect = objective(phases, beta, c.theta0, side, c.blend_weight);
      const double scale = std::max(1.0, std::abs(expect));
      CHECK(std::abs(energy(p, s) - expect) / scale < 1e-9);
    }
    // All +1 means beta = 0: zero field, zero objective.
    CHECK(std::abs(energy(p, SpinVector(p.size, 1))) < 1e-9);
  }
  CHECK_THROWS(amplitude_problem(build_amp_code(2), std::vector<double>{0.0}, SidelobeConfig{}, 2));
}

TEST_CASE("single antenna amplitude ground state maximizes the mainlobe") {
  const AmpCode code = build_amp_code(1);
  const std::vector<double> phases{0.0};
  const IsingProblem p = amplitude_problem(code, phases, 90.0, {}, 0.5, 1);
  const auto [s, e] = brute_force(p);
  CHECK(decode_amplitudes(code, s)[0] == 0.5);
  CHECK(e == doctest::Approx(-0.5 * 0.25));
}

TEST_CASE("energy examples") {
  IsingProblem p = IsingProblem::zeros(2);
  p.coupling = {0.0, 1.0, 1.0, 0.0};
  CHECK(energy(p, SpinVector{1, 1}) == -2.0);
  IsingProblem q = IsingProblem::zeros(1);
  q.bias = {1.0};
  CHECK(energy(q, SpinVector{1}) == -1.0);
  IsingProblem r = IsingProblem::zeros(2);
  r.offset = 5.0;
  CHECK(energy(r, SpinVector{1, -1}) == 5.0);
  CHECK_THROWS(energy(r, SpinVector{1}));
}

TEST_CASE("validation") {
  IsingProblem p = IsingProblem::zeros(2);
  p.coupling = {0.0, 1.0, 0.5, 0.0};
  CHECK_THROWS(p.validate());
  p.coupling = {0.0, 1.0, 1.0, std::nan("")};
  CHECK_THROWS(p.validate());
  p.coupling = {0.0, 1.0, 1.0};
  CHECK_THROWS(p.validate());
}
