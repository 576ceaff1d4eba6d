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

// Independent reference computations for the test suites. Nothing here
// calls into the library's numerical code paths.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <vector>

#include "beamq/common.hpp"
#include "beamq/ising.hpp"
#include "beamq/rng.hpp"

namespace oracle {

using beamq::cdouble;
inline constexpr double kPi = std::numbers::pi;

inline double element_power(double theta_deg) {
  const double u = (theta_deg - 90.0) / 90.0;
  return std::pow(10.0, -std::min(12.0 * u * u, 30.0) / 10.0);
}

/// E(theta) |sum_n beta_n exp(i(alpha_n + pi n cos theta))|^2, n from 1.
inline double power(std::span<const double> phases, std::span<const double> amplitudes,
                    double theta_deg) {
  const double c = std::cos(theta_deg * kPi / 180.0);
  cdouble f{0.0, 0.0};
  for (std::size_t k = 0; k < phases.size(); ++k) {
    const double n = static_cast<double>(k + 1);
    f += amplitudes[k] * std::exp(cdouble(0.0, phases[k] + kPi * n * c));
  }
  return element_power(theta_deg) * std::norm(f);
}

/// Power of the raw (pre-snap) per-antenna fields z_n = c . x_n.
inline double raw_power(std::span<const cdouble> coefficients, std::span<const beamq::Spin> spins,
                        double theta_deg) {
  const std::size_t l = coefficients.size();
  const std::size_t n_ant = spins.size() / l;
  const double c = std::cos(theta_deg * kPi / 180.0);
  cdouble f{0.0, 0.0};
  for (std::size_t n = 0; n < n_ant; ++n) {
    cdouble z{0.0, 0.0};
    for (std::size_t j = 0; j < l; ++j) z += coefficients[j] * static_cast<double>(spins[n * l + j]);
    f += z * std::exp(cdouble(0.0, kPi * static_cast<double>(n + 1) * c));
  }
  return element_power(theta_deg) * std::norm(f);
}

/// Element-wise phase coupling:
/// J[(n,l),(m,k)] = sum_t w_t E_t Re(e^{i pi (n-m) cos theta_t} c_l conj(c_k)),
/// with w = (1 - blend) at theta0 and -blend * w_j at each sidelobe sample.
inline std::vector<double> phase_coupling(std::span<const cdouble> coefficients, double theta0,
                                          std::span<const beamq::WeightedAngle> sidelobes,
                                          double blend, int n_antennas) {
  struct Term {
    double theta;
    double w;
  };
  std::vector<Term> terms{{theta0, 1.0 - blend}};
  for (const auto& s : sidelobes) terms.push_back({s.theta_deg, -blend * s.weight});
  const std::size_t l = coefficients.size();
  const std::size_t k_total = static_cast<std::size_t>(n_antennas) * l;
  std::vector<double> j(k_total * k_total, 0.0);
  for (std::size_t a = 0; a < k_total; ++a) {
    for (std::size_t b = 0; b < k_total; ++b) {
      const double dn = static_cast<double>(a / l) - static_cast<double>(b / l);
      const cdouble cc = coefficients[a % l] * std::conj(coefficients[b % l]);
      double v = 0.0;
      for (const auto& t : terms) {
        const double c = std::cos(t.theta * kPi / 180.0);
        v += t.w * element_power(t.theta) * (std::exp(cdouble(0.0, kPi * dn * c)) * cc).real();
      }
      j[a * k_total + b] = v;
    }
  }
  return j;
}

/// Straight -s^T J s - h^T s + offset.
inline double energy(const beamq::IsingProblem& p, std::span<const beamq::Spin> s) {
  double e = p.offset;
  for (std::size_t i = 0; i < p.size; ++i) {
    e -= p.bias[i] * s[i];
    for (std::size_t k = 0; k < p.size; ++k) e -= s[i] * p.coupling[i * p.size + k] * s[k];
  }
  return e;
}

inline beamq::SpinVector random_spins(beamq::Rng& rng, std::size_t k) {
  beamq::SpinVector s(k);
  for (auto& v : s) v = rng.bernoulli() ? 1 : -1;
  return s;
}

inline beamq::IsingProblem random_problem(beamq::Rng& rng, std::size_t k, bool with_bias) {
  auto p = beamq::IsingProblem::zeros(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t m = i + 1; m < k; ++m) {
      const double v = rng.normal();
      p.coupling[i * k + m] = v;
      p.coupling[m * k + i] = v;
    }
    if (with_bias) p.bias[i] = rng.normal();
  }
  return p;
}

/// |a - b| relative to the larger magnitude (0 when both vanish).
inline double rel_err(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

/// Max elementwise difference relative to the larger max-norm.
inline double matrix_rel_err(std::span<const double> a, std::span<const double> b) {
  double diff = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff = std::max(diff, std::abs(a[i] - b[i]));
    scale = std::max({scale, std::abs(a[i]), std::abs(b[i])});
  }
  return scale == 0.0 ? diff : diff / scale;
}

}  // namespace oracle
