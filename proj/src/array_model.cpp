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

#include "beamq/array_model.hpp"

#include <algorithm>
#include <string>

#include "beamq/simd/kernels.hpp"

namespace beamq {
namespace {

void check_angle(double theta_deg) {
  if (!(theta_deg >= 0.0 && theta_deg <= 180.0)) {
    throw std::domain_error("angle outside [0, 180] degrees: " + std::to_string(theta_deg));
  }
}

}  // namespace

Excitation::Excitation(std::vector<double> phases, std::vector<double> amplitudes)
    : phases_(std::move(phases)), amplitudes_(std::move(amplitudes)) {
  if (phases_.size() != amplitudes_.size()) {
    throw std::invalid_argument("excitation phase/amplitude length mismatch");
  }
  for (double& p : phases_) {
    if (!std::isfinite(p)) throw std::invalid_argument("non-finite phase");
    p = wrap_two_pi(p);
  }
  for (double a : amplitudes_) {
    if (!(a >= 0.0 && a <= 1.0)) throw std::invalid_argument("amplitude outside [0, 1]");
  }
}

Excitation Excitation::with_phases(std::vector<double> phases) {
  std::vector<double> ones(phases.size(), 1.0);
  return {std::move(phases), std::move(ones)};
}

std::vector<cdouble> Excitation::complex_weights() const {
  std::vector<cdouble> w(size());
  for (std::size_t n = 0; n < size(); ++n) w[n] = std::polar(amplitudes_[n], phases_[n]);
  return w;
}

AngleGrid::AngleGrid(double start_deg, double end_deg, double step_deg)
    : start_(start_deg), end_(end_deg), step_(step_deg) {
  if (!(step_deg > 0.0)) throw ConfigError("grid step must be positive");
  if (!(start_deg >= 0.0 && end_deg <= 180.0 && start_deg <= end_deg)) {
    throw ConfigError("grid must satisfy 0 <= start <= end <= 180");
  }
  const double span = end_deg - start_deg;
  const auto count = static_cast<std::size_t>(std::floor(span / step_deg + 1e-9));
  samples_.reserve(count + 2);
  for (std::size_t i = 0; i <= count; ++i) {
    samples_.push_back(start_deg + static_cast<double>(i) * step_deg);
  }
  // Snap the last sample onto `end` when it is within rounding, else append.
  if (end_deg - samples_.back() > 1e-9 * std::max(1.0, step_deg)) {
    samples_.push_back(end_deg);
  } else {
    samples_.back() = end_deg;
  }
}

double element_factor_db(double theta_deg) {
  check_angle(theta_deg);
  const double u = (theta_deg - 90.0) / 90.0;
  return -std::min(12.0 * u * u, 30.0);
}

double element_factor_power(double theta_deg) {
  return std::pow(10.0, element_factor_db(theta_deg) / 10.0);
}

std::vector<cdouble> steering_vector(double theta_deg, int n_antennas) {
  check_angle(theta_deg);
  if (n_antennas < 1) throw std::invalid_argument("n_antennas must be >= 1");
  const double c = std::cos(deg_to_rad(theta_deg));
  std::vector<cdouble> e(static_cast<std::size_t>(n_antennas));
  for (int n = 1; n <= n_antennas; ++n) e[n - 1] = std::polar(1.0, kPi * n * c);
  return e;
}

cdouble field_sum(const Excitation& excitation, double theta_deg) {
  check_angle(theta_deg);
  const double c = std::cos(deg_to_rad(theta_deg));
  cdouble f{0.0, 0.0};
  const auto& a = excitation.phases();
  const auto& b = excitation.amplitudes();
  for (std::size_t n = 0; n < excitation.size(); ++n) {
    f += std::polar(b[n], a[n] + kPi * static_cast<double>(n + 1) * c);
  }
  return f;
}

double power(const Excitation& excitation, double theta_deg) {
  const double p = element_factor_power(theta_deg) * std::norm(field_sum(excitation, theta_deg));
  return std::max(p, 0.0);
}

Pattern pattern(const Excitation& excitation, const AngleGrid& grid) {
  const std::size_t m = grid.size();
  const std::size_t n = excitation.size();
  std::vector<double> w_re(m), w_im(m), f_re(m), f_im(m);
  for (std::size_t j = 0; j < m; ++j) {
    check_angle(grid[j]);
    const double arg = kPi * std::cos(deg_to_rad(grid[j]));
    w_re[j] = std::cos(arg);
    w_im[j] = std::sin(arg);
  }
  std::vector<double> c_re(n), c_im(n);
  for (std::size_t k = 0; k < n; ++k) {
    c_re[k] = excitation.amplitudes()[k] * std::cos(excitation.phases()[k]);
    c_im[k] = excitation.amplitudes()[k] * std::sin(excitation.phases()[k]);
  }
  simd::active_kernels().poly_eval(c_re.data(), c_im.data(), n, w_re.data(), w_im.data(), m,
                                   f_re.data(), f_im.data());
  Pattern out{grid, std::vector<double>(m)};
  for (std::size_t j = 0; j < m; ++j) {
    const double p = element_factor_power(grid[j]) * (f_re[j] * f_re[j] + f_im[j] * f_im[j]);
    out.power[j] = std::max(p, 0.0);
  }
  return out;
}

Excitation steered_uniform(int n_antennas, double theta0_deg) {
  check_angle(theta0_deg);
  const double c = std::cos(deg_to_rad(theta0_deg));
  std::vector<double> phases(static_cast<std::size_t>(n_antennas));
  for (int n = 1; n <= n_antennas; ++n) phases[n - 1] = -kPi * n * c;
  return Excitation::with_phases(std::move(phases));
}

}  // namespace beamq
