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

#include "beamq/ising.hpp"

#include <algorithm>

#include "beamq/array_model.hpp"
#include "beamq/simd/kernels.hpp"

namespace beamq {
namespace {

// Blended antenna-factor Gram matrix A = (1-blend) E0 e0 e0^H
// - blend * sum_j w_j E_j e_j e_j^H. Entry (n, m) depends only on n - m, so
// only the 2N-1 diagonals t[n - m + N - 1] are formed.
std::vector<cdouble> blended_toeplitz(double theta0_deg, std::span<const WeightedAngle> sidelobes,
                                      double blend, int n) {
  std::vector<cdouble> t(2 * n - 1, cdouble{0.0, 0.0});
  auto accumulate = [&](double theta_deg, double scale) {
    const double u = kPi * std::cos(deg_to_rad(theta_deg));
    const double s = scale * element_factor_power(theta_deg);
    for (int d = -(n - 1); d <= n - 1; ++d) t[d + n - 1] += std::polar(s, u * d);
  };
  accumulate(theta0_deg, 1.0 - blend);
  for (const auto& side : sidelobes) accumulate(side.theta_deg, -blend * side.weight);
  return t;
}

void check_blend(double blend) {
  if (!(blend > 0.0 && blend < 1.0)) throw ConfigError("blend_weight must be in (0, 1)");
}

}  // namespace

void IsingProblem::validate() const {
  if (coupling.size() != size * size || bias.size() != size) {
    throw std::invalid_argument("Ising problem dimensions are inconsistent");
  }
  if (!std::isfinite(offset)) throw std::invalid_argument("non-finite Ising offset");
  double scale = 0.0;
  for (double v : coupling) {
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite coupling entry");
    scale = std::max(scale, std::abs(v));
  }
  for (double v : bias) {
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite bias entry");
  }
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t k = i + 1; k < size; ++k) {
      if (std::abs(j(i, k) - j(k, i)) > 1e-12 * std::max(scale, 1e-300)) {
        throw std::invalid_argument("coupling matrix is not symmetric");
      }
    }
  }
}

IsingProblem IsingProblem::zeros(std::size_t k) {
  return {k, std::vector<double>(k * k, 0.0), std::vector<double>(k, 0.0), 0.0};
}

void SidelobeConfig::validate() const {
  if (!(theta0 >= 0.0 && theta0 <= 180.0)) throw ConfigError("theta0 outside [0, 180]");
  if (!(guard_halfwidth >= 0.0 && guard_halfwidth < 30.0)) {
    throw ConfigError("guard_halfwidth must be in [0, 30)");
  }
  if (!(sample_step > 0.0)) throw ConfigError("sample_step must be positive");
  if (!(near_weight > 0.0 && far_weight > 0.0)) throw ConfigError("sidelobe weights must be positive");
  check_blend(blend_weight);
}

std::vector<WeightedAngle> sidelobe_samples(const SidelobeConfig& config) {
  config.validate();
  const AngleGrid grid(0.0, 180.0, config.sample_step);
  std::vector<WeightedAngle> out;
  for (double theta : grid.samples()) {
    const double offset = std::abs(theta - config.theta0);
    if (offset < config.guard_halfwidth) continue;
    out.push_back({theta, offset <= 30.0 ? config.near_weight : config.far_weight});
  }
  if (out.empty()) throw ConfigError("sidelobe sample set is empty");
  return out;
}

std::vector<cdouble> phase_field_vector(const PhaseCode& code, double theta_deg, int n_antennas) {
  const auto e = steering_vector(theta_deg, n_antennas);
  const double g = std::sqrt(element_factor_power(theta_deg));
  const std::size_t l = code.coefficients.size();
  std::vector<cdouble> v(e.size() * l);
  for (std::size_t n = 0; n < e.size(); ++n) {
    for (std::size_t k = 0; k < l; ++k) v[n * l + k] = g * e[n] * code.coefficients[k];
  }
  return v;
}

std::vector<double> rank_one_coupling(std::span<const cdouble> v) {
  const std::size_t k = v.size();
  std::vector<double> j(k * k);
  for (std::size_t a = 0; a < k; ++a) {
    j[a * k + a] = std::norm(v[a]);
    for (std::size_t b = a + 1; b < k; ++b) {
      const double re = (v[a] * std::conj(v[b])).real();
      j[a * k + b] = re;
      j[b * k + a] = re;
    }
  }
  return j;
}

IsingProblem phase_problem(const PhaseCode& code, const SidelobeConfig& config, int n_antennas) {
  const auto samples = sidelobe_samples(config);
  return phase_problem(code, config.theta0, samples, config.blend_weight, n_antennas);
}

IsingProblem phase_problem(const PhaseCode& code, double theta0_deg,
                           std::span<const WeightedAngle> sidelobes, double blend_weight,
                           int n_antennas) {
  check_blend(blend_weight);
  if (n_antennas < 1) throw std::invalid_argument("n_antennas must be >= 1");
  const auto t = blended_toeplitz(theta0_deg, sidelobes, blend_weight, n_antennas);
  const std::size_t l = code.coefficients.size();
  const std::size_t nn = static_cast<std::size_t>(n_antennas);
  std::vector<cdouble> cc(l * l);
  for (std::size_t a = 0; a < l; ++a) {
    for (std::size_t b = 0; b < l; ++b) {
      cc[a * l + b] = code.coefficients[a] * std::conj(code.coefficients[b]);
    }
  }
  IsingProblem p = IsingProblem::zeros(nn * l);
  const std::size_t k = p.size;
  for (std::size_t n = 0; n < nn; ++n) {
    for (std::size_t m = n; m < nn; ++m) {
      const cdouble tnm = t[n - m + nn - 1];
      for (std::size_t a = 0; a < l; ++a) {
        const std::size_t row = n * l + a;
        for (std::size_t b = (m == n ? a : 0); b < l; ++b) {
          const std::size_t col = m * l + b;
          const double v = (tnm * cc[a * l + b]).real();
          p.coupling[row * k + col] = v;
          p.coupling[col * k + row] = v;
        }
      }
    }
  }
  return p;
}

std::vector<double> augmented_coefficients(const AmpCode& code) {
  std::vector<double> c;
  double total = 0.0;
  for (double ck : code.coefficients) {
    c.push_back(-ck);
    total += ck;
  }
  c.push_back(total);
  return c;
}

std::vector<cdouble> amplitude_drive(std::span<const double> phases, double theta_deg) {
  const auto e = steering_vector(theta_deg, static_cast<int>(phases.size()));
  const double g = std::sqrt(element_factor_power(theta_deg));
  std::vector<cdouble> d(phases.size());
  for (std::size_t n = 0; n < phases.size(); ++n) d[n] = g * std::polar(1.0, phases[n]) * e[n];
  return d;
}

std::vector<cdouble> augmented_field_vector(std::span<const cdouble> drive, const AmpCode& code) {
  const auto c = augmented_coefficients(code);
  std::vector<cdouble> v(drive.size() * c.size());
  for (std::size_t n = 0; n < drive.size(); ++n) {
    for (std::size_t k = 0; k < c.size(); ++k) v[n * c.size() + k] = drive[n] * c[k];
  }
  return v;
}

IsingProblem amplitude_problem(const AmpCode& code, std::span<const double> fixed_phases,
                               const SidelobeConfig& config, int n_antennas) {
  const auto samples = sidelobe_samples(config);
  return amplitude_problem(code, fixed_phases, config.theta0, samples, config.blend_weight,
                           n_antennas);
}

IsingProblem amplitude_problem(const AmpCode& code, std::span<const double> fixed_phases,
                               double theta0_deg, std::span<const WeightedAngle> sidelobes,
                               double blend_weight, int n_antennas) {
  check_blend(blend_weight);
  if (n_antennas < 1 || fixed_phases.size() != static_cast<std::size_t>(n_antennas)) {
    throw std::invalid_argument("fixed phase count must equal n_antennas");
  }
  const std::size_t nn = fixed_phases.size();
  const auto t = blended_toeplitz(theta0_deg, sidelobes, blend_weight, n_antennas);
  // Re of the phase-rotated Gram matrix: exp(i(alpha_n - alpha_m)) t[n - m].
  std::vector<double> gram(nn * nn);
  for (std::size_t n = 0; n < nn; ++n) {
    for (std::size_t m = n; m < nn; ++m) {
      const double v =
          (std::polar(1.0, fixed_phases[n] - fixed_phases[m]) * t[n - m + nn - 1]).real();
      gram[n * nn + m] = v;
      gram[m * nn + n] = v;
    }
  }

  // J' over N(b+1) augmented slots: Re(A') (x) c' c'^T.
  const auto c = augmented_coefficients(code);
  const std::size_t w = c.size();
  const std::size_t kk = nn * w;
  std::vector<double> aug(kk * kk);
  for (std::size_t n = 0; n < nn; ++n) {
    for (std::size_t m = 0; m < nn; ++m) {
      for (std::size_t a = 0; a < w; ++a) {
        for (std::size_t b = 0; b < w; ++b) {
          aug[(n * w + a) * kk + (m * w + b)] = gram[n * nn + m] * (c[a] * c[b]);
        }
      }
    }
  }

  // Permute the N constant slots behind the N*b spin slots, then slice
  // J = [spin, spin], h = 2 * row sums of [spin, const], offset = -sum [const, const].
  const std::size_t bits = code.coefficients.size();
  std::vector<std::size_t> order;
  order.reserve(kk);
  for (std::size_t n = 0; n < nn; ++n) {
    for (std::size_t a = 0; a < bits; ++a) order.push_back(n * w + a);
  }
  for (std::size_t n = 0; n < nn; ++n) order.push_back(n * w + bits);

  const std::size_t ks = nn * bits;
  IsingProblem p = IsingProblem::zeros(ks);
  for (std::size_t i = 0; i < ks; ++i) {
    const double* row = aug.data() + order[i] * kk;
    for (std::size_t k = 0; k < ks; ++k) p.coupling[i * ks + k] = row[order[k]];
    double h = 0.0;
    for (std::size_t k = ks; k < kk; ++k) h += row[order[k]];
    p.bias[i] = 2.0 * h;
  }
  double cc = 0.0;
  for (std::size_t i = ks; i < kk; ++i) {
    for (std::size_t k = ks; k < kk; ++k) cc += aug[order[i] * kk + order[k]];
  }
  p.offset = -cc;
  return p;
}

double energy(const IsingProblem& problem, std::span<const Spin> spins) {
  if (spins.size() != problem.size) throw std::invalid_argument("spin count mismatch");
  std::vector<double> s(spins.begin(), spins.end());
  const auto& kern = simd::active_kernels();
  double quad = 0.0;
  double lin = 0.0;
  for (std::size_t i = 0; i < problem.size; ++i) {
    quad += s[i] * kern.dot(problem.coupling.data() + i * problem.size, s.data(), problem.size);
    lin += problem.bias[i] * s[i];
  }
  return -quad - lin + problem.offset;
}

}  // namespace beamq
