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

#include "beamq/encoding.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <mutex>
#include <string>

namespace beamq {
namespace {

void check_gray_bits(int bits) {
  if (bits < 1 || bits > 8) throw std::invalid_argument("bits must be in 1..8");
}

}  // namespace

void check_spins(std::span<const Spin> spins) {
  for (Spin s : spins) {
    if (s != 1 && s != -1) throw std::invalid_argument("spin value must be +1 or -1");
  }
}

IntMatrix gray_halfspace(int bits) {
  check_gray_bits(bits);
  const int rows = 1 << (bits - 1);
  IntMatrix g(rows, std::vector<int>(bits));
  for (int k = 0; k < rows; ++k) {
    const int gray = k ^ (k >> 1);
    for (int m = 0; m < bits; ++m) g[k][m] = ((gray >> m) & 1) ? -1 : 1;
  }
  return g;
}

std::vector<std::vector<int>> odd_subsets(int bits) {
  check_gray_bits(bits);
  std::vector<std::vector<int>> out;
  for (int size = 1; size <= bits; size += 2) {
    // Lexicographic k-combinations of {0..bits-1}.
    std::vector<int> comb(size);
    for (int i = 0; i < size; ++i) comb[i] = i;
    while (true) {
      out.push_back(comb);
      int i = size - 1;
      while (i >= 0 && comb[i] == bits - size + i) --i;
      if (i < 0) break;
      ++comb[i];
      for (int j = i + 1; j < size; ++j) comb[j] = comb[j - 1] + 1;
    }
  }
  return out;
}

IntMatrix odd_subset_matrix(const IntMatrix& gray) {
  if (gray.empty()) throw std::invalid_argument("empty Gray matrix");
  const int bits = static_cast<int>(gray.front().size());
  const auto subsets = odd_subsets(bits);
  IntMatrix s(gray.size(), std::vector<int>(subsets.size()));
  for (std::size_t k = 0; k < gray.size(); ++k) {
    for (std::size_t j = 0; j < subsets.size(); ++j) {
      int prod = 1;
      for (int m : subsets[j]) prod *= gray[k][m];
      s[k][j] = prod;
    }
  }
  return s;
}

PhaseCode build_phase_code(int bits) {
  if (bits < 1 || bits > 4) throw std::invalid_argument("phase bits must be in 1..4");
  const IntMatrix s = odd_subset_matrix(gray_halfspace(bits));
  const int l = 1 << (bits - 1);

  Eigen::MatrixXcd sm(l, l);
  Eigen::VectorXcd p(l);
  for (int k = 0; k < l; ++k) {
    for (int j = 0; j < l; ++j) sm(k, j) = static_cast<double>(s[k][j]);
    p(k) = std::polar(1.0, k * kPi / l);
  }
  const Eigen::FullPivLU<Eigen::MatrixXcd> lu(sm);
  if (!lu.isInvertible()) throw std::runtime_error("odd-subset matrix is singular");
  const Eigen::VectorXcd c = lu.solve(p);

  PhaseCode code;
  code.bits = bits;
  code.spins_per_antenna = l;
  code.coefficients.assign(c.data(), c.data() + l);
  code.residual = (sm * c - p).cwiseAbs().maxCoeff();
  if (code.residual > 1e-10) throw std::runtime_error("phase code construction inexact");
  const int states = 1 << bits;
  code.allowed_grid.resize(states);
  for (int k = 0; k < states; ++k) code.allowed_grid[k] = kTwoPi * k / states;
  return code;
}

const PhaseCode& phase_code(int bits) {
  static std::array<PhaseCode, 4> cache;
  static std::once_flag once;
  std::call_once(once, [] {
    for (int b = 1; b <= 4; ++b) cache[b - 1] = build_phase_code(b);
  });
  if (bits < 1 || bits > 4) throw std::invalid_argument("phase bits must be in 1..4");
  return cache[bits - 1];
}

SpinVector odd_features(std::span<const Spin> state_bits) {
  check_spins(state_bits);
  const int bits = static_cast<int>(state_bits.size());
  SpinVector out;
  for (const auto& subset : odd_subsets(bits)) {
    int prod = 1;
    for (int m : subset) prod *= state_bits[m];
    out.push_back(static_cast<Spin>(prod));
  }
  return out;
}

int snap_phase_index(double phase, int bits) {
  const int states = 1 << bits;
  const double t = wrap_two_pi(phase) / (kTwoPi / states);
  int k = static_cast<int>(std::floor(t));
  if (t - k > 0.5) ++k;
  return ((k % states) + states) % states;
}

double snap_phase(double phase, int bits) {
  return kTwoPi * snap_phase_index(phase, bits) / (1 << bits);
}

DecodedPhase decode_phase(const PhaseCode& code, std::span<const Spin> block) {
  if (static_cast<int>(block.size()) != code.spins_per_antenna) {
    throw std::invalid_argument("phase block length must equal spins_per_antenna");
  }
  check_spins(block);
  DecodedPhase out;
  for (std::size_t i = 0; i < block.size(); ++i) out.raw += code.coefficients[i] * double(block[i]);
  if (std::abs(out.raw) < 1e-9) {
    out.degenerate = true;
    return out;
  }
  const double angle = wrap_two_pi(std::arg(out.raw));
  out.grid_index = snap_phase_index(angle, code.bits);
  out.phase = code.allowed_grid[out.grid_index];
  const double d = std::abs(angle - out.phase);
  out.snap_distance = std::min(d, kTwoPi - d);
  return out;
}

std::vector<double> decode_phases(const PhaseCode& code, std::span<const Spin> spins) {
  const std::size_t l = code.spins_per_antenna;
  if (spins.size() % l != 0) throw std::invalid_argument("spin count not a multiple of L");
  std::vector<double> phases(spins.size() / l);
  for (std::size_t n = 0; n < phases.size(); ++n) {
    phases[n] = decode_phase(code, spins.subspan(n * l, l)).phase;
  }
  return phases;
}

AmpCode build_amp_code(int amp_bits) {
  if (amp_bits < 1 || amp_bits > 30) throw std::invalid_argument("amp_bits must be in 1..30");
  AmpCode code;
  code.amp_bits = amp_bits;
  for (int k = 0; k < amp_bits; ++k) code.coefficients.push_back(std::ldexp(1.0, -(k + 2)));
  return code;
}

double decode_amplitude(const AmpCode& code, std::span<const Spin> block) {
  if (static_cast<int>(block.size()) != code.amp_bits) {
    throw std::invalid_argument("amplitude block length must equal amp_bits");
  }
  check_spins(block);
  double beta = 0.0;
  for (std::size_t k = 0; k < block.size(); ++k) beta += code.coefficients[k] * (1.0 - block[k]);
  return beta;
}

std::vector<double> decode_amplitudes(const AmpCode& code, std::span<const Spin> spins) {
  const std::size_t b = code.amp_bits;
  if (spins.size() % b != 0) throw std::invalid_argument("spin count not a multiple of amp_bits");
  std::vector<double> out(spins.size() / b);
  for (std::size_t n = 0; n < out.size(); ++n) out[n] = decode_amplitude(code, spins.subspan(n * b, b));
  return out;
}

}  // namespace beamq
