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

// Spin-block codes for phases and amplitudes.
//
// Phase: a b-bit phase uses L = 2^(b-1) spin slots per antenna. The slots
// stand for odd-cardinality products of the b bits of a Gray-coded state,
// and e^{i alpha} = sum_l c_l x_l with c solving S c = p over the half-space
// of Gray states. Because every subset is odd, negating a block rotates the
// decoded phase by pi, which covers the other half of the circle.
//
// Amplitude: beta = sum_k c_k (1 - s_k) with c_k = 2^-(k+2), a binary
// expansion on a 2^-b grid.

#include <span>
#include <vector>

#include "beamq/common.hpp"

namespace beamq {

using IntMatrix = std::vector<std::vector<int>>;

/// Rows k < 2^(b-1): bit m (LSB first) of gray(k) = k ^ (k >> 1), 0 -> +1, 1 -> -1.
IntMatrix gray_halfspace(int bits);

/// The 2^(b-1) odd-size subsets of {0..b-1}, by cardinality then lexicographic.
std::vector<std::vector<int>> odd_subsets(int bits);

/// S[k][j] = prod_{m in O_j} G[k][m].
IntMatrix odd_subset_matrix(const IntMatrix& gray);

struct PhaseCode {
  int bits = 1;
  int spins_per_antenna = 1;
  std::vector<cdouble> coefficients;
  /// 2*pi*k / 2^bits, k = 0..2^bits-1.
  std::vector<double> allowed_grid;
  /// max_k |(S c)_k - p_k| from construction.
  double residual = 0.0;
};

/// Solves S c = p with p_k = exp(i*k*pi / 2^(b-1)). Valid for b in 1..4.
PhaseCode build_phase_code(int bits);

/// Cached build_phase_code.
const PhaseCode& phase_code(int bits);

/// Odd-subset features of a b-bit spin state: the block a consistent state
/// occupies in the L slots.
SpinVector odd_features(std::span<const Spin> state_bits);

struct DecodedPhase {
  double phase = 0.0;          ///< snapped grid phase in [0, 2pi)
  int grid_index = 0;          ///< phase = grid_index * 2pi / 2^bits
  cdouble raw{0.0, 0.0};       ///< c . x before projection
  double snap_distance = 0.0;  ///< |arg(raw) - phase| on the circle
  bool degenerate = false;     ///< |raw| vanished; phase fell back to 0
};

DecodedPhase decode_phase(const PhaseCode& code, std::span<const Spin> block);

/// Decodes consecutive antenna blocks (antenna-major layout).
std::vector<double> decode_phases(const PhaseCode& code, std::span<const Spin> spins);

/// Nearest point on the 2^bits phase grid; exact ties go to the lower index.
int snap_phase_index(double phase, int bits);
double snap_phase(double phase, int bits);

struct AmpCode {
  int amp_bits = 4;
  std::vector<double> coefficients;  ///< 1/4, 1/8, ...

  double resolution() const { return std::ldexp(1.0, -amp_bits); }
  double max_value() const { return 1.0 - resolution(); }
};

AmpCode build_amp_code(int amp_bits);

double decode_amplitude(const AmpCode& code, std::span<const Spin> block);
std::vector<double> decode_amplitudes(const AmpCode& code, std::span<const Spin> spins);

/// Throws std::invalid_argument unless every entry is exactly +1 or -1.
void check_spins(std::span<const Spin> spins);

}  // namespace beamq
