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

// Hot arithmetic kernels behind a function table. The scalar table is the
// reference; ISA-specific tables must agree with it to rounding.

#include <cstddef>
#include <string_view>

namespace beamq::simd {

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa);

struct KernelTable {
  Isa isa;

  /// sum_i a[i] * b[i]
  double (*dot)(const double* a, const double* b, std::size_t n);

  /// Batched dense matrix-vector product over row-major storage:
  /// y[r*k + i] = sum_j m[i*k + j] * x[r*k + j] for r < rows.
  void (*matvec_rows)(const double* m, std::size_t k, const double* x,
                      std::size_t rows, double* y);

  /// Complex polynomial without constant term, evaluated at many points:
  /// out[j] = sum_{n=1}^{degree} c[n-1] * w[j]^n  (Horner form).
  void (*poly_eval)(const double* c_re, const double* c_im, std::size_t degree,
                    const double* w_re, const double* w_im, std::size_t points,
                    double* out_re, double* out_im);
};

const KernelTable& scalar_kernels();

/// nullptr when the build or the running CPU lacks AVX2+FMA.
const KernelTable* avx2_kernels();

/// Best table for this CPU. BEAM_SIMD=scalar forces the reference path.
const KernelTable& active_kernels();

}  // namespace beamq::simd
