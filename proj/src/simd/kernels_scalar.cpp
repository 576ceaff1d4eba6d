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

#include "beamq/simd/kernels.hpp"

namespace beamq::simd {
namespace {

double dot_scalar(const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void matvec_rows_scalar(const double* m, std::size_t k, const double* x,
                        std::size_t rows, double* y) {
  for (std::size_t r = 0; r < rows; ++r) {
    const double* xr = x + r * k;
    double* yr = y + r * k;
    for (std::size_t i = 0; i < k; ++i) yr[i] = dot_scalar(m + i * k, xr, k);
  }
}

void poly_eval_scalar(const double* c_re, const double* c_im, std::size_t degree,
                      const double* w_re, const double* w_im, std::size_t points,
                      double* out_re, double* out_im) {
  for (std::size_t j = 0; j < points; ++j) {
    if (degree == 0) {
      out_re[j] = 0.0;
      out_im[j] = 0.0;
      continue;
    }
    const double wr = w_re[j];
    const double wi = w_im[j];
    double ar = c_re[degree - 1];
    double ai = c_im[degree - 1];
    for (std::size_t n = degree - 1; n-- > 0;) {
      const double tr = ar * wr - ai * wi + c_re[n];
      const double ti = ar * wi + ai * wr + c_im[n];
      ar = tr;
      ai = ti;
    }
    out_re[j] = ar * wr - ai * wi;
    out_im[j] = ar * wi + ai * wr;
  }
}

constexpr KernelTable kScalar{Isa::Scalar, &dot_scalar, &matvec_rows_scalar,
                              &poly_eval_scalar};

}  // namespace

const KernelTable& scalar_kernels() { return kScalar; }

}  // namespace beamq::simd
