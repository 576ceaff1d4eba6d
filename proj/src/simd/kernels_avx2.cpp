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

// Compiled with -mavx2 -mfma. Only reached through the dispatch table after
// a CPUID check, so nothing here may run on a CPU without AVX2.

#include <immintrin.h>

#include "beamq/simd/kernels.hpp"

namespace beamq::simd {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

// Four matrix rows share each load of x.
void matvec_rows_avx2(const double* m, std::size_t k, const double* x,
                      std::size_t rows, double* y) {
  for (std::size_t r = 0; r < rows; ++r) {
    const double* xr = x + r * k;
    double* yr = y + r * k;
    std::size_t i = 0;
    for (; i + 4 <= k; i += 4) {
      const double* m0 = m + i * k;
      const double* m1 = m0 + k;
      const double* m2 = m1 + k;
      const double* m3 = m2 + k;
      __m256d a0 = _mm256_setzero_pd();
      __m256d a1 = _mm256_setzero_pd();
      __m256d a2 = _mm256_setzero_pd();
      __m256d a3 = _mm256_setzero_pd();
      std::size_t j = 0;
      for (; j + 4 <= k; j += 4) {
        const __m256d xv = _mm256_loadu_pd(xr + j);
        a0 = _mm256_fmadd_pd(_mm256_loadu_pd(m0 + j), xv, a0);
        a1 = _mm256_fmadd_pd(_mm256_loadu_pd(m1 + j), xv, a1);
        a2 = _mm256_fmadd_pd(_mm256_loadu_pd(m2 + j), xv, a2);
        a3 = _mm256_fmadd_pd(_mm256_loadu_pd(m3 + j), xv, a3);
      }
      double s0 = hsum(a0), s1 = hsum(a1), s2 = hsum(a2), s3 = hsum(a3);
      for (; j < k; ++j) {
        s0 += m0[j] * xr[j];
        s1 += m1[j] * xr[j];
        s2 += m2[j] * xr[j];
        s3 += m3[j] * xr[j];
      }
      yr[i] = s0;
      yr[i + 1] = s1;
      yr[i + 2] = s2;
      yr[i + 3] = s3;
    }
    for (; i < k; ++i) yr[i] = dot_avx2(m + i * k, xr, k);
  }
}

// Four evaluation points per vector; coefficients are broadcast.
void poly_eval_avx2(const double* c_re, const double* c_im, std::size_t degree,
                    const double* w_re, const double* w_im, std::size_t points,
                    double* out_re, double* out_im) {
  std::size_t j = 0;
  if (degree == 0) {
    for (; j < points; ++j) out_re[j] = out_im[j] = 0.0;
    return;
  }
  for (; j + 4 <= points; j += 4) {
    const __m256d wr = _mm256_loadu_pd(w_re + j);
    const __m256d wi = _mm256_loadu_pd(w_im + j);
    __m256d ar = _mm256_set1_pd(c_re[degree - 1]);
    __m256d ai = _mm256_set1_pd(c_im[degree - 1]);
    for (std::size_t n = degree - 1; n-- > 0;) {
      // (ar + i ai)(wr + i wi) + c[n]
      const __m256d tr =
          _mm256_add_pd(_mm256_fmsub_pd(ar, wr, _mm256_mul_pd(ai, wi)), _mm256_set1_pd(c_re[n]));
      const __m256d ti =
          _mm256_add_pd(_mm256_fmadd_pd(ar, wi, _mm256_mul_pd(ai, wr)), _mm256_set1_pd(c_im[n]));
      ar = tr;
      ai = ti;
    }
    _mm256_storeu_pd(out_re + j, _mm256_fmsub_pd(ar, wr, _mm256_mul_pd(ai, wi)));
    _mm256_storeu_pd(out_im + j, _mm256_fmadd_pd(ar, wi, _mm256_mul_pd(ai, wr)));
  }
  if (j < points) {
    scalar_kernels().poly_eval(c_re, c_im, degree, w_re + j, w_im + j, points - j,
                               out_re + j, out_im + j);
  }
}

constexpr KernelTable kAvx2{Isa::Avx2, &dot_avx2, &matvec_rows_avx2, &poly_eval_avx2};

}  // namespace

const KernelTable* avx2_kernels_unchecked() { return &kAvx2; }

}  // namespace beamq::simd
