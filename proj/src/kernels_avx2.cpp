// AVX2+FMA kernel variants. This translation unit is compiled with
// -mavx2 -mfma and must only be entered after a runtime CPU check.

#include <immintrin.h>

#include <bit>

#include "pushlab/kernels.hpp"

namespace pushlab::kern {
namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

double dot_v(const double* a, const double* b, int n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  int i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4)
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void gemv_v(const double* a, const double* x, double* y, int m, int n) {
  for (int i = 0; i < m; ++i)
    y[i] = dot_v(a + static_cast<size_t>(i) * n, x, n);
}

void axpy_v(double alpha, const double* x, double* y, int n) {
  __m256d va = _mm256_set1_pd(alpha);
  int i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vy = _mm256_loadu_pd(y + i);
    vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
    _mm256_storeu_pd(y + i, vy);
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void gemv_t_acc_v(const double* a, const double* gy, double* gx, int m, int n) {
  for (int i = 0; i < m; ++i)
    axpy_v(gy[i], a + static_cast<size_t>(i) * n, gx, n);
}

void ger_acc_v(double* a, const double* gy, const double* x, int m, int n) {
  for (int i = 0; i < m; ++i)
    axpy_v(gy[i], x, a + static_cast<size_t>(i) * n, n);
}

void relu_v(const double* x, double* y, int n) {
  __m256d z = _mm256_setzero_pd();
  int i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(y + i, _mm256_max_pd(_mm256_loadu_pd(x + i), z));
  for (; i < n; ++i) y[i] = x[i] > 0.0 ? x[i] : 0.0;
}

void relu_bwd_acc_v(const double* x, const double* gy, double* gx, int n) {
  __m256d z = _mm256_setzero_pd();
  int i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d mask = _mm256_cmp_pd(_mm256_loadu_pd(x + i), z, _CMP_GT_OQ);
    __m256d g = _mm256_and_pd(_mm256_loadu_pd(gy + i), mask);
    _mm256_storeu_pd(gx + i, _mm256_add_pd(_mm256_loadu_pd(gx + i), g));
  }
  for (; i < n; ++i)
    if (x[i] > 0.0) gx[i] += gy[i];
}

void add_rows_v(double* acc, const double* w, const int* idx, int k, int n) {
  for (int j = 0; j < k; ++j) {
    const double* row = w + static_cast<size_t>(idx[j]) * n;
    int i = 0;
    for (; i + 4 <= n; i += 4) {
      __m256d v = _mm256_add_pd(_mm256_loadu_pd(acc + i), _mm256_loadu_pd(row + i));
      _mm256_storeu_pd(acc + i, v);
    }
    for (; i < n; ++i) acc[i] += row[i];
  }
}

uint64_t popcnt_v(const uint64_t* a, size_t n) {
  uint64_t c0 = 0, c1 = 0, c2 = 0, c3 = 0;
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    c0 += std::popcount(a[i]);
    c1 += std::popcount(a[i + 1]);
    c2 += std::popcount(a[i + 2]);
    c3 += std::popcount(a[i + 3]);
  }
  for (; i < n; ++i) c0 += std::popcount(a[i]);
  return c0 + c1 + c2 + c3;
}

uint64_t popcnt_and_v(const uint64_t* a, const uint64_t* b, size_t n) {
  uint64_t c0 = 0, c1 = 0;
  size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    c0 += std::popcount(a[i] & b[i]);
    c1 += std::popcount(a[i + 1] & b[i + 1]);
  }
  for (; i < n; ++i) c0 += std::popcount(a[i] & b[i]);
  return c0 + c1;
}

uint64_t popcnt_or_v(const uint64_t* a, const uint64_t* b, size_t n) {
  uint64_t c0 = 0, c1 = 0;
  size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    c0 += std::popcount(a[i] | b[i]);
    c1 += std::popcount(a[i + 1] | b[i + 1]);
  }
  for (; i < n; ++i) c0 += std::popcount(a[i] | b[i]);
  return c0 + c1;
}

}  // namespace

const Ops& avx2_ops() {
  static const Ops k{
      "avx2",      gemv_v,       gemv_t_acc_v, ger_acc_v,
      dot_v,       axpy_v,       relu_v,       relu_bwd_acc_v,
      add_rows_v,  popcnt_v,     popcnt_and_v, popcnt_or_v,
  };
  return k;
}

}  // namespace pushlab::kern
