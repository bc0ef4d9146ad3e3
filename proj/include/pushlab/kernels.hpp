#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace pushlab::kern {

// Arithmetic inner loops used by the tensor and mask code. Every entry has a
// scalar reference implementation and (on capable x86 hosts) an AVX2+FMA
// variant; the dispatcher picks one at process start. The two variants are
// equivalence-tested against each other.
struct Ops {
  const char* name;

  // y[i] = dot(a_row_i, x); a is row-major m x n.
  void (*gemv)(const double* a, const double* x, double* y, int m, int n);
  // gx[j] += sum_i a[i*n+j] * gy[i]  (transposed accumulate for backward)
  void (*gemv_t_acc)(const double* a, const double* gy, double* gx, int m, int n);
  // a[i*n+j] += gy[i] * x[j]  (outer-product accumulate for weight grads)
  void (*ger_acc)(double* a, const double* gy, const double* x, int m, int n);
  double (*dot)(const double* a, const double* b, int n);
  // y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, int n);
  void (*relu)(const double* x, double* y, int n);
  // gx[i] += gy[i] where x[i] > 0
  void (*relu_bwd_acc)(const double* x, const double* gy, double* gx, int n);
  // acc += sum_j w_row(idx[j]); w row-major, rows of length n. Used as the
  // binary-input fast path: W.x with x in {0,1} is a sum of selected rows.
  void (*add_rows)(double* acc, const double* w, const int* idx, int k, int n);

  uint64_t (*popcnt)(const uint64_t* a, size_t n);
  uint64_t (*popcnt_and)(const uint64_t* a, const uint64_t* b, size_t n);
  uint64_t (*popcnt_or)(const uint64_t* a, const uint64_t* b, size_t n);
};

const Ops& scalar_ops();

// Active implementation. Honors PUSHLAB_KERNEL={scalar,avx2} when set,
// otherwise picks the best supported variant.
const Ops& ops();

// Lookup for tests; returns nullptr when the named variant is not available
// on this build/host.
const Ops* kernel_by_name(std::string_view name);

}  // namespace pushlab::kern
