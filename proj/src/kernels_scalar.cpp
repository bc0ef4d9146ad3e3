#include <bit>

#include "pushlab/kernels.hpp"

namespace pushlab::kern {
namespace {

void gemv_s(const double* a, const double* x, double* y, int m, int n) {
  for (int i = 0; i < m; ++i) {
    const double* row = a + static_cast<size_t>(i) * n;
    double acc = 0.0;
    for (int j = 0; j < n; ++j) acc += row[j] * x[j];
    y[i] = acc;
  }
}

void gemv_t_acc_s(const double* a, const double* gy, double* gx, int m, int n) {
  for (int i = 0; i < m; ++i) {
    const double* row = a + static_cast<size_t>(i) * n;
    double g = gy[i];
    for (int j = 0; j < n; ++j) gx[j] += row[j] * g;
  }
}

void ger_acc_s(double* a, const double* gy, const double* x, int m, int n) {
  for (int i = 0; i < m; ++i) {
    double* row = a + static_cast<size_t>(i) * n;
    double g = gy[i];
    for (int j = 0; j < n; ++j) row[j] += g * x[j];
  }
}

double dot_s(const double* a, const double* b, int n) {
  double acc = 0.0;
  for (int i = 0; i < n; ++i) acc += a[i] * b[i];
  return acc;
}

void axpy_s(double alpha, const double* x, double* y, int n) {
  for (int i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void relu_s(const double* x, double* y, int n) {
  for (int i = 0; i < n; ++i) y[i] = x[i] > 0.0 ? x[i] : 0.0;
}

void relu_bwd_acc_s(const double* x, const double* gy, double* gx, int n) {
  for (int i = 0; i < n; ++i)
    if (x[i] > 0.0) gx[i] += gy[i];
}

void add_rows_s(double* acc, const double* w, const int* idx, int k, int n) {
  for (int j = 0; j < k; ++j) {
    const double* row = w + static_cast<size_t>(idx[j]) * n;
    for (int i = 0; i < n; ++i) acc[i] += row[i];
  }
}

uint64_t popcnt_s(const uint64_t* a, size_t n) {
  uint64_t c = 0;
  for (size_t i = 0; i < n; ++i) c += std::popcount(a[i]);
  return c;
}

uint64_t popcnt_and_s(const uint64_t* a, const uint64_t* b, size_t n) {
  uint64_t c = 0;
  for (size_t i = 0; i < n; ++i) c += std::popcount(a[i] & b[i]);
  return c;
}

uint64_t popcnt_or_s(const uint64_t* a, const uint64_t* b, size_t n) {
  uint64_t c = 0;
  for (size_t i = 0; i < n; ++i) c += std::popcount(a[i] | b[i]);
  return c;
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops k{
      "scalar",    gemv_s,       gemv_t_acc_s, ger_acc_s,
      dot_s,       axpy_s,       relu_s,       relu_bwd_acc_s,
      add_rows_s,  popcnt_s,     popcnt_and_s, popcnt_or_s,
  };
  return k;
}

}  // namespace pushlab::kern
