// SPDX-License-Identifier: Apache-2.0
// Built only on aarch64, where NEON is baseline.
#include <arm_neon.h>

#include "illspec/kernels/kernels.hpp"

namespace illspec::kernels::detail {
namespace {

double dot_neon(const double* x, const double* y, std::size_t n) {
  float64x2_t acc0 = vdupq_n_f64(0.0);
  float64x2_t acc1 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = vfmaq_f64(acc0, vld1q_f64(x + i), vld1q_f64(y + i));
    acc1 = vfmaq_f64(acc1, vld1q_f64(x + i + 2), vld1q_f64(y + i + 2));
  }
  double s = vaddvq_f64(vaddq_f64(acc0, acc1));
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

void axpy2_neon(double* y, double a, const double* x, double b, const double* z, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t vy = vld1q_f64(y + i);
    vy = vfmaq_n_f64(vy, vld1q_f64(x + i), a);
    vy = vfmaq_n_f64(vy, vld1q_f64(z + i), b);
    vst1q_f64(y + i, vy);
  }
  for (; i < n; ++i) y[i] += a * x[i] + b * z[i];
}

void rotate_neon(double* x, double* y, double c, double s, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t vx = vld1q_f64(x + i);
    const float64x2_t vy = vld1q_f64(y + i);
    vst1q_f64(x + i, vfmsq_n_f64(vmulq_n_f64(vx, c), vy, s));
    vst1q_f64(y + i, vfmaq_n_f64(vmulq_n_f64(vy, c), vx, s));
  }
  for (; i < n; ++i) {
    const double xi = x[i];
    const double yi = y[i];
    x[i] = c * xi - s * yi;
    y[i] = s * xi + c * yi;
  }
}

}  // namespace

const KernelTable& neon_table_impl() {
  static const KernelTable table{Isa::Neon, &dot_neon, &axpy2_neon, &rotate_neon};
  return table;
}

}  // namespace illspec::kernels::detail
