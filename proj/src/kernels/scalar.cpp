// SPDX-License-Identifier: Apache-2.0
#include "illspec/kernels/kernels.hpp"

namespace illspec::kernels {
namespace {

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

void axpy2_scalar(double* y, double a, const double* x, double b, const double* z, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i] + b * z[i];
}

void rotate_scalar(double* x, double* y, double c, double s, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = x[i];
    const double yi = y[i];
    x[i] = c * xi - s * yi;
    y[i] = s * xi + c * yi;
  }
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{Isa::Scalar, &dot_scalar, &axpy2_scalar, &rotate_scalar};
  return table;
}

}  // namespace illspec::kernels
