// SPDX-License-Identifier: Apache-2.0
#pragma once

// Double-precision inner loops used by the fast eigensolver paths. Every
// kernel has a scalar reference implementation; SIMD variants are selected
// once at runtime and must agree with the reference to rounding.

#include <cstddef>
#include <span>
#include <string_view>

namespace illspec::kernels {

enum class Isa { Scalar, Avx2, Neon };

std::string_view to_string(Isa isa);

struct KernelTable {
  Isa isa;
  /// sum_i x[i] * y[i]
  double (*dot)(const double* x, const double* y, std::size_t n);
  /// y[i] += a * x[i] + b * z[i]
  void (*axpy2)(double* y, double a, const double* x, double b, const double* z, std::size_t n);
  /// (x, y) <- (c x - s y, s x + c y)
  void (*rotate)(double* x, double* y, double c, double s, std::size_t n);
};

const KernelTable& scalar_table();
/// nullptr when the variant was not compiled in or the CPU lacks it.
const KernelTable* avx2_table();
const KernelTable* neon_table();

/// Best table for this CPU. ILLSPEC_KERNELS=scalar|avx2|neon forces a choice
/// (falls back to scalar if the forced variant is unavailable).
const KernelTable& active();

/// Overrides the active table (tests, benchmarks). Not thread-safe against
/// concurrent kernel calls.
void set_active(const KernelTable& table);

inline double dot(std::span<const double> x, std::span<const double> y) {
  return active().dot(x.data(), y.data(), x.size());
}
inline void axpy2(std::span<double> y, double a, std::span<const double> x, double b,
                  std::span<const double> z) {
  active().axpy2(y.data(), a, x.data(), b, z.data(), y.size());
}
inline void rotate(std::span<double> x, std::span<double> y, double c, double s) {
  active().rotate(x.data(), y.data(), c, s, x.size());
}

}  // namespace illspec::kernels
