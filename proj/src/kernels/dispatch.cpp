// SPDX-License-Identifier: Apache-2.0
#include <atomic>
#include <cstdlib>
#include <string>

#include "illspec/kernels/kernels.hpp"

namespace illspec::kernels {
namespace detail {
#if defined(ILLSPEC_HAVE_AVX2)
const KernelTable& avx2_table_impl();
#endif
#if defined(ILLSPEC_HAVE_NEON)
const KernelTable& neon_table_impl();
#endif
}  // namespace detail

namespace {

const KernelTable& select_default() {
  const char* forced = std::getenv("ILLSPEC_KERNELS");
  const std::string want = forced ? forced : "";
  if (want == "scalar") return scalar_table();
  if (want == "avx2") return avx2_table() ? *avx2_table() : scalar_table();
  if (want == "neon") return neon_table() ? *neon_table() : scalar_table();
  if (const KernelTable* t = avx2_table()) return *t;
  if (const KernelTable* t = neon_table()) return *t;
  return scalar_table();
}

std::atomic<const KernelTable*>& slot() {
  static std::atomic<const KernelTable*> current{&select_default()};
  return current;
}

}  // namespace

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "unknown";
}

const KernelTable* avx2_table() {
#if defined(ILLSPEC_HAVE_AVX2)
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
    return &detail::avx2_table_impl();
  }
#endif
  return nullptr;
}

const KernelTable* neon_table() {
#if defined(ILLSPEC_HAVE_NEON)
  return &detail::neon_table_impl();
#else
  return nullptr;
#endif
}

const KernelTable& active() { return *slot().load(std::memory_order_acquire); }

void set_active(const KernelTable& table) { slot().store(&table, std::memory_order_release); }

}  // namespace illspec::kernels
