#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "ncssa/kernels.hpp"

namespace ncssa::kernels {
namespace {

std::atomic<const KernelTable*> g_table{nullptr};
std::atomic<Isa> g_isa{Isa::scalar};

Isa pick_default() {
  if (const char* env = std::getenv("NCSSA_SIMD"); env && std::string(env) == "scalar") return Isa::scalar;
  if (isa_supported(Isa::avx2)) return Isa::avx2;
  return Isa::scalar;
}

const KernelTable& table_for(Isa isa) {
  switch (isa) {
#if defined(NCSSA_HAVE_AVX2)
    case Isa::avx2:
      return avx2_table();
#endif
    default:
      return scalar_table();
  }
}

}  // namespace

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(NCSSA_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

void select(Isa isa) {
  if (!isa_supported(isa)) throw std::runtime_error("kernel variant not supported on this CPU: " + std::string(isa_name(isa)));
  g_isa.store(isa);
  g_table.store(&table_for(isa));
}

const KernelTable& active() {
  const KernelTable* t = g_table.load(std::memory_order_acquire);
  if (t) return *t;
  const Isa isa = pick_default();
  g_isa.store(isa);
  g_table.store(&table_for(isa), std::memory_order_release);
  return table_for(isa);
}

Isa active_isa() {
  active();
  return g_isa.load();
}

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
  }
  return "unknown";
}

void cgemv(const cplx* a, std::size_t rows, std::size_t cols, const cplx* x, cplx* y) {
  const KernelTable& t = active();
  for (std::size_t i = 0; i < rows; ++i) y[i] = 0.0;
  for (std::size_t j = 0; j < cols; ++j) {
    if (x[j] == cplx(0.0)) continue;
    t.caxpy(x[j], a + j * rows, y, rows);
  }
}

}  // namespace ncssa::kernels
