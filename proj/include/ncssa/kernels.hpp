#pragma once
// Dense inner-loop kernels with a scalar reference path and SIMD variants
// chosen once at runtime. Everything above this layer calls the dispatched
// entry points; the per-ISA tables are exposed so tests can compare them.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace ncssa::kernels {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2 };

struct KernelTable {
  // sum_i conj(x_i) * y_i
  cplx (*cdotc)(const cplx* x, const cplx* y, std::size_t n);
  // Re sum_i conj(x_i) * y_i, skipping the imaginary accumulation
  double (*cdotc_re)(const cplx* x, const cplx* y, std::size_t n);
  // y_i += a * x_i
  void (*caxpy)(cplx a, const cplx* x, cplx* y, std::size_t n);
  // sum_i x_i * y_i
  double (*ddot)(const double* x, const double* y, std::size_t n);
};

const KernelTable& scalar_table();
#if defined(NCSSA_HAVE_AVX2)
const KernelTable& avx2_table();
#endif

/// True when the running CPU can execute the given variant.
bool isa_supported(Isa isa);

/// The table in use. Picks the widest supported ISA on first call unless the
/// NCSSA_SIMD environment variable is set to "scalar".
const KernelTable& active();
Isa active_isa();
std::string_view isa_name(Isa isa);

/// Force a variant (used by tests and the CLI); throws if unsupported.
void select(Isa isa);

inline cplx cdotc(std::span<const cplx> x, std::span<const cplx> y) {
  return active().cdotc(x.data(), y.data(), x.size());
}
inline double cdotc_re(std::span<const cplx> x, std::span<const cplx> y) {
  return active().cdotc_re(x.data(), y.data(), x.size());
}
inline void caxpy(cplx a, std::span<const cplx> x, std::span<cplx> y) {
  active().caxpy(a, x.data(), y.data(), x.size());
}
inline double ddot(std::span<const double> x, std::span<const double> y) {
  return active().ddot(x.data(), y.data(), x.size());
}

/// y = A x for a column-major rows x cols complex matrix, built on caxpy.
void cgemv(const cplx* a, std::size_t rows, std::size_t cols, const cplx* x, cplx* y);

}  // namespace ncssa::kernels
