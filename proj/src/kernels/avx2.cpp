#include <immintrin.h>

#include "ncssa/kernels.hpp"

// Complex numbers are interleaved [re, im], so one __m256d holds two of them.

namespace ncssa::kernels {
namespace {

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// even lanes minus odd lanes
inline double hsub_pairs(__m256d v) {
  alignas(32) double t[4];
  _mm256_store_pd(t, v);
  return (t[0] - t[1]) + (t[2] - t[3]);
}

cplx cdotc_avx2(const cplx* x, const cplx* y, std::size_t n) {
  const double* xp = reinterpret_cast<const double*>(x);
  const double* yp = reinterpret_cast<const double*>(y);
  __m256d re0 = _mm256_setzero_pd(), re1 = _mm256_setzero_pd();
  __m256d im0 = _mm256_setzero_pd(), im1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d xa = _mm256_loadu_pd(xp + 2 * i);
    const __m256d ya = _mm256_loadu_pd(yp + 2 * i);
    const __m256d xb = _mm256_loadu_pd(xp + 2 * i + 4);
    const __m256d yb = _mm256_loadu_pd(yp + 2 * i + 4);
    re0 = _mm256_fmadd_pd(xa, ya, re0);
    re1 = _mm256_fmadd_pd(xb, yb, re1);
    im0 = _mm256_fmadd_pd(xa, _mm256_permute_pd(ya, 0b0101), im0);
    im1 = _mm256_fmadd_pd(xb, _mm256_permute_pd(yb, 0b0101), im1);
  }
  for (; i + 2 <= n; i += 2) {
    const __m256d xa = _mm256_loadu_pd(xp + 2 * i);
    const __m256d ya = _mm256_loadu_pd(yp + 2 * i);
    re0 = _mm256_fmadd_pd(xa, ya, re0);
    im0 = _mm256_fmadd_pd(xa, _mm256_permute_pd(ya, 0b0101), im0);
  }
  double re = hsum(_mm256_add_pd(re0, re1));
  double im = hsub_pairs(_mm256_add_pd(im0, im1));
  for (; i < n; ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {re, im};
}

double cdotc_re_avx2(const cplx* x, const cplx* y, std::size_t n) {
  const double* xp = reinterpret_cast<const double*>(x);
  const double* yp = reinterpret_cast<const double*>(y);
  const std::size_t m = 2 * n;
  __m256d a0 = _mm256_setzero_pd(), a1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= m; i += 8) {
    a0 = _mm256_fmadd_pd(_mm256_loadu_pd(xp + i), _mm256_loadu_pd(yp + i), a0);
    a1 = _mm256_fmadd_pd(_mm256_loadu_pd(xp + i + 4), _mm256_loadu_pd(yp + i + 4), a1);
  }
  for (; i + 4 <= m; i += 4) a0 = _mm256_fmadd_pd(_mm256_loadu_pd(xp + i), _mm256_loadu_pd(yp + i), a0);
  double s = hsum(_mm256_add_pd(a0, a1));
  for (; i < m; ++i) s += xp[i] * yp[i];
  return s;
}

void caxpy_avx2(cplx a, const cplx* x, cplx* y, std::size_t n) {
  const double* xp = reinterpret_cast<const double*>(x);
  double* yp = reinterpret_cast<double*>(y);
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d xv = _mm256_loadu_pd(xp + 2 * i);
    const __m256d t1 = _mm256_mul_pd(ar, xv);
    const __m256d t2 = _mm256_mul_pd(ai, _mm256_permute_pd(xv, 0b0101));
    const __m256d yv = _mm256_loadu_pd(yp + 2 * i);
    _mm256_storeu_pd(yp + 2 * i, _mm256_add_pd(yv, _mm256_addsub_pd(t1, t2)));
  }
  for (; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    y[i] = {y[i].real() + a.real() * xr - a.imag() * xi, y[i].imag() + a.real() * xi + a.imag() * xr};
  }
}

double ddot_avx2(const double* x, const double* y, std::size_t n) {
  __m256d a0 = _mm256_setzero_pd(), a1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    a0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), a0);
    a1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), a1);
  }
  for (; i + 4 <= n; i += 4) a0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), a0);
  double s = hsum(_mm256_add_pd(a0, a1));
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable t{cdotc_avx2, cdotc_re_avx2, caxpy_avx2, ddot_avx2};
  return t;
}

}  // namespace ncssa::kernels
