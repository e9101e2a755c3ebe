#include "ncssa/kernels.hpp"

namespace ncssa::kernels {
namespace {

cplx cdotc_scalar(const cplx* x, const cplx* y, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    const double yr = y[i].real(), yi = y[i].imag();
    re += xr * yr + xi * yi;
    im += xr * yi - xi * yr;
  }
  return {re, im};
}

double cdotc_re_scalar(const cplx* x, const cplx* y, std::size_t n) {
  double re = 0.0;
  for (std::size_t i = 0; i < n; ++i) re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
  return re;
}

void caxpy_scalar(cplx a, const cplx* x, cplx* y, std::size_t n) {
  const double ar = a.real(), ai = a.imag();
  for (std::size_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    y[i] = {y[i].real() + ar * xr - ai * xi, y[i].imag() + ar * xi + ai * xr};
  }
}

double ddot_scalar(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable t{cdotc_scalar, cdotc_re_scalar, caxpy_scalar, ddot_scalar};
  return t;
}

}  // namespace ncssa::kernels
