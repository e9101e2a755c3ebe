#include <doctest.h>

#include <vector>

#include "ncssa/kernels.hpp"
#include "ncssa/random.hpp"
#include "ncssa/sdp.hpp"

using namespace ncssa;
namespace k = ncssa::kernels;

namespace {

std::vector<cplx> cvec(std::size_t n, Rng& rng) {
  std::vector<cplx> v(n);
  for (auto& x : v) x = rng.cnormal();
  return v;
}

const std::size_t kLengths[] = {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 64, 101, 1000};

// plain loops, independent of both tables
cplx naive_cdotc(const std::vector<cplx>& x, const std::vector<cplx>& y) {
  cplx s = 0;
  for (std::size_t i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
  return s;
}

}  // namespace

TEST_CASE("scalar kernels match naive loops") {
  Rng rng(11);
  const k::KernelTable& t = k::scalar_table();
  for (std::size_t n : kLengths) {
    auto x = cvec(n, rng), y = cvec(n, rng);
    const cplx ref = naive_cdotc(x, y);
    CHECK(std::abs(t.cdotc(x.data(), y.data(), n) - ref) <= 1e-12 * (1.0 + n));
    CHECK(std::abs(t.cdotc_re(x.data(), y.data(), n) - ref.real()) <= 1e-12 * (1.0 + n));
    std::vector<double> a(n), b(n);
    double dref = 0;
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = rng.normal();
      b[i] = rng.normal();
      dref += a[i] * b[i];
    }
    CHECK(std::abs(t.ddot(a.data(), b.data(), n) - dref) <= 1e-12 * (1.0 + n));
    auto z = y;
    const cplx alpha(0.3, -1.7);
    t.caxpy(alpha, x.data(), z.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(z[i] - (y[i] + alpha * x[i])) <= 1e-14);
  }
}

#if defined(NCSSA_HAVE_AVX2)
TEST_CASE("avx2 kernels agree with the scalar reference") {
  if (!k::isa_supported(k::Isa::avx2)) return;
  Rng rng(12);
  const k::KernelTable& s = k::scalar_table();
  const k::KernelTable& v = k::avx2_table();
  for (std::size_t n : kLengths) {
    auto x = cvec(n, rng), y = cvec(n, rng);
    const double scale = 1.0 + n;
    CHECK(std::abs(s.cdotc(x.data(), y.data(), n) - v.cdotc(x.data(), y.data(), n)) <= 1e-13 * scale);
    CHECK(std::abs(s.cdotc_re(x.data(), y.data(), n) - v.cdotc_re(x.data(), y.data(), n)) <= 1e-13 * scale);
    std::vector<double> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = rng.normal();
      b[i] = rng.normal();
    }
    CHECK(std::abs(s.ddot(a.data(), b.data(), n) - v.ddot(a.data(), b.data(), n)) <= 1e-13 * scale);
    auto z1 = y, z2 = y;
    s.caxpy({0.25, 2.0}, x.data(), z1.data(), n);
    v.caxpy({0.25, 2.0}, x.data(), z2.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(z1[i] - z2[i]) <= 1e-14);
  }
}

TEST_CASE("an SDP solve is insensitive to the kernel variant") {
  if (!k::isa_supported(k::Isa::avx2)) return;
  Rng rng(13);
  const Inclusion inc = Inclusion::tensor_factor(2, 3, false);
  const AlgElement x = random_state(inc.ambient(), rng);
  k::select(k::Isa::scalar);
  const SdpResult a = l1_inf_norm(x, inc);
  k::select(k::Isa::avx2);
  const SdpResult b = l1_inf_norm(x, inc);
  CHECK(a.value == doctest::Approx(b.value).epsilon(1e-10));
  CHECK(a.primal == doctest::Approx(b.primal).epsilon(1e-10));
}
#endif

TEST_CASE("cgemv matches a dense product") {
  Rng rng(14);
  for (int rows : {1, 3, 8, 13})
    for (int cols : {1, 2, 9}) {
      const Mat a = ginibre(rows, cols, rng);
      const Vec x = ginibre(cols, 1, rng);
      Vec y(rows);
      k::cgemv(a.data(), rows, cols, x.data(), y.data());
      CHECK((y - a * x).norm() <= 1e-12 * (1 + a.norm() * x.norm()));
    }
}

TEST_CASE("select and isa names") {
  CHECK(k::isa_name(k::Isa::scalar) == "scalar");
  k::select(k::Isa::scalar);
  CHECK(k::active_isa() == k::Isa::scalar);
  CHECK(k::isa_supported(k::Isa::scalar));
}
