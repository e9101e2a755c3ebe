#include "ncssa/random.hpp"

#include <cmath>
#include <numbers>

namespace ncssa {

double Rng::uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  spare_ = r * std::sin(2.0 * std::numbers::pi * u2);
  have_spare_ = true;
  return r * std::cos(2.0 * std::numbers::pi * u2);
}

cplx Rng::cnormal() {
  const double re = normal();
  const double im = normal();
  return {re * std::numbers::sqrt2 / 2, im * std::numbers::sqrt2 / 2};
}

int Rng::below(int n) { return static_cast<int>(uniform() * n); }

Mat ginibre(int rows, int cols, Rng& rng) {
  Mat g(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) g(i, j) = rng.cnormal();
  return g;
}

Mat haar_isometry(int rows, int cols, Rng& rng) {
  if (rows < cols) throw ShapeError("haar_isometry needs rows >= cols");
  const Mat g = ginibre(rows, cols, rng);
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ() * Mat::Identity(rows, cols);
  const Mat r = qr.matrixQR();
  for (int j = 0; j < cols; ++j) {
    const cplx d = r(j, j);
    const double a = std::abs(d);
    if (a > 0) q.col(j) *= d / a;
  }
  return q;
}

Mat haar_unitary(int d, Rng& rng) { return haar_isometry(d, d, rng); }

AlgElement random_state(const Algebra& a, int rank, Rng& rng) {
  if (rank < 1) throw ConstructionError("random_state needs rank >= 1");
  std::vector<Mat> blocks;
  for (const Block& b : a.blocks()) {
    const Mat g = ginibre(b.dim, std::min(rank, b.dim), rng);
    blocks.push_back(g * g.adjoint());
  }
  AlgElement x(a, std::move(blocks));
  return x * cplx(1.0 / trace(x).real());
}

AlgElement random_state(const Algebra& a, int rank, std::uint64_t seed) {
  Rng rng(seed);
  return random_state(a, rank, rng);
}

AlgElement random_state(const Algebra& a, Rng& rng) {
  int top = 1;
  for (const Block& b : a.blocks()) top = std::max(top, b.dim);
  return random_state(a, top, rng);
}

Channel random_channel(int d_in, int d_out, int env_dim, Rng& rng) {
  if (d_in < 1 || d_out < 1 || env_dim < 1) throw ConstructionError("random_channel: dimensions must be >= 1");
  if (d_out * env_dim < d_in) throw ConstructionError("random_channel: d_out * env_dim must be >= d_in");
  const Mat v = haar_isometry(d_out * env_dim, d_in, rng);
  std::vector<Mat> kraus;
  for (int e = 0; e < env_dim; ++e) {
    Mat k(d_out, d_in);
    for (int a = 0; a < d_out; ++a) k.row(a) = v.row(a * env_dim + e);
    kraus.push_back(std::move(k));
  }
  return channel_from_kraus(kraus, d_in, d_out);
}

Channel random_channel(int d_in, int d_out, int env_dim, std::uint64_t seed) {
  Rng rng(seed);
  return random_channel(d_in, d_out, env_dim, rng);
}

Povm random_povm(int d, int outcomes, Rng& rng) {
  if (outcomes < 1) throw ConstructionError("random_povm needs at least one outcome");
  const int env = (d + outcomes - 1) / outcomes;
  const Mat v = haar_isometry(outcomes * env, d, rng);
  Povm p;
  p.hilbert_dim = d;
  for (int x = 0; x < outcomes; ++x) {
    const Mat rows = v.middleRows(x * env, env);
    Mat e = rows.adjoint() * rows;
    p.effects.push_back(0.5 * (e + e.adjoint()));
  }
  return p;
}

AlgElement random_hermitian(const Algebra& a, Rng& rng) {
  std::vector<Mat> blocks;
  for (const Block& b : a.blocks()) {
    const Mat g = ginibre(b.dim, b.dim, rng);
    blocks.push_back(0.5 * (g + g.adjoint()));
  }
  return {a, std::move(blocks)};
}

AlgElement random_element(const Algebra& a, Rng& rng) {
  std::vector<Mat> blocks;
  for (const Block& b : a.blocks()) blocks.push_back(ginibre(b.dim, b.dim, rng));
  return {a, std::move(blocks)};
}

}  // namespace ncssa
