#pragma once
// Seeded random ensembles. Everything is driven by mt19937_64 with hand-rolled
// transforms so the bit patterns do not depend on the standard library vendor.

#include <cstdint>
#include <random>

#include "ncssa/channel.hpp"

namespace ncssa {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform();  // [0, 1)
  double normal();
  cplx cnormal();  // real and imaginary parts N(0, 1/2)
  int below(int n);

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

Mat ginibre(int rows, int cols, Rng& rng);
/// Haar isometry C^cols -> C^rows (rows >= cols), QR with a sign-fixed R diagonal.
Mat haar_isometry(int rows, int cols, Rng& rng);
Mat haar_unitary(int d, Rng& rng);

/// Ginibre-induced state with min(rank, d_k) per block, normalized in tau.
AlgElement random_state(const Algebra& a, int rank, Rng& rng);
AlgElement random_state(const Algebra& a, int rank, std::uint64_t seed);
/// Full-rank Ginibre state.
AlgElement random_state(const Algebra& a, Rng& rng);

/// rho -> tr_env(V rho V*) with V: C^{d_in} -> C^{d_out} (x) C^{env} Haar.
Channel random_channel(int d_in, int d_out, int env_dim, Rng& rng);
Channel random_channel(int d_in, int d_out, int env_dim, std::uint64_t seed);

/// Effects E_x = V* (|x><x| (x) 1) V from a Haar isometry.
Povm random_povm(int d, int outcomes, Rng& rng);

/// Random Hermitian element with Gaussian entries.
AlgElement random_hermitian(const Algebra& a, Rng& rng);
AlgElement random_element(const Algebra& a, Rng& rng);

}  // namespace ncssa
