#pragma once

#include <cstdint>
#include <random>

#include "perispec/types.hpp"

namespace perispec {

// Deterministic random source. All distribution logic is written out here
// instead of going through <random> distribution objects, whose output is
// implementation-defined; mt19937_64 itself is specified exactly, so a seed
// reproduces the same stream on any platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform in [0, 1) with 53-bit resolution.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [lo, hi], endpoints included.
  int uniform_int(int lo, int hi);

  // Standard normal via Box-Muller; second value of each pair is cached.
  double gaussian();

  // Standard complex normal, E|z|^2 = 1.
  Complex gaussian_complex();

  // Uniform on the unit circle.
  Complex unit_complex();

  CVec gaussian_vector(Eigen::Index n);
  CVec unit_vector(Eigen::Index n);  // gaussian, normalized
  CMat gaussian_matrix(Eigen::Index rows, Eigen::Index cols);

  // Haar-like unitary: QR of a gaussian matrix with the R diagonal phases
  // absorbed so the factorization is unambiguous.
  CMat random_unitary(Eigen::Index n);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace perispec
