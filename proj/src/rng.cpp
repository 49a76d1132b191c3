#include "perispec/rng.hpp"

#include <cmath>
#include <numbers>

namespace perispec {

int Rng::uniform_int(int lo, int hi) {
  if (hi < lo) throw Error(Errc::InvalidArgument, "uniform_int: hi < lo");
  const std::uint64_t span = static_cast<std::uint64_t>(hi) - lo + 1;
  // Rejection sampling keeps the distribution exact and the stream portable.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t draw;
  do {
    draw = engine_();
  } while (draw >= limit);
  return lo + static_cast<int>(draw % span);
}

double Rng::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double mag = std::sqrt(-2.0 * std::log(u1));
  const double ang = 2.0 * std::numbers::pi * u2;
  spare_ = mag * std::sin(ang);
  has_spare_ = true;
  return mag * std::cos(ang);
}

Complex Rng::gaussian_complex() {
  const double re = gaussian();
  const double im = gaussian();
  return Complex(re, im) / std::sqrt(2.0);
}

Complex Rng::unit_complex() {
  const double ang = 2.0 * std::numbers::pi * uniform();
  return Complex(std::cos(ang), std::sin(ang));
}

CVec Rng::gaussian_vector(Eigen::Index n) {
  CVec v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = gaussian_complex();
  return v;
}

CVec Rng::unit_vector(Eigen::Index n) {
  CVec v = gaussian_vector(n);
  double norm = v.norm();
  while (norm < 1e-6) {
    v = gaussian_vector(n);
    norm = v.norm();
  }
  return v / norm;
}

CMat Rng::gaussian_matrix(Eigen::Index rows, Eigen::Index cols) {
  CMat m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = gaussian_complex();
  return m;
}

CMat Rng::random_unitary(Eigen::Index n) {
  const CMat g = gaussian_matrix(n, n);
  Eigen::HouseholderQR<CMat> qr(g);
  CMat q = qr.householderQ();
  const CMat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    const double ad = std::abs(d);
    if (ad > 0) q.col(j) *= d / ad;
  }
  return q;
}

}  // namespace perispec
