#include <doctest.h>

#include <cmath>

#include "perispec/products.hpp"
#include "perispec/rng.hpp"

using namespace perispec;

namespace {

CMat from_rows(std::initializer_list<std::initializer_list<Complex>> rows) {
  const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
  CMat a(n, rows.begin()->size());
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (const Complex& v : row) a(i, j++) = v;
    ++i;
  }
  return a;
}

// Square-and-multiply power, independent of the loop in sandwich_matrix.
CMat matrix_power(CMat base, int e) {
  CMat acc = CMat::Identity(base.rows(), base.cols());
  while (e > 0) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

}  // namespace

TEST_CASE("evaluate follows the word left to right") {
  const CMat swap = from_rows({{0.0, 1.0}, {1.0, 0.0}});
  const CMat diag = from_rows({{1.0, 0.0}, {0.0, 2.0}});

  ProductInstance triple{validate(2, {2, 1, 2}), {swap, diag}};
  const CMat expected = from_rows({{0.0, 2.0}, {2.0, 0.0}});
  CHECK((evaluate(triple) - expected).norm() <= 1e-14);

  ProductInstance ab{validate(2, {1, 2}), {swap, diag}};
  ProductInstance ba{validate(2, {2, 1}), {swap, diag}};
  CHECK((evaluate(ab) - swap * diag).norm() <= 1e-14);
  CHECK((evaluate(ba) - diag * swap).norm() <= 1e-14);
  CHECK((evaluate(ab) - evaluate(ba)).norm() > 0.5);
}

TEST_CASE("skew evaluation conjugate-transposes the distinguished factor") {
  const CMat a1 = from_rows({{0.0, Complex(0.0, 1.0)}, {0.0, 0.0}});
  const CMat a2 = from_rows({{1.0, 0.0}, {0.0, 2.0}});

  // word (2, 1, 2): distinguished letter 1 at position 2
  ProductInstance inst{validate(2, {2, 1, 2}), {a1, a2}};
  const CMat expected = a2 * a1.adjoint() * a2;
  CHECK((evaluate_skew(inst) - expected).norm() <= 1e-14);
  CHECK((evaluate_skew(inst) - evaluate(inst)).norm() > 0.5);
}

TEST_CASE("product validation errors") {
  const CMat two = CMat::Identity(2, 2);
  const CMat three = CMat::Identity(3, 3);
  ProductInstance wrong_count{validate(2, {1, 2}), {two}};
  CHECK_THROWS_AS(static_cast<void>(evaluate(wrong_count)), Error);
  ProductInstance mixed{validate(2, {1, 2}), {two, three}};
  CHECK_THROWS_AS(static_cast<void>(evaluate(mixed)), Error);
}

TEST_CASE("pairing carries no conjugation") {
  CVec x(2), f(2);
  x << Complex(0.0, 1.0), Complex(0.0, 0.0);
  f << Complex(0.0, 1.0), Complex(0.0, 0.0);
  CHECK(std::abs(pairing(x, f) - Complex(-1.0, 0.0)) <= 1e-15);
}

TEST_CASE("sandwich_matrix agrees with square-and-multiply") {
  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    const int n = 2 + t % 4;
    const CMat b = rng.gaussian_matrix(n, n);
    const CMat a = rng.gaussian_matrix(n, n);
    const int r = t % 7;
    const int s = (t * 3 + 1) % 7;
    const CMat direct = sandwich_matrix(b, a, r, s);
    const CMat oracle = matrix_power(b, r) * a * matrix_power(b, s);
    CHECK((direct - oracle).norm() <= 1e-9 * (1.0 + oracle.norm()));
  }
}

TEST_CASE("closed-form sandwich value, hand-checked") {
  // x = (1,2), f = (3,4), A = [[1,2],[3,4]], r = 2, s = 1:
  // <x,f> = 11, Ax = (5,11), <Ax,f> = 59, value = 11^2 * 59 = 7139.
  CVec x(2), f(2);
  x << 1.0, 2.0;
  f << 3.0, 4.0;
  const CMat a = from_rows({{1.0, 2.0}, {3.0, 4.0}});
  const PeripheralSpectrum sp = sandwich_peripheral({x, f}, a, 2, 1);
  REQUIRE(sp.points.size() == 1);
  CHECK(std::abs(sp.points[0] - Complex(7139.0, 0.0)) <= 1e-9 * 7139.0);
}

TEST_CASE("closed-form sandwich matches the eigensolver") {
  Rng rng(17);
  for (int t = 0; t < 60; ++t) {
    const int n = 2 + t % 5;
    RankOneOperator b{rng.gaussian_vector(n), rng.gaussian_vector(n)};
    const CMat a = rng.gaussian_matrix(n, n);
    const int r = t % 4;
    const int s = (t % 3 == 0) ? 1 + t % 2 : (t + 1) % 4;
    if (r + s < 1) continue;
    const PeripheralSpectrum closed = sandwich_peripheral(b, a, r, s);
    const PeripheralSpectrum direct =
        peripheral_spectrum(sandwich_matrix(b.matrix(), a, r, s));
    CHECK(spectra_equal(closed, direct, 1e-8));
  }
}

TEST_CASE("orthogonal pairing still leaves one clean eigenvalue at width one") {
  // <x,f> = 0 kills the value only when r + s >= 2.
  CVec x(3), f(3);
  x << 1.0, 0.0, 0.0;
  f << 0.0, 1.0, 0.0;
  const CMat a = from_rows({{1.0, 1.0, 0.0},
                            {2.0, 1.0, 1.0},
                            {0.0, 1.0, 1.0}});
  const PeripheralSpectrum one = sandwich_peripheral({x, f}, a, 1, 0);
  REQUIRE(one.points.size() == 1);
  CHECK(std::abs(one.points[0] - Complex(2.0, 0.0)) <= 1e-12);  // <Ax, f> = a21

  const PeripheralSpectrum two = sandwich_peripheral({x, f}, a, 1, 1);
  REQUIRE(two.points.size() == 1);
  CHECK(std::abs(two.points[0]) == 0.0);
  CHECK(spectra_equal(two, peripheral_spectrum(
                               sandwich_matrix(CMat(x * f.transpose()), a, 1, 1)),
                      1e-8));
}

TEST_CASE("sandwich argument validation") {
  CVec x(2), f(2);
  x << 1.0, 0.0;
  f << 1.0, 0.0;
  const CMat a = CMat::Identity(2, 2);
  CHECK_THROWS_AS(static_cast<void>(sandwich_peripheral({x, f}, a, 0, 0)), Error);
  CHECK_THROWS_AS(static_cast<void>(sandwich_peripheral({x, f}, a, -1, 2)), Error);
  CVec zero = CVec::Zero(2);
  CHECK_THROWS_AS(static_cast<void>(sandwich_peripheral({zero, f}, a, 1, 1)), Error);
  CVec bad(3);
  bad << 1.0, 0.0, 0.0;
  CHECK_THROWS_AS(static_cast<void>(sandwich_peripheral({bad, f}, a, 1, 1)), Error);
}
