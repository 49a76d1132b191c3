#include <doctest.h>

#include <cmath>
#include <string>

#include "perispec/rng.hpp"
#include "perispec/witness.hpp"

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

// Two basis 2-cycles: e1 <-> e3, e2 <-> e4. Every basis pair (ei, ej) with
// i < j <= 2 spans a 4-dimensional {x1, x2, Ax1, Ax2}.
CMat case1_matrix() {
  return from_rows({{0.0, 0.0, 1.0, 0.0},
                    {0.0, 0.0, 0.0, 1.0},
                    {1.0, 0.0, 0.0, 0.0},
                    {0.0, 1.0, 0.0, 0.0}});
}

// Ae1 = e2 + e3, Ae2 = e1 + e2, Ae3 = 0. The pair (e1, e2) has span
// dimension 3 with e2 = -e1 + 1 * Ae2, so the coefficient on Ax2 is 1.
CMat case2_matrix() {
  return from_rows({{0.0, 1.0, 0.0},
                    {1.0, 1.0, 0.0},
                    {1.0, 0.0, 0.0}});
}

void check_witness_sound(const CMat& a, int r, int s, const WitnessResult& w) {
  REQUIRE(w.found);
  CHECK(numerical_rank(w.b, 1e-10) <= 2);
  const PeripheralSpectrum sp = peripheral_spectrum(sandwich_matrix(w.b, a, r, s));
  REQUIRE(sp.points.size() >= 2);
  const double thr = 1e-8 * std::max(1.0, sp.radius);
  for (const Complex& p : w.predicted) {
    bool hit = false;
    for (const Complex& q : sp.points) hit = hit || std::abs(p - q) <= thr;
    CHECK(hit);
  }
}

}  // namespace

TEST_CASE("four-dimensional span pair produces the diagonal construction") {
  const CMat a = case1_matrix();
  for (const auto [r, s] : {std::pair{1, 1}, {2, 0}, {0, 2}, {3, 2}}) {
    const WitnessResult w = construct_witness(a, r, s);
    CHECK(std::string(to_string(w.case_tag)) == "Case1");
    REQUIRE(w.predicted.size() == 2);
    CHECK(std::abs(w.predicted[0] - Complex(1.0, 0.0)) <= 1e-12);
    CHECK(std::abs(std::abs(w.predicted[1]) - 1.0) <= 1e-12);
    CHECK(std::abs(w.predicted[1] - w.predicted[0]) >= 0.5);
    check_witness_sound(a, r, s, w);
  }
}

TEST_CASE("three-dimensional span pair: triangular construction, all widths") {
  const CMat a = case2_matrix();
  const struct {
    int r, s;
    const char* tag;
  } rows[] = {
      {2, 0, "Case2.Subcase1"}, {0, 2, "Case2.Subcase2"},
      {1, 1, "Case2.Subcase3"}, {1, 2, "Case2.Subcase4"},
      {2, 1, "Case2.Subcase5"}, {2, 2, "Case2.Subcase6"},
  };
  for (const auto& row : rows) {
    CAPTURE(row.tag);
    const WitnessResult w = construct_witness(a, row.r, row.s);
    CHECK(std::string(to_string(w.case_tag)) == row.tag);
    REQUIRE(w.case2.valid);

    // Geometry of the (e1, e2) pair is fixed by the matrix.
    CHECK(std::abs(w.case2.lambda1 - Complex(-1.0, 0.0)) <= 1e-10);
    CHECK(std::abs(w.case2.lambda2) <= 1e-10);
    CHECK(std::abs(w.case2.lambda3 - Complex(1.0, 0.0)) <= 1e-10);
    CHECK(std::abs(std::abs(w.case2.lambda) - 1.0) <= 1e-10);
    CHECK(std::abs(w.case2.lambda - 1.0) >= 0.5);

    // The closed-form eigenpairs must satisfy the assembled sandwich.
    const CMat m = sandwich_matrix(w.b, a, row.r, row.s);
    const double scale = 1.0 + m.norm();
    CHECK((m * w.case2.eig_one - w.case2.eig_one).norm() <= 1e-9 * scale);
    CHECK((m * w.case2.eig_lambda - w.case2.lambda * w.case2.eig_lambda).norm() <=
          1e-9 * scale);
    check_witness_sound(a, row.r, row.s, w);
  }
}

TEST_CASE("two-dimensional invariant plane: compressed construction") {
  const CMat a = from_rows({{0.0, 1.0}, {1.0, 0.0}});
  for (const auto [r, s] : {std::pair{1, 0}, {0, 1}, {1, 1}, {2, 1}}) {
    const WitnessResult w = construct_witness(a, r, s);
    CHECK(std::string(to_string(w.case_tag)) == "Case3");
    REQUIRE(w.predicted.size() == 2);
    CHECK(std::abs(std::abs(w.predicted[0]) - std::abs(w.predicted[1])) <= 1e-9);
    check_witness_sound(a, r, s, w);
  }
}

TEST_CASE("width-one sandwich over a three-dimensional span") {
  const CMat a = case2_matrix();
  for (const auto [r, s] : {std::pair{1, 0}, {0, 1}}) {
    const WitnessResult w = construct_witness(a, r, s);
    CHECK(std::string(to_string(w.case_tag)) == "direct-product");
    REQUIRE(w.predicted.size() == 2);
    CHECK(std::abs(w.predicted[0] - Complex(1.0, 0.0)) <= 1e-12);
    check_witness_sound(a, r, s, w);
  }
}

TEST_CASE("identity operator is witnessed through its invariant planes") {
  const CMat a = CMat::Identity(3, 3);
  const WitnessResult w = construct_witness(a, 1, 1);
  check_witness_sound(a, 1, 1, w);
}

TEST_CASE("witness construction is deterministic in the seed") {
  Rng rng(99);
  const CMat a = rng.gaussian_matrix(4, 4);
  const WitnessResult w1 = construct_witness(a, 2, 1, 42);
  const WitnessResult w2 = construct_witness(a, 2, 1, 42);
  CHECK((w1.b - w2.b).norm() == 0.0);
  CHECK(w1.case_tag == w2.case_tag);
}

TEST_CASE("witness argument gates") {
  CVec u(3);
  u << 1.0, 2.0, 3.0;
  const CMat rank1 = u * u.transpose();
  CHECK_THROWS_AS(static_cast<void>(construct_witness(rank1, 1, 1)), Error);
  try {
    static_cast<void>(construct_witness(rank1, 1, 1));
  } catch (const Error& e) {
    CHECK(e.code() == Errc::RankTooLow);
  }
  const CMat ok = case2_matrix();
  CHECK_THROWS_AS(static_cast<void>(construct_witness(ok, 0, 0)), Error);
  CHECK_THROWS_AS(static_cast<void>(construct_witness(ok, -1, 2)), Error);
}

TEST_CASE("randomized soundness sweep") {
  Rng rng(2024);
  const std::pair<int, int> widths[] = {{1, 0}, {0, 1}, {1, 1}, {2, 1}, {2, 2}};
  for (int t = 0; t < 40; ++t) {
    const int n = 2 + t % 5;
    const CMat a = rng.gaussian_matrix(n, n);
    if (numerical_rank(a) < 2) continue;
    const auto [r, s] = widths[t % 5];
    CAPTURE(t);
    const WitnessResult w = construct_witness(a, r, s, 7 + t);
    check_witness_sound(a, r, s, w);
  }
}

TEST_CASE("spectral rank-one test") {
  Rng rng(5);

  CVec x = rng.gaussian_vector(4);
  CVec f = rng.gaussian_vector(4);
  const CMat rank1 = x * f.transpose();
  for (const auto [r, s] : {std::pair{1, 0}, {0, 1}, {1, 1}, {2, 1}, {2, 2}}) {
    CHECK(is_rank_one_by_criterion(rank1, r, s));
    CHECK(is_rank_one_by_criterion(rank1, r, s, /*skew=*/true));
  }

  const CMat full = rng.gaussian_matrix(4, 4);
  for (const auto [r, s] : {std::pair{1, 0}, {1, 1}, {2, 2}}) {
    CHECK_FALSE(is_rank_one_by_criterion(full, r, s));
    CHECK_FALSE(is_rank_one_by_criterion(full, r, s, /*skew=*/true));
  }

  const CMat diag2 = from_rows({{1.0, 0.0, 0.0},
                                {0.0, 1.0, 0.0},
                                {0.0, 0.0, 0.0}});
  CHECK_FALSE(is_rank_one_by_criterion(diag2, 1, 1));

  CHECK_THROWS_AS(static_cast<void>(is_rank_one_by_criterion(CMat::Zero(3, 3), 1, 1)),
                  Error);
  try {
    static_cast<void>(is_rank_one_by_criterion(CMat::Zero(3, 3), 1, 1));
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ZeroOperator);
  }
}
