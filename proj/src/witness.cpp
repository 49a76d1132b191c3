#include "perispec/witness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include "perispec/rng.hpp"

namespace perispec {

namespace {

// Rank decisions inside the scan use this relative cut. It is looser than
// the final verification, which recomputes the spectrum of the assembled
// sandwich and is what actually accepts a witness.
constexpr double kSpanTol = 1e-8;

struct PairGeometry {
  CVec x1, x2, y1, y2;
  int span_dim = 0;             // dim span{x1, x2, Ax1, Ax2}
  bool images_independent = false;
};

PairGeometry analyze_pair(const CMat& a, const CVec& x1, const CVec& x2) {
  PairGeometry g;
  g.x1 = x1;
  g.x2 = x2;
  g.y1 = a * x1;
  g.y2 = a * x2;
  const Eigen::Index n = a.rows();
  CMat img(n, 2);
  img << g.y1, g.y2;
  g.images_independent = numerical_rank(img, kSpanTol) == 2;
  CMat four(n, 4);
  four << g.x1, g.x2, g.y1, g.y2;
  g.span_dim = numerical_rank(four, kSpanTol);
  return g;
}

// Unit phases exp(2*pi*i*j/q) ordered by denominator, j coprime to q. Used
// wherever a construction needs "any" modulus-one scalar away from 1: the
// first acceptable entry makes the choice reproducible.
std::vector<Complex> phase_schedule(int max_q) {
  std::vector<Complex> out;
  for (int q = 2; q <= max_q; ++q) {
    for (int j = 1; j < q; ++j) {
      if (std::gcd(j, q) == 1) {
        out.push_back(std::polar(1.0, 2.0 * std::numbers::pi * j / q));
      }
    }
  }
  return out;
}

// F with F * cols = I. Rows of F, read as functionals z -> row . z, are
// dual to the columns under the transpose pairing.
CMat dual_rows(const CMat& cols) {
  return cols.completeOrthogonalDecomposition().pseudoInverse();
}

bool all_finite(const CMat& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const Complex v = m(i, j);
      if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    }
  return true;
}

struct Attempt {
  bool ok = false;
  CMat b;
  WitnessCase tag = WitnessCase::RandomizedFallback;
  std::vector<Complex> predicted;
  Case2Detail detail;
};

// dim span{x1, x2, Ax1, Ax2} = 4. With x3 = Ax1, x4 = Ax2 and duals f_i of
// (x1, x2, x3, x4), the operator b = x1 (x) (f1+f3) + x2 (x) (alpha f2 + f4)
// fixes x1, scales x2 by alpha, and sends x3 -> x1, x4 -> x2; the sandwich
// then acts on span{x1, x2} as diag(1, alpha^(r+s-1)).
Attempt attempt_case1(const PairGeometry& g, int r, int s,
                      const std::vector<Complex>& phases) {
  Attempt at;
  const Eigen::Index n = g.x1.size();
  CMat xmat(n, 4);
  xmat << g.x1, g.x2, g.y1, g.y2;
  const CMat f = dual_rows(xmat);
  if (!all_finite(f)) return at;

  Complex alpha{};
  bool have_alpha = false;
  for (const Complex& phi : phases) {
    if (std::abs(std::pow(phi, r + s - 1) - 1.0) >= 0.5) {
      alpha = phi;
      have_alpha = true;
      break;
    }
  }
  if (!have_alpha) return at;

  const CVec g1 = f.row(0).transpose() + f.row(2).transpose();
  const CVec g2 = alpha * f.row(1).transpose() + f.row(3).transpose();
  at.b = g.x1 * g1.transpose() + g.x2 * g2.transpose();
  at.tag = WitnessCase::Case1;
  at.predicted = {Complex(1.0, 0.0), std::pow(alpha, r + s - 1)};
  at.ok = true;
  return at;
}

// dim span = 3 with {x1, Ax1, Ax2} independent and x2 = l1 x1 + l2 Ax1 +
// l3 Ax2, l3 != 0. b = x1 (x) (f1+f3) + x2 (x) (alpha f4) restricted to
// span{x1, x2} (span{Ax1, Ax2} when r = 0) is triangular with diagonal
// (1, lambda), lambda = alpha^(r+s) l3^(r+s-1); |alpha| is solved from
// |lambda| = 1. The off-diagonal coefficient is (l1+l2) * beta where beta
// collects the geometric sums picked up by pushing powers of b through.
Attempt attempt_case2_oriented(const CMat& a, const CVec& x1, const CVec& x2,
                               int r, int s,
                               const std::vector<Complex>& phases) {
  Attempt at;
  const Eigen::Index n = x1.size();
  const CVec y1 = a * x1;
  const CVec y2 = a * x2;
  CMat triple(n, 3);
  triple << x1, y1, y2;
  if (numerical_rank(triple, kSpanTol) != 3) return at;

  const CVec coef = triple.completeOrthogonalDecomposition().solve(x2);
  if ((triple * coef - x2).norm() > 1e-7 * (1.0 + x2.norm())) return at;
  const Complex l1 = coef(0);
  const Complex l2 = coef(1);
  const Complex l3 = coef(2);
  if (std::abs(l3) < 1e-6 || std::abs(l3) > 1e6) return at;

  const double rho = std::pow(std::abs(l3), (1.0 - r - s) / (r + s));
  if (!std::isfinite(rho) || rho > 1e8 || rho < 1e-8) return at;

  Complex alpha{}, lambda{};
  bool have_alpha = false;
  for (const Complex& phi : phases) {
    const Complex acand = rho * phi;
    const Complex lcand =
        std::pow(acand, r + s) * std::pow(l3, r + s - 1);
    if (std::abs(lcand - 1.0) >= 0.5) {
      alpha = acand;
      lambda = lcand;
      have_alpha = true;
      break;
    }
  }
  if (!have_alpha) return at;

  const CMat f = dual_rows(triple);  // rows dual to (x1, y1, y2)
  if (!all_finite(f)) return at;
  const CVec g1 = f.row(0).transpose() + f.row(1).transpose();
  const CVec g2 = alpha * f.row(2).transpose();
  at.b = x1 * g1.transpose() + x2 * g2.transpose();

  const Complex q = alpha * l3;
  const auto geom = [&q](int lo, int hi) {
    Complex sum{0.0, 0.0};
    for (int t = lo; t <= hi; ++t) sum += std::pow(q, t);
    return sum;
  };
  Complex beta;
  if (s == 0) {
    at.tag = WitnessCase::Case2Subcase1;
    beta = alpha * geom(0, r - 2);
  } else if (r == 0) {
    at.tag = WitnessCase::Case2Subcase2;
    beta = alpha * geom(0, s - 2);
  } else if (r == 1 && s == 1) {
    at.tag = WitnessCase::Case2Subcase3;
    beta = Complex(1.0, 0.0);
  } else if (r == 1) {
    at.tag = WitnessCase::Case2Subcase4;
    beta = Complex(1.0, 0.0) + geom(1, s - 1);
  } else if (s == 1) {
    at.tag = WitnessCase::Case2Subcase5;
    beta = Complex(1.0, 0.0) + alpha * geom(1, r - 1);
  } else {
    at.tag = WitnessCase::Case2Subcase6;
    beta = Complex(1.0, 0.0) + geom(1, s - 1) + alpha * geom(s, r + s - 2);
  }

  // Eigenvector for lambda: the off-diagonal entry decides whether x2 (or
  // Ax2 when r = 0) is already an eigenvector.
  const Complex offdiag = (l1 + l2) * beta;
  Complex gamma1, gamma2;
  if (std::abs(offdiag) > 1e-12 * (1.0 + std::abs(lambda))) {
    gamma1 = Complex(1.0, 0.0);
    gamma2 = (lambda - 1.0) / offdiag;
  } else {
    gamma1 = Complex(0.0, 0.0);
    gamma2 = Complex(1.0, 0.0);
  }

  Case2Detail dt;
  dt.valid = true;
  dt.lambda1 = l1;
  dt.lambda2 = l2;
  dt.lambda3 = l3;
  dt.alpha = alpha;
  dt.beta = beta;
  dt.lambda = lambda;
  dt.gamma1 = gamma1;
  dt.gamma2 = gamma2;
  if (r >= 1) {
    dt.eig_one = x1;
    dt.eig_lambda = gamma1 * x1 + gamma2 * x2;
  } else {
    dt.eig_one = y1;
    dt.eig_lambda = gamma1 * y1 + gamma2 * y2;
  }
  at.detail = dt;
  at.predicted = {Complex(1.0, 0.0), lambda};
  at.ok = true;
  return at;
}

Attempt attempt_case2(const CMat& a, const PairGeometry& g, int r, int s,
                      const std::vector<Complex>& phases) {
  // The construction privileges x1; if x1 lands inside span{Ax1, Ax2} the
  // roles can simply be swapped.
  Attempt at = attempt_case2_oriented(a, g.x1, g.x2, r, s, phases);
  if (at.ok) return at;
  return attempt_case2_oriented(a, g.x2, g.x1, r, s, phases);
}

// dim span = 2: the plane through x1, x2 is invariant and A restricts to an
// invertible 2x2 map. Compress, pick b1 unitarily diagonal in the Schur
// basis with second diagonal entry of modulus |a/b|^(1/(r+s)) and random
// phase, and lift back. The sandwich has nonzero eigenvalues a and
// b*v^(r+s), equal in modulus and generically distinct.
Attempt attempt_case3(const CMat& a, const PairGeometry& g, int r, int s,
                      Rng& rng) {
  Attempt at;
  const Eigen::Index n = g.x1.size();
  CMat pairmat(n, 2);
  pairmat << g.x1, g.x2;
  if (numerical_rank(pairmat, kSpanTol) != 2) return at;

  Eigen::HouseholderQR<CMat> qr(pairmat);
  const CMat v = CMat(qr.householderQ()).leftCols(2);
  const double scale = 1.0 + a.norm();
  const CMat a1 = v.adjoint() * a * v;
  if ((a * v - v * a1).norm() > 1e-8 * scale) return at;  // not invariant

  Eigen::ComplexSchur<CMat> schur(a1, /*computeU=*/true);
  if (schur.info() != Eigen::Success) return at;
  const Complex da = schur.matrixT()(0, 0);
  const Complex db = schur.matrixT()(1, 1);
  if (std::abs(da) < 1e-10 * scale || std::abs(db) < 1e-10 * scale) return at;

  const double vmod = std::pow(std::abs(da / db), 1.0 / (r + s));
  if (!std::isfinite(vmod) || vmod == 0.0) return at;
  const CMat u = schur.matrixU();

  for (int trial = 0; trial < 1000; ++trial) {
    const Complex w = vmod * rng.unit_complex();
    const Complex second = db * std::pow(w, r + s);
    if (std::abs(second - da) < 0.3 * std::abs(da)) continue;
    CMat b1(2, 2);
    b1 << Complex(1.0, 0.0), Complex(0.0, 0.0), Complex(0.0, 0.0), w;
    at.b = v * (u * b1 * u.adjoint()) * v.adjoint();
    at.tag = WitnessCase::Case3;
    at.predicted = {da, second};
    at.ok = true;
    return at;
  }
  return at;
}

// r + s = 1 with dim span >= 3: duals h1, h2 of (Ax1, Ax2) give
// b = x1 (x) h1 + alpha x2 (x) h2, and bA fixes x1 and scales x2 by alpha,
// so both orders of the width-one sandwich show {1, alpha}.
Attempt attempt_direct(const PairGeometry& g, int /*r*/, int /*s*/,
                       const std::vector<Complex>& phases) {
  Attempt at;
  const Eigen::Index n = g.x1.size();
  CMat img(n, 2);
  img << g.y1, g.y2;
  const CMat h = dual_rows(img);
  if (!all_finite(h)) return at;

  Complex alpha{};
  bool have_alpha = false;
  for (const Complex& phi : phases) {
    if (std::abs(phi - 1.0) >= 0.5) {
      alpha = phi;
      have_alpha = true;
      break;
    }
  }
  if (!have_alpha) return at;

  at.b = g.x1 * h.row(0) + alpha * (g.x2 * h.row(1));
  at.tag = WitnessCase::DirectProduct;
  at.predicted = {Complex(1.0, 0.0), alpha};
  at.ok = true;
  return at;
}

Attempt attempt_for_pair(const CMat& a, const PairGeometry& g, int r, int s,
                         const std::vector<Complex>& phases, Rng& rng) {
  if (!g.images_independent) return {};
  if (r + s == 1) {
    if (g.span_dim >= 3) return attempt_direct(g, r, s, phases);
    return attempt_case3(a, g, r, s, rng);
  }
  switch (g.span_dim) {
    case 4:
      return attempt_case1(g, r, s, phases);
    case 3:
      return attempt_case2(a, g, r, s, phases);
    case 2:
      return attempt_case3(a, g, r, s, rng);
    default:
      return {};
  }
}

// A witness is only accepted after its sandwich is recomputed and the
// closed-form points are found in the actual peripheral spectrum.
bool verify_attempt(const CMat& a, int r, int s, const Attempt& at,
                    PeripheralSpectrum* sp_out) {
  if (!at.ok) return false;
  if (!all_finite(at.b)) return false;
  if (numerical_rank(at.b, 1e-10) > 2) return false;
  PeripheralSpectrum sp;
  try {
    sp = peripheral_spectrum(sandwich_matrix(at.b, a, r, s));
  } catch (const Error&) {
    return false;
  }
  if (sp.points.size() < 2) return false;
  const double thr = 1e-8 * std::max(1.0, sp.radius);
  for (const Complex& pz : at.predicted) {
    bool hit = false;
    for (const Complex& q : sp.points) {
      if (std::abs(pz - q) <= thr) {
        hit = true;
        break;
      }
    }
    if (!hit) return false;
  }
  *sp_out = sp;
  return true;
}

}  // namespace

const char* to_string(WitnessCase c) {
  switch (c) {
    case WitnessCase::Case1: return "Case1";
    case WitnessCase::Case2Subcase1: return "Case2.Subcase1";
    case WitnessCase::Case2Subcase2: return "Case2.Subcase2";
    case WitnessCase::Case2Subcase3: return "Case2.Subcase3";
    case WitnessCase::Case2Subcase4: return "Case2.Subcase4";
    case WitnessCase::Case2Subcase5: return "Case2.Subcase5";
    case WitnessCase::Case2Subcase6: return "Case2.Subcase6";
    case WitnessCase::Case3: return "Case3";
    case WitnessCase::DirectProduct: return "direct-product";
    case WitnessCase::RandomizedFallback: return "randomized-fallback";
  }
  return "unknown";
}

WitnessResult construct_witness(const CMat& a, int r, int s,
                                std::uint64_t seed) {
  require_square_finite(a, "construct_witness");
  if (r < 0 || s < 0 || r + s < 1) {
    throw Error(Errc::InvalidArgument,
                "construct_witness: need r, s >= 0 with r + s >= 1");
  }
  const Eigen::Index n = a.rows();
  if (numerical_rank(a) < 2) {
    throw Error(Errc::RankTooLow,
                "construct_witness: operator has numerical rank < 2");
  }

  const std::vector<Complex> phases = phase_schedule(24);
  Rng rng(seed);
  PeripheralSpectrum sp;

  // Deterministic pass: standard basis pairs, richest span geometry first,
  // scan order breaking ties.
  std::vector<PairGeometry> geoms;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      geoms.push_back(analyze_pair(a, CVec::Unit(n, i), CVec::Unit(n, j)));
    }
  }
  std::vector<size_t> order(geoms.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](size_t i, size_t j) {
    return geoms[i].span_dim > geoms[j].span_dim;
  });

  for (const size_t idx : order) {
    Attempt at = attempt_for_pair(a, geoms[idx], r, s, phases, rng);
    if (verify_attempt(a, r, s, at, &sp)) {
      WitnessResult res;
      res.found = true;
      res.b = at.b;
      res.spectrum = sp;
      res.case_tag = at.tag;
      res.predicted = at.predicted;
      res.case2 = at.detail;
      return res;
    }
  }

  // Randomized retries over fresh unit pairs.
  for (int t = 0; t < 1000; ++t) {
    const PairGeometry g =
        analyze_pair(a, rng.unit_vector(n), rng.unit_vector(n));
    Attempt at = attempt_for_pair(a, g, r, s, phases, rng);
    if (verify_attempt(a, r, s, at, &sp)) {
      WitnessResult res;
      res.found = true;
      res.b = at.b;
      res.spectrum = sp;
      res.case_tag = WitnessCase::RandomizedFallback;
      res.predicted = at.predicted;
      res.case2 = at.detail;
      return res;
    }
  }
  throw Error(Errc::ConstructionFailed,
              "construct_witness: no candidate pair produced a verifiable "
              "two-point sandwich spectrum");
}

bool is_rank_one_by_criterion(const CMat& a, int r, int s, bool skew,
                              int sample_budget, std::uint64_t seed) {
  require_square_finite(a, "is_rank_one_by_criterion");
  if (r < 0 || s < 0 || r + s < 1) {
    throw Error(Errc::InvalidArgument,
                "is_rank_one_by_criterion: need r, s >= 0 with r + s >= 1");
  }
  if (a.norm() <= kTolFloor) {
    throw Error(Errc::ZeroOperator,
                "is_rank_one_by_criterion: operator is numerically zero");
  }
  const CMat ahat = skew ? CMat(a.adjoint()) : a;
  const Eigen::Index n = a.rows();

  Rng rng(seed);
  for (int t = 0; t < sample_budget; ++t) {
    // Alternate rank-one and rank-two probes.
    CMat b;
    if (t % 2 == 0) {
      b = rng.gaussian_vector(n) * rng.gaussian_vector(n).transpose();
    } else {
      b = rng.gaussian_vector(n) * rng.gaussian_vector(n).transpose() +
          rng.gaussian_vector(n) * rng.gaussian_vector(n).transpose();
    }
    const PeripheralSpectrum sp =
        peripheral_spectrum(sandwich_matrix(b, ahat, r, s));
    if (sp.points.size() >= 2) return false;
  }

  // Sampling alone cannot close the question: a two-point spectrum needs a
  // tuned b, which random draws essentially never produce. Settle by rank.
  if (numerical_rank(ahat) < 2) return true;
  const WitnessResult w = construct_witness(ahat, r, s, seed + 1);
  return !w.found;
}

}  // namespace perispec
