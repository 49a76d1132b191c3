#include "perispec/spectra.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace perispec {

namespace {

bool lex_less(const Complex& a, const Complex& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

// Kuhn augmenting-path matching on the compatibility graph.
bool try_augment(int i, const std::vector<std::vector<char>>& ok,
                 std::vector<char>& visited, std::vector<int>& match_of) {
  const int n = static_cast<int>(ok[static_cast<size_t>(i)].size());
  for (int j = 0; j < n; ++j) {
    if (!ok[static_cast<size_t>(i)][static_cast<size_t>(j)] ||
        visited[static_cast<size_t>(j)])
      continue;
    visited[static_cast<size_t>(j)] = 1;
    if (match_of[static_cast<size_t>(j)] < 0 ||
        try_augment(match_of[static_cast<size_t>(j)], ok, visited, match_of)) {
      match_of[static_cast<size_t>(j)] = i;
      return true;
    }
  }
  return false;
}

}  // namespace

double membership_band(double tol, double radius) {
  return std::max(tol * std::max(1.0, radius), kTolFloor);
}

std::vector<Complex> eigenvalues(const CMat& a) {
  require_square_finite(a, "eigenvalues");
  const Eigen::Index n = a.rows();
  Eigen::ComplexSchur<CMat> schur;
  schur.setMaxIterations(100 * n);
  schur.compute(a, /*computeU=*/false);
  if (schur.info() != Eigen::Success) {
    throw Error(Errc::NoConvergence,
                "eigenvalues: Schur iteration did not converge for n=" +
                    std::to_string(n));
  }
  std::vector<Complex> out(static_cast<size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) out[static_cast<size_t>(i)] = schur.matrixT()(i, i);
  return out;
}

PeripheralSpectrum peripheral_spectrum(const CMat& a, double tol) {
  const std::vector<Complex> eigs = eigenvalues(a);
  PeripheralSpectrum sp;
  sp.tol = tol;
  for (const Complex& z : eigs) sp.radius = std::max(sp.radius, std::abs(z));

  const double band = membership_band(tol, sp.radius);
  std::vector<Complex> cand;
  for (const Complex& z : eigs) {
    if (std::abs(z) >= sp.radius - band) cand.push_back(z);
  }
  std::sort(cand.begin(), cand.end(), lex_less);

  // Cluster peripheral values that agree to within the band; report
  // centroids so repeated eigenvalues collapse to one point.
  std::vector<Complex> sums;
  std::vector<int> counts;
  for (const Complex& z : cand) {
    bool merged = false;
    for (size_t c = 0; c < sums.size(); ++c) {
      const Complex centroid = sums[c] / static_cast<double>(counts[c]);
      if (std::abs(z - centroid) <= band) {
        sums[c] += z;
        ++counts[c];
        merged = true;
        break;
      }
    }
    if (!merged) {
      sums.push_back(z);
      counts.push_back(1);
    }
  }
  for (size_t c = 0; c < sums.size(); ++c) {
    sp.points.push_back(sums[c] / static_cast<double>(counts[c]));
  }
  std::sort(sp.points.begin(), sp.points.end(), lex_less);
  return sp;
}

bool spectra_equal(const PeripheralSpectrum& s1, const PeripheralSpectrum& s2,
                   double tol) {
  if (s1.points.size() != s2.points.size()) return false;
  const int n = static_cast<int>(s1.points.size());
  if (n == 0) return true;
  const double dist_tol =
      std::max(tol * std::max(1.0, std::max(s1.radius, s2.radius)), kTolFloor);
  std::vector<std::vector<char>> ok(static_cast<size_t>(n),
                                    std::vector<char>(static_cast<size_t>(n), 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      ok[static_cast<size_t>(i)][static_cast<size_t>(j)] =
          std::abs(s1.points[static_cast<size_t>(i)] -
                   s2.points[static_cast<size_t>(j)]) <= dist_tol;

  std::vector<int> match_of(static_cast<size_t>(n), -1);
  for (int i = 0; i < n; ++i) {
    std::vector<char> visited(static_cast<size_t>(n), 0);
    if (!try_augment(i, ok, visited, match_of)) return false;
  }
  return true;
}

int numerical_rank(const CMat& a, double tol) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<CMat> svd(a);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0) return 0;
  const double cut = tol * std::max(1.0, sv(0));
  int rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > cut) ++rank;
  }
  return rank;
}

}  // namespace perispec
