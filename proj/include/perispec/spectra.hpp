#pragma once

#include <vector>

#include "perispec/types.hpp"

namespace perispec {

// Eigenvalues of maximum modulus, deduplicated. `radius` is the spectral
// radius; `points` are cluster centroids sorted by (Re, Im). The zero matrix
// reports radius 0 with the single point 0.
struct PeripheralSpectrum {
  std::vector<Complex> points;
  double radius = 0.0;
  double tol = kDefaultTol;
};

// All eigenvalues (with multiplicity, unordered beyond the solver's output).
// Throws NoConvergence if the Schur iteration fails.
std::vector<Complex> eigenvalues(const CMat& a);

PeripheralSpectrum peripheral_spectrum(const CMat& a, double tol = kDefaultTol);

// Set equality of the two point lists under a tolerance scaled by
// max(1, radius). Exact bipartite matching, so clustered points cannot be
// double-booked.
bool spectra_equal(const PeripheralSpectrum& s1, const PeripheralSpectrum& s2,
                   double tol = kDefaultTol);

// Numerical rank: singular values above tol * max(1, sigma_max).
int numerical_rank(const CMat& a, double tol = kDefaultTol);

// Width of the modulus band around `radius` within which an eigenvalue
// counts as peripheral.
double membership_band(double tol, double radius);

}  // namespace perispec
