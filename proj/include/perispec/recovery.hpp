#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "perispec/descriptor.hpp"
#include "perispec/spectra.hpp"
#include "perispec/types.hpp"

namespace perispec {

// Linear map on n_in x n_in matrices given by its images of the matrix
// units E_ij, stored row-major by (i, j). Images are square of size n_out.
struct LinearMapTable {
  int n_in = 0;
  int n_out = 0;
  std::vector<CMat> images;

  const CMat& image_of_unit(int i, int j) const;  // 0-based
  CMat apply(const CMat& a) const;

  // Probes a black-box map with every matrix unit.
  static LinearMapTable from_callback(
      int n_in, const std::function<CMat(const CMat&)>& phi);
};

enum class FormKind {
  Similarity,               // A -> lambda T A T^-1
  TransposeSimilarity,      // A -> lambda T A^t T^-1
  UnitarySimilarity,        // A -> c U A U^*
  UnitaryTransposeSimilarity,  // A -> c U A^t U^*
  NonStandard,
};

const char* to_string(FormKind k);

struct RecoveryReport {
  FormKind form = FormKind::NonStandard;
  Complex scalar{0.0, 0.0};
  CMat transform;              // empty when NonStandard
  double residual = -1.0;      // max over matrix units, -1 when NonStandard
  std::vector<std::string> checked_constraints;
};

struct VerifyResult {
  bool preserved = true;
  std::vector<CMat> counterexample;  // operand tuple, empty when preserved
  int trials_run = 0;
};

// Samples operand tuples (gaussian, matrix units, rank-one, identity
// padding) and compares peripheral spectra of the plain product against the
// product of images. With skew set, both sides take the conjugate transpose
// at the distinguished position.
VerifyResult verify_preservation(const LinearMapTable& phi,
                                 const ProductDescriptor& d, int trials,
                                 bool skew, double tol, std::uint64_t seed);

// Least-squares fit of Phi(A) = lambda T A T^-1 (transpose: A^t) via the
// stacked linear pencil on vec(T). ok only if the pencil has a nullspace
// vector whose matrix is well-conditioned and reproduces every image.
struct FormFit {
  bool ok = false;
  CMat t;
  double residual = -1.0;
};

FormFit fit_form(const LinearMapTable& phi, Complex lambda, bool transpose,
                 double tol = kDefaultTol);

// Tries lambda over the m-th roots of unity, Similarity before
// TransposeSimilarity, and reports the first fit.
RecoveryReport recover_banach_form(const LinearMapTable& phi, int m,
                                   double tol = kDefaultTol);

// Hilbert-space refinement: scalar restricted to {1, -1}, transform
// rescaled and checked for unitarity, and the parity constraint (c = 1
// whenever m is odd) enforced.
RecoveryReport recover_hilbert_form(const LinearMapTable& phi, int m,
                                    double tol = kDefaultTol);

// Checks <Ax, x> = <Bx, x>^n_exp on random unit vectors and compares with
// the closed form B = cI, A = c^n I, c = tr(B)/dim. Throws
// InconsistentWithLemma if the two disagree, which flags tolerance
// misconfiguration. Returns whether both hold.
bool scalar_power_test(const CMat& a, const CMat& b, int n_exp, int trials,
                       double tol, std::uint64_t seed);

enum class WignerKind { Unitary, Antiunitary, Neither };

const char* to_string(WignerKind k);

// Decides whether pairs (x_j, y_j) with |<y_i, y_j>| = |<x_i, x_j>| are
// related by a unitary or antiunitary after per-vector phases. The x's must
// span the space (SpanDeficient otherwise). Hilbert inner products.
WignerKind wigner_check(const std::vector<std::pair<CVec, CVec>>& pairs,
                        double tol = kDefaultTol);

}  // namespace perispec
