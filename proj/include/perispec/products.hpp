#pragma once

#include <vector>

#include "perispec/descriptor.hpp"
#include "perispec/spectra.hpp"
#include "perispec/types.hpp"

namespace perispec {

// A descriptor together with its k operands, all square of one dimension.
struct ProductInstance {
  ProductDescriptor descriptor;
  std::vector<CMat> operands;
};

void check_instance(const ProductInstance& inst);

// Left-to-right product following the word.
CMat evaluate(const ProductInstance& inst);

// Same, with the conjugate transpose applied to the factor at the
// distinguished position.
CMat evaluate_skew(const ProductInstance& inst);

// Rank-one operator z -> f(z) x, as a matrix x f^T. The functional acts
// without conjugation, so pairing(x, f) = sum_i f_i x_i.
struct RankOneOperator {
  CVec x;
  CVec f;
  CMat matrix() const { return x * f.transpose(); }
};

Complex pairing(const CVec& x, const CVec& f);

// Peripheral spectrum of B^r A B^s for B = x (x) f by closed form: the only
// possibly nonzero eigenvalue is pairing(x,f)^(r+s-1) * pairing(Ax, f).
// Requires r, s >= 0 and r + s >= 1.
PeripheralSpectrum sandwich_peripheral(const RankOneOperator& b, const CMat& a,
                                       int r, int s, double tol = kDefaultTol);

// Repeated-multiplication B^r A B^s for any square B; shared by the witness
// machinery and tests.
CMat sandwich_matrix(const CMat& b, const CMat& a, int r, int s);

}  // namespace perispec
