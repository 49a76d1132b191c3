#pragma once

#include <cstdint>
#include <vector>

#include "perispec/products.hpp"
#include "perispec/spectra.hpp"
#include "perispec/types.hpp"

namespace perispec {

inline constexpr std::uint64_t kWitnessSeed = 0x9E3779B9u;

// Which construction produced the witness. The Case2 variants differ only in
// how the off-diagonal coefficient of the restricted action is assembled;
// they are reported separately because each has its own closed form.
enum class WitnessCase {
  Case1,
  Case2Subcase1,
  Case2Subcase2,
  Case2Subcase3,
  Case2Subcase4,
  Case2Subcase5,
  Case2Subcase6,
  Case3,
  DirectProduct,
  RandomizedFallback,
};

const char* to_string(WitnessCase c);

// Closed-form data for the Case2 construction, exposed so the predicted
// eigenpairs can be checked against the assembled matrices directly.
struct Case2Detail {
  bool valid = false;
  Complex lambda1{}, lambda2{}, lambda3{};
  Complex alpha{}, beta{}, lambda{};
  Complex gamma1{}, gamma2{};
  CVec eig_one;     // eigenvector with eigenvalue 1
  CVec eig_lambda;  // eigenvector with eigenvalue lambda
};

struct WitnessResult {
  bool found = false;
  CMat b;                          // rank <= 2
  PeripheralSpectrum spectrum;     // recomputed from b^r a b^s
  WitnessCase case_tag = WitnessCase::RandomizedFallback;
  std::vector<Complex> predicted;  // closed-form peripheral points
  Case2Detail case2;
};

// Builds a rank <= 2 operator b whose sandwich b^r a b^s has at least two
// peripheral points, which certifies rank(a) >= 2. Deterministic scan over
// standard basis pairs first, randomized retries after. Throws RankTooLow
// when a has numerical rank < 2 and ConstructionFailed if every candidate
// fails verification.
WitnessResult construct_witness(const CMat& a, int r, int s,
                                std::uint64_t seed = kWitnessSeed);

// Spectral rank-one test: samples random rank <= 2 operators b and inspects
// the peripheral spectrum of b^r a^ b^s (a^ = adjoint of a when skew is
// set); any two-point outcome certifies rank >= 2. When sampling stays
// single-point the deterministic witness settles the answer, so the verdict
// does not rest on sampling luck. Throws ZeroOperator for a ~ 0.
bool is_rank_one_by_criterion(const CMat& a, int r, int s, bool skew = false,
                              int sample_budget = 25,
                              std::uint64_t seed = kWitnessSeed);

}  // namespace perispec
