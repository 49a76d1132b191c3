#include "perispec/products.hpp"

#include <cmath>
#include <string>

namespace perispec {

void check_instance(const ProductInstance& inst) {
  const ProductDescriptor& d = inst.descriptor;
  if (static_cast<int>(inst.operands.size()) != d.k) {
    throw Error(Errc::DimensionMismatch,
                "product: expected " + std::to_string(d.k) + " operands, got " +
                    std::to_string(inst.operands.size()));
  }
  if (inst.operands.empty()) {
    throw Error(Errc::InvalidArgument, "product: no operands");
  }
  const Eigen::Index n = inst.operands[0].rows();
  for (size_t i = 0; i < inst.operands.size(); ++i) {
    require_square_finite(inst.operands[i], "product operand");
    if (inst.operands[i].rows() != n) {
      throw Error(Errc::DimensionMismatch,
                  "product: operand " + std::to_string(i + 1) + " is " +
                      std::to_string(inst.operands[i].rows()) +
                      "-dimensional, expected " + std::to_string(n));
    }
  }
}

namespace {

CMat evaluate_impl(const ProductInstance& inst, bool skew) {
  check_instance(inst);
  const ProductDescriptor& d = inst.descriptor;
  const Eigen::Index n = inst.operands[0].rows();
  CMat acc = CMat::Identity(n, n);
  for (int t = 0; t < d.width(); ++t) {
    const CMat& factor =
        inst.operands[static_cast<size_t>(d.seq[static_cast<size_t>(t)] - 1)];
    if (skew && t + 1 == d.p) {
      acc = acc * factor.adjoint();
    } else {
      acc = acc * factor;
    }
  }
  return acc;
}

}  // namespace

CMat evaluate(const ProductInstance& inst) { return evaluate_impl(inst, false); }

CMat evaluate_skew(const ProductInstance& inst) { return evaluate_impl(inst, true); }

Complex pairing(const CVec& x, const CVec& f) {
  if (x.size() != f.size()) {
    throw Error(Errc::DimensionMismatch, "pairing: vector sizes differ");
  }
  return (f.transpose() * x)(0);
}

CMat sandwich_matrix(const CMat& b, const CMat& a, int r, int s) {
  CMat acc = CMat::Identity(a.rows(), a.cols());
  for (int i = 0; i < r; ++i) acc = acc * b;
  acc = acc * a;
  for (int i = 0; i < s; ++i) acc = acc * b;
  return acc;
}

PeripheralSpectrum sandwich_peripheral(const RankOneOperator& b, const CMat& a,
                                       int r, int s, double tol) {
  require_square_finite(a, "sandwich_peripheral");
  if (r < 0 || s < 0 || r + s < 1) {
    throw Error(Errc::InvalidArgument,
                "sandwich_peripheral: need r, s >= 0 with r + s >= 1");
  }
  if (b.x.size() != a.rows() || b.f.size() != a.rows()) {
    throw Error(Errc::DimensionMismatch,
                "sandwich_peripheral: vector length does not match matrix");
  }
  if (b.x.norm() == 0.0 || b.f.norm() == 0.0) {
    throw Error(Errc::ZeroOperator, "sandwich_peripheral: x and f must be nonzero");
  }

  // B^r A B^s is a rank-one perturbation argument away from the trace: its
  // only possibly nonzero eigenvalue is <x,f>^(r+s-1) <Ax,f>.
  const Complex base = pairing(b.x, b.f);
  const Complex head = pairing(a * b.x, b.f);
  const Complex tau = std::pow(base, r + s - 1) * head;

  const double scale = 1.0 + a.norm() * b.x.norm() * b.f.norm();
  PeripheralSpectrum sp;
  sp.tol = tol;
  if (std::abs(tau) <= tol * scale) {
    sp.points = {Complex(0.0, 0.0)};
    sp.radius = 0.0;
  } else {
    sp.points = {tau};
    sp.radius = std::abs(tau);
  }
  return sp;
}

}  // namespace perispec
