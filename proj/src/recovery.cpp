#include "perispec/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <deque>
#include <numbers>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "perispec/products.hpp"
#include "perispec/rng.hpp"

namespace perispec {

namespace {

void check_table(const LinearMapTable& phi) {
  if (phi.n_in < 1 || phi.n_out < 1) {
    throw Error(Errc::InvalidArgument, "map table: dimensions must be positive");
  }
  const size_t expect =
      static_cast<size_t>(phi.n_in) * static_cast<size_t>(phi.n_in);
  if (phi.images.size() != expect) {
    throw Error(Errc::DimensionMismatch,
                "map table: expected " + std::to_string(expect) +
                    " images, got " + std::to_string(phi.images.size()));
  }
  for (const CMat& img : phi.images) {
    require_square_finite(img, "map image");
    if (img.rows() != phi.n_out) {
      throw Error(Errc::DimensionMismatch,
                  "map table: image dimension does not match n_out");
    }
  }
}

CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

CMat matrix_unit(int n, int i, int j) {
  CMat e = CMat::Zero(n, n);
  e(i, j) = Complex(1.0, 0.0);
  return e;
}

double image_scale(const LinearMapTable& phi) {
  double s = 1.0;
  for (const CMat& img : phi.images) s = std::max(s, img.norm());
  return s;
}

// Certifies m^dim == 0 by repeated squaring of the normalized matrix.
// A nilpotent matrix has peripheral spectrum exactly {0}, while an
// eigensolver resolves a defective zero cluster only to about eps^(1/k);
// the power test is accurate to working precision, so it is the instrument
// that decides.
bool certified_nilpotent(const CMat& m) {
  const double scale = m.norm();
  if (!(scale > 0.0)) return true;
  CMat p = m / scale;
  for (Eigen::Index covered = 1; covered < m.rows(); covered *= 2) {
    p = CMat(p * p);
    if (p.norm() <= 1e-12) return true;
  }
  return p.norm() <= 1e-12;
}

}  // namespace

const CMat& LinearMapTable::image_of_unit(int i, int j) const {
  if (i < 0 || j < 0 || i >= n_in || j >= n_in) {
    throw Error(Errc::OutOfRange, "image_of_unit: index outside 0..n_in-1");
  }
  return images[static_cast<size_t>(i) * static_cast<size_t>(n_in) +
                static_cast<size_t>(j)];
}

CMat LinearMapTable::apply(const CMat& a) const {
  check_table(*this);
  require_square_finite(a, "apply");
  if (a.rows() != n_in) {
    throw Error(Errc::DimensionMismatch,
                "apply: operand is " + std::to_string(a.rows()) +
                    "-dimensional, table expects " + std::to_string(n_in));
  }
  CMat out = CMat::Zero(n_out, n_out);
  for (int i = 0; i < n_in; ++i)
    for (int j = 0; j < n_in; ++j) out += a(i, j) * image_of_unit(i, j);
  return out;
}

LinearMapTable LinearMapTable::from_callback(
    int n_in, const std::function<CMat(const CMat&)>& phi) {
  if (n_in < 1) {
    throw Error(Errc::InvalidArgument, "from_callback: n_in must be positive");
  }
  LinearMapTable table;
  table.n_in = n_in;
  for (int i = 0; i < n_in; ++i) {
    for (int j = 0; j < n_in; ++j) {
      CMat img = phi(matrix_unit(n_in, i, j));
      require_square_finite(img, "callback image");
      if (table.images.empty()) {
        table.n_out = static_cast<int>(img.rows());
      } else if (img.rows() != table.n_out) {
        throw Error(Errc::DimensionMismatch,
                    "from_callback: images have inconsistent dimensions");
      }
      table.images.push_back(std::move(img));
    }
  }
  return table;
}

const char* to_string(FormKind k) {
  switch (k) {
    case FormKind::Similarity: return "similarity";
    case FormKind::TransposeSimilarity: return "transpose-similarity";
    case FormKind::UnitarySimilarity: return "unitary-similarity";
    case FormKind::UnitaryTransposeSimilarity:
      return "unitary-transpose-similarity";
    case FormKind::NonStandard: return "non-standard";
  }
  return "unknown";
}

const char* to_string(WignerKind k) {
  switch (k) {
    case WignerKind::Unitary: return "unitary";
    case WignerKind::Antiunitary: return "antiunitary";
    case WignerKind::Neither: return "neither";
  }
  return "unknown";
}

VerifyResult verify_preservation(const LinearMapTable& phi,
                                 const ProductDescriptor& d, int trials,
                                 bool skew, double tol, std::uint64_t seed) {
  check_table(phi);
  if (trials < 1) {
    throw Error(Errc::InvalidArgument, "verify_preservation: trials < 1");
  }
  const int n = phi.n_in;
  Rng rng(seed);

  VerifyResult res;
  for (int t = 0; t < trials; ++t) {
    std::vector<CMat> ops(static_cast<size_t>(d.k));
    switch (t % 4) {
      case 0:
        for (CMat& op : ops) op = rng.gaussian_matrix(n, n);
        break;
      case 1:
        for (CMat& op : ops)
          op = matrix_unit(n, rng.uniform_int(0, n - 1),
                           rng.uniform_int(0, n - 1));
        break;
      case 2:
        for (CMat& op : ops)
          op = rng.gaussian_vector(n) * rng.gaussian_vector(n).transpose();
        break;
      default:
        // Identity everywhere except the distinguished slot.
        for (CMat& op : ops) op = CMat::Identity(n, n);
        ops[static_cast<size_t>(d.seq[static_cast<size_t>(d.p - 1)] - 1)] =
            rng.gaussian_matrix(n, n);
        break;
    }

    ProductInstance plain{d, ops};
    std::vector<CMat> imgs;
    imgs.reserve(ops.size());
    for (const CMat& op : ops) imgs.push_back(phi.apply(op));
    ProductInstance mapped{d, imgs};

    const CMat lhs = skew ? evaluate_skew(plain) : evaluate(plain);
    const CMat rhs = skew ? evaluate_skew(mapped) : evaluate(mapped);
    res.trials_run = t + 1;
    PeripheralSpectrum sl = peripheral_spectrum(lhs, tol);
    PeripheralSpectrum sr = peripheral_spectrum(rhs, tol);
    if (certified_nilpotent(lhs)) sl = PeripheralSpectrum{{Complex(0.0, 0.0)}, 0.0, tol};
    if (certified_nilpotent(rhs)) sr = PeripheralSpectrum{{Complex(0.0, 0.0)}, 0.0, tol};
    if (!spectra_equal(sl, sr, tol)) {
      res.preserved = false;
      res.counterexample = ops;
      return res;
    }
  }
  res.preserved = true;
  return res;
}

FormFit fit_form(const LinearMapTable& phi, Complex lambda, bool transpose,
                 double tol) {
  check_table(phi);
  FormFit fit;
  if (phi.n_in != phi.n_out) return fit;
  const int n = phi.n_in;
  const int nn = n * n;
  const CMat eye = CMat::Identity(n, n);

  // Phi(E_ij) T = lambda T C_ij, C_ij = E_ij (or E_ji for the transpose
  // form), stacked over all units as a pencil acting on vec(T).
  CMat pencil(static_cast<Eigen::Index>(nn) * nn, nn);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int u = i * n + j;
      const CMat c = transpose ? matrix_unit(n, j, i) : matrix_unit(n, i, j);
      pencil.middleRows(static_cast<Eigen::Index>(u) * nn, nn) =
          kron(eye, phi.image_of_unit(i, j)) -
          lambda * kron(c.transpose(), eye);
    }
  }

  Eigen::JacobiSVD<CMat> svd(pencil, Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  if (!(smax > 0.0)) return fit;
  const double cut = std::max(tol * std::max(1.0, smax), kTolFloor);
  const double accept = std::max(100.0 * tol, 1e-8) * image_scale(phi);

  for (Eigen::Index idx = nn - 1; idx >= 0; --idx) {
    if (sv(idx) > cut) break;
    CMat t(n, n);
    const CVec v = svd.matrixV().col(idx);
    for (int col = 0; col < n; ++col)
      for (int row = 0; row < n; ++row) t(row, col) = v(col * n + row);

    Eigen::JacobiSVD<CMat> tsvd(t);
    const auto& tsv = tsvd.singularValues();
    if (tsv(n - 1) <= tol * tsv(0)) continue;  // not invertible

    // Canonical scaling: unit Frobenius norm, first sizable entry rotated
    // onto the positive real axis.
    t /= t.norm();
    for (int col = 0; col < n && true; ++col) {
      bool done = false;
      for (int row = 0; row < n; ++row) {
        const Complex e = t(row, col);
        if (std::abs(e) > 1e-8) {
          t *= std::conj(e / std::abs(e));
          done = true;
          break;
        }
      }
      if (done) break;
    }

    const CMat tinv = t.inverse();
    double resid = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const CMat c = transpose ? matrix_unit(n, j, i) : matrix_unit(n, i, j);
        resid = std::max(
            resid, (phi.image_of_unit(i, j) - lambda * t * c * tinv).norm());
      }
    }
    if (resid <= accept) {
      fit.ok = true;
      fit.t = t;
      fit.residual = resid;
      return fit;
    }
  }
  return fit;
}

RecoveryReport recover_banach_form(const LinearMapTable& phi, int m,
                                   double tol) {
  check_table(phi);
  if (m < 1) {
    throw Error(Errc::InvalidArgument, "recover_banach_form: m < 1");
  }
  RecoveryReport rep;
  if (phi.n_in != phi.n_out) {
    rep.checked_constraints.push_back(
        "input and output dimensions differ; no similarity form applies");
    return rep;
  }
  for (const bool transpose : {false, true}) {
    for (int j = 0; j < m; ++j) {
      const Complex lambda =
          std::polar(1.0, 2.0 * std::numbers::pi * j / m);
      const FormFit fit = fit_form(phi, lambda, transpose, tol);
      if (fit.ok) {
        rep.form = transpose ? FormKind::TransposeSimilarity
                             : FormKind::Similarity;
        rep.scalar = lambda;
        rep.transform = fit.t;
        rep.residual = fit.residual;
        rep.checked_constraints.push_back("scalar is an m-th root of unity");
        rep.checked_constraints.push_back(
            "transform is invertible with condition below 1/tol");
        rep.checked_constraints.push_back(
            "all matrix-unit images reproduced within tolerance");
        return rep;
      }
    }
  }
  rep.checked_constraints.push_back(
      "no m-th root of unity admits a similarity or transpose-similarity "
      "transform");
  return rep;
}

RecoveryReport recover_hilbert_form(const LinearMapTable& phi, int m,
                                    double tol) {
  check_table(phi);
  if (m < 1) {
    throw Error(Errc::InvalidArgument, "recover_hilbert_form: m < 1");
  }
  RecoveryReport rep;
  if (phi.n_in != phi.n_out) {
    rep.checked_constraints.push_back(
        "input and output dimensions differ; no congruence form applies");
    return rep;
  }
  const int n = phi.n_in;
  const double utol = std::max(100.0 * tol, 1e-8) * std::max(1.0, std::sqrt(n));

  for (const Complex c : {Complex(1.0, 0.0), Complex(-1.0, 0.0)}) {
    for (const bool transpose : {false, true}) {
      const FormFit fit = fit_form(phi, c, transpose, tol);
      if (!fit.ok) continue;

      // fit_form normalizes to unit Frobenius norm; a unitary transform is
      // recovered by rescaling to unit operator norm.
      Eigen::JacobiSVD<CMat> tsvd(fit.t);
      CMat u = fit.t / tsvd.singularValues()(0);
      if ((u * u.adjoint() - CMat::Identity(n, n)).norm() > utol) {
        rep.checked_constraints.push_back(
            std::string("rejected c=") + (c.real() > 0 ? "1" : "-1") +
            (transpose ? " transpose" : "") +
            " fit: transform is not unitary after rescaling");
        continue;
      }

      if (m % 2 == 1 && c.real() < 0.0) {
        rep.form = FormKind::NonStandard;
        rep.checked_constraints.push_back(
            "map matches c=-1 congruence, but c=1 is required whenever the "
            "width is odd");
        return rep;
      }

      rep.form = transpose ? FormKind::UnitaryTransposeSimilarity
                           : FormKind::UnitarySimilarity;
      rep.scalar = c;
      rep.transform = u;
      rep.residual = fit.residual;
      rep.checked_constraints.push_back("scalar restricted to {1, -1}");
      rep.checked_constraints.push_back("transform unitary within tolerance");
      if (m % 2 == 1) {
        rep.checked_constraints.push_back("odd width: scalar verified to be 1");
      }
      return rep;
    }
  }
  rep.checked_constraints.push_back(
      "no sign admits a unitary similarity or transpose-similarity form");
  return rep;
}

bool scalar_power_test(const CMat& a, const CMat& b, int n_exp, int trials,
                       double tol, std::uint64_t seed) {
  require_square_finite(a, "scalar_power_test");
  require_square_finite(b, "scalar_power_test");
  if (a.rows() != b.rows()) {
    throw Error(Errc::DimensionMismatch,
                "scalar_power_test: operand dimensions differ");
  }
  if (n_exp < 2) {
    throw Error(Errc::InvalidArgument, "scalar_power_test: exponent < 2");
  }
  if (trials < 1) {
    throw Error(Errc::InvalidArgument, "scalar_power_test: trials < 1");
  }
  if (a.norm() <= kTolFloor || b.norm() <= kTolFloor) {
    throw Error(Errc::ZeroOperator,
                "scalar_power_test: both operators must be nonzero");
  }
  const Eigen::Index n = a.rows();
  Rng rng(seed);

  const double scale = 1.0 + a.norm() + std::pow(b.norm(), n_exp);
  bool sampled = true;
  for (int t = 0; t < trials; ++t) {
    const CVec x = rng.unit_vector(n);
    const Complex qa = (x.adjoint() * (a * x))(0);
    const Complex qb = (x.adjoint() * (b * x))(0);
    if (std::abs(qa - std::pow(qb, n_exp)) > tol * scale) {
      sampled = false;
      break;
    }
  }

  const Complex c = b.trace() / static_cast<double>(n);
  const bool closed =
      (b - c * CMat::Identity(n, n)).norm() <= tol * scale &&
      (a - std::pow(c, n_exp) * CMat::Identity(n, n)).norm() <= tol * scale;

  if (sampled != closed) {
    throw Error(Errc::InconsistentWithLemma,
                sampled ? "sampled power identity holds but the operators are "
                          "not of scalar form; tolerances are misconfigured"
                        : "operators are of scalar form but the sampled power "
                          "identity fails; tolerances are misconfigured");
  }
  return closed;
}

WignerKind wigner_check(const std::vector<std::pair<CVec, CVec>>& pairs,
                        double tol) {
  if (pairs.empty()) {
    throw Error(Errc::InvalidArgument, "wigner_check: no vector pairs");
  }
  const Eigen::Index n = pairs[0].first.size();
  const int count = static_cast<int>(pairs.size());
  for (const auto& [x, y] : pairs) {
    if (x.size() != n || y.size() != n) {
      throw Error(Errc::DimensionMismatch,
                  "wigner_check: all vectors must share one dimension");
    }
  }
  CMat xs(n, count), ys(n, count);
  for (int j = 0; j < count; ++j) {
    xs.col(j) = pairs[static_cast<size_t>(j)].first;
    ys.col(j) = pairs[static_cast<size_t>(j)].second;
  }
  if (numerical_rank(xs) < n) {
    throw Error(Errc::SpanDeficient,
                "wigner_check: input vectors do not span the space");
  }

  const CMat gx = xs.adjoint() * xs;
  const CMat gy = ys.adjoint() * ys;
  double gmax = 1.0;
  for (Eigen::Index j = 0; j < count; ++j)
    for (Eigen::Index i = 0; i < count; ++i)
      gmax = std::max(gmax, std::abs(gx(i, j)));
  const double mod_tol = std::max(100.0 * tol, 1e-8) * gmax;
  for (Eigen::Index j = 0; j < count; ++j) {
    for (Eigen::Index i = 0; i < count; ++i) {
      if (std::abs(std::abs(gy(i, j)) - std::abs(gx(i, j))) > mod_tol) {
        return WignerKind::Neither;
      }
    }
  }

  const double edge_thr = 1e-6 * gmax;
  const double fit_tol = std::max(100.0 * tol, 1e-8);

  // For each hypothesis: propagate per-vector phases along Gram-matrix
  // edges, strip them, and try to realize the stripped targets by one
  // unitary. The final residual check makes the edge threshold safe even
  // when weak couplings are skipped.
  const auto try_hypothesis = [&](bool antiunitary) -> bool {
    const CMat gref = antiunitary ? gx.conjugate() : gx;
    std::vector<Complex> phase(static_cast<size_t>(count), Complex(0.0, 0.0));
    std::vector<char> seen(static_cast<size_t>(count), 0);
    for (int root = 0; root < count; ++root) {
      if (seen[static_cast<size_t>(root)]) continue;
      phase[static_cast<size_t>(root)] = Complex(1.0, 0.0);
      seen[static_cast<size_t>(root)] = 1;
      std::deque<int> queue{root};
      while (!queue.empty()) {
        const int i = queue.front();
        queue.pop_front();
        for (int j = 0; j < count; ++j) {
          if (seen[static_cast<size_t>(j)] || std::abs(gref(i, j)) <= edge_thr)
            continue;
          Complex ratio = gy(i, j) / gref(i, j);
          const double mag = std::abs(ratio);
          if (mag <= 0.0) continue;
          ratio /= mag;
          // gy(i,j) = conj(phi_i) phi_j gref(i,j)
          phase[static_cast<size_t>(j)] =
              phase[static_cast<size_t>(i)] * ratio;
          seen[static_cast<size_t>(j)] = 1;
          queue.push_back(j);
        }
      }
    }
    CMat zs(n, count);
    for (int j = 0; j < count; ++j)
      zs.col(j) = std::conj(phase[static_cast<size_t>(j)]) * ys.col(j);

    const CMat source = antiunitary ? xs.conjugate() : xs;
    const CMat u =
        zs * source.completeOrthogonalDecomposition().pseudoInverse().eval();
    if ((u.adjoint() * u - CMat::Identity(n, n)).norm() >
        fit_tol * std::max(1.0, std::sqrt(static_cast<double>(n)))) {
      return false;
    }
    for (int j = 0; j < count; ++j) {
      if ((u * source.col(j) - zs.col(j)).norm() >
          fit_tol * (1.0 + source.col(j).norm())) {
        return false;
      }
    }
    return true;
  };

  if (try_hypothesis(false)) return WignerKind::Unitary;
  if (try_hypothesis(true)) return WignerKind::Antiunitary;
  return WignerKind::Neither;
}

}  // namespace perispec
