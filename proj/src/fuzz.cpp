#include "perispec/fuzz.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "perispec/json_io.hpp"
#include "perispec/products.hpp"
#include "perispec/recovery.hpp"
#include "perispec/rng.hpp"
#include "perispec/spectra.hpp"
#include "perispec/witness.hpp"

namespace perispec {

namespace {

// FNV-1a; std::hash is implementation-defined and would tie the summary
// bytes to the standard library in use.
std::uint64_t name_hash(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (const char ch : s) {
    h ^= static_cast<unsigned char>(ch);
    h *= 1099511628211ull;
  }
  return h;
}

Json vector_to_json(const CVec& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i)
    out.push_back(Json::array({v(i).real(), v(i).imag()}));
  return out;
}

double set_distance(const PeripheralSpectrum& s1,
                    const PeripheralSpectrum& s2) {
  double worst = 0.0;
  const auto one_way = [&](const std::vector<Complex>& from,
                           const std::vector<Complex>& to) {
    for (const Complex& z : from) {
      double best = to.empty() ? std::abs(z) : 1e300;
      for (const Complex& w : to) best = std::min(best, std::abs(z - w));
      worst = std::max(worst, best);
    }
  };
  one_way(s1.points, s2.points);
  one_way(s2.points, s1.points);
  return worst;
}

CMat random_rank(Rng& rng, int n, int rank) {
  return rng.gaussian_matrix(n, rank) * rng.gaussian_matrix(rank, n);
}

CMat well_conditioned(Rng& rng, int n) {
  for (;;) {
    CMat t = rng.gaussian_matrix(n, n);
    Eigen::JacobiSVD<CMat> svd(t);
    if (svd.singularValues()(n - 1) > 0.05 * svd.singularValues()(0)) return t;
  }
}

struct PropertyRunner {
  const RunConfig& config;
  std::vector<PropertyOutcome>& outcomes;

  template <typename Body>
  void run(const std::string& name, Body&& body) {
    PropertyOutcome out;
    out.name = name;
    out.counterexample = nullptr;
    Rng rng(config.seed ^ name_hash(name));
    for (int t = 0; t < config.trials; ++t) {
      out.trials = t + 1;
      double residual = 0.0;
      Json witness = nullptr;
      bool ok;
      try {
        ok = body(rng, t, residual, witness);
      } catch (const Error& e) {
        ok = false;
        witness = Json{{"error", e.code_name()}, {"message", e.what()}};
      }
      out.max_residual = std::max(out.max_residual, residual);
      if (!ok) {
        ++out.failures;
        if (out.counterexample.is_null()) out.counterexample = witness;
      }
    }
    if (out.failures > 0 && config.tol < 1e-12) {
      out.note = "tolerance-induced: tol is below attainable precision";
    }
    outcomes.push_back(std::move(out));
  }
};

}  // namespace

FuzzSummary run_fuzz(const RunConfig& config) {
  if (config.trials < 1 || config.max_dim < 2) {
    throw Error(Errc::InvalidArgument,
                "run_fuzz: need trials >= 1 and max_dim >= 2");
  }
  FuzzSummary summary;
  summary.config = config;
  PropertyRunner runner{config, summary.outcomes};
  const double tol = config.tol;
  const int dim_span = config.max_dim - 1;

  runner.run("commutation", [&](Rng& rng, int t, double& residual,
                                Json& witness) {
    const int n = 2 + t % dim_span;
    const CMat a = rng.gaussian_matrix(n, n);
    const CMat b = rng.gaussian_matrix(n, n);
    const PeripheralSpectrum sab = peripheral_spectrum(a * b, tol);
    const PeripheralSpectrum sba = peripheral_spectrum(b * a, tol);
    residual = set_distance(sab, sba);
    if (spectra_equal(sab, sba, tol)) return true;
    witness = Json{{"a", matrix_to_json(a)}, {"b", matrix_to_json(b)}};
    return false;
  });

  runner.run("unitary_similarity_invariance",
             [&](Rng& rng, int t, double& residual, Json& witness) {
               const int n = 2 + t % dim_span;
               const CMat a = rng.gaussian_matrix(n, n);
               const CMat u = rng.random_unitary(n);
               const PeripheralSpectrum s1 = peripheral_spectrum(a, tol);
               const PeripheralSpectrum s2 =
                   peripheral_spectrum(u * a * u.adjoint(), tol);
               residual = set_distance(s1, s2);
               if (spectra_equal(s1, s2, tol)) return true;
               witness = Json{{"a", matrix_to_json(a)}, {"u", matrix_to_json(u)}};
               return false;
             });

  runner.run("rank_criterion_vs_svd", [&](Rng& rng, int t, double& residual,
                                          Json& witness) {
    (void)residual;
    const int n = 2 + t % dim_span;
    const int rank = 1 + rng.uniform_int(0, n - 1);
    const CMat a = random_rank(rng, n, rank);
    static constexpr int kExps[4][2] = {{1, 0}, {0, 1}, {1, 1}, {2, 1}};
    const int r = kExps[t % 4][0];
    const int s = kExps[t % 4][1];
    const bool expected = numerical_rank(a, tol) == 1;
    const bool got = is_rank_one_by_criterion(a, r, s, false, 25,
                                              config.seed + 101 + t);
    if (got == expected) return true;
    witness = Json{{"a", matrix_to_json(a)}, {"r", r}, {"s", s},
                   {"criterion", got}, {"svd_rank_one", expected}};
    return false;
  });

  runner.run("witness_two_points", [&](Rng& rng, int t, double& residual,
                                       Json& witness) {
    (void)residual;
    const int n = 2 + t % dim_span;
    const int rank = 2 + rng.uniform_int(0, n - 2);
    const CMat a = random_rank(rng, n, rank);
    static constexpr int kExps[4][2] = {{1, 0}, {1, 1}, {2, 1}, {2, 2}};
    const int r = kExps[t % 4][0];
    const int s = kExps[t % 4][1];
    const WitnessResult w = construct_witness(a, r, s, config.seed + 202 + t);
    if (w.found && w.spectrum.points.size() >= 2 &&
        numerical_rank(w.b, 1e-10) <= 2) {
      return true;
    }
    witness = Json{{"a", matrix_to_json(a)}, {"r", r}, {"s", s},
                   {"result", witness_to_json(w)}};
    return false;
  });

  runner.run("banach_round_trip", [&](Rng& rng, int t, double& residual,
                                      Json& witness) {
    const int n = 2 + t % dim_span;
    const int m = 2 + t % 4;
    const int j = rng.uniform_int(0, m - 1);
    const Complex lambda = std::polar(1.0, 2.0 * std::numbers::pi * j / m);
    const bool transpose = t % 2 == 1;
    const CMat tm = well_conditioned(rng, n);
    const CMat tinv = tm.inverse();
    const LinearMapTable phi = LinearMapTable::from_callback(
        n, [&](const CMat& e) -> CMat {
          return lambda * tm * (transpose ? CMat(e.transpose()) : e) * tinv;
        });
    const RecoveryReport rep = recover_banach_form(phi, m, tol);
    residual = rep.residual >= 0 ? rep.residual : 1.0;
    const FormKind expect =
        transpose ? FormKind::TransposeSimilarity : FormKind::Similarity;
    if (rep.form == expect && std::abs(rep.scalar - lambda) <= 1e-6) {
      return true;
    }
    witness = Json{{"m", m}, {"lambda", complex_to_json(lambda)},
                   {"transpose", transpose}, {"report", report_to_json(rep)}};
    return false;
  });

  runner.run("hilbert_parity", [&](Rng& rng, int t, double& residual,
                                   Json& witness) {
    (void)residual;
    const int n = 2 + t % dim_span;
    const int m = 2 + t % 4;
    const CMat u = rng.random_unitary(n);
    const LinearMapTable phi = LinearMapTable::from_callback(
        n, [&](const CMat& e) -> CMat { return -(u * e * u.adjoint()); });
    const RecoveryReport rep = recover_hilbert_form(phi, m, tol);
    const bool ok =
        (m % 2 == 1)
            ? rep.form == FormKind::NonStandard
            : (rep.form == FormKind::UnitarySimilarity &&
               std::abs(rep.scalar - Complex(-1.0, 0.0)) <= 1e-6);
    if (ok) return true;
    witness = Json{{"m", m}, {"report", report_to_json(rep)}};
    return false;
  });

  runner.run("sandwich_closed_form", [&](Rng& rng, int t, double& residual,
                                         Json& witness) {
    const int n = 2 + t % dim_span;
    RankOneOperator b{rng.gaussian_vector(n), rng.gaussian_vector(n)};
    const CMat a = rng.gaussian_matrix(n, n);
    static constexpr int kExps[5][2] = {{1, 0}, {0, 1}, {1, 1}, {2, 1}, {2, 2}};
    const int r = kExps[t % 5][0];
    const int s = kExps[t % 5][1];
    const PeripheralSpectrum closed = sandwich_peripheral(b, a, r, s, tol);
    const PeripheralSpectrum direct =
        peripheral_spectrum(sandwich_matrix(b.matrix(), a, r, s), tol);
    residual = set_distance(closed, direct);
    if (spectra_equal(closed, direct, std::max(tol, 1e-9))) return true;
    witness = Json{{"x", vector_to_json(b.x)}, {"f", vector_to_json(b.f)},
                   {"a", matrix_to_json(a)}, {"r", r}, {"s", s}};
    return false;
  });

  runner.run("scalar_power_consistency", [&](Rng& rng, int t, double& residual,
                                             Json& witness) {
    (void)residual;
    const int n = 2 + t % dim_span;
    const int n_exp = 2 + t % 3;
    const bool scalar_instance = t % 2 == 0;
    CMat a, b;
    if (scalar_instance) {
      const Complex c = (0.5 + rng.uniform()) * rng.unit_complex();
      b = c * CMat::Identity(n, n);
      a = std::pow(c, n_exp) * CMat::Identity(n, n);
    } else {
      a = rng.gaussian_matrix(n, n);
      b = rng.gaussian_matrix(n, n);
    }
    const bool got =
        scalar_power_test(a, b, n_exp, 20, tol, config.seed + 303 + t);
    if (got == scalar_instance) return true;
    witness = Json{{"a", matrix_to_json(a)}, {"b", matrix_to_json(b)},
                   {"n_exp", n_exp}, {"expected", scalar_instance}};
    return false;
  });

  summary.all_passed = true;
  for (const PropertyOutcome& out : summary.outcomes) {
    if (out.failures > 0) summary.all_passed = false;
  }
  if (!config.out_path.empty()) {
    write_json_file(config.out_path, summary_to_json(summary));
  }
  return summary;
}

Json summary_to_json(const FuzzSummary& summary) {
  Json props = Json::array();
  for (const PropertyOutcome& out : summary.outcomes) {
    Json p{{"name", out.name},
           {"trials", out.trials},
           {"failures", out.failures},
           {"max_residual", out.max_residual},
           {"counterexample", out.counterexample}};
    if (!out.note.empty()) p["note"] = out.note;
    props.push_back(std::move(p));
  }
  return Json{{"config",
               Json{{"seed", summary.config.seed},
                    {"tol", summary.config.tol},
                    {"trials", summary.config.trials},
                    {"max_dim", summary.config.max_dim}}},
              {"properties", std::move(props)},
              {"all_passed", summary.all_passed}};
}

}  // namespace perispec
