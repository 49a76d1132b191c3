#include "perispec/json_io.hpp"

#include <cmath>
#include <fstream>

namespace perispec {

namespace {

double number_at(const Json& j, const char* what) {
  if (!j.is_number()) {
    throw Error(Errc::Parse, std::string(what) + ": expected a number");
  }
  return j.get<double>();
}

}  // namespace

Json complex_to_json(const Complex& z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) {
    throw Error(Errc::Parse, "complex value: expected [re, im]");
  }
  const double re = number_at(j[0], "complex value");
  const double im = number_at(j[1], "complex value");
  if (!std::isfinite(re) || !std::isfinite(im)) {
    throw Error(Errc::OutOfRange, "complex value: non-finite entry");
  }
  return {re, im};
}

Json matrix_to_json(const CMat& a) {
  Json data = Json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      data.push_back(complex_to_json(a(i, j)));
  return Json{{"n", a.rows()}, {"data", std::move(data)}};
}

CMat matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("n") || !j.contains("data")) {
    throw Error(Errc::Parse, "matrix: expected {\"n\": ..., \"data\": [...]}");
  }
  if (!j["n"].is_number_integer()) {
    throw Error(Errc::Parse, "matrix: n must be an integer");
  }
  const long long n = j["n"].get<long long>();
  if (n < 1 || n > 4096) {
    throw Error(Errc::OutOfRange, "matrix: n must be in 1..4096");
  }
  const Json& data = j["data"];
  if (!data.is_array() ||
      data.size() != static_cast<size_t>(n) * static_cast<size_t>(n)) {
    throw Error(Errc::Parse,
                "matrix: data must hold exactly n*n entries, row-major");
  }
  CMat a(n, n);
  size_t idx = 0;
  for (long long i = 0; i < n; ++i)
    for (long long jj = 0; jj < n; ++jj)
      a(i, jj) = complex_from_json(data[idx++]);
  return a;
}

Json descriptor_to_json(const ProductDescriptor& d) {
  return Json{{"k", d.k}, {"seq", d.seq}};
}

ProductDescriptor descriptor_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("k") || !j.contains("seq")) {
    throw Error(Errc::Parse, "descriptor: expected {\"k\": ..., \"seq\": [...]}");
  }
  if (!j["k"].is_number_integer()) {
    throw Error(Errc::Parse, "descriptor: k must be an integer");
  }
  const Json& seq = j["seq"];
  if (!seq.is_array() || seq.empty()) {
    throw Error(Errc::Parse, "descriptor: seq must be a nonempty array");
  }
  std::vector<int> entries;
  entries.reserve(seq.size());
  for (const Json& e : seq) {
    if (!e.is_number_integer()) {
      throw Error(Errc::Parse, "descriptor: seq entries must be integers");
    }
    entries.push_back(e.get<int>());
  }
  return validate(j["k"].get<int>(), entries);
}

Json classification_to_json(const SeqClass& c) {
  return Json{{"width", c.width},
              {"p", c.p},
              {"semi_jordan", c.semi_jordan},
              {"quasi_semi_jordan", c.quasi_semi_jordan}};
}

Json map_to_json(const LinearMapTable& phi) {
  Json images = Json::array();
  for (const CMat& img : phi.images) images.push_back(matrix_to_json(img));
  return Json{
      {"n_in", phi.n_in}, {"n_out", phi.n_out}, {"images", std::move(images)}};
}

LinearMapTable map_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("n_in") || !j.contains("n_out") ||
      !j.contains("images")) {
    throw Error(Errc::Parse,
                "map: expected {\"n_in\", \"n_out\", \"images\": [...]}");
  }
  if (!j["n_in"].is_number_integer() || !j["n_out"].is_number_integer()) {
    throw Error(Errc::Parse, "map: n_in and n_out must be integers");
  }
  LinearMapTable phi;
  phi.n_in = j["n_in"].get<int>();
  phi.n_out = j["n_out"].get<int>();
  if (phi.n_in < 1 || phi.n_out < 1) {
    throw Error(Errc::OutOfRange, "map: dimensions must be positive");
  }
  const Json& images = j["images"];
  if (!images.is_array() ||
      images.size() != static_cast<size_t>(phi.n_in) *
                           static_cast<size_t>(phi.n_in)) {
    throw Error(Errc::Parse,
                "map: images must hold n_in*n_in matrices ordered row-major "
                "by matrix unit");
  }
  for (const Json& img : images) {
    CMat m = matrix_from_json(img);
    if (m.rows() != phi.n_out) {
      throw Error(Errc::DimensionMismatch,
                  "map: image dimension does not match n_out");
    }
    phi.images.push_back(std::move(m));
  }
  return phi;
}

Json spectrum_to_json(const PeripheralSpectrum& sp) {
  Json pts = Json::array();
  for (const Complex& z : sp.points) pts.push_back(complex_to_json(z));
  return Json{{"points", std::move(pts)}, {"radius", sp.radius}, {"tol", sp.tol}};
}

Json witness_to_json(const WitnessResult& w) {
  Json out{{"found", w.found},
           {"case", to_string(w.case_tag)},
           {"witness", matrix_to_json(w.b)},
           {"spectrum", spectrum_to_json(w.spectrum)}};
  Json pred = Json::array();
  for (const Complex& z : w.predicted) pred.push_back(complex_to_json(z));
  out["predicted"] = std::move(pred);
  return out;
}

Json report_to_json(const RecoveryReport& rep) {
  Json out{{"form", to_string(rep.form)},
           {"checked_constraints", rep.checked_constraints}};
  if (rep.form != FormKind::NonStandard) {
    out["scalar"] = complex_to_json(rep.scalar);
    out["transform"] = matrix_to_json(rep.transform);
    out["residual"] = rep.residual;
  }
  return out;
}

Json verify_to_json(const VerifyResult& v) {
  Json out{{"preserved", v.preserved}, {"trials_run", v.trials_run}};
  if (!v.preserved) {
    Json tuple = Json::array();
    for (const CMat& op : v.counterexample) tuple.push_back(matrix_to_json(op));
    out["counterexample"] = std::move(tuple);
  }
  return out;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(Errc::Parse, "cannot open file: " + path);
  }
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw Error(Errc::Parse, "invalid JSON in " + path + ": " + e.what());
  }
  return j;
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) {
    throw Error(Errc::Parse, "cannot open file for writing: " + path);
  }
  out << j.dump(2) << "\n";
}

}  // namespace perispec
