#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "perispec/descriptor.hpp"
#include "perispec/fixtures.hpp"
#include "perispec/fuzz.hpp"
#include "perispec/json_io.hpp"
#include "perispec/products.hpp"
#include "perispec/recovery.hpp"
#include "perispec/spectra.hpp"
#include "perispec/witness.hpp"

namespace py = pybind11;
using namespace perispec;

namespace {

py::dict report_to_dict(const RecoveryReport& rep) {
  py::dict out;
  out["form"] = std::string(to_string(rep.form));
  out["checked_constraints"] = rep.checked_constraints;
  if (rep.form != FormKind::NonStandard) {
    out["scalar"] = rep.scalar;
    out["transform"] = rep.transform;
    out["residual"] = rep.residual;
  } else {
    out["scalar"] = py::none();
    out["transform"] = py::none();
    out["residual"] = py::none();
  }
  return out;
}

ProductInstance make_instance(int k, const std::vector<int>& seq,
                              const std::vector<CMat>& operands) {
  ProductInstance inst;
  inst.descriptor = validate(k, seq);
  inst.operands = operands;
  return inst;
}

}  // namespace

PYBIND11_MODULE(_perispec, m) {
  m.doc() = "peripheral spectra of generalized operator products, rank-one "
            "witnesses, and preserver-map canonical forms";

  static py::handle toolkit_error =
      py::exception<Error>(m, "ToolkitError").release();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      const std::string msg = std::string(e.code_name()) + ": " + e.what();
      PyErr_SetString(toolkit_error.ptr(), msg.c_str());
    }
  });

  py::class_<PeripheralSpectrum>(m, "PeripheralSpectrum")
      .def_readonly("points", &PeripheralSpectrum::points)
      .def_readonly("radius", &PeripheralSpectrum::radius)
      .def_readonly("tol", &PeripheralSpectrum::tol)
      .def("__repr__", [](const PeripheralSpectrum& sp) {
        std::string out = "PeripheralSpectrum(radius=" +
                          std::to_string(sp.radius) + ", points=[";
        for (size_t i = 0; i < sp.points.size(); ++i) {
          if (i) out += ", ";
          out += std::to_string(sp.points[i].real()) + "+" +
                 std::to_string(sp.points[i].imag()) + "j";
        }
        return out + "])";
      });

  m.def("validate",
        [](int k, const std::vector<int>& seq) {
          const ProductDescriptor d = validate(k, seq);
          py::dict out;
          out["k"] = d.k;
          out["seq"] = d.seq;
          out["p"] = d.p;
          return out;
        },
        py::arg("k"), py::arg("seq"),
        "check a descriptor word and locate its distinguished position");

  m.def("classify",
        [](int k, const std::vector<int>& seq) {
          const SeqClass c = classify(validate(k, seq));
          py::dict out;
          out["width"] = c.width;
          out["p"] = c.p;
          out["semi_jordan"] = c.semi_jordan;
          out["quasi_semi_jordan"] = c.quasi_semi_jordan;
          return out;
        },
        py::arg("k"), py::arg("seq"));

  m.def("eigenvalues", &eigenvalues, py::arg("a"));
  m.def("peripheral_spectrum", &peripheral_spectrum, py::arg("a"),
        py::arg("tol") = kDefaultTol);
  m.def("spectra_equal", &spectra_equal, py::arg("s1"), py::arg("s2"),
        py::arg("tol") = kDefaultTol);
  m.def("rank", &numerical_rank, py::arg("a"), py::arg("tol") = kDefaultTol);

  m.def("evaluate",
        [](int k, const std::vector<int>& seq, const std::vector<CMat>& ops,
           bool skew) {
          const ProductInstance inst = make_instance(k, seq, ops);
          return skew ? evaluate_skew(inst) : evaluate(inst);
        },
        py::arg("k"), py::arg("seq"), py::arg("operands"),
        py::arg("skew") = false);

  m.def("sandwich_peripheral",
        [](const CVec& x, const CVec& f, const CMat& a, int r, int s,
           double tol) { return sandwich_peripheral({x, f}, a, r, s, tol); },
        py::arg("x"), py::arg("f"), py::arg("a"), py::arg("r"), py::arg("s"),
        py::arg("tol") = kDefaultTol);

  py::class_<WitnessResult>(m, "WitnessResult")
      .def_readonly("found", &WitnessResult::found)
      .def_readonly("b", &WitnessResult::b)
      .def_readonly("spectrum", &WitnessResult::spectrum)
      .def_readonly("predicted", &WitnessResult::predicted)
      .def_property_readonly("case", [](const WitnessResult& w) {
        return std::string(to_string(w.case_tag));
      });

  m.def("construct_witness", &construct_witness, py::arg("a"), py::arg("r"),
        py::arg("s"), py::arg("seed") = kWitnessSeed);
  m.def("is_rank_one", &is_rank_one_by_criterion, py::arg("a"), py::arg("r"),
        py::arg("s"), py::arg("skew") = false, py::arg("sample_budget") = 25,
        py::arg("seed") = kWitnessSeed);

  py::class_<LinearMapTable>(m, "LinearMapTable")
      .def(py::init([](int n_in, int n_out, const std::vector<CMat>& images) {
             LinearMapTable t;
             t.n_in = n_in;
             t.n_out = n_out;
             t.images = images;
             return t;
           }),
           py::arg("n_in"), py::arg("n_out"), py::arg("images"))
      .def_static("from_callback", &LinearMapTable::from_callback,
                  py::arg("n_in"), py::arg("phi"))
      .def_readonly("n_in", &LinearMapTable::n_in)
      .def_readonly("n_out", &LinearMapTable::n_out)
      .def_readonly("images", &LinearMapTable::images)
      .def("apply", &LinearMapTable::apply, py::arg("a"));

  m.def("verify_preservation",
        [](const LinearMapTable& phi, int k, const std::vector<int>& seq,
           int trials, bool skew, double tol, std::uint64_t seed) {
          const VerifyResult res = verify_preservation(
              phi, validate(k, seq), trials, skew, tol, seed);
          py::dict out;
          out["preserved"] = res.preserved;
          out["counterexample"] = res.counterexample;
          out["trials_run"] = res.trials_run;
          return out;
        },
        py::arg("phi"), py::arg("k"), py::arg("seq"), py::arg("trials") = 200,
        py::arg("skew") = false, py::arg("tol") = kDefaultTol,
        py::arg("seed") = 7);

  m.def("fit_form",
        [](const LinearMapTable& phi, Complex lambda, bool transpose,
           double tol) {
          const FormFit fit = fit_form(phi, lambda, transpose, tol);
          py::dict out;
          out["ok"] = fit.ok;
          out["t"] = fit.ok ? py::cast(fit.t) : py::none();
          out["residual"] = fit.residual;
          return out;
        },
        py::arg("phi"), py::arg("scalar"), py::arg("transpose") = false,
        py::arg("tol") = kDefaultTol);

  m.def("recover_banach_form",
        [](const LinearMapTable& phi, int m_width, double tol) {
          return report_to_dict(recover_banach_form(phi, m_width, tol));
        },
        py::arg("phi"), py::arg("m"), py::arg("tol") = kDefaultTol);

  m.def("recover_hilbert_form",
        [](const LinearMapTable& phi, int m_width, double tol) {
          return report_to_dict(recover_hilbert_form(phi, m_width, tol));
        },
        py::arg("phi"), py::arg("m"), py::arg("tol") = kDefaultTol);

  m.def("scalar_power_test", &scalar_power_test, py::arg("a"), py::arg("b"),
        py::arg("n"), py::arg("trials") = 50, py::arg("tol") = kDefaultTol,
        py::arg("seed") = 7);

  m.def("wigner_check",
        [](const std::vector<std::pair<CVec, CVec>>& pairs, double tol) {
          return std::string(to_string(wigner_check(pairs, tol)));
        },
        py::arg("pairs"), py::arg("tol") = kDefaultTol);

  m.def("corner_embedding_map", &corner_embedding_map,
        "2x2 -> 3x3 zero-padding embedding; preserves peripheral spectra of "
        "products but fits no similarity form");

  m.def("example_descriptors", [] {
    py::list out;
    for (const auto& [name, d] : example_descriptors()) {
      out.append(py::make_tuple(name, d.k, d.seq));
    }
    return out;
  });

  m.def("run_fuzz",
        [](std::uint64_t seed, double tol, int trials, int max_dim) {
          RunConfig config;
          config.seed = seed;
          config.tol = tol;
          config.trials = trials;
          config.max_dim = max_dim;
          return summary_to_json(run_fuzz(config)).dump(2);
        },
        py::arg("seed") = 7, py::arg("tol") = kDefaultTol,
        py::arg("trials") = 50, py::arg("max_dim") = 5,
        "run the property battery and return the summary as a JSON string");

#ifdef VERSION_INFO
  m.attr("__version__") = VERSION_INFO;
#else
  m.attr("__version__") = "0.1.0";
#endif
}
