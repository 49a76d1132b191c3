#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "perispec/fixtures.hpp"
#include "perispec/fuzz.hpp"
#include "perispec/json_io.hpp"
#include "perispec/products.hpp"
#include "perispec/recovery.hpp"
#include "perispec/witness.hpp"

namespace {

using perispec::Json;

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

int fail_input(const std::string& code, const std::string& message) {
  std::cerr << Json{{"error", code}, {"message", message}}.dump() << "\n";
  return 2;
}

std::vector<perispec::CMat> operands_from_json(const Json& j) {
  const Json* arr = &j;
  if (j.is_object() && j.contains("operands")) arr = &j["operands"];
  if (!arr->is_array()) {
    throw perispec::Error(perispec::Errc::Parse,
                          "operands: expected an array of matrices");
  }
  std::vector<perispec::CMat> ops;
  for (const Json& m : *arr) ops.push_back(perispec::matrix_from_json(m));
  return ops;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"peripheral-spectrum toolkit: generalized products, rank "
               "witnesses, preserver forms"};
  app.require_subcommand(1);

  std::string descriptor_path, ops_path, matrix_path, map_path, model, out_path;
  int r = 1, s = 1, m = 2, trials = 0, max_dim = 5;
  bool skew = false;
  double tol = perispec::kDefaultTol;
  std::uint64_t seed = 7;

  CLI::App* classify = app.add_subcommand("classify",
                                          "classify a product descriptor");
  classify->add_option("descriptor", descriptor_path, "descriptor JSON file")
      ->required();

  CLI::App* product = app.add_subcommand("product", "generalized products");
  CLI::App* eval = product->add_subcommand("eval", "evaluate a product");
  eval->add_option("--descriptor", descriptor_path, "descriptor JSON file")
      ->required();
  eval->add_option("--ops", ops_path, "operands JSON file")->required();
  eval->add_flag("--skew", skew,
                 "conjugate-transpose the distinguished factor");
  eval->add_option("--tol", tol, "relative tolerance");

  CLI::App* rank = app.add_subcommand("rank-test",
                                      "spectral rank-one criterion");
  rank->add_option("--matrix", matrix_path, "operator JSON file")->required();
  rank->add_option("--r", r, "left exponent")->required();
  rank->add_option("--s", s, "right exponent")->required();
  rank->add_flag("--skew", skew, "test the conjugate-transpose sandwich");
  rank->add_option("--trials", trials, "sampling budget (default 25)");
  rank->add_option("--seed", seed, "random seed");
  rank->add_option("--tol", tol, "relative tolerance");

  CLI::App* map_cmd = app.add_subcommand("map", "preserver maps");
  CLI::App* verify = map_cmd->add_subcommand(
      "verify", "sample products and compare peripheral spectra");
  verify->add_option("--map", map_path, "map table JSON file")->required();
  verify->add_option("--descriptor", descriptor_path, "descriptor JSON file")
      ->required();
  verify->add_flag("--skew", skew,
                   "conjugate-transpose the distinguished factor");
  verify->add_option("--trials", trials, "number of sampled tuples (default 200)");
  verify->add_option("--seed", seed, "random seed");
  verify->add_option("--tol", tol, "relative tolerance");

  CLI::App* recover = map_cmd->add_subcommand(
      "recover", "recover the canonical form of a preserver");
  recover->add_option("--map", map_path, "map table JSON file")->required();
  recover->add_option("--model", model, "banach or hilbert")
      ->required()
      ->check(CLI::IsMember({"banach", "hilbert"}));
  recover->add_option("--m", m, "product width")->required();
  recover->add_option("--tol", tol, "relative tolerance");

  CLI::App* fuzz = app.add_subcommand("fuzz", "randomized property battery");
  fuzz->add_option("--seed", seed, "random seed");
  fuzz->add_option("--tol", tol, "relative tolerance");
  fuzz->add_option("--trials", trials, "trials per property (default 50)");
  fuzz->add_option("--max-dim", max_dim, "largest matrix dimension");
  fuzz->add_option("--out", out_path, "also write the summary to this file");

  CLI::App* fixtures = app.add_subcommand("fixtures",
                                          "write example JSON inputs");
  fixtures->add_option("--out", out_path, "output directory (default ./fixtures)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail_input("Parse", e.what());
  }

  try {
    if (*classify) {
      const perispec::ProductDescriptor d =
          perispec::descriptor_from_json(perispec::load_json_file(descriptor_path));
      emit(perispec::classification_to_json(perispec::classify(d)));
      return 0;
    }

    if (*eval) {
      perispec::ProductInstance inst;
      inst.descriptor = perispec::descriptor_from_json(
          perispec::load_json_file(descriptor_path));
      inst.operands = operands_from_json(perispec::load_json_file(ops_path));
      const perispec::CMat out =
          skew ? perispec::evaluate_skew(inst) : perispec::evaluate(inst);
      emit(Json{{"product", perispec::matrix_to_json(out)},
                {"peripheral_spectrum",
                 perispec::spectrum_to_json(perispec::peripheral_spectrum(out, tol))}});
      return 0;
    }

    if (*rank) {
      const perispec::CMat a =
          perispec::matrix_from_json(perispec::load_json_file(matrix_path));
      const int budget = trials > 0 ? trials : 25;
      const bool rank_one =
          perispec::is_rank_one_by_criterion(a, r, s, skew, budget, seed);
      Json out{{"rank_one", rank_one}};
      if (!rank_one) {
        const perispec::CMat ahat =
            skew ? perispec::CMat(a.adjoint()) : a;
        const perispec::WitnessResult w =
            perispec::construct_witness(ahat, r, s, seed);
        out["witness"] = perispec::matrix_to_json(w.b);
        out["case"] = perispec::to_string(w.case_tag);
        Json pts = Json::array();
        for (const perispec::Complex& z : w.spectrum.points)
          pts.push_back(perispec::complex_to_json(z));
        out["spectrum"] = std::move(pts);
      }
      emit(out);
      return 0;
    }

    if (*verify) {
      const perispec::LinearMapTable phi =
          perispec::map_from_json(perispec::load_json_file(map_path));
      const perispec::ProductDescriptor d = perispec::descriptor_from_json(
          perispec::load_json_file(descriptor_path));
      const int n_trials = trials > 0 ? trials : 200;
      const perispec::VerifyResult res =
          perispec::verify_preservation(phi, d, n_trials, skew, tol, seed);
      emit(perispec::verify_to_json(res));
      return res.preserved ? 0 : 1;
    }

    if (*recover) {
      const perispec::LinearMapTable phi =
          perispec::map_from_json(perispec::load_json_file(map_path));
      const perispec::RecoveryReport rep =
          model == "banach" ? perispec::recover_banach_form(phi, m, tol)
                            : perispec::recover_hilbert_form(phi, m, tol);
      emit(perispec::report_to_json(rep));
      return 0;
    }

    if (*fuzz) {
      perispec::RunConfig config;
      config.seed = seed;
      config.tol = tol;
      if (trials > 0) config.trials = trials;
      config.max_dim = max_dim;
      config.out_path = out_path;
      const perispec::FuzzSummary summary = perispec::run_fuzz(config);
      emit(perispec::summary_to_json(summary));
      return summary.all_passed ? 0 : 1;
    }

    if (*fixtures) {
      const std::string dir = out_path.empty() ? "fixtures" : out_path;
      perispec::write_fixtures(dir);
      emit(Json{{"written", dir}});
      return 0;
    }
  } catch (const perispec::Error& e) {
    return fail_input(e.code_name(), e.what());
  } catch (const std::exception& e) {
    return fail_input("Internal", e.what());
  }
  return 0;
}
