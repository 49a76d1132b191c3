#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <unistd.h>

#include "perispec/fixtures.hpp"
#include "perispec/json_io.hpp"
#include "perispec/rng.hpp"

using namespace perispec;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  static const fs::path dir = [] {
    fs::path p = fs::temp_directory_path() /
                 ("perispec_test_" + std::to_string(::getpid()));
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

std::string scratch_file(const std::string& name, const Json& j) {
  const fs::path p = scratch_dir() / name;
  write_json_file(p.string(), j);
  return p.string();
}

struct CliResult {
  int status = -1;
  std::string out;
};

// Runs the binary and captures stdout; append "2>&1" to fold in stderr.
CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(PERISPEC_CLI_PATH) + " " + args;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult res;
  char buf[4096];
  size_t got = 0;
  while ((got = ::fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, got);
  const int rc = ::pclose(pipe);
  if (WIFEXITED(rc)) res.status = WEXITSTATUS(rc);
  return res;
}

CMat swap_matrix() {
  CMat a(2, 2);
  a << 0.0, 1.0, 1.0, 0.0;
  return a;
}

}  // namespace

TEST_CASE("complex and matrix codecs round-trip") {
  const Complex z(1.5, -2.25);
  CHECK(complex_from_json(complex_to_json(z)) == z);

  Rng rng(61);
  const CMat a = rng.gaussian_matrix(3, 3);
  CHECK((matrix_from_json(matrix_to_json(a)) - a).norm() == 0.0);

  CHECK_THROWS_AS(static_cast<void>(complex_from_json(Json::array({1.0}))), Error);
  CHECK_THROWS_AS(static_cast<void>(complex_from_json(Json("x"))), Error);
  CHECK_THROWS_AS(
      static_cast<void>(complex_from_json(Json::array({"a", 0.0}))), Error);

  CHECK_THROWS_AS(static_cast<void>(matrix_from_json(Json::array())), Error);
  CHECK_THROWS_AS(
      static_cast<void>(matrix_from_json(Json{{"n", 0}, {"data", Json::array()}})),
      Error);
  Json short_data{{"n", 2}, {"data", Json::array({Json::array({1.0, 0.0})})}};
  CHECK_THROWS_AS(static_cast<void>(matrix_from_json(short_data)), Error);
}

TEST_CASE("descriptor and map codecs") {
  const ProductDescriptor d = validate(3, {2, 3, 3, 1, 3, 3, 2});
  const ProductDescriptor back = descriptor_from_json(descriptor_to_json(d));
  CHECK(back.k == d.k);
  CHECK(back.seq == d.seq);
  CHECK(back.p == d.p);

  CHECK_THROWS_AS(static_cast<void>(descriptor_from_json(Json{{"k", 2}})), Error);
  Json bad_entry{{"k", 2}, {"seq", Json::array({1, "two"})}};
  CHECK_THROWS_AS(static_cast<void>(descriptor_from_json(bad_entry)), Error);
  Json repeated{{"k", 2}, {"seq", Json::array({1, 2, 1, 2})}};
  try {
    static_cast<void>(descriptor_from_json(repeated));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NoUniqueOccurrence);
  }

  const LinearMapTable corner = corner_embedding_map();
  const LinearMapTable round = map_from_json(map_to_json(corner));
  CHECK(round.n_in == 2);
  CHECK(round.n_out == 3);
  REQUIRE(round.images.size() == 4);
  for (size_t i = 0; i < 4; ++i) {
    CHECK((round.images[i] - corner.images[i]).norm() == 0.0);
  }

  Json shrunk = map_to_json(corner);
  shrunk["images"][0]["n"] = 2;
  shrunk["images"][0]["data"] = Json::array();
  for (int i = 0; i < 4; ++i)
    shrunk["images"][0]["data"].push_back(Json::array({0.0, 0.0}));
  CHECK_THROWS_AS(static_cast<void>(map_from_json(shrunk)), Error);
}

TEST_CASE("report serialization shape") {
  RecoveryReport rep;
  rep.form = FormKind::NonStandard;
  rep.checked_constraints.push_back("nothing fits");
  Json j = report_to_json(rep);
  CHECK(j["form"] == "non-standard");
  CHECK_FALSE(j.contains("scalar"));
  CHECK_FALSE(j.contains("transform"));

  rep.form = FormKind::Similarity;
  rep.scalar = Complex(0.0, 1.0);
  rep.transform = CMat::Identity(2, 2);
  rep.residual = 1e-12;
  j = report_to_json(rep);
  CHECK(j["form"] == "similarity");
  CHECK(j["scalar"][1] == 1.0);
  CHECK(j.contains("transform"));
  CHECK(j.contains("residual"));
}

TEST_CASE("file IO errors") {
  CHECK_THROWS_AS(static_cast<void>(load_json_file(
                      (scratch_dir() / "does_not_exist.json").string())),
                  Error);
  const fs::path bad = scratch_dir() / "broken.json";
  std::ofstream(bad) << "{ nope";
  try {
    static_cast<void>(load_json_file(bad.string()));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::Parse);
  }
}

TEST_CASE("cli classify") {
  const std::string path = scratch_file(
      "triple.json", descriptor_to_json(validate(2, {2, 1, 2})));
  CliResult res = run_cli("classify " + path);
  REQUIRE(res.status == 0);
  const Json j = Json::parse(res.out);
  CHECK(j["width"] == 3);
  CHECK(j["p"] == 2);
  CHECK(j["semi_jordan"] == true);
  CHECK(j["quasi_semi_jordan"] == true);

  const fs::path broken = scratch_dir() / "garbage.json";
  std::ofstream(broken) << "{ nope";
  res = run_cli("classify " + broken.string() + " 2>&1");
  CHECK(res.status == 2);
  CHECK(Json::parse(res.out)["error"] == "Parse");

  const std::string repeated = scratch_file(
      "repeated.json", Json{{"k", 2}, {"seq", Json::array({1, 2, 1, 2})}});
  res = run_cli("classify " + repeated + " 2>&1");
  CHECK(res.status == 2);
  CHECK(Json::parse(res.out)["error"] == "NoUniqueOccurrence");
}

TEST_CASE("cli product eval") {
  const std::string desc = scratch_file(
      "eval_desc.json", descriptor_to_json(validate(2, {2, 1, 2})));
  CMat diag(2, 2);
  diag << 1.0, 0.0, 0.0, 2.0;
  const std::string ops = scratch_file(
      "eval_ops.json",
      Json::array({matrix_to_json(swap_matrix()), matrix_to_json(diag)}));

  CliResult res =
      run_cli("product eval --descriptor " + desc + " --ops " + ops);
  REQUIRE(res.status == 0);
  const Json j = Json::parse(res.out);
  const CMat prod = matrix_from_json(j["product"]);
  CMat expected(2, 2);
  expected << 0.0, 2.0, 2.0, 0.0;
  CHECK((prod - expected).norm() <= 1e-14);
  CHECK(j["peripheral_spectrum"]["points"].size() == 2);
  CHECK(j["peripheral_spectrum"]["radius"].get<double>() ==
        doctest::Approx(2.0).epsilon(1e-12));

  // Operand count must match the descriptor.
  const std::string one_op = scratch_file(
      "eval_one.json", Json::array({matrix_to_json(swap_matrix())}));
  res = run_cli("product eval --descriptor " + desc + " --ops " + one_op +
                " 2>&1");
  CHECK(res.status == 2);
  CHECK(Json::parse(res.out).contains("error"));
}

TEST_CASE("cli rank-test") {
  CVec x(3), f(3);
  x << 1.0, 2.0, -1.0;
  f << 0.5, 1.0, 3.0;
  const std::string rank1 = scratch_file(
      "rank1.json", matrix_to_json(CMat(x * f.transpose())));
  CliResult res = run_cli("rank-test --matrix " + rank1 + " --r 1 --s 1");
  REQUIRE(res.status == 0);
  CHECK(Json::parse(res.out)["rank_one"] == true);

  Rng rng(71);
  const std::string full = scratch_file(
      "full.json", matrix_to_json(rng.gaussian_matrix(3, 3)));
  res = run_cli("rank-test --matrix " + full + " --r 2 --s 1");
  REQUIRE(res.status == 0);
  const Json j = Json::parse(res.out);
  CHECK(j["rank_one"] == false);
  REQUIRE(j.contains("witness"));
  CHECK(numerical_rank(matrix_from_json(j["witness"]), 1e-10) <= 2);
  CHECK(j["case"].is_string());
  CHECK(j["spectrum"].size() >= 2);

  const std::string zero = scratch_file(
      "zero.json", matrix_to_json(CMat::Zero(2, 2)));
  res = run_cli("rank-test --matrix " + zero + " --r 1 --s 1 2>&1");
  CHECK(res.status == 2);
  CHECK(Json::parse(res.out)["error"] == "ZeroOperator");
}

TEST_CASE("cli map verify and recover") {
  LinearMapTable transp = LinearMapTable::from_callback(
      3, [](const CMat& e) -> CMat { return e.transpose(); });
  const std::string map_path = scratch_file("transp.json", map_to_json(transp));
  const std::string sym_desc = scratch_file(
      "sym.json", descriptor_to_json(validate(2, {2, 1, 2})));
  const std::string asym_desc = scratch_file(
      "asym.json", descriptor_to_json(validate(3, {1, 2, 3, 2, 2})));

  CliResult res = run_cli("map verify --map " + map_path + " --descriptor " +
                          sym_desc + " --trials 40");
  REQUIRE(res.status == 0);
  CHECK(Json::parse(res.out)["preserved"] == true);

  res = run_cli("map verify --map " + map_path + " --descriptor " + asym_desc +
                " --trials 200");
  REQUIRE(res.status == 1);
  const Json failed = Json::parse(res.out);
  CHECK(failed["preserved"] == false);
  CHECK(failed["counterexample"].size() == 3);

  CMat t(2, 2);
  t << 1.0, 2.0, 0.0, 1.0;
  const CMat tinv = t.inverse();
  const Complex lam(0.0, 1.0);
  LinearMapTable sim = LinearMapTable::from_callback(
      2, [&](const CMat& e) -> CMat { return lam * t * e * tinv; });
  const std::string sim_path = scratch_file("sim.json", map_to_json(sim));
  res = run_cli("map recover --map " + sim_path + " --model banach --m 4");
  REQUIRE(res.status == 0);
  const Json rec = Json::parse(res.out);
  CHECK(rec["form"] == "similarity");
  CHECK(rec["scalar"][0].get<double>() == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(rec["scalar"][1].get<double>() == doctest::Approx(1.0).epsilon(1e-9));

  const std::string corner_path = scratch_file(
      "corner.json", map_to_json(corner_embedding_map()));
  res = run_cli("map recover --map " + corner_path + " --model hilbert --m 3");
  REQUIRE(res.status == 0);
  CHECK(Json::parse(res.out)["form"] == "non-standard");
}

TEST_CASE("cli fixtures") {
  const fs::path dir = scratch_dir() / "fixture_out";
  CliResult res = run_cli("fixtures --out " + dir.string());
  REQUIRE(res.status == 0);
  for (const char* name :
       {"usual_product.json", "jordan_triple.json", "semi_jordan_width7.json",
        "quasi_semi_jordan_width12.json", "non_quasi_width5.json",
        "corner_embedding_map.json", "swap_operator.json",
        "operand_pair.json"}) {
    CHECK(fs::exists(dir / name));
  }
  const ProductDescriptor d =
      descriptor_from_json(load_json_file((dir / "jordan_triple.json").string()));
  CHECK(d.seq == std::vector<int>{2, 1, 2});
  const LinearMapTable corner =
      map_from_json(load_json_file((dir / "corner_embedding_map.json").string()));
  CHECK(corner.n_out == 3);
}

TEST_CASE("cli fuzz determinism") {
  const std::string args = "fuzz --seed 11 --trials 4 --max-dim 3";
  const CliResult first = run_cli(args);
  const CliResult second = run_cli(args);
  REQUIRE(first.status == 0);
  CHECK(second.status == 0);
  CHECK(first.out == second.out);
  const Json j = Json::parse(first.out);
  CHECK(j["all_passed"] == true);
  CHECK(j["properties"].size() >= 8);
}

TEST_CASE("cli rejects unknown flags with a parse error") {
  const CliResult res = run_cli("classify --bogus 2>&1");
  CHECK(res.status == 2);
  CHECK(Json::parse(res.out)["error"] == "Parse");
}
