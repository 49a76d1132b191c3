#include "perispec/fixtures.hpp"

#include <filesystem>

#include "perispec/json_io.hpp"

namespace perispec {

LinearMapTable corner_embedding_map() {
  LinearMapTable phi;
  phi.n_in = 2;
  phi.n_out = 3;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      CMat img = CMat::Zero(3, 3);
      img(i, j) = Complex(1.0, 0.0);
      phi.images.push_back(std::move(img));
    }
  }
  return phi;
}

std::vector<std::pair<std::string, ProductDescriptor>> example_descriptors() {
  std::vector<std::pair<std::string, ProductDescriptor>> out;
  out.emplace_back("usual_product", validate(2, {1, 2}));
  out.emplace_back("jordan_triple", validate(2, {2, 1, 2}));
  out.emplace_back("semi_jordan_width7", validate(3, {2, 3, 3, 1, 3, 3, 2}));
  out.emplace_back("quasi_semi_jordan_width12",
                   validate(3, {1, 2, 3, 2, 3, 2, 3, 2, 3, 2, 3, 2}));
  out.emplace_back("non_quasi_width5", validate(3, {1, 2, 3, 2, 2}));
  return out;
}

void write_fixtures(const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);

  for (const auto& [name, d] : example_descriptors()) {
    write_json_file((fs::path(dir) / (name + ".json")).string(),
                    descriptor_to_json(d));
  }
  write_json_file((fs::path(dir) / "corner_embedding_map.json").string(),
                  map_to_json(corner_embedding_map()));

  CMat a(2, 2);
  a << Complex(0.0, 0.0), Complex(1.0, 0.0), Complex(1.0, 0.0),
      Complex(0.0, 0.0);
  write_json_file((fs::path(dir) / "swap_operator.json").string(),
                  matrix_to_json(a));

  CMat b(2, 2);
  b << Complex(1.0, 0.0), Complex(0.0, 0.0), Complex(0.0, 0.0),
      Complex(0.0, -1.0);
  Json ops = Json::array({matrix_to_json(a), matrix_to_json(b)});
  write_json_file((fs::path(dir) / "operand_pair.json").string(), ops);
}

}  // namespace perispec
