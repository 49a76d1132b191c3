#pragma once

#include <string>

#include <json.hpp>

#include "perispec/descriptor.hpp"
#include "perispec/recovery.hpp"
#include "perispec/spectra.hpp"
#include "perispec/types.hpp"
#include "perispec/witness.hpp"

namespace perispec {

using Json = nlohmann::json;

// Complex scalars travel as [re, im]; matrices as {"n": n, "data": [...]}
// with n*n entries in row-major order.

Json complex_to_json(const Complex& z);
Complex complex_from_json(const Json& j);

Json matrix_to_json(const CMat& a);
CMat matrix_from_json(const Json& j);

Json descriptor_to_json(const ProductDescriptor& d);
ProductDescriptor descriptor_from_json(const Json& j);  // validates

Json classification_to_json(const SeqClass& c);

Json map_to_json(const LinearMapTable& phi);
LinearMapTable map_from_json(const Json& j);

Json spectrum_to_json(const PeripheralSpectrum& sp);

Json witness_to_json(const WitnessResult& w);
Json report_to_json(const RecoveryReport& rep);
Json verify_to_json(const VerifyResult& v);

Json load_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace perispec
