#pragma once

#include <string>
#include <utility>
#include <vector>

#include "perispec/descriptor.hpp"
#include "perispec/recovery.hpp"

namespace perispec {

// Embedding of 2x2 matrices into the top-left corner of 3x3 matrices.
// Padding with a zero block never disturbs the peripheral spectrum, so this
// map passes every product-preservation check while fitting no similarity
// form: the canonical example of a preserver outside the standard forms.
LinearMapTable corner_embedding_map();

// Named descriptor samples covering the classification landscape.
std::vector<std::pair<std::string, ProductDescriptor>> example_descriptors();

// Writes the samples (descriptors, the corner embedding, a small operator
// and operand list) as JSON files under dir.
void write_fixtures(const std::string& dir);

}  // namespace perispec
