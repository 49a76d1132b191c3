#pragma once

#include <vector>

#include "perispec/types.hpp"

namespace perispec {

// Word over the alphabet {1..k} describing a product of k distinct
// operators. Each letter names an operand slot; every slot must be used and
// at least one letter must occur exactly once so a distinguished position
// exists. Positions and letters are 1-based throughout.
struct ProductDescriptor {
  int k = 0;
  std::vector<int> seq;
  int p = 0;  // distinguished position: the unique occurrence of the
              // smallest letter appearing exactly once

  int width() const { return static_cast<int>(seq.size()); }
};

struct SeqClass {
  int width = 0;
  int p = 0;
  bool semi_jordan = false;        // mirror symmetry about p within the word
  bool quasi_semi_jordan = false;  // cyclic mirror symmetry about p
};

// Checks the word and locates the distinguished position.
ProductDescriptor validate(int k, const std::vector<int>& seq);

SeqClass classify(const ProductDescriptor& d);

}  // namespace perispec
