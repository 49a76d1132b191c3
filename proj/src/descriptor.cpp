#include "perispec/descriptor.hpp"

#include <string>

namespace perispec {

ProductDescriptor validate(int k, const std::vector<int>& seq) {
  if (k < 1) {
    throw Error(Errc::OutOfRange, "validate: k must be at least 1");
  }
  if (seq.empty()) {
    throw Error(Errc::OutOfRange, "validate: sequence is empty");
  }
  std::vector<int> count(static_cast<size_t>(k) + 1, 0);
  for (size_t t = 0; t < seq.size(); ++t) {
    const int v = seq[t];
    if (v < 1 || v > k) {
      throw Error(Errc::OutOfRange,
                  "validate: entry " + std::to_string(v) + " at position " +
                      std::to_string(t + 1) + " is outside 1.." +
                      std::to_string(k));
    }
    ++count[static_cast<size_t>(v)];
  }
  for (int v = 1; v <= k; ++v) {
    if (count[static_cast<size_t>(v)] == 0) {
      throw Error(Errc::MissingIndex,
                  "validate: index " + std::to_string(v) +
                      " never appears in the sequence");
    }
  }
  // Distinguished letter: smallest one occurring exactly once. Its single
  // position is p.
  int chosen = 0;
  for (int v = 1; v <= k; ++v) {
    if (count[static_cast<size_t>(v)] == 1) {
      chosen = v;
      break;
    }
  }
  if (chosen == 0) {
    throw Error(Errc::NoUniqueOccurrence,
                "validate: no index occurs exactly once, distinguished "
                "position is undefined");
  }
  ProductDescriptor d;
  d.k = k;
  d.seq = seq;
  for (size_t t = 0; t < seq.size(); ++t) {
    if (seq[t] == chosen) {
      d.p = static_cast<int>(t + 1);
      break;
    }
  }
  return d;
}

SeqClass classify(const ProductDescriptor& d) {
  const int m = d.width();
  const int p = d.p;
  SeqClass c;
  c.width = m;
  c.p = p;

  // Mirror symmetry inside the word needs p dead center, which forces m odd.
  c.semi_jordan = (m % 2 == 1) && (p == (m + 1) / 2);
  if (c.semi_jordan) {
    for (int t = 1; t <= (m - 1) / 2; ++t) {
      if (d.seq[static_cast<size_t>(p + t - 1)] !=
          d.seq[static_cast<size_t>(p - t - 1)]) {
        c.semi_jordan = false;
        break;
      }
    }
  }

  // Cyclic mirror symmetry about p: positions are read modulo the width.
  c.quasi_semi_jordan = true;
  for (int t = 1; t <= m - 1; ++t) {
    const int fwd = ((p - 1 + t) % m + m) % m;
    const int bwd = ((p - 1 - t) % m + m) % m;
    if (d.seq[static_cast<size_t>(fwd)] != d.seq[static_cast<size_t>(bwd)]) {
      c.quasi_semi_jordan = false;
      break;
    }
  }
  return c;
}

}  // namespace perispec
