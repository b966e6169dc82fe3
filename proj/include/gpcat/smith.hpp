#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <vector>

namespace gpcat {

using BigInt = boost::multiprecision::cpp_int;

/// Dense integer matrix.  Intermediate Smith reduction entries can grow far
/// past machine words, so everything is arbitrary precision.
struct BigMat {
  std::size_t rows = 0, cols = 0;
  std::vector<BigInt> a;

  BigMat() = default;
  BigMat(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}

  BigInt& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const BigInt& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
};

struct SmithResult {
  std::vector<BigInt> invariants;  // positive, d_1 | d_2 | ... | d_r
  std::size_t rank = 0;            // invariants.size()
};

/// Invariant factors by row/column reduction with minimal-pivot selection.
SmithResult smith_normal_form(BigMat m);

/// Rank of an integer matrix reduced mod a prime.
std::size_t rank_mod_p(const BigMat& m, int p);

}  // namespace gpcat
