#pragma once

// Exact integer lattice arithmetic: Hermite normal form, rank, and integer
// kernels.  No floating point is used anywhere.

#include <cstddef>
#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace sepkit {

  using BigInt    = boost::multiprecision::cpp_int;
  using IntVector = std::vector<BigInt>;
  using IntMatrix = std::vector<IntVector>;

  // Row-style Hermite normal form of the lattice spanned by the rows.  The
  // result has no zero rows; pivots are positive, strictly move right, and
  // entries above a pivot are reduced into [0, pivot).  All rows must have
  // length dim.
  IntMatrix hermite_normal_form(IntMatrix rows, std::size_t dim);

  inline std::size_t lattice_rank(IntMatrix const& rows, std::size_t dim) {
    return hermite_normal_form(rows, dim).size();
  }

  // HNF basis of {w in Z^dim : r . w = 0 for every row r}.
  IntMatrix integer_kernel(IntMatrix const& rows, std::size_t dim);

  // True iff v is an integer combination of the rows.
  bool in_lattice(IntMatrix const& rows, IntVector const& v, std::size_t dim);

  BigInt dot(IntVector const& a, IntVector const& b);

  IntVector to_int_vector(std::vector<std::int64_t> const& v);

}  // namespace sepkit
