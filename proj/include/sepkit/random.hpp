#pragma once

// Seeded generators of small test semigroups.  All randomness flows through
// the std::mt19937_64 passed in, so a seed fixes the output.

#include <cstddef>
#include <random>

#include "sepkit/commutative.hpp"
#include "sepkit/core.hpp"

namespace sepkit {

  // Semigroup generated by 1-3 random transformations of a set with at most
  // max_degree points.  The order is drawn uniformly from 1..max_order first
  // and generators are resampled until it is hit.  Transformations compose
  // left to right.
  FiniteSemigroup random_transformation_semigroup(std::mt19937_64& rng,
                                                  std::size_t      max_order  = 8,
                                                  std::size_t      max_degree = 4);

  // A random presentation on 1-3 generators in which every generator is
  // periodic, plus a random mixed relation.  Resampled until the engine
  // certifies it finite with at most max_order elements.  The result carries
  // its generators.
  FiniteSemigroup random_commutative_semigroup(std::mt19937_64& rng, std::size_t max_order = 30);

  // A random monoid of order at most max_order (a transformation semigroup
  // with an identity adjoined when needed).
  FiniteSemigroup random_monoid(std::mt19937_64& rng, std::size_t max_order = 6);

}  // namespace sepkit
