#pragma once

// Separability of abelian groups described by a small grammar: a direct sum
// or direct product of copies of Z, finite cyclic groups Z/m, and the
// families {Z/p^k : k >= 1}.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sepkit/error.hpp"
#include "sepkit/lattice.hpp"

namespace sepkit {

  struct AbelianFactor {
    enum class Kind { integers, cyclic, family };
    Kind          kind = Kind::integers;
    std::uint64_t n    = 0;  // m for Z/m, p for a family, unused for Z
    // nullopt means countably infinitely many copies.
    std::optional<std::uint64_t> multiplicity = 1;

    friend bool operator==(AbelianFactor const&, AbelianFactor const&) = default;
  };

  struct AbelianDescriptor {
    enum class Mode { sum, product };
    Mode                       mode = Mode::sum;
    std::vector<AbelianFactor> entries;

    // Round-trips through parse_abelian.
    [[nodiscard]] std::string to_string() const;

    friend bool operator==(AbelianDescriptor const&, AbelianDescriptor const&) = default;
  };

  // "sum Z*1 Z/8*omega fam2": a mode word, then entries separated by blanks
  // or commas.  Multiplicities default to 1; "omega" (or "w") is countably
  // many.  Divisible groups (Q, Pruefer groups) are not in the grammar and
  // raise FormatError, as do Z/m with m < 2, families over non-primes and
  // zero multiplicities.
  AbelianDescriptor parse_abelian(std::string const& text);

  bool is_prime(std::uint64_t p) noexcept;

  // Splits every Z/m into its prime-power parts, merges equal factors and
  // sorts the entries.  Classification only depends on the normal form.
  AbelianDescriptor normalize(AbelianDescriptor const& d);

  bool is_torsion(AbelianDescriptor const& d);
  // ArgumentError if p is not prime.
  bool p_exponent_bounded(AbelianDescriptor const& d, std::uint64_t p);
  bool is_finite(AbelianDescriptor const& d);
  // Group order when finite.
  std::optional<BigInt> finite_order(AbelianDescriptor const& d);

  struct AbelianVerdict {
    bool residually_finite = true;
    bool weakly            = false;
    bool strongly          = false;
    bool completely        = false;
    // One line per property, in the order above.
    std::vector<std::string> reasons;
  };

  AbelianVerdict classify(AbelianDescriptor const& d);

}  // namespace sepkit
