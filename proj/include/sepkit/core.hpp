#pragma once

// Finite semigroups given by explicit multiplication tables, and the basic
// constructions (closures, adjoined identities/zeros, products, Rees
// quotients, homomorphism checks) that the rest of the library builds on.

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "sepkit/error.hpp"

namespace sepkit {

  // Elements are dense indices 0, ..., order - 1.
  using ElementId = std::uint32_t;

  using Table = std::vector<std::vector<ElementId>>;

  namespace limits {
    // Largest order any constructor will produce (default 10 000).
    std::size_t order_cap() noexcept;
    void        set_order_cap(std::size_t cap) noexcept;

    // Largest order accepted by exhaustive congruence enumeration (default 12).
    std::size_t congruence_cap() noexcept;
    void        set_congruence_cap(std::size_t cap) noexcept;

    // Largest word length for the truncated square-free semigroup (default 8).
    std::size_t squarefree_cap() noexcept;
    void        set_squarefree_cap(std::size_t cap) noexcept;

    // Throws ResourceError if n exceeds order_cap().
    void check_order(std::size_t n, char const* what);
  }  // namespace limits

  // A set of elements of some ambient semigroup.  Members keep the order in
  // which they were supplied (closure() relies on this to report discovery
  // order); equality is set equality.
  class Subset {
   public:
    Subset() = default;
    Subset(std::size_t ambient_order, std::vector<ElementId> members);

    [[nodiscard]] std::vector<ElementId> const& members() const noexcept {
      return _members;
    }
    [[nodiscard]] std::vector<ElementId> sorted() const;
    [[nodiscard]] bool contains(ElementId x) const noexcept {
      return x < _mask.size() && _mask[x];
    }
    [[nodiscard]] std::size_t size() const noexcept {
      return _members.size();
    }
    [[nodiscard]] bool empty() const noexcept {
      return _members.empty();
    }
    [[nodiscard]] std::size_t ambient_order() const noexcept {
      return _mask.size();
    }

    friend bool operator==(Subset const& a, Subset const& b) noexcept {
      return a._mask == b._mask;
    }

   private:
    std::vector<ElementId> _members;
    std::vector<bool>      _mask;
  };

  class FiniteSemigroup {
   public:
    // Builds from rows of the Cayley table and checks shape, range and
    // associativity (FormatError on failure).
    explicit FiniteSemigroup(Table const& rows);

    // For builders whose output is associative by construction.  Shape and
    // range are still checked; associativity is not.
    static FiniteSemigroup trusted(std::size_t order, std::vector<ElementId> flat);

    [[nodiscard]] std::size_t order() const noexcept {
      return _order;
    }
    [[nodiscard]] ElementId product(ElementId a, ElementId b) const noexcept {
      return _table[static_cast<std::size_t>(a) * _order + b];
    }
    // x^n for n >= 1.
    [[nodiscard]] ElementId power(ElementId x, std::size_t n) const;

    [[nodiscard]] std::optional<ElementId> identity() const noexcept {
      return _identity;
    }
    [[nodiscard]] std::optional<ElementId> zero() const noexcept {
      return _zero;
    }
    // True when this is the output of adjoin_identity on a semigroup that had
    // no identity of its own.
    [[nodiscard]] bool identity_adjoined() const noexcept {
      return _identity_adjoined;
    }

    [[nodiscard]] std::string label(ElementId x) const;
    [[nodiscard]] bool        has_labels() const noexcept {
      return !_labels.empty();
    }
    [[nodiscard]] std::vector<std::string> const& labels() const noexcept {
      return _labels;
    }
    [[nodiscard]] std::optional<std::vector<ElementId>> const& generators() const noexcept {
      return _generators;
    }

    // Copies with display labels / a distinguished generating set attached.
    // with_generators throws ArgumentError if the set does not generate.
    [[nodiscard]] FiniteSemigroup with_labels(std::vector<std::string> labels) const;
    [[nodiscard]] FiniteSemigroup with_generators(std::vector<ElementId> gens) const;

    [[nodiscard]] bool  is_commutative() const noexcept;
    [[nodiscard]] bool  is_idempotent(ElementId x) const noexcept {
      return product(x, x) == x;
    }
    [[nodiscard]] Table rows() const;
    [[nodiscard]] std::vector<ElementId> const& flat() const noexcept {
      return _table;
    }

    friend bool operator==(FiniteSemigroup const& a, FiniteSemigroup const& b) noexcept {
      return a._order == b._order && a._table == b._table;
    }

   private:
    FiniteSemigroup() = default;
    void find_special_elements();

    friend FiniteSemigroup adjoin_identity(FiniteSemigroup const&);

    std::size_t                           _order = 0;
    std::vector<ElementId>                _table;
    std::optional<ElementId>              _identity;
    std::optional<ElementId>              _zero;
    bool                                  _identity_adjoined = false;
    std::vector<std::string>              _labels;
    std::optional<std::vector<ElementId>> _generators;
  };

  // A validated homomorphism between two finite semigroups, stored as the list
  // of images.  Obtain one from check_hom or from a construction that returns
  // it (quotients, projections).
  class HomMap {
   public:
    [[nodiscard]] ElementId operator()(ElementId x) const noexcept {
      return _images[x];
    }
    [[nodiscard]] std::vector<ElementId> const& images() const noexcept {
      return _images;
    }
    [[nodiscard]] std::size_t source_order() const noexcept {
      return _images.size();
    }
    [[nodiscard]] std::size_t target_order() const noexcept {
      return _target_order;
    }

    static HomMap trusted(std::vector<ElementId> images, std::size_t target_order) {
      return HomMap(std::move(images), target_order);
    }

   private:
    HomMap(std::vector<ElementId> images, std::size_t target_order)
        : _images(std::move(images)), _target_order(target_order) {}

    std::vector<ElementId> _images;
    std::size_t            _target_order = 0;
  };

  using Triple = std::array<ElementId, 3>;

  // Lexicographically least (i, j, k) with (ij)k != i(jk), or nullopt if the
  // table is associative.  FormatError for non-square tables or entries out
  // of range.
  std::optional<Triple> validate_associativity(Table const& rows);
  std::optional<Triple> validate_associativity(FiniteSemigroup const& S);

  // Subsemigroup generated by X, listed breadth-first: first X in index
  // order, then right multiples by X in the order they are found.
  Subset closure(FiniteSemigroup const& S, Subset const& X);

  FiniteSemigroup adjoin_identity(FiniteSemigroup const& S);
  FiniteSemigroup adjoin_zero(FiniteSemigroup const& S);

  // Element (i, j) has index i * |T| + j.
  FiniteSemigroup direct_product(FiniteSemigroup const& S, FiniteSemigroup const& T);

  bool is_ideal(FiniteSemigroup const& S, Subset const& X);

  // Quotient by the Rees congruence of the ideal I.  Classes are numbered by
  // least member, so I collapses to the position of its least element.
  std::pair<FiniteSemigroup, HomMap> rees_quotient(FiniteSemigroup const& S, Subset const& I);

  using HomViolation = std::pair<ElementId, ElementId>;

  // The map is a homomorphism S -> T, or the least (i, j) with
  // map(ij) != map(i)map(j).
  std::variant<HomMap, HomViolation> check_hom(std::vector<ElementId> const& map,
                                               FiniteSemigroup const&        S,
                                               FiniteSemigroup const&        T);

  // A generating set: the indecomposable elements, topped up greedily in
  // index order.
  std::vector<ElementId> generating_set(FiniteSemigroup const& S);

  // Cayley table text format:
  //   n
  //   n rows of n 0-based indices
  //   optional "label k name" and "gen k" lines
  FiniteSemigroup read_table(std::istream& in);

  // The parsed file before any table check.  Entries are range-checked;
  // row lengths and associativity are left to the caller.
  struct RawTable {
    Table                    rows;
    std::vector<std::string> labels;      // empty when the file has none
    std::vector<ElementId>   generators;  // empty when the file has none
  };
  RawTable read_raw_table(std::istream& in);
  RawTable read_raw_table_file(std::string const& path);
  FiniteSemigroup read_table_file(std::string const& path);
  void            write_table(std::ostream& out, FiniteSemigroup const& S);
  void            write_table_file(std::string const& path, FiniteSemigroup const& S);

  // Small standard semigroups.
  FiniteSemigroup cyclic_group(std::size_t n);        // (Z/n, +)
  FiniteSemigroup multiplicative_mod(std::size_t n);  // ({0..n-1}, * mod n)
  FiniteSemigroup left_zero_semigroup(std::size_t n);
  FiniteSemigroup null_semigroup(std::size_t n);  // element 0 is the zero
  FiniteSemigroup chain_semilattice(std::size_t n);  // i * j = max(i, j)
  // <a | a^index = a^(index + period)>, element i is a^(i+1).
  FiniteSemigroup monogenic(std::size_t index, std::size_t period);

}  // namespace sepkit
