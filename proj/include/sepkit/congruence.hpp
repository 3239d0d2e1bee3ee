#pragma once

// Congruences on finite semigroups, stored as class-index vectors.

#include <cstddef>
#include <utility>
#include <vector>

#include "sepkit/core.hpp"

namespace sepkit {

  class Congruence {
   public:
    // Relabels classes so that they are numbered by least member.  Does not
    // check compatibility; see is_compatible.
    explicit Congruence(std::vector<std::size_t> const& class_of);

    static Congruence equality(std::size_t order);
    static Congruence universal(std::size_t order);

    [[nodiscard]] std::size_t class_of(ElementId x) const noexcept {
      return _class_of[x];
    }
    [[nodiscard]] std::vector<std::size_t> const& classes_vector() const noexcept {
      return _class_of;
    }
    [[nodiscard]] std::size_t index() const noexcept {
      return _index;
    }
    [[nodiscard]] std::size_t order() const noexcept {
      return _class_of.size();
    }
    [[nodiscard]] std::vector<std::vector<ElementId>> classes() const;
    [[nodiscard]] bool related(ElementId a, ElementId b) const noexcept {
      return _class_of[a] == _class_of[b];
    }
    // Every class of *this is contained in a class of other.
    [[nodiscard]] bool refines(Congruence const& other) const;

    friend bool operator==(Congruence const& a, Congruence const& b) noexcept {
      return a._class_of == b._class_of;
    }
    // (index, class_of) lexicographic; this is the canonical listing order.
    friend bool operator<(Congruence const& a, Congruence const& b) noexcept {
      if (a._index != b._index) {
        return a._index < b._index;
      }
      return a._class_of < b._class_of;
    }

   private:
    std::vector<std::size_t> _class_of;
    std::size_t              _index = 0;
  };

  // Exhaustive left/right compatibility scan.
  bool is_compatible(FiniteSemigroup const& S, Congruence const& c);

  using ElementPair = std::pair<ElementId, ElementId>;

  Congruence principal_congruence(FiniteSemigroup const& S, ElementId a, ElementId b);
  Congruence congruence_from_pairs(FiniteSemigroup const& S, std::vector<ElementPair> const& pairs);
  Congruence join(Congruence const& a, Congruence const& b);

  // Every congruence of S in canonical order.  ResourceError above
  // limits::congruence_cap().
  std::vector<Congruence> all_congruences(FiniteSemigroup const& S);

  // Quotient table with classes in index order, plus the projection.
  std::pair<FiniteSemigroup, HomMap> quotient(FiniteSemigroup const& S, Congruence const& c);

  // True iff the class of x avoids the classes of all members of T.
  // ArgumentError if x is in T.
  bool separates(Congruence const& c, ElementId x, Subset const& T);

  struct SeparationCertificate {
    Congruence             congruence;
    ElementId              element;
    std::vector<ElementId> avoided;
  };

  // A separating congruence of least index, ties broken by class_of.
  SeparationCertificate min_index_separating(FiniteSemigroup const& S, ElementId x, Subset const& T);

  Congruence rees_congruence(FiniteSemigroup const& S, Subset const& I);

}  // namespace sepkit
