#pragma once

// Green's relations on a finite semigroup, right stabilisers of H-classes,
// Schützenberger groups as concrete permutation groups on the H-class, and
// the homomorphism between Schützenberger groups induced by a semigroup
// homomorphism.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sepkit/core.hpp"

namespace sepkit {

  using ClassList = std::vector<std::vector<ElementId>>;

  // H, L, R, J partitions.  Every class is sorted and classes are ordered by
  // their least member, so class indices are canonical.  The structure keeps
  // a pointer to the semigroup it was computed from, which must outlive it.
  struct GreenStructure {
    FiniteSemigroup const* ambient = nullptr;

    ClassList h_classes, l_classes, r_classes, j_classes;
    std::vector<std::size_t> h_of, l_of, r_of, j_of;  // element -> class index
    std::vector<bool>        group_flags;             // per H-class: H meets H^2

    // Index of the H-class equal to H (as a set); ArgumentError otherwise.
    [[nodiscard]] std::size_t hclass_index(std::vector<ElementId> const& H) const;
  };

  GreenStructure green_relations(FiniteSemigroup const& S);

  // H meets H^2.  ArgumentError unless H is an H-class of S.
  bool is_group_hclass(FiniteSemigroup const& S, std::vector<ElementId> const& H);

  // Least n in [2, nmax] with H meeting H^n.  Finding one for a non-group
  // H-class would contradict the folklore lemma and raises InternalError.
  std::optional<std::size_t> hclass_power_witness(FiniteSemigroup const&        S,
                                                  std::vector<ElementId> const& H,
                                                  std::size_t                   nmax);

  // Elements of S^1 are indexed as in adjoin_identity(S): the indices of S,
  // plus index S.order() for the adjoined identity when S has none.
  struct RightStabilizer {
    FiniteSemigroup monoid;   // S^1
    Subset          members;  // {s in S^1 : Hs = H}
  };

  RightStabilizer right_stabilizer(FiniteSemigroup const& S, std::vector<ElementId> const& H);

  // Permutation of positions 0..|H|-1 of the sorted H-class.  Permutations
  // act on the right: (p * q)[i] = q[p[i]].
  using Perm = std::vector<std::uint32_t>;

  // The Schützenberger group of H realised as the set of distinct right
  // translations h -> hs, s in Stab(H).  Distinct permutations are exactly
  // the classes of the Schützenberger congruence.
  class SchutzGroup {
   public:
    SchutzGroup(std::vector<ElementId> hclass, std::map<Perm, ElementId> perms);

    [[nodiscard]] std::vector<ElementId> const& hclass() const noexcept {
      return _hclass;
    }
    // Sorted lexicographically; the identity is always perms()[0].
    [[nodiscard]] std::vector<Perm> const& perms() const noexcept {
      return _perms;
    }
    // Least element of S^1 realising each permutation.
    [[nodiscard]] std::vector<ElementId> const& realizers() const noexcept {
      return _realizers;
    }
    [[nodiscard]] std::size_t order() const noexcept {
      return _perms.size();
    }
    [[nodiscard]] std::size_t identity_index() const noexcept {
      return 0;
    }

    // Index of perms()[i] * perms()[j].
    [[nodiscard]] std::size_t multiply(std::size_t i, std::size_t j) const;
    [[nodiscard]] std::size_t inverse(std::size_t i) const;
    [[nodiscard]] std::optional<std::size_t> index_of(Perm const& p) const;
    // Image of the H-class member h under perms()[i].
    [[nodiscard]] ElementId apply(std::size_t i, ElementId h) const;

    [[nodiscard]] std::size_t element_order(std::size_t i) const;
    [[nodiscard]] bool        is_abelian() const;
    [[nodiscard]] bool        is_cyclic() const;
    // For each pair of members exactly one permutation maps the first to the
    // second.
    [[nodiscard]] bool acts_regularly() const;

    // "(a b c)(d e)" using the labels of S; the identity is "()".
    [[nodiscard]] std::string cycle_notation(std::size_t i, FiniteSemigroup const& S) const;

   private:
    std::vector<ElementId>   _hclass;
    std::vector<Perm>        _perms;
    std::vector<ElementId>   _realizers;
    std::map<Perm, std::size_t> _index;
  };

  // InternalError if a stabiliser element does not permute H or if the
  // result fails |Γ(H)| = |H| or regularity.
  SchutzGroup schutzenberger_group(FiniteSemigroup const& S, std::vector<ElementId> const& H);

  // H_x <= H_y iff xS^1 is contained in yS^1.  Only defined for commutative S.
  struct HClassOrder {
    std::vector<std::vector<bool>> leq;      // leq[a][b]: class a <= class b
    std::optional<std::size_t>     minimum;  // class below every other, if any

    [[nodiscard]] bool operator()(std::size_t a, std::size_t b) const {
      return leq[a][b];
    }
  };

  HClassOrder hclass_order(FiniteSemigroup const& S);

  // The homomorphism Γ_S(H) -> Γ_U(H_{φ(h)}) sending [v] to [φ(v)].
  struct InducedSchutzMap {
    SchutzGroup              source;
    SchutzGroup              target;
    std::vector<std::size_t> image;  // source perm index -> target perm index
  };

  // Checks that every stabiliser element lands in the target stabiliser,
  // that realizers of one permutation agree on the target, and that the map
  // is multiplicative; any failure is an InternalError.
  InducedSchutzMap induced_schutz_map(FiniteSemigroup const&        S,
                                      FiniteSemigroup const&        U,
                                      HomMap const&                 phi,
                                      std::vector<ElementId> const& H,
                                      ElementId                     h);

}  // namespace sepkit
