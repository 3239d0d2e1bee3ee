#pragma once

// Concrete instances of the constructions and counterexamples studied by the
// toolkit, each checked when built:
//
//  * S(T, G, phi): T plus a null H-class X_G whose Schützenberger group is G
//  * Rees matrix semigroups M0[G; I, L; P]
//  * square-free words over {a, b, c} truncated at length n
//  * witness chains showing why certain congruences cannot have finite index
//  * the separator of an element from a subsemigroup of N x Z

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sepkit/core.hpp"

namespace sepkit {

  // Every row and column of the table is a permutation and there is an
  // identity.
  bool is_group(FiniteSemigroup const& G);
  // Inverse in a finite group; ArgumentError if G is not a group.
  ElementId group_inverse(FiniteSemigroup const& G, ElementId g);

  // S(T, G, phi).  Elements: T in its own order, then x_g for g in G in G's
  // order, then 0.  ArgumentError if G is not an abelian group or phi is not
  // a surjective homomorphism T -> G.  The table is checked exhaustively for
  // associativity, and X_G is checked to be a non-group H-class whose
  // Schützenberger group has |G| elements and is abelian.
  FiniteSemigroup build_construction(FiniteSemigroup const&        T,
                                     FiniteSemigroup const&        G,
                                     std::vector<ElementId> const& phi);

  // The map S(T, G, phi) -> S(K, K, id) sending t to x(phi(t)) in K, x_g to
  // x_{f(g)} and 0 to 0, for a homomorphism f: G -> K of abelian groups.
  // Returns the target and the verified homomorphism.
  std::pair<FiniteSemigroup, HomMap> construction_image_map(FiniteSemigroup const&        T,
                                                            FiniteSemigroup const&        G,
                                                            std::vector<ElementId> const& phi,
                                                            FiniteSemigroup const&        K,
                                                            std::vector<ElementId> const& f);

  using SandwichMatrix = std::vector<std::vector<std::optional<ElementId>>>;

  struct ReesMatrixSpec {
    FiniteSemigroup G;
    std::size_t     i_size = 1;
    std::size_t     l_size = 1;
    SandwichMatrix  P;  // l_size rows, i_size columns; nullopt is 0
  };

  // Index of (i, a, l) in build_rees_matrix's output; 0 is last.
  inline ElementId rees_index(ReesMatrixSpec const& spec, std::size_t i, ElementId a, std::size_t l) {
    return static_cast<ElementId>((i * spec.G.order() + a) * spec.l_size + l);
  }

  // (i, a, l)(j, b, m) = (i, a p_{lj} b, m) if p_{lj} != 0, else 0.
  // ArgumentError if G is not a group, P has the wrong shape or an entry out
  // of range, or P has an all-zero row or column.  Afterwards checks that
  // every non-zero H-class is {i} x G x {l} and is a group exactly when
  // p_{li} != 0.
  FiniteSemigroup build_rees_matrix(ReesMatrixSpec const& spec);

  // No factor of the form uu.
  bool is_squarefree(std::string const& w);

  // Square-free words of length 1..n in shortlex order, then 0.  Product is
  // concatenation unless the result is longer than n or contains a square.
  // ArgumentError for n = 0, ResourceError above limits::squarefree_cap().
  FiniteSemigroup squarefree_semigroup(std::size_t n);

  // Prefix of the fixed point of a -> abc, b -> ac, c -> b.  The prefix is
  // verified square-free before it is returned (InternalError otherwise).
  std::string squarefree_stream(std::size_t len);

  // One line of a witness chain.  Each side is a product of factors; a
  // congruent step replaces one factor by the other member of the assumed
  // collision.
  struct WitnessStep {
    std::vector<std::string> lhs, rhs;
    bool                     congruent = false;
    std::string              justification;
  };

  struct WitnessChain {
    enum class Kind { squarefree, eg62 };
    Kind                     kind = Kind::squarefree;
    std::size_t              i = 0, j = 0;    // colliding positions, 1-based, i < j
    std::string              left, right;     // the colliding elements
    std::vector<WitnessStep> steps;
    std::string              conclusion;
  };

  // "LHS = RHS  [justification]" or "LHS ~ RHS  [justification]".
  std::string render_step(WitnessStep const& step);

  // colors[k] is the colour of the (k+1)-th element.  The least colliding
  // pair (i, j) in lexicographic order is used; nullopt when the colouring
  // is injective.  ArgumentError if fewer than two colours are given.
  std::optional<WitnessChain> replay_squarefree_collapse(std::vector<long long> const& colors);
  std::optional<WitnessChain> replay_eg62(std::vector<long long> const& colors);

  // Re-evaluates every step: equal steps by symbolic multiplication,
  // congruent steps as a single substitution of the collision, and adjacent
  // steps must share their middle term.
  bool verify_chain(WitnessChain const& chain);

  // Symbolic products used by verify_chain; "0" is the zero.
  // Square-free semigroup: factors are words over {a, b, c}.
  std::string squarefree_product(std::vector<std::string> const& factors);
  // The commutative semigroup <a> u {b_j} u {0} with a^i b_j = b_{j-i} for
  // j > i and 0 otherwise; factors are "a^i", "a", "b_j", "0".
  std::string eg62_product(std::vector<std::string> const& factors);

  struct CyclicObstructionRow {
    std::size_t n        = 1;
    ElementId   image    = 0;  // image of -1 in Z/n
    std::size_t k        = 1;  // image of -1 = k * image of 1
    bool        contained = true;
  };

  // For n = 1..n_max: the image of -1 in Z/n lies in the subsemigroup
  // generated by the image of 1.  ArgumentError for n_max = 0.
  std::vector<CyclicObstructionRow> z_cyclic_obstruction(std::size_t n_max);

  using NxZ = std::pair<std::int64_t, std::int64_t>;

  // Separates x from <T> in N x Z by (a, b) -> (min(a, n+1), b mod M) into
  // (N / {m > n}) x Z/M, where n is the first coordinate of x and M is twice
  // the largest gap between x and the members of <T> with first coordinate
  // n (M = 1 when there are none).
  struct NxZSeparator {
    std::int64_t       n = 0;
    std::vector<NxZ>   Y;        // members of <T> with first coordinate n, sorted
    std::int64_t       modulus = 1;
    FiniteSemigroup    n_quotient;    // N / I: elements 1..n then the zero
    FiniteSemigroup    target;        // n_quotient x Z/modulus
    std::vector<NxZ>   checked;       // members of <T> with first coordinate <= n
    bool               certified = false;

    [[nodiscard]] ElementId image(NxZ const& p) const;
  };

  // ArgumentError for invalid pairs, empty T, or x in <T>.
  NxZSeparator nxz_separator(std::vector<NxZ> const& T, NxZ const& x);

  struct UnitCheck {
    bool                                     ok = true;
    std::optional<std::pair<ElementId, ElementId>> violation;  // bc = 1 but cb != 1
  };

  // ArgumentError if M has no identity.
  UnitCheck finite_monoid_unit_check(FiniteSemigroup const& M);

  struct GalleryInstance {
    std::string     name;
    std::string     description;
    FiniteSemigroup semigroup;
  };

  // Named instances, built with default parameters.
  std::vector<GalleryInstance> gallery_instances();

}  // namespace sepkit
