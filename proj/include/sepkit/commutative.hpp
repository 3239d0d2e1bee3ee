#pragma once

// Finitely generated commutative semigroups.
//
// Presentations live over exponent vectors in N_0^k.  NFEngine explores a
// bounded box of vectors, merges them under the relations, and tries to
// certify that the semigroup is finite; with a certificate every equality
// question is decided exactly.
//
// The second half of the module computes the structural data used to decide
// separability: archimedean components, the Kublanovskii-Lesohin parameters
// (C_s, k_s, W_s, G_s, m_s), H-class finiteness, and the explicit finite
// index congruence isolating a single element.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sepkit/congruence.hpp"
#include "sepkit/core.hpp"
#include "sepkit/green.hpp"
#include "sepkit/lattice.hpp"

namespace sepkit {

  using ExpVec = std::vector<std::uint32_t>;

  // "a^2c" style rendering with generators a, b, c, ... (x1, x2, ... past
  // 26 generators); the zero vector renders as "1".
  std::string monomial_string(ExpVec const& v);

  struct CommPresentation {
    std::size_t                            k = 0;
    std::vector<std::pair<ExpVec, ExpVec>> relations;

    // FormatError unless k >= 1 and every side has length k and positive
    // degree.
    void validate() const;
  };

  // Text format:
  //   gens k
  //   rel e1 ... ek = f1 ... fk
  // Blank lines and lines starting with '#' are ignored.
  CommPresentation read_presentation(std::istream& in);
  CommPresentation read_presentation_file(std::string const& path);

  // Every generator satisfies x_i^index[i] = x_i^(index[i] + period[i]).
  struct FiniteCertificate {
    std::vector<std::uint32_t> index;
    std::vector<std::uint32_t> period;
    std::size_t                element_count = 0;
  };

  class NFEngine {
   public:
    // ResourceError if the box [0, bound]^k has more than box_cap points.
    NFEngine(CommPresentation pres, std::uint32_t bound);

    static constexpr std::size_t box_cap = 4'000'000;

    [[nodiscard]] CommPresentation const& presentation() const noexcept {
      return _pres;
    }
    [[nodiscard]] std::uint32_t bound() const noexcept {
      return _bound;
    }
    [[nodiscard]] std::optional<FiniteCertificate> const& certificate() const noexcept {
      return _certificate;
    }

    // Canonical representatives (lexicographically least explored member of
    // each class), sorted.  With a certificate these are exactly the
    // elements of the semigroup; otherwise the classes met inside the box.
    [[nodiscard]] std::vector<ExpVec> const& elements() const noexcept {
      return _elements;
    }

    // Position in elements() of the class of v.  Exact for every v when
    // certified; otherwise only defined for v inside the box.
    [[nodiscard]] std::optional<std::size_t> element_of(ExpVec const& v) const;

    // Two vectors proven equal by a chain of relation applications.
    [[nodiscard]] bool provably_equal(ExpVec const& u, ExpVec const& v) const;

    // The certified semigroup as a table, elements in elements() order,
    // generators = classes of the unit vectors.  ArgumentError without a
    // certificate.
    [[nodiscard]] FiniteSemigroup to_semigroup() const;

   private:
    [[nodiscard]] std::optional<std::size_t> encode(ExpVec const& v) const;
    [[nodiscard]] ExpVec                     decode(std::size_t idx) const;
    [[nodiscard]] ExpVec                     reduce(ExpVec v) const;
    void                                     try_certify();

    CommPresentation                 _pres;
    std::uint32_t                    _bound;
    std::size_t                      _box_size = 0;
    std::vector<std::size_t>         _root;  // box point -> class root
    std::vector<ExpVec>              _elements;
    std::vector<std::size_t>         _element_of_root;  // root -> position or npos
    std::optional<FiniteCertificate> _certificate;
  };

  struct EnumerationResult {
    std::vector<ExpVec>              elements;
    std::optional<FiniteCertificate> certificate;
  };

  EnumerationResult enumerate(CommPresentation const& pres, std::uint32_t bound);

  enum class WordVerdict { equal, distinct, unknown };

  struct WordProblemResult {
    WordVerdict              verdict = WordVerdict::unknown;
    std::string              reason;
    // A weight vector w with w.l = w.r on every relation and w.u != w.v.
    std::optional<IntVector> invariant;
  };

  // Equal is always sound.  Distinct comes either from a finiteness
  // certificate or from a linear invariant; otherwise Unknown.
  WordProblemResult word_problem(CommPresentation const& pres,
                                 ExpVec const&           u,
                                 ExpVec const&           v,
                                 std::uint32_t           bound);

  struct ArchDecomposition {
    FiniteSemigroup          semilattice;   // component i * component j
    std::vector<std::size_t> component_of;  // element -> component
    ClassList                components;    // ordered by least member
  };

  ArchDecomposition archimedean_decomposition(FiniteSemigroup const& S);

  // Compares Stab(H) with {x in S^1 : H_{s x^n} >= H for all n}.  The
  // condition is tested for n up to |S| + 1, which covers every power of x.
  bool stab_characterization_check(FiniteSemigroup const&        S,
                                   std::vector<ElementId> const& H,
                                   ElementId                     s);

  // Infinite commutative semigroups handled by exact formulas.
  enum class SymbolicAmbient {
    integers,                // (Z, +)
    naturals,                // ({1, 2, ...}, +)
    naturals_times_integers  // N x Z, componentwise +
  };

  using SymElement = std::vector<std::int64_t>;

  std::string symbolic_name(SymbolicAmbient a);
  // "Z", "N", "NxZ" (case-insensitive); nullopt otherwise.
  std::optional<SymbolicAmbient> parse_symbolic(std::string const& name);

  struct KLReport {
    std::string              element;
    std::vector<std::string> generators;  // A, in the given order
    std::vector<std::size_t> c_s;         // positions in A of A ∩ Stab(H_s)
    std::size_t              k_s = 0;
    std::vector<ExpVec>      w_s_gens;  // minimal non-zero members of W_s found
    IntMatrix                g_s_basis;  // HNF basis of the group generated by W_s
    std::size_t              m_s                     = 0;
    bool                     strongly_separable_at_s = true;
    bool                     exact                   = true;
    std::uint32_t            box_bound               = 0;
    std::string              note;
  };

  KLReport kl_parameters(FiniteSemigroup const&        S,
                         ElementId                     s,
                         std::vector<ElementId> const& A,
                         std::uint32_t                 bound);

  KLReport kl_parameters(SymbolicAmbient                ambient,
                         SymElement const&              s,
                         std::vector<SymElement> const& A,
                         std::uint32_t                  bound);

  struct HClassFiniteness {
    enum class Kind { finite, infinite, unknown };
    Kind                       kind = Kind::unknown;
    std::optional<std::size_t> size;
    std::optional<KLReport>    witness;
    std::string                reason;
  };

  HClassFiniteness hclass_finiteness(FiniteSemigroup const&        S,
                                     ElementId                     s,
                                     std::vector<ElementId> const& A,
                                     std::uint32_t                 bound);
  HClassFiniteness hclass_finiteness(SymbolicAmbient                ambient,
                                     SymElement const&              s,
                                     std::vector<SymElement> const& A,
                                     std::uint32_t                  bound);
  HClassFiniteness hclass_finiteness(CommPresentation const& pres,
                                     ExpVec const&           s,
                                     std::uint32_t           bound);

  using MembershipOracle = std::function<bool(ExpVec const&)>;

  struct DicksonResult {
    std::vector<ExpVec> generators;  // sorted by degree, then lexicographically
    // Every generator lies strictly inside the box.
    bool interior = true;
  };

  // Minimal points of an upward-closed set inside the box prod [0, bounds[i]].
  // ArgumentError if the oracle is not upward closed on the box.
  DicksonResult dickson_generators(MembershipOracle const&           oracle,
                                   std::vector<std::uint32_t> const& bounds);
  DicksonResult dickson_generators(MembershipOracle const& oracle,
                                   std::size_t             m,
                                   std::uint32_t           bound);

  // The finite index congruence isolating h, following the case split on
  // whether H_h is a group.
  struct SeparatingCongruence {
    ElementId              h          = 0;
    bool                   group_case = false;
    bool                   rees_reduced = false;  // worked in S / I(H)
    std::vector<ElementId> ideal;                 // I(H) (empty if H is minimal)
    std::vector<ElementId> x_gens;                // generators inside Stab(H)
    std::vector<ElementId> y_gens;                // the remaining generators
    std::vector<ElementId> u_prime;               // u with I_u non-empty (non-group case)
    std::vector<std::vector<ExpVec>> ideal_generators;  // Z_u per u, or {Z}
    std::uint32_t            max_exponent = 0;  // max alpha_i(z) over Z
    std::uint32_t            n            = 0;  // exponent used in the pairs
    std::size_t              hclass_size  = 0;
    std::vector<ElementPair> pairs;
    Congruence               congruence;
    FiniteSemigroup          quotient;
    bool                     singleton = false;  // [h] = {h}
  };

  // S must be finite and commutative; uses S.generators() if present,
  // generating_set(S) otherwise.  InternalError if [h] is not a singleton.
  SeparatingCongruence separating_congruence(FiniteSemigroup const& S, ElementId h);

  struct SeparabilityVerdict {
    std::string         ambient;
    bool                theorem_applies = true;  // finitely generated commutative
    std::optional<bool> residually_finite, weakly, strongly, completely;
    bool                all_hclasses_finite_known = false;
    std::vector<std::string>          reasons;
    std::optional<KLReport>           witness;
    std::vector<SeparatingCongruence> certificates;  // finite ambients
  };

  // For finite S a separating congruence is produced for every element (up
  // to certificate_cap elements).
  SeparabilityVerdict theorem43_classify(FiniteSemigroup const& S,
                                         std::size_t            certificate_cap = 64);
  SeparabilityVerdict theorem43_classify(SymbolicAmbient                ambient,
                                         std::vector<SymElement> const& A,
                                         std::uint32_t                  bound);
  SeparabilityVerdict theorem43_classify(CommPresentation const& pres, std::uint32_t bound);

}  // namespace sepkit
