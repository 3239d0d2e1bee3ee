#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "oracles.hpp"
#include "sepkit/commutative.hpp"
#include "sepkit/congruence.hpp"
#include "sepkit/core.hpp"
#include "sepkit/green.hpp"
#include "sepkit/random.hpp"

using namespace sepkit;

TEST_CASE("Rees quotient projections", "[property]") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 150; ++trial) {
    auto const S = random_transformation_semigroup(rng, 8);
    auto const x = static_cast<ElementId>(rng() % S.order());
    auto const ideal = oracle::two_sided_ideal(S.rows(), x);
    Subset const I(S.order(), {ideal.begin(), ideal.end()});
    REQUIRE(is_ideal(S, I));
    auto const [Q, pi] = rees_quotient(S, I);
    CHECK(std::holds_alternative<HomMap>(check_hom(pi.images(), S, Q)));
    CHECK(Q.order() == S.order() - ideal.size() + 1);
    for (ElementId a = 0; a < S.order(); ++a) {
      for (ElementId b = a + 1; b < S.order(); ++b) {
        if (pi(a) == pi(b)) {
          CHECK(ideal.count(a));
          CHECK(ideal.count(b));
        }
      }
    }
  }
}

TEST_CASE("products and identities", "[property]") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 60; ++trial) {
    auto const S = random_transformation_semigroup(rng, 5), T = random_transformation_semigroup(rng, 5);
    auto const P = direct_product(S, T);
    CHECK(P.order() == S.order() * T.order());
    CHECK_FALSE(oracle::associativity(P.rows()));
    auto const M = adjoin_identity(S);
    CHECK(adjoin_identity(M).order() == M.order());
    CHECK(M.identity());
  }
}

TEST_CASE("joins are least upper bounds", "[property]") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    auto const S   = random_transformation_semigroup(rng, 7);
    auto const all = oracle::congruences(S.rows());
    std::vector<std::vector<std::size_t>> list(all.begin(), all.end());
    Congruence const a(list[rng() % list.size()]), b(list[rng() % list.size()]);
    auto const j = join(a, b);
    CHECK(all.count(j.classes_vector()));
    CHECK(a.refines(j));
    CHECK(b.refines(j));
    for (auto const& c : list) {
      Congruence const cc(c);
      if (a.refines(cc) && b.refines(cc)) {
        CHECK(j.refines(cc));
      }
    }
  }
}

TEST_CASE("verdicts respect the implication chain", "[property]") {
  auto const implies = [](std::optional<bool> p, std::optional<bool> q) { return !(p == true) || q == true; };
  std::vector<SeparabilityVerdict> vs{
      theorem43_classify(SymbolicAmbient::integers, {{1}, {-1}}, 8),
      theorem43_classify(SymbolicAmbient::naturals, {{1}}, 8),
      theorem43_classify(SymbolicAmbient::naturals_times_integers, {{1, 0}, {1, 1}, {1, -1}}, 8),
  };
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 5; ++trial) {
    vs.push_back(theorem43_classify(random_commutative_semigroup(rng, 20), 8));
  }
  for (auto const& v : vs) {
    CHECK(implies(v.completely, v.strongly));
    CHECK(implies(v.strongly, v.weakly));
    CHECK(implies(v.weakly, v.residually_finite));
  }
}

TEST_CASE("finite semigroups and their subsemigroups are completely separable", "[property]") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    auto const S = random_transformation_semigroup(rng, 7);
    auto const x = static_cast<ElementId>(rng() % S.order());
    // Separate x from its complement: the equality congruence always works.
    std::vector<ElementId> rest;
    for (ElementId y = 0; y < S.order(); ++y) {
      if (y != x) {
        rest.push_back(y);
      }
    }
    if (rest.empty()) {
      continue;
    }
    auto const c = min_index_separating(S, x, Subset(S.order(), rest));
    CHECK(c.congruence.classes()[c.congruence.class_of(x)] == std::vector<ElementId>{x});
  }
}

TEST_CASE("random generators are reproducible", "[property]") {
  std::mt19937_64 a(42), b(42);
  for (int trial = 0; trial < 20; ++trial) {
    CHECK(random_transformation_semigroup(a) == random_transformation_semigroup(b));
    CHECK(random_commutative_semigroup(a) == random_commutative_semigroup(b));
    CHECK(random_monoid(a) == random_monoid(b));
  }
}
