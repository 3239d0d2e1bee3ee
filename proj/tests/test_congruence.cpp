#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "oracles.hpp"
#include "sepkit/congruence.hpp"
#include "sepkit/random.hpp"

using namespace sepkit;

namespace {
  std::set<std::vector<std::size_t>> as_set(std::vector<Congruence> const& cs) {
    std::set<std::vector<std::size_t>> out;
    for (auto const& c : cs) {
      out.insert(c.classes_vector());
    }
    return out;
  }
}  // namespace

TEST_CASE("principal congruences", "[congruence]") {
  auto const Z4 = cyclic_group(4);
  CHECK(principal_congruence(Z4, 1, 1) == Congruence::equality(4));
  CHECK(principal_congruence(Z4, 0, 2).classes() == ClassList{{0, 2}, {1, 3}});
  CHECK(principal_congruence(left_zero_semigroup(2), 0, 1) == Congruence::universal(2));
}

TEST_CASE("principal congruence is the least congruence containing the pair", "[congruence]") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    auto const S   = random_transformation_semigroup(rng, 7);
    auto const all = oracle::congruences(S.rows());
    auto const a = static_cast<ElementId>(rng() % S.order()), b = static_cast<ElementId>(rng() % S.order());
    auto const p = principal_congruence(S, a, b);
    CHECK(all.count(p.classes_vector()));
    for (auto const& c : all) {
      if (c[a] == c[b]) {
        CHECK(p.refines(Congruence(c)));
      }
    }
  }
}

TEST_CASE("congruence_from_pairs", "[congruence]") {
  auto const Z12 = cyclic_group(12);
  CHECK(congruence_from_pairs(Z12, {{0, 4}}).index() == 4);
  CHECK(congruence_from_pairs(Z12, {{3, 3}, {5, 5}}) == Congruence::equality(12));
  std::vector<ElementPair> everything;
  for (ElementId x = 0; x < 12; ++x) {
    for (ElementId y = 0; y < 12; ++y) {
      everything.emplace_back(x, y);
    }
  }
  CHECK(congruence_from_pairs(Z12, everything) == Congruence::universal(12));
  CHECK_THROWS_AS(congruence_from_pairs(Z12, {}), ArgumentError);

  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 60; ++trial) {
    auto const               S = random_transformation_semigroup(rng, 8);
    std::vector<ElementPair> pairs;
    for (int k = 0; k < 2; ++k) {
      pairs.emplace_back(static_cast<ElementId>(rng() % S.order()), static_cast<ElementId>(rng() % S.order()));
    }
    auto const c        = congruence_from_pairs(S, pairs);
    auto const [Q, pi]  = quotient(S, c);
    CHECK(is_compatible(S, c));
    CHECK(oracle::compatible(S.rows(), c.classes_vector()));
    for (auto [a, b] : pairs) {
      CHECK(pi(a) == pi(b));
    }
    CHECK(std::holds_alternative<HomMap>(check_hom(pi.images(), S, Q)));
  }
}

TEST_CASE("all_congruences on small examples", "[congruence]") {
  CHECK(all_congruences(cyclic_group(1)).size() == 1);
  CHECK(all_congruences(cyclic_group(5)).size() == 2);
  CHECK(all_congruences(cyclic_group(7)).size() == 2);
  CHECK(as_set(all_congruences(chain_semilattice(2))) == oracle::congruences(chain_semilattice(2).rows()));
  CHECK(all_congruences(chain_semilattice(2)).size() == 2);
}

TEST_CASE("all_congruences equals the partition filter", "[congruence][oracle]") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 60; ++trial) {
    auto const S = random_transformation_semigroup(rng, 7);
    auto const cs = all_congruences(S);
    CHECK(as_set(cs) == oracle::congruences(S.rows()));
    CHECK(std::is_sorted(cs.begin(), cs.end()));
  }
  for (auto const& S : {multiplicative_mod(6), monogenic(3, 3), null_semigroup(5), left_zero_semigroup(4)}) {
    CHECK(as_set(all_congruences(S)) == oracle::congruences(S.rows()));
  }
}

TEST_CASE("all_congruences respects the cap", "[congruence]") {
  auto const old = limits::congruence_cap();
  limits::set_congruence_cap(4);
  CHECK_THROWS_AS(all_congruences(cyclic_group(5)), ResourceError);
  limits::set_congruence_cap(old);
}

TEST_CASE("quotients", "[congruence]") {
  auto const Z4 = cyclic_group(4);
  CHECK(quotient(Z4, Congruence::equality(4)).first == Z4);
  CHECK(quotient(Z4, Congruence::universal(4)).first.order() == 1);
  auto const [Q, pi] = quotient(Z4, principal_congruence(Z4, 0, 2));
  CHECK(Q == cyclic_group(2));
}

TEST_CASE("separation", "[congruence]") {
  auto const Z4 = cyclic_group(4);
  CHECK(separates(Congruence::equality(4), 1, Subset(4, {0, 2})));
  CHECK_FALSE(separates(Congruence::universal(4), 1, Subset(4, {0})));
  CHECK(separates(principal_congruence(Z4, 0, 2), 1, Subset(4, {0})));
  CHECK_THROWS_AS(separates(Congruence::equality(4), 0, Subset(4, {0})), ArgumentError);

  auto const cert = min_index_separating(Z4, 2, Subset(4, {0}));
  CHECK(cert.congruence.index() == 4);
  CHECK(min_index_separating(Z4, 1, Subset(4, {0})).congruence.index() == 2);
  CHECK(min_index_separating(chain_semilattice(2), 0, Subset(2, {1})).congruence.index() == 2);
  CHECK_THROWS_AS(min_index_separating(Z4, 0, Subset(4, {0})), ArgumentError);

  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 60; ++trial) {
    auto const S = random_transformation_semigroup(rng, 7);
    if (S.order() < 2) {
      continue;
    }
    auto const x = static_cast<ElementId>(rng() % S.order());
    std::set<ElementId> T;
    for (ElementId y = 0; y < S.order(); ++y) {
      if (y != x && rng() % 2) {
        T.insert(y);
      }
    }
    auto const c = min_index_separating(S, x, Subset(S.order(), {T.begin(), T.end()}));
    CHECK(separates(c.congruence, x, Subset(S.order(), {T.begin(), T.end()})));
    CHECK(c.congruence.index() == oracle::min_separating_index(S.rows(), x, T));
  }
}

TEST_CASE("Rees congruences", "[congruence]") {
  auto const N = null_semigroup(4);
  CHECK(rees_congruence(N, Subset(4, {0, 1, 2, 3})) == Congruence::universal(4));
  CHECK(rees_congruence(N, Subset(4, {0})).index() == 4);
  CHECK_THROWS_AS(rees_congruence(cyclic_group(4), Subset(4, {0})), ArgumentError);
}
