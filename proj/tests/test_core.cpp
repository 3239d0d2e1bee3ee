#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "sepkit/congruence.hpp"
#include "sepkit/core.hpp"
#include "sepkit/gallery.hpp"
#include "sepkit/random.hpp"

using namespace sepkit;

namespace {
  std::set<ElementId> as_set(Subset const& X) {
    return {X.members().begin(), X.members().end()};
  }
}  // namespace

TEST_CASE("validate_associativity on small tables", "[core]") {
  CHECK_FALSE(validate_associativity(cyclic_group(3).rows()));
  CHECK_FALSE(validate_associativity(Table{{0, 0}, {1, 1}}));

  Table const bad{{1, 0}, {0, 0}};
  auto const  v = validate_associativity(bad);
  REQUIRE(v);
  CHECK(*v == *oracle::associativity(bad));
  CHECK(*v == Triple{0, 0, 1});

  CHECK_THROWS_AS(validate_associativity(Table{{0, 1}, {1}}), FormatError);
  CHECK_THROWS_AS(validate_associativity(Table{{0, 2}, {1, 0}}), FormatError);
  CHECK_THROWS_AS(FiniteSemigroup(bad), FormatError);
}

TEST_CASE("validate_associativity matches the triple scan on random tables", "[core][fuzz]") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 1500; ++trial) {
    std::size_t const n = 1 + rng() % 5;
    Table             t(n, std::vector<ElementId>(n));
    // Mix random tables with ones built to be associative.
    bool const structured = trial % 3 == 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        t[i][j] = structured ? static_cast<ElementId>(std::max(i, j)) : static_cast<ElementId>(rng() % n);
      }
    }
    CHECK(validate_associativity(t) == oracle::associativity(t));
  }
}

TEST_CASE("closure", "[core]") {
  auto const Z6 = cyclic_group(6);
  CHECK(as_set(closure(Z6, Subset(6, {2}))) == std::set<ElementId>{0, 2, 4});
  CHECK(closure(Z6, Subset(6, {0, 1, 2, 3, 4, 5})).size() == 6);
  CHECK_THROWS_AS(closure(Z6, Subset(6, {})), ArgumentError);

  auto const S = build_construction(cyclic_group(3), cyclic_group(3), {0, 1, 2});
  CHECK(as_set(closure(S, Subset(7, {3}))) == std::set<ElementId>{3, 6});

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    auto const              T = random_transformation_semigroup(rng, 8);
    std::vector<ElementId> xs{static_cast<ElementId>(rng() % T.order())};
    auto const             C = closure(T, Subset(T.order(), xs));
    CHECK(as_set(C) == oracle::closure(T.rows(), {xs.begin(), xs.end()}));
    CHECK(closure(T, C) == C);
    auto wider = xs;
    wider.push_back(static_cast<ElementId>(rng() % T.order()));
    auto const bigger = as_set(closure(T, Subset(T.order(), wider)));
    for (auto x : as_set(C)) {
      CHECK(bigger.count(x));
    }
  }
}

TEST_CASE("adjoin_identity and adjoin_zero", "[core]") {
  CHECK(adjoin_identity(cyclic_group(3)).order() == 3);
  CHECK(adjoin_identity(null_semigroup(2)).order() == 3);

  auto const M = adjoin_identity(left_zero_semigroup(2));
  REQUIRE(M.order() == 3);
  REQUIRE(M.identity());
  CHECK(*M.identity() == 2);
  for (ElementId x = 0; x < 3; ++x) {
    CHECK(M.product(2, x) == x);
    CHECK(M.product(x, 2) == x);
  }
  CHECK(adjoin_identity(M).order() == M.order());

  auto const Y = adjoin_zero(cyclic_group(1));
  CHECK(Y.order() == 2);
  CHECK(Y.is_commutative());
  CHECK(Y.is_idempotent(0));
  CHECK(Y.is_idempotent(1));

  auto const Z2_0 = adjoin_zero(cyclic_group(2));
  CHECK(Z2_0.order() == 3);
  CHECK(Z2_0.zero() == ElementId{2});

  auto const twice = adjoin_zero(Z2_0);
  CHECK(twice.order() == 4);
  CHECK_FALSE(validate_associativity(twice));
  CHECK(twice.zero() == ElementId{3});
}

TEST_CASE("direct_product", "[core]") {
  auto const P = direct_product(null_semigroup(2), cyclic_group(3));
  CHECK(P.order() == 6);
  CHECK_FALSE(validate_associativity(P));

  auto const V = direct_product(cyclic_group(2), cyclic_group(2));
  std::size_t idempotents = 0;
  for (ElementId x = 0; x < V.order(); ++x) {
    idempotents += V.is_idempotent(x) ? 1 : 0;
  }
  CHECK(idempotents == 1);

  auto const S = monogenic(2, 2), T = left_zero_semigroup(2);
  auto const ST = direct_product(S, T);
  std::vector<ElementId> p1, p2;
  for (ElementId x = 0; x < ST.order(); ++x) {
    p1.push_back(static_cast<ElementId>(x / T.order()));
    p2.push_back(static_cast<ElementId>(x % T.order()));
  }
  CHECK(std::holds_alternative<HomMap>(check_hom(p1, ST, S)));
  CHECK(std::holds_alternative<HomMap>(check_hom(p2, ST, T)));

  limits::set_order_cap(20);
  CHECK_THROWS_AS(direct_product(cyclic_group(5), cyclic_group(5)), ResourceError);
  limits::set_order_cap(10000);
}

TEST_CASE("ideals and Rees quotients", "[core]") {
  auto const Z4 = cyclic_group(4);
  CHECK(is_ideal(Z4, Subset(4, {0, 1, 2, 3})));
  CHECK_FALSE(is_ideal(Z4, Subset(4, {0, 2})));

  auto const M4 = multiplicative_mod(4);
  CHECK(is_ideal(M4, Subset(4, {0})));
  auto const [Q, pi] = rees_quotient(M4, Subset(4, {0, 2}));
  CHECK(Q.order() == 3);
  CHECK(std::holds_alternative<HomMap>(check_hom(pi.images(), M4, Q)));
  CHECK(pi(0) == pi(2));
  CHECK(pi(1) != pi(3));

  auto const [one, pi1] = rees_quotient(Z4, Subset(4, {0, 1, 2, 3}));
  CHECK(one.order() == 1);
  CHECK_THROWS_AS(rees_quotient(Z4, Subset(4, {0})), ArgumentError);

  // Collapsing the zero of the square-free truncation changes nothing.
  auto const W = squarefree_semigroup(2);
  auto const [WQ, wpi] = rees_quotient(W, Subset(W.order(), {*W.zero()}));
  CHECK(WQ.order() == W.order());
}

TEST_CASE("check_hom", "[core]") {
  auto const Z4 = cyclic_group(4), Z2 = cyclic_group(2);
  CHECK(std::holds_alternative<HomMap>(check_hom({0, 1, 2, 3}, Z4, Z4)));
  CHECK(std::holds_alternative<HomMap>(check_hom({0, 1, 0, 1}, Z4, Z2)));
  CHECK(std::holds_alternative<HomMap>(check_hom({0, 0, 0, 0}, Z4, Z2)));
  auto const bad = check_hom({0, 1, 1, 1}, Z4, Z2);
  REQUIRE(std::holds_alternative<HomViolation>(bad));
  CHECK(std::get<HomViolation>(bad) == HomViolation{1, 1});
  CHECK_THROWS_AS(check_hom({0, 1}, Z4, Z2), FormatError);
  CHECK_THROWS_AS(check_hom({0, 1, 2, 3}, Z4, Z2), FormatError);
}

TEST_CASE("table files round-trip", "[core]") {
  auto const S = build_construction(cyclic_group(3), cyclic_group(3), {0, 1, 2});
  std::stringstream ss;
  write_table(ss, S);
  auto const T = read_table(ss);
  CHECK(T == S);
  CHECK(T.labels() == S.labels());
  CHECK(T.generators() == S.generators());

  std::istringstream bad("2\n0 1\n1 5\n");
  CHECK_THROWS_AS(read_table(bad), FormatError);
  std::istringstream junk("two\n");
  CHECK_THROWS_AS(read_table(junk), FormatError);
  CHECK_THROWS_AS(read_table_file("/nonexistent/table"), ArgumentError);
}

TEST_CASE("generating_set generates", "[core]") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    auto const S = random_transformation_semigroup(rng, 8);
    auto const g = generating_set(S);
    CHECK(oracle::closure(S.rows(), {g.begin(), g.end()}).size() == S.order());
  }
}
