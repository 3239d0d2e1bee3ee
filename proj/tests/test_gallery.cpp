#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "oracles.hpp"
#include "sepkit/congruence.hpp"
#include "sepkit/gallery.hpp"
#include "sepkit/green.hpp"
#include "sepkit/random.hpp"

using namespace sepkit;

TEST_CASE("construction S(T, G, phi)", "[gallery]") {
  struct Case {
    std::size_t t, g;
  };
  for (auto [t, g] : {Case{3, 3}, Case{4, 2}, Case{2, 1}, Case{6, 3}, Case{6, 2}}) {
    auto const             T = cyclic_group(t), G = cyclic_group(g);
    std::vector<ElementId> phi;
    for (ElementId a = 0; a < t; ++a) {
      phi.push_back(static_cast<ElementId>(a % g));
    }
    auto const S = build_construction(T, G, phi);
    CHECK(S.order() == t + g + 1);
    CHECK_FALSE(oracle::associativity(S.rows()));
    std::vector<ElementId> X;
    for (std::size_t k = 0; k < g; ++k) {
      X.push_back(static_cast<ElementId>(t + k));
    }
    auto const hs = oracle::h_classes(S.rows());
    CHECK(std::find(hs.begin(), hs.end(), X) != hs.end());
    CHECK_FALSE(oracle::group_hclass(S.rows(), X));
    auto const Gamma = schutzenberger_group(S, X);
    CHECK(Gamma.order() == g);
    CHECK(Gamma.is_abelian());
    CHECK(Gamma.acts_regularly());
  }
  CHECK_THROWS_AS(build_construction(cyclic_group(3), cyclic_group(3), {0, 0, 0}), ArgumentError);
  CHECK_THROWS_AS(build_construction(cyclic_group(2), left_zero_semigroup(2), {0, 1}), ArgumentError);
  CHECK_THROWS_AS(build_construction(cyclic_group(4), cyclic_group(2), {0, 1, 1, 0}), ArgumentError);
}

TEST_CASE("construction image maps", "[gallery]") {
  auto const [K, f] = construction_image_map(cyclic_group(4), cyclic_group(4), {0, 1, 2, 3}, cyclic_group(2), {0, 1, 0, 1});
  CHECK(K.order() == 5);
  auto const S = build_construction(cyclic_group(4), cyclic_group(4), {0, 1, 2, 3});
  CHECK(std::holds_alternative<HomMap>(check_hom(f.images(), S, K)));
}

TEST_CASE("Rees matrix semigroups", "[gallery]") {
  auto const Z2 = cyclic_group(2);
  using E       = std::optional<ElementId>;
  SandwichMatrix const P{{E{0}, std::nullopt}, {E{0}, E{0}}};
  ReesMatrixSpec const spec{Z2, 2, 2, P};
  auto const           R = build_rees_matrix(spec);
  CHECK(R.order() == 9);
  CHECK_FALSE(oracle::associativity(R.rows()));
  // p_{l i} = 0 at l = 0, i = 1: the H-class {1} x G x {0} is not a group.
  std::vector<ElementId> H{rees_index(spec, 1, 0, 0), rees_index(spec, 1, 1, 0)};
  std::sort(H.begin(), H.end());
  CHECK_FALSE(oracle::group_hclass(R.rows(), H));

  auto const G0 = build_rees_matrix({cyclic_group(3), 1, 1, {{E{0}}}});
  CHECK(G0.order() == 4);
  CHECK(G0.zero() == ElementId{3});
  CHECK(green_relations(G0).h_classes.size() == 2);

  CHECK_THROWS_AS(build_rees_matrix({Z2, 2, 2, {{std::nullopt, std::nullopt}, {E{0}, E{0}}}}), ArgumentError);
  CHECK_THROWS_AS(build_rees_matrix({Z2, 2, 2, {{E{0}, std::nullopt}, {E{0}, std::nullopt}}}), ArgumentError);
  CHECK_THROWS_AS(build_rees_matrix({Z2, 2, 2, {{E{0}}}}), ArgumentError);
}

TEST_CASE("square-free words", "[gallery]") {
  CHECK(squarefree_semigroup(1).order() == 4);
  CHECK(squarefree_semigroup(2).order() == 10);
  CHECK(squarefree_semigroup(3).order() == 22);
  for (std::size_t n = 1; n <= 6; ++n) {
    std::size_t expected = 1;
    for (std::size_t l = 1; l <= n; ++l) {
      expected += oracle::squarefree_count(l);
    }
    auto const W = squarefree_semigroup(n);
    CHECK(W.order() == expected);
    CHECK(W.zero() == static_cast<ElementId>(W.order() - 1));
  }
  CHECK_THROWS_AS(squarefree_semigroup(0), ArgumentError);

  CHECK(squarefree_stream(1) == "a");
  CHECK(squarefree_stream(3) == "abc");
  auto const w = squarefree_stream(400);
  CHECK(w.size() == 400);
  CHECK_FALSE(oracle::has_square(w));
  CHECK(is_squarefree(squarefree_stream(10000)));
  CHECK_FALSE(is_squarefree("abcbc"));
}

TEST_CASE("witness replays", "[gallery]") {
  auto const two = replay_squarefree_collapse({7, 7});
  REQUIRE(two);
  CHECK(two->i == 1);
  CHECK(two->j == 2);
  CHECK(verify_chain(*two));
  CHECK_FALSE(replay_squarefree_collapse({1, 2, 3}));

  auto const eg = replay_eg62({0, 0});
  REQUIRE(eg);
  CHECK(eg->i == 1);
  CHECK(eg->j == 2);
  REQUIRE(eg->steps.size() == 3);
  CHECK(render_step(eg->steps[0]) == "0 = b_1*a^1  [b_1 a^1 = 0 since 1 >= 1]");
  CHECK(eg->steps[1].congruent);
  CHECK(eg62_product(eg->steps[2].rhs) == "b_1");
  CHECK(verify_chain(*eg));
  CHECK(replay_eg62({1, 2, 3, 4, 1}).has_value());
  CHECK_FALSE(replay_eg62({1, 2, 3, 4, 5}));
  CHECK_THROWS_AS(replay_eg62({1}), ArgumentError);

  CHECK(squarefree_product({"ab", "c"}) == "abc");
  CHECK(squarefree_product({"ab", "ab"}) == "0");
  CHECK(eg62_product({"a^2", "b_5"}) == "b_3");
  CHECK(eg62_product({"b_2", "a^2"}) == "0");

  // A tampered chain is rejected.
  auto broken = *eg;
  broken.steps[2].rhs = {"b_2"};
  CHECK_FALSE(verify_chain(broken));
}

TEST_CASE("cyclic obstruction", "[gallery]") {
  auto const rows = z_cyclic_obstruction(8);
  REQUIRE(rows.size() == 8);
  CHECK(rows[0].contained);
  CHECK(rows[1].image == 1);
  CHECK(rows[4].image == 4);
  CHECK(rows[4].k == 4);
  for (auto const& r : rows) {
    CHECK(r.contained);
    CHECK((r.k * 1) % r.n == r.image % r.n);
  }
}

TEST_CASE("separator in N x Z", "[gallery]") {
  auto const a = nxz_separator({{1, 1}}, {2, 0});
  CHECK(a.n == 2);
  CHECK(a.Y == std::vector<NxZ>{{2, 2}});
  CHECK(a.modulus == 4);
  CHECK(a.certified);
  for (auto const& p : a.checked) {
    CHECK(a.image(p) != a.image({2, 0}));
  }

  auto const b = nxz_separator({{1, 0}}, {1, 1});
  CHECK(b.Y == std::vector<NxZ>{{1, 0}});
  CHECK(b.modulus == 2);
  CHECK(b.certified);

  CHECK_THROWS_AS(nxz_separator({{1, 1}}, {1, 1}), ArgumentError);
  CHECK_THROWS_AS(nxz_separator({}, {1, 1}), ArgumentError);

  // Image map is a homomorphism on sampled pairs.
  auto const c = nxz_separator({{1, 1}, {1, -1}}, {3, 2});
  for (std::int64_t x = 1; x <= 5; ++x) {
    for (std::int64_t y = -4; y <= 4; ++y) {
      for (std::int64_t u = 1; u <= 5; ++u) {
        for (std::int64_t v = -4; v <= 4; ++v) {
          CHECK(c.target.product(c.image({x, y}), c.image({u, v})) == c.image({x + u, y + v}));
        }
      }
    }
  }
}

TEST_CASE("one-sided units in finite monoids", "[gallery]") {
  CHECK(finite_monoid_unit_check(cyclic_group(6)).ok);
  CHECK(finite_monoid_unit_check(adjoin_identity(null_semigroup(2))).ok);
  CHECK_THROWS_AS(finite_monoid_unit_check(null_semigroup(3)), ArgumentError);
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 500; ++trial) {
    CHECK(finite_monoid_unit_check(random_monoid(rng, 6)).ok);
  }
}

TEST_CASE("gallery instances are well formed", "[gallery]") {
  std::set<std::string> names;
  for (auto const& inst : gallery_instances()) {
    CHECK(names.insert(inst.name).second);
    CHECK_FALSE(oracle::associativity(inst.semigroup.rows()));
  }
  CHECK(names.size() >= 10);
}
