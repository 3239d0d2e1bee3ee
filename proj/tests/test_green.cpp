#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>

#include "oracles.hpp"
#include "sepkit/gallery.hpp"
#include "sepkit/green.hpp"
#include "sepkit/random.hpp"

using namespace sepkit;

namespace {
  std::vector<FiniteSemigroup> samples() {
    std::vector<FiniteSemigroup> out;
    for (auto const& inst : gallery_instances()) {
      out.push_back(inst.semigroup);
    }
    std::mt19937_64 rng(101);
    for (int i = 0; i < 150; ++i) {
      out.push_back(random_transformation_semigroup(rng, 8));
    }
    return out;
  }

  bool is_partition_refinement(ClassList const& fine, ClassList const& coarse, std::size_t n) {
    std::vector<std::size_t> of(n);
    for (std::size_t c = 0; c < coarse.size(); ++c) {
      for (auto x : coarse[c]) {
        of[x] = c;
      }
    }
    for (auto const& f : fine) {
      for (auto x : f) {
        if (of[x] != of[f.front()]) {
          return false;
        }
      }
    }
    return true;
  }
}  // namespace

TEST_CASE("Green's relations match the ideal definitions", "[green]") {
  for (auto const& S : samples()) {
    auto const t = S.rows();
    auto const g = green_relations(S);
    CHECK(g.h_classes == oracle::h_classes(t));
    CHECK(g.l_classes == oracle::l_classes(t));
    CHECK(g.r_classes == oracle::r_classes(t));
    CHECK(g.j_classes == oracle::j_classes(t));
    REQUIRE(g.group_flags.size() == g.h_classes.size());
    for (std::size_t i = 0; i < g.h_classes.size(); ++i) {
      CHECK(g.group_flags[i] == oracle::group_hclass(t, g.h_classes[i]));
      CHECK(is_partition_refinement({g.h_classes[i]}, g.l_classes, S.order()));
      CHECK(is_partition_refinement({g.h_classes[i]}, g.r_classes, S.order()));
    }
    CHECK(is_partition_refinement(g.l_classes, g.j_classes, S.order()));
    CHECK(is_partition_refinement(g.r_classes, g.j_classes, S.order()));
  }
}

TEST_CASE("Green's relations on small examples", "[green]") {
  auto const G = green_relations(cyclic_group(5));
  CHECK(G.h_classes.size() == 1);
  CHECK(G.group_flags[0]);

  auto const LZ = green_relations(left_zero_semigroup(2));
  CHECK(LZ.r_classes == ClassList{{0}, {1}});
  CHECK(LZ.l_classes == ClassList{{0, 1}});
  CHECK(LZ.h_classes == ClassList{{0}, {1}});
}

TEST_CASE("Schützenberger groups have |H| elements and act regularly", "[green]") {
  for (auto const& S : samples()) {
    auto const g = green_relations(S);
    for (std::size_t i = 0; i < g.h_classes.size(); ++i) {
      auto const& H     = g.h_classes[i];
      auto const  Gamma = schutzenberger_group(S, H);
      CHECK(Gamma.order() == H.size());
      CHECK(Gamma.order() == oracle::schutz_order(S.rows(), H));
      CHECK(Gamma.acts_regularly());
      for (auto h : H) {
        for (auto k : H) {
          std::size_t hits = 0;
          for (std::size_t p = 0; p < Gamma.order(); ++p) {
            hits += Gamma.apply(p, h) == k ? 1 : 0;
          }
          CHECK(hits == 1);
        }
      }
      if (g.group_flags[i]) {
        // Base point e: the map e -> e*p is an isomorphism from H.
        ElementId e = H.front();
        for (auto h : H) {
          if (S.is_idempotent(h)) {
            e = h;
          }
        }
        std::map<ElementId, std::size_t> perm_of;
        for (std::size_t p = 0; p < Gamma.order(); ++p) {
          perm_of[Gamma.apply(p, e)] = p;
        }
        for (auto a : H) {
          for (auto b : H) {
            CHECK(perm_of.at(S.product(a, b)) == Gamma.multiply(perm_of.at(a), perm_of.at(b)));
          }
        }
      }
    }
  }
}

TEST_CASE("group H-classes and power witnesses", "[green]") {
  auto const S = build_construction(cyclic_group(3), cyclic_group(3), {0, 1, 2});
  CHECK_FALSE(is_group_hclass(S, {3, 4, 5}));
  CHECK(is_group_hclass(S, {6}));
  CHECK(is_group_hclass(S, {0, 1, 2}));
  CHECK_THROWS_AS(is_group_hclass(S, {3, 4}), ArgumentError);

  CHECK(hclass_power_witness(S, {0, 1, 2}, 5) == std::size_t{2});
  CHECK(hclass_power_witness(S, {6}, 5) == std::size_t{2});
  CHECK_FALSE(hclass_power_witness(S, {3, 4, 5}, 10));

  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    auto const T = random_transformation_semigroup(rng, 8);
    for (auto const& H : green_relations(T).h_classes) {
      if (hclass_power_witness(T, H, 6)) {
        CHECK(is_group_hclass(T, H));
      }
    }
  }
}

TEST_CASE("right stabilizers", "[green]") {
  auto const Z3 = cyclic_group(3);
  CHECK(right_stabilizer(Z3, {0, 1, 2}).members.size() == 3);

  auto const S    = build_construction(Z3, Z3, {0, 1, 2});
  auto const stab = right_stabilizer(S, {3, 4, 5});
  // T's identity is an identity of S, so S^1 = S.
  CHECK(stab.monoid.order() == 7);
  CHECK(stab.members.sorted() == std::vector<ElementId>{0, 1, 2});

  auto const zero = right_stabilizer(S, {6});
  CHECK(zero.members.size() == 7);

  auto const N    = null_semigroup(3);
  auto const nstab = right_stabilizer(N, {1});
  CHECK(nstab.monoid.order() == 4);
  CHECK(nstab.members.sorted() == std::vector<ElementId>{3});
}

TEST_CASE("Schützenberger group examples", "[green]") {
  auto const S = build_construction(cyclic_group(3), cyclic_group(3), {0, 1, 2});
  auto const G = schutzenberger_group(S, {3, 4, 5});
  CHECK(G.order() == 3);
  CHECK(G.is_cyclic());

  auto const R = build_rees_matrix({cyclic_group(2), 2, 2, {{0, std::nullopt}, {0, 0}}});
  auto const g = green_relations(R);
  std::size_t non_group = 0;
  for (std::size_t i = 0; i < g.h_classes.size(); ++i) {
    if (!g.group_flags[i]) {
      ++non_group;
      CHECK(g.h_classes[i].size() == 2);
      CHECK(schutzenberger_group(R, g.h_classes[i]).order() == 2);
    }
  }
  CHECK(non_group == 1);
}

TEST_CASE("hclass_order", "[green]") {
  auto const Z5 = hclass_order(cyclic_group(5));
  CHECK(Z5.leq.size() == 1);
  CHECK(Z5.minimum == std::size_t{0});

  // 2-element semilattice with ef = f: f = 1 under max.
  auto const Y = hclass_order(chain_semilattice(2));
  CHECK(Y(1, 0));
  CHECK_FALSE(Y(0, 1));

  auto const M = hclass_order(multiplicative_mod(4));
  REQUIRE(M.minimum);
  CHECK(green_relations(multiplicative_mod(4)).h_classes[*M.minimum] == std::vector<ElementId>{0});

  CHECK_THROWS_AS(hclass_order(left_zero_semigroup(2)), ArgumentError);
}

TEST_CASE("H is a congruence on commutative semigroups", "[green]") {
  for (auto const& S : {multiplicative_mod(12), monogenic(3, 2), cyclic_group(4), chain_semilattice(3)}) {
    auto const g = green_relations(S);
    std::vector<std::size_t> cls(g.h_of.begin(), g.h_of.end());
    CHECK(oracle::compatible(S.rows(), cls));
  }
}

TEST_CASE("induced Schützenberger maps", "[green]") {
  auto const Z4 = cyclic_group(4), Z2 = cyclic_group(2);
  auto const S  = build_construction(Z4, Z4, {0, 1, 2, 3});
  auto const U  = build_construction(Z2, Z2, {0, 1});
  std::vector<ElementId> f;
  for (ElementId x = 0; x < S.order(); ++x) {
    f.push_back(x < 4 ? x % 2 : x < 8 ? 2 + (x - 4) % 2 : 4);
  }
  auto const phi = std::get<HomMap>(check_hom(f, S, U));
  auto const th  = induced_schutz_map(S, U, phi, {4, 5, 6, 7}, 4);
  CHECK(th.source.order() == 4);
  CHECK(th.target.order() == 2);
  for (std::size_t p = 0; p < 4; ++p) {
    for (std::size_t q = 0; q < 4; ++q) {
      CHECK(th.image[th.source.multiply(p, q)] == th.target.multiply(th.image[p], th.image[q]));
    }
    // The permutation sending x_0 to x_k maps to the one sending x_0 to x_{k mod 2}.
    auto const k = th.source.apply(p, 4) - 4;
    CHECK(th.target.apply(th.image[p], 2) == 2 + k % 2);
  }

  auto const id = induced_schutz_map(S, S, std::get<HomMap>(check_hom({0, 1, 2, 3, 4, 5, 6, 7, 8}, S, S)),
                                     {4, 5, 6, 7}, 5);
  std::set<std::size_t> distinct(id.image.begin(), id.image.end());
  CHECK(distinct.size() == 4);

  auto const to_zero = std::get<HomMap>(check_hom(std::vector<ElementId>(9, 8), S, S));
  auto const trivial = induced_schutz_map(S, S, to_zero, {4, 5, 6, 7}, 4);
  CHECK(trivial.target.order() == 1);
}
