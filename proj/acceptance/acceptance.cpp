// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "../tests/oracles.hpp"
#include "sepkit/abelian.hpp"
#include "sepkit/commutative.hpp"
#include "sepkit/congruence.hpp"
#include "sepkit/gallery.hpp"
#include "sepkit/green.hpp"
#include "sepkit/random.hpp"

using namespace sepkit;

namespace {

  struct Outcome {
    bool        pass = true;
    std::string detail;
    void        fail(std::string const& why) {
      if (pass) {
        detail = why;
      }
      pass = false;
    }
  };

  // Element of the symbolic semigroup <a> u {b_j} u {0}: kind 'a', 'b' or '0'.
  struct Eg62 {
    char          kind = '0';
    std::uint64_t k    = 0;
    bool operator==(Eg62 const&) const = default;
  };

  Eg62 eg62_parse(std::string const& t) {
    if (t == "0") {
      return {'0', 0};
    }
    if (t == "a") {
      return {'a', 1};
    }
    if (t.rfind("a^", 0) == 0) {
      return {'a', std::stoull(t.substr(2))};
    }
    return {'b', std::stoull(t.substr(2))};
  }

  Eg62 eg62_mul(Eg62 x, Eg62 y) {
    if (x.kind == '0' || y.kind == '0' || (x.kind == 'b' && y.kind == 'b')) {
      return {'0', 0};
    }
    if (x.kind == 'a' && y.kind == 'a') {
      return {'a', x.k + y.k};
    }
    auto const i = x.kind == 'a' ? x.k : y.k;
    auto const j = x.kind == 'b' ? x.k : y.k;
    return j > i ? Eg62{'b', j - i} : Eg62{'0', 0};
  }

  Eg62 eg62_eval(std::vector<std::string> const& fs) {
    Eg62 acc = eg62_parse(fs.front());
    for (std::size_t k = 1; k < fs.size(); ++k) {
      acc = eg62_mul(acc, eg62_parse(fs[k]));
    }
    return acc;
  }

  std::string sqfree_eval(std::vector<std::string> const& fs) {
    std::string w;
    for (auto const& f : fs) {
      if (f == "0") {
        return "0";
      }
      w += f;
    }
    return oracle::has_square(w) ? "0" : w;
  }

  // Independent re-check of a chain: equal steps by our own evaluators,
  // congruent steps change exactly one factor between the colliding pair,
  // and consecutive steps share their middle term.
  bool recheck(WitnessChain const& c) {
    if (c.steps.empty()) {
      return false;
    }
    bool const sq = c.kind == WitnessChain::Kind::squarefree;
    auto const eq = [&](std::vector<std::string> const& l, std::vector<std::string> const& r) {
      return sq ? sqfree_eval(l) == sqfree_eval(r) : eg62_eval(l) == eg62_eval(r);
    };
    for (std::size_t k = 0; k < c.steps.size(); ++k) {
      auto const& s = c.steps[k];
      if (s.congruent) {
        if (s.lhs.size() != s.rhs.size()) {
          return false;
        }
        std::size_t diffs = 0;
        for (std::size_t f = 0; f < s.lhs.size(); ++f) {
          if (s.lhs[f] != s.rhs[f]) {
            ++diffs;
            std::set<std::string> const pair{s.lhs[f], s.rhs[f]};
            if (pair != std::set<std::string>{c.left, c.right}) {
              return false;
            }
          }
        }
        if (diffs != 1) {
          return false;
        }
      } else if (!eq(s.lhs, s.rhs)) {
        return false;
      }
      if (k > 0 && !eq(c.steps[k - 1].rhs, s.lhs)) {
        return false;
      }
    }
    // The chain must identify two distinct elements.
    return !eq(c.steps.front().lhs, c.steps.back().rhs);
  }

  std::optional<std::pair<std::size_t, std::size_t>> first_collision(std::vector<long long> const& colors) {
    for (std::size_t i = 0; i < colors.size(); ++i) {
      for (std::size_t j = i + 1; j < colors.size(); ++j) {
        if (colors[i] == colors[j]) {
          return std::pair{i + 1, j + 1};
        }
      }
    }
    return std::nullopt;
  }

  Outcome criterion1() {
    Outcome                      o;
    std::vector<FiniteSemigroup> all;
    for (auto const& inst : gallery_instances()) {
      all.push_back(inst.semigroup);
    }
    std::mt19937_64 rng(1);
    for (int i = 0; i < 500; ++i) {
      all.push_back(random_transformation_semigroup(rng, 8));
    }
    std::size_t classes = 0;
    for (auto const& S : all) {
      for (auto const& H : oracle::h_classes(S.rows())) {
        ++classes;
        auto const G = schutzenberger_group(S, H);
        if (G.order() != H.size() || oracle::schutz_order(S.rows(), H) != H.size()) {
          o.fail("order mismatch on an H-class of size " + std::to_string(H.size()));
        }
        for (auto h : H) {
          std::set<ElementId> images;
          for (std::size_t p = 0; p < G.order(); ++p) {
            images.insert(G.apply(p, h));
          }
          if (images != std::set<ElementId>(H.begin(), H.end()) || !G.acts_regularly()) {
            o.fail("action is not regular");
          }
        }
      }
    }
    o.detail = o.pass ? std::to_string(all.size()) + " semigroups, " + std::to_string(classes) + " H-classes"
                      : o.detail;
    return o;
  }

  Outcome criterion2() {
    Outcome o;
    struct Case {
      std::size_t t, g;
    };
    for (auto [t, g] : {Case{3, 3}, Case{4, 2}, Case{2, 1}}) {
      std::vector<ElementId> phi;
      for (ElementId a = 0; a < t; ++a) {
        phi.push_back(static_cast<ElementId>(a % g));
      }
      auto const S = build_construction(cyclic_group(t), cyclic_group(g), phi);
      std::vector<ElementId> X;
      for (std::size_t k = 0; k < g; ++k) {
        X.push_back(static_cast<ElementId>(t + k));
      }
      auto const hs = oracle::h_classes(S.rows());
      if (oracle::associativity(S.rows())) {
        o.fail("not associative");
      }
      if (std::find(hs.begin(), hs.end(), X) == hs.end() || oracle::group_hclass(S.rows(), X)) {
        o.fail("X_G is not a non-group H-class");
      }
      if (schutzenberger_group(S, X).order() != g || oracle::schutz_order(S.rows(), X) != g) {
        o.fail("Schutzenberger group order differs from |G|");
      }
    }
    o.detail = o.pass ? "(Z/3,Z/3) (Z/4,Z/2) (Z/2,1)" : o.detail;
    return o;
  }

  Outcome criterion3() {
    Outcome    o;
    auto const z = kl_parameters(SymbolicAmbient::integers, {0}, {{1}, {-1}}, 8);
    auto const n = kl_parameters(SymbolicAmbient::naturals, {1}, {{1}}, 8);
    if (z.k_s != 2 || z.m_s != 1 || z.strongly_separable_at_s) {
      o.fail("Z: k_s=" + std::to_string(z.k_s) + " m_s=" + std::to_string(z.m_s));
    }
    if (n.k_s != 0 || n.m_s != 0 || !n.strongly_separable_at_s) {
      o.fail("N: k_s=" + std::to_string(n.k_s) + " m_s=" + std::to_string(n.m_s));
    }
    o.detail = o.pass ? "Z: k_s=2 m_s=1 not strongly separable; N: k_s=m_s=0 strongly separable" : o.detail;
    return o;
  }

  Outcome criterion4() {
    Outcome         o;
    std::mt19937_64 rng(4);
    std::size_t     elements = 0, cross = 0;
    for (int i = 0; i < 20; ++i) {
      auto const S = random_commutative_semigroup(rng, 30);
      if (S.order() > 30) {
        o.fail("order above 30");
      }
      std::set<std::vector<std::size_t>> all;
      if (S.order() <= 7) {
        all = oracle::congruences(S.rows());
      }
      for (ElementId h = 0; h < S.order(); ++h) {
        ++elements;
        auto const c = separating_congruence(S, h);
        if (!oracle::compatible(S.rows(), c.congruence.classes_vector())) {
          o.fail("not a congruence");
        }
        for (ElementId y = 0; y < S.order(); ++y) {
          if (y != h && c.congruence.related(y, h)) {
            o.fail("[h] is not a singleton");
          }
        }
        if (S.order() <= 7) {
          ++cross;
          std::set<ElementId> rest;
          for (ElementId y = 0; y < S.order(); ++y) {
            if (y != h) {
              rest.insert(y);
            }
          }
          if (!all.count(c.congruence.classes_vector())
              || oracle::min_separating_index(S.rows(), h, rest) > c.congruence.index()) {
            o.fail("disagrees with congruence enumeration");
          }
        }
      }
    }
    o.detail = o.pass ? std::to_string(elements) + " elements, " + std::to_string(cross) + " cross-checked" : o.detail;
    return o;
  }

  Outcome criterion5() {
    Outcome         o;
    std::mt19937_64 rng(5);
    std::size_t     total = 0;
    for (int i = 0; i < 200; ++i) {
      auto const S = random_transformation_semigroup(rng, 7);
      std::set<std::vector<std::size_t>> got;
      for (auto const& c : all_congruences(S)) {
        got.insert(c.classes_vector());
      }
      total += got.size();
      if (got != oracle::congruences(S.rows())) {
        o.fail("mismatch on instance " + std::to_string(i));
      }
    }
    o.detail = o.pass ? "200 instances, " + std::to_string(total) + " congruences" : o.detail;
    return o;
  }

  Outcome criterion6() {
    Outcome     o;
    std::string orders;
    std::size_t expected = 1;
    for (std::size_t n = 1; n <= 6; ++n) {
      expected += oracle::squarefree_count(n);
      auto const got = squarefree_semigroup(n).order();
      orders += (n > 1 ? " " : "") + std::to_string(got);
      if (got != expected) {
        o.fail("n=" + std::to_string(n) + ": " + std::to_string(got) + " != " + std::to_string(expected));
      }
    }
    if (squarefree_semigroup(1).order() != 4 || squarefree_semigroup(2).order() != 10
        || squarefree_semigroup(3).order() != 22) {
      o.fail("reference values 4, 10, 22 not met");
    }
    o.detail = o.pass ? "orders " + orders : o.detail;
    return o;
  }

  Outcome criterion7() {
    Outcome         o;
    std::mt19937_64 rng(7);
    std::size_t     chains = 0, injective = 0;
    for (int trial = 0; trial < 1200; ++trial) {
      std::size_t const      N = 2 + rng() % 11;
      std::size_t const      k = 1 + rng() % (N + 2);
      std::vector<long long> colors(N);
      for (auto& c : colors) {
        c = static_cast<long long>(rng() % k);
      }
      auto const expect = first_collision(colors);
      for (auto const& chain : {replay_squarefree_collapse(colors), replay_eg62(colors)}) {
        if (!expect) {
          ++injective;
          if (chain) {
            o.fail("chain for an injective colouring");
          }
          continue;
        }
        ++chains;
        if (!chain || chain->i != expect->first || chain->j != expect->second) {
          o.fail("missing chain or wrong collision");
        } else if (!verify_chain(*chain) || !recheck(*chain)) {
          o.fail("chain does not re-verify");
        }
      }
    }
    o.detail = o.pass ? std::to_string(chains) + " chains verified, " + std::to_string(injective) + " NoCollision"
                      : o.detail;
    return o;
  }

  Outcome criterion8() {
    Outcome    o;
    auto const bits = [](AbelianVerdict const& v) {
      return std::array<bool, 4>{v.residually_finite, v.weakly, v.strongly, v.completely};
    };
    using B = std::array<bool, 4>;
    std::vector<std::pair<std::string, B>> const table{
        {"sum Z", {true, false, false, false}},
        {"prod Z/2*omega", {true, true, true, false}},
        {"sum fam2", {true, true, false, false}},
        {"sum Z/6", {true, true, true, true}},
    };
    for (auto const& [text, want] : table) {
      if (bits(classify(parse_abelian(text))) != want) {
        o.fail("wrong verdict for " + text);
      }
    }
    std::mt19937_64                 rng(8);
    std::vector<std::string> const  mults{"", "*1", "*2", "*5", "*omega"};
    std::vector<std::string> const  fams{"fam2", "fam3", "fam5", "fam7"};
    for (int trial = 0; trial < 10000; ++trial) {
      std::string text = rng() % 2 ? "sum" : "prod";
      for (std::size_t e = 1 + rng() % 4; e > 0; --e) {
        switch (rng() % 3) {
          case 0:
            text += " Z";
            break;
          case 1:
            text += " Z/" + std::to_string(2 + rng() % 40);
            break;
          default:
            text += " " + fams[rng() % fams.size()];
        }
        text += mults[rng() % mults.size()];
      }
      auto const v = classify(parse_abelian(text));
      if ((v.completely && !v.strongly) || (v.strongly && !v.weakly) || (v.weakly && !v.residually_finite)) {
        o.fail("implication chain broken for " + text);
      }
    }
    o.detail = o.pass ? "table matches, chain holds on 10000 descriptors" : o.detail;
    return o;
  }

  Outcome criterion9() {
    Outcome o;
    struct Case {
      std::vector<NxZ> T;
      NxZ              x;
    };
    std::vector<Case> const cases{
        {{{1, 1}}, {2, 0}},
        {{{1, 0}}, {1, 1}},
        {{{1, 1}, {1, -1}}, {3, 2}},
        {{{2, 1}, {3, -2}}, {5, 0}},
        {{{1, 3}}, {4, 1}},
    };
    for (auto const& [T, x] : cases) {
      auto const sep = nxz_separator(T, x);
      // Members of <T> with first coordinate <= n, by our own closure.
      std::set<NxZ> members(T.begin(), T.end());
      for (bool grew = true; grew;) {
        grew = false;
        for (auto const& p : std::set<NxZ>(members)) {
          for (auto const& t : T) {
            NxZ const q{p.first + t.first, p.second + t.second};
            if (q.first <= x.first) {
              grew |= members.insert(q).second;
            }
          }
        }
      }
      std::erase_if(members, [&](NxZ const& p) { return p.first > x.first; });
      if (!sep.certified) {
        o.fail("separator not certified");
      }
      for (auto const& p : members) {
        if (sep.image(p) == sep.image(x)) {
          o.fail("member shares the image of x");
        }
      }
      for (std::int64_t a = 1; a <= 6; ++a) {
        for (std::int64_t b = -5; b <= 5; ++b) {
          for (std::int64_t c = 1; c <= 6; ++c) {
            for (std::int64_t d = -5; d <= 5; ++d) {
              if (sep.target.product(sep.image({a, b}), sep.image({c, d})) != sep.image({a + c, b + d})) {
                o.fail("separator is not a homomorphism");
              }
            }
          }
        }
      }
    }
    auto const Z4 = cyclic_group(4);
    auto const k  = min_index_separating(Z4, 2, Subset(4, {0})).congruence.index();
    if (k != 4 || oracle::min_separating_index(Z4.rows(), 2, {0}) != 4) {
      o.fail("min_index_separating(Z/4, 2, {0}) = " + std::to_string(k));
    }
    o.detail = o.pass ? std::to_string(cases.size()) + " instances validated; Z/4 index 4" : o.detail;
    return o;
  }

  Outcome criterion10() {
    Outcome                               o;
    auto const                            Z2 = cyclic_group(2);
    std::vector<std::optional<ElementId>> const entries{std::nullopt, ElementId{0}, ElementId{1}};
    std::size_t                           patterns = 0;
    for (std::size_t code = 0; code < 81; ++code) {
      SandwichMatrix P(2, std::vector<std::optional<ElementId>>(2));
      for (std::size_t c = code, k = 0; k < 4; ++k, c /= 3) {
        P[k / 2][k % 2] = entries[c % 3];
      }
      bool const zero_line = (!P[0][0] && !P[0][1]) || (!P[1][0] && !P[1][1]) || (!P[0][0] && !P[1][0])
                             || (!P[0][1] && !P[1][1]);
      if (zero_line) {
        continue;
      }
      ++patterns;
      ReesMatrixSpec const spec{Z2, 2, 2, P};
      auto const           R = build_rees_matrix(spec);
      for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t l = 0; l < 2; ++l) {
          std::vector<ElementId> H{rees_index(spec, i, 0, l), rees_index(spec, i, 1, l)};
          std::sort(H.begin(), H.end());
          auto const hs = oracle::h_classes(R.rows());
          if (std::find(hs.begin(), hs.end(), H) == hs.end()) {
            o.fail("{i} x G x {l} is not an H-class");
          }
          if (oracle::group_hclass(R.rows(), H) != P[l][i].has_value()) {
            o.fail("group flag disagrees with the sandwich entry");
          }
        }
      }
    }
    o.detail = o.pass ? std::to_string(patterns) + " sandwich patterns" : o.detail;
    return o;
  }

}  // namespace

int main() {
  struct Criterion {
    int                      id;
    char const*              name;
    double                   seconds;  // time budget
    std::function<Outcome()> run;
  };
  std::vector<Criterion> const criteria{
      {1, "Schutzenberger groups: |G(H)| = |H|, regular action", 10, criterion1},
      {2, "S(T, G, phi) constructions", 1, criterion2},
      {3, "KL parameters for Z and N", 1, criterion3},
      {4, "separating congruences on random commutative semigroups", 60, criterion4},
      {5, "congruence enumeration vs partition filtering", 60, criterion5},
      {6, "square-free truncation orders", 10, criterion6},
      {7, "witness replays", 10, criterion7},
      {8, "abelian classifier", 10, criterion8},
      {9, "N x Z separator and Z/4 separation index", 10, criterion9},
      {10, "Rees matrix group H-classes", 10, criterion10},
  };
  int failures = 0;
  for (auto const& c : criteria) {
    auto const start = std::chrono::steady_clock::now();
    Outcome    o;
    try {
      o = c.run();
    } catch (std::exception const& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    double const secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.pass && secs > c.seconds) {
      o.fail("took longer than the time budget");
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2fs", secs);
    std::cout << "criterion " << c.id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << c.name << "  [" << o.detail
              << ", " << buf << "]\n";
    failures += o.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
