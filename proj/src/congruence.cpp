#include "sepkit/congruence.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "detail/union_find.hpp"

namespace sepkit {

  namespace {
    using detail::UnionFind;

    // Merge the pairs and close under left and right translation.
    Congruence close(FiniteSemigroup const& S, UnionFind& uf, std::vector<ElementPair> queue) {
      while (!queue.empty()) {
        auto [a, b] = queue.back();
        queue.pop_back();
        if (!uf.unite(a, b)) {
          continue;
        }
        for (ElementId c = 0; c < S.order(); ++c) {
          queue.emplace_back(S.product(a, c), S.product(b, c));
          queue.emplace_back(S.product(c, a), S.product(c, b));
        }
      }
      return Congruence(uf.labels());
    }
  }  // namespace

  Congruence::Congruence(std::vector<std::size_t> const& class_of) : _class_of(class_of.size()) {
    std::size_t const        unset = static_cast<std::size_t>(-1);
    std::size_t const        top   = class_of.empty() ? 0 : *std::max_element(class_of.begin(), class_of.end());
    std::vector<std::size_t> relabel(top + 1, unset);
    for (std::size_t x = 0; x < class_of.size(); ++x) {
      auto& r = relabel[class_of[x]];
      if (r == unset) {
        r = _index++;
      }
      _class_of[x] = r;
    }
  }

  Congruence Congruence::equality(std::size_t order) {
    std::vector<std::size_t> v(order);
    std::iota(v.begin(), v.end(), 0);
    return Congruence(v);
  }

  Congruence Congruence::universal(std::size_t order) {
    return Congruence(std::vector<std::size_t>(order, 0));
  }

  std::vector<std::vector<ElementId>> Congruence::classes() const {
    std::vector<std::vector<ElementId>> out(_index);
    for (std::size_t x = 0; x < _class_of.size(); ++x) {
      out[_class_of[x]].push_back(static_cast<ElementId>(x));
    }
    return out;
  }

  bool Congruence::refines(Congruence const& other) const {
    if (other.order() != order()) {
      return false;
    }
    std::vector<std::size_t> target(_index, static_cast<std::size_t>(-1));
    for (std::size_t x = 0; x < _class_of.size(); ++x) {
      auto& t = target[_class_of[x]];
      if (t == static_cast<std::size_t>(-1)) {
        t = other._class_of[x];
      } else if (t != other._class_of[x]) {
        return false;
      }
    }
    return true;
  }

  bool is_compatible(FiniteSemigroup const& S, Congruence const& c) {
    if (c.order() != S.order()) {
      return false;
    }
    // Comparing each element with its class representative suffices.
    std::vector<ElementId> rep(c.index());
    for (ElementId x = S.order(); x-- > 0;) {
      rep[c.class_of(x)] = x;
    }
    for (ElementId a = 0; a < S.order(); ++a) {
      ElementId r = rep[c.class_of(a)];
      for (ElementId s = 0; s < S.order(); ++s) {
        if (!c.related(S.product(a, s), S.product(r, s))
            || !c.related(S.product(s, a), S.product(s, r))) {
          return false;
        }
      }
    }
    return true;
  }

  Congruence principal_congruence(FiniteSemigroup const& S, ElementId a, ElementId b) {
    if (a >= S.order() || b >= S.order()) {
      throw ArgumentError("principal_congruence: element out of range");
    }
    UnionFind uf(S.order());
    return close(S, uf, {{a, b}});
  }

  Congruence congruence_from_pairs(FiniteSemigroup const& S, std::vector<ElementPair> const& pairs) {
    if (pairs.empty()) {
      throw ArgumentError("congruence_from_pairs: need at least one pair");
    }
    for (auto [a, b] : pairs) {
      if (a >= S.order() || b >= S.order()) {
        throw ArgumentError("congruence_from_pairs: element out of range");
      }
    }
    UnionFind uf(S.order());
    return close(S, uf, pairs);
  }

  Congruence join(Congruence const& a, Congruence const& b) {
    if (a.order() != b.order()) {
      throw ArgumentError("join: congruences on different semigroups");
    }
    // The equivalence join of two congruences is again a congruence.
    UnionFind                uf(a.order());
    std::vector<std::size_t> first_a(a.index(), a.order()), first_b(b.index(), b.order());
    for (std::size_t x = 0; x < a.order(); ++x) {
      auto& fa = first_a[a.class_of(static_cast<ElementId>(x))];
      auto& fb = first_b[b.class_of(static_cast<ElementId>(x))];
      if (fa == a.order()) {
        fa = x;
      }
      if (fb == b.order()) {
        fb = x;
      }
      uf.unite(fa, x);
      uf.unite(fb, x);
    }
    return Congruence(uf.labels());
  }

  std::vector<Congruence> all_congruences(FiniteSemigroup const& S) {
    if (S.order() > limits::congruence_cap()) {
      throw ResourceError("all_congruences: order " + std::to_string(S.order())
                          + " exceeds the enumeration cap "
                          + std::to_string(limits::congruence_cap()));
    }
    // Every congruence is a join of principal congruences.
    std::set<Congruence> principals;
    for (ElementId a = 0; a < S.order(); ++a) {
      for (ElementId b = a + 1; b < S.order(); ++b) {
        principals.insert(principal_congruence(S, a, b));
      }
    }
    std::set<Congruence>    found{Congruence::equality(S.order())};
    std::vector<Congruence> frontier{Congruence::equality(S.order())};
    while (!frontier.empty()) {
      std::vector<Congruence> next;
      for (auto const& c : frontier) {
        for (auto const& p : principals) {
          if (p.refines(c)) {
            continue;
          }
          auto j = join(c, p);
          if (found.insert(j).second) {
            next.push_back(std::move(j));
          }
        }
      }
      frontier = std::move(next);
    }
    return {found.begin(), found.end()};
  }

  std::pair<FiniteSemigroup, HomMap> quotient(FiniteSemigroup const& S, Congruence const& c) {
    if (c.order() != S.order()) {
      throw ArgumentError("quotient: congruence belongs to a semigroup of different order");
    }
    std::size_t const      q = c.index();
    std::vector<ElementId> rep(q);
    for (ElementId x = S.order(); x-- > 0;) {
      rep[c.class_of(x)] = x;
    }
    std::vector<ElementId> flat(q * q);
    for (std::size_t a = 0; a < q; ++a) {
      for (std::size_t b = 0; b < q; ++b) {
        flat[a * q + b] = static_cast<ElementId>(c.class_of(S.product(rep[a], rep[b])));
      }
    }
    auto                   Q = FiniteSemigroup::trusted(q, std::move(flat));
    std::vector<ElementId> proj(S.order());
    for (ElementId x = 0; x < S.order(); ++x) {
      proj[x] = static_cast<ElementId>(c.class_of(x));
    }
    if (S.has_labels()) {
      std::vector<std::string> labels;
      for (auto r : rep) {
        labels.push_back("[" + S.label(r) + "]");
      }
      Q = Q.with_labels(std::move(labels));
    }
    return {std::move(Q), HomMap::trusted(std::move(proj), q)};
  }

  bool separates(Congruence const& c, ElementId x, Subset const& T) {
    if (T.contains(x)) {
      throw ArgumentError("separates: x belongs to T");
    }
    return std::none_of(T.members().begin(), T.members().end(),
                        [&](ElementId t) { return c.related(x, t); });
  }

  SeparationCertificate min_index_separating(FiniteSemigroup const& S, ElementId x, Subset const& T) {
    if (T.contains(x)) {
      throw ArgumentError("min_index_separating: x belongs to T");
    }
    for (auto const& c : all_congruences(S)) {
      if (separates(c, x, T)) {
        return SeparationCertificate{c, x, T.sorted()};
      }
    }
    // The equality congruence always separates in a finite semigroup.
    throw InternalError("no separating congruence found, not even equality");
  }

  Congruence rees_congruence(FiniteSemigroup const& S, Subset const& I) {
    if (!is_ideal(S, I)) {
      throw ArgumentError("rees_congruence: the subset is not an ideal");
    }
    std::vector<std::size_t> v(S.order());
    std::size_t const        least = I.sorted().front();
    for (ElementId x = 0; x < S.order(); ++x) {
      v[x] = I.contains(x) ? least : x;
    }
    return Congruence(v);
  }

}  // namespace sepkit
