#include "sepkit/green.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

#include <boost/dynamic_bitset.hpp>

namespace sepkit {

  namespace {
    using Bits = boost::dynamic_bitset<>;

    // Number elements by the first occurrence of their key.
    template <typename Key>
    void partition_by(std::vector<Key> const& keys, ClassList& classes, std::vector<std::size_t>& of) {
      std::map<Key, std::size_t> index;
      of.assign(keys.size(), 0);
      classes.clear();
      for (std::size_t x = 0; x < keys.size(); ++x) {
        auto [it, inserted] = index.emplace(keys[x], classes.size());
        if (inserted) {
          classes.emplace_back();
        }
        of[x] = it->second;
        classes[it->second].push_back(static_cast<ElementId>(x));
      }
    }

    std::vector<ElementId> sorted_copy(std::vector<ElementId> H) {
      std::sort(H.begin(), H.end());
      H.erase(std::unique(H.begin(), H.end()), H.end());
      return H;
    }

    std::size_t position_in(std::vector<ElementId> const& sorted, ElementId x) {
      auto it = std::lower_bound(sorted.begin(), sorted.end(), x);
      if (it == sorted.end() || *it != x) {
        return sorted.size();
      }
      return static_cast<std::size_t>(it - sorted.begin());
    }

    // Right translation by s (an element of S^1) restricted to H, as a
    // permutation of positions; nullopt if it does not map H onto H.
    std::optional<Perm> translation(FiniteSemigroup const&        S1,
                                    std::vector<ElementId> const& H,
                                    ElementId                     s) {
      Perm              p(H.size());
      std::vector<bool> hit(H.size(), false);
      for (std::size_t i = 0; i < H.size(); ++i) {
        auto pos = position_in(H, S1.product(H[i], s));
        if (pos == H.size() || hit[pos]) {
          return std::nullopt;
        }
        hit[pos] = true;
        p[i]     = static_cast<std::uint32_t>(pos);
      }
      return p;
    }

    Perm compose(Perm const& p, Perm const& q) {
      Perm r(p.size());
      for (std::size_t i = 0; i < p.size(); ++i) {
        r[i] = q[p[i]];
      }
      return r;
    }
  }  // namespace

  std::size_t GreenStructure::hclass_index(std::vector<ElementId> const& H) const {
    auto sorted = sorted_copy(H);
    if (sorted.empty() || sorted.back() >= h_of.size()) {
      throw ArgumentError("not an H-class: empty or out of range");
    }
    std::size_t idx = h_of[sorted.front()];
    if (h_classes[idx] != sorted) {
      throw ArgumentError("the given set is not an H-class");
    }
    return idx;
  }

  GreenStructure green_relations(FiniteSemigroup const& S) {
    std::size_t const n = S.order();
    std::vector<Bits> right(n, Bits(n)), left(n, Bits(n)), twosided(n, Bits(n));
    for (ElementId x = 0; x < n; ++x) {
      right[x].set(x);
      left[x].set(x);
      for (ElementId s = 0; s < n; ++s) {
        right[x].set(S.product(x, s));
        left[x].set(S.product(s, x));
      }
    }
    for (ElementId x = 0; x < n; ++x) {
      // S^1 x S^1 is the union of the right ideals of the members of S^1 x.
      for (auto y = left[x].find_first(); y != Bits::npos; y = left[x].find_next(y)) {
        twosided[x] |= right[y];
      }
    }
    GreenStructure G;
    G.ambient = &S;
    partition_by(right, G.r_classes, G.r_of);
    partition_by(left, G.l_classes, G.l_of);
    partition_by(twosided, G.j_classes, G.j_of);
    std::vector<std::pair<std::size_t, std::size_t>> lr(n);
    for (std::size_t x = 0; x < n; ++x) {
      lr[x] = {G.l_of[x], G.r_of[x]};
    }
    partition_by(lr, G.h_classes, G.h_of);
    G.group_flags.assign(G.h_classes.size(), false);
    for (std::size_t c = 0; c < G.h_classes.size(); ++c) {
      auto const& H = G.h_classes[c];
      for (std::size_t i = 0; i < H.size() && !G.group_flags[c]; ++i) {
        for (std::size_t j = 0; j < H.size(); ++j) {
          if (G.h_of[S.product(H[i], H[j])] == c) {
            G.group_flags[c] = true;
            break;
          }
        }
      }
    }
    return G;
  }

  bool is_group_hclass(FiniteSemigroup const& S, std::vector<ElementId> const& H) {
    auto G = green_relations(S);
    return G.group_flags[G.hclass_index(H)];
  }

  std::optional<std::size_t> hclass_power_witness(FiniteSemigroup const&        S,
                                                  std::vector<ElementId> const& H,
                                                  std::size_t                   nmax) {
    if (nmax < 2) {
      throw ArgumentError("hclass_power_witness: nmax must be at least 2");
    }
    auto              G   = green_relations(S);
    auto const        idx = G.hclass_index(H);
    auto const&       cls = G.h_classes[idx];
    std::vector<bool> power(S.order(), false);  // H^k as a set
    for (auto h : cls) {
      power[h] = true;
    }
    for (std::size_t k = 2; k <= nmax; ++k) {
      std::vector<bool> next(S.order(), false);
      for (ElementId x = 0; x < S.order(); ++x) {
        if (power[x]) {
          for (auto h : cls) {
            next[S.product(x, h)] = true;
          }
        }
      }
      power.swap(next);
      for (auto h : cls) {
        if (power[h]) {
          if (!G.group_flags[idx]) {
            throw InternalError("H meets a power of itself but not H^2");
          }
          return k;
        }
      }
    }
    return std::nullopt;
  }

  RightStabilizer right_stabilizer(FiniteSemigroup const& S, std::vector<ElementId> const& H) {
    auto const G      = green_relations(S);
    auto const sorted = G.h_classes[G.hclass_index(H)];
    auto       S1     = adjoin_identity(S);
    std::vector<ElementId> members;
    for (ElementId s = 0; s < S1.order(); ++s) {
      if (translation(S1, sorted, s)) {
        members.push_back(s);
      }
    }
    Subset stab(S1.order(), members);
    if (!stab.contains(*S1.identity())) {
      throw InternalError("right stabiliser does not contain the identity");
    }
    for (auto a : members) {
      for (auto b : members) {
        if (!stab.contains(S1.product(a, b))) {
          throw InternalError("right stabiliser is not closed under multiplication");
        }
      }
    }
    return RightStabilizer{std::move(S1), std::move(stab)};
  }

  ////////////////////////////////////////////////////////////////////////
  // SchutzGroup
  ////////////////////////////////////////////////////////////////////////

  SchutzGroup::SchutzGroup(std::vector<ElementId> hclass, std::map<Perm, ElementId> perms)
      : _hclass(std::move(hclass)) {
    for (auto const& [p, s] : perms) {
      _index.emplace(p, _perms.size());
      _perms.push_back(p);
      _realizers.push_back(s);
    }
    if (_perms.empty()) {
      throw InternalError("Schützenberger group with no elements");
    }
    Perm id(_hclass.size());
    std::iota(id.begin(), id.end(), 0);
    if (_perms.front() != id) {
      throw InternalError("Schützenberger group does not contain the identity");
    }
  }

  std::optional<std::size_t> SchutzGroup::index_of(Perm const& p) const {
    auto it = _index.find(p);
    if (it == _index.end()) {
      return std::nullopt;
    }
    return it->second;
  }

  std::size_t SchutzGroup::multiply(std::size_t i, std::size_t j) const {
    auto idx = index_of(compose(_perms[i], _perms[j]));
    if (!idx) {
      throw InternalError("Schützenberger group is not closed under composition");
    }
    return *idx;
  }

  std::size_t SchutzGroup::inverse(std::size_t i) const {
    Perm inv(_perms[i].size());
    for (std::size_t k = 0; k < inv.size(); ++k) {
      inv[_perms[i][k]] = static_cast<std::uint32_t>(k);
    }
    auto idx = index_of(inv);
    if (!idx) {
      throw InternalError("Schützenberger group is not closed under inverses");
    }
    return *idx;
  }

  ElementId SchutzGroup::apply(std::size_t i, ElementId h) const {
    auto pos = position_in(_hclass, h);
    if (pos == _hclass.size()) {
      throw ArgumentError("apply: element is not in the H-class");
    }
    return _hclass[_perms[i][pos]];
  }

  std::size_t SchutzGroup::element_order(std::size_t i) const {
    std::size_t k = 1, cur = i;
    while (cur != identity_index()) {
      cur = multiply(cur, i);
      ++k;
    }
    return k;
  }

  bool SchutzGroup::is_abelian() const {
    for (std::size_t i = 0; i < order(); ++i) {
      for (std::size_t j = i + 1; j < order(); ++j) {
        if (multiply(i, j) != multiply(j, i)) {
          return false;
        }
      }
    }
    return true;
  }

  bool SchutzGroup::is_cyclic() const {
    for (std::size_t i = 0; i < order(); ++i) {
      if (element_order(i) == order()) {
        return true;
      }
    }
    return false;
  }

  bool SchutzGroup::acts_regularly() const {
    std::size_t const k = _hclass.size();
    for (std::size_t a = 0; a < k; ++a) {
      std::vector<std::size_t> hits(k, 0);
      for (auto const& p : _perms) {
        ++hits[p[a]];
      }
      if (std::any_of(hits.begin(), hits.end(), [](std::size_t c) { return c != 1; })) {
        return false;
      }
    }
    return true;
  }

  std::string SchutzGroup::cycle_notation(std::size_t i, FiniteSemigroup const& S) const {
    auto const&       p = _perms[i];
    std::vector<bool> done(p.size(), false);
    std::string       out;
    for (std::size_t start = 0; start < p.size(); ++start) {
      if (done[start] || p[start] == start) {
        continue;
      }
      out += '(';
      std::size_t cur = start;
      bool        first = true;
      while (!done[cur]) {
        done[cur] = true;
        out += (first ? "" : " ") + S.label(_hclass[cur]);
        first = false;
        cur   = p[cur];
      }
      out += ')';
    }
    return out.empty() ? "()" : out;
  }

  SchutzGroup schutzenberger_group(FiniteSemigroup const& S, std::vector<ElementId> const& H) {
    auto const G      = green_relations(S);
    auto const sorted = G.h_classes[G.hclass_index(H)];
    auto const S1     = adjoin_identity(S);
    std::map<Perm, ElementId> perms;
    for (ElementId s = 0; s < S1.order(); ++s) {
      // Green's lemma: if hs lands in H for one h then s permutes H.
      auto pos = position_in(sorted, S1.product(sorted.front(), s));
      if (pos == sorted.size()) {
        continue;
      }
      auto p = translation(S1, sorted, s);
      if (!p) {
        throw InternalError("right translation by " + std::to_string(s)
                            + " sends one member of H into H but does not permute H");
      }
      perms.emplace(std::move(*p), s);  // keeps the least realizer
    }
    SchutzGroup group(sorted, std::move(perms));
    if (group.order() != sorted.size()) {
      throw InternalError("|Γ(H)| = " + std::to_string(group.order()) + " but |H| = "
                          + std::to_string(sorted.size()));
    }
    if (!group.acts_regularly()) {
      throw InternalError("Schützenberger group does not act regularly");
    }
    return group;
  }

  HClassOrder hclass_order(FiniteSemigroup const& S) {
    if (!S.is_commutative()) {
      throw ArgumentError("hclass_order: the H-class order is only defined for commutative semigroups");
    }
    auto const        G = green_relations(S);
    std::size_t const n = S.order(), k = G.h_classes.size();
    std::vector<Bits> ideal(n, Bits(n));
    for (ElementId x = 0; x < n; ++x) {
      ideal[x].set(x);
      for (ElementId s = 0; s < n; ++s) {
        ideal[x].set(S.product(x, s));
      }
    }
    HClassOrder order;
    order.leq.assign(k, std::vector<bool>(k, false));
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = 0; b < k; ++b) {
        order.leq[a][b] = ideal[G.h_classes[a].front()].is_subset_of(ideal[G.h_classes[b].front()]);
      }
    }
    for (std::size_t a = 0; a < k; ++a) {
      bool below_all = true;
      for (std::size_t b = 0; b < k && below_all; ++b) {
        below_all = order.leq[a][b];
      }
      if (below_all) {
        order.minimum = a;
        break;
      }
    }
    return order;
  }

  InducedSchutzMap induced_schutz_map(FiniteSemigroup const&        S,
                                      FiniteSemigroup const&        U,
                                      HomMap const&                 phi,
                                      std::vector<ElementId> const& H,
                                      ElementId                     h) {
    if (phi.source_order() != S.order() || phi.target_order() != U.order()) {
      throw ArgumentError("induced_schutz_map: map does not go from S to U");
    }
    auto const GS = green_relations(S);
    auto const hc = GS.h_classes[GS.hclass_index(H)];
    if (!std::binary_search(hc.begin(), hc.end(), h)) {
      throw ArgumentError("induced_schutz_map: h is not in H");
    }
    auto const GU     = green_relations(U);
    auto const target = GU.h_classes[GU.h_of[phi(h)]];

    auto source_group = schutzenberger_group(S, hc);
    auto target_group = schutzenberger_group(U, target);

    auto const S1 = adjoin_identity(S);
    auto const U1 = adjoin_identity(U);
    // phi extended to S^1 -> U^1.
    auto lift = [&](ElementId v) -> ElementId {
      return v < S.order() ? phi(v) : *U1.identity();
    };

    std::vector<std::optional<std::size_t>> image(source_group.order());
    for (ElementId v = 0; v < S1.order(); ++v) {
      auto src = translation(S1, hc, v);
      if (!src) {
        continue;
      }
      auto const src_idx = *source_group.index_of(*src);
      auto       dst     = translation(U1, target, lift(v));
      if (!dst) {
        throw InternalError("φ(" + std::to_string(v) + ") is not in the stabiliser of H_{φ(h)}");
      }
      auto dst_idx = target_group.index_of(*dst);
      if (!dst_idx) {
        throw InternalError("image permutation is missing from the target group");
      }
      if (image[src_idx] && *image[src_idx] != *dst_idx) {
        throw InternalError("θ is not well defined: σ-equivalent realizers disagree");
      }
      image[src_idx] = *dst_idx;
    }
    InducedSchutzMap result{std::move(source_group), std::move(target_group), {}};
    for (auto const& im : image) {
      result.image.push_back(im.value());
    }
    for (std::size_t p = 0; p < result.source.order(); ++p) {
      for (std::size_t q = 0; q < result.source.order(); ++q) {
        if (result.image[result.source.multiply(p, q)]
            != result.target.multiply(result.image[p], result.image[q])) {
          throw InternalError("θ is not multiplicative");
        }
      }
    }
    return result;
  }

}  // namespace sepkit
