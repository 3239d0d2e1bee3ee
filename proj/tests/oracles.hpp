#pragma once

// Brute-force reference implementations.  Each one follows the literal
// definition over raw Cayley tables and shares no code with the library, so
// agreement between the two is meaningful.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sepkit/core.hpp"

namespace oracle {

  using sepkit::ElementId;
  using sepkit::Table;
  using Classes = std::vector<std::vector<ElementId>>;

  inline std::optional<std::array<ElementId, 3>> associativity(Table const& t) {
    auto const n = t.size();
    for (ElementId a = 0; a < n; ++a) {
      for (ElementId b = 0; b < n; ++b) {
        for (ElementId c = 0; c < n; ++c) {
          if (t[t[a][b]][c] != t[a][t[b][c]]) {
            return std::array<ElementId, 3>{a, b, c};
          }
        }
      }
    }
    return std::nullopt;
  }

  inline std::set<ElementId> closure(Table const& t, std::set<ElementId> X) {
    for (bool grew = true; grew;) {
      grew = false;
      for (auto a : std::set<ElementId>(X)) {
        for (auto b : std::set<ElementId>(X)) {
          grew |= X.insert(t[a][b]).second;
        }
      }
    }
    return X;
  }

  // xS^1, S^1x and S^1xS^1 as sets.
  inline std::set<ElementId> right_ideal(Table const& t, ElementId x) {
    std::set<ElementId> out{x};
    for (ElementId s = 0; s < t.size(); ++s) {
      out.insert(t[x][s]);
    }
    return out;
  }

  inline std::set<ElementId> left_ideal(Table const& t, ElementId x) {
    std::set<ElementId> out{x};
    for (ElementId s = 0; s < t.size(); ++s) {
      out.insert(t[s][x]);
    }
    return out;
  }

  inline std::set<ElementId> two_sided_ideal(Table const& t, ElementId x) {
    std::set<ElementId> out;
    for (auto y : left_ideal(t, x)) {
      auto r = right_ideal(t, y);
      out.insert(r.begin(), r.end());
    }
    return out;
  }

  // Groups elements by a key; classes ordered by least member.
  template <typename Key>
  Classes partition_by(std::size_t n, std::function<Key(ElementId)> key) {
    std::map<Key, std::size_t> index;
    Classes                    out;
    for (ElementId x = 0; x < n; ++x) {
      auto [it, fresh] = index.emplace(key(x), out.size());
      if (fresh) {
        out.emplace_back();
      }
      out[it->second].push_back(x);
    }
    return out;
  }

  inline Classes r_classes(Table const& t) {
    return partition_by<std::set<ElementId>>(t.size(), [&](ElementId x) { return right_ideal(t, x); });
  }
  inline Classes l_classes(Table const& t) {
    return partition_by<std::set<ElementId>>(t.size(), [&](ElementId x) { return left_ideal(t, x); });
  }
  inline Classes j_classes(Table const& t) {
    return partition_by<std::set<ElementId>>(t.size(), [&](ElementId x) { return two_sided_ideal(t, x); });
  }
  inline Classes h_classes(Table const& t) {
    using Key = std::pair<std::set<ElementId>, std::set<ElementId>>;
    return partition_by<Key>(t.size(), [&](ElementId x) { return Key{right_ideal(t, x), left_ideal(t, x)}; });
  }

  // |Stab(H) / ~| counted as the number of distinct maps h -> hs on H,
  // with s ranging over S and the identity of S^1.
  inline std::size_t schutz_order(Table const& t, std::vector<ElementId> const& H) {
    std::set<std::vector<ElementId>> maps{H};
    std::set<ElementId> const        target(H.begin(), H.end());
    for (ElementId s = 0; s < t.size(); ++s) {
      std::vector<ElementId> img;
      for (auto h : H) {
        img.push_back(t[h][s]);
      }
      if (std::set<ElementId>(img.begin(), img.end()) == target) {
        maps.insert(img);
      }
    }
    return maps.size();
  }

  inline bool group_hclass(Table const& t, std::vector<ElementId> const& H) {
    std::set<ElementId> const in(H.begin(), H.end());
    for (auto a : H) {
      for (auto b : H) {
        if (in.count(t[a][b])) {
          return true;
        }
      }
    }
    return false;
  }

  // Restricted growth strings: labels numbered by least member.
  inline void for_each_partition(std::size_t n, std::function<void(std::vector<std::size_t> const&)> f) {
    std::vector<std::size_t> rgs(n, 0);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t used) {
      if (i == n) {
        f(rgs);
        return;
      }
      for (std::size_t c = 0; c <= used && c < n; ++c) {
        rgs[i] = c;
        rec(i + 1, std::max(used, c + 1));
      }
    };
    if (n == 0) {
      f(rgs);
    } else {
      rec(1, 1);
    }
  }

  inline bool compatible(Table const& t, std::vector<std::size_t> const& cls) {
    auto const n = t.size();
    for (ElementId a = 0; a < n; ++a) {
      for (ElementId b = a + 1; b < n; ++b) {
        if (cls[a] != cls[b]) {
          continue;
        }
        for (ElementId s = 0; s < n; ++s) {
          if (cls[t[a][s]] != cls[t[b][s]] || cls[t[s][a]] != cls[t[s][b]]) {
            return false;
          }
        }
      }
    }
    return true;
  }

  inline std::set<std::vector<std::size_t>> congruences(Table const& t) {
    std::set<std::vector<std::size_t>> out;
    for_each_partition(t.size(), [&](auto const& p) {
      if (compatible(t, p)) {
        out.insert(p);
      }
    });
    return out;
  }

  inline std::size_t index_of(std::vector<std::size_t> const& cls) {
    return cls.empty() ? 0 : *std::max_element(cls.begin(), cls.end()) + 1;
  }

  // Least index of a congruence whose class of x misses T.
  inline std::size_t min_separating_index(Table const& t, ElementId x, std::set<ElementId> const& T) {
    std::size_t best = t.size();
    for (auto const& c : congruences(t)) {
      bool ok = true;
      for (auto y : T) {
        ok &= c[y] != c[x];
      }
      if (ok) {
        best = std::min(best, index_of(c));
      }
    }
    return best;
  }

  inline bool has_square(std::string const& w) {
    for (std::size_t i = 0; i < w.size(); ++i) {
      for (std::size_t l = 1; i + 2 * l <= w.size(); ++l) {
        if (w.compare(i, l, w, i + l, l) == 0) {
          return true;
        }
      }
    }
    return false;
  }

  // Number of square-free words of length len over {a, b, c}, by listing
  // all 3^len words.
  inline std::size_t squarefree_count(std::size_t len) {
    std::size_t total = 1;
    for (std::size_t i = 0; i < len; ++i) {
      total *= 3;
    }
    std::size_t count = 0;
    for (std::size_t code = 0; code < total; ++code) {
      std::string w;
      for (std::size_t c = code, i = 0; i < len; ++i, c /= 3) {
        w.push_back(static_cast<char>('a' + c % 3));
      }
      count += has_square(w) ? 0 : 1;
    }
    return count;
  }

  // Minimal members of an upward-closed set within the box, by comparing
  // every pair of box points.
  inline std::set<std::vector<std::uint32_t>> minimal_points(
      std::function<bool(std::vector<std::uint32_t> const&)> in,
      std::vector<std::uint32_t> const&                      bounds) {
    std::vector<std::vector<std::uint32_t>> members;
    std::vector<std::uint32_t>              p(bounds.size(), 0);
    std::function<void(std::size_t)>        rec = [&](std::size_t i) {
      if (i == bounds.size()) {
        if (in(p)) {
          members.push_back(p);
        }
        return;
      }
      for (std::uint32_t v = 0; v <= bounds[i]; ++v) {
        p[i] = v;
        rec(i + 1);
      }
    };
    rec(0);
    std::set<std::vector<std::uint32_t>> out;
    for (auto const& a : members) {
      bool minimal = true;
      for (auto const& b : members) {
        bool below = a != b;
        for (std::size_t i = 0; i < a.size() && below; ++i) {
          below = b[i] <= a[i];
        }
        minimal &= !below;
      }
      if (minimal) {
        out.insert(a);
      }
    }
    return out;
  }

}  // namespace oracle
