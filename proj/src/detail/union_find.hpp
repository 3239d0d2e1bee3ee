#pragma once

#include <cstddef>
#include <numeric>
#include <utility>
#include <vector>

namespace sepkit::detail {

  // Union-find whose roots are always the least member of their set.
  class UnionFind {
   public:
    explicit UnionFind(std::size_t n) : _parent(n) {
      std::iota(_parent.begin(), _parent.end(), 0);
    }
    std::size_t find(std::size_t x) {
      while (_parent[x] != x) {
        _parent[x] = _parent[_parent[x]];
        x          = _parent[x];
      }
      return x;
    }
    bool unite(std::size_t a, std::size_t b) {
      a = find(a);
      b = find(b);
      if (a == b) {
        return false;
      }
      if (a > b) {
        std::swap(a, b);
      }
      _parent[b] = a;
      return true;
    }
    std::vector<std::size_t> labels() {
      std::vector<std::size_t> out(_parent.size());
      for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = find(i);
      }
      return out;
    }

   private:
    std::vector<std::size_t> _parent;
  };

}  // namespace sepkit::detail
