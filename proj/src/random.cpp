#include "sepkit/random.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <vector>

namespace sepkit {

  namespace {
    using Transformation = std::vector<std::uint8_t>;

    std::string show(Transformation const& t) {
      std::string out = "[";
      for (std::size_t i = 0; i < t.size(); ++i) {
        out += (i ? "," : "") + std::to_string(t[i]);
      }
      return out + "]";
    }

    // Closure of the generators under composition, or nullopt past cap.
    std::optional<FiniteSemigroup> transformation_closure(std::vector<Transformation> const& gens,
                                                          std::size_t                        cap) {
      auto compose = [](Transformation const& x, Transformation const& y) {
        Transformation z(x.size());
        for (std::size_t p = 0; p < x.size(); ++p) {
          z[p] = y[x[p]];
        }
        return z;
      };
      std::vector<Transformation>                elts;
      std::map<Transformation, ElementId>        index;
      std::vector<ElementId>                     gen_ids;
      auto add = [&](Transformation const& t) {
        auto [it, fresh] = index.emplace(t, static_cast<ElementId>(elts.size()));
        if (fresh) {
          elts.push_back(t);
        }
        return it->second;
      };
      for (auto const& g : gens) {
        gen_ids.push_back(add(g));
      }
      for (std::size_t k = 0; k < elts.size(); ++k) {
        if (elts.size() > cap) {
          return std::nullopt;
        }
        for (auto const& g : gens) {
          add(compose(elts[k], g));
        }
      }
      if (elts.size() > cap) {
        return std::nullopt;
      }
      std::size_t const      n = elts.size();
      std::vector<ElementId> flat(n * n);
      std::vector<std::string> labels;
      for (std::size_t a = 0; a < n; ++a) {
        labels.push_back(show(elts[a]));
        for (std::size_t b = 0; b < n; ++b) {
          flat[a * n + b] = index.at(compose(elts[a], elts[b]));
        }
      }
      std::sort(gen_ids.begin(), gen_ids.end());
      gen_ids.erase(std::unique(gen_ids.begin(), gen_ids.end()), gen_ids.end());
      return FiniteSemigroup::trusted(n, std::move(flat)).with_labels(std::move(labels)).with_generators(gen_ids);
    }

    std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
      return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
    }
  }  // namespace

  FiniteSemigroup random_transformation_semigroup(std::mt19937_64& rng,
                                                  std::size_t      max_order,
                                                  std::size_t      max_degree) {
    if (max_order == 0 || max_degree == 0) {
      throw ArgumentError("random_transformation_semigroup: bounds must be positive");
    }
    // Draw the target order first so small orders do not dominate; fall
    // back to any order within the bound if the target proves elusive.
    std::size_t const target = uniform(rng, 1, max_order);
    for (std::size_t attempt = 0;; ++attempt) {
      std::size_t const           d = uniform(rng, 1, max_degree);
      std::size_t const           k = uniform(rng, 1, 3);
      std::vector<Transformation> gens(k, Transformation(d));
      for (auto& g : gens) {
        for (auto& p : g) {
          p = static_cast<std::uint8_t>(uniform(rng, 0, d - 1));
        }
      }
      if (auto S = transformation_closure(gens, max_order); S && (S->order() == target || attempt >= 2000)) {
        return *S;
      }
    }
  }

  FiniteSemigroup random_commutative_semigroup(std::mt19937_64& rng, std::size_t max_order) {
    if (max_order == 0) {
      throw ArgumentError("random_commutative_semigroup: max_order must be positive");
    }
    while (true) {
      CommPresentation pres;
      pres.k = uniform(rng, 1, 3);
      for (std::size_t i = 0; i < pres.k; ++i) {
        ExpVec l(pres.k, 0), r(pres.k, 0);
        auto   index  = static_cast<std::uint32_t>(uniform(rng, 1, 4));
        auto   period = static_cast<std::uint32_t>(uniform(rng, 1, 4));
        l[i]          = index;
        r[i]          = index + period;
        pres.relations.emplace_back(l, r);
      }
      if (pres.k > 1 && uniform(rng, 0, 1) == 1) {
        ExpVec l(pres.k, 0), r(pres.k, 0);
        for (std::size_t i = 0; i < pres.k; ++i) {
          l[i] = static_cast<std::uint32_t>(uniform(rng, 0, 2));
          r[i] = static_cast<std::uint32_t>(uniform(rng, 0, 2));
        }
        if (l != r && std::accumulate(l.begin(), l.end(), 0u) > 0 && std::accumulate(r.begin(), r.end(), 0u) > 0) {
          pres.relations.emplace_back(l, r);
        }
      }
      NFEngine engine(pres, 10);
      if (engine.certificate() && engine.elements().size() <= max_order) {
        return engine.to_semigroup();
      }
    }
  }

  FiniteSemigroup random_monoid(std::mt19937_64& rng, std::size_t max_order) {
    if (max_order < 2) {
      throw ArgumentError("random_monoid: max_order must be at least 2");
    }
    while (true) {
      auto S = random_transformation_semigroup(rng, max_order);
      if (S.identity()) {
        return S;
      }
      if (S.order() + 1 <= max_order) {
        return adjoin_identity(S);
      }
    }
  }

}  // namespace sepkit
