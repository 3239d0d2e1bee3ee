#include "sepkit/gallery.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "sepkit/green.hpp"

namespace sepkit {

  namespace {
    void require_abelian_group(FiniteSemigroup const& G, char const* what) {
      if (!is_group(G) || !G.is_commutative()) {
        throw ArgumentError(std::string(what) + ": G must be an abelian group");
      }
    }

    HomMap require_hom(std::vector<ElementId> const& map,
                       FiniteSemigroup const&        S,
                       FiniteSemigroup const&        T,
                       char const*                   what) {
      if (map.size() != S.order()) {
        throw ArgumentError(std::string(what) + ": map has " + std::to_string(map.size())
                            + " entries, expected " + std::to_string(S.order()));
      }
      for (auto y : map) {
        if (y >= T.order()) {
          throw ArgumentError(std::string(what) + ": map entry out of range");
        }
      }
      auto r = check_hom(map, S, T);
      if (auto const* v = std::get_if<HomViolation>(&r)) {
        throw ArgumentError(std::string(what) + ": not a homomorphism at (" + std::to_string(v->first)
                            + ", " + std::to_string(v->second) + ")");
      }
      return std::get<HomMap>(r);
    }

    FiniteSemigroup checked_table(Table const& rows, char const* what) {
      if (auto bad = validate_associativity(rows)) {
        throw InternalError(std::string(what) + ": table fails associativity at (" + std::to_string((*bad)[0])
                            + ", " + std::to_string((*bad)[1]) + ", " + std::to_string((*bad)[2]) + ")");
      }
      return FiniteSemigroup(rows);
    }

    // Symbolic elements of the commutative semigroup with a^i b_j = b_{j-i}.
    struct Eg62 {
      enum class Kind { a, b, zero } kind = Kind::zero;
      std::uint64_t exp                   = 0;

      friend bool operator==(Eg62 const&, Eg62 const&) = default;
    };

    Eg62 parse_eg62(std::string const& t) {
      auto number = [&](std::string const& s) -> std::uint64_t {
        if (s.empty() || s.size() > 12 || !std::all_of(s.begin(), s.end(), ::isdigit) || std::stoull(s) == 0) {
          throw ArgumentError("eg62: bad token '" + t + "'");
        }
        return std::stoull(s);
      };
      if (t == "0") {
        return {};
      }
      if (t == "a") {
        return {Eg62::Kind::a, 1};
      }
      if (t.rfind("a^", 0) == 0) {
        return {Eg62::Kind::a, number(t.substr(2))};
      }
      if (t.rfind("b_", 0) == 0) {
        return {Eg62::Kind::b, number(t.substr(2))};
      }
      throw ArgumentError("eg62: bad token '" + t + "'");
    }

    std::string show_eg62(Eg62 const& e) {
      switch (e.kind) {
        case Eg62::Kind::a:
          return e.exp == 1 ? "a" : "a^" + std::to_string(e.exp);
        case Eg62::Kind::b:
          return "b_" + std::to_string(e.exp);
        case Eg62::Kind::zero:
          return "0";
      }
      return "0";
    }

    Eg62 eg62_mul(Eg62 x, Eg62 y) {
      using K = Eg62::Kind;
      if (x.kind == K::zero || y.kind == K::zero) {
        return {};
      }
      if (x.kind == K::a && y.kind == K::a) {
        return {K::a, x.exp + y.exp};
      }
      if (x.kind == K::b && y.kind == K::b) {
        return {};  // B is a null semigroup
      }
      auto i = x.kind == K::a ? x.exp : y.exp;
      auto j = x.kind == K::b ? x.exp : y.exp;
      return j > i ? Eg62{K::b, j - i} : Eg62{};
    }

    std::string join_factors(std::vector<std::string> const& f) {
      std::string out;
      for (std::size_t k = 0; k < f.size(); ++k) {
        out += (k ? "*" : "") + f[k];
      }
      return out;
    }

    std::optional<std::pair<std::size_t, std::size_t>> first_collision(std::vector<long long> const& colors) {
      for (std::size_t i = 0; i < colors.size(); ++i) {
        for (std::size_t j = i + 1; j < colors.size(); ++j) {
          if (colors[i] == colors[j]) {
            return std::make_pair(i + 1, j + 1);
          }
        }
      }
      return std::nullopt;
    }

    std::string evaluate(WitnessChain::Kind kind, std::vector<std::string> const& factors) {
      return kind == WitnessChain::Kind::squarefree ? squarefree_product(factors) : eg62_product(factors);
    }
  }  // namespace

  bool is_group(FiniteSemigroup const& G) {
    if (!G.identity()) {
      return false;
    }
    std::size_t const n = G.order();
    for (ElementId x = 0; x < n; ++x) {
      std::vector<bool> row(n), col(n);
      for (ElementId y = 0; y < n; ++y) {
        row[G.product(x, y)] = true;
        col[G.product(y, x)] = true;
      }
      if (std::count(row.begin(), row.end(), true) != static_cast<long>(n)
          || std::count(col.begin(), col.end(), true) != static_cast<long>(n)) {
        return false;
      }
    }
    return true;
  }

  ElementId group_inverse(FiniteSemigroup const& G, ElementId g) {
    if (!is_group(G)) {
      throw ArgumentError("group_inverse: not a group");
    }
    for (ElementId h = 0; h < G.order(); ++h) {
      if (G.product(g, h) == *G.identity()) {
        return h;
      }
    }
    throw InternalError("group_inverse: no inverse in a group");
  }

  ////////////////////////////////////////////////////////////////////////
  // S(T, G, phi)
  ////////////////////////////////////////////////////////////////////////

  FiniteSemigroup build_construction(FiniteSemigroup const&        T,
                                     FiniteSemigroup const&        G,
                                     std::vector<ElementId> const& phi) {
    require_abelian_group(G, "build_construction");
    require_hom(phi, T, G, "build_construction");
    std::set<ElementId> image(phi.begin(), phi.end());
    if (image.size() != G.order()) {
      throw ArgumentError("build_construction: phi is not surjective");
    }
    std::size_t const t = T.order(), g = G.order(), n = t + g + 1;
    limits::check_order(n, "build_construction");
    auto const x    = [&](ElementId h) { return static_cast<ElementId>(t + h); };
    auto const zero = static_cast<ElementId>(t + g);

    std::vector<ElementId> inv(g);
    for (ElementId h = 0; h < g; ++h) {
      inv[h] = group_inverse(G, h);
    }
    Table rows(n, std::vector<ElementId>(n, zero));
    for (ElementId a = 0; a < t; ++a) {
      for (ElementId b = 0; b < t; ++b) {
        rows[a][b] = T.product(a, b);
      }
      for (ElementId h = 0; h < g; ++h) {
        rows[x(h)][a] = x(G.product(h, phi[a]));       // x_h t = x_{h phi(t)}
        rows[a][x(h)] = x(G.product(h, inv[phi[a]]));  // t x_h = x_{h phi(t)^-1}
      }
    }
    auto S = checked_table(rows, "build_construction");

    std::vector<std::string> labels;
    for (ElementId a = 0; a < t; ++a) {
      labels.push_back(T.label(a));
    }
    for (ElementId h = 0; h < g; ++h) {
      labels.push_back("x_" + G.label(h));
    }
    labels.push_back("0");
    S = S.with_labels(std::move(labels));
    if (T.generators()) {
      auto gens = *T.generators();
      gens.push_back(x(*G.identity()));
      S = S.with_generators(std::move(gens));
    }

    std::vector<ElementId> X(g);
    std::iota(X.begin(), X.end(), static_cast<ElementId>(t));
    auto const green = green_relations(S);
    auto const idx   = green.hclass_index(X);
    if (green.group_flags[idx]) {
      throw InternalError("build_construction: X_G is a group H-class");
    }
    auto const gamma = schutzenberger_group(S, X);
    if (gamma.order() != g || !gamma.is_abelian()) {
      throw InternalError("build_construction: Schützenberger group of X_G does not match G");
    }
    return S;
  }

  std::pair<FiniteSemigroup, HomMap> construction_image_map(FiniteSemigroup const&        T,
                                                            FiniteSemigroup const&        G,
                                                            std::vector<ElementId> const& phi,
                                                            FiniteSemigroup const&        K,
                                                            std::vector<ElementId> const& f) {
    auto S = build_construction(T, G, phi);
    require_abelian_group(K, "construction_image_map");
    require_hom(f, G, K, "construction_image_map");
    std::vector<ElementId> id(K.order());
    std::iota(id.begin(), id.end(), 0);
    auto              P = build_construction(K, K, id);
    std::size_t const t = T.order(), g = G.order(), k = K.order();

    std::vector<ElementId> map(S.order());
    for (ElementId a = 0; a < t; ++a) {
      map[a] = f[phi[a]];
    }
    for (ElementId h = 0; h < g; ++h) {
      map[t + h] = static_cast<ElementId>(k + f[h]);
    }
    map[t + g] = static_cast<ElementId>(2 * k);
    auto r = check_hom(map, S, P);
    if (!std::holds_alternative<HomMap>(r)) {
      throw InternalError("construction_image_map: induced map is not a homomorphism");
    }
    return {std::move(P), std::get<HomMap>(r)};
  }

  ////////////////////////////////////////////////////////////////////////
  // Rees matrix semigroups
  ////////////////////////////////////////////////////////////////////////

  FiniteSemigroup build_rees_matrix(ReesMatrixSpec const& spec) {
    auto const& G = spec.G;
    if (!is_group(G)) {
      throw ArgumentError("build_rees_matrix: G must be a group");
    }
    if (spec.i_size == 0 || spec.l_size == 0) {
      throw ArgumentError("build_rees_matrix: index sets must be non-empty");
    }
    if (spec.P.size() != spec.l_size) {
      throw ArgumentError("build_rees_matrix: sandwich matrix needs " + std::to_string(spec.l_size) + " rows");
    }
    for (auto const& row : spec.P) {
      if (row.size() != spec.i_size) {
        throw ArgumentError("build_rees_matrix: sandwich rows need " + std::to_string(spec.i_size)
                            + " entries");
      }
      for (auto const& e : row) {
        if (e && *e >= G.order()) {
          throw ArgumentError("build_rees_matrix: sandwich entry out of range");
        }
      }
      if (std::none_of(row.begin(), row.end(), [](auto const& e) { return e.has_value(); })) {
        throw ArgumentError("build_rees_matrix: sandwich matrix has an all-zero row");
      }
    }
    for (std::size_t i = 0; i < spec.i_size; ++i) {
      if (std::none_of(spec.P.begin(), spec.P.end(), [i](auto const& row) { return row[i].has_value(); })) {
        throw ArgumentError("build_rees_matrix: sandwich matrix has an all-zero column");
      }
    }
    std::size_t const g = G.order(), I = spec.i_size, L = spec.l_size;
    std::size_t const n = I * g * L + 1;
    limits::check_order(n, "build_rees_matrix");
    auto const zero = static_cast<ElementId>(n - 1);

    Table rows(n, std::vector<ElementId>(n, zero));
    for (std::size_t i = 0; i < I; ++i) {
      for (ElementId a = 0; a < g; ++a) {
        for (std::size_t l = 0; l < L; ++l) {
          auto const x = rees_index(spec, i, a, l);
          for (std::size_t j = 0; j < I; ++j) {
            auto const& p = spec.P[l][j];
            if (!p) {
              continue;
            }
            for (ElementId b = 0; b < g; ++b) {
              for (std::size_t m = 0; m < L; ++m) {
                rows[x][rees_index(spec, j, b, m)] =
                    rees_index(spec, i, G.product(G.product(a, *p), b), m);
              }
            }
          }
        }
      }
    }
    auto S = checked_table(rows, "build_rees_matrix");

    std::vector<std::string> labels(n);
    for (std::size_t i = 0; i < I; ++i) {
      for (ElementId a = 0; a < g; ++a) {
        for (std::size_t l = 0; l < L; ++l) {
          labels[rees_index(spec, i, a, l)] =
              "(" + std::to_string(i + 1) + "," + G.label(a) + "," + std::to_string(l + 1) + ")";
        }
      }
    }
    labels[zero] = "0";
    S            = S.with_labels(std::move(labels));

    auto const green = green_relations(S);
    if (green.h_classes.size() != I * L + 1) {
      throw InternalError("build_rees_matrix: unexpected number of H-classes");
    }
    for (std::size_t i = 0; i < I; ++i) {
      for (std::size_t l = 0; l < L; ++l) {
        std::vector<ElementId> H;
        for (ElementId a = 0; a < g; ++a) {
          H.push_back(rees_index(spec, i, a, l));
        }
        std::sort(H.begin(), H.end());
        auto const idx = green.hclass_index(H);
        if (green.group_flags[idx] != spec.P[l][i].has_value()) {
          throw InternalError("build_rees_matrix: group H-class does not match the sandwich entry");
        }
      }
    }
    return S;
  }

  ////////////////////////////////////////////////////////////////////////
  // Square-free words
  ////////////////////////////////////////////////////////////////////////

  // For each period p, a square of period p is a run of p consecutive
  // positions k with w[k] = w[k + p].
  bool is_squarefree(std::string const& w) {
    std::size_t const n = w.size();
    for (std::size_t p = 1; 2 * p <= n; ++p) {
      std::size_t run = 0;
      for (std::size_t k = 0; k + p < n; ++k) {
        run = w[k] == w[k + p] ? run + 1 : 0;
        if (run >= p) {
          return false;
        }
      }
    }
    return true;
  }

  FiniteSemigroup squarefree_semigroup(std::size_t n) {
    if (n == 0) {
      throw ArgumentError("squarefree_semigroup: n must be at least 1");
    }
    if (n > limits::squarefree_cap()) {
      throw ResourceError("squarefree_semigroup: n = " + std::to_string(n) + " exceeds the cap "
                          + std::to_string(limits::squarefree_cap()));
    }
    // Square-free words are closed under taking factors, so extending the
    // square-free words of length l by one letter and filtering is complete.
    std::vector<std::string> words, layer{""};
    for (std::size_t len = 1; len <= n; ++len) {
      std::vector<std::string> next;
      for (auto const& w : layer) {
        for (char c : {'a', 'b', 'c'}) {
          auto v = w + c;
          if (is_squarefree(v)) {
            next.push_back(std::move(v));
          }
        }
      }
      std::sort(next.begin(), next.end());
      words.insert(words.end(), next.begin(), next.end());
      layer = std::move(next);
    }
    std::size_t const total = words.size() + 1;
    limits::check_order(total, "squarefree_semigroup");
    std::map<std::string, ElementId> index;
    for (std::size_t k = 0; k < words.size(); ++k) {
      index.emplace(words[k], static_cast<ElementId>(k));
    }
    auto const             zero = static_cast<ElementId>(words.size());
    std::vector<ElementId> flat(total * total, zero);
    for (std::size_t x = 0; x < words.size(); ++x) {
      for (std::size_t y = 0; y < words.size(); ++y) {
        if (words[x].size() + words[y].size() > n) {
          continue;
        }
        auto it = index.find(words[x] + words[y]);
        if (it != index.end()) {
          flat[x * total + y] = it->second;
        }
      }
    }
    auto labels = words;
    labels.push_back("0");
    std::vector<ElementId> gens{index.at("a"), index.at("b"), index.at("c")};
    return FiniteSemigroup::trusted(total, std::move(flat))
        .with_labels(std::move(labels))
        .with_generators(std::move(gens));
  }

  std::string squarefree_stream(std::size_t len) {
    if (len == 0) {
      throw ArgumentError("squarefree_stream: length must be at least 1");
    }
    std::string w = "a";
    while (w.size() < len) {
      std::string next;
      next.reserve(2 * w.size() + 3);
      for (char c : w) {
        next += c == 'a' ? "abc" : c == 'b' ? "ac" : "b";
      }
      w = std::move(next);
    }
    w.resize(len);
    if (!is_squarefree(w)) {
      throw InternalError("squarefree_stream: emitted prefix contains a square");
    }
    return w;
  }

  std::string squarefree_product(std::vector<std::string> const& factors) {
    if (factors.empty()) {
      throw ArgumentError("squarefree_product: empty product");
    }
    std::string acc;
    bool        zero = false;
    for (auto const& f : factors) {
      if (f == "0") {
        zero = true;
        continue;
      }
      if (f.empty() || f.find_first_not_of("abc") != std::string::npos || !is_squarefree(f)) {
        throw ArgumentError("squarefree_product: '" + f + "' is not an element");
      }
      acc += f;
    }
    return zero || !is_squarefree(acc) ? "0" : acc;
  }

  std::string eg62_product(std::vector<std::string> const& factors) {
    if (factors.empty()) {
      throw ArgumentError("eg62_product: empty product");
    }
    Eg62 acc = parse_eg62(factors.front());
    for (std::size_t k = 1; k < factors.size(); ++k) {
      acc = eg62_mul(acc, parse_eg62(factors[k]));
    }
    return show_eg62(acc);
  }

  std::string render_step(WitnessStep const& step) {
    return join_factors(step.lhs) + (step.congruent ? " ~ " : " = ") + join_factors(step.rhs) + "  ["
           + step.justification + "]";
  }

  std::optional<WitnessChain> replay_squarefree_collapse(std::vector<long long> const& colors) {
    if (colors.size() < 2) {
      throw ArgumentError("replay_squarefree_collapse: need at least two prefixes");
    }
    auto hit = first_collision(colors);
    if (!hit) {
      return std::nullopt;
    }
    auto [i, j]      = *hit;
    auto const w     = squarefree_stream(j);
    auto const wi    = w.substr(0, i);
    auto const wj    = w;
    auto const v     = w.substr(i);
    auto const vname = "v_{" + std::to_string(i) + "," + std::to_string(j) + "}";
    auto const wi_n  = "w_" + std::to_string(i);
    auto const wj_n  = "w_" + std::to_string(j);

    WitnessChain c;
    c.kind  = WitnessChain::Kind::squarefree;
    c.i     = i;
    c.j     = j;
    c.left  = wi;
    c.right = wj;
    c.steps.push_back({{wj}, {wi, v}, false, wj_n + " = " + wi_n + " " + vname});
    c.steps.push_back({{wi, v}, {wj, v}, true, wi_n + " ~ " + wj_n});
    c.steps.push_back({{wj, v}, {wi, v, v}, false, wj_n + " = " + wi_n + " " + vname});
    c.steps.push_back({{wi, v, v}, {"0"}, false, vname + " " + vname + " is a square"});
    c.conclusion = wj_n + " ~ 0, so 0 is not separated from the non-zero elements";
    return c;
  }

  std::optional<WitnessChain> replay_eg62(std::vector<long long> const& colors) {
    if (colors.size() < 2) {
      throw ArgumentError("replay_eg62: need at least two elements");
    }
    auto hit = first_collision(colors);
    if (!hit) {
      return std::nullopt;
    }
    auto [i, j]   = *hit;
    auto const bi = "b_" + std::to_string(i);
    auto const bj = "b_" + std::to_string(j);
    auto const a  = "a^" + std::to_string(j - 1);

    WitnessChain c;
    c.kind  = WitnessChain::Kind::eg62;
    c.i     = i;
    c.j     = j;
    c.left  = bi;
    c.right = bj;
    c.steps.push_back({{"0"}, {bi, a}, false, bi + " " + a + " = 0 since " + std::to_string(j - 1) + " >= " + std::to_string(i)});
    c.steps.push_back({{bi, a}, {bj, a}, true, bi + " ~ " + bj});
    c.steps.push_back({{bj, a}, {"b_1"}, false, bj + " " + a + " = b_{" + std::to_string(j) + "-"
                                                    + std::to_string(j - 1) + "}"});
    c.conclusion = "0 ~ b_1, so 0 and b_1 are not separated by any finite index congruence";
    return c;
  }

  bool verify_chain(WitnessChain const& chain) {
    if (chain.steps.empty() || chain.i == 0 || chain.i >= chain.j) {
      return false;
    }
    try {
      auto const left  = evaluate(chain.kind, {chain.left});
      auto const right = evaluate(chain.kind, {chain.right});
      bool       used  = false;
      for (std::size_t k = 0; k < chain.steps.size(); ++k) {
        auto const& s = chain.steps[k];
        if (s.congruent) {
          if (s.lhs.size() != s.rhs.size()) {
            return false;
          }
          std::size_t diffs = 0;
          for (std::size_t p = 0; p < s.lhs.size(); ++p) {
            if (s.lhs[p] == s.rhs[p]) {
              continue;
            }
            ++diffs;
            auto x = evaluate(chain.kind, {s.lhs[p]}), y = evaluate(chain.kind, {s.rhs[p]});
            if (!((x == left && y == right) || (x == right && y == left))) {
              return false;
            }
          }
          if (diffs != 1) {
            return false;
          }
          used = true;
        } else if (evaluate(chain.kind, s.lhs) != evaluate(chain.kind, s.rhs)) {
          return false;
        }
        if (k + 1 < chain.steps.size()
            && evaluate(chain.kind, s.rhs) != evaluate(chain.kind, chain.steps[k + 1].lhs)) {
          return false;
        }
      }
      // The chain must join two elements that the colouring kept apart.
      auto const start  = evaluate(chain.kind, chain.steps.front().lhs);
      auto const finish = evaluate(chain.kind, chain.steps.back().rhs);
      return used && start != finish;
    } catch (ArgumentError const&) {
      return false;
    }
  }

  ////////////////////////////////////////////////////////////////////////
  // Z, N x Z and monoids
  ////////////////////////////////////////////////////////////////////////

  std::vector<CyclicObstructionRow> z_cyclic_obstruction(std::size_t n_max) {
    if (n_max == 0) {
      throw ArgumentError("z_cyclic_obstruction: n_max must be at least 1");
    }
    std::vector<CyclicObstructionRow> out;
    for (std::size_t n = 1; n <= n_max; ++n) {
      auto const Zn    = cyclic_group(n);
      auto const one   = static_cast<ElementId>(1 % n);
      auto const minus = static_cast<ElementId>((n - 1) % n);
      CyclicObstructionRow row{n, minus, 0, false};
      for (std::size_t k = 1; k <= n && !row.contained; ++k) {
        if (Zn.power(one, k) == minus) {
          row.k         = k;
          row.contained = true;
        }
      }
      if (!row.contained) {
        throw InternalError("z_cyclic_obstruction: -1 missing from the image of N in Z/"
                            + std::to_string(n));
      }
      out.push_back(row);
    }
    return out;
  }

  ElementId NxZSeparator::image(NxZ const& p) const {
    auto const a = p.first <= n ? p.first - 1 : n;  // n is the zero of N / I
    auto       b = p.second % modulus;
    if (b < 0) {
      b += modulus;
    }
    return static_cast<ElementId>(a * modulus + b);
  }

  NxZSeparator nxz_separator(std::vector<NxZ> const& T, NxZ const& x) {
    if (T.empty()) {
      throw ArgumentError("nxz_separator: T needs at least one generator");
    }
    for (auto const& p : T) {
      if (p.first < 1) {
        throw ArgumentError("nxz_separator: generator first coordinates must be positive");
      }
    }
    if (x.first < 1) {
      throw ArgumentError("nxz_separator: x is not in N x Z");
    }
    std::int64_t const n = x.first;
    limits::check_order(static_cast<std::size_t>(n) + 1, "nxz_separator");
    // reach[f]: second coordinates of members of <T> with first coordinate f.
    // Every generator raises the first coordinate, so this is exact.
    std::vector<std::set<std::int64_t>> reach(static_cast<std::size_t>(n) + 1);
    for (std::int64_t f = 1; f <= n; ++f) {
      for (auto const& [a, b] : T) {
        if (a == f) {
          reach[f].insert(b);
        } else if (a < f) {
          for (auto s : reach[f - a]) {
            reach[f].insert(s + b);
          }
        }
      }
    }
    if (reach[n].count(x.second)) {
      throw ArgumentError("nxz_separator: x lies in the subsemigroup generated by T");
    }
    NxZSeparator out{n, {}, 1, cyclic_group(1), cyclic_group(1), {}, false};
    std::int64_t gap = 0;
    for (auto s : reach[n]) {
      out.Y.emplace_back(n, s);
      gap = std::max<std::int64_t>(gap, s > x.second ? s - x.second : x.second - s);
    }
    out.modulus = gap == 0 ? 1 : 2 * gap;

    // N / {m > n}: element k-1 is k for k <= n, element n is the zero.
    auto const             q = static_cast<std::size_t>(n) + 1;
    std::vector<ElementId> flat(q * q);
    std::vector<std::string> labels;
    for (std::size_t a = 0; a < q; ++a) {
      labels.push_back(a + 1 < q ? std::to_string(a + 1) : "I");
      for (std::size_t b = 0; b < q; ++b) {
        flat[a * q + b] = static_cast<ElementId>(std::min(a + b + 1, q - 1));
      }
    }
    out.n_quotient = FiniteSemigroup::trusted(q, std::move(flat)).with_labels(std::move(labels));
    out.target     = direct_product(out.n_quotient, cyclic_group(static_cast<std::size_t>(out.modulus)));

    for (std::int64_t f = 1; f <= n; ++f) {
      for (auto s : reach[f]) {
        out.checked.emplace_back(f, s);
      }
    }
    // Pointwise: x is separated from every member that could share its
    // image, and the map respects the products among those members.
    auto const ix  = out.image(x);
    bool       ok  = true;
    for (auto const& u : out.checked) {
      ok = ok && out.image(u) != ix;
    }
    std::vector<NxZ> sample = out.checked;
    sample.insert(sample.end(), T.begin(), T.end());
    sample.push_back(x);
    for (auto const& u : sample) {
      for (auto const& v : sample) {
        NxZ const uv{u.first + v.first, u.second + v.second};
        ok = ok && out.image(uv) == out.target.product(out.image(u), out.image(v));
      }
    }
    out.certified = ok;
    if (!ok) {
      throw InternalError("nxz_separator: certificate failed");
    }
    return out;
  }

  UnitCheck finite_monoid_unit_check(FiniteSemigroup const& M) {
    if (!M.identity()) {
      throw ArgumentError("finite_monoid_unit_check: no identity");
    }
    ElementId const e = *M.identity();
    UnitCheck       out;
    for (ElementId b = 0; b < M.order() && out.ok; ++b) {
      for (ElementId c = 0; c < M.order(); ++c) {
        if (M.product(b, c) == e && M.product(c, b) != e) {
          out.ok        = false;
          out.violation = std::make_pair(b, c);
          break;
        }
      }
    }
    return out;
  }

  std::vector<GalleryInstance> gallery_instances() {
    auto mod_map = [](std::size_t t, std::size_t g) {
      std::vector<ElementId> phi(t);
      for (std::size_t a = 0; a < t; ++a) {
        phi[a] = static_cast<ElementId>(a % g);
      }
      return phi;
    };
    auto rees = [](SandwichMatrix P) {
      ReesMatrixSpec spec{cyclic_group(2), P.front().size(), P.size(), std::move(P)};
      return build_rees_matrix(spec);
    };
    std::optional<ElementId> const e = 0, o;

    std::vector<GalleryInstance> out;
    out.push_back({"construction-z3-z3", "S(Z/3, Z/3, id)",
                   build_construction(cyclic_group(3), cyclic_group(3), mod_map(3, 3))});
    out.push_back({"construction-z4-z2", "S(Z/4, Z/2, reduction mod 2)",
                   build_construction(cyclic_group(4), cyclic_group(2), mod_map(4, 2))});
    out.push_back({"construction-z2-trivial", "S(Z/2, 1, trivial map)",
                   build_construction(cyclic_group(2), cyclic_group(1), mod_map(2, 1))});
    out.push_back({"rees-z2-full", "M0[Z/2; 2, 2; all entries e]", rees({{e, e}, {e, e}})});
    out.push_back({"rees-z2-mixed", "M0[Z/2; 2, 2; (e 0 / e e)]", rees({{e, o}, {e, e}})});
    out.push_back({"rees-z2-diagonal", "M0[Z/2; 2, 2; (e 0 / 0 e)]", rees({{e, o}, {o, e}})});
    out.push_back({"rees-z3-single", "M0[Z/3; 1, 1; (e)] = Z/3 with zero", [] {
                     ReesMatrixSpec spec{cyclic_group(3), 1, 1, {{ElementId{0}}}};
                     return build_rees_matrix(spec);
                   }()});
    for (std::size_t n = 1; n <= 3; ++n) {
      out.push_back({"squarefree-" + std::to_string(n), "square-free words of length at most " + std::to_string(n),
                     squarefree_semigroup(n)});
    }
    out.push_back({"z4", "additive Z/4", cyclic_group(4)});
    out.push_back({"mulmod-4", "{0,1,2,3} under multiplication mod 4", multiplicative_mod(4)});
    out.push_back({"mulmod-12", "{0,...,11} under multiplication mod 12", multiplicative_mod(12)});
    out.push_back({"monogenic-3-2", "<a | a^3 = a^5>", monogenic(3, 2)});
    out.push_back({"chain-3", "3-element chain semilattice", chain_semilattice(3)});
    out.push_back({"left-zero-3", "3-element left zero semigroup", left_zero_semigroup(3)});
    out.push_back({"null-4", "4-element null semigroup", null_semigroup(4)});
    return out;
  }

}  // namespace sepkit
