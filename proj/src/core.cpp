#include "sepkit/core.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace sepkit {

  namespace limits {
    namespace {
      std::atomic<std::size_t> g_order_cap{10'000};
      std::atomic<std::size_t> g_congruence_cap{12};
      std::atomic<std::size_t> g_squarefree_cap{8};
    }  // namespace

    std::size_t order_cap() noexcept {
      return g_order_cap.load();
    }
    void set_order_cap(std::size_t cap) noexcept {
      g_order_cap.store(cap);
    }
    std::size_t congruence_cap() noexcept {
      return g_congruence_cap.load();
    }
    void set_congruence_cap(std::size_t cap) noexcept {
      g_congruence_cap.store(cap);
    }
    std::size_t squarefree_cap() noexcept {
      return g_squarefree_cap.load();
    }
    void set_squarefree_cap(std::size_t cap) noexcept {
      g_squarefree_cap.store(cap);
    }

    void check_order(std::size_t n, char const* what) {
      if (n > order_cap()) {
        throw ResourceError(std::string(what) + ": order " + std::to_string(n)
                            + " exceeds the cap " + std::to_string(order_cap()));
      }
    }
  }  // namespace limits

  ////////////////////////////////////////////////////////////////////////
  // Subset
  ////////////////////////////////////////////////////////////////////////

  Subset::Subset(std::size_t ambient_order, std::vector<ElementId> members)
      : _mask(ambient_order, false) {
    _members.reserve(members.size());
    for (auto x : members) {
      if (x >= ambient_order) {
        throw ArgumentError("element " + std::to_string(x) + " out of range for order "
                            + std::to_string(ambient_order));
      }
      if (!_mask[x]) {
        _mask[x] = true;
        _members.push_back(x);
      }
    }
  }

  std::vector<ElementId> Subset::sorted() const {
    auto out = _members;
    std::sort(out.begin(), out.end());
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // FiniteSemigroup
  ////////////////////////////////////////////////////////////////////////

  namespace {
    std::vector<ElementId> flatten_checked(Table const& rows) {
      std::size_t n = rows.size();
      if (n == 0) {
        throw FormatError("a semigroup table must have at least one row");
      }
      std::vector<ElementId> flat;
      flat.reserve(n * n);
      for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n) {
          throw FormatError("table is not square: row " + std::to_string(i) + " has "
                            + std::to_string(rows[i].size()) + " entries, expected "
                            + std::to_string(n));
        }
        for (auto v : rows[i]) {
          if (v >= n) {
            throw FormatError("table entry " + std::to_string(v) + " out of range in row "
                              + std::to_string(i));
          }
          flat.push_back(v);
        }
      }
      return flat;
    }

    std::optional<Triple> first_violation(std::size_t n, std::vector<ElementId> const& t) {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          std::size_t ij = t[i * n + j];
          for (std::size_t k = 0; k < n; ++k) {
            if (t[ij * n + k] != t[i * n + t[j * n + k]]) {
              return Triple{static_cast<ElementId>(i),
                            static_cast<ElementId>(j),
                            static_cast<ElementId>(k)};
            }
          }
        }
      }
      return std::nullopt;
    }
  }  // namespace

  FiniteSemigroup::FiniteSemigroup(Table const& rows) {
    auto flat = flatten_checked(rows);
    limits::check_order(rows.size(), "table");
    if (auto v = first_violation(rows.size(), flat)) {
      throw FormatError("table is not associative at (" + std::to_string((*v)[0]) + ", "
                        + std::to_string((*v)[1]) + ", " + std::to_string((*v)[2]) + ")");
    }
    _order = rows.size();
    _table = std::move(flat);
    find_special_elements();
  }

  FiniteSemigroup FiniteSemigroup::trusted(std::size_t order, std::vector<ElementId> flat) {
    if (order == 0 || flat.size() != order * order) {
      throw FormatError("trusted table has the wrong shape");
    }
    limits::check_order(order, "table");
    for (auto v : flat) {
      if (v >= order) {
        throw FormatError("trusted table entry out of range");
      }
    }
    FiniteSemigroup S;
    S._order = order;
    S._table = std::move(flat);
    S.find_special_elements();
    return S;
  }

  void FiniteSemigroup::find_special_elements() {
    _identity.reset();
    _zero.reset();
    for (ElementId e = 0; e < _order; ++e) {
      bool is_id = true, is_zero = true;
      for (ElementId x = 0; x < _order && (is_id || is_zero); ++x) {
        is_id   = is_id && product(e, x) == x && product(x, e) == x;
        is_zero = is_zero && product(e, x) == e && product(x, e) == e;
      }
      if (is_id && !_identity) {
        _identity = e;
      }
      if (is_zero && !_zero) {
        _zero = e;
      }
    }
  }

  ElementId FiniteSemigroup::power(ElementId x, std::size_t n) const {
    if (n == 0) {
      throw ArgumentError("power: exponent must be at least 1");
    }
    // seq[i] = x^(i+1); stop at the first repeat and index into the cycle.
    std::vector<ElementId> seq{x};
    std::vector<long>      pos(_order, -1);
    pos[x] = 0;
    while (seq.size() < n) {
      ElementId nxt = product(seq.back(), x);
      if (pos[nxt] >= 0) {
        std::size_t start = static_cast<std::size_t>(pos[nxt]);
        std::size_t per   = seq.size() - start;
        return seq[start + (n - 1 - start) % per];
      }
      pos[nxt] = static_cast<long>(seq.size());
      seq.push_back(nxt);
    }
    return seq[n - 1];
  }

  std::string FiniteSemigroup::label(ElementId x) const {
    if (x < _labels.size() && !_labels[x].empty()) {
      return _labels[x];
    }
    return std::to_string(x);
  }

  FiniteSemigroup FiniteSemigroup::with_labels(std::vector<std::string> labels) const {
    if (labels.size() != _order) {
      throw ArgumentError("with_labels: expected " + std::to_string(_order) + " labels");
    }
    FiniteSemigroup S = *this;
    S._labels         = std::move(labels);
    return S;
  }

  FiniteSemigroup FiniteSemigroup::with_generators(std::vector<ElementId> gens) const {
    if (gens.empty()) {
      throw ArgumentError("with_generators: empty generating set");
    }
    Subset X(_order, gens);
    if (closure(*this, X).size() != _order) {
      throw ArgumentError("with_generators: the given elements do not generate");
    }
    FiniteSemigroup S = *this;
    S._generators     = X.sorted();
    return S;
  }

  bool FiniteSemigroup::is_commutative() const noexcept {
    for (ElementId i = 0; i < _order; ++i) {
      for (ElementId j = i + 1; j < _order; ++j) {
        if (product(i, j) != product(j, i)) {
          return false;
        }
      }
    }
    return true;
  }

  Table FiniteSemigroup::rows() const {
    Table out(_order, std::vector<ElementId>(_order));
    for (std::size_t i = 0; i < _order; ++i) {
      for (std::size_t j = 0; j < _order; ++j) {
        out[i][j] = _table[i * _order + j];
      }
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Operations
  ////////////////////////////////////////////////////////////////////////

  std::optional<Triple> validate_associativity(Table const& rows) {
    auto flat = flatten_checked(rows);
    return first_violation(rows.size(), flat);
  }

  std::optional<Triple> validate_associativity(FiniteSemigroup const& S) {
    return first_violation(S.order(), S.flat());
  }

  Subset closure(FiniteSemigroup const& S, Subset const& X) {
    if (X.empty()) {
      throw ArgumentError("closure: the generating set must be non-empty");
    }
    if (X.ambient_order() != S.order()) {
      throw ArgumentError("closure: subset belongs to a semigroup of different order");
    }
    auto const             gens = X.sorted();
    std::vector<bool>      seen(S.order(), false);
    std::vector<ElementId> found;
    for (auto x : gens) {
      seen[x] = true;
      found.push_back(x);
    }
    for (std::size_t i = 0; i < found.size(); ++i) {
      for (auto g : gens) {
        ElementId y = S.product(found[i], g);
        if (!seen[y]) {
          seen[y] = true;
          found.push_back(y);
        }
      }
    }
    return Subset(S.order(), std::move(found));
  }

  FiniteSemigroup adjoin_identity(FiniteSemigroup const& S) {
    if (S.identity()) {
      return S;
    }
    std::size_t n = S.order();
    limits::check_order(n + 1, "adjoin_identity");
    std::vector<ElementId> flat((n + 1) * (n + 1));
    for (std::size_t i = 0; i <= n; ++i) {
      for (std::size_t j = 0; j <= n; ++j) {
        ElementId v;
        if (i == n) {
          v = static_cast<ElementId>(j);
        } else if (j == n) {
          v = static_cast<ElementId>(i);
        } else {
          v = S.product(static_cast<ElementId>(i), static_cast<ElementId>(j));
        }
        flat[i * (n + 1) + j] = v;
      }
    }
    auto T               = FiniteSemigroup::trusted(n + 1, std::move(flat));
    T._identity_adjoined = true;
    if (S.has_labels()) {
      auto labels = S.labels();
      labels.emplace_back("1");
      T._labels = std::move(labels);
    }
    if (S.generators()) {
      auto gens = *S.generators();
      gens.push_back(static_cast<ElementId>(n));
      T._generators = std::move(gens);
    }
    return T;
  }

  FiniteSemigroup adjoin_zero(FiniteSemigroup const& S) {
    std::size_t n = S.order();
    limits::check_order(n + 1, "adjoin_zero");
    std::vector<ElementId> flat((n + 1) * (n + 1), static_cast<ElementId>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        flat[i * (n + 1) + j] = S.product(static_cast<ElementId>(i), static_cast<ElementId>(j));
      }
    }
    auto T = FiniteSemigroup::trusted(n + 1, std::move(flat));
    if (S.has_labels()) {
      auto labels = S.labels();
      labels.emplace_back("0");
      T = T.with_labels(std::move(labels));
    }
    return T;
  }

  FiniteSemigroup direct_product(FiniteSemigroup const& S, FiniteSemigroup const& T) {
    std::size_t const m = S.order(), n = T.order();
    if (n != 0 && m > limits::order_cap() / n) {
      throw ResourceError("direct_product: order " + std::to_string(m) + " x "
                          + std::to_string(n) + " exceeds the cap "
                          + std::to_string(limits::order_cap()));
    }
    std::size_t const      N = m * n;
    std::vector<ElementId> flat(N * N);
    for (std::size_t a = 0; a < N; ++a) {
      for (std::size_t b = 0; b < N; ++b) {
        auto i = S.product(static_cast<ElementId>(a / n), static_cast<ElementId>(b / n));
        auto j = T.product(static_cast<ElementId>(a % n), static_cast<ElementId>(b % n));
        flat[a * N + b] = static_cast<ElementId>(i * n + j);
      }
    }
    auto P = FiniteSemigroup::trusted(N, std::move(flat));
    if (S.has_labels() || T.has_labels()) {
      std::vector<std::string> labels;
      labels.reserve(N);
      for (std::size_t a = 0; a < N; ++a) {
        labels.push_back("(" + S.label(static_cast<ElementId>(a / n)) + ","
                         + T.label(static_cast<ElementId>(a % n)) + ")");
      }
      P = P.with_labels(std::move(labels));
    }
    return P;
  }

  bool is_ideal(FiniteSemigroup const& S, Subset const& X) {
    if (X.empty()) {
      throw ArgumentError("is_ideal: subset must be non-empty");
    }
    for (auto x : X.members()) {
      for (ElementId s = 0; s < S.order(); ++s) {
        if (!X.contains(S.product(x, s)) || !X.contains(S.product(s, x))) {
          return false;
        }
      }
    }
    return true;
  }

  std::pair<FiniteSemigroup, HomMap> rees_quotient(FiniteSemigroup const& S, Subset const& I) {
    if (!is_ideal(S, I)) {
      throw ArgumentError("rees_quotient: the subset is not an ideal");
    }
    std::size_t const      n     = S.order();
    ElementId const        least = I.sorted().front();
    std::vector<ElementId> class_of(n);
    std::vector<ElementId> rep;
    ElementId              zero_class = 0;
    for (ElementId x = 0; x < n; ++x) {
      if (I.contains(x) && x != least) {
        class_of[x] = zero_class;
        continue;
      }
      class_of[x] = static_cast<ElementId>(rep.size());
      if (x == least) {
        zero_class = class_of[x];
      }
      rep.push_back(x);
    }
    std::size_t const      q = rep.size();
    std::vector<ElementId> flat(q * q);
    for (std::size_t a = 0; a < q; ++a) {
      for (std::size_t b = 0; b < q; ++b) {
        flat[a * q + b] = class_of[S.product(rep[a], rep[b])];
      }
    }
    auto Q = FiniteSemigroup::trusted(q, std::move(flat));
    if (S.has_labels()) {
      std::vector<std::string> labels;
      for (auto r : rep) {
        labels.push_back(r == least ? std::string("0") : S.label(r));
      }
      Q = Q.with_labels(std::move(labels));
    }
    return {std::move(Q), HomMap::trusted(std::move(class_of), q)};
  }

  std::variant<HomMap, HomViolation> check_hom(std::vector<ElementId> const& map,
                                               FiniteSemigroup const&        S,
                                               FiniteSemigroup const&        T) {
    if (map.size() != S.order()) {
      throw FormatError("check_hom: map has length " + std::to_string(map.size())
                        + ", expected " + std::to_string(S.order()));
    }
    for (auto v : map) {
      if (v >= T.order()) {
        throw FormatError("check_hom: image " + std::to_string(v) + " out of range");
      }
    }
    for (ElementId i = 0; i < S.order(); ++i) {
      for (ElementId j = 0; j < S.order(); ++j) {
        if (map[S.product(i, j)] != T.product(map[i], map[j])) {
          return HomViolation{i, j};
        }
      }
    }
    return HomMap::trusted(map, T.order());
  }

  std::vector<ElementId> generating_set(FiniteSemigroup const& S) {
    std::size_t const n = S.order();
    std::vector<bool> decomposable(n, false);
    for (ElementId i = 0; i < n; ++i) {
      for (ElementId j = 0; j < n; ++j) {
        decomposable[S.product(i, j)] = true;
      }
    }
    std::vector<ElementId> gens;
    for (ElementId x = 0; x < n; ++x) {
      if (!decomposable[x]) {
        gens.push_back(x);
      }
    }
    std::vector<bool> covered(n, false);
    auto              refresh = [&] {
      if (gens.empty()) {
        return;
      }
      auto C = closure(S, Subset(n, gens));
      std::fill(covered.begin(), covered.end(), false);
      for (auto x : C.members()) {
        covered[x] = true;
      }
    };
    refresh();
    for (ElementId x = 0; x < n; ++x) {
      if (!covered[x]) {
        gens.push_back(x);
        refresh();
      }
    }
    std::sort(gens.begin(), gens.end());
    return gens;
  }

  ////////////////////////////////////////////////////////////////////////
  // Text format
  ////////////////////////////////////////////////////////////////////////

  RawTable read_raw_table(std::istream& in) {
    std::string line;
    auto        next_line = [&](std::string& out) -> bool {
      while (std::getline(in, out)) {
        if (!out.empty() && out.back() == '\r') {
          out.pop_back();
        }
        if (out.find_first_not_of(" \t") != std::string::npos) {
          return true;
        }
      }
      return false;
    };
    if (!next_line(line)) {
      throw FormatError("table file is empty");
    }
    long long n = -1;
    {
      std::istringstream ss(line);
      if (!(ss >> n) || n <= 0) {
        throw FormatError("first line must be a positive order, got \"" + line + "\"");
      }
      std::string extra;
      if (ss >> extra) {
        throw FormatError("unexpected text after the order: \"" + extra + "\"");
      }
    }
    limits::check_order(static_cast<std::size_t>(n), "table file");
    Table rows;
    rows.reserve(static_cast<std::size_t>(n));
    for (long long i = 0; i < n; ++i) {
      if (!next_line(line)) {
        throw FormatError("table file ends after " + std::to_string(i) + " rows");
      }
      std::istringstream     ss(line);
      std::vector<ElementId> row;
      std::string            tok;
      while (ss >> tok) {
        long long v = 0;
        try {
          std::size_t pos = 0;
          v               = std::stoll(tok, &pos);
          if (pos != tok.size()) {
            throw FormatError("");
          }
        } catch (std::exception const&) {
          throw FormatError("bad table entry \"" + tok + "\" in row " + std::to_string(i));
        }
        if (v < 0 || v >= n) {
          throw FormatError("table entry " + tok + " out of range in row " + std::to_string(i));
        }
        row.push_back(static_cast<ElementId>(v));
      }
      rows.push_back(std::move(row));
    }
    RawTable raw;
    raw.rows = std::move(rows);
    auto& labels = raw.labels;
    auto& gens   = raw.generators;
    while (next_line(line)) {
      std::istringstream ss(line);
      std::string        kind;
      long long          k = -1;
      ss >> kind;
      if (!(ss >> k) || k < 0 || k >= n) {
        throw FormatError("bad trailing line \"" + line + "\"");
      }
      if (kind == "label") {
        std::string name;
        std::getline(ss >> std::ws, name);
        if (name.empty()) {
          throw FormatError("label line without a name: \"" + line + "\"");
        }
        if (labels.empty()) {
          labels.resize(static_cast<std::size_t>(n));
        }
        labels[static_cast<std::size_t>(k)] = name;
      } else if (kind == "gen") {
        gens.push_back(static_cast<ElementId>(k));
      } else {
        throw FormatError("unknown trailing line \"" + line + "\"");
      }
    }
    return raw;
  }

  FiniteSemigroup read_table(std::istream& in) {
    auto            raw = read_raw_table(in);
    FiniteSemigroup S(raw.rows);
    if (!raw.labels.empty()) {
      S = S.with_labels(std::move(raw.labels));
    }
    if (!raw.generators.empty()) {
      try {
        S = S.with_generators(std::move(raw.generators));
      } catch (ArgumentError const& e) {
        throw FormatError(e.what());
      }
    }
    return S;
  }

  RawTable read_raw_table_file(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
      throw ArgumentError("cannot open table file " + path);
    }
    return read_raw_table(in);
  }

  FiniteSemigroup read_table_file(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
      throw ArgumentError("cannot open table file " + path);
    }
    return read_table(in);
  }

  void write_table(std::ostream& out, FiniteSemigroup const& S) {
    std::size_t const n = S.order();
    out << n << '\n';
    for (ElementId i = 0; i < n; ++i) {
      for (ElementId j = 0; j < n; ++j) {
        out << (j == 0 ? "" : " ") << S.product(i, j);
      }
      out << '\n';
    }
    if (S.has_labels()) {
      for (ElementId i = 0; i < n; ++i) {
        if (!S.labels()[i].empty()) {
          out << "label " << i << ' ' << S.labels()[i] << '\n';
        }
      }
    }
    if (S.generators()) {
      for (auto g : *S.generators()) {
        out << "gen " << g << '\n';
      }
    }
  }

  void write_table_file(std::string const& path, FiniteSemigroup const& S) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
      throw ArgumentError("cannot write table file " + path);
    }
    write_table(out, S);
  }

  ////////////////////////////////////////////////////////////////////////
  // Standard examples
  ////////////////////////////////////////////////////////////////////////

  namespace {
    template <typename F>
    FiniteSemigroup from_rule(std::size_t n, F&& f) {
      if (n == 0) {
        throw ArgumentError("order must be positive");
      }
      limits::check_order(n, "builder");
      std::vector<ElementId> flat(n * n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          flat[i * n + j] = static_cast<ElementId>(f(i, j));
        }
      }
      return FiniteSemigroup::trusted(n, std::move(flat));
    }
  }  // namespace

  FiniteSemigroup cyclic_group(std::size_t n) {
    return from_rule(n, [n](std::size_t i, std::size_t j) { return (i + j) % n; });
  }

  FiniteSemigroup multiplicative_mod(std::size_t n) {
    return from_rule(n, [n](std::size_t i, std::size_t j) { return (i * j) % n; });
  }

  FiniteSemigroup left_zero_semigroup(std::size_t n) {
    return from_rule(n, [](std::size_t i, std::size_t) { return i; });
  }

  FiniteSemigroup null_semigroup(std::size_t n) {
    return from_rule(n, [](std::size_t, std::size_t) { return 0; });
  }

  FiniteSemigroup chain_semilattice(std::size_t n) {
    return from_rule(n, [](std::size_t i, std::size_t j) { return std::max(i, j); });
  }

  FiniteSemigroup monogenic(std::size_t index, std::size_t period) {
    if (index == 0 || period == 0) {
      throw ArgumentError("monogenic: index and period must be positive");
    }
    std::size_t const n = index + period - 1;
    // Exponents e >= index reduce to index + (e - index) mod period.
    auto reduce = [=](std::size_t e) {
      return e < index ? e : index + (e - index) % period;
    };
    return from_rule(n, [&](std::size_t i, std::size_t j) { return reduce(i + j + 2) - 1; });
  }

}  // namespace sepkit
