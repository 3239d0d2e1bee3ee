#include "sepkit/commutative.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <map>
#include <numeric>
#include <sstream>

#include <boost/dynamic_bitset.hpp>

#include "detail/union_find.hpp"

namespace sepkit {

  namespace {
    constexpr std::size_t npos = static_cast<std::size_t>(-1);

    std::size_t degree(ExpVec const& v) {
      return std::accumulate(v.begin(), v.end(), std::size_t{0});
    }

    bool is_zero(ExpVec const& v) {
      return std::all_of(v.begin(), v.end(), [](std::uint32_t c) { return c == 0; });
    }

    ExpVec add(ExpVec a, ExpVec const& b) {
      for (std::size_t i = 0; i < a.size(); ++i) {
        a[i] += b[i];
      }
      return a;
    }

    bool dominated_by(ExpVec const& small, ExpVec const& big) {
      for (std::size_t i = 0; i < small.size(); ++i) {
        if (small[i] > big[i]) {
          return false;
        }
      }
      return true;
    }

    bool graded_less(ExpVec const& a, ExpVec const& b) {
      auto da = degree(a), db = degree(b);
      return da != db ? da < db : a < b;
    }

    IntVector to_int(ExpVec const& v) {
      IntVector out;
      out.reserve(v.size());
      for (auto c : v) {
        out.emplace_back(c);
      }
      return out;
    }

    // Number of points of prod [0, bounds[i]], or npos past cap.
    std::size_t box_points(std::vector<std::uint32_t> const& bounds, std::size_t cap) {
      std::size_t total = 1;
      for (auto b : bounds) {
        std::size_t side = std::size_t{b} + 1;
        if (total > cap / side) {
          return npos;
        }
        total *= side;
      }
      return total;
    }

    // Calls f on every point of the box in lexicographic order.
    template <typename F>
    void for_each_point(std::vector<std::uint32_t> const& bounds, F&& f) {
      ExpVec p(bounds.size(), 0);
      while (true) {
        f(static_cast<ExpVec const&>(p));
        std::size_t i = p.size();
        while (i > 0) {
          --i;
          if (p[i] < bounds[i]) {
            ++p[i];
            break;
          }
          p[i] = 0;
          if (i == 0) {
            return;
          }
        }
        if (p.empty()) {
          return;
        }
      }
    }

    // Minimal non-zero members of a list that need not be upward closed.
    std::vector<ExpVec> minimal_nonzero(std::vector<ExpVec> members) {
      std::sort(members.begin(), members.end(), graded_less);
      std::vector<ExpVec> out;
      for (auto const& p : members) {
        if (is_zero(p)) {
          continue;
        }
        bool covered = std::any_of(out.begin(), out.end(),
                                   [&](ExpVec const& g) { return dominated_by(g, p); });
        if (!covered) {
          out.push_back(p);
        }
      }
      return out;
    }

    // HNF of the lattice spanned by the vectors, reduced in batches.
    IntMatrix lattice_basis(std::vector<ExpVec> const& vs, std::size_t dim) {
      IntMatrix basis;
      IntMatrix pending;
      for (auto const& v : vs) {
        if (is_zero(v)) {
          continue;
        }
        pending.push_back(to_int(v));
        if (pending.size() >= 4 * dim + 8) {
          pending.insert(pending.end(), basis.begin(), basis.end());
          basis = hermite_normal_form(std::move(pending), dim);
          pending.clear();
        }
      }
      pending.insert(pending.end(), basis.begin(), basis.end());
      return hermite_normal_form(std::move(pending), dim);
    }

    void require_commutative(FiniteSemigroup const& S, char const* what) {
      if (!S.is_commutative()) {
        throw ArgumentError(std::string(what) + ": the semigroup is not commutative");
      }
    }

    void require_element(FiniteSemigroup const& S, ElementId x, char const* what) {
      if (x >= S.order()) {
        throw ArgumentError(std::string(what) + ": element " + std::to_string(x)
                            + " out of range");
      }
    }

    void require_generates(FiniteSemigroup const& S, std::vector<ElementId> const& A, char const* what) {
      for (auto a : A) {
        require_element(S, a, what);
      }
      if (A.empty() || closure(S, Subset(S.order(), A)).size() != S.order()) {
        throw ArgumentError(std::string(what) + ": A does not generate the semigroup");
      }
    }

    // xS^1 for every x, as bitsets.
    std::vector<boost::dynamic_bitset<>> principal_right_ideals(FiniteSemigroup const& S) {
      std::size_t const                    n = S.order();
      std::vector<boost::dynamic_bitset<>> out(n, boost::dynamic_bitset<>(n));
      for (ElementId x = 0; x < n; ++x) {
        out[x].set(x);
        for (ElementId y = 0; y < n; ++y) {
          out[x].set(S.product(x, y));
        }
      }
      return out;
    }

    std::string int_label(std::int64_t v) {
      return std::to_string(v);
    }

    std::string sym_label(SymElement const& v) {
      if (v.size() == 1) {
        return int_label(v[0]);
      }
      std::string out = "(";
      for (std::size_t i = 0; i < v.size(); ++i) {
        out += (i ? "," : "") + int_label(v[i]);
      }
      return out + ")";
    }

    void check_symbolic_element(SymbolicAmbient a, SymElement const& v, char const* what) {
      std::size_t const dim = a == SymbolicAmbient::naturals_times_integers ? 2 : 1;
      if (v.size() != dim) {
        throw ArgumentError(std::string(what) + ": element " + sym_label(v) + " has the wrong dimension for "
                            + symbolic_name(a));
      }
      if (a != SymbolicAmbient::integers && v[0] < 1) {
        throw ArgumentError(std::string(what) + ": " + sym_label(v) + " is not an element of "
                            + symbolic_name(a));
      }
    }
  }  // namespace

  std::string monomial_string(ExpVec const& v) {
    if (is_zero(v)) {
      return "1";
    }
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] == 0) {
        continue;
      }
      std::string name = v.size() <= 26 ? std::string(1, static_cast<char>('a' + i))
                                        : "x" + std::to_string(i + 1);
      if (!out.empty() && v.size() > 26) {
        out += ' ';
      }
      out += name;
      if (v[i] > 1) {
        out += "^" + std::to_string(v[i]);
      }
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Presentations
  ////////////////////////////////////////////////////////////////////////

  void CommPresentation::validate() const {
    if (k == 0) {
      throw FormatError("presentation: need at least one generator");
    }
    for (std::size_t r = 0; r < relations.size(); ++r) {
      for (auto const* side : {&relations[r].first, &relations[r].second}) {
        if (side->size() != k) {
          throw FormatError("presentation: relation " + std::to_string(r + 1) + " has a side of length "
                            + std::to_string(side->size()) + ", expected " + std::to_string(k));
        }
        if (degree(*side) == 0) {
          throw FormatError("presentation: relation " + std::to_string(r + 1)
                            + " has a side of degree 0");
        }
      }
    }
  }

  CommPresentation read_presentation(std::istream& in) {
    CommPresentation pres;
    bool             have_gens = false;
    std::string      line;
    std::size_t      lineno = 0;
    auto             fail   = [&](std::string const& msg) {
      throw FormatError("presentation line " + std::to_string(lineno) + ": " + msg);
    };
    auto read_vec = [&](std::istringstream& ss, ExpVec& out, bool stop_at_eq) {
      std::string tok;
      while (ss >> tok) {
        if (tok == "=") {
          if (!stop_at_eq) {
            fail("unexpected '='");
          }
          return;
        }
        if (tok.empty() || !std::all_of(tok.begin(), tok.end(), ::isdigit) || tok.size() > 9) {
          fail("bad exponent '" + tok + "'");
        }
        out.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
      }
      if (stop_at_eq) {
        fail("missing '='");
      }
    };
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') {
        line.pop_back();
      }
      std::istringstream ss(line);
      std::string        word;
      if (!(ss >> word) || word[0] == '#') {
        continue;
      }
      if (word == "gens") {
        long long k = 0;
        if (have_gens || !(ss >> k) || k < 1) {
          fail("expected 'gens k' with k >= 1, once");
        }
        std::string extra;
        if (ss >> extra) {
          fail("trailing text after generator count");
        }
        pres.k    = static_cast<std::size_t>(k);
        have_gens = true;
      } else if (word == "rel") {
        if (!have_gens) {
          fail("'rel' before 'gens'");
        }
        ExpVec lhs, rhs;
        read_vec(ss, lhs, true);
        read_vec(ss, rhs, false);
        pres.relations.emplace_back(std::move(lhs), std::move(rhs));
      } else {
        fail("unknown keyword '" + word + "'");
      }
    }
    if (!have_gens) {
      throw FormatError("presentation: missing 'gens k' line");
    }
    pres.validate();
    return pres;
  }

  CommPresentation read_presentation_file(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
      throw ArgumentError("cannot open presentation file '" + path + "'");
    }
    return read_presentation(in);
  }

  ////////////////////////////////////////////////////////////////////////
  // NFEngine
  ////////////////////////////////////////////////////////////////////////

  NFEngine::NFEngine(CommPresentation pres, std::uint32_t bound)
      : _pres(std::move(pres)), _bound(bound) {
    _pres.validate();
    for (auto const& [l, r] : _pres.relations) {
      for (std::size_t i = 0; i < _pres.k; ++i) {
        if (l[i] > bound || r[i] > bound) {
          throw ArgumentError("enumerate: bound " + std::to_string(bound)
                              + " is below an exponent used in the relations");
        }
      }
    }
    _box_size = box_points(std::vector<std::uint32_t>(_pres.k, bound), box_cap);
    if (_box_size == npos) {
      throw ResourceError("enumerate: box [0, " + std::to_string(bound) + "]^" + std::to_string(_pres.k)
                          + " exceeds " + std::to_string(box_cap) + " points");
    }

    std::size_t const        side = std::size_t{bound} + 1;
    std::vector<std::size_t> stride(_pres.k, 1);
    for (std::size_t i = _pres.k - 1; i-- > 0;) {
      stride[i] = stride[i + 1] * side;
    }
    auto coord = [&](std::size_t idx, std::size_t i) { return (idx / stride[i]) % side; };

    // Relations, closed under translation inside the box.  Whenever two
    // points merge, their translates are merged too; this keeps every class
    // a set of vectors connected by relation applications.
    detail::UnionFind                                uf(_box_size);
    std::vector<std::pair<std::size_t, std::size_t>> queue;
    for (auto const& [l, r] : _pres.relations) {
      queue.emplace_back(*encode(l), *encode(r));
    }
    while (!queue.empty()) {
      auto [a, b] = queue.back();
      queue.pop_back();
      if (!uf.unite(a, b)) {
        continue;
      }
      for (std::size_t i = 0; i < _pres.k; ++i) {
        if (coord(a, i) < bound && coord(b, i) < bound) {
          queue.emplace_back(a + stride[i], b + stride[i]);
        }
      }
    }
    _root = uf.labels();
    try_certify();

    // Canonical representatives: points are visited in lexicographic order,
    // so the first point seen for a class is its least member.
    _element_of_root.assign(_box_size, npos);
    std::vector<std::size_t> reps;
    auto                     admit = [&](std::size_t idx) {
      std::size_t r = _root[idx];
      if (r != 0 && _element_of_root[r] == npos) {
        _element_of_root[r] = 0;
        reps.push_back(idx);
      }
    };
    if (_certificate) {
      std::vector<std::uint32_t> top(_pres.k);
      for (std::size_t i = 0; i < _pres.k; ++i) {
        top[i] = _certificate->index[i] + _certificate->period[i] - 1;
      }
      // Mark the classes that meet the reduced box first; only those are
      // elements.  Then take least members over the whole explored box.
      std::vector<bool> live(_box_size, false);
      for_each_point(top, [&](ExpVec const& p) { live[_root[*encode(p)]] = true; });
      for (std::size_t idx = 0; idx < _box_size; ++idx) {
        if (live[_root[idx]]) {
          admit(idx);
        }
      }
    } else {
      for (std::size_t idx = 0; idx < _box_size; ++idx) {
        admit(idx);
      }
    }
    for (auto idx : reps) {
      _elements.push_back(decode(idx));
    }
    // reps are already in lexicographic order of their least members.
    for (std::size_t pos = 0; pos < reps.size(); ++pos) {
      _element_of_root[_root[reps[pos]]] = pos;
    }
    if (_certificate) {
      _certificate->element_count = _elements.size();
    }
  }

  std::optional<std::size_t> NFEngine::encode(ExpVec const& v) const {
    if (v.size() != _pres.k) {
      return std::nullopt;
    }
    std::size_t idx = 0;
    for (auto c : v) {
      if (c > _bound) {
        return std::nullopt;
      }
      idx = idx * (std::size_t{_bound} + 1) + c;
    }
    return idx;
  }

  ExpVec NFEngine::decode(std::size_t idx) const {
    ExpVec v(_pres.k);
    for (std::size_t i = _pres.k; i-- > 0;) {
      v[i] = static_cast<std::uint32_t>(idx % (std::size_t{_bound} + 1));
      idx /= std::size_t{_bound} + 1;
    }
    return v;
  }

  ExpVec NFEngine::reduce(ExpVec v) const {
    for (std::size_t i = 0; i < v.size(); ++i) {
      std::uint32_t p = _certificate->index[i], r = _certificate->period[i];
      if (v[i] >= p + r) {
        v[i] = p + (v[i] - p) % r;
      }
    }
    return v;
  }

  // The certificate is accepted when each generator has a periodic power
  // inside the box and the classes meeting the reduced box R (every
  // coordinate below index + period) carry well-defined, commuting
  // successor maps T_i that respect the relations.  The induced action of
  // N_0^k on those classes is then a semigroup congruence containing the
  // relations, and each class contains only truly equal vectors, so the
  // classes meeting R are exactly the elements.
  void NFEngine::try_certify() {
    std::size_t const k = _pres.k;
    FiniteCertificate cert;
    for (std::size_t i = 0; i < k; ++i) {
      std::map<std::size_t, std::uint32_t> seen;
      ExpVec                               e(k, 0);
      bool                                 found = false;
      for (std::uint32_t q = 1; q <= _bound && !found; ++q) {
        e[i]   = q;
        auto c = _root[*encode(e)];
        if (auto it = seen.find(c); it != seen.end()) {
          cert.index.push_back(it->second);
          cert.period.push_back(q - it->second);
          found = true;
        } else {
          seen.emplace(c, q);
        }
      }
      if (!found) {
        return;
      }
    }
    _certificate = cert;  // reduce() reads it; cleared again on failure

    std::vector<std::uint32_t> top(k);
    for (std::size_t i = 0; i < k; ++i) {
      top[i] = cert.index[i] + cert.period[i] - 1;
    }
    std::vector<std::map<std::size_t, std::size_t>> T(k);
    bool                                            ok = true;
    for_each_point(top, [&](ExpVec const& u) {
      if (!ok) {
        return;
      }
      auto cu = _root[*encode(u)];
      for (std::size_t i = 0; i < k && ok; ++i) {
        ExpVec w = u;
        ++w[i];
        auto cw = _root[*encode(w)];
        auto wr = reduce(w);
        auto cr = _root[*encode(wr)];
        if (cw != cr) {
          ok = false;
          break;
        }
        auto [it, inserted] = T[i].emplace(cu, cr);
        if (!inserted && it->second != cr) {
          ok = false;
        }
      }
    });
    if (ok) {
      for (auto const& [c, _] : T[0]) {
        for (std::size_t i = 0; i < k && ok; ++i) {
          for (std::size_t j = i + 1; j < k && ok; ++j) {
            ok = T[j].at(T[i].at(c)) == T[i].at(T[j].at(c));
          }
        }
      }
    }
    if (ok) {
      for (auto const& [l, r] : _pres.relations) {
        if (_root[*encode(reduce(l))] != _root[*encode(reduce(r))]) {
          ok = false;
          break;
        }
      }
    }
    if (!ok) {
      _certificate.reset();
    }
  }

  std::optional<std::size_t> NFEngine::element_of(ExpVec const& v) const {
    if (v.size() != _pres.k || is_zero(v)) {
      return std::nullopt;
    }
    std::optional<std::size_t> idx = _certificate ? encode(reduce(v)) : encode(v);
    if (!idx) {
      return std::nullopt;
    }
    auto pos = _element_of_root[_root[*idx]];
    return pos == npos ? std::nullopt : std::optional<std::size_t>(pos);
  }

  bool NFEngine::provably_equal(ExpVec const& u, ExpVec const& v) const {
    if (u == v) {
      return true;
    }
    if (_certificate) {
      auto a = element_of(u), b = element_of(v);
      return a && b && *a == *b;
    }
    auto a = encode(u), b = encode(v);
    return a && b && _root[*a] == _root[*b];
  }

  FiniteSemigroup NFEngine::to_semigroup() const {
    if (!_certificate) {
      throw ArgumentError("to_semigroup: no finiteness certificate within bound "
                          + std::to_string(_bound));
    }
    std::size_t const n = _elements.size();
    limits::check_order(n, "presented semigroup");
    Table rows(n, std::vector<ElementId>(n));
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        rows[a][b] = static_cast<ElementId>(*element_of(add(_elements[a], _elements[b])));
      }
    }
    std::vector<std::string> labels;
    for (auto const& e : _elements) {
      labels.push_back(monomial_string(e));
    }
    std::vector<ElementId> gens;
    for (std::size_t i = 0; i < _pres.k; ++i) {
      ExpVec e(_pres.k, 0);
      e[i]   = 1;
      auto g = static_cast<ElementId>(*element_of(e));
      if (std::find(gens.begin(), gens.end(), g) == gens.end()) {
        gens.push_back(g);
      }
    }
    return FiniteSemigroup(rows).with_labels(std::move(labels)).with_generators(std::move(gens));
  }

  EnumerationResult enumerate(CommPresentation const& pres, std::uint32_t bound) {
    NFEngine engine(pres, bound);
    return {engine.elements(), engine.certificate()};
  }

  WordProblemResult word_problem(CommPresentation const& pres,
                                 ExpVec const&           u,
                                 ExpVec const&           v,
                                 std::uint32_t           bound) {
    pres.validate();
    for (auto const* w : {&u, &v}) {
      if (w->size() != pres.k || degree(*w) == 0) {
        throw ArgumentError("word_problem: words must have length " + std::to_string(pres.k)
                            + " and positive degree");
      }
    }
    if (u == v) {
      return {WordVerdict::equal, "identical words", std::nullopt};
    }
    NFEngine engine(pres, bound);
    if (engine.certificate()) {
      bool eq = engine.provably_equal(u, v);
      return {eq ? WordVerdict::equal : WordVerdict::distinct,
              eq ? "same normal form (finite, certified)" : "different normal forms (finite, certified)",
              std::nullopt};
    }
    if (engine.provably_equal(u, v)) {
      return {WordVerdict::equal, "joined by relation applications inside the box", std::nullopt};
    }
    // Weight vectors preserved by every relation form the integer kernel of
    // the relation differences; any of them separating u and v proves them
    // distinct.
    IntMatrix diffs;
    for (auto const& [l, r] : pres.relations) {
      IntVector d(pres.k);
      for (std::size_t i = 0; i < pres.k; ++i) {
        d[i] = BigInt(l[i]) - BigInt(r[i]);
      }
      diffs.push_back(std::move(d));
    }
    IntVector uv(pres.k);
    for (std::size_t i = 0; i < pres.k; ++i) {
      uv[i] = BigInt(u[i]) - BigInt(v[i]);
    }
    for (auto const& w : integer_kernel(diffs, pres.k)) {
      if (dot(w, uv) != 0) {
        return {WordVerdict::distinct, "separated by a linear invariant", w};
      }
    }
    return {WordVerdict::unknown, "no certificate and no separating linear invariant", std::nullopt};
  }

  ////////////////////////////////////////////////////////////////////////
  // Archimedean decomposition and stabiliser characterisation
  ////////////////////////////////////////////////////////////////////////

  ArchDecomposition archimedean_decomposition(FiniteSemigroup const& S) {
    require_commutative(S, "archimedean_decomposition");
    std::size_t const n      = S.order();
    auto const        ideals = principal_right_ideals(S);

    // below[a][b]: some power of a lies in bS^1, i.e. H_{a^n} <= H_b.
    std::vector<boost::dynamic_bitset<>> below(n, boost::dynamic_bitset<>(n));
    for (ElementId a = 0; a < n; ++a) {
      boost::dynamic_bitset<> powers(n);
      for (ElementId p = a; !powers.test(p); p = S.product(p, a)) {
        powers.set(p);
      }
      for (ElementId b = 0; b < n; ++b) {
        below[a][b] = powers.intersects(ideals[b]);
      }
    }
    detail::UnionFind uf(n);
    for (ElementId a = 0; a < n; ++a) {
      for (ElementId b = a + 1; b < n; ++b) {
        if (below[a][b] && below[b][a]) {
          uf.unite(a, b);
        }
      }
    }
    Congruence   comp(uf.labels());
    auto         classes = comp.classes();
    std::size_t  q       = comp.index();
    for (auto const& C : classes) {
      std::size_t idempotents = 0;
      for (auto a : C) {
        idempotents += S.is_idempotent(a);
        for (auto b : C) {
          if (!below[a][b] || comp.class_of(S.product(a, b)) != comp.class_of(a)) {
            throw InternalError("archimedean component is not an archimedean subsemigroup");
          }
        }
      }
      if (idempotents > 1) {
        throw InternalError("archimedean component with more than one idempotent");
      }
    }
    std::vector<ElementId> flat(q * q);
    for (std::size_t i = 0; i < q; ++i) {
      for (std::size_t j = 0; j < q; ++j) {
        auto value = comp.class_of(S.product(classes[i][0], classes[j][0]));
        for (auto a : classes[i]) {
          for (auto b : classes[j]) {
            if (comp.class_of(S.product(a, b)) != value) {
              throw InternalError("archimedean components do not form a semilattice");
            }
          }
        }
        flat[i * q + j] = static_cast<ElementId>(value);
      }
    }
    auto Y = FiniteSemigroup::trusted(q, std::move(flat));
    for (ElementId i = 0; i < q; ++i) {
      if (!Y.is_idempotent(i)) {
        throw InternalError("archimedean quotient is not a semilattice");
      }
    }
    if (!Y.is_commutative()) {
      throw InternalError("archimedean quotient is not commutative");
    }
    return {std::move(Y), comp.classes_vector(), std::move(classes)};
  }

  bool stab_characterization_check(FiniteSemigroup const&        S,
                                   std::vector<ElementId> const& H,
                                   ElementId                     s) {
    require_commutative(S, "stab_characterization_check");
    require_element(S, s, "stab_characterization_check");
    auto green = green_relations(S);
    static_cast<void>(green.hclass_index(H));  // ArgumentError unless H is an H-class
    auto const ideals = principal_right_ideals(S);
    if (!ideals[s].test(H.front())) {
      throw ArgumentError("stab_characterization_check: H_s is not above H");
    }
    auto const             stab = right_stabilizer(S, H);
    FiniteSemigroup const& M    = stab.monoid;
    std::vector<ElementId> power_set;
    for (ElementId x = 0; x < M.order(); ++x) {
      bool      ok = true;
      ElementId y  = s;
      for (std::size_t n = 1; n <= S.order() + 1 && ok; ++n) {
        y  = M.product(y, x);
        ok = ideals[y].test(H.front());
      }
      if (ok) {
        power_set.push_back(x);
      }
    }
    return Subset(M.order(), power_set) == stab.members;
  }

  ////////////////////////////////////////////////////////////////////////
  // Kublanovskii-Lesohin parameters
  ////////////////////////////////////////////////////////////////////////

  std::string symbolic_name(SymbolicAmbient a) {
    switch (a) {
      case SymbolicAmbient::integers:
        return "Z";
      case SymbolicAmbient::naturals:
        return "N";
      case SymbolicAmbient::naturals_times_integers:
        return "NxZ";
    }
    return "?";
  }

  std::optional<SymbolicAmbient> parse_symbolic(std::string const& name) {
    std::string low;
    for (char c : name) {
      low += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    if (low == "z") {
      return SymbolicAmbient::integers;
    }
    if (low == "n") {
      return SymbolicAmbient::naturals;
    }
    if (low == "nxz" || low == "n*z" || low == "n×z") {
      return SymbolicAmbient::naturals_times_integers;
    }
    return std::nullopt;
  }

  KLReport kl_parameters(FiniteSemigroup const&        S,
                         ElementId                     s,
                         std::vector<ElementId> const& A,
                         std::uint32_t                 bound) {
    require_commutative(S, "kl_parameters");
    require_element(S, s, "kl_parameters");
    require_generates(S, A, "kl_parameters");

    auto const  green = green_relations(S);
    auto const& Hs    = green.h_classes[green.h_of[s]];
    auto const  stab  = right_stabilizer(S, Hs);

    KLReport report;
    report.element = S.label(s);
    for (auto a : A) {
      report.generators.push_back(S.label(a));
    }
    std::vector<ElementId> C;
    for (std::size_t i = 0; i < A.size(); ++i) {
      if (stab.members.contains(A[i])) {
        report.c_s.push_back(i);
        C.push_back(A[i]);
      }
    }
    std::size_t const k = C.size();
    report.k_s          = k;
    // With |H_s| in every coordinate the box holds |H_s| e_i and a complete
    // set of coset representatives of W_s's group, so the lattice is exact.
    std::uint32_t const B = std::max<std::uint32_t>(bound, static_cast<std::uint32_t>(Hs.size()));
    report.box_bound      = B;
    std::vector<std::uint32_t> bounds(k, B);
    if (box_points(bounds, NFEngine::box_cap) == npos) {
      throw ResourceError("kl_parameters: search box [0, " + std::to_string(B) + "]^" + std::to_string(k)
                          + " is too large");
    }

    // Depth-first over the box carrying s * prod c_i^{p_i}.
    std::vector<ExpVec> members;
    ExpVec              p(k, 0);
    auto                dfs = [&](auto&& self, std::size_t i, ElementId value) -> void {
      if (i == k) {
        if (value == s) {
          members.push_back(p);
        }
        return;
      }
      for (std::uint32_t e = 0; e <= B; ++e) {
        p[i] = e;
        self(self, i + 1, value);
        value = S.product(value, C[i]);
      }
      p[i] = 0;
    };
    dfs(dfs, 0, s);

    report.w_s_gens                = minimal_nonzero(members);
    report.g_s_basis               = lattice_basis(members, k);
    report.m_s                     = report.g_s_basis.size();
    report.strongly_separable_at_s = report.m_s == report.k_s;
    report.exact                   = true;
    return report;
  }

  KLReport kl_parameters(SymbolicAmbient                ambient,
                         SymElement const&              s,
                         std::vector<SymElement> const& A,
                         std::uint32_t                  bound) {
    check_symbolic_element(ambient, s, "kl_parameters");
    if (A.empty()) {
      throw ArgumentError("kl_parameters: empty generating set");
    }
    for (auto const& a : A) {
      check_symbolic_element(ambient, a, "kl_parameters");
    }
    KLReport report;
    report.element   = sym_label(s);
    report.box_bound = bound;
    for (auto const& a : A) {
      report.generators.push_back(sym_label(a));
    }

    switch (ambient) {
      case SymbolicAmbient::integers: {
        bool          pos = false, neg = false;
        std::int64_t  g   = 0;
        for (auto const& a : A) {
          pos = pos || a[0] > 0;
          neg = neg || a[0] < 0;
          g   = std::gcd(g, a[0]);
        }
        if (!pos || !neg || g != 1) {
          throw ArgumentError("kl_parameters: A does not generate Z (need both signs and gcd 1)");
        }
        // Z is a group: Stab(H_s) is everything and W_s is the set of
        // non-negative solutions of sum a_i p_i = 0.  That set contains a
        // strictly positive vector, so it generates the whole kernel lattice.
        std::size_t const k = A.size();
        report.c_s.resize(k);
        std::iota(report.c_s.begin(), report.c_s.end(), 0);
        report.k_s = k;
        IntMatrix row{IntVector(k)};
        for (std::size_t i = 0; i < k; ++i) {
          row[0][i] = A[i][0];
        }
        report.g_s_basis = integer_kernel(row, k);
        report.m_s       = report.g_s_basis.size();

        std::vector<std::uint32_t> bounds(k, bound);
        if (box_points(bounds, NFEngine::box_cap) == npos) {
          throw ResourceError("kl_parameters: search box too large");
        }
        std::vector<ExpVec> members;
        for_each_point(bounds, [&](ExpVec const& p) {
          BigInt total = 0;
          for (std::size_t i = 0; i < k; ++i) {
            total += BigInt(A[i][0]) * p[i];
          }
          if (total == 0) {
            members.push_back(p);
          }
        });
        report.w_s_gens = minimal_nonzero(members);
        report.note     = "G_s is the full kernel of (a_1, ..., a_k); W_s generators listed up to the bound";
        break;
      }
      case SymbolicAmbient::naturals: {
        bool has_one = std::any_of(A.begin(), A.end(), [](SymElement const& a) { return a[0] == 1; });
        if (!has_one) {
          throw ArgumentError("kl_parameters: A does not generate N (1 is missing)");
        }
        report.note = "Stab(H_s) contains only the adjoined identity";
        break;
      }
      case SymbolicAmbient::naturals_times_integers:
        report.note =
            "N x Z is not finitely generated, so A is not required to generate it; "
            "Stab(H_s) contains only the adjoined identity";
        break;
    }
    report.strongly_separable_at_s = report.m_s == report.k_s;
    report.exact                   = true;
    return report;
  }

  ////////////////////////////////////////////////////////////////////////
  // H-class finiteness
  ////////////////////////////////////////////////////////////////////////

  HClassFiniteness hclass_finiteness(FiniteSemigroup const&        S,
                                     ElementId                     s,
                                     std::vector<ElementId> const& A,
                                     std::uint32_t) {
    require_commutative(S, "hclass_finiteness");
    require_element(S, s, "hclass_finiteness");
    require_generates(S, A, "hclass_finiteness");
    auto green = green_relations(S);
    HClassFiniteness out;
    out.kind   = HClassFiniteness::Kind::finite;
    out.size   = green.h_classes[green.h_of[s]].size();
    out.reason = "finite ambient";
    return out;
  }

  HClassFiniteness hclass_finiteness(SymbolicAmbient                ambient,
                                     SymElement const&              s,
                                     std::vector<SymElement> const& A,
                                     std::uint32_t                  bound) {
    auto             report = kl_parameters(ambient, s, A, bound);
    HClassFiniteness out;
    switch (ambient) {
      case SymbolicAmbient::integers:
        out.kind   = HClassFiniteness::Kind::infinite;
        out.reason = "m_s = " + std::to_string(report.m_s) + " < k_s = " + std::to_string(report.k_s);
        break;
      case SymbolicAmbient::naturals:
        out.kind   = HClassFiniteness::Kind::finite;
        out.size   = 1;
        out.reason = "N is H-trivial";
        break;
      case SymbolicAmbient::naturals_times_integers:
        out.kind   = HClassFiniteness::Kind::infinite;
        out.reason = "the H-class of (a, b) is {a} x Z";
        break;
    }
    out.witness = std::move(report);
    return out;
  }

  HClassFiniteness hclass_finiteness(CommPresentation const& pres,
                                     ExpVec const&           s,
                                     std::uint32_t           bound) {
    if (s.size() != pres.k || degree(s) == 0) {
      throw ArgumentError("hclass_finiteness: element must have length " + std::to_string(pres.k)
                          + " and positive degree");
    }
    NFEngine         engine(pres, bound);
    HClassFiniteness out;
    if (!engine.certificate()) {
      out.kind   = HClassFiniteness::Kind::unknown;
      out.reason = "no finiteness certificate within bound " + std::to_string(bound);
      return out;
    }
    auto S     = engine.to_semigroup();
    auto green = green_relations(S);
    auto x     = static_cast<ElementId>(*engine.element_of(s));
    out.kind   = HClassFiniteness::Kind::finite;
    out.size   = green.h_classes[green.h_of[x]].size();
    out.reason = "certified finite presentation";
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Dickson generators
  ////////////////////////////////////////////////////////////////////////

  DicksonResult dickson_generators(MembershipOracle const&           oracle,
                                   std::vector<std::uint32_t> const& bounds) {
    std::size_t const total = box_points(bounds, NFEngine::box_cap);
    if (total == npos) {
      throw ResourceError("dickson_generators: box too large");
    }
    std::size_t const        m = bounds.size();
    std::vector<std::size_t> stride(m, 1);
    for (std::size_t i = m; i-- > 1;) {
      stride[i - 1] = stride[i] * (std::size_t{bounds[i]} + 1);
    }
    std::vector<bool> in(total);
    std::vector<ExpVec> points;
    points.reserve(total);
    for_each_point(bounds, [&](ExpVec const& p) {
      in[points.size()] = oracle(p);
      points.push_back(p);
    });

    DicksonResult out;
    for (std::size_t idx = 0; idx < total; ++idx) {
      if (!in[idx]) {
        continue;
      }
      auto const& p       = points[idx];
      bool        minimal = true;
      for (std::size_t i = 0; i < m; ++i) {
        if (p[i] < bounds[i] && !in[idx + stride[i]]) {
          throw ArgumentError("dickson_generators: oracle is not upward closed at "
                              + monomial_string(p));
        }
        if (p[i] > 0 && in[idx - stride[i]]) {
          minimal = false;
        }
      }
      if (minimal) {
        out.generators.push_back(p);
        for (std::size_t i = 0; i < m; ++i) {
          out.interior = out.interior && p[i] < bounds[i];
        }
      }
    }
    std::sort(out.generators.begin(), out.generators.end(), graded_less);
    return out;
  }

  DicksonResult dickson_generators(MembershipOracle const& oracle, std::size_t m, std::uint32_t bound) {
    return dickson_generators(oracle, std::vector<std::uint32_t>(m, bound));
  }

  ////////////////////////////////////////////////////////////////////////
  // The separating congruence
  ////////////////////////////////////////////////////////////////////////

  SeparatingCongruence separating_congruence(FiniteSemigroup const& S, ElementId h) {
    require_commutative(S, "separating_congruence");
    require_element(S, h, "separating_congruence");

    SeparatingCongruence out{h, false, false, {}, {}, {}, {}, {}, 0, 0, 0, {},
                             Congruence::equality(S.order()), S, false};

    auto const green  = green_relations(S);
    auto const hidx   = green.h_of[h];
    auto const H      = green.h_classes[hidx];
    auto const order  = hclass_order(S);
    out.hclass_size   = H.size();
    out.group_case    = green.group_flags[hidx];

    // I(H): union of the H-classes not above H.
    for (ElementId x = 0; x < S.order(); ++x) {
      if (!order(hidx, green.h_of[x])) {
        out.ideal.push_back(x);
      }
    }
    out.rees_reduced = !out.ideal.empty();
    if (!out.group_case && !out.rees_reduced) {
      throw InternalError("separating_congruence: non-group H-class is minimal");
    }

    // Work in Q = S / I(H) (Q = S when H is minimal).
    FiniteSemigroup        Q  = S;
    std::vector<ElementId> pi(S.order());
    std::iota(pi.begin(), pi.end(), 0);
    if (out.rees_reduced) {
      auto [RQ, proj] = rees_quotient(S, Subset(S.order(), out.ideal));
      Q               = std::move(RQ);
      pi              = proj.images();
    }
    auto const  gQ   = green_relations(Q);
    auto const& HQ   = gQ.h_classes[gQ.h_of[pi[h]]];
    auto const  stab = right_stabilizer(Q, HQ);
    auto const& M    = stab.monoid;  // Q^1
    ElementId const one = *M.identity();

    std::vector<ElementId> gens = S.generators() ? *S.generators() : generating_set(S);
    for (auto g : gens) {
      (stab.members.contains(pi[g]) ? out.x_gens : out.y_gens).push_back(g);
    }

    std::size_t const m = out.x_gens.size();
    if (m == 0) {
      // S = <Y> is finite and the equality congruence already isolates h.
      out.congruence = Congruence::equality(S.order());
      out.quotient   = S;
      out.singleton  = true;
      return out;
    }

    // phi(w) for w over X, evaluated in Q^1 through power tables.  Each
    // table holds x^0 .. x^(index + period - 1); minimal ideal generators
    // never need a larger exponent, so that is the Dickson box.
    std::vector<std::uint32_t>          bounds(m), cycle_start(m);
    std::vector<std::vector<ElementId>> powers(m);
    for (std::size_t i = 0; i < m; ++i) {
      ElementId const                    x = pi[out.x_gens[i]];
      std::map<ElementId, std::uint32_t> seen;
      ElementId                          cur = one;
      for (std::uint32_t e = 0;; ++e) {
        if (e > 0) {
          auto [it, fresh] = seen.emplace(cur, e);
          if (!fresh) {
            bounds[i]      = e;
            cycle_start[i] = it->second;
            break;
          }
        }
        powers[i].push_back(cur);
        cur = M.product(cur, x);
      }
    }
    auto phi = [&](ExpVec const& w) {
      ElementId v = one;
      for (std::size_t i = 0; i < m; ++i) {
        std::uint32_t e = w[i];
        if (e >= bounds[i]) {
          e = cycle_start[i] + (e - cycle_start[i]) % (bounds[i] - cycle_start[i]);
        }
        v = M.product(v, powers[i][e]);
      }
      return v;
    };
    Subset const Hset(M.order(), HQ);

    std::uint32_t max_alpha = 0;
    auto          absorb    = [&](DicksonResult const& d) {
      if (!d.interior) {
        throw InternalError("separating_congruence: ideal generator on the search boundary");
      }
      for (auto const& z : d.generators) {
        for (auto c : z) {
          max_alpha = std::max(max_alpha, c);
        }
      }
      out.ideal_generators.push_back(d.generators);
    };

    if (!out.group_case) {
      // Case 1: U = <Y> inside Q, and I_u = {w : u phi(w) in H}.
      std::vector<ElementId> yq;
      for (auto y : out.y_gens) {
        yq.push_back(pi[y]);
      }
      if (yq.empty()) {
        throw InternalError("separating_congruence: no generator outside Stab(H) in the non-group case");
      }
      auto U = closure(Q, Subset(Q.order(), yq)).sorted();
      for (auto u : U) {
        auto d = dickson_generators([&](ExpVec const& w) { return Hset.contains(M.product(u, phi(w))); },
                                    bounds);
        if (d.generators.empty()) {
          continue;
        }
        // Report u by its least preimage in S.
        auto pre = std::find(pi.begin(), pi.end(), u);
        out.u_prime.push_back(static_cast<ElementId>(pre - pi.begin()));
        absorb(d);
      }
    } else {
      // Case 2: J = {w : phi(w) in H}.
      absorb(dickson_generators([&](ExpVec const& w) { return Hset.contains(phi(w)); }, bounds));
    }

    out.max_exponent = max_alpha;
    // x^0 is not an element of S, so the exponent is at least 1.
    out.n = std::max<std::uint32_t>(1, max_alpha);
    for (auto x : out.x_gens) {
      out.pairs.emplace_back(S.power(x, out.n), S.power(x, out.n + H.size()));
    }
    out.congruence = congruence_from_pairs(S, out.pairs);
    out.quotient   = quotient(S, out.congruence).first;
    out.singleton  = true;
    for (ElementId x = 0; x < S.order(); ++x) {
      if (x != h && out.congruence.related(x, h)) {
        out.singleton = false;
      }
    }
    if (!out.singleton) {
      throw InternalError("separating_congruence: the class of " + S.label(h) + " is not a singleton");
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Classification
  ////////////////////////////////////////////////////////////////////////

  SeparabilityVerdict theorem43_classify(FiniteSemigroup const& S, std::size_t certificate_cap) {
    require_commutative(S, "theorem43_classify");
    SeparabilityVerdict v;
    v.ambient                   = "finite commutative semigroup of order " + std::to_string(S.order());
    v.residually_finite         = true;
    v.weakly                    = true;
    v.strongly                  = true;
    v.completely                = true;
    v.all_hclasses_finite_known = true;
    v.reasons.push_back("every finite semigroup is completely separable");
    if (S.order() <= certificate_cap) {
      for (ElementId h = 0; h < S.order(); ++h) {
        v.certificates.push_back(separating_congruence(S, h));
      }
      v.reasons.push_back("separating congruence built for every element");
    }
    return v;
  }

  SeparabilityVerdict theorem43_classify(SymbolicAmbient                ambient,
                                         std::vector<SymElement> const& A_in,
                                         std::uint32_t                  bound) {
    std::vector<SymElement> A = A_in;
    SymElement              s;
    switch (ambient) {
      case SymbolicAmbient::integers:
        if (A.empty()) {
          A = {{1}, {-1}};
        }
        s = {0};
        break;
      case SymbolicAmbient::naturals:
        if (A.empty()) {
          A = {{1}};
        }
        s = {1};
        break;
      case SymbolicAmbient::naturals_times_integers:
        if (A.empty()) {
          A = {{1, 0}, {1, 1}, {1, -1}};
        }
        s = {1, 0};
        break;
    }
    SeparabilityVerdict v;
    v.ambient           = symbolic_name(ambient);
    v.residually_finite = true;
    auto hf             = hclass_finiteness(ambient, s, A, bound);
    v.witness           = hf.witness;
    switch (ambient) {
      case SymbolicAmbient::integers:
        v.weakly = v.strongly = v.completely = false;
        v.reasons.push_back("finitely generated commutative semigroups are residually finite");
        v.reasons.push_back("H-class of 0 is infinite: " + hf.reason);
        v.reasons.push_back("an infinite H-class rules out weak, strong and complete separability");
        break;
      case SymbolicAmbient::naturals:
        v.weakly = v.strongly = v.completely = true;
        v.all_hclasses_finite_known          = true;
        v.reasons.push_back("every H-class of N is a singleton");
        v.reasons.push_back("finite H-classes give complete separability");
        break;
      case SymbolicAmbient::naturals_times_integers:
        v.theorem_applies = false;
        v.weakly          = true;
        v.strongly        = false;
        v.completely      = false;
        v.reasons.push_back("N x Z is not finitely generated, so the finite H-class criterion does not apply");
        v.reasons.push_back("residually finite as a product of residually finite semigroups");
        v.reasons.push_back("weakly separable: the projection onto N separates (N-image separator)");
        v.reasons.push_back("not strongly separable: N x N cannot be separated from (2, 0)");
        break;
    }
    return v;
  }

  SeparabilityVerdict theorem43_classify(CommPresentation const& pres, std::uint32_t bound) {
    NFEngine engine(pres, bound);
    if (engine.certificate()) {
      auto v    = theorem43_classify(engine.to_semigroup());
      v.ambient = "certified finite presentation with " + std::to_string(engine.elements().size())
                  + " elements";
      return v;
    }
    SeparabilityVerdict v;
    v.ambient           = "presentation on " + std::to_string(pres.k) + " generators (finiteness not certified)";
    v.residually_finite = true;
    v.reasons.push_back("finitely generated commutative semigroups are residually finite");
    v.reasons.push_back("H-class finiteness undecided within bound " + std::to_string(bound));
    return v;
  }

}  // namespace sepkit
