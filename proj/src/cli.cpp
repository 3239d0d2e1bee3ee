#include "sepkit/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sepkit/abelian.hpp"
#include "sepkit/commutative.hpp"
#include "sepkit/congruence.hpp"
#include "sepkit/core.hpp"
#include "sepkit/gallery.hpp"
#include "sepkit/green.hpp"
#include "sepkit/random.hpp"

namespace sepkit::cli {

  namespace {
    using Json = nlohmann::ordered_json;

    ////////////////////////////////////////////////////////////////////////
    // Rendering
    ////////////////////////////////////////////////////////////////////////

    std::string inline_text(Json const& v, bool nested = false) {
      if (v.is_null() || (v.is_array() && v.empty() && !nested)) {
        return "none";
      }
      if (v.is_string()) {
        return v.get<std::string>();
      }
      if (v.is_array()) {
        std::string out;
        for (std::size_t k = 0; k < v.size(); ++k) {
          out += (k ? " " : "") + inline_text(v[k], true);
        }
        return nested ? "{" + out + "}" : out;
      }
      if (v.is_object()) {
        std::string out;
        for (auto const& [key, val] : v.items()) {
          out += (out.empty() ? "" : "  ") + key + "=" + inline_text(val, true);
        }
        return out;
      }
      return v.dump();
    }

    bool is_block(std::string const& key, Json const& v) {
      if (key == "permutations" || key == "steps" || key == "reasons") {
        return v.is_array();
      }
      return v.is_array() && std::any_of(v.begin(), v.end(), [](Json const& e) {
               return e.is_object() || (e.is_string() && e.get<std::string>().find(' ') != std::string::npos);
             });
    }

    // "key: value" lines; nested objects and arrays of records are indented
    // blocks; a top-level "result" is printed bare on the first line.
    void render_text(Json const& j, std::ostream& out, std::size_t indent = 0) {
      std::string const pad(2 * indent, ' ');
      for (auto const& [key, v] : j.items()) {
        if (indent == 0 && key == "result") {
          out << inline_text(v) << '\n';
        } else if (v.is_object()) {
          out << pad << key << ":\n";
          render_text(v, out, indent + 1);
        } else if (is_block(key, v)) {
          out << pad << key << ":\n";
          for (auto const& e : v) {
            out << pad << "  " << inline_text(e) << '\n';
          }
        } else {
          out << pad << key << ": " << inline_text(v) << '\n';
        }
      }
    }

    Json big(BigInt const& v) {
      if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
        return static_cast<std::int64_t>(v);
      }
      return v.str();
    }

    Json matrix(IntMatrix const& m) {
      Json out = Json::array();
      for (auto const& row : m) {
        Json r = Json::array();
        for (auto const& x : row) {
          r.push_back(big(x));
        }
        out.push_back(std::move(r));
      }
      return out;
    }

    Json verdict(std::optional<bool> v) {
      return v ? Json(*v) : Json("unknown");
    }

    ////////////////////////////////////////////////////////////////////////
    // Input parsing
    ////////////////////////////////////////////////////////////////////////

    std::vector<std::int64_t> parse_ints(std::string const& text) {
      std::string cleaned = text;
      for (auto& c : cleaned) {
        if (c == ',' || c == ';' || c == '(' || c == ')' || c == '[' || c == ']') {
          c = ' ';
        }
      }
      std::istringstream        ss(cleaned);
      std::vector<std::int64_t> out;
      std::string               tok;
      while (ss >> tok) {
        try {
          std::size_t pos = 0;
          auto        v   = std::stoll(tok, &pos);
          if (pos != tok.size()) {
            throw std::invalid_argument(tok);
          }
          out.push_back(v);
        } catch (std::exception const&) {
          throw ArgumentError("not an integer: '" + tok + "'");
        }
      }
      return out;
    }

    std::vector<SymElement> chunk(std::vector<std::int64_t> const& v, std::size_t dim) {
      if (v.size() % dim != 0) {
        throw ArgumentError("expected elements with " + std::to_string(dim) + " coordinates");
      }
      std::vector<SymElement> out;
      for (std::size_t k = 0; k < v.size(); k += dim) {
        out.emplace_back(v.begin() + static_cast<long>(k), v.begin() + static_cast<long>(k + dim));
      }
      return out;
    }

    std::vector<ElementId> element_list(std::vector<std::int64_t> const& v, FiniteSemigroup const& S) {
      std::vector<ElementId> out;
      for (auto x : v) {
        if (x < 0 || static_cast<std::size_t>(x) >= S.order()) {
          throw ArgumentError("element " + std::to_string(x) + " out of range");
        }
        out.push_back(static_cast<ElementId>(x));
      }
      return out;
    }

    ElementId single_element(std::string const& text, FiniteSemigroup const& S) {
      auto v = parse_ints(text);
      if (v.size() != 1) {
        throw ArgumentError("expected one element index, got '" + text + "'");
      }
      return element_list(v, S).front();
    }

    ExpVec exp_vec(std::string const& text, std::size_t k) {
      auto   v = parse_ints(text);
      ExpVec out;
      for (auto x : v) {
        if (x < 0 || x > std::numeric_limits<std::uint32_t>::max()) {
          throw ArgumentError("exponent out of range in '" + text + "'");
        }
        out.push_back(static_cast<std::uint32_t>(x));
      }
      if (out.size() != k) {
        throw ArgumentError("expected " + std::to_string(k) + " exponents in '" + text + "'");
      }
      return out;
    }

    struct Ambient {
      std::optional<SymbolicAmbient>  symbolic;
      std::optional<CommPresentation> presentation;
      std::optional<FiniteSemigroup>  table;
    };

    // A symbolic name, a presentation file (first word "gens") or a table.
    Ambient load_ambient(std::string const& spec) {
      Ambient a;
      if ((a.symbolic = parse_symbolic(spec))) {
        return a;
      }
      std::ifstream in(spec);
      if (!in) {
        throw ArgumentError("'" + spec + "' is neither Z, N, NxZ nor a readable file");
      }
      std::string word;
      std::string line;
      while (std::getline(in, line)) {
        std::istringstream ss(line);
        if ((ss >> word) && word[0] != '#') {
          break;
        }
        word.clear();
      }
      in.clear();
      in.seekg(0);
      if (word == "gens") {
        a.presentation = read_presentation(in);
      } else {
        a.table = read_table(in);
      }
      return a;
    }

    FiniteSemigroup named_group(std::string const& name) {
      if (name == "trivial" || name == "1") {
        return cyclic_group(1);
      }
      if (name.size() > 1 && (name[0] == 'z' || name[0] == 'Z')) {
        auto v = parse_ints(name.substr(1));
        if (v.size() == 1 && v[0] >= 1) {
          return cyclic_group(static_cast<std::size_t>(v[0]));
        }
      }
      throw ArgumentError("unknown group '" + name + "' (use zN or trivial)");
    }

    // "e,0;e,e": rows of the sandwich matrix; 0 is the zero entry, e the
    // identity, gK the group element with index K.
    SandwichMatrix parse_sandwich(std::string const& text, FiniteSemigroup const& G) {
      SandwichMatrix     P;
      std::istringstream rows(text);
      std::string        row;
      while (std::getline(rows, row, ';')) {
        std::vector<std::optional<ElementId>> r;
        std::istringstream                    cells(row);
        std::string                           cell;
        while (std::getline(cells, cell, ',')) {
          cell.erase(std::remove(cell.begin(), cell.end(), ' '), cell.end());
          if (cell == "0") {
            r.emplace_back(std::nullopt);
          } else if (cell == "e") {
            r.emplace_back(*G.identity());
          } else if (cell.size() > 1 && cell[0] == 'g') {
            auto v = parse_ints(cell.substr(1));
            if (v.size() != 1 || v[0] < 0 || static_cast<std::size_t>(v[0]) >= G.order()) {
              throw ArgumentError("bad sandwich entry '" + cell + "'");
            }
            r.emplace_back(static_cast<ElementId>(v[0]));
          } else {
            throw ArgumentError("bad sandwich entry '" + cell + "' (use 0, e or gK)");
          }
        }
        P.push_back(std::move(r));
      }
      if (P.empty()) {
        throw ArgumentError("empty sandwich matrix");
      }
      return P;
    }

    std::vector<long long> read_colors(std::string const& path) {
      std::ifstream in(path);
      if (!in) {
        throw ArgumentError("cannot open colouring file " + path);
      }
      std::vector<long long> out;
      std::string            tok;
      while (in >> tok) {
        try {
          std::size_t pos = 0;
          out.push_back(std::stoll(tok, &pos));
          if (pos != tok.size()) {
            throw std::invalid_argument(tok);
          }
        } catch (std::exception const&) {
          throw FormatError("bad colour '" + tok + "' in " + path);
        }
      }
      return out;
    }

    ////////////////////////////////////////////////////////////////////////
    // Reports
    ////////////////////////////////////////////////////////////////////////

    Json classes_json(ClassList const& classes) {
      Json out = Json::array();
      for (auto const& c : classes) {
        out.push_back(c);
      }
      return out;
    }

    Json kl_json(KLReport const& r) {
      Json j;
      j["element"]    = r.element;
      j["generators"] = r.generators;
      Json c          = Json::array();
      for (auto i : r.c_s) {
        c.push_back(r.generators[i]);
      }
      j["C_s"] = c;
      j["k_s"] = r.k_s;
      Json w   = Json::array();
      for (auto const& v : r.w_s_gens) {
        w.push_back(v);
      }
      j["W_s_generators"] = w;
      j["G_s_basis"]      = matrix(r.g_s_basis);
      j["m_s"]            = r.m_s;
      j["verdict"]        = r.strongly_separable_at_s ? "strongly separable at s" : "not strongly separable";
      j["exact"]          = r.exact;
      j["box_bound"]      = r.box_bound;
      if (!r.note.empty()) {
        j["note"] = r.note;
      }
      return j;
    }

    Json hclass_json(HClassFiniteness const& h) {
      Json j;
      switch (h.kind) {
        case HClassFiniteness::Kind::finite:
          j["kind"] = "finite";
          j["size"] = *h.size;
          break;
        case HClassFiniteness::Kind::infinite:
          j["kind"] = "infinite";
          break;
        case HClassFiniteness::Kind::unknown:
          j["kind"] = "unknown";
          break;
      }
      j["reason"] = h.reason;
      return j;
    }

    Json certificate_json(SeparatingCongruence const& c, FiniteSemigroup const& S) {
      Json j;
      j["h"]     = S.label(c.h);
      j["case"]  = c.group_case ? "group" : "non-group";
      j["n"]     = c.n;
      Json pairs = Json::array();
      for (auto [a, b] : c.pairs) {
        pairs.push_back(Json::array({a, b}));
      }
      j["pairs"]     = pairs;
      j["index"]     = c.congruence.index();
      j["singleton"] = c.singleton;
      return j;
    }

    Json verdict_json(SeparabilityVerdict const& v, FiniteSemigroup const* S) {
      Json j;
      j["ambient"]               = v.ambient;
      j["theorem_applies"]       = v.theorem_applies;
      j["residually_finite"]     = verdict(v.residually_finite);
      j["weakly_separable"]      = verdict(v.weakly);
      j["strongly_separable"]    = verdict(v.strongly);
      j["completely_separable"]  = verdict(v.completely);
      j["reasons"]               = v.reasons;
      if (v.witness) {
        j["witness"] = kl_json(*v.witness);
      }
      if (S && !v.certificates.empty()) {
        Json certs = Json::array();
        for (auto const& c : v.certificates) {
          certs.push_back(certificate_json(c, *S));
        }
        j["certificates"] = certs;
      }
      return j;
    }

    std::string table_text(FiniteSemigroup const& S) {
      std::ostringstream ss;
      write_table(ss, S);
      return ss.str();
    }

    struct Globals {
      std::uint64_t seed   = 1;
      std::uint32_t bound  = 8;
      std::size_t   cap    = 0;
      std::string   format = "text";
      std::string   output;
    };

    // Restores the process-wide caps when a run ends.
    struct CapGuard {
      std::size_t congruence = limits::congruence_cap();
      std::size_t squarefree = limits::squarefree_cap();
      ~CapGuard() {
        limits::set_congruence_cap(congruence);
        limits::set_squarefree_cap(squarefree);
      }
    };
  }  // namespace

  int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Separability toolkit for finite and finitely generated commutative semigroups", "sepkit"};
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--seed", g.seed, "Seed for randomised commands");
    app.add_option("--bound", g.bound, "Search bound for presentations and lattice searches");
    app.add_option("--cap", g.cap, "Enumeration cap (congruence order, square-free length)");
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"text", "structured"}));
    app.add_option("-o,--output", g.output, "Write the table or report to FILE");

    std::string path, element, gens, kind, name, colors, group = "z2", sandwich = "e", t_group = "z3",
                                                      g_group = "z3", nxz_t, nxz_x;
    std::vector<std::string> members, words;
    std::size_t              n = 2, n_max = 10, max_order = 8;

    auto* validate = app.add_subcommand("validate", "Check that a table file is an associative semigroup");
    validate->add_option("table", path)->required();

    auto* green = app.add_subcommand("green", "Green's relations, group flags and Schützenberger orders");
    green->add_option("table", path)->required();

    auto* schutz = app.add_subcommand("schutz", "Schützenberger group of the H-class of an element");
    schutz->add_option("table", path)->required();
    schutz->add_option("element", element)->required();

    auto* congruences = app.add_subcommand("congruences", "List every congruence");
    congruences->add_option("table", path)->required();

    auto* separate = app.add_subcommand("separate", "Least index congruence separating x from a set");
    separate->add_option("table", path)->required();
    separate->add_option("x", element)->required();
    separate->add_option("members", members);

    auto* classify = app.add_subcommand("classify", "The four separability verdicts for a commutative ambient");
    classify->add_option("ambient", path, "Z, N, NxZ, a presentation file or a table file")->required();
    classify->add_option("--gens", gens, "Generating set for symbolic ambients");

    auto* kl = app.add_subcommand("kl", "Kublanovskii-Lesohin parameters at one element");
    kl->add_option("ambient", path, "Z, N, NxZ, a presentation file or a table file")->required();
    kl->add_option("--element", element)->required();
    kl->add_option("--gens", gens);

    auto* abelian = app.add_subcommand("abelian", "Abelian group descriptors");
    auto* abelian_classify = abelian->add_subcommand("classify", "Classify a descriptor");
    abelian_classify->add_option("descriptor", words)->required();
    abelian->require_subcommand(1);

    auto* gallery = app.add_subcommand("gallery", "Named instances, builders and witness replays");
    gallery->require_subcommand(1);
    auto* g_list  = gallery->add_subcommand("list", "List instances and builders");
    auto* g_build = gallery->add_subcommand("build", "Build an instance table");
    g_build->add_option("name", name)->required();
    g_build->add_option("--t", t_group, "T for construction (zN)");
    g_build->add_option("--g", g_group, "G for construction (zM or trivial)");
    g_build->add_option("--n", n, "Word length for squarefree");
    g_build->add_option("--group", group, "Group for rees (zN)");
    g_build->add_option("--sandwich", sandwich, "Sandwich rows for rees, e.g. \"e,0;e,e\"");
    g_build->add_option("--max-order", max_order, "Order bound for random instances");
    auto* g_replay = gallery->add_subcommand("replay", "Replay a collision argument");
    g_replay->add_option("kind", kind)->required()->check(CLI::IsMember({"sqfree", "eg62"}));
    g_replay->add_option("--colors", colors)->required();
    auto* g_nxz = gallery->add_subcommand("nxz", "Separate x from <T> in N x Z");
    g_nxz->add_option("--t", nxz_t, "Generators, e.g. \"1,1;1,-1\"")->required();
    g_nxz->add_option("--x", nxz_x, "The element, e.g. \"2,0\"")->required();
    auto* g_zcyclic = gallery->add_subcommand("zcyclic", "Image of -1 in Z/n lies in the image of N");
    g_zcyclic->add_option("--n-max", n_max);
    auto* g_units = gallery->add_subcommand("units", "One-sided units of a finite monoid are two-sided");
    g_units->add_option("table", path)->required();

    try {
      std::vector<std::string> reversed(args.rbegin(), args.rend());
      app.parse(reversed);
    } catch (CLI::CallForHelp const&) {
      out << app.help();
      return ok;
    } catch (CLI::CallForAllHelp const&) {
      out << app.help("", CLI::AppFormatMode::All);
      return ok;
    } catch (CLI::ParseError const& e) {
      if (e.get_exit_code() == 0) {
        out << app.help();
        return ok;
      }
      err << "error: " << e.what() << '\n';
      return argument_error;
    }

    CapGuard guard;
    if (g.cap > 0) {
      limits::set_congruence_cap(g.cap);
      limits::set_squarefree_cap(g.cap);
    }

    Json                           report;
    int                            code = ok;
    std::optional<FiniteSemigroup> table_out;  // emitted as a table file

    try {
      if (*validate) {
        auto raw = read_raw_table_file(path);
        auto bad = validate_associativity(raw.rows);
        if (bad) {
          report["result"]    = "NOT ASSOCIATIVE";
          report["violation"] = Json::array({(*bad)[0], (*bad)[1], (*bad)[2]});
          code                = format_error;
        } else {
          auto S                 = read_table_file(path);
          report["result"]       = "ASSOCIATIVE";
          report["order"]        = S.order();
          report["commutative"]  = S.is_commutative();
          report["identity"]     = S.identity() ? Json(*S.identity()) : Json(nullptr);
          report["zero"]         = S.zero() ? Json(*S.zero()) : Json(nullptr);
        }
      } else if (*green) {
        auto S  = read_table_file(path);
        auto gr = green_relations(S);
        report["order"]     = S.order();
        report["H"]         = classes_json(gr.h_classes);
        report["L"]         = classes_json(gr.l_classes);
        report["R"]         = classes_json(gr.r_classes);
        report["J"]         = classes_json(gr.j_classes);
        Json flags = Json::array(), orders = Json::array();
        for (std::size_t i = 0; i < gr.h_classes.size(); ++i) {
          flags.push_back(static_cast<bool>(gr.group_flags[i]));
          orders.push_back(schutzenberger_group(S, gr.h_classes[i]).order());
        }
        report["group"]          = flags;
        report["schutz_orders"]  = orders;
      } else if (*schutz) {
        auto       S  = read_table_file(path);
        auto       x  = single_element(element, S);
        auto       gr = green_relations(S);
        auto const& H = gr.h_classes[gr.h_of[x]];
        auto       G  = schutzenberger_group(S, H);
        report["element"] = x;
        report["hclass"]  = H;
        report["group"]   = static_cast<bool>(gr.group_flags[gr.h_of[x]]);
        report["order"]   = G.order();
        report["abelian"] = G.is_abelian();
        report["cyclic"]  = G.is_cyclic();
        std::vector<std::string> perms;
        for (std::size_t i = 0; i < G.order(); ++i) {
          perms.push_back(G.cycle_notation(i, S));
        }
        std::sort(perms.begin(), perms.end());
        report["permutations"] = perms;
      } else if (*congruences) {
        auto S   = read_table_file(path);
        auto all = all_congruences(S);
        report["order"] = S.order();
        report["count"] = all.size();
        Json list       = Json::array();
        for (auto const& c : all) {
          list.push_back(Json{{"index", c.index()}, {"classes", classes_json(c.classes())}});
        }
        report["congruences"] = list;
      } else if (*separate) {
        auto S    = read_table_file(path);
        auto x    = single_element(element, S);
        std::vector<std::int64_t> ms;
        for (auto const& m : members) {
          auto v = parse_ints(m);
          ms.insert(ms.end(), v.begin(), v.end());
        }
        Subset T(S.order(), element_list(ms, S));
        auto   cert      = min_index_separating(S, x, T);
        report["result"]  = "SEPARATED";
        report["element"] = x;
        report["avoided"] = cert.avoided;
        report["index"]   = cert.congruence.index();
        report["classes"] = classes_json(cert.congruence.classes());
      } else if (*classify) {
        auto a = load_ambient(path);
        if (a.symbolic) {
          std::size_t dim = *a.symbolic == SymbolicAmbient::naturals_times_integers ? 2 : 1;
          auto        A   = gens.empty() ? std::vector<SymElement>{} : chunk(parse_ints(gens), dim);
          report          = verdict_json(theorem43_classify(*a.symbolic, A, g.bound), nullptr);
        } else if (a.presentation) {
          NFEngine engine(*a.presentation, g.bound);
          if (engine.certificate()) {
            auto S = engine.to_semigroup();
            report = verdict_json(theorem43_classify(*a.presentation, g.bound), &S);
          } else {
            report = verdict_json(theorem43_classify(*a.presentation, g.bound), nullptr);
          }
        } else {
          report = verdict_json(theorem43_classify(*a.table), &*a.table);
        }
      } else if (*kl) {
        auto a = load_ambient(path);
        if (a.symbolic) {
          std::size_t dim = *a.symbolic == SymbolicAmbient::naturals_times_integers ? 2 : 1;
          auto        s   = chunk(parse_ints(element), dim);
          if (s.size() != 1) {
            throw ArgumentError("--element must be a single element of " + symbolic_name(*a.symbolic));
          }
          std::vector<SymElement> A;
          if (!gens.empty()) {
            A = chunk(parse_ints(gens), dim);
          } else if (*a.symbolic == SymbolicAmbient::integers) {
            A = {{1}, {-1}};
          } else if (*a.symbolic == SymbolicAmbient::naturals) {
            A = {{1}};
          } else {
            A = {{1, 0}, {1, 1}, {1, -1}};
          }
          report           = kl_json(kl_parameters(*a.symbolic, s.front(), A, g.bound));
          report["hclass"] = hclass_json(hclass_finiteness(*a.symbolic, s.front(), A, g.bound));
        } else {
          FiniteSemigroup        S = a.table ? *a.table : [&] {
            NFEngine engine(*a.presentation, g.bound);
            if (!engine.certificate()) {
              throw ArgumentError("the presentation is not certified finite within --bound "
                                  + std::to_string(g.bound));
            }
            return engine.to_semigroup();
          }();
          ElementId s = 0;
          if (a.presentation) {
            NFEngine engine(*a.presentation, g.bound);
            auto     pos = engine.element_of(exp_vec(element, a.presentation->k));
            if (!pos) {
              throw ArgumentError("--element must have positive degree");
            }
            s = static_cast<ElementId>(*pos);
          } else {
            s = single_element(element, S);
          }
          std::vector<ElementId> A;
          if (!gens.empty()) {
            A = element_list(parse_ints(gens), S);
          } else {
            A = S.generators() ? *S.generators() : generating_set(S);
          }
          report           = kl_json(kl_parameters(S, s, A, g.bound));
          report["hclass"] = hclass_json(hclass_finiteness(S, s, A, g.bound));
        }
      } else if (*abelian_classify) {
        std::string text;
        for (auto const& w : words) {
          text += (text.empty() ? "" : " ") + w;
        }
        auto d                          = parse_abelian(text);
        auto v                          = sepkit::classify(d);
        auto nd                         = normalize(d);
        report["descriptor"]            = nd.to_string();
        report["torsion"]               = is_torsion(nd);
        report["finite"]                = is_finite(nd);
        if (auto o = finite_order(nd)) {
          report["order"] = big(*o);
        }
        report["residually_finite"]     = v.residually_finite;
        report["weakly_separable"]      = v.weakly;
        report["strongly_separable"]    = v.strongly;
        report["completely_separable"]  = v.completely;
        report["reasons"]               = v.reasons;
      } else if (*g_list) {
        Json list = Json::array();
        for (auto const& inst : gallery_instances()) {
          list.push_back(Json{{"name", inst.name}, {"order", inst.semigroup.order()}, {"description", inst.description}});
        }
        report["instances"] = list;
        report["builders"]  = Json::array({
            "construction --t zN --g zM (M divides N)",
            "rees --group zN --sandwich \"e,0;e,e\"",
            "squarefree --n N",
            "random-transformation --seed S --max-order N",
            "random-commutative --seed S --max-order N",
            "random-monoid --seed S --max-order N",
        });
      } else if (*g_build) {
        std::mt19937_64 rng(g.seed);
        if (name == "construction") {
          auto T = named_group(t_group), G = named_group(g_group);
          if (T.order() % G.order() != 0) {
            throw ArgumentError("construction: |G| must divide |T| for reduction mod |G|");
          }
          std::vector<ElementId> phi(T.order());
          for (ElementId a = 0; a < T.order(); ++a) {
            phi[a] = static_cast<ElementId>(a % G.order());
          }
          table_out = build_construction(T, G, phi);
        } else if (name == "rees") {
          auto           G = named_group(group);
          auto           P = parse_sandwich(sandwich, G);
          ReesMatrixSpec spec{G, P.front().size(), P.size(), P};
          table_out = build_rees_matrix(spec);
        } else if (name == "squarefree") {
          table_out = squarefree_semigroup(n);
        } else if (name == "random-transformation") {
          table_out = random_transformation_semigroup(rng, max_order);
        } else if (name == "random-commutative") {
          table_out = random_commutative_semigroup(rng, max_order);
        } else if (name == "random-monoid") {
          table_out = random_monoid(rng, max_order);
        } else {
          for (auto& inst : gallery_instances()) {
            if (inst.name == name) {
              table_out = inst.semigroup;
            }
          }
          if (!table_out) {
            throw ArgumentError("unknown gallery instance '" + name + "' (see gallery list)");
          }
        }
        report["result"] = "BUILT";
        report["name"]   = name;
        report["order"]  = table_out->order();
      } else if (*g_replay) {
        auto cs    = read_colors(colors);
        auto chain = kind == "sqfree" ? replay_squarefree_collapse(cs) : replay_eg62(cs);
        if (!chain) {
          report["result"] = "NoCollision";
        } else {
          report["result"] = "CHAIN";
          report["i"]      = chain->i;
          report["j"]      = chain->j;
          Json steps       = Json::array();
          for (auto const& s : chain->steps) {
            steps.push_back(render_step(s));
          }
          report["steps"]      = steps;
          report["conclusion"] = chain->conclusion;
          report["verified"]   = verify_chain(*chain);
        }
      } else if (*g_nxz) {
        auto T  = chunk(parse_ints(nxz_t), 2);
        auto xs = chunk(parse_ints(nxz_x), 2);
        if (xs.size() != 1) {
          throw ArgumentError("--x must be a single pair");
        }
        std::vector<NxZ> Tp;
        for (auto const& p : T) {
          Tp.emplace_back(p[0], p[1]);
        }
        NxZ const x{xs[0][0], xs[0][1]};
        auto      sep = nxz_separator(Tp, x);
        report["result"]  = sep.certified ? "SEPARATED" : "FAILED";
        report["n"]       = sep.n;
        Json Y            = Json::array();
        for (auto const& [a, b] : sep.Y) {
          Y.push_back(Json::array({a, b}));
        }
        report["Y"]              = Y;
        report["modulus"]        = sep.modulus;
        report["quotient_order"] = sep.n_quotient.order();
        report["target_order"]   = sep.target.order();
        report["image_of_x"]     = sep.image(x);
        report["checked"]        = sep.checked.size();
      } else if (*g_zcyclic) {
        Json rows = Json::array();
        for (auto const& r : z_cyclic_obstruction(n_max)) {
          rows.push_back(Json{{"n", r.n}, {"image", r.image}, {"k", r.k}, {"contained", r.contained}});
        }
        report["rows"] = rows;
      } else if (*g_units) {
        auto S  = read_table_file(path);
        auto uc = finite_monoid_unit_check(S);
        report["result"] = uc.ok ? "UNITS TWO-SIDED" : "VIOLATION";
        if (uc.violation) {
          report["violation"] = Json::array({uc.violation->first, uc.violation->second});
        }
      }
    } catch (ArgumentError const& e) {
      err << "error: " << e.what() << '\n';
      return argument_error;
    } catch (FormatError const& e) {
      err << "format error: " << e.what() << '\n';
      return format_error;
    } catch (ResourceError const& e) {
      err << "resource limit: " << e.what() << '\n';
      return resource_error;
    } catch (InternalError const& e) {
      err << "internal error: " << e.what() << '\n';
      return internal_error;
    }

    std::ostringstream body;
    if (table_out && !g.output.empty()) {
      try {
        write_table_file(g.output, *table_out);
      } catch (ArgumentError const& e) {
        err << "error: " << e.what() << '\n';
        return argument_error;
      }
      report["file"] = g.output;
    }
    if (table_out && g.output.empty()) {
      body << table_text(*table_out);
    } else if (g.format == "structured") {
      body << report.dump(2) << '\n';
    } else {
      render_text(report, body);
    }
    if (!g.output.empty() && !table_out) {
      std::ofstream file(g.output, std::ios::binary);
      if (!file) {
        err << "error: cannot write " << g.output << '\n';
        return argument_error;
      }
      file << body.str();
    } else {
      out << body.str();
    }
    return code;
  }

}  // namespace sepkit::cli
