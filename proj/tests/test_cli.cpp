#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "sepkit/cli.hpp"
#include "sepkit/core.hpp"

namespace fs = std::filesystem;

namespace {
  struct Result {
    int         code;
    std::string out, err;
  };

  Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int const          code = sepkit::cli::run(args, out, err);
    return {code, out.str(), err.str()};
  }

  fs::path scratch(std::string const& name) {
    auto dir = fs::temp_directory_path() / "sepkit-cli-tests";
    fs::create_directories(dir);
    return dir / name;
  }

  std::string write(std::string const& name, std::string const& text) {
    auto          p = scratch(name);
    std::ofstream f(p);
    f << text;
    return p.string();
  }
}  // namespace

TEST_CASE("cli: validate", "[cli]") {
  auto const good = write("z3.tbl", "3\n0 1 2\n1 2 0\n2 0 1\n");
  auto const r    = run({"validate", good});
  CHECK(r.code == sepkit::cli::ok);
  CHECK(r.out.rfind("ASSOCIATIVE\n", 0) == 0);

  auto const bad = write("bad.tbl", "2\n1 0\n0 0\n");
  auto const b   = run({"validate", bad});
  CHECK(b.code == sepkit::cli::format_error);
  CHECK(b.out.find("NOT ASSOCIATIVE") != std::string::npos);
  CHECK(b.out.find("violation: 0 0 1") != std::string::npos);

  auto const ragged = write("ragged.tbl", "2\n0 1\n1\n");
  CHECK(run({"validate", ragged}).code == sepkit::cli::format_error);
  CHECK(run({"validate", "/nonexistent/x.tbl"}).code == sepkit::cli::argument_error);
}

TEST_CASE("cli: separate in Z/4", "[cli]") {
  auto const z4 = write("z4.tbl", "4\n0 1 2 3\n1 2 3 0\n2 3 0 1\n3 0 1 2\n");
  auto const r  = run({"separate", z4, "2", "0"});
  CHECK(r.code == 0);
  CHECK(r.out.find("index: 4\n") != std::string::npos);
  CHECK(run({"separate", z4, "2", "2"}).code == sepkit::cli::argument_error);
  CHECK(run({"separate", z4, "9", "0"}).code == sepkit::cli::argument_error);
}

TEST_CASE("cli: gallery build writes a reloadable table", "[cli]") {
  auto const path = scratch("construction.tbl").string();
  auto const r    = run({"gallery", "build", "construction", "--t", "z3", "--g", "z3", "-o", path});
  CHECK(r.code == 0);
  auto const S = sepkit::read_table_file(path);
  CHECK(S.order() == 7);
  auto const v = run({"validate", path});
  CHECK(v.code == 0);

  // Round trip through stdout as well.
  auto const direct = run({"gallery", "build", "squarefree", "--n", "3"});
  CHECK(direct.code == 0);
  std::istringstream in(direct.out);
  CHECK(sepkit::read_table(in).order() == 22);

  CHECK(run({"gallery", "build", "no-such-thing"}).code == sepkit::cli::argument_error);
  CHECK(run({"gallery", "build", "rees", "--group", "z2", "--sandwich", "0,0;e,e"}).code
        == sepkit::cli::argument_error);
}

TEST_CASE("cli: every emitted table re-validates", "[cli]") {
  for (std::string name : {"construction-z4-z2", "rees-z2-mixed", "squarefree-2", "mulmod-12", "random-transformation",
                           "random-commutative", "random-monoid"}) {
    auto const path = scratch(name + ".tbl").string();
    REQUIRE(run({"gallery", "build", name, "--seed", "3", "-o", path}).code == 0);
    CHECK(run({"validate", path}).code == 0);
  }
}

TEST_CASE("cli: reports are deterministic", "[cli]") {
  auto const path = scratch("det.tbl").string();
  REQUIRE(run({"gallery", "build", "mulmod-12", "-o", path}).code == 0);
  for (auto const& args : std::vector<std::vector<std::string>>{
           {"green", path},
           {"congruences", path},
           {"classify", path},
           {"classify", path, "--format", "structured"},
           {"gallery", "build", "random-commutative", "--seed", "17"},
           {"kl", "Z", "--element", "0"},
       }) {
    auto const a = run(args), b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("cli: symbolic ambients", "[cli]") {
  auto const z = run({"kl", "Z", "--element", "0", "--gens", "1;-1"});
  CHECK(z.code == 0);
  CHECK(z.out.find("k_s: 2\n") != std::string::npos);
  CHECK(z.out.find("m_s: 1\n") != std::string::npos);
  CHECK(z.out.find("verdict: not strongly separable\n") != std::string::npos);

  auto const n = run({"kl", "N", "--element", "1", "--gens", "1"});
  CHECK(n.out.find("k_s: 0\n") != std::string::npos);
  CHECK(n.out.find("verdict: strongly separable at s\n") != std::string::npos);

  auto const c = run({"classify", "Z"});
  CHECK(c.out.find("weakly_separable: false\n") != std::string::npos);
  CHECK(c.out.find("residually_finite: true\n") != std::string::npos);

  auto const s = run({"classify", "N", "--format", "structured"});
  CHECK(s.out.find("\"completely_separable\": true") != std::string::npos);
}

TEST_CASE("cli: presentations", "[cli]") {
  auto const p = write("mono.pres", "gens 1\nrel 3 = 5\n");
  auto const r = run({"kl", p, "--element", "3"});
  CHECK(r.code == 0);
  CHECK(r.out.find("k_s: 1\n") != std::string::npos);
  auto const c = run({"classify", p});
  CHECK(c.code == 0);
  CHECK(c.out.find("certificates:") != std::string::npos);

  auto const free = write("free.pres", "gens 1\n");
  CHECK(run({"kl", free, "--element", "1", "--bound", "4"}).code == sepkit::cli::argument_error);
  auto const broken = write("broken.pres", "gens 2\nrel 1 = 2\n");
  CHECK(run({"classify", broken}).code == sepkit::cli::format_error);
}

TEST_CASE("cli: abelian and gallery verbs", "[cli]") {
  auto const a = run({"abelian", "classify", "prod", "Z/2*omega"});
  CHECK(a.code == 0);
  CHECK(a.out.find("strongly_separable: true\n") != std::string::npos);
  CHECK(a.out.find("completely_separable: false\n") != std::string::npos);
  CHECK(run({"abelian", "classify", "sum Q"}).code == sepkit::cli::format_error);

  auto const colors = write("colors.txt", "1 2 1\n");
  auto const sq     = run({"gallery", "replay", "sqfree", "--colors", colors});
  CHECK(sq.code == 0);
  CHECK(sq.out.rfind("CHAIN\n", 0) == 0);
  CHECK(sq.out.find("verified: true") != std::string::npos);

  auto const inj = write("inj.txt", "1 2 3\n");
  CHECK(run({"gallery", "replay", "eg62", "--colors", inj}).out.rfind("NoCollision", 0) == 0);

  auto const nxz = run({"gallery", "nxz", "--t", "1,1", "--x", "2,0"});
  CHECK(nxz.out.find("modulus: 4\n") != std::string::npos);
  CHECK(run({"gallery", "nxz", "--t", "1,1", "--x", "1,1"}).code == sepkit::cli::argument_error);

  CHECK(run({"gallery", "list"}).out.find("construction-z3-z3") != std::string::npos);
  CHECK(run({"gallery", "zcyclic", "--n-max", "5"}).code == 0);
}

TEST_CASE("cli: schutz and green output", "[cli]") {
  auto const path = scratch("c33.tbl").string();
  REQUIRE(run({"gallery", "build", "construction-z3-z3", "-o", path}).code == 0);
  auto const s = run({"schutz", path, "3"});
  CHECK(s.code == 0);
  CHECK(s.out.find("permutations:\n  ()\n  (x_0 x_1 x_2)\n  (x_0 x_2 x_1)\n") != std::string::npos);
  auto const g = run({"green", path});
  CHECK(g.out.find("schutz_orders: 3 3 1\n") != std::string::npos);
  CHECK(run({"classify", path}).code == sepkit::cli::argument_error);
}

TEST_CASE("cli: usage errors and caps", "[cli]") {
  CHECK(run({}).code == sepkit::cli::argument_error);
  CHECK(run({"frobnicate"}).code == sepkit::cli::argument_error);
  CHECK(run({"green"}).code == sepkit::cli::argument_error);
  CHECK(run({"validate", "x", "--no-such-flag"}).code == sepkit::cli::argument_error);
  CHECK(run({"--format", "xml", "gallery", "list"}).code == sepkit::cli::argument_error);
  CHECK(run({"--help"}).code == 0);

  auto const path = scratch("m12.tbl").string();
  REQUIRE(run({"gallery", "build", "mulmod-12", "-o", path}).code == 0);
  CHECK(run({"congruences", path, "--cap", "6"}).code == sepkit::cli::resource_error);
  CHECK(run({"gallery", "build", "squarefree", "--n", "9", "--cap", "5"}).code == sepkit::cli::resource_error);
  // The cap does not leak into later runs.
  CHECK(run({"congruences", path}).code == 0);
}

TEST_CASE("cli: structured output parses as one document", "[cli]") {
  auto const r = run({"gallery", "nxz", "--t", "1,1;1,-1", "--x", "3,2", "--format", "structured"});
  CHECK(r.code == 0);
  CHECK(r.out.front() == '{');
  CHECK(r.out.find("\"modulus\": 10") != std::string::npos);

  auto const report = scratch("report.txt").string();
  CHECK(run({"kl", "Z", "--element", "0", "-o", report}).out.empty());
  std::ifstream in(report);
  std::string   first;
  std::getline(in, first);
  CHECK(first == "element: 0");
}
