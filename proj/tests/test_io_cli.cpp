#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "opacity/cli.hpp"
#include "opacity/error.hpp"
#include "opacity/fixtures.hpp"
#include "opacity/io.hpp"
#include "opacity/testkit.hpp"
#include "opacity/transform.hpp"

using namespace opacity;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "opacity_unit";
  fs::create_directories(dir);
  return dir;
}

std::string write(const std::string& name, const std::string& text) {
  const fs::path p = scratch() / name;
  std::ofstream(p) << text;
  return p.string();
}

ErrorCode parse_code(const std::string& text) {
  try {
    parse_instance(text);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::usage;
}

const char* kF1 =
    "notion: cso\n"
    "automaton G\n"
    "states: 0 1 2\n"
    "observable: a\n"
    "unobservable: u\n"
    "initial: 0\n"
    "marked:\n"
    "0 a 1\n"
    "0 u 2\n"
    "2 a 2\n"
    "end\n"
    "secret: 1\n"
    "nonsecret: 2\n";

}  // namespace

TEST_CASE("F1 text parses to the fixture") {
  CHECK(parse_instance(kF1) == OpacityInstance(fixtures::f1()));
  CHECK(serialize_instance(fixtures::f1()) == kF1);
}

TEST_CASE("round trip on fixtures and random instances") {
  for (const auto& name : fixtures::names()) {
    const auto inst = *fixtures::by_name(name);
    CHECK(parse_instance(serialize_instance(inst)) == inst);
  }
  for (std::uint64_t i = 0; i < 1000; ++i) {
    GenParams p;
    p.n = 1 + i % 6;
    p.ell = 1 + i % 3;
    p.uo = i % 2;
    p.k = i % 4;
    p.seed = 1000 + i;
    const Notion n = static_cast<Notion>(i % 6);
    const auto inst = random_instance(n, p);
    CHECK(parse_instance(serialize_instance(inst)) == inst);
  }
}

TEST_CASE("parse errors") {
  std::string nok(kF1);
  nok.replace(nok.find("cso"), 3, "kso");
  CHECK(parse_code(nok) == ErrorCode::semantic_error);

  std::string dup(kF1);
  dup.replace(dup.find("0 1 2"), 5, "0 1 1");
  CHECK(parse_code(dup) == ErrorCode::syntax_error);

  CHECK(parse_code("") == ErrorCode::semantic_error);  // no notion line
  CHECK(parse_code("notion: cso\nbogus: 1\n") == ErrorCode::syntax_error);

  std::string unknown(kF1);
  unknown.replace(unknown.find("0 a 1"), 5, "0 c 1");
  CHECK(parse_code(unknown) != ErrorCode::usage);

  std::string kline(kF1);
  kline.insert(kline.find("automaton"), "k: 2\n");
  CHECK(parse_code(kline) == ErrorCode::semantic_error);

  try {
    parse_instance(dup);
  } catch (const Error& e) {
    CHECK(e.line() == 3);
  }
}

TEST_CASE("cli exit codes on fixtures") {
  CHECK(run_cli({"verify", "--fixture", "F1"}).code == 0);
  const auto f2 = run_cli({"verify", "--fixture", "F2"});
  CHECK(f2.code == 1);
  CHECK(f2.out.find("a") != std::string::npos);
  CHECK(run_cli({"verify", "--fixture", "F3"}).code == 0);
  CHECK(run_cli({"verify", "--fixture", "F4o"}).code == 0);
  CHECK(run_cli({"verify", "--fixture", "F4x"}).code == 1);
  CHECK(run_cli({"verify", "--fixture", "F5"}).code == 0);
  CHECK(run_cli({"verify", "--fixture", "F2", "--algo", "oracle", "--bound", "3"}).code == 1);
  CHECK(run_cli({"verify", "--fixture", "F4x", "--algo", "unary"}).code == 1);
  CHECK(run_cli({"oracle", "--fixture", "F1", "--bound", "8"}).code == 0);
  CHECK(run_cli({"verify", "--fixture", "F9"}).code == 2);
  CHECK(run_cli({}).code == 2);
  CHECK(run_cli({"frobnicate"}).code == 2);
  CHECK(run_cli({"verify", "--in", "/nonexistent/file"}).code == 2);
}

TEST_CASE("cli verify on a file") {
  const auto path = write("f2.txt", serialize_instance(fixtures::f2()));
  const auto r = run_cli({"verify", "--in", path});
  CHECK(r.code == 1);
  CHECK(r.out.find("witness: a") != std::string::npos);
}

TEST_CASE("cli transform then verify") {
  const auto in = write("f1.txt", serialize_instance(fixtures::f1()));
  const auto out = (scratch() / "f1_inso.txt").string();
  REQUIRE(run_cli({"transform", "--from", "cso", "--to", "inso", "--in", in, "--out", out}).code == 0);
  CHECK(fs::exists(out + ".prov"));
  CHECK(run_cli({"verify", "--in", out}).code == 0);

  // Multi-step route.
  const auto f2 = write("f2t.txt", serialize_instance(fixtures::f2()));
  const auto iso = (scratch() / "f2_iso.txt").string();
  REQUIRE(run_cli({"transform", "--from", "cso", "--to", "iso", "--in", f2, "--out", iso}).code == 0);
  CHECK(run_cli({"verify", "--in", iso}).code == 1);

  // Unary LBO with --preserve-events.
  const auto lbo = write("unary_lbo.txt", serialize_instance(cso_to_lbo(fixtures::f1()).instance));
  const auto r = run_cli({"transform", "--from", "lbo", "--to", "iso", "--preserve-events", "--in", lbo, "--out",
                      (scratch() / "never.txt").string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("unary") != std::string::npos);

  // Wrong source notion.
  CHECK(run_cli({"transform", "--from", "iso", "--to", "cso", "--in", in, "--out", out}).code == 2);
}

TEST_CASE("cli gen, bench and export-dot") {
  const auto path = (scratch() / "gen.txt").string();
  REQUIRE(run_cli({"gen", "--notion", "kso", "--n", "4", "--seed", "3", "--out", path}).code == 0);
  const int v = run_cli({"verify", "--in", path}).code;
  CHECK((v == 0 || v == 1));

  const auto b = run_cli({"bench", "--notion", "inso", "--n-range", "2..4", "--seed", "1"});
  REQUIRE(b.code == 0);
  std::istringstream rows(b.out);
  std::string line;
  std::getline(rows, line);
  CHECK(line == "n,ell,m,constructed_states,constructed_transitions,wall_time_ms");
  std::size_t count = 0;
  while (std::getline(rows, line)) {
    std::size_t n, ell, m, states;
    char c;
    std::istringstream cols(line);
    cols >> n >> c >> ell >> c >> m >> c >> states;
    CHECK(m <= ell * n * n);
    CHECK(states <= n * (std::size_t{1} << n) + (std::size_t{1} << n));
    ++count;
  }
  CHECK(count == 3);
  CHECK(run_cli({"bench", "--notion", "inso", "--n-range", "4..2"}).code == 2);

  const auto d = run_cli({"export-dot", "--fixture", "F1"});
  CHECK(d.code == 0);
  CHECK(d.out.rfind("digraph", 0) == 0);
  CHECK(d.out == run_cli({"export-dot", "--fixture", "F1"}).out);
  CHECK(run_cli({"export-dot", "--fixture", "F5", "--structure"}).code == 0);
}

TEST_CASE("mutated files always exit 2 or parse") {
  std::mt19937_64 rng(7);
  const std::string base = serialize_instance(fixtures::f3());
  const std::string alphabet = " \n:#,;abxyz0123-";
  for (int i = 0; i < 300; ++i) {
    std::string text = base;
    const int edits = 1 + static_cast<int>(rng() % 4);
    for (int e = 0; e < edits && !text.empty(); ++e) {
      const std::size_t at = rng() % text.size();
      switch (rng() % 3) {
        case 0: text.erase(at, 1 + rng() % 6); break;
        case 1: text.insert(at, 1, alphabet[rng() % alphabet.size()]); break;
        default: text[at] = alphabet[rng() % alphabet.size()];
      }
    }
    const auto path = write("fuzz.txt", text);
    const auto r = run_cli({"verify", "--in", path});
    CHECK(r.code >= 0);
    CHECK(r.code <= 2);
    if (r.code == 2) CHECK_FALSE(r.err.empty());
  }
}
