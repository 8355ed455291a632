#include "eeinv/cli.hpp"
#include "eeinv/corpus.hpp"
#include "eeinv/document.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

using namespace eeinv;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "eeinv");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string corpus_file(const std::string& name) { return (std::filesystem::path(CORPUS_DIR) / name).string(); }

}  // namespace

TEST_CASE("every corpus verdict matches") {
  for (const auto& e : corpus()) {
    CAPTURE(e.name);
    const auto actual = run_corpus_entry(e);
    for (const auto& [check, verdict] : e.expected) {
      CAPTURE(check);
      CHECK(actual.at(check) == verdict);
    }
  }
  REQUIRE(find_corpus_entry("razak"));
  CHECK(find_corpus_entry("razak")->expected.at("roundtrip") == "mismatch");
  CHECK(find_corpus_entry("coord-3")->expected.at("validate") == "ok");
}

TEST_CASE("round trips from the command line") {
  CHECK(run({"roundtrip", corpus_file("coord-3.ej"), "--assert-identity"}).code == 0);
  const Run razak = run({"roundtrip", corpus_file("razak.ej"), "--assert-identity"});
  CHECK(razak.code == 1);
  CHECK(razak.out.find("phantom cone") != std::string::npos);
  CHECK(run({"roundtrip", corpus_file("razak.ej")}).code == 0);
  CHECK(run({"roundtrip", "razak", "--assert-identity"}).code == 1);
  CHECK(run({"roundtrip", corpus_file("swap-2.sm"), "--assert-identity"}).code == 0);
}

TEST_CASE("validation from the command line") {
  const Run cond3 = run({"validate", corpus_file("mutant-cond3.sj")});
  CHECK(cond3.code == 1);
  CHECK(cond3.out.find("cond3-hereditary") != std::string::npos);
  CHECK(run({"validate", corpus_file("coord-3.ej")}).code == 0);
  CHECK(run({"validate", corpus_file("mutant-zeta.em")}).code == 1);
  CHECK(run({"validate", corpus_file("id-coord-2.em")}).code == 0);
  CHECK(run({"validate", corpus_file("swap-2.sm"), "--src", corpus_file("coord-2-s.sj"), "--dst", corpus_file("coord-2-s.sj")}).code == 0);
}

TEST_CASE("documents from the command line") {
  const Run f = run({"apply", "--functor", "f", "coord-3-s"});
  CHECK(f.code == 0);
  CHECK(parse_document(f.out) == find_corpus_entry("coord-3")->document);
  CHECK(run({"apply", "--functor", "f", "coord-3"}).code == 2);
  CHECK(run({"apply", "--functor", "f", "mutant-cond3"}).code == 1);

  const Run t = run({"transport", "--direction", "s2e", corpus_file("swap-2.sm")});
  CHECK(t.code == 0);
  CHECK(parse_document(t.out).kind() == Kind::EMorphism);

  const Run c = run({"compose", "swap-2", "swap-2"});
  CHECK(c.code == 0);
  CHECK(parse_document(c.out).kind() == Kind::SMorphism);

  const Run g = run({"gen", "--kind", "e-object", "--seed", "3", "--blocks", "2"});
  CHECK(g.code == 0);
  CHECK(g.out == run({"gen", "--kind", "e-object", "--seed", "3", "--blocks", "2"}).out);
  CHECK(run({"gen", "--kind", "s-object", "--seed", "3", "--blocks", "9"}).code == 2);
}

TEST_CASE("comparison from the command line") {
  CHECK(run({"compare", "coord-2-s", "coord-2-s"}).code == 0);
  CHECK(run({"compare", "coord-2-s", "af-two-ideal"}).code == 1);
  CHECK(run({"compare", "coord-2-s", "coord-2-s", "--search"}).code == 0);
  CHECK(run({"compare", "coord-2-s", "af-two-ideal", "--search"}).code == 1);
  CHECK(run({"compare", "coord-2-s", "coord-2-s", "--witness", "swap-2", "swap-2"}).code == 0);
  CHECK(run({"compare", "coord-2-s", "coord-2"}).code == 2);
}

TEST_CASE("usage and input errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"--help"}).code == 0);
  CHECK(run({"validate", "no-such-thing"}).code == 2);
  CHECK(run({"apply", "--functor", "h", "coord-2"}).code == 2);
  CHECK(run({"corpus", "--run-all"}).code == 0);

  const auto bad = std::filesystem::temp_directory_path() / "eeinv-bad.ej";
  {
    std::ofstream(bad) << "{ \"kind\": ";
  }
  const Run r = run({"validate", bad.string()});
  CHECK(r.code == 2);
  CHECK(r.err.find("parse error") != std::string::npos);
  std::filesystem::remove(bad);
}
