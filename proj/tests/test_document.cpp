#include "oracles.hpp"

#include "eeinv/corpus.hpp"
#include "eeinv/document.hpp"
#include "eeinv/errors.hpp"
#include "eeinv/generate.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace eeinv;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string replace_first(std::string s, const std::string& from, const std::string& to) {
  const auto at = s.find(from);
  REQUIRE(at != std::string::npos);
  return s.replace(at, from.size(), to);
}

}  // namespace

TEST_CASE("rational text") {
  CHECK(parse_rational("3/6") == rat(1, 2));
  CHECK(parse_rational("-4") == Rational(-4));
  CHECK(format_rational(rat(6, 4)) == "3/2");
  CHECK(format_rational(Rational(2)) == "2/1");
  CHECK_THROWS_AS(parse_rational("3/0"), DocumentError);
  CHECK_THROWS_AS(parse_rational("x/2"), DocumentError);
}

TEST_CASE("canonical documents are fixed points") {
  const Document d = find_corpus_entry("coord-2")->document;
  const std::string text = emit_document(d);
  CHECK(emit_document(parse_document(text)) == text);
  CHECK(parse_document(text) == d);

  for (const auto& e : corpus()) {
    CAPTURE(e.name);
    CHECK(parse_document(emit_document(e.document)) == e.document);
  }
  for (std::uint64_t seed = 0; seed < 40; ++seed)
    for (Kind k : {Kind::SObject, Kind::EObject, Kind::SMorphism, Kind::EMorphism}) {
      const Document g = gen_random(k, seed, static_cast<int>(seed % 4), 2).document;
      CHECK(parse_document(emit_document(g)) == g);
    }
}

TEST_CASE("malformed documents") {
  try {
    parse_document("{\n  \"kind\": \"s-object\",\n  \"version\": \n}");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
    CHECK(e.column() > 0);
  }

  const std::string text = emit_document(find_corpus_entry("coord-2")->document);
  CHECK_THROWS_AS(parse_document(replace_first(text, "\"e-object\"", "\"f-object\"")), ParseError);
  try {
    parse_document(replace_first(text, "\"version\": \"1\"", "\"version\": \"2\""));
    FAIL("expected a document error");
  } catch (const DocumentError& e) {
    CHECK(e.field() == "version");
  }
  CHECK_THROWS_AS(parse_document(replace_first(text, "\"1/1\"", "\"1/0\"")), DocumentError);
  try {
    parse_document(replace_first(text, "\"1/1\"", "\"-1/1\""));
    FAIL("expected a document error");
  } catch (const DocumentError& e) {
    CHECK(e.field().find("payload") == 0);
  }
  CHECK_THROWS_AS(parse_document(replace_first(text, "\"dim\": 1", "\"dim\": 2")), DocumentError);
}

TEST_CASE("generation is deterministic and bounded") {
  CHECK(emit_document(gen_random(Kind::EObject, 9, 3).document) == emit_document(gen_random(Kind::EObject, 9, 3).document));
  CHECK(emit_document(gen_random(Kind::SObject, 9, 3).document) != emit_document(gen_random(Kind::SObject, 10, 3).document));
  const Generated g = gen_random(Kind::SObject, 1, 0);
  const auto& trivial = std::get<SObject>(g.document.payload);
  CHECK(trivial.group.rank == 0);
  CHECK(trivial.deltas.dim(0) == 0);
  CHECK_THROWS_AS(gen_random(Kind::SObject, 1, kMaxGenBlocks + 1), GenerationError);
  CHECK_THROWS_AS(gen_random(Kind::SObject, 1, 2, kMaxGenConeDim + 1), GenerationError);
}

TEST_CASE("golden s-object for seed 42") {
  const std::string golden = slurp(std::filesystem::path(GOLDEN_DIR) / "s-object-seed42-n3.sj");
  CHECK(emit_document(gen_random(Kind::SObject, 42, 3).document) == golden);
}

TEST_CASE("corpus files match the built-in corpus") {
  namespace fs = std::filesystem;
  const fs::path dir(CORPUS_DIR);
  for (const auto& e : corpus()) {
    CAPTURE(e.name);
    const fs::path p = dir / (e.name + std::string(kind_extension(e.document.kind())));
    REQUIRE(fs::exists(p));
    CHECK(slurp(p) == emit_document(e.document));
  }
}
