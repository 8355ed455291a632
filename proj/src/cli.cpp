#include "eeinv/cli.hpp"

#include "eeinv/corpus.hpp"
#include "eeinv/document.hpp"
#include "eeinv/errors.hpp"
#include "eeinv/functors.hpp"
#include "eeinv/generate.hpp"

#include <CLI11.hpp>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>

namespace eeinv {

namespace {

namespace fs = std::filesystem;

constexpr int kOk = 0;
constexpr int kVerdict = 1;
constexpr int kUsage = 2;

// Raised for bad arguments discovered after parsing.
struct UsageError : Error {
  using Error::Error;
};

struct Loaded {
  Document document;
  const CorpusEntry* entry = nullptr;
  fs::path path;
};

// A path that does not exist falls back to the corpus entry named by it or
// by its stem, so "razak" and "corpus/razak.ej" both work without files.
Loaded load(const std::string& arg) {
  if (fs::exists(arg)) return {read_document(arg), nullptr, fs::path(arg)};
  const CorpusEntry* e = find_corpus_entry(arg);
  if (!e) e = find_corpus_entry(fs::path(arg).stem().string());
  if (!e) throw UsageError("no such file or corpus entry: " + arg);
  return {e->document, e, {}};
}

// Morphism context: explicit flag, then a sibling <stem>.src<ext> file,
// then the corpus entry's context.
Document context(const Loaded& m, const std::string& flag, const char* role) {
  if (!flag.empty()) return load(flag).document;
  if (!m.path.empty()) {
    fs::path sib = m.path.parent_path() / (m.path.stem().string() + "." + role);
    for (Kind k : {Kind::SObject, Kind::EObject}) {
      fs::path p = sib;
      p += std::string(kind_extension(k));
      if (fs::exists(p)) return read_document(p.string());
    }
  }
  if (m.entry) {
    const auto& ctx = std::string(role) == "src" ? m.entry->source : m.entry->target;
    if (ctx) return *ctx;
  }
  throw UsageError(std::string("missing --") + role + " for a morphism document");
}

template <typename T>
const T& expect(const Document& d, const char* what) {
  if (!std::holds_alternative<T>(d.payload)) throw UsageError(std::string("expected ") + what + ", got " + std::string(kind_name(d.kind())));
  return std::get<T>(d.payload);
}

Kind kind_option(const std::string& s) {
  try {
    return parse_kind(s);
  } catch (const ParseError&) {
    throw UsageError("unknown kind " + s);
  }
}

bool want_color(const std::ostream& out) {
  return &out == &std::cout && std::getenv("NO_COLOR") == nullptr && isatty(fileno(stdout));
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact Elliott and Stevens invariants of finitely presented data", "eeinv"};
  app.require_subcommand(1);

  std::string file, file2, src_flag, dst_flag, functor, direction, kind, write_dir, context_dir;
  std::vector<std::string> witness;
  bool assert_identity = false, search = false, run_all = false;
  std::uint64_t seed = 0;
  int blocks = 0, cone_dim = 2, samples = ValidationOptions{}.samples;

  auto* validate = app.add_subcommand("validate", "Check a document against its validator");
  validate->add_option("FILE", file)->required();
  validate->add_option("--src", src_flag, "Source object of a morphism");
  validate->add_option("--dst", dst_flag, "Target object of a morphism");
  validate->add_option("--samples", samples, "Sampled points for lattice and affinity checks")->check(CLI::PositiveNumber);

  auto* apply = app.add_subcommand("apply", "Apply F (Stevens to Elliott) or G (Elliott to Stevens)");
  apply->add_option("--functor", functor)->required()->check(CLI::IsMember({"f", "g"}));
  apply->add_option("FILE", file)->required();

  auto* transport = app.add_subcommand("transport", "Carry a morphism to the other side");
  transport->add_option("--direction", direction)->required()->check(CLI::IsMember({"s2e", "e2s"}));
  transport->add_option("MORPHISM_FILE", file)->required();
  transport->add_option("--src", src_flag);
  transport->add_option("--dst", dst_flag);

  auto* roundtrip = app.add_subcommand("roundtrip", "Compare a document with its image under both functors");
  roundtrip->add_option("FILE", file)->required();
  roundtrip->add_flag("--assert-identity", assert_identity, "Exit 1 unless the round trip is the identity");
  roundtrip->add_option("--src", src_flag);
  roundtrip->add_option("--dst", dst_flag);

  auto* compose = app.add_subcommand("compose", "Compose two morphisms, SECOND after FIRST");
  compose->add_option("SECOND", file)->required();
  compose->add_option("FIRST", file2)->required();

  auto* compare = app.add_subcommand("compare", "Compare two objects");
  compare->add_option("A", file)->required();
  compare->add_option("B", file2)->required();
  auto* witness_opt = compare->add_option("--witness", witness, "Forward and backward morphisms")->expected(2);
  compare->add_flag("--search", search, "Search block permutations for an isomorphism")->excludes(witness_opt);

  auto* gen = app.add_subcommand("gen", "Emit a seeded random document");
  gen->add_option("--kind", kind)->required();
  gen->add_option("--seed", seed)->required();
  gen->add_option("--blocks", blocks)->required();
  gen->add_option("--cone-dim", cone_dim);
  gen->add_option("--context-dir", context_dir, "Where to write morphism contexts");

  auto* corpus_cmd = app.add_subcommand("corpus", "List, run or write the named corpus");
  corpus_cmd->add_flag("--run-all", run_all, "Check every expected verdict");
  corpus_cmd->add_option("--write", write_dir, "Write the corpus files to a directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  const bool color = want_color(out);
  ValidationOptions vopts;
  vopts.samples = samples;

  try {
    if (*validate) {
      const Loaded d = load(file);
      Report r;
      switch (d.document.kind()) {
        case Kind::SObject:
          r = validate_s_object(std::get<SObject>(d.document.payload));
          break;
        case Kind::EObject:
          r = validate_e_object(std::get<EObject>(d.document.payload), vopts);
          break;
        case Kind::SMorphism:
          r = validate_s_morphism(std::get<SMorphism>(d.document.payload), expect<SObject>(context(d, src_flag, "src"), "s-object"),
                                  expect<SObject>(context(d, dst_flag, "dst"), "s-object"));
          break;
        case Kind::EMorphism:
          r = validate_e_morphism(std::get<EMorphism>(d.document.payload), expect<EObject>(context(d, src_flag, "src"), "e-object"),
                                  expect<EObject>(context(d, dst_flag, "dst"), "e-object"), vopts);
          break;
      }
      out << r.render(color);
      return r.ok() ? kOk : kVerdict;
    }

    if (*apply) {
      const Loaded d = load(file);
      if (functor == "f")
        out << emit_document({apply_F(expect<SObject>(d.document, "s-object"))});
      else
        out << emit_document({apply_G(expect<EObject>(d.document, "e-object"))});
      return kOk;
    }

    if (*transport) {
      const Loaded d = load(file);
      const Document src = context(d, src_flag, "src");
      const Document dst = context(d, dst_flag, "dst");
      if (direction == "s2e")
        out << emit_document({transport_s_to_e(expect<SMorphism>(d.document, "s-morphism"), expect<SObject>(src, "s-object"),
                                               expect<SObject>(dst, "s-object"))});
      else
        out << emit_document({transport_e_to_s(expect<EMorphism>(d.document, "e-morphism"), expect<EObject>(src, "e-object"),
                                               expect<EObject>(dst, "e-object"))});
      return kOk;
    }

    if (*roundtrip) {
      const Loaded d = load(file);
      RoundTripReport r;
      switch (d.document.kind()) {
        case Kind::SObject:
          r = roundtrip_object(std::get<SObject>(d.document.payload));
          break;
        case Kind::EObject:
          r = roundtrip_object(std::get<EObject>(d.document.payload));
          break;
        case Kind::SMorphism:
          r = roundtrip_morphism(std::get<SMorphism>(d.document.payload), expect<SObject>(context(d, src_flag, "src"), "s-object"),
                                 expect<SObject>(context(d, dst_flag, "dst"), "s-object"));
          break;
        case Kind::EMorphism:
          r = roundtrip_morphism(std::get<EMorphism>(d.document.payload), expect<EObject>(context(d, src_flag, "src"), "e-object"),
                                 expect<EObject>(context(d, dst_flag, "dst"), "e-object"));
          break;
      }
      out << r.render();
      return assert_identity && r.verdict != Verdict::Identity ? kVerdict : kOk;
    }

    if (*compose) {
      const Document second = load(file).document;
      const Document first = load(file2).document;
      if (second.kind() == Kind::SMorphism)
        out << emit_document({compose_s_morphisms(std::get<SMorphism>(second.payload), expect<SMorphism>(first, "s-morphism"))});
      else
        out << emit_document({compose_e_morphisms(expect<EMorphism>(second, "e-morphism"), expect<EMorphism>(first, "e-morphism"))});
      return kOk;
    }

    if (*compare) {
      const Document a = load(file).document;
      const Document b = load(file2).document;
      if (a.kind() != b.kind()) throw UsageError("cannot compare " + std::string(kind_name(a.kind())) + " with " + std::string(kind_name(b.kind())));
      if (!witness.empty()) {
        const Document fwd = load(witness[0]).document;
        const Document bwd = load(witness[1]).document;
        Report r;
        if (a.kind() == Kind::SObject)
          r = verify_iso(std::get<SObject>(a.payload), std::get<SObject>(b.payload), expect<SMorphism>(fwd, "s-morphism"),
                         expect<SMorphism>(bwd, "s-morphism"));
        else
          r = verify_iso(expect<EObject>(a, "e-object"), std::get<EObject>(b.payload), expect<EMorphism>(fwd, "e-morphism"),
                         expect<EMorphism>(bwd, "e-morphism"), vopts);
        out << r.render(color);
        return r.ok() ? kOk : kVerdict;
      }
      if (search) {
        const auto emit_search = [&](const auto& s) {
          if (!s.supported) {
            err << "search unsupported: " << s.note << "\n";
            return kUsage;
          }
          if (!s.witness) {
            out << "not isomorphic";
            if (!s.note.empty()) out << " (" << s.note << ")";
            out << "\n";
            return kVerdict;
          }
          out << emit_document({s.witness->first});
          return kOk;
        };
        if (a.kind() == Kind::SObject) return emit_search(search_iso(std::get<SObject>(a.payload), std::get<SObject>(b.payload)));
        return emit_search(search_iso(expect<EObject>(a, "e-object"), std::get<EObject>(b.payload)));
      }
      std::optional<MismatchWitness> w;
      if (a.kind() == Kind::SObject)
        w = compare_objects(std::get<SObject>(a.payload), std::get<SObject>(b.payload));
      else
        w = compare_objects(expect<EObject>(a, "e-object"), std::get<EObject>(b.payload));
      if (!w) {
        out << "equal\n";
        return kOk;
      }
      out << "differ: " << w->component << " at " << w->location << ": expected " << w->expected << ", got " << w->actual << "\n";
      return kVerdict;
    }

    if (*gen) {
      const Kind k = kind_option(kind);
      const Generated g = gen_random(k, seed, blocks, cone_dim);
      if (g.source && !context_dir.empty()) {
        fs::create_directories(context_dir);
        const std::string stem = std::string(kind_name(k)) + "-seed" + std::to_string(seed);
        write_document((fs::path(context_dir) / (stem + ".src" + std::string(kind_extension(g.source->kind())))).string(), *g.source);
        write_document((fs::path(context_dir) / (stem + ".dst" + std::string(kind_extension(g.target->kind())))).string(), *g.target);
      }
      out << emit_document(g.document);
      return kOk;
    }

    if (*corpus_cmd) {
      if (!write_dir.empty()) write_corpus(write_dir);
      int code = kOk;
      for (const auto& e : corpus()) {
        out << e.name << kind_extension(e.document.kind());
        if (!run_all) {
          for (const auto& [check, verdict] : e.expected) out << " " << check << "=" << verdict;
          out << "\n";
          continue;
        }
        const auto actual = run_corpus_entry(e);
        bool pass = true;
        std::string detail;
        for (const auto& [check, verdict] : e.expected) {
          const auto it = actual.find(check);
          const std::string got = it == actual.end() ? "missing" : it->second;
          if (got != verdict) {
            pass = false;
            detail += " " + check + ": expected " + verdict + ", got " + got + ";";
          }
        }
        out << (pass ? " PASS" : " FAIL") << detail << "\n";
        if (!pass) code = kVerdict;
      }
      return code;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const DocumentError& e) {
    err << "document error: " << e.what() << "\n";
    return kUsage;
  } catch (const InvalidInput& e) {
    err << "invalid input: " << e.what() << "\n";
    return kVerdict;
  } catch (const TransportError& e) {
    err << "transport failed: " << e.what() << "\n";
    return kVerdict;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace eeinv
