#pragma once

// Named reference inputs with their expected verdicts: coordinate models,
// an AF-like two-ideal example, the projectionless counterexample, and one
// mutant per validator check.

#include "eeinv/document.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace eeinv {

struct CorpusEntry {
  std::string name;
  Document document;
  std::optional<Document> source;  // contexts for morphism entries
  std::optional<Document> target;
  /// check name -> expected verdict; checks are "validate", "roundtrip",
  /// "ideal-property".
  std::map<std::string, std::string> expected;
};

const std::vector<CorpusEntry>& corpus();
/// nullptr when no entry has this name.
const CorpusEntry* find_corpus_entry(const std::string& name);

/// Verdicts for exactly the checks named in entry.expected.
std::map<std::string, std::string> run_corpus_entry(const CorpusEntry& entry);

/// Writes every entry as <name><ext>, contexts as <name>.src<ext> and
/// <name>.dst<ext>, plus expected.json.
void write_corpus(const std::string& dir);

}  // namespace eeinv
