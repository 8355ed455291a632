#pragma once

// Versioned JSON documents for objects and morphisms. Emission is
// canonical (fixed key order, reduced "num/den" rationals, ascending
// supports), so emit(parse(emit(d))) is byte-identical to emit(d).

#include "eeinv/elliott.hpp"
#include "eeinv/stevens.hpp"

#include <string>
#include <string_view>
#include <variant>

namespace eeinv {

enum class Kind { SObject, EObject, SMorphism, EMorphism };

std::string_view kind_name(Kind k);
/// Throws ParseError on an unknown kind.
Kind parse_kind(std::string_view name);
/// ".sj", ".ej", ".sm", ".em"
std::string_view kind_extension(Kind k);

struct Document {
  std::variant<SObject, EObject, SMorphism, EMorphism> payload;

  Kind kind() const { return static_cast<Kind>(payload.index()); }
  friend bool operator==(const Document& a, const Document& b) { return a.payload == b.payload; }
};

inline constexpr std::string_view kFormatVersion = "1";

Document parse_document(std::string_view text);
std::string emit_document(const Document& d);

Document read_document(const std::string& path);
void write_document(const std::string& path, const Document& d);

}  // namespace eeinv
