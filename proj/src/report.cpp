#include "eeinv/report.hpp"

#include "eeinv/errors.hpp"

#include <array>
#include <utility>

namespace eeinv {

namespace {

constexpr std::array<std::pair<Check, std::string_view>, 17> kNames{{
    {Check::Positivity, "positivity"},
    {Check::Scale, "scale"},
    {Check::K1Relation, "k1-relation"},
    {Check::Composition, "cond1-composition"},
    {Check::PairingCompatibility, "cond2-pairing"},
    {Check::Hereditary, "cond3-hereditary"},
    {Check::Decomposition, "cond4-decomposition"},
    {Check::SimplexBase, "simplex-base"},
    {Check::Structure, "structure"},
    {Check::Lattice, "lattice"},
    {Check::PairingAdditivity, "pairing-additivity"},
    {Check::WellDefined, "well-defined"},
    {Check::Completeness, "completeness"},
    {Check::Square, "square"},
    {Check::Compatibility, "compatibility"},
    {Check::Affinity, "affinity"},
    {Check::Isomorphism, "isomorphism"},
}};

}  // namespace

std::string_view check_name(Check c) {
  for (const auto& [check, name] : kNames)
    if (check == c) return name;
  return "unknown";
}

Check parse_check(std::string_view name) {
  for (const auto& [check, n] : kNames)
    if (n == name) return check;
  throw DocumentError("expected", "unknown check '" + std::string(name) + "'");
}

void Report::add(Check check, std::string location, std::string detail) {
  violations_.push_back({check, std::move(location), std::move(detail)});
}

void Report::merge(const Report& other) {
  violations_.insert(violations_.end(), other.violations_.begin(), other.violations_.end());
}

std::set<Check> Report::checks() const {
  std::set<Check> out;
  for (const auto& v : violations_) out.insert(v.check);
  return out;
}

bool Report::has(Check c) const {
  for (const auto& v : violations_)
    if (v.check == c) return true;
  return false;
}

std::string Report::summary() const {
  if (ok()) return "ok";
  std::set<std::string_view> names;
  for (const auto& v : violations_) names.insert(check_name(v.check));
  std::string out;
  for (const auto& n : names) {
    if (!out.empty()) out += ",";
    out += n;
  }
  return out;
}

std::string Report::render(bool color) const {
  const char* red = color ? "\033[31m" : "";
  const char* green = color ? "\033[32m" : "";
  const char* reset = color ? "\033[0m" : "";
  if (ok()) return std::string(green) + "ok" + reset + "\n";
  std::string out;
  for (const auto& v : violations_) {
    out += red;
    out += "violation ";
    out += check_name(v.check);
    out += reset;
    out += " at " + v.location;
    if (!v.detail.empty()) out += ": " + v.detail;
    out += "\n";
  }
  return out;
}

}  // namespace eeinv
