#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace eeinv {

/// Every check a validator can report. The string names are part of the
/// CLI and corpus contract.
enum class Check {
  Positivity,
  Scale,
  K1Relation,
  Composition,           // restriction maps compose
  PairingCompatibility,  // pairings commute with restriction
  Hereditary,            // pulled-back functionals form a hereditary image
  Decomposition,         // functionals split over a union of supports
  SimplexBase,
  Structure,
  Lattice,
  PairingAdditivity,
  WellDefined,
  Completeness,
  Square,
  Compatibility,
  Affinity,
  Isomorphism,
};

std::string_view check_name(Check c);
/// Inverse of check_name; throws DocumentError on an unknown name.
Check parse_check(std::string_view name);

struct Violation {
  Check check;
  std::string location;
  std::string detail;
};

class Report {
 public:
  void add(Check check, std::string location, std::string detail = {});
  void merge(const Report& other);

  bool ok() const { return violations_.empty(); }
  const std::vector<Violation>& violations() const { return violations_; }
  std::set<Check> checks() const;
  bool has(Check c) const;

  /// Comma-separated sorted check names, or "ok".
  std::string summary() const;
  std::string render(bool color = false) const;

 private:
  std::vector<Violation> violations_;
};

}  // namespace eeinv
