#pragma once

// The functors between the two categories, transport of morphisms in both
// directions, round-trip verifiers and isomorphism witnesses.

#include "eeinv/elliott.hpp"
#include "eeinv/report.hpp"
#include "eeinv/stevens.hpp"

#include <optional>
#include <string>
#include <utility>

namespace eeinv {

/// Stevens object of an Elliott object: phantom rays are forgotten.
SObject apply_G(const EObject& e);
/// Elliott object over the same family, no phantom rays.
EObject apply_F(const SObject& s);
bool has_ideal_property(const EObject& e);

EMorphism transport_s_to_e(const SMorphism& m, const SObject& src, const SObject& dst);
SMorphism transport_e_to_s(const EMorphism& m, const EObject& src, const EObject& dst,
                           const ValidationOptions& opts = {});

enum class Direction { GF, FG };
enum class Verdict { Identity, IsomorphicViaWitness, Mismatch };

struct MismatchWitness {
  std::string component;
  std::string location;
  std::string expected;
  std::string actual;
};

struct RoundTripReport {
  Direction direction = Direction::GF;
  Verdict verdict = Verdict::Identity;
  std::optional<MismatchWitness> witness;

  std::string render() const;
};

std::string_view verdict_name(Verdict v);

/// G(F(s)) against s.
RoundTripReport roundtrip_object(const SObject& s);
/// F(G(e)) against e.
RoundTripReport roundtrip_object(const EObject& e);
/// Stevens morphism carried to the Elliott side and back.
RoundTripReport roundtrip_morphism(const SMorphism& m, const SObject& src, const SObject& dst);
RoundTripReport roundtrip_morphism(const EMorphism& m, const EObject& src, const EObject& dst);

/// First differing component of two presentations, if any.
std::optional<MismatchWitness> compare_objects(const SObject& expected, const SObject& actual);
std::optional<MismatchWitness> compare_objects(const EObject& expected, const EObject& actual);

Report verify_iso(const SObject& a, const SObject& b, const SMorphism& fwd, const SMorphism& bwd);
Report verify_iso(const EObject& a, const EObject& b, const EMorphism& fwd, const EMorphism& bwd,
                  const ValidationOptions& opts = {});

template <typename Morphism>
struct IsoSearch {
  bool supported = true;
  std::optional<std::pair<Morphism, Morphism>> witness;  // (fwd, bwd)
  std::string note;
};

constexpr int kMaxSearchRank = 6;

/// Tries every permutation of blocks with the ray maps fixed by the
/// pairings. Supported for block families of rank at most kMaxSearchRank.
IsoSearch<SMorphism> search_iso(const SObject& a, const SObject& b);
IsoSearch<EMorphism> search_iso(const EObject& a, const EObject& b);

}  // namespace eeinv
