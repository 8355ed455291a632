#pragma once

// Seeded random objects and morphisms. Families are block families with
// random ray orders, scales and pairings, so the four family conditions hold by
// construction; morphisms are assembled from block-level maps whose
// columns are scaled to respect the pairings.

#include "eeinv/document.hpp"
#include "eeinv/elliott.hpp"
#include "eeinv/stevens.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace eeinv {

constexpr int kMaxGenBlocks = 6;
constexpr int kMaxGenConeDim = 4;

struct SChain {
  std::vector<SObject> objects;
  std::vector<SMorphism> arrows;  // arrows[i] : objects[i] -> objects[i+1]
};

struct EChain {
  std::vector<EObject> objects;
  std::vector<EMorphism> arrows;
};

/// `length` composable arrows over length+1 objects. The first object has
/// `blocks` blocks, later ones between blocks-1 and blocks. The S and E
/// chains for equal arguments present the same data on both sides.
SChain random_s_chain(std::uint64_t seed, int blocks, int cone_dim, int length);
EChain random_e_chain(std::uint64_t seed, int blocks, int cone_dim, int length);

struct Generated {
  Document document;
  std::optional<Document> source;  // morphism contexts
  std::optional<Document> target;
};

/// Throws GenerationError (naming the seed) when bounds are violated.
Generated gen_random(Kind kind, std::uint64_t seed, int blocks, int cone_dim = 2);

}  // namespace eeinv
