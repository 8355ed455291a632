#pragma once

// Stevens-side data: one simplicial cone per ideal support, restriction
// maps between nested supports, and the pairing of K0 generators with
// each cone. Objects and morphisms of the Stevens category live here.

#include "eeinv/ordered_groups.hpp"
#include "eeinv/rational.hpp"
#include "eeinv/report.hpp"
#include "eeinv/trace_cones.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace eeinv {

constexpr int kMaxFamilyRank = 8;

class DeltaFamily {
 public:
  DeltaFamily() : DeltaFamily(0) {}
  explicit DeltaFamily(int rank);

  int rank() const { return rank_; }
  IdealSupport num_supports() const { return IdealSupport{1} << rank_; }
  IdealSupport full() const { return num_supports() - 1; }

  Index dim(IdealSupport s) const;
  /// Sets dim C_s and resets every restriction and pairing touching s to zero.
  void set_dim(IdealSupport s, Index k);

  /// lambda_{s, sp} : C_s -> C_sp as a dim(sp) x dim(s) matrix; requires sp within s.
  const MatrixQ& restriction(IdealSupport s, IdealSupport sp) const;
  void set_restriction(IdealSupport s, IdealSupport sp, MatrixQ m);

  /// s_s(e_i) as a functional on C_s; requires i in s.
  const VectorQ& pairing(IdealSupport s, int i) const;
  void set_pairing(IdealSupport s, int i, VectorQ f);

  /// s_s(e) for e supported in s (linear extension over the generators).
  VectorQ pairing_of(IdealSupport s, const VectorZ& e) const;
  /// s_s of the sum of generators in s.
  VectorQ base_functional(IdealSupport s) const;

  friend bool operator==(const DeltaFamily& a, const DeltaFamily& b);

 private:
  std::size_t pair_index(IdealSupport s, IdealSupport sp) const {
    return static_cast<std::size_t>(s) * num_supports() + sp;
  }
  void check_support(IdealSupport s) const;

  int rank_;
  std::vector<Index> dims_;
  std::vector<MatrixQ> restrictions_;
  std::vector<VectorQ> pairings_;
};

VectorQ restrict(const VectorQ& v, IdealSupport s, IdealSupport sp, const DeltaFamily& d);

/// Family assembled from per-block cones. Every cone C_S lists the rays of
/// the blocks in S in some order, each with a positive scale; block values
/// are recovered as scale * coordinate. These are exactly the families whose
/// stacked singleton restrictions are positive monomial matrices.
struct BlockLayout {
  std::vector<VectorQ> sigma;  // per block: pairing of its generator with its rays, all > 0
  struct Ray {
    int block;
    Index ray;
    Rational scale;
  };
  std::vector<std::vector<Ray>> rays;  // indexed by support

  int rank() const { return static_cast<int>(sigma.size()); }
  /// Block order, then ray order, unit scales.
  static BlockLayout canonical(std::vector<VectorQ> sigma);
};

DeltaFamily build_block_family(const BlockLayout& layout);
/// C_S = [0,inf)^|S|, projections, unit pairings.
DeltaFamily coordinate_family(int n);

/// Recovers the block layout of a family, or nullopt when some stacked
/// singleton restriction is not positive monomial or the family differs
/// from the layout it implies.
std::optional<BlockLayout> block_layout(const DeltaFamily& d);
/// Stack of lambda_{s,{i}} over i in s: C_s coordinates -> block coordinates.
MatrixQ block_matrix(const DeltaFamily& d, IdealSupport s);

struct SObject {
  ScaledOrderedGroup group;
  FinAbGroup k1;
  DeltaFamily deltas;

  friend bool operator==(const SObject& a, const SObject& b) {
    return a.group == b.group && a.k1 == b.k1 && a.deltas == b.deltas;
  }
};

struct SMorphism {
  PositiveHom theta0;
  K1Hom theta1;
  std::vector<MatrixQ> xi;  // indexed by source support: C^H_{image} -> C^G_S

  friend bool operator==(const SMorphism& a, const SMorphism& b);
};

struct FamilyCheckOptions {
  bool structure = true;
  bool composition = true;
  bool pairing = true;
  bool hereditary = true;
  bool decomposition = true;
  bool simplex_base = true;
};

Report validate_family(const DeltaFamily& d, const FamilyCheckOptions& opts = {});
Report validate_s_object(const SObject& s);

/// Splits f on C_{P u Q} as pull_P(f1) + pull_Q(f2), f1, f2 >= 0, putting
/// as much as possible on the P side.
std::pair<VectorQ, VectorQ> decompose_over_sum(const VectorQ& f, IdealSupport p, IdealSupport q, const DeltaFamily& d);

Report validate_s_morphism(const SMorphism& m, const SObject& src, const SObject& dst);
SMorphism compose_s_morphisms(const SMorphism& m2, const SMorphism& m1);
SMorphism identity_s_morphism(const SObject& s);

}  // namespace eeinv
