#pragma once

// Simplicial scaled ordered groups (Z^n, N^n, scale), finitely generated
// abelian groups for K1, and the homomorphisms between them.

#include "eeinv/rational.hpp"
#include "eeinv/report.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace eeinv {

/// A subset of the blocks {0..n-1}, bit i set when block i belongs.
using IdealSupport = std::uint32_t;

constexpr int kMaxIdealRank = 16;

inline bool is_subset(IdealSupport a, IdealSupport b) { return (a & ~b) == 0; }
int support_size(IdealSupport s);
std::vector<int> members(IdealSupport s);
/// "{0,2}"
std::string format_support(IdealSupport s);
inline IdealSupport full_support(int n) { return n >= 32 ? ~IdealSupport{0} : (IdealSupport{1} << n) - 1; }

struct ScaledOrderedGroup {
  int rank = 0;
  bool scale_all = true;
  VectorZ unit;  // used when !scale_all

  static ScaledOrderedGroup all(int n);
  static ScaledOrderedGroup with_unit(VectorZ u);

  friend bool operator==(const ScaledOrderedGroup& a, const ScaledOrderedGroup& b);
};

/// Free part Z^free_rank followed by Z/d1 + ... with d1 | d2 | ...
struct FinAbGroup {
  int free_rank = 0;
  std::vector<Integer> torsion;

  int generators() const { return free_rank + static_cast<int>(torsion.size()); }
  /// Order of generator g, or 0 for a free generator.
  Integer order(int g) const;
  /// Throws DocumentError if the divisibility chain is broken.
  void check() const;

  friend bool operator==(const FinAbGroup& a, const FinAbGroup& b) {
    return a.free_rank == b.free_rank && a.torsion == b.torsion;
  }
};

/// Order-preserving map Z^n -> Z^m, stored as an m x n integer matrix.
struct PositiveHom {
  MatrixZ matrix;

  Index source_rank() const { return matrix.cols(); }
  Index target_rank() const { return matrix.rows(); }
  static PositiveHom identity(int n);

  friend bool operator==(const PositiveHom& a, const PositiveHom& b) { return same_matrix(a.matrix, b.matrix); }
};

struct K1Hom {
  FinAbGroup source;
  FinAbGroup target;
  MatrixZ matrix;  // target generators x source generators

  static K1Hom identity(const FinAbGroup& g);

  friend bool operator==(const K1Hom& a, const K1Hom& b) {
    return a.source == b.source && a.target == b.target && same_matrix(a.matrix, b.matrix);
  }
};

IdealSupport support(const VectorZ& p, int n);
bool in_group_p(const VectorZ& e, const VectorZ& p);
IdealSupport generated_ideal(const std::vector<VectorZ>& ps, int n);
std::vector<IdealSupport> enumerate_ideals(const ScaledOrderedGroup& g);

/// Support of theta0 applied to the ideal with support s.
IdealSupport image_support(const MatrixZ& theta0, IdealSupport s);
/// Largest source support whose image lies in t.
IdealSupport preimage_support(const MatrixZ& theta0, IdealSupport t);

Report validate_scaled_hom(const PositiveHom& m, const ScaledOrderedGroup& g, const ScaledOrderedGroup& h);
PositiveHom compose_homs(const PositiveHom& m2, const PositiveHom& m1);

Report validate_k1_hom(const K1Hom& h);
K1Hom compose_k1(const K1Hom& h2, const K1Hom& h1);

}  // namespace eeinv
