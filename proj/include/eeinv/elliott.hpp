#pragma once

// Elliott-side data: the extended trace cone X presented over a Delta
// family plus phantom rays, its lattice operations, the K0 pairing, and
// the morphisms zeta acting contravariantly on X.

#include "eeinv/ordered_groups.hpp"
#include "eeinv/random.hpp"
#include "eeinv/report.hpp"
#include "eeinv/stevens.hpp"
#include "eeinv/trace_cones.hpp"

#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace eeinv {

struct TraceConeX {
  DeltaFamily family;
  Index phantom_dim = 0;

  friend bool operator==(const TraceConeX& a, const TraceConeX& b) {
    return a.phantom_dim == b.phantom_dim && a.family == b.family;
  }
};

/// A trace finite exactly on the ideal with the given support, stored as a
/// point of that support's cone, plus phantom coordinates.
struct XElement {
  IdealSupport support = 0;
  VectorQ finite;
  VectorQ phantom;

  friend bool operator==(const XElement& a, const XElement& b) {
    return a.support == b.support && same_matrix(a.finite, b.finite) && same_matrix(a.phantom, b.phantom);
  }
};

struct EObject {
  ScaledOrderedGroup group;
  FinAbGroup k1;
  TraceConeX x;

  friend bool operator==(const EObject& a, const EObject& b) {
    return a.group == b.group && a.k1 == b.k1 && a.x == b.x;
  }
};

/// zeta[T] maps C^H_T into C^G_{S(T)}, S(T) the preimage support of T;
/// `phantom` maps phantom coordinates of H to those of G.
struct EMorphism {
  PositiveHom theta0;
  K1Hom theta1;
  std::vector<MatrixQ> zeta;
  MatrixQ phantom;

  friend bool operator==(const EMorphism& a, const EMorphism& b);
};

/// Throws ContextError unless x is shaped for X.
void check_element(const XElement& x, const TraceConeX& X);

ExtRat eval_sG(const VectorZ& q, const XElement& x, const TraceConeX& X);

XElement x_add(const XElement& x, const XElement& y, const TraceConeX& X);
XElement x_scale(const Rational& t, const XElement& x, const TraceConeX& X);
bool x_leq(const XElement& x, const XElement& y, const TraceConeX& X);
XElement x_join(const XElement& x, const XElement& y, const TraceConeX& X);
XElement x_meet(const XElement& x, const XElement& y, const TraceConeX& X);

/// Value of the meet of x and y at the functional f on C_p, p within the
/// union of their supports, as an exact minimization over decompositions.
Rational meet_functional(IdealSupport p, const VectorQ& f, const XElement& x, const XElement& y, const DeltaFamily& d);

/// Per-block extended values of x (infinite off its support), phantom
/// coordinates appended.
TraceVector embed(const XElement& x, const BlockLayout& layout, const TraceConeX& X);
/// Meet by the pointwise minimum of embeddings.
XElement meet_closed_form(const XElement& x, const XElement& y, const BlockLayout& layout, const TraceConeX& X);

XElement extend_by_infinity(IdealSupport s, const VectorQ& v, const TraceConeX& X);
/// Least point of {w in C_sp : lambda_{sp,s} w = v}.
VectorQ extend_min(const VectorQ& v, IdealSupport s, IdealSupport sp, const DeltaFamily& d);
/// Finite part restricted to sp and the support of x.
VectorQ restrict_x(const XElement& x, IdealSupport sp, const TraceConeX& X);

struct PartialTrace {
  IdealSupport support;
  VectorQ value;
};

XElement glue_partial_traces(const std::vector<PartialTrace>& parts, const TraceConeX& X);

XElement random_element(const TraceConeX& X, Rng& rng);

struct ValidationOptions {
  int samples = 200;
  std::uint64_t seed = 0x5eed;
  /// Replaces x_meet inside the lattice checks; used to exercise the checker.
  std::function<XElement(const XElement&, const XElement&, const TraceConeX&)> meet_override;
};

Report validate_e_object(const EObject& e, const ValidationOptions& opts = {});

XElement apply_zeta(const EMorphism& m, const XElement& tau);
Report validate_e_morphism(const EMorphism& m, const EObject& src, const EObject& dst, const ValidationOptions& opts = {});
EMorphism compose_e_morphisms(const EMorphism& m2, const EMorphism& m1);
EMorphism identity_e_morphism(const EObject& e);

}  // namespace eeinv
