#pragma once

// Extended nonnegative rationals, trace vectors over blocks, and the
// decomposition kernels behind the Riesz and hereditary conditions.

#include "eeinv/rational.hpp"
#include "eeinv/report.hpp"

#include <compare>
#include <string>
#include <utility>
#include <vector>

namespace eeinv {

/// A value in [0, +inf] with exact finite part.
class ExtRat {
 public:
  ExtRat() = default;
  ExtRat(const Rational& value);  // NOLINT: implicit on purpose, throws DomainError if negative
  ExtRat(Integer value) : ExtRat(Rational(value)) {}  // NOLINT

  static ExtRat infinity();

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }
  /// Finite value; throws DomainError on infinity.
  const Rational& value() const;

  friend bool operator==(const ExtRat& a, const ExtRat& b);
  friend std::strong_ordering operator<=>(const ExtRat& a, const ExtRat& b);

 private:
  Rational value_{0};
  bool infinite_ = false;
};

ExtRat ext_add(const ExtRat& a, const ExtRat& b);
ExtRat ext_scale(const Rational& alpha, const ExtRat& a);
inline ExtRat operator+(const ExtRat& a, const ExtRat& b) { return ext_add(a, b); }

/// "num/den" or "inf".
std::string format_ext(const ExtRat& a);

using TraceVector = std::vector<ExtRat>;

/// sum_i p_i tau_i with 0 * inf = 0.
ExtRat pairing(const VectorZ& p, const TraceVector& tau);
bool alg_leq(const TraceVector& a, const TraceVector& b);
TraceVector meet_pointwise(const TraceVector& a, const TraceVector& b);
TraceVector join_pointwise(const TraceVector& a, const TraceVector& b);
TraceVector add_pointwise(const TraceVector& a, const TraceVector& b);

/// Simplicial cone [0,inf)^k presented by its base functional.
struct SimplicialCone {
  VectorQ base;
  Index dim() const { return base.size(); }
};

Report simplex_base_check(const SimplicialCone& c, const std::string& where = "cone");

struct RieszParts {
  VectorQ g_hat;
  VectorQ h_hat;
};

/// Splits f <= g + h as g_hat + h_hat with g_hat <= g, h_hat <= h.
RieszParts riesz_decompose(const VectorQ& f, const VectorQ& g, const VectorQ& h);

struct HereditaryLift {
  VectorQ h;
  /// True when the lift also satisfies h <= f.
  bool dominated = false;
};

/// Given pull(f) >= g, returns h with pull(h) = g, preferring h <= f and
/// otherwise any exact solution. `pull` maps functionals on the cone of f
/// to functionals on the cone of g. Throws HereditaryError when the
/// precondition fails or g is outside the image of `pull`.
HereditaryLift hereditary_lift(const VectorQ& f, const VectorQ& g, const MatrixQ& pull);

}  // namespace eeinv
