#include "eeinv/trace_cones.hpp"

#include "eeinv/errors.hpp"
#include "eeinv/linalg.hpp"
#include "eeinv/linear_program.hpp"

namespace eeinv {

ExtRat::ExtRat(const Rational& value) : value_(value) {
  if (value < 0) throw DomainError("extended value must be nonnegative, got " + format_rational(value));
}

ExtRat ExtRat::infinity() {
  ExtRat a;
  a.infinite_ = true;
  return a;
}

const Rational& ExtRat::value() const {
  if (infinite_) throw DomainError("value() of infinity");
  return value_;
}

bool operator==(const ExtRat& a, const ExtRat& b) {
  if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
  return a.value_ == b.value_;
}

std::strong_ordering operator<=>(const ExtRat& a, const ExtRat& b) {
  if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
  if (a.value_ < b.value_) return std::strong_ordering::less;
  if (b.value_ < a.value_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

ExtRat ext_add(const ExtRat& a, const ExtRat& b) {
  if (a.is_infinite() || b.is_infinite()) return ExtRat::infinity();
  return ExtRat(a.value() + b.value());
}

ExtRat ext_scale(const Rational& alpha, const ExtRat& a) {
  if (alpha <= 0) throw DomainError("scalar must be strictly positive, got " + format_rational(alpha));
  if (a.is_infinite()) return a;
  return ExtRat(alpha * a.value());
}

std::string format_ext(const ExtRat& a) { return a.is_infinite() ? "inf" : format_rational(a.value()); }

namespace {

void same_length(const TraceVector& a, const TraceVector& b, const char* op) {
  if (a.size() != b.size()) throw DimensionError(std::string(op) + ": length mismatch");
}

}  // namespace

ExtRat pairing(const VectorZ& p, const TraceVector& tau) {
  if (static_cast<std::size_t>(p.size()) != tau.size()) throw DimensionError("pairing: length mismatch");
  ExtRat sum;
  for (Index i = 0; i < p.size(); ++i) {
    if (p(i) < 0) throw DomainError("pairing: negative group entry");
    if (p(i) == 0) continue;
    sum = sum + ext_scale(Rational(p(i)), tau[static_cast<std::size_t>(i)]);
  }
  return sum;
}

bool alg_leq(const TraceVector& a, const TraceVector& b) {
  same_length(a, b, "alg_leq");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

TraceVector meet_pointwise(const TraceVector& a, const TraceVector& b) {
  same_length(a, b, "meet");
  TraceVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::min(a[i], b[i]);
  return out;
}

TraceVector join_pointwise(const TraceVector& a, const TraceVector& b) {
  same_length(a, b, "join");
  TraceVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::max(a[i], b[i]);
  return out;
}

TraceVector add_pointwise(const TraceVector& a, const TraceVector& b) {
  same_length(a, b, "add");
  TraceVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

Report simplex_base_check(const SimplicialCone& c, const std::string& where) {
  Report r;
  for (Index i = 0; i < c.dim(); ++i)
    if (!(c.base(i) > 0))
      r.add(Check::SimplexBase, where + " ray " + std::to_string(i),
            "base functional is " + format_rational(c.base(i)));
  return r;
}

RieszParts riesz_decompose(const VectorQ& f, const VectorQ& g, const VectorQ& h) {
  if (f.size() != g.size() || f.size() != h.size()) throw DimensionError("riesz_decompose: length mismatch");
  RieszParts out{VectorQ(f.size()), VectorQ(f.size())};
  for (Index i = 0; i < f.size(); ++i) {
    if (f(i) < 0 || g(i) < 0 || h(i) < 0)
      throw DecompositionError("riesz_decompose: negative entry at coordinate " + std::to_string(i));
    if (f(i) > g(i) + h(i))
      throw DecompositionError("riesz_decompose: f exceeds g + h at coordinate " + std::to_string(i));
    out.g_hat(i) = f(i) < g(i) ? f(i) : g(i);
    out.h_hat(i) = f(i) - out.g_hat(i);
  }
  return out;
}

HereditaryLift hereditary_lift(const VectorQ& f, const VectorQ& g, const MatrixQ& pull) {
  if (pull.cols() != f.size() || pull.rows() != g.size()) throw DimensionError("hereditary_lift: shape mismatch");
  const VectorQ pulled = pull * f;
  for (Index i = 0; i < g.size(); ++i)
    if (pulled(i) < g(i))
      throw HereditaryError("hereditary_lift: precondition fails at coordinate " + std::to_string(i));
  // h = f - s with s >= 0 and pull s = pull f - g; maximize h.
  const auto res = lp::minimize<Rational>(pull, VectorQ(pulled - g), VectorQ::Ones(f.size()));
  if (res.status == lp::Status::Optimal) return {VectorQ(f - res.x), true};
  auto h = linalg::solve<Rational>(pull, g);
  if (!h) throw HereditaryError("hereditary_lift: g is not in the image of the pullback");
  return {*h, false};
}

}  // namespace eeinv
