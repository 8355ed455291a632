#include "eeinv/elliott.hpp"

#include "eeinv/errors.hpp"
#include "eeinv/linear_program.hpp"

#include <set>

namespace eeinv {

namespace {

VectorQ min_vec(const VectorQ& a, const VectorQ& b) {
  VectorQ out(a.size());
  for (Index i = 0; i < a.size(); ++i) out(i) = a(i) < b(i) ? a(i) : b(i);
  return out;
}

VectorQ max_vec(const VectorQ& a, const VectorQ& b) {
  VectorQ out(a.size());
  for (Index i = 0; i < a.size(); ++i) out(i) = a(i) < b(i) ? b(i) : a(i);
  return out;
}

bool leq_vec(const VectorQ& a, const VectorQ& b) {
  for (Index i = 0; i < a.size(); ++i)
    if (a(i) > b(i)) return false;
  return true;
}

// Pointwise least solution of A w = b, w >= 0, when one exists.
enum class LeastStatus { Ok, Empty, NoLeast };

LeastStatus least_solution(const MatrixQ& a, const VectorQ& b, VectorQ& out) {
  out = VectorQ::Zero(a.cols());
  for (Index j = 0; j < a.cols(); ++j) {
    VectorQ c = VectorQ::Zero(a.cols());
    c(j) = 1;
    const auto res = lp::minimize<Rational>(a, b, c);
    if (res.status != lp::Status::Optimal) return LeastStatus::Empty;
    out(j) = res.value;
  }
  if (!same_matrix(a * out, b)) return LeastStatus::NoLeast;
  return LeastStatus::Ok;
}

}  // namespace

bool operator==(const EMorphism& a, const EMorphism& b) {
  if (!(a.theta0 == b.theta0) || !(a.theta1 == b.theta1) || a.zeta.size() != b.zeta.size()) return false;
  for (std::size_t i = 0; i < a.zeta.size(); ++i)
    if (!same_matrix(a.zeta[i], b.zeta[i])) return false;
  return same_matrix(a.phantom, b.phantom);
}

void check_element(const XElement& x, const TraceConeX& X) {
  if (x.support >= X.family.num_supports()) throw ContextError("element support " + format_support(x.support) + " exceeds the rank");
  if (x.finite.size() != X.family.dim(x.support))
    throw ContextError("element on " + format_support(x.support) + " has " + std::to_string(x.finite.size()) +
                       " coordinates, cone has " + std::to_string(X.family.dim(x.support)));
  if (x.phantom.size() != X.phantom_dim) throw ContextError("element has the wrong number of phantom coordinates");
  if (!is_nonnegative(x.finite) || !is_nonnegative(x.phantom)) throw DomainError("element has a negative coordinate");
}

ExtRat eval_sG(const VectorZ& q, const XElement& x, const TraceConeX& X) {
  check_element(x, X);
  const IdealSupport qs = support(q, X.family.rank());
  if (qs == 0) return ExtRat();
  if (!x.phantom.isZero()) return ExtRat::infinity();
  if (!is_subset(qs, x.support)) return ExtRat::infinity();
  const VectorQ v = X.family.restriction(x.support, qs) * x.finite;
  return ExtRat(X.family.pairing_of(qs, q).dot(v));
}

XElement x_add(const XElement& x, const XElement& y, const TraceConeX& X) {
  check_element(x, X);
  check_element(y, X);
  const IdealSupport s = x.support & y.support;
  const auto& d = X.family;
  return {s, d.restriction(x.support, s) * x.finite + d.restriction(y.support, s) * y.finite, x.phantom + y.phantom};
}

XElement x_scale(const Rational& t, const XElement& x, const TraceConeX& X) {
  check_element(x, X);
  if (!(t > 0)) throw DomainError("x_scale: scalar must be strictly positive");
  return {x.support, t * x.finite, t * x.phantom};
}

bool x_leq(const XElement& x, const XElement& y, const TraceConeX& X) {
  check_element(x, X);
  check_element(y, X);
  if (!is_subset(y.support, x.support)) return false;
  return leq_vec(X.family.restriction(x.support, y.support) * x.finite, y.finite) && leq_vec(x.phantom, y.phantom);
}

XElement x_join(const XElement& x, const XElement& y, const TraceConeX& X) {
  check_element(x, X);
  check_element(y, X);
  const IdealSupport s = x.support & y.support;
  const auto& d = X.family;
  return {s, max_vec(d.restriction(x.support, s) * x.finite, d.restriction(y.support, s) * y.finite),
          max_vec(x.phantom, y.phantom)};
}

Rational meet_functional(IdealSupport p, const VectorQ& f, const XElement& x, const XElement& y, const DeltaFamily& d) {
  const IdealSupport sx = x.support;
  const IdealSupport sy = y.support;
  if (!is_subset(p, sx | sy)) throw DomainError("meet_functional: " + format_support(p) + " is outside both supports");
  if (f.size() != d.dim(p)) throw DimensionError("meet_functional: functional has wrong length");
  const auto tau = [&](IdealSupport r) -> VectorQ { return d.restriction(sx, r) * x.finite; };
  const auto phi = [&](IdealSupport r) -> VectorQ { return d.restriction(sy, r) * y.finite; };
  const auto both = [&](IdealSupport r) -> VectorQ { return min_vec(tau(r), phi(r)); };
  const auto pull = [&](IdealSupport from, IdealSupport to) -> MatrixQ { return d.restriction(from, to).transpose(); };

  // Each piece is a cone of functionals pulled back into C_p, with the
  // cost of one unit of each ray.
  std::vector<std::pair<MatrixQ, VectorQ>> pieces;
  const IdealSupport p1 = p & sx;
  const IdealSupport p2 = p & sy;
  const IdealSupport common = p1 & p2;
  if (p1 == p) {
    pieces.emplace_back(MatrixQ::Identity(d.dim(p), d.dim(p)), tau(p));
    pieces.emplace_back(pull(p, p2), both(p2));
  } else if (p2 == p) {
    pieces.emplace_back(MatrixQ::Identity(d.dim(p), d.dim(p)), phi(p));
    pieces.emplace_back(pull(p, p1), both(p1));
  } else {
    pieces.emplace_back(pull(p, p1), tau(p1));
    pieces.emplace_back(MatrixQ(pull(p, p1) * pull(p1, common)), both(common));
    pieces.emplace_back(pull(p, p2), phi(p2));
    pieces.emplace_back(MatrixQ(pull(p, p2) * pull(p2, common)), both(common));
  }
  Index cols = 0;
  for (const auto& pc : pieces) cols += pc.first.cols();
  MatrixQ a(f.size(), cols);
  VectorQ cost(cols);
  Index at = 0;
  for (const auto& [m, c] : pieces) {
    a.middleCols(at, m.cols()) = m;
    cost.segment(at, c.size()) = c;
    at += m.cols();
  }
  const auto res = lp::minimize<Rational>(a, f, cost);
  if (res.status == lp::Status::Infeasible)
    throw DecompositionError("meet_functional: functional on " + format_support(p) + " does not decompose");
  if (res.status == lp::Status::Unbounded) throw DecompositionError("meet_functional: unbounded minimization");
  return res.value;
}

XElement x_meet(const XElement& x, const XElement& y, const TraceConeX& X) {
  check_element(x, X);
  check_element(y, X);
  const IdealSupport u = x.support | y.support;
  const Index k = X.family.dim(u);
  VectorQ psi(k);
  for (Index j = 0; j < k; ++j) {
    VectorQ e = VectorQ::Zero(k);
    e(j) = 1;
    psi(j) = meet_functional(u, e, x, y, X.family);
  }
  return {u, psi, min_vec(x.phantom, y.phantom)};
}

TraceVector embed(const XElement& x, const BlockLayout& layout, const TraceConeX& X) {
  check_element(x, X);
  std::vector<Index> offset;
  Index total = 0;
  for (const auto& s : layout.sigma) {
    offset.push_back(total);
    total += s.size();
  }
  TraceVector out(static_cast<std::size_t>(total), ExtRat::infinity());
  const auto& rays = layout.rays[x.support];
  for (std::size_t rho = 0; rho < rays.size(); ++rho)
    out[static_cast<std::size_t>(offset[static_cast<std::size_t>(rays[rho].block)] + rays[rho].ray)] =
        ExtRat(rays[rho].scale * x.finite(static_cast<Index>(rho)));
  for (Index i = 0; i < x.phantom.size(); ++i) out.emplace_back(x.phantom(i));
  return out;
}

XElement meet_closed_form(const XElement& x, const XElement& y, const BlockLayout& layout, const TraceConeX& X) {
  const TraceVector m = meet_pointwise(embed(x, layout, X), embed(y, layout, X));
  std::vector<Index> offset;
  Index total = 0;
  for (const auto& s : layout.sigma) {
    offset.push_back(total);
    total += s.size();
  }
  XElement out{x.support | y.support, {}, VectorQ(X.phantom_dim)};
  const auto& rays = layout.rays[out.support];
  out.finite.resize(static_cast<Index>(rays.size()));
  for (std::size_t rho = 0; rho < rays.size(); ++rho)
    out.finite(static_cast<Index>(rho)) =
        m[static_cast<std::size_t>(offset[static_cast<std::size_t>(rays[rho].block)] + rays[rho].ray)].value() / rays[rho].scale;
  for (Index i = 0; i < X.phantom_dim; ++i) out.phantom(i) = m[static_cast<std::size_t>(total + i)].value();
  return out;
}

XElement extend_by_infinity(IdealSupport s, const VectorQ& v, const TraceConeX& X) {
  if (s >= X.family.num_supports()) throw DomainError("extend_by_infinity: unknown support " + format_support(s));
  XElement x{s, v, VectorQ::Zero(X.phantom_dim)};
  check_element(x, X);
  return x;
}

VectorQ extend_min(const VectorQ& v, IdealSupport s, IdealSupport sp, const DeltaFamily& d) {
  if (!is_subset(s, sp)) throw DomainError("extend_min: " + format_support(s) + " is not within " + format_support(sp));
  if (v.size() != d.dim(s)) throw DimensionError("extend_min: value has wrong length");
  if (!is_nonnegative(v)) throw DomainError("extend_min: value has a negative coordinate");
  VectorQ w;
  switch (least_solution(d.restriction(sp, s), v, w)) {
    case LeastStatus::Empty:
      throw ExtensionError("extend_min: no point of " + format_support(sp) + " restricts to the value");
    case LeastStatus::NoLeast:
      throw ExtensionError("extend_min: the fiber over " + format_support(s) + " has no least point");
    case LeastStatus::Ok:
      break;
  }
  return w;
}

VectorQ restrict_x(const XElement& x, IdealSupport sp, const TraceConeX& X) {
  check_element(x, X);
  return X.family.restriction(x.support, sp & x.support) * x.finite;
}

XElement glue_partial_traces(const std::vector<PartialTrace>& parts, const TraceConeX& X) {
  const auto& d = X.family;
  IdealSupport u = 0;
  Index rows = 0;
  for (const auto& part : parts) {
    if (part.support >= d.num_supports()) throw DomainError("glue: unknown support " + format_support(part.support));
    if (part.value.size() != d.dim(part.support)) throw DimensionError("glue: part on " + format_support(part.support) + " has wrong length");
    if (!is_nonnegative(part.value)) throw DomainError("glue: part has a negative coordinate");
    u |= part.support;
    rows += part.value.size();
  }
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (std::size_t j = i + 1; j < parts.size(); ++j) {
      const IdealSupport overlap = parts[i].support & parts[j].support;
      const VectorQ a = d.restriction(parts[i].support, overlap) * parts[i].value;
      const VectorQ b = d.restriction(parts[j].support, overlap) * parts[j].value;
      for (Index r = 0; r < a.size(); ++r)
        if (a(r) != b(r))
          throw GluingConflict(i, j, r,
                               "glue: parts " + std::to_string(i) + " and " + std::to_string(j) + " disagree on " +
                                   format_support(overlap) + " ray " + std::to_string(r) + " (" + format_rational(a(r)) +
                                   " vs " + format_rational(b(r)) + ")");
    }
  // Constraints in ascending support order, one block of rows per part.
  std::vector<std::size_t> order(parts.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return parts[a].support < parts[b].support; });
  MatrixQ a(rows, d.dim(u));
  VectorQ b(rows);
  Index at = 0;
  for (std::size_t i : order) {
    const auto& part = parts[i];
    a.middleRows(at, part.value.size()) = d.restriction(u, part.support);
    b.segment(at, part.value.size()) = part.value;
    at += part.value.size();
  }
  VectorQ w;
  switch (least_solution(a, b, w)) {
    case LeastStatus::Empty:
      throw GluingError("glue: consistent parts admit no common extension to " + format_support(u));
    case LeastStatus::NoLeast:
      throw GluingError("glue: common extensions to " + format_support(u) + " have no least element");
    case LeastStatus::Ok:
      break;
  }
  return {u, w, VectorQ::Zero(X.phantom_dim)};
}

XElement random_element(const TraceConeX& X, Rng& rng) {
  const auto& d = X.family;
  XElement x;
  x.support = static_cast<IdealSupport>(rng.between(0, static_cast<Integer>(d.num_supports()) - 1));
  x.finite.resize(d.dim(x.support));
  for (Index i = 0; i < x.finite.size(); ++i) x.finite(i) = rng.small_rational(6, 3);
  x.phantom = VectorQ::Zero(X.phantom_dim);
  if (X.phantom_dim > 0 && rng.chance(1, 2))
    for (Index i = 0; i < X.phantom_dim; ++i) x.phantom(i) = rng.small_rational(6, 3);
  return x;
}

namespace {

VectorZ random_group_element(int n, Rng& rng) {
  VectorZ q(n);
  for (int i = 0; i < n; ++i) q(i) = rng.chance(1, 2) ? 0 : rng.between(1, 3);
  return q;
}

// Records each check at most once so sampled failures stay readable.
class OnceReport {
 public:
  explicit OnceReport(Report& r) : r_(r) {}
  void add(Check c, std::string loc, std::string detail) {
    if (seen_.insert(c).second) r_.add(c, std::move(loc), std::move(detail));
  }

 private:
  Report& r_;
  std::set<Check> seen_;
};

}  // namespace

Report validate_e_object(const EObject& e, const ValidationOptions& opts) {
  Report r;
  const TraceConeX& X = e.x;
  const DeltaFamily& d = X.family;
  if (e.group.rank != d.rank()) {
    r.add(Check::Structure, "group", "rank " + std::to_string(e.group.rank) + " but family rank " + std::to_string(d.rank()));
    return r;
  }
  if (X.phantom_dim < 0) {
    r.add(Check::Structure, "phantom_dim", "negative");
    return r;
  }
  try {
    e.k1.check();
  } catch (const DocumentError& err) {
    r.add(Check::Structure, "k1", err.what());
  }
  r.merge(validate_family(d));
  if (!r.ok()) return r;

  const auto meet = opts.meet_override ? opts.meet_override : x_meet;
  const auto layout = block_layout(d);
  Rng rng(opts.seed);
  std::vector<XElement> pool;
  for (int i = 0; i < opts.samples; ++i) pool.push_back(random_element(X, rng));
  OnceReport once(r);
  const auto pick = [&]() -> const XElement& { return pool[static_cast<std::size_t>(rng.between(0, opts.samples - 1))]; };
  for (int k = 0; k < opts.samples; ++k) {
    const XElement& x = pool[static_cast<std::size_t>(k)];
    const XElement& y = pick();
    const XElement& z = pick();
    const std::string where = "sample " + std::to_string(k);
    const XElement m = meet(x, y, X);
    const XElement j = x_join(x, y, X);
    if (!x_leq(m, x, X) || !x_leq(m, y, X)) once.add(Check::Lattice, where, "meet is not a lower bound");
    if (!x_leq(x, j, X) || !x_leq(y, j, X)) once.add(Check::Lattice, where, "join is not an upper bound");
    if (x_leq(z, x, X) && x_leq(z, y, X) && !x_leq(z, m, X)) once.add(Check::Lattice, where, "meet is not greatest");
    if (x_leq(x, z, X) && x_leq(y, z, X) && !x_leq(j, z, X)) once.add(Check::Lattice, where, "join is not least");
    if (layout && !(m == meet_closed_form(x, y, *layout, X)))
      once.add(Check::Lattice, where, "meet differs from the pointwise minimum of block values");

    const VectorZ q1 = random_group_element(d.rank(), rng);
    const VectorZ q2 = random_group_element(d.rank(), rng);
    if (!(eval_sG(q1 + q2, x, X) == eval_sG(q1, x, X) + eval_sG(q2, x, X)))
      once.add(Check::PairingAdditivity, where, "pairing is not additive in the group element");
    if (!(eval_sG(q1, x_add(x, y, X), X) == eval_sG(q1, x, X) + eval_sG(q1, y, X)))
      once.add(Check::PairingAdditivity, where, "pairing is not additive in the trace");

    const IdealSupport u = x.support | y.support;
    const IdealSupport p = u & static_cast<IdealSupport>(rng.between(0, static_cast<Integer>(d.num_supports()) - 1));
    const IdealSupport q = p & static_cast<IdealSupport>(rng.between(0, static_cast<Integer>(d.num_supports()) - 1));
    VectorQ g(d.dim(q));
    for (Index i = 0; i < g.size(); ++i) g(i) = rng.small_rational(3, 2);
    const VectorQ pulled = d.restriction(p, q).transpose() * g;
    if (meet_functional(p, pulled, x, y, d) != meet_functional(q, g, x, y, d))
      once.add(Check::WellDefined, where + " " + format_support(p) + "," + format_support(q),
               "meet value changes under pullback");
  }
  return r;
}

XElement apply_zeta(const EMorphism& m, const XElement& tau) {
  if (tau.support >= m.zeta.size()) throw ContextError("apply_zeta: support outside the target rank");
  const MatrixQ& z = m.zeta[tau.support];
  if (z.cols() != tau.finite.size() || m.phantom.cols() != tau.phantom.size())
    throw ContextError("apply_zeta: element does not match the morphism's target");
  return {preimage_support(m.theta0.matrix, tau.support), z * tau.finite, m.phantom * tau.phantom};
}

Report validate_e_morphism(const EMorphism& m, const EObject& src, const EObject& dst, const ValidationOptions& opts) {
  Report r;
  const DeltaFamily& g = src.x.family;
  const DeltaFamily& h = dst.x.family;
  if (m.theta0.source_rank() != g.rank() || m.theta0.target_rank() != h.rank()) {
    r.add(Check::Structure, "theta0", "shape does not match the object ranks");
    return r;
  }
  r.merge(validate_scaled_hom(m.theta0, src.group, dst.group));
  if (!(m.theta1.source == src.k1) || !(m.theta1.target == dst.k1) ||
      m.theta1.matrix.rows() != dst.k1.generators() || m.theta1.matrix.cols() != src.k1.generators())
    r.add(Check::Structure, "theta1", "K1 groups or matrix shape do not match the objects");
  else
    r.merge(validate_k1_hom(m.theta1));

  if (m.zeta.size() != h.num_supports()) {
    r.add(Check::Completeness, "zeta", "expected " + std::to_string(h.num_supports()) + " components");
    return r;
  }
  bool complete = true;
  for (IdealSupport t = 0; t < h.num_supports(); ++t) {
    const IdealSupport s = preimage_support(m.theta0.matrix, t);
    const MatrixQ& z = m.zeta[t];
    if (z.rows() != g.dim(s) || z.cols() != h.dim(t)) {
      r.add(Check::Completeness, "zeta" + format_support(t), "expected " + std::to_string(g.dim(s)) + "x" + std::to_string(h.dim(t)));
      complete = false;
    } else if (!is_nonnegative(z)) {
      r.add(Check::Positivity, "zeta" + format_support(t), "negative entry");
    }
  }
  if (m.phantom.rows() != src.x.phantom_dim || m.phantom.cols() != dst.x.phantom_dim) {
    r.add(Check::Completeness, "phantom", "expected " + std::to_string(src.x.phantom_dim) + "x" + std::to_string(dst.x.phantom_dim));
    complete = false;
  } else if (!is_nonnegative(m.phantom)) {
    r.add(Check::Positivity, "phantom", "negative entry");
  }
  if (!complete || r.has(Check::Positivity) || r.has(Check::Structure)) return r;

  // Naturality makes zeta well defined on sums of elements with different supports.
  for (IdealSupport t = 0; t < h.num_supports(); ++t) {
    const IdealSupport s = preimage_support(m.theta0.matrix, t);
    for (IdealSupport tp = 0; tp < t; ++tp) {
      if (!is_subset(tp, t)) continue;
      const IdealSupport sp = preimage_support(m.theta0.matrix, tp);
      if (!same_matrix(MatrixQ(m.zeta[tp] * h.restriction(t, tp)), MatrixQ(g.restriction(s, sp) * m.zeta[t])))
        r.add(Check::Affinity, "(" + format_support(t) + "," + format_support(tp) + ")", "zeta does not commute with restriction");
    }
  }
  // Exact form of the compatibility on generators.
  for (IdealSupport t = 0; t < h.num_supports(); ++t) {
    const IdealSupport s = preimage_support(m.theta0.matrix, t);
    for (int i : members(s)) {
      const VectorQ lhs = m.zeta[t].transpose() * g.pairing(s, i);
      const VectorQ rhs = h.pairing_of(t, m.theta0.matrix.col(i));
      if (!same_matrix(lhs, rhs)) {
        r.add(Check::Compatibility, "zeta" + format_support(t) + " generator " + std::to_string(i),
              "pairing of e_i after zeta differs from pairing of theta0(e_i)");
        break;
      }
    }
  }
  Rng rng(opts.seed);
  OnceReport once(r);
  for (int k = 0; k < opts.samples; ++k) {
    const XElement y1 = random_element(dst.x, rng);
    const XElement y2 = random_element(dst.x, rng);
    const XElement img = apply_zeta(m, y1);
    const std::string where = "sample " + std::to_string(k);
    for (int i = 0; i < g.rank(); ++i) {
      VectorZ e = VectorZ::Zero(g.rank());
      e(i) = 1;
      if (!(eval_sG(e, img, src.x) == eval_sG(m.theta0.matrix.col(i), y1, dst.x)))
        once.add(Check::Compatibility, where + " generator " + std::to_string(i), "tau(theta0(e_i)) differs from zeta(tau)(e_i)");
    }
    for (const Rational& t : {Rational(1, 2), Rational(1, 3)}) {
      const XElement mix = x_add(x_scale(t, y1, dst.x), x_scale(1 - t, y2, dst.x), dst.x);
      const XElement lhs = apply_zeta(m, mix);
      const XElement rhs = x_add(x_scale(t, img, src.x), x_scale(1 - t, apply_zeta(m, y2), src.x), src.x);
      if (!(lhs == rhs)) once.add(Check::Affinity, where, "zeta is not affine at t = " + format_rational(t));
    }
  }
  return r;
}

EMorphism compose_e_morphisms(const EMorphism& m2, const EMorphism& m1) {
  EMorphism out;
  out.theta0 = compose_homs(m2.theta0, m1.theta0);
  out.theta1 = compose_k1(m2.theta1, m1.theta1);
  const IdealSupport count = IdealSupport{1} << m2.theta0.target_rank();
  if (m2.zeta.size() != count || m1.zeta.size() != (std::size_t{1} << m1.theta0.target_rank()))
    throw DimensionError("compose_e_morphisms: incomplete zeta family");
  out.zeta.resize(count);
  for (IdealSupport t = 0; t < count; ++t) {
    const MatrixQ& outer = m1.zeta[preimage_support(m2.theta0.matrix, t)];
    const MatrixQ& inner = m2.zeta[t];
    if (outer.cols() != inner.rows()) throw DimensionError("compose_e_morphisms: zeta shapes do not align at " + format_support(t));
    out.zeta[t] = outer * inner;
  }
  if (m1.phantom.cols() != m2.phantom.rows()) throw DimensionError("compose_e_morphisms: phantom maps do not align");
  out.phantom = m1.phantom * m2.phantom;
  return out;
}

EMorphism identity_e_morphism(const EObject& e) {
  EMorphism m{PositiveHom::identity(e.group.rank), K1Hom::identity(e.k1), {},
              MatrixQ::Identity(e.x.phantom_dim, e.x.phantom_dim)};
  for (IdealSupport t = 0; t < e.x.family.num_supports(); ++t)
    m.zeta.push_back(MatrixQ::Identity(e.x.family.dim(t), e.x.family.dim(t)));
  return m;
}

}  // namespace eeinv
