#include "eeinv/ordered_groups.hpp"

#include "eeinv/errors.hpp"

#include <bit>

namespace eeinv {

int support_size(IdealSupport s) { return std::popcount(s); }

std::vector<int> members(IdealSupport s) {
  std::vector<int> out;
  for (int i = 0; s != 0; ++i, s >>= 1)
    if (s & 1U) out.push_back(i);
  return out;
}

std::string format_support(IdealSupport s) {
  std::string out = "{";
  bool first = true;
  for (int i : members(s)) {
    if (!first) out += ",";
    out += std::to_string(i);
    first = false;
  }
  return out + "}";
}

ScaledOrderedGroup ScaledOrderedGroup::all(int n) {
  if (n < 0) throw DomainError("negative rank");
  ScaledOrderedGroup g;
  g.rank = n;
  g.scale_all = true;
  return g;
}

ScaledOrderedGroup ScaledOrderedGroup::with_unit(VectorZ u) {
  for (Index i = 0; i < u.size(); ++i)
    if (u(i) < 0) throw DomainError("negative scale entry at " + std::to_string(i));
  ScaledOrderedGroup g;
  g.rank = static_cast<int>(u.size());
  g.scale_all = false;
  g.unit = std::move(u);
  return g;
}

bool operator==(const ScaledOrderedGroup& a, const ScaledOrderedGroup& b) {
  if (a.rank != b.rank || a.scale_all != b.scale_all) return false;
  return a.scale_all || same_matrix(a.unit, b.unit);
}

Integer FinAbGroup::order(int g) const {
  if (g < free_rank) return 0;
  return torsion.at(static_cast<std::size_t>(g - free_rank));
}

void FinAbGroup::check() const {
  if (free_rank < 0) throw DocumentError("free_rank", "negative");
  for (std::size_t i = 0; i < torsion.size(); ++i) {
    if (torsion[i] < 2) throw DocumentError("torsion", "invariant factor below 2");
    if (i > 0 && torsion[i] % torsion[i - 1] != 0)
      throw DocumentError("torsion", "invariant factors must form a divisibility chain");
  }
}

PositiveHom PositiveHom::identity(int n) { return {MatrixZ::Identity(n, n)}; }

K1Hom K1Hom::identity(const FinAbGroup& g) {
  return {g, g, MatrixZ::Identity(g.generators(), g.generators())};
}

IdealSupport support(const VectorZ& p, int n) {
  if (p.size() != n) throw DimensionError("support: expected length " + std::to_string(n));
  if (n > kMaxIdealRank) throw CapacityError("support: rank above " + std::to_string(kMaxIdealRank));
  IdealSupport s = 0;
  for (Index i = 0; i < p.size(); ++i) {
    if (p(i) < 0) throw DomainError("support: negative entry at " + std::to_string(i));
    if (p(i) > 0) s |= IdealSupport{1} << i;
  }
  return s;
}

bool in_group_p(const VectorZ& e, const VectorZ& p) {
  if (e.size() != p.size()) throw DimensionError("in_group_p: length mismatch");
  for (Index i = 0; i < e.size(); ++i) {
    if (p(i) < 0) throw DomainError("in_group_p: negative entry in p");
    if (e(i) != 0 && p(i) == 0) return false;
  }
  return true;
}

IdealSupport generated_ideal(const std::vector<VectorZ>& ps, int n) {
  IdealSupport s = 0;
  for (const auto& p : ps) s |= support(p, n);
  return s;
}

std::vector<IdealSupport> enumerate_ideals(const ScaledOrderedGroup& g) {
  if (g.rank > kMaxIdealRank) throw CapacityError("enumerate_ideals: rank above " + std::to_string(kMaxIdealRank));
  std::vector<IdealSupport> out;
  const IdealSupport count = IdealSupport{1} << g.rank;
  out.reserve(count);
  for (IdealSupport s = 0; s < count; ++s) out.push_back(s);
  return out;
}

IdealSupport image_support(const MatrixZ& theta0, IdealSupport s) {
  IdealSupport t = 0;
  for (int i : members(s)) {
    if (i >= theta0.cols()) throw DimensionError("image_support: support exceeds source rank");
    for (Index j = 0; j < theta0.rows(); ++j)
      if (theta0(j, i) != 0) t |= IdealSupport{1} << j;
  }
  return t;
}

IdealSupport preimage_support(const MatrixZ& theta0, IdealSupport t) {
  IdealSupport s = 0;
  for (Index i = 0; i < theta0.cols(); ++i) {
    bool inside = true;
    for (Index j = 0; j < theta0.rows() && inside; ++j)
      if (theta0(j, i) != 0 && !(t & (IdealSupport{1} << j))) inside = false;
    if (inside) s |= IdealSupport{1} << i;
  }
  return s;
}

Report validate_scaled_hom(const PositiveHom& m, const ScaledOrderedGroup& g, const ScaledOrderedGroup& h) {
  if (m.source_rank() != g.rank || m.target_rank() != h.rank)
    throw DimensionError("theta0 is " + std::to_string(m.target_rank()) + "x" + std::to_string(m.source_rank()) +
                         ", groups have ranks " + std::to_string(g.rank) + " -> " + std::to_string(h.rank));
  Report r;
  bool positive = true;
  for (Index i = 0; i < m.matrix.rows(); ++i)
    for (Index j = 0; j < m.matrix.cols(); ++j)
      if (m.matrix(i, j) < 0) {
        positive = false;
        r.add(Check::Positivity, "theta0[" + std::to_string(i) + "," + std::to_string(j) + "]",
              "entry " + std::to_string(m.matrix(i, j)) + " < 0");
      }
  if (!positive || h.scale_all) return r;
  if (g.scale_all) {
    if (!m.matrix.isZero())
      r.add(Check::Scale, "theta0", "scale All cannot map into a bounded scale unless theta0 = 0");
    return r;
  }
  const VectorZ image = m.matrix * g.unit;
  for (Index i = 0; i < image.size(); ++i)
    if (image(i) > h.unit(i))
      r.add(Check::Scale, "coordinate " + std::to_string(i),
            "theta0(u) = " + std::to_string(image(i)) + " exceeds " + std::to_string(h.unit(i)));
  return r;
}

PositiveHom compose_homs(const PositiveHom& m2, const PositiveHom& m1) {
  if (m2.source_rank() != m1.target_rank()) throw DimensionError("compose_homs: ranks do not align");
  return {m2.matrix * m1.matrix};
}

namespace {

Integer mod(Integer a, Integer d) {
  const Integer r = a % d;
  return r < 0 ? r + d : r;
}

}  // namespace

Report validate_k1_hom(const K1Hom& h) {
  if (h.matrix.rows() != h.target.generators() || h.matrix.cols() != h.source.generators())
    throw DimensionError("theta1 matrix shape does not match the K1 presentations");
  Report r;
  for (int s = 0; s < h.source.generators(); ++s) {
    const Integer d = h.source.order(s);
    if (d == 0) continue;
    for (int t = 0; t < h.target.generators(); ++t) {
      const Integer dt = h.target.order(t);
      const Integer v = d * h.matrix(t, s);
      if ((dt == 0 && v != 0) || (dt != 0 && mod(v, dt) != 0))
        r.add(Check::K1Relation, "generator " + std::to_string(s),
              std::to_string(d) + " * " + std::to_string(h.matrix(t, s)) + " is nonzero in target component " +
                  std::to_string(t));
    }
  }
  return r;
}

K1Hom compose_k1(const K1Hom& h2, const K1Hom& h1) {
  if (!(h2.source == h1.target) || h2.matrix.cols() != h1.matrix.rows())
    throw DimensionError("compose_k1: groups do not align");
  K1Hom out{h1.source, h2.target, h2.matrix * h1.matrix};
  for (int t = 0; t < out.target.generators(); ++t) {
    const Integer d = out.target.order(t);
    if (d == 0) continue;
    for (Index s = 0; s < out.matrix.cols(); ++s) out.matrix(t, s) = mod(out.matrix(t, s), d);
  }
  return out;
}

}  // namespace eeinv
