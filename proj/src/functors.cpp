#include "eeinv/functors.hpp"

#include "eeinv/errors.hpp"
#include "eeinv/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace eeinv {

namespace {

Report family_report(const ScaledOrderedGroup& group, const FinAbGroup& k1, const DeltaFamily& d) {
  return validate_s_object(SObject{group, k1, d});
}

std::string matrix_text(const MatrixQ& m) {
  std::string out = "[";
  for (Index r = 0; r < m.rows(); ++r) {
    out += r ? ",[" : "[";
    for (Index c = 0; c < m.cols(); ++c) out += (c ? "," : "") + format_rational(m(r, c));
    out += "]";
  }
  return out + "]";
}

std::string matrix_text(const MatrixZ& m) { return matrix_text(MatrixQ(m.cast<Rational>())); }

std::string shape_text(const MatrixQ& m) { return std::to_string(m.rows()) + "x" + std::to_string(m.cols()); }

}  // namespace

SObject apply_G(const EObject& e) {
  const Report r = family_report(e.group, e.k1, e.x.family);
  if (!r.ok()) throw InvalidInput("apply_G: input object is invalid (" + r.summary() + ")");
  return {e.group, e.k1, e.x.family};
}

EObject apply_F(const SObject& s) {
  const Report r = validate_s_object(s);
  if (!r.ok()) throw InvalidInput("apply_F: input object is invalid (" + r.summary() + ")");
  return {s.group, s.k1, {s.deltas, 0}};
}

bool has_ideal_property(const EObject& e) { return e.x.phantom_dim == 0; }

EMorphism transport_s_to_e(const SMorphism& m, const SObject& src, const SObject& dst) {
  const Report r = validate_s_morphism(m, src, dst);
  if (!r.ok()) throw InvalidInput("transport: morphism is invalid (" + r.summary() + ")");
  const EObject esrc = apply_F(src);
  const DeltaFamily& g = src.deltas;
  const DeltaFamily& h = dst.deltas;
  const MatrixZ& theta = m.theta0.matrix;
  EMorphism out{m.theta0, m.theta1, {}, MatrixQ::Zero(0, 0)};
  out.zeta.resize(h.num_supports());
  for (IdealSupport t = 0; t < h.num_supports(); ++t) {
    // Finite exactly on the ideal generated by preimages of projections in t.
    const IdealSupport s = preimage_support(theta, t);
    MatrixQ z(g.dim(s), h.dim(t));
    for (Index c = 0; c < h.dim(t); ++c) {
      VectorQ v = VectorQ::Zero(h.dim(t));
      v(c) = 1;
      std::vector<PartialTrace> parts;
      for (int i : members(s)) {
        const IdealSupport si = IdealSupport{1} << i;
        parts.push_back({si, m.xi[si] * h.restriction(t, image_support(theta, si)) * v});
      }
      parts.push_back({s, m.xi[s] * h.restriction(t, image_support(theta, s)) * v});
      try {
        const XElement w = glue_partial_traces(parts, esrc.x);
        z.col(c) = w.finite;
      } catch (const GluingConflict& e) {
        throw TransportError(std::string("transport: inconsistent partial traces: ") + e.what());
      } catch (const GluingError& e) {
        throw TransportError(std::string("transport: ") + e.what());
      }
    }
    out.zeta[t] = std::move(z);
  }
  return out;
}

SMorphism transport_e_to_s(const EMorphism& m, const EObject& src, const EObject& dst, const ValidationOptions& opts) {
  if (!has_ideal_property(src) || !has_ideal_property(dst))
    throw TransportError("transport: objects with phantom rays are outside the ideal-property categories");
  const Report r = validate_e_morphism(m, src, dst, opts);
  if (!r.ok()) throw InvalidInput("transport: morphism is invalid (" + r.summary() + ")");
  const DeltaFamily& g = src.x.family;
  const DeltaFamily& h = dst.x.family;
  SMorphism out{m.theta0, m.theta1, {}};
  out.xi.resize(g.num_supports());
  for (IdealSupport s = 0; s < g.num_supports(); ++s) {
    const IdealSupport t = image_support(m.theta0.matrix, s);
    MatrixQ x(g.dim(s), h.dim(t));
    // tau finite on t, infinite elsewhere; its image is finite on s.
    for (Index c = 0; c < h.dim(t); ++c) {
      VectorQ v = VectorQ::Zero(h.dim(t));
      v(c) = 1;
      const XElement img = apply_zeta(m, extend_by_infinity(t, v, dst.x));
      if (!is_subset(s, img.support))
        throw TransportError("transport: zeta is infinite on " + format_support(s) + ", which maps into " + format_support(t));
      x.col(c) = restrict_x(img, s, src.x);
    }
    out.xi[s] = std::move(x);
  }
  return out;
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Identity:
      return "identity";
    case Verdict::IsomorphicViaWitness:
      return "isomorphic-via-witness";
    case Verdict::Mismatch:
      return "mismatch";
  }
  return "mismatch";
}

std::string RoundTripReport::render() const {
  std::string out = std::string("roundtrip ") + (direction == Direction::GF ? "GF" : "FG") + ": " + std::string(verdict_name(verdict));
  if (witness)
    out += " (" + witness->component + " at " + witness->location + ": expected " + witness->expected + ", got " +
           witness->actual + ")";
  return out + "\n";
}

std::optional<MismatchWitness> compare_objects(const SObject& expected, const SObject& actual) {
  if (!(expected.group == actual.group)) return MismatchWitness{"group", "K0", "original group", "different group"};
  if (!(expected.k1 == actual.k1)) return MismatchWitness{"k1", "K1", "original K1", "different K1"};
  const DeltaFamily& a = expected.deltas;
  const DeltaFamily& b = actual.deltas;
  if (a.rank() != b.rank()) return MismatchWitness{"family", "rank", std::to_string(a.rank()), std::to_string(b.rank())};
  for (IdealSupport s = 0; s < a.num_supports(); ++s)
    if (a.dim(s) != b.dim(s))
      return MismatchWitness{"cone", format_support(s), std::to_string(a.dim(s)), std::to_string(b.dim(s))};
  for (IdealSupport s = 0; s < a.num_supports(); ++s) {
    for (IdealSupport t = 0; t < a.num_supports(); ++t)
      if (is_subset(t, s) && !same_matrix(a.restriction(s, t), b.restriction(s, t)))
        return MismatchWitness{"restriction", "(" + format_support(s) + "," + format_support(t) + ")",
                               matrix_text(a.restriction(s, t)), matrix_text(b.restriction(s, t))};
    for (int i : members(s))
      if (!same_matrix(a.pairing(s, i), b.pairing(s, i)))
        return MismatchWitness{"pairing", format_support(s) + " generator " + std::to_string(i),
                               matrix_text(MatrixQ(a.pairing(s, i).transpose())), matrix_text(MatrixQ(b.pairing(s, i).transpose()))};
  }
  return std::nullopt;
}

std::optional<MismatchWitness> compare_objects(const EObject& expected, const EObject& actual) {
  if (expected.x.phantom_dim != actual.x.phantom_dim)
    return MismatchWitness{"phantom cone", "phantom_dim", std::to_string(expected.x.phantom_dim), std::to_string(actual.x.phantom_dim)};
  return compare_objects(SObject{expected.group, expected.k1, expected.x.family}, SObject{actual.group, actual.k1, actual.x.family});
}

RoundTripReport roundtrip_object(const SObject& s) {
  RoundTripReport out{Direction::GF, Verdict::Identity, std::nullopt};
  out.witness = compare_objects(s, apply_G(apply_F(s)));
  if (out.witness) out.verdict = Verdict::Mismatch;
  return out;
}

RoundTripReport roundtrip_object(const EObject& e) {
  RoundTripReport out{Direction::FG, Verdict::Identity, std::nullopt};
  out.witness = compare_objects(e, apply_F(apply_G(e)));
  if (out.witness) out.verdict = Verdict::Mismatch;
  return out;
}

namespace {

std::optional<MismatchWitness> compare_common(const PositiveHom& a0, const PositiveHom& b0, const K1Hom& a1, const K1Hom& b1) {
  if (!(a0 == b0)) return MismatchWitness{"theta0", "matrix", matrix_text(a0.matrix), matrix_text(b0.matrix)};
  if (!(a1 == b1)) return MismatchWitness{"theta1", "matrix", matrix_text(a1.matrix), matrix_text(b1.matrix)};
  return std::nullopt;
}

std::optional<MismatchWitness> compare_family(const char* name, const std::vector<MatrixQ>& a, const std::vector<MatrixQ>& b) {
  if (a.size() != b.size()) return MismatchWitness{name, "count", std::to_string(a.size()), std::to_string(b.size())};
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!same_matrix(a[i], b[i]))
      return MismatchWitness{name, format_support(static_cast<IdealSupport>(i)), matrix_text(a[i]), matrix_text(b[i])};
  return std::nullopt;
}

}  // namespace

RoundTripReport roundtrip_morphism(const SMorphism& m, const SObject& src, const SObject& dst) {
  RoundTripReport out{Direction::GF, Verdict::Identity, std::nullopt};
  const SMorphism back = transport_e_to_s(transport_s_to_e(m, src, dst), apply_F(src), apply_F(dst));
  out.witness = compare_common(m.theta0, back.theta0, m.theta1, back.theta1);
  if (!out.witness) out.witness = compare_family("xi", m.xi, back.xi);
  if (out.witness) out.verdict = Verdict::Mismatch;
  return out;
}

RoundTripReport roundtrip_morphism(const EMorphism& m, const EObject& src, const EObject& dst) {
  RoundTripReport out{Direction::FG, Verdict::Identity, std::nullopt};
  if (!has_ideal_property(src) || !has_ideal_property(dst)) {
    out.verdict = Verdict::Mismatch;
    out.witness = MismatchWitness{"phantom cone", "phantom", std::to_string(src.x.phantom_dim) + "x" + std::to_string(dst.x.phantom_dim), "0x0"};
    return out;
  }
  const EMorphism back = transport_s_to_e(transport_e_to_s(m, src, dst), apply_G(src), apply_G(dst));
  out.witness = compare_common(m.theta0, back.theta0, m.theta1, back.theta1);
  if (!out.witness) out.witness = compare_family("zeta", m.zeta, back.zeta);
  if (!out.witness && !same_matrix(m.phantom, back.phantom))
    out.witness = MismatchWitness{"phantom", "matrix", shape_text(m.phantom), shape_text(back.phantom)};
  if (out.witness) out.verdict = Verdict::Mismatch;
  return out;
}

Report verify_iso(const SObject& a, const SObject& b, const SMorphism& fwd, const SMorphism& bwd) {
  Report r;
  if (a.group.rank != b.group.rank) {
    r.add(Check::Isomorphism, "rank", std::to_string(a.group.rank) + " vs " + std::to_string(b.group.rank));
    return r;
  }
  r.merge(validate_s_morphism(fwd, a, b));
  r.merge(validate_s_morphism(bwd, b, a));
  if (!r.ok()) return r;
  if (!(compose_s_morphisms(bwd, fwd) == identity_s_morphism(a))) r.add(Check::Isomorphism, "bwd*fwd", "not the identity");
  if (!(compose_s_morphisms(fwd, bwd) == identity_s_morphism(b))) r.add(Check::Isomorphism, "fwd*bwd", "not the identity");
  return r;
}

Report verify_iso(const EObject& a, const EObject& b, const EMorphism& fwd, const EMorphism& bwd, const ValidationOptions& opts) {
  Report r;
  if (a.group.rank != b.group.rank) {
    r.add(Check::Isomorphism, "rank", std::to_string(a.group.rank) + " vs " + std::to_string(b.group.rank));
    return r;
  }
  r.merge(validate_e_morphism(fwd, a, b, opts));
  r.merge(validate_e_morphism(bwd, b, a, opts));
  if (!r.ok()) return r;
  if (!(compose_e_morphisms(bwd, fwd) == identity_e_morphism(a))) r.add(Check::Isomorphism, "bwd*fwd", "not the identity");
  if (!(compose_e_morphisms(fwd, bwd) == identity_e_morphism(b))) r.add(Check::Isomorphism, "fwd*bwd", "not the identity");
  return r;
}

namespace {

// Stevens morphism a -> b sending block i to block perm[i], each ray to the
// ray of the same index with the coefficient forced by the pairings.
SMorphism permutation_morphism(const SObject& a, const SObject& b, const BlockLayout& la, const BlockLayout& lb,
                               const std::vector<int>& perm) {
  const int n = a.group.rank;
  SMorphism m{{MatrixZ::Zero(n, n)}, K1Hom::identity(a.k1), {}};
  for (int i = 0; i < n; ++i) m.theta0.matrix(perm[static_cast<std::size_t>(i)], i) = 1;
  for (IdealSupport s = 0; s < a.deltas.num_supports(); ++s) {
    const IdealSupport t = image_support(m.theta0.matrix, s);
    // block coordinates of s (rows) and t (cols), both ordered by block
    std::vector<Index> col_offset(static_cast<std::size_t>(n), -1);
    Index cols = 0;
    for (int j : members(t)) {
      col_offset[static_cast<std::size_t>(j)] = cols;
      cols += lb.sigma[static_cast<std::size_t>(j)].size();
    }
    Index rows = 0;
    for (int i : members(s)) rows += la.sigma[static_cast<std::size_t>(i)].size();
    MatrixQ x = MatrixQ::Zero(rows, cols);
    Index row = 0;
    for (int i : members(s)) {
      const VectorQ& sa = la.sigma[static_cast<std::size_t>(i)];
      const VectorQ& sb = lb.sigma[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
      for (Index r = 0; r < sa.size(); ++r, ++row) x(row, col_offset[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] + r) = sb(r) / sa(r);
    }
    const auto inv = linalg::inverse<Rational>(block_matrix(a.deltas, s));
    if (!inv) throw DecompositionError("search_iso: singular block matrix");
    m.xi.push_back(MatrixQ(*inv * x * block_matrix(b.deltas, t)));
  }
  return m;
}

}  // namespace

IsoSearch<SMorphism> search_iso(const SObject& a, const SObject& b) {
  IsoSearch<SMorphism> out;
  if (a.group.rank != b.group.rank || !(a.k1 == b.k1)) {
    out.note = "ranks or K1 groups differ";
    return out;
  }
  const int n = a.group.rank;
  if (n > kMaxSearchRank) {
    out.supported = false;
    out.note = "rank above " + std::to_string(kMaxSearchRank);
    return out;
  }
  const auto la = block_layout(a.deltas);
  const auto lb = block_layout(b.deltas);
  if (!la || !lb) {
    out.supported = false;
    out.note = "search needs block families";
    return out;
  }
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    bool shapes = true;
    for (int i = 0; i < n && shapes; ++i) {
      const VectorQ& sa = la->sigma[static_cast<std::size_t>(i)];
      const VectorQ& sb = lb->sigma[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
      shapes = sa.size() == sb.size() && (sa.array() > 0).all() && (sb.array() > 0).all();
    }
    if (!shapes) continue;
    std::vector<int> inv(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) inv[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = i;
    SMorphism fwd = permutation_morphism(a, b, *la, *lb, perm);
    SMorphism bwd = permutation_morphism(b, a, *lb, *la, inv);
    if (verify_iso(a, b, fwd, bwd).ok()) {
      out.witness = std::make_pair(std::move(fwd), std::move(bwd));
      out.note = "block permutation found";
      return out;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  out.note = "exhausted " + std::to_string(n) + "! block permutations";
  return out;
}

IsoSearch<EMorphism> search_iso(const EObject& a, const EObject& b) {
  IsoSearch<EMorphism> out;
  if (!has_ideal_property(a) || !has_ideal_property(b)) {
    out.supported = false;
    out.note = "search needs objects without phantom rays";
    return out;
  }
  const SObject sa = apply_G(a);
  const SObject sb = apply_G(b);
  auto found = search_iso(sa, sb);
  out.supported = found.supported;
  out.note = found.note;
  if (found.witness)
    out.witness = std::make_pair(transport_s_to_e(found.witness->first, sa, sb), transport_s_to_e(found.witness->second, sb, sa));
  return out;
}

}  // namespace eeinv
