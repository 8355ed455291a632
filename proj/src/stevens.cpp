#include "eeinv/stevens.hpp"

#include "eeinv/errors.hpp"
#include "eeinv/linalg.hpp"
#include "eeinv/linear_program.hpp"

namespace eeinv {

DeltaFamily::DeltaFamily(int rank) : rank_(rank) {
  if (rank < 0) throw DomainError("negative family rank");
  if (rank > kMaxFamilyRank) throw CapacityError("family rank above " + std::to_string(kMaxFamilyRank));
  const std::size_t count = num_supports();
  dims_.assign(count, 0);
  restrictions_.assign(count * count, MatrixQ());
  pairings_.assign(count * static_cast<std::size_t>(rank_), VectorQ());
}

void DeltaFamily::check_support(IdealSupport s) const {
  if (s >= num_supports()) throw DomainError("support " + format_support(s) + " exceeds rank " + std::to_string(rank_));
}

Index DeltaFamily::dim(IdealSupport s) const {
  check_support(s);
  return dims_[s];
}

void DeltaFamily::set_dim(IdealSupport s, Index k) {
  check_support(s);
  if (k < 0) throw DimensionError("negative cone dimension");
  if (s == 0 && k != 0) throw DimensionError("the cone over the empty support is a point");
  dims_[s] = k;
  for (IdealSupport t = 0; t < num_supports(); ++t) {
    if (is_subset(t, s)) restrictions_[pair_index(s, t)] = MatrixQ::Zero(dims_[t], k);
    if (is_subset(s, t)) restrictions_[pair_index(t, s)] = MatrixQ::Zero(k, dims_[t]);
  }
  restrictions_[pair_index(s, s)] = MatrixQ::Identity(k, k);
  for (int i : members(s)) pairings_[s * static_cast<std::size_t>(rank_) + i] = VectorQ::Zero(k);
}

const MatrixQ& DeltaFamily::restriction(IdealSupport s, IdealSupport sp) const {
  check_support(s);
  if (!is_subset(sp, s)) throw DomainError("restriction: " + format_support(sp) + " is not within " + format_support(s));
  return restrictions_[pair_index(s, sp)];
}

void DeltaFamily::set_restriction(IdealSupport s, IdealSupport sp, MatrixQ m) {
  check_support(s);
  if (!is_subset(sp, s)) throw DomainError("restriction: " + format_support(sp) + " is not within " + format_support(s));
  if (m.rows() != dims_[sp] || m.cols() != dims_[s])
    throw DimensionError("restriction " + format_support(s) + "->" + format_support(sp) + " must be " +
                         std::to_string(dims_[sp]) + "x" + std::to_string(dims_[s]));
  restrictions_[pair_index(s, sp)] = std::move(m);
}

const VectorQ& DeltaFamily::pairing(IdealSupport s, int i) const {
  check_support(s);
  if (i < 0 || i >= rank_ || !(s & (IdealSupport{1} << i)))
    throw DomainError("pairing: generator " + std::to_string(i) + " not in " + format_support(s));
  return pairings_[s * static_cast<std::size_t>(rank_) + i];
}

void DeltaFamily::set_pairing(IdealSupport s, int i, VectorQ f) {
  pairing(s, i);  // domain checks
  if (f.size() != dims_[s]) throw DimensionError("pairing on " + format_support(s) + " must have length " + std::to_string(dims_[s]));
  pairings_[s * static_cast<std::size_t>(rank_) + i] = std::move(f);
}

VectorQ DeltaFamily::pairing_of(IdealSupport s, const VectorZ& e) const {
  if (e.size() != rank_) throw DimensionError("pairing_of: expected length " + std::to_string(rank_));
  VectorQ out = VectorQ::Zero(dim(s));
  for (int i = 0; i < rank_; ++i) {
    if (e(i) == 0) continue;
    if (!(s & (IdealSupport{1} << i)))
      throw DomainError("pairing_of: element not supported in " + format_support(s));
    out += Rational(e(i)) * pairing(s, i);
  }
  return out;
}

VectorQ DeltaFamily::base_functional(IdealSupport s) const {
  VectorQ out = VectorQ::Zero(dim(s));
  for (int i : members(s)) out += pairing(s, i);
  return out;
}

bool operator==(const DeltaFamily& a, const DeltaFamily& b) {
  if (a.rank_ != b.rank_ || a.dims_ != b.dims_) return false;
  for (IdealSupport s = 0; s < a.num_supports(); ++s) {
    for (IdealSupport t = 0; t < a.num_supports(); ++t)
      if (is_subset(t, s) && !same_matrix(a.restriction(s, t), b.restriction(s, t))) return false;
    for (int i : members(s))
      if (!same_matrix(a.pairing(s, i), b.pairing(s, i))) return false;
  }
  return true;
}

VectorQ restrict(const VectorQ& v, IdealSupport s, IdealSupport sp, const DeltaFamily& d) {
  const MatrixQ& l = d.restriction(s, sp);
  if (v.size() != l.cols()) throw DimensionError("restrict: element has wrong length for " + format_support(s));
  if (!is_nonnegative(v)) throw DomainError("restrict: element has a negative coordinate");
  return l * v;
}

BlockLayout BlockLayout::canonical(std::vector<VectorQ> sigma) {
  BlockLayout out;
  out.sigma = std::move(sigma);
  const IdealSupport count = IdealSupport{1} << out.rank();
  out.rays.resize(count);
  for (IdealSupport s = 0; s < count; ++s)
    for (int i : members(s))
      for (Index r = 0; r < out.sigma[static_cast<std::size_t>(i)].size(); ++r) out.rays[s].push_back({i, r, Rational(1)});
  return out;
}

DeltaFamily build_block_family(const BlockLayout& layout) {
  const int n = layout.rank();
  DeltaFamily d(n);
  const IdealSupport count = d.num_supports();
  if (layout.rays.size() != count) throw DimensionError("block layout must list rays for every support");
  // position[s][block][ray] -> coordinate of that block ray in C_s
  std::vector<std::vector<std::vector<Index>>> position(count);
  for (IdealSupport s = 0; s < count; ++s) {
    auto& pos = position[s];
    pos.resize(static_cast<std::size_t>(n));
    for (int i : members(s)) pos[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(layout.sigma[static_cast<std::size_t>(i)].size()), -1);
    const auto& rays = layout.rays[s];
    for (std::size_t rho = 0; rho < rays.size(); ++rho) {
      const auto& ray = rays[rho];
      if (ray.block < 0 || ray.block >= n || !(s & (IdealSupport{1} << ray.block)))
        throw DimensionError("block layout: ray outside its support " + format_support(s));
      auto& slot = pos[static_cast<std::size_t>(ray.block)];
      if (ray.ray < 0 || ray.ray >= static_cast<Index>(slot.size()) || slot[static_cast<std::size_t>(ray.ray)] >= 0)
        throw DimensionError("block layout: bad or repeated ray in " + format_support(s));
      if (!(ray.scale > 0)) throw DomainError("block layout: scales must be positive");
      slot[static_cast<std::size_t>(ray.ray)] = static_cast<Index>(rho);
    }
    for (int i : members(s))
      for (Index p : pos[static_cast<std::size_t>(i)])
        if (p < 0) throw DimensionError("block layout: missing ray in " + format_support(s));
    d.set_dim(s, static_cast<Index>(rays.size()));
  }
  for (IdealSupport s = 0; s < count; ++s) {
    const auto& rays = layout.rays[s];
    for (IdealSupport t = 0; t < count; ++t) {
      if (t == s || !is_subset(t, s)) continue;
      MatrixQ l = MatrixQ::Zero(d.dim(t), d.dim(s));
      for (std::size_t rho = 0; rho < rays.size(); ++rho) {
        const auto& ray = rays[rho];
        if (!(t & (IdealSupport{1} << ray.block))) continue;
        const Index target = position[t][static_cast<std::size_t>(ray.block)][static_cast<std::size_t>(ray.ray)];
        l(target, static_cast<Index>(rho)) = ray.scale / layout.rays[t][static_cast<std::size_t>(target)].scale;
      }
      d.set_restriction(s, t, std::move(l));
    }
    for (int i : members(s)) {
      VectorQ f = VectorQ::Zero(d.dim(s));
      for (std::size_t rho = 0; rho < rays.size(); ++rho)
        if (rays[rho].block == i) f(static_cast<Index>(rho)) = rays[rho].scale * layout.sigma[static_cast<std::size_t>(i)](rays[rho].ray);
      d.set_pairing(s, i, std::move(f));
    }
  }
  return d;
}

DeltaFamily coordinate_family(int n) {
  return build_block_family(BlockLayout::canonical(std::vector<VectorQ>(static_cast<std::size_t>(n), VectorQ::Ones(1))));
}

MatrixQ block_matrix(const DeltaFamily& d, IdealSupport s) {
  Index rows = 0;
  for (int i : members(s)) rows += d.dim(IdealSupport{1} << i);
  MatrixQ m(rows, d.dim(s));
  Index at = 0;
  for (int i : members(s)) {
    const MatrixQ& l = d.restriction(s, IdealSupport{1} << i);
    m.middleRows(at, l.rows()) = l;
    at += l.rows();
  }
  return m;
}

std::optional<BlockLayout> block_layout(const DeltaFamily& d) {
  BlockLayout layout;
  const int n = d.rank();
  for (int i = 0; i < n; ++i) layout.sigma.push_back(d.pairing(IdealSupport{1} << i, i));
  layout.rays.resize(d.num_supports());
  for (IdealSupport s = 1; s < d.num_supports(); ++s) {
    const MatrixQ m = block_matrix(d, s);
    if (!linalg::is_positive_monomial(m)) return std::nullopt;
    std::vector<BlockLayout::Ray> rays(static_cast<std::size_t>(m.cols()));
    Index row = 0;
    for (int i : members(s)) {
      const Index k = d.dim(IdealSupport{1} << i);
      for (Index r = 0; r < k; ++r, ++row)
        for (Index c = 0; c < m.cols(); ++c)
          if (m(row, c) != 0) rays[static_cast<std::size_t>(c)] = {i, r, m(row, c)};
    }
    layout.rays[s] = std::move(rays);
  }
  try {
    if (!(build_block_family(layout) == d)) return std::nullopt;
  } catch (const Error&) {
    return std::nullopt;
  }
  return layout;
}

namespace {

// Iterates the strict submasks of s, largest first, ending with 0.
template <typename Fn>
void for_strict_submasks(IdealSupport s, Fn&& fn) {
  if (s == 0) return;
  for (IdealSupport t = (s - 1) & s;; t = (t - 1) & s) {
    fn(t);
    if (t == 0) break;
  }
}

bool has_negative(const MatrixQ& m) { return !is_nonnegative(m); }

std::string pair_location(IdealSupport s, IdealSupport t) { return "(" + format_support(s) + "," + format_support(t) + ")"; }

void check_structure(const DeltaFamily& d, Report& r) {
  for (IdealSupport s = 0; s < d.num_supports(); ++s) {
    if (!same_matrix(d.restriction(s, s), MatrixQ::Identity(d.dim(s), d.dim(s))))
      r.add(Check::Structure, pair_location(s, s), "self-restriction is not the identity");
    for (IdealSupport t = 0; t < d.num_supports(); ++t)
      if (is_subset(t, s) && has_negative(d.restriction(s, t)))
        r.add(Check::Structure, pair_location(s, t), "negative restriction entry");
    for (int i : members(s))
      if (!is_nonnegative(d.pairing(s, i)))
        r.add(Check::Structure, format_support(s) + " generator " + std::to_string(i), "negative pairing entry");
  }
}

void check_composition(const DeltaFamily& d, Report& r) {
  for (IdealSupport s = 0; s < d.num_supports(); ++s)
    for_strict_submasks(s, [&](IdealSupport sp) {
      for_strict_submasks(sp, [&](IdealSupport spp) {
        if (spp == 0) return;
        if (!same_matrix(d.restriction(s, spp), linalg::sparse_product(d.restriction(sp, spp), d.restriction(s, sp))))
          r.add(Check::Composition, "(" + format_support(s) + "," + format_support(sp) + "," + format_support(spp) + ")",
                "restriction does not factor through the middle support");
      });
    });
}

void check_pairing(const DeltaFamily& d, Report& r) {
  for (IdealSupport s = 0; s < d.num_supports(); ++s)
    for_strict_submasks(s, [&](IdealSupport sp) {
      for (int i : members(sp)) {
        const VectorQ pulled = d.restriction(s, sp).transpose() * d.pairing(sp, i);
        if (!same_matrix(d.pairing(s, i), pulled))
          r.add(Check::PairingCompatibility, pair_location(s, sp) + " generator " + std::to_string(i),
                "pairing differs from the pulled-back pairing");
      }
    });
}

// Single nonzero entry of a row, or -1.
Index sole_entry(const MatrixQ& m, Index row) {
  Index at = -1;
  for (Index c = 0; c < m.cols(); ++c) {
    if (m(row, c) == 0) continue;
    if (at >= 0) return -1;
    at = c;
  }
  return at;
}

void check_hereditary(const DeltaFamily& d, Report& r) {
  for (IdealSupport s = 0; s < d.num_supports(); ++s)
    for_strict_submasks(s, [&](IdealSupport sp) {
      const MatrixQ& l = d.restriction(s, sp);
      const MatrixQ pull = l.transpose();
      for (Index j = 0; j < l.rows(); ++j) {
        if (sole_entry(l, j) >= 0) continue;  // g is the pullback of e_j itself
        for (Index c = 0; c < l.cols(); ++c) {
          if (l(j, c) == 0) continue;
          VectorQ g = VectorQ::Zero(l.cols());
          g(c) = l(j, c);
          VectorQ f = VectorQ::Zero(l.rows());
          f(j) = 1;
          try {
            hereditary_lift(f, g, pull);
          } catch (const HereditaryError&) {
            r.add(Check::Hereditary, pair_location(s, sp),
                  "functional " + std::to_string(c) + " below pulled-back ray " + std::to_string(j) + " has no preimage");
            return;
          }
        }
      }
    });
}

void check_decomposition(const DeltaFamily& d, Report& r) {
  for (IdealSupport u = 0; u < d.num_supports(); ++u) {
    if (support_size(u) < 2) continue;
    for_strict_submasks(u, [&](IdealSupport p) {
      if (p == 0) return;
      const IdealSupport rest = u & ~p;
      for_strict_submasks(u, [&](IdealSupport q) {
        if ((q & rest) != rest || q < p) return;
        const MatrixQ& lp = d.restriction(u, p);
        const MatrixQ& lq = d.restriction(u, q);
        const Index k = d.dim(u);
        std::vector<bool> covered(static_cast<std::size_t>(k), false);
        for (const MatrixQ* l : {&lp, &lq})
          for (Index j = 0; j < l->rows(); ++j)
            if (Index c = sole_entry(*l, j); c >= 0) covered[static_cast<std::size_t>(c)] = true;
        MatrixQ a(k, lp.rows() + lq.rows());
        a << lp.transpose(), lq.transpose();
        for (Index ray = 0; ray < k; ++ray) {
          if (covered[static_cast<std::size_t>(ray)]) continue;
          VectorQ e = VectorQ::Zero(k);
          e(ray) = 1;
          if (lp::feasible_point<Rational>(a, e).status != lp::Status::Optimal) {
            r.add(Check::Decomposition, "(" + format_support(u) + "=" + format_support(p) + "+" + format_support(q) + ")",
                  "ray functional " + std::to_string(ray) + " does not split");
            return;
          }
        }
      });
    });
  }
}

void check_simplex_bases(const DeltaFamily& d, Report& r) {
  for (IdealSupport s = 1; s < d.num_supports(); ++s)
    r.merge(simplex_base_check({d.base_functional(s)}, "cone " + format_support(s)));
}

}  // namespace

Report validate_family(const DeltaFamily& d, const FamilyCheckOptions& opts) {
  Report r;
  if (opts.structure) check_structure(d, r);
  if (opts.composition) check_composition(d, r);
  if (opts.pairing) check_pairing(d, r);
  if (opts.hereditary) check_hereditary(d, r);
  if (opts.decomposition) check_decomposition(d, r);
  if (opts.simplex_base) check_simplex_bases(d, r);
  return r;
}

Report validate_s_object(const SObject& s) {
  Report r;
  if (s.group.rank != s.deltas.rank()) {
    r.add(Check::Structure, "group", "rank " + std::to_string(s.group.rank) + " but family rank " + std::to_string(s.deltas.rank()));
    return r;
  }
  try {
    s.k1.check();
  } catch (const DocumentError& e) {
    r.add(Check::Structure, "k1", e.what());
  }
  r.merge(validate_family(s.deltas));
  return r;
}

std::pair<VectorQ, VectorQ> decompose_over_sum(const VectorQ& f, IdealSupport p, IdealSupport q, const DeltaFamily& d) {
  const IdealSupport u = p | q;
  if (f.size() != d.dim(u)) throw DimensionError("decompose_over_sum: functional has wrong length for " + format_support(u));
  if (!is_nonnegative(f)) throw DomainError("decompose_over_sum: functional must be nonnegative");
  const MatrixQ& lp = d.restriction(u, p);
  const MatrixQ& lq = d.restriction(u, q);
  MatrixQ a(f.size(), lp.rows() + lq.rows());
  a << lp.transpose(), lq.transpose();
  VectorQ cost(a.cols());
  cost << VectorQ::Zero(lp.rows()), VectorQ::Ones(lq.rows());
  const auto res = lp::minimize<Rational>(a, f, cost);
  if (res.status != lp::Status::Optimal)
    throw DecompositionError("decompose_over_sum: no decomposition over " + format_support(p) + " + " + format_support(q));
  return {res.x.head(lp.rows()), res.x.tail(lq.rows())};
}

bool operator==(const SMorphism& a, const SMorphism& b) {
  if (!(a.theta0 == b.theta0) || !(a.theta1 == b.theta1) || a.xi.size() != b.xi.size()) return false;
  for (std::size_t i = 0; i < a.xi.size(); ++i)
    if (!same_matrix(a.xi[i], b.xi[i])) return false;
  return true;
}

Report validate_s_morphism(const SMorphism& m, const SObject& src, const SObject& dst) {
  Report r;
  const DeltaFamily& g = src.deltas;
  const DeltaFamily& h = dst.deltas;
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

  if (m.xi.size() != g.num_supports()) {
    r.add(Check::Completeness, "xi", "expected " + std::to_string(g.num_supports()) + " components");
    return r;
  }
  bool complete = true;
  for (IdealSupport s = 0; s < g.num_supports(); ++s) {
    const IdealSupport t = image_support(m.theta0.matrix, s);
    const MatrixQ& x = m.xi[s];
    if (x.rows() != g.dim(s) || x.cols() != h.dim(t)) {
      r.add(Check::Completeness, "xi" + format_support(s),
            "expected " + std::to_string(g.dim(s)) + "x" + std::to_string(h.dim(t)));
      complete = false;
    } else if (has_negative(x)) {
      r.add(Check::Positivity, "xi" + format_support(s), "negative entry");
    }
  }
  if (!complete) return r;
  for (IdealSupport s = 0; s < g.num_supports(); ++s) {
    const IdealSupport t = image_support(m.theta0.matrix, s);
    for_strict_submasks(s, [&](IdealSupport sp) {
      if (sp == 0) return;
      const IdealSupport tp = image_support(m.theta0.matrix, sp);
      if (!same_matrix(g.restriction(s, sp) * m.xi[s], m.xi[sp] * h.restriction(t, tp)))
        r.add(Check::Square, pair_location(s, sp), "restriction and xi do not commute");
    });
  }
  if (r.has(Check::Positivity)) return r;
  for (IdealSupport s = 1; s < g.num_supports(); ++s) {
    const IdealSupport t = image_support(m.theta0.matrix, s);
    for (int i : members(s)) {
      const VectorQ lhs = m.xi[s].transpose() * g.pairing(s, i);
      const VectorQ rhs = h.pairing_of(t, m.theta0.matrix.col(i));
      if (!same_matrix(lhs, rhs))
        r.add(Check::Compatibility, "xi" + format_support(s) + " generator " + std::to_string(i),
              "pairing is not carried to the pairing of theta0(e_i)");
    }
  }
  return r;
}

SMorphism compose_s_morphisms(const SMorphism& m2, const SMorphism& m1) {
  SMorphism out;
  out.theta0 = compose_homs(m2.theta0, m1.theta0);
  out.theta1 = compose_k1(m2.theta1, m1.theta1);
  const IdealSupport count = IdealSupport{1} << m1.theta0.source_rank();
  if (m1.xi.size() != count || m2.xi.size() != (std::size_t{1} << m2.theta0.source_rank()))
    throw DimensionError("compose_s_morphisms: incomplete xi family");
  out.xi.resize(count);
  for (IdealSupport s = 0; s < count; ++s) {
    const MatrixQ& a = m1.xi[s];
    const MatrixQ& b = m2.xi[image_support(m1.theta0.matrix, s)];
    if (a.cols() != b.rows()) throw DimensionError("compose_s_morphisms: xi shapes do not align at " + format_support(s));
    out.xi[s] = a * b;
  }
  return out;
}

SMorphism identity_s_morphism(const SObject& s) {
  SMorphism m{PositiveHom::identity(s.group.rank), K1Hom::identity(s.k1), {}};
  for (IdealSupport t = 0; t < s.deltas.num_supports(); ++t)
    m.xi.push_back(MatrixQ::Identity(s.deltas.dim(t), s.deltas.dim(t)));
  return m;
}

}  // namespace eeinv
