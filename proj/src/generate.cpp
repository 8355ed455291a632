#include "eeinv/generate.hpp"

#include "eeinv/errors.hpp"
#include "eeinv/linalg.hpp"
#include "eeinv/random.hpp"

#include <numeric>

namespace eeinv {

namespace {

struct Node {
  ScaledOrderedGroup group;
  FinAbGroup k1;
  BlockLayout layout;
  DeltaFamily family;
};

struct Arrow {
  MatrixZ theta0;
  MatrixZ theta1;
  // block maps X[i][j] : block j of the target -> block i of the source
  std::vector<std::vector<MatrixQ>> blocks;
};

BlockLayout random_layout(Rng& rng, int n, int cone_dim) {
  if (rng.chance(1, 4)) return BlockLayout::canonical(std::vector<VectorQ>(static_cast<std::size_t>(n), VectorQ::Ones(1)));
  BlockLayout layout;
  for (int i = 0; i < n; ++i) {
    VectorQ sigma(rng.between(1, cone_dim));
    for (Index r = 0; r < sigma.size(); ++r) sigma(r) = rng.positive_rational(4, 3);
    layout.sigma.push_back(std::move(sigma));
  }
  const IdealSupport count = IdealSupport{1} << n;
  layout.rays.resize(count);
  for (IdealSupport s = 1; s < count; ++s) {
    auto& rays = layout.rays[s];
    for (int i : members(s))
      for (Index r = 0; r < layout.sigma[static_cast<std::size_t>(i)].size(); ++r)
        rays.push_back({i, r, rng.positive_rational(3, 2)});
    rng.shuffle(rays);
  }
  return layout;
}

FinAbGroup random_k1(Rng& rng) {
  FinAbGroup g;
  g.free_rank = static_cast<int>(rng.between(0, 2));
  const Integer count = rng.between(0, 2);
  Integer d = rng.between(2, 4);
  for (Integer i = 0; i < count; ++i) {
    g.torsion.push_back(d);
    d *= rng.between(1, 3);
  }
  return g;
}

Node random_node(Rng& rng, int n, int cone_dim) {
  Node node;
  node.layout = random_layout(rng, n, cone_dim);
  node.family = build_block_family(node.layout);
  // Re-read the layout so singleton cones carry unit scales; block maps are
  // expressed in singleton coordinates.
  node.layout = *block_layout(node.family);
  node.k1 = random_k1(rng);
  node.group = ScaledOrderedGroup::all(n);
  return node;
}

void random_scale(Rng& rng, Node& node) {
  if (rng.chance(1, 4)) return;
  VectorZ u(node.group.rank);
  for (Index i = 0; i < u.size(); ++i) u(i) = rng.between(0, 3);
  node.group = ScaledOrderedGroup::with_unit(std::move(u));
}

// Smallest-effort scale on the target that theta0 respects.
void fit_scale(Rng& rng, const ScaledOrderedGroup& src, const MatrixZ& theta0, Node& dst) {
  if (src.scale_all || rng.chance(1, 4)) {
    dst.group = ScaledOrderedGroup::all(dst.group.rank);
    return;
  }
  VectorZ u = theta0 * src.unit;
  for (Index i = 0; i < u.size(); ++i) u(i) += rng.between(0, 1);
  dst.group = ScaledOrderedGroup::with_unit(std::move(u));
}

Integer gcd(Integer a, Integer b) { return std::gcd(a, b); }

MatrixZ random_k1_hom(Rng& rng, const FinAbGroup& src, const FinAbGroup& dst) {
  MatrixZ m = MatrixZ::Zero(dst.generators(), src.generators());
  for (int t = 0; t < dst.generators(); ++t) {
    const Integer dt = dst.order(t);
    for (int s = 0; s < src.generators(); ++s) {
      const Integer ds = src.order(s);
      if (dt == 0) {
        m(t, s) = ds == 0 ? rng.between(-2, 2) : 0;
      } else {
        const Integer step = ds == 0 ? 1 : dt / gcd(ds, dt);
        m(t, s) = step * rng.between(0, dt / step - 1);
      }
    }
  }
  return m;
}

Arrow random_arrow(Rng& rng, const Node& a, const Node& b) {
  Arrow arrow;
  const int na = a.group.rank;
  const int nb = b.group.rank;
  arrow.theta0 = MatrixZ::Zero(nb, na);
  for (int j = 0; j < nb; ++j)
    for (int i = 0; i < na; ++i) arrow.theta0(j, i) = rng.chance(1, 2) ? 0 : rng.between(1, 2);
  arrow.theta1 = random_k1_hom(rng, a.k1, b.k1);
  arrow.blocks.assign(static_cast<std::size_t>(na), std::vector<MatrixQ>(static_cast<std::size_t>(nb)));
  for (int i = 0; i < na; ++i) {
    const VectorQ& sa = a.layout.sigma[static_cast<std::size_t>(i)];
    for (int j = 0; j < nb; ++j) {
      const VectorQ& sb = b.layout.sigma[static_cast<std::size_t>(j)];
      MatrixQ x = MatrixQ::Zero(sa.size(), sb.size());
      if (arrow.theta0(j, i) > 0) {
        // Column c must pair with sigma_a to theta0(j,i) * sigma_b(c).
        for (Index c = 0; c < sb.size(); ++c) {
          for (Index r = 0; r < sa.size(); ++r) x(r, c) = rng.chance(1, 3) ? Rational(0) : rng.positive_rational(3, 2);
          if (x.col(c).isZero()) x(rng.between(0, sa.size() - 1), c) = 1;
          const Rational paired = sa.dot(x.col(c));
          x.col(c) *= Rational(arrow.theta0(j, i)) * sb(c) / paired;
        }
      }
      arrow.blocks[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = std::move(x);
    }
  }
  return arrow;
}

// Block-coordinate map from C^b_t to C^a_s.
MatrixQ block_map(const Arrow& arrow, const Node& a, const Node& b, IdealSupport s, IdealSupport t) {
  Index rows = 0;
  for (int i : members(s)) rows += a.layout.sigma[static_cast<std::size_t>(i)].size();
  Index cols = 0;
  for (int j : members(t)) cols += b.layout.sigma[static_cast<std::size_t>(j)].size();
  MatrixQ x = MatrixQ::Zero(rows, cols);
  Index r0 = 0;
  for (int i : members(s)) {
    Index c0 = 0;
    const Index k = a.layout.sigma[static_cast<std::size_t>(i)].size();
    for (int j : members(t)) {
      const MatrixQ& blk = arrow.blocks[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      x.block(r0, c0, blk.rows(), blk.cols()) = blk;
      c0 += blk.cols();
    }
    r0 += k;
  }
  return x;
}

MatrixQ ray_map(const Arrow& arrow, const Node& a, const Node& b, IdealSupport s, IdealSupport t) {
  const auto inv = linalg::inverse<Rational>(block_matrix(a.family, s));
  if (!inv) throw GenerationError("block matrix is singular");
  return *inv * block_map(arrow, a, b, s, t) * block_matrix(b.family, t);
}

struct Chain {
  std::vector<Node> nodes;
  std::vector<Arrow> arrows;
};

Chain random_chain(std::uint64_t seed, int blocks, int cone_dim, int length) {
  if (blocks < 0 || blocks > kMaxGenBlocks || cone_dim < 1 || cone_dim > kMaxGenConeDim || length < 0)
    throw GenerationError("seed " + std::to_string(seed) + ": parameters out of bounds (blocks <= " +
                          std::to_string(kMaxGenBlocks) + ", 1 <= cone_dim <= " + std::to_string(kMaxGenConeDim) + ")");
  Rng rng(seed);
  Chain chain;
  chain.nodes.push_back(random_node(rng, blocks, cone_dim));
  random_scale(rng, chain.nodes.front());
  for (int k = 0; k < length; ++k) {
    const int n = static_cast<int>(rng.between(blocks > 0 ? blocks - 1 : 0, blocks));
    Node next = random_node(rng, n, cone_dim);
    Arrow arrow = random_arrow(rng, chain.nodes.back(), next);
    fit_scale(rng, chain.nodes.back().group, arrow.theta0, next);
    chain.nodes.push_back(std::move(next));
    chain.arrows.push_back(std::move(arrow));
  }
  return chain;
}

}  // namespace

SChain random_s_chain(std::uint64_t seed, int blocks, int cone_dim, int length) {
  const Chain chain = random_chain(seed, blocks, cone_dim, length);
  SChain out;
  for (const auto& node : chain.nodes) out.objects.push_back({node.group, node.k1, node.family});
  for (std::size_t k = 0; k < chain.arrows.size(); ++k) {
    const Arrow& arrow = chain.arrows[k];
    const Node& a = chain.nodes[k];
    const Node& b = chain.nodes[k + 1];
    SMorphism m{{arrow.theta0}, {a.k1, b.k1, arrow.theta1}, {}};
    for (IdealSupport s = 0; s < a.family.num_supports(); ++s)
      m.xi.push_back(ray_map(arrow, a, b, s, image_support(arrow.theta0, s)));
    out.arrows.push_back(std::move(m));
  }
  return out;
}

EChain random_e_chain(std::uint64_t seed, int blocks, int cone_dim, int length) {
  const Chain chain = random_chain(seed, blocks, cone_dim, length);
  EChain out;
  for (const auto& node : chain.nodes) out.objects.push_back({node.group, node.k1, {node.family, 0}});
  for (std::size_t k = 0; k < chain.arrows.size(); ++k) {
    const Arrow& arrow = chain.arrows[k];
    const Node& a = chain.nodes[k];
    const Node& b = chain.nodes[k + 1];
    EMorphism m{{arrow.theta0}, {a.k1, b.k1, arrow.theta1}, {}, MatrixQ::Zero(0, 0)};
    for (IdealSupport t = 0; t < b.family.num_supports(); ++t)
      m.zeta.push_back(ray_map(arrow, a, b, preimage_support(arrow.theta0, t), t));
    out.arrows.push_back(std::move(m));
  }
  return out;
}

Generated gen_random(Kind kind, std::uint64_t seed, int blocks, int cone_dim) {
  switch (kind) {
    case Kind::SObject:
      return {{random_s_chain(seed, blocks, cone_dim, 0).objects.front()}, std::nullopt, std::nullopt};
    case Kind::EObject:
      return {{random_e_chain(seed, blocks, cone_dim, 0).objects.front()}, std::nullopt, std::nullopt};
    case Kind::SMorphism: {
      SChain c = random_s_chain(seed, blocks, cone_dim, 1);
      return {{c.arrows.front()}, Document{c.objects[0]}, Document{c.objects[1]}};
    }
    case Kind::EMorphism: {
      EChain c = random_e_chain(seed, blocks, cone_dim, 1);
      return {{c.arrows.front()}, Document{c.objects[0]}, Document{c.objects[1]}};
    }
  }
  throw GenerationError("unknown kind");
}

}  // namespace eeinv
