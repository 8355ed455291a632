#include "oracles.hpp"

#include "eeinv/corpus.hpp"
#include "eeinv/errors.hpp"
#include "eeinv/functors.hpp"
#include "eeinv/generate.hpp"

#include <doctest.h>

using namespace eeinv;
using oracle::vec;
using oracle::zvec;

namespace {

template <typename T>
const T& entry(const char* name) {
  return std::get<T>(find_corpus_entry(name)->document.payload);
}

SObject coordinate_object(int n) { return {ScaledOrderedGroup::all(n), {}, coordinate_family(n)}; }

}  // namespace

TEST_CASE("G forgets phantom rays") {
  const SObject s = apply_G(entry<EObject>("coord-2"));
  CHECK(s.deltas.dim(0b01) == 1);
  CHECK(s.deltas == coordinate_family(2));

  const SObject r = apply_G(entry<EObject>("razak"));
  CHECK(r.deltas.rank() == 0);
  CHECK(r.deltas.dim(0) == 0);

  const SObject t = apply_G({ScaledOrderedGroup::all(0), {}, {DeltaFamily(0), 0}});
  CHECK(t == SObject{ScaledOrderedGroup::all(0), {}, DeltaFamily(0)});
}

TEST_CASE("F keeps the family") {
  const EObject e = apply_F(coordinate_object(3));
  CHECK(e.x.family == coordinate_family(3));
  CHECK(e.x.phantom_dim == 0);
  CHECK(apply_F(coordinate_object(0)).x.family.dim(0) == 0);
  CHECK_THROWS_AS(apply_F(entry<SObject>("mutant-cond3")), InvalidInput);
}

TEST_CASE("the ideal property") {
  CHECK(has_ideal_property(entry<EObject>("coord-3")));
  CHECK_FALSE(has_ideal_property(entry<EObject>("razak")));
}

TEST_CASE("transport of identities and permutations") {
  const SObject s = coordinate_object(2);
  const EObject e = apply_F(s);
  CHECK(transport_s_to_e(identity_s_morphism(s), s, s) == identity_e_morphism(e));
  CHECK(transport_e_to_s(identity_e_morphism(e), e, e) == identity_s_morphism(s));

  const auto& swap = std::get<SMorphism>(find_corpus_entry("swap-2")->document.payload);
  const auto& src = std::get<SObject>(find_corpus_entry("swap-2")->source->payload);
  const EMorphism z = transport_s_to_e(swap, src, src);
  const EObject esrc = apply_F(src);
  CHECK(validate_e_morphism(z, esrc, esrc).ok());
  // a trace finite only on block 0 of the target pulls back to one finite
  // only on block 1
  const XElement tau{0b01, vec({5}), VectorQ(0)};
  CHECK(apply_zeta(z, tau) == XElement{0b10, vec({5}), VectorQ(0)});
  CHECK(transport_e_to_s(z, esrc, esrc) == swap);
}

TEST_CASE("transport when theta0 kills a block") {
  const SObject g = coordinate_object(2);
  const SObject h = coordinate_object(1);
  SMorphism m{{MatrixZ(1, 2)}, K1Hom::identity({}), {}};
  m.theta0.matrix << 1, 0;
  for (IdealSupport s = 0; s < 4; ++s) {
    const IdealSupport t = image_support(m.theta0.matrix, s);
    MatrixQ x = MatrixQ::Zero(g.deltas.dim(s), h.deltas.dim(t));
    if ((s & 1) && t) x(0, 0) = 1;
    m.xi.push_back(x);
  }
  REQUIRE(validate_s_morphism(m, g, h).ok());
  const EMorphism z = transport_s_to_e(m, g, h);
  // every trace on the target is finite on the killed block, with value 0
  const XElement tau{0b1, vec({3}), VectorQ(0)};
  CHECK(apply_zeta(z, tau) == XElement{0b11, vec({3, 0}), VectorQ(0)});
  const XElement infinite{0b0, VectorQ(0), VectorQ(0)};
  CHECK(apply_zeta(z, infinite) == XElement{0b10, vec({0}), VectorQ(0)});
  CHECK(transport_e_to_s(z, apply_F(g), apply_F(h)) == m);
}

TEST_CASE("E to S refuses phantom rays") {
  const auto& r = entry<EObject>("razak");
  CHECK_THROWS_AS(transport_e_to_s(identity_e_morphism(r), r, r), TransportError);
}

TEST_CASE("object round trips") {
  for (const auto& e : corpus()) {
    if (e.name.rfind("mutant", 0) == 0) continue;
    CAPTURE(e.name);
    if (const auto* s = std::get_if<SObject>(&e.document.payload)) CHECK(roundtrip_object(*s).verdict == Verdict::Identity);
    if (const auto* x = std::get_if<EObject>(&e.document.payload)) {
      const RoundTripReport r = roundtrip_object(*x);
      CHECK(r.verdict == (x->x.phantom_dim == 0 ? Verdict::Identity : Verdict::Mismatch));
    }
  }
  const RoundTripReport r = roundtrip_object(entry<EObject>("razak"));
  REQUIRE(r.witness);
  CHECK(r.witness->component == "phantom cone");
  CHECK(r.render() == "roundtrip FG: mismatch (phantom cone at phantom_dim: expected 1, got 0)\n");
}

TEST_CASE("isomorphism witnesses") {
  const auto& a = entry<SObject>("af-two-ideal");
  // the same family with the blocks listed in the other order
  BlockLayout layout;
  layout.sigma = {VectorQ::Ones(1), vec({1, 2})};
  layout.rays = {{}, {{0, 0, Rational(1)}}, {{1, 0, Rational(1)}, {1, 1, Rational(1)}}, {{1, 1, rat(1, 3)}, {0, 0, Rational(1)}, {1, 0, Rational(4)}}};
  const SObject b{a.group, a.k1, build_block_family(layout)};
  REQUIRE(validate_s_object(b).ok());
  CHECK(compare_objects(a, b).has_value());

  const auto found = search_iso(a, b);
  REQUIRE(found.witness);
  CHECK(verify_iso(a, b, found.witness->first, found.witness->second).ok());
  CHECK(found.witness->first.theta0.matrix(1, 0) == 1);

  const auto none = search_iso(a, entry<SObject>("coord-2-s"));
  CHECK(none.supported);
  CHECK_FALSE(none.witness);

  const auto e = search_iso(apply_F(a), apply_F(b));
  REQUIRE(e.witness);
  CHECK(verify_iso(apply_F(a), apply_F(b), e.witness->first, e.witness->second).ok());

  CHECK(verify_iso(a, a, identity_s_morphism(a), identity_s_morphism(a)).ok());
  CHECK_FALSE(verify_iso(a, b, identity_s_morphism(a), identity_s_morphism(a)).ok());
  // valid morphisms that are not mutually inverse
  const auto& c = entry<SObject>("coord-2-s");
  const auto& swap = std::get<SMorphism>(find_corpus_entry("swap-2")->document.payload);
  CHECK(verify_iso(c, c, swap, identity_s_morphism(c)).summary() == "isomorphism");
}

TEST_CASE("generated data validates") {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    CAPTURE(seed);
    const int blocks = static_cast<int>(seed % 5);
    const int cone_dim = 1 + static_cast<int>(seed % 3);
    const Generated s = gen_random(Kind::SObject, seed, blocks, cone_dim);
    CHECK(validate_s_object(std::get<SObject>(s.document.payload)).ok());
    const Generated m = gen_random(Kind::SMorphism, seed, blocks, cone_dim);
    CHECK(validate_s_morphism(std::get<SMorphism>(m.document.payload), std::get<SObject>(m.source->payload),
                              std::get<SObject>(m.target->payload))
              .ok());
  }
}

TEST_CASE("generated Elliott data validates") {
  ValidationOptions opts;
  opts.samples = 20;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    CAPTURE(seed);
    const int blocks = static_cast<int>(seed % 4);
    const int cone_dim = 1 + static_cast<int>(seed % 3);
    const Generated e = gen_random(Kind::EObject, seed, blocks, cone_dim);
    CHECK(validate_e_object(std::get<EObject>(e.document.payload), opts).ok());
    const Generated m = gen_random(Kind::EMorphism, seed, blocks, cone_dim);
    CHECK(validate_e_morphism(std::get<EMorphism>(m.document.payload), std::get<EObject>(m.source->payload),
                              std::get<EObject>(m.target->payload), opts)
              .ok());
  }
}

TEST_CASE("transport is functorial on generated pairs") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    CAPTURE(seed);
    const SChain c = random_s_chain(seed, 1 + static_cast<int>(seed % 4), 2, 2);
    const auto& [g, h, k] = std::tie(c.objects[0], c.objects[1], c.objects[2]);
    const SMorphism& a = c.arrows[0];
    const SMorphism& b = c.arrows[1];
    const EMorphism ea = transport_s_to_e(a, g, h);
    const EMorphism eb = transport_s_to_e(b, h, k);
    CHECK(transport_s_to_e(compose_s_morphisms(b, a), g, k) == compose_e_morphisms(eb, ea));
    const EObject fg = apply_F(g), fh = apply_F(h), fk = apply_F(k);
    ValidationOptions opts;
    opts.samples = 10;
    CHECK(transport_e_to_s(compose_e_morphisms(eb, ea), fg, fk, opts) ==
          compose_s_morphisms(transport_e_to_s(eb, fh, fk, opts), transport_e_to_s(ea, fg, fh, opts)));
    CHECK(roundtrip_morphism(a, g, h).verdict == Verdict::Identity);
  }
}
