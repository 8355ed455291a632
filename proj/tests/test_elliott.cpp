#include "oracles.hpp"

#include "eeinv/corpus.hpp"
#include "eeinv/elliott.hpp"
#include "eeinv/errors.hpp"
#include "eeinv/generate.hpp"

#include <doctest.h>

using namespace eeinv;
using oracle::vec;
using oracle::zvec;

namespace {

const ExtRat inf = ExtRat::infinity();

TraceConeX coordinate_cone(int n, Index phantom = 0) { return {coordinate_family(n), phantom}; }

XElement el(IdealSupport s, VectorQ v, Index phantom = 0) { return {s, std::move(v), VectorQ::Zero(phantom)}; }

}  // namespace

TEST_CASE("K0 pairing of traces") {
  const TraceConeX X = coordinate_cone(2);
  CHECK(eval_sG(zvec({0, 0}), el(0b00, VectorQ(0)), X) == ExtRat(0));
  CHECK(eval_sG(zvec({1, 0}), el(0b11, vec({3, 5})), X) == ExtRat(3));

  const TraceConeX P = coordinate_cone(1, 1);
  XElement x = el(0b1, vec({2}), 1);
  x.phantom(0) = 1;
  CHECK(eval_sG(zvec({1}), x, P) == inf);
  CHECK(eval_sG(zvec({0}), x, P) == ExtRat(0));
}

TEST_CASE("operations on the coordinate model") {
  const TraceConeX X = coordinate_cone(3);
  CHECK(x_add(el(0b011, vec({1, 2})), el(0b110, vec({4, 6})), X) == el(0b010, vec({6})));
  const XElement x = el(0b011, vec({1, 2}));
  CHECK(x_add(x, el(0b111, vec({0, 0, 0})), X) == x);
  CHECK(x_add(el(0b001, vec({1})), el(0b010, vec({1})), X) == el(0, VectorQ(0)));

  CHECK(x_leq(el(0b011, vec({1, 2})), el(0b010, vec({3})), X));
  CHECK_FALSE(x_leq(el(0b010, vec({3})), el(0b011, vec({1, 2})), X));

  CHECK(x_join(el(0b011, vec({1, 5})), el(0b011, vec({3, 2})), X) == el(0b011, vec({3, 5})));
  CHECK(x_join(x, x, X) == x);
  CHECK(x_join(el(0b001, vec({1})), el(0b010, vec({1})), X) == el(0, VectorQ(0)));

  CHECK(x_meet(el(0b011, vec({1, 5})), el(0b110, vec({2, 7})), X) == el(0b111, vec({1, 2, 7})));
  CHECK(x_meet(x, x, X) == x);
  CHECK(x_meet(el(0b001, vec({4})), el(0b010, vec({9})), X) == el(0b011, vec({4, 9})));
}

TEST_CASE("extension by infinity and least extension") {
  const TraceConeX X = coordinate_cone(2);
  CHECK(extend_by_infinity(0b11, vec({1, 2}), X).support == 0b11u);
  const XElement empty = extend_by_infinity(0, VectorQ(0), X);
  CHECK(eval_sG(zvec({1, 0}), empty, X) == inf);
  CHECK(eval_sG(zvec({1, 1}), empty, X) == inf);

  const XElement two = extend_by_infinity(0b01, vec({2}), X);
  CHECK(eval_sG(zvec({0, 1}), two, X) == inf);
  CHECK(eval_sG(zvec({3, 0}), two, X) == ExtRat(6));

  CHECK(same_matrix(extend_min(vec({2}), 0b01, 0b11, X.family), vec({2, 0})));
  CHECK(same_matrix(extend_min(vec({2, 3}), 0b11, 0b11, X.family), vec({2, 3})));
  CHECK(same_matrix(extend_min(vec({0}), 0b01, 0b11, X.family), vec({0, 0})));
}

TEST_CASE("gluing partial traces") {
  const TraceConeX X = coordinate_cone(3);
  CHECK(glue_partial_traces({{0b011, vec({1, 2})}, {0b110, vec({2, 7})}}, X) == el(0b111, vec({1, 2, 7})));
  CHECK(glue_partial_traces({{0b001, vec({1})}, {0b010, vec({9})}}, X) == el(0b011, vec({1, 9})));
  try {
    glue_partial_traces({{0b011, vec({1, 2})}, {0b010, vec({3})}}, X);
    FAIL("expected a conflict");
  } catch (const GluingConflict& c) {
    CHECK(c.first() == 0);
    CHECK(c.second() == 1);
    CHECK(c.ray() == 0);
  }
}

TEST_CASE("X operations agree with pointwise extended operations on grids") {
  for (int n = 0; n <= 3; ++n) {
    const TraceConeX X = coordinate_cone(n);
    const auto g = oracle::grid(n);
    std::vector<XElement> xs;
    for (const auto& v : g) xs.push_back(oracle::coordinate_element(v));
    for (std::size_t i = 0; i < g.size(); ++i)
      for (std::size_t j = 0; j < g.size(); ++j) {
        const auto& a = g[i];
        const auto& b = g[j];
        CHECK(oracle::coordinate_embedding(x_add(xs[i], xs[j], X), n) == add_pointwise(a, b));
        CHECK(oracle::coordinate_embedding(x_meet(xs[i], xs[j], X), n) == meet_pointwise(a, b));
        CHECK(oracle::coordinate_embedding(x_join(xs[i], xs[j], X), n) == join_pointwise(a, b));
        CHECK(x_leq(xs[i], xs[j], X) == alg_leq(a, b));
      }
  }
}

TEST_CASE("meet and join are glb and lub by exhaustive search") {
  const int n = 2;
  const TraceConeX X = coordinate_cone(n);
  const auto g = oracle::grid(n);
  for (const auto& a : g)
    for (const auto& b : g) {
      const auto m = oracle::coordinate_embedding(x_meet(oracle::coordinate_element(a), oracle::coordinate_element(b), X), n);
      const auto j = oracle::coordinate_embedding(x_join(oracle::coordinate_element(a), oracle::coordinate_element(b), X), n);
      CHECK(oracle::pointwise_leq(m, a));
      CHECK(oracle::pointwise_leq(m, b));
      CHECK(oracle::pointwise_leq(a, j));
      CHECK(oracle::pointwise_leq(b, j));
      for (const auto& z : g) {
        if (oracle::pointwise_leq(z, a) && oracle::pointwise_leq(z, b)) CHECK(oracle::pointwise_leq(z, m));
        if (oracle::pointwise_leq(a, z) && oracle::pointwise_leq(b, z)) CHECK(oracle::pointwise_leq(j, z));
      }
    }
}

TEST_CASE("the lattice check rejects a wrong meet") {
  const auto& e = std::get<EObject>(find_corpus_entry("coord-2")->document.payload);
  ValidationOptions opts;
  opts.samples = 100;
  CHECK(validate_e_object(e, opts).ok());
  opts.meet_override = [](const XElement& x, const XElement&, const TraceConeX&) { return x; };
  CHECK(validate_e_object(e, opts).has(Check::Lattice));
}

TEST_CASE("meet by minimization matches the closed form on a non-coordinate family") {
  const auto& e = std::get<EObject>(find_corpus_entry("af-two-ideal-e")->document.payload);
  const auto layout = block_layout(e.x.family);
  REQUIRE(layout);
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    const XElement x = random_element(e.x, rng);
    const XElement y = random_element(e.x, rng);
    CHECK(x_meet(x, y, e.x) == meet_closed_form(x, y, *layout, e.x));
  }
}

TEST_CASE("gluing on generated families") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const EObject obj = random_e_chain(seed, 3, 3, 0).objects.front();
    const TraceConeX& X = obj.x;
    Rng rng(seed);
    const XElement x = random_element(X, rng);
    std::vector<PartialTrace> parts;
    for (IdealSupport s = 1; s <= x.support; ++s)
      if (is_subset(s, x.support) && rng.chance(1, 2)) parts.push_back({s, restrict_x(x, s, X)});
    if (parts.empty()) continue;
    const XElement glued = glue_partial_traces(parts, X);
    for (const auto& p : parts) CHECK(same_matrix(restrict_x(glued, p.support, X), p.value));
  }
}
