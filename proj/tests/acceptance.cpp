// One PASS/FAIL line per acceptance criterion. All comparisons are exact.

#include "oracles.hpp"

#include "eeinv/cli.hpp"
#include "eeinv/corpus.hpp"
#include "eeinv/errors.hpp"
#include "eeinv/functors.hpp"
#include "eeinv/generate.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

using namespace eeinv;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

bool is_mutant(const CorpusEntry& e) { return e.name.rfind("mutant", 0) == 0; }

// Corpus objects on the Elliott side; Stevens objects enter through F.
std::vector<std::pair<std::string, EObject>> corpus_e_objects() {
  std::vector<std::pair<std::string, EObject>> out;
  for (const auto& e : corpus()) {
    if (is_mutant(e)) continue;
    if (const auto* x = std::get_if<EObject>(&e.document.payload)) out.emplace_back(e.name, *x);
    if (const auto* s = std::get_if<SObject>(&e.document.payload)) out.emplace_back(e.name, apply_F(*s));
  }
  return out;
}

Outcome object_round_trips() {
  Outcome o;
  for (const auto& e : corpus()) {
    if (is_mutant(e)) continue;
    if (const auto* s = std::get_if<SObject>(&e.document.payload))
      if (!(apply_G(apply_F(*s)) == *s)) o.fail("G(F(" + e.name + "))");
    if (const auto* x = std::get_if<EObject>(&e.document.payload))
      if (x->x.phantom_dim == 0 && !(apply_F(apply_G(*x)) == *x)) o.fail("F(G(" + e.name + "))");
  }
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const int blocks = static_cast<int>(seed % 6);
    const int cone_dim = 1 + static_cast<int>(seed % 4);
    const Generated s = gen_random(Kind::SObject, seed, blocks, cone_dim);
    const auto& so = std::get<SObject>(s.document.payload);
    if (!(apply_G(apply_F(so)) == so)) o.fail("G(F(s)) for seed " + std::to_string(seed));
    const Generated e = gen_random(Kind::EObject, seed, blocks, cone_dim);
    const auto& eo = std::get<EObject>(e.document.payload);
    if (eo.x.phantom_dim != 0) o.fail("generated phantom rays for seed " + std::to_string(seed));
    if (!(apply_F(apply_G(eo)) == eo)) o.fail("F(G(e)) for seed " + std::to_string(seed));
  }
  return o;
}

Outcome counterexample() {
  Outcome o;
  const char* argv[] = {"eeinv", "roundtrip", "razak", "--assert-identity"};
  std::ostringstream out, err;
  const int code = cli_main(4, argv, out, err);
  if (code != 1) o.fail("exit code " + std::to_string(code));
  if (out.str().find("phantom cone") == std::string::npos) o.fail("no phantom witness in: " + out.str());
  const auto& razak = std::get<EObject>(find_corpus_entry("razak")->document.payload);
  const SObject s = apply_G(razak);
  for (IdealSupport p = 0; p < s.deltas.num_supports(); ++p)
    if (s.deltas.dim(p) != 0) o.fail("Delta at " + format_support(p) + " is not a point");
  if (has_ideal_property(razak)) o.fail("ideal property reported");
  return o;
}

Outcome meet_oracle() {
  Outcome o;
  for (const auto& [name, e] : corpus_e_objects()) {
    const auto layout = block_layout(e.x.family);
    if (!layout) {
      o.fail(name + " has no block layout");
      continue;
    }
    const DeltaFamily& d = e.x.family;
    Rng rng(0xacce55 + name.size());
    for (int i = 0; i < 1000; ++i) {
      const XElement x = random_element(e.x, rng);
      const XElement y = random_element(e.x, rng);
      if (!(x_meet(x, y, e.x) == meet_closed_form(x, y, *layout, e.x))) o.fail(name + ": meet differs from the closed form");
      const IdealSupport u = x.support | y.support;
      if (u == 0) continue;
      // a nonempty p within u, q within p, and a functional g on C_q
      IdealSupport p = 0;
      while (p == 0) p = static_cast<IdealSupport>(rng.between(1, u)) & u;
      IdealSupport q = 0;
      while (q == 0) q = static_cast<IdealSupport>(rng.between(1, p)) & p;
      VectorQ g(d.dim(q));
      for (Index k = 0; k < g.size(); ++k) g(k) = rng.small_rational(4, 3);
      const VectorQ pulled = d.restriction(p, q).transpose() * g;
      if (meet_functional(p, pulled, x, y, d) != meet_functional(q, g, x, y, d)) o.fail(name + ": meet value depends on the presentation");
    }
  }
  return o;
}

Outcome riesz() {
  Outcome o;
  Rng rng(0x7135);
  for (int i = 0; i < 1000; ++i) {
    const Index k = rng.between(1, 5);
    VectorQ g(k), h(k), f(k);
    for (Index j = 0; j < k; ++j) {
      g(j) = rng.small_rational(8, 4);
      h(j) = rng.small_rational(8, 4);
      f(j) = (g(j) + h(j)) * Rational(rng.between(0, 6), 6);
    }
    const RieszParts r = riesz_decompose(f, g, h);
    if (!same_matrix(r.g_hat + r.h_hat, f) || !is_nonnegative(r.g_hat) || !is_nonnegative(r.h_hat) ||
        !is_nonnegative(VectorQ(g - r.g_hat)) || !is_nonnegative(VectorQ(h - r.h_hat)))
      o.fail("triple " + std::to_string(i));
  }
  for (const auto& [name, e] : corpus_e_objects()) {
    const DeltaFamily& d = e.x.family;
    for (IdealSupport u = 1; u <= d.full(); ++u)
      for (IdealSupport p = 1; p <= u; ++p) {
        if (!is_subset(p, u)) continue;
        for (IdealSupport q = 0; q <= u; ++q) {
          if (!is_subset(q, u) || (p | q) != u) continue;
          for (Index r = 0; r < d.dim(u); ++r) {
            const VectorQ f = VectorQ::Unit(d.dim(u), r);
            const auto [f1, f2] = decompose_over_sum(f, p, q, d);
            VectorQ back = d.restriction(u, p).transpose() * f1;
            if (q != 0) back += d.restriction(u, q).transpose() * f2;
            if (!same_matrix(back, f) || !is_nonnegative(f1) || !is_nonnegative(f2))
              o.fail(name + ": split of ray " + std::to_string(r) + " over " + format_support(p) + "," + format_support(q));
          }
        }
      }
  }
  return o;
}

void check_zeta(const EMorphism& z, const EObject& src, const EObject& dst, Rng& rng, const std::string& where, Outcome& o) {
  const int n = src.group.rank;
  for (int s = 0; s < 100; ++s) {
    const XElement tau = random_element(dst.x, rng);
    const XElement pulled = apply_zeta(z, tau);
    if (pulled.support != preimage_support(z.theta0.matrix, tau.support)) o.fail(where + ": zeta(tau) finite outside the preimage ideal");
    for (int i = 0; i < n; ++i) {
      const VectorZ e = VectorZ::Unit(n, i);
      if (eval_sG(e, pulled, src.x) != eval_sG(z.theta0.matrix * e, tau, dst.x)) o.fail(where + ": pairing not preserved");
    }
  }
}

Outcome transport() {
  Outcome o;
  ValidationOptions opts;
  opts.samples = 50;
  Rng rng(0x7a);
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const std::string where = "seed " + std::to_string(seed);
    const Generated g = gen_random(Kind::SMorphism, seed, 1 + static_cast<int>(seed % 4), 1 + static_cast<int>(seed % 3));
    const auto& m = std::get<SMorphism>(g.document.payload);
    const auto& src = std::get<SObject>(g.source->payload);
    const auto& dst = std::get<SObject>(g.target->payload);
    const EObject esrc = apply_F(src), edst = apply_F(dst);
    const EMorphism z = transport_s_to_e(m, src, dst);
    if (!validate_e_morphism(z, esrc, edst, opts).ok()) o.fail(where + ": transported morphism is not valid");
    check_zeta(z, esrc, edst, rng, where, o);

    const Generated ge = gen_random(Kind::EMorphism, seed + 1000, 1 + static_cast<int>(seed % 4), 1 + static_cast<int>(seed % 3));
    const auto& ez = std::get<EMorphism>(ge.document.payload);
    const auto& es = std::get<EObject>(ge.source->payload);
    const auto& et = std::get<EObject>(ge.target->payload);
    check_zeta(ez, es, et, rng, where + " (e)", o);
    const SMorphism x = transport_e_to_s(ez, es, et, opts);
    if (!validate_s_morphism(x, apply_G(es), apply_G(et)).ok()) o.fail(where + ": transported Stevens morphism is not valid");
  }
  for (const char* name : {"swap-2", "id-coord-2"}) {
    const auto* e = find_corpus_entry(name);
    if (const auto* m = std::get_if<SMorphism>(&e->document.payload)) {
      const auto& s = std::get<SObject>(e->source->payload);
      const auto& t = std::get<SObject>(e->target->payload);
      check_zeta(transport_s_to_e(*m, s, t), apply_F(s), apply_F(t), rng, name, o);
    } else {
      check_zeta(std::get<EMorphism>(e->document.payload), std::get<EObject>(e->source->payload), std::get<EObject>(e->target->payload), rng,
                 name, o);
    }
  }
  return o;
}

Outcome functoriality() {
  Outcome o;
  ValidationOptions opts;
  opts.samples = 10;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const std::string where = "seed " + std::to_string(seed);
    const int blocks = 1 + static_cast<int>(seed % 4);
    const int cone_dim = 1 + static_cast<int>(seed % 3);
    const SChain s = random_s_chain(seed, blocks, cone_dim, 2);
    const SMorphism& a = s.arrows[0];
    const SMorphism& b = s.arrows[1];
    const EMorphism ta = transport_s_to_e(a, s.objects[0], s.objects[1]);
    const EMorphism tb = transport_s_to_e(b, s.objects[1], s.objects[2]);
    if (!(transport_s_to_e(compose_s_morphisms(b, a), s.objects[0], s.objects[2]) == compose_e_morphisms(tb, ta)))
      o.fail(where + ": S to E does not preserve composition");
    if (roundtrip_morphism(a, s.objects[0], s.objects[1]).verdict != Verdict::Identity) o.fail(where + ": S round trip");

    const EChain e = random_e_chain(seed + 5000, blocks, cone_dim, 2);
    const EMorphism& c = e.arrows[0];
    const EMorphism& d = e.arrows[1];
    const SMorphism sc = transport_e_to_s(c, e.objects[0], e.objects[1], opts);
    const SMorphism sd = transport_e_to_s(d, e.objects[1], e.objects[2], opts);
    if (!(transport_e_to_s(compose_e_morphisms(d, c), e.objects[0], e.objects[2], opts) == compose_s_morphisms(sd, sc)))
      o.fail(where + ": E to S does not preserve composition");
    if (roundtrip_morphism(c, e.objects[0], e.objects[1]).verdict != Verdict::Identity) o.fail(where + ": E round trip");
  }
  return o;
}

Outcome gluing() {
  Outcome o;
  int consistent = 0, inconsistent = 0;
  for (std::uint64_t seed = 0; consistent < 200; ++seed) {
    const EObject obj = random_e_chain(seed, 2 + static_cast<int>(seed % 3), 3, 0).objects.front();
    const TraceConeX& X = obj.x;
    Rng rng(seed * 31 + 7);
    XElement x = random_element(X, rng);
    if (support_size(x.support) < 2) continue;
    std::vector<PartialTrace> parts;
    for (IdealSupport s = 1; s <= x.support; ++s)
      if (is_subset(s, x.support) && rng.chance(1, 2)) parts.push_back({s, restrict_x(x, s, X)});
    if (parts.size() < 2) continue;
    ++consistent;
    const std::string where = "seed " + std::to_string(seed);
    try {
      const XElement glued = glue_partial_traces(parts, X);
      for (const auto& p : parts)
        if (!same_matrix(restrict_x(glued, p.support, X), p.value)) o.fail(where + ": glued trace does not restrict back");
    } catch (const Error& e) {
      o.fail(where + ": " + e.what());
    }
    // move one part that overlaps another off the common restriction
    std::size_t victim = parts.size();
    for (std::size_t i = 0; i < parts.size() && victim == parts.size(); ++i)
      for (std::size_t j = 0; j < parts.size(); ++j)
        if (i != j && (parts[i].support & parts[j].support)) victim = i;
    if (victim == parts.size()) continue;
    ++inconsistent;
    parts[victim].value += VectorQ::Ones(parts[victim].value.size());
    try {
      glue_partial_traces(parts, X);
      o.fail(where + ": inconsistent family accepted");
    } catch (const GluingConflict& c) {
      const auto& a = parts[c.first()];
      const auto& b = parts[c.second()];
      const IdealSupport overlap = a.support & b.support;
      const VectorQ ra = X.family.restriction(a.support, overlap) * a.value;
      const VectorQ rb = X.family.restriction(b.support, overlap) * b.value;
      if (c.first() != victim && c.second() != victim) o.fail(where + ": witness omits the altered part");
      if (c.ray() < 0 || c.ray() >= ra.size() || ra(c.ray()) == rb(c.ray())) o.fail(where + ": witness ray does not differ");
    }
  }
  if (inconsistent < 100) o.fail("only " + std::to_string(inconsistent) + " inconsistent families");
  return o;
}

Outcome mutants() {
  Outcome o;
  int seen = 0;
  for (const auto& e : corpus()) {
    if (!is_mutant(e)) continue;
    ++seen;
    const std::string expected = e.expected.at("validate");
    const std::string actual = run_corpus_entry(e).at("validate");
    if (expected.find(',') != std::string::npos || actual != expected) o.fail(e.name + ": expected " + expected + ", got " + actual);
  }
  const auto& coord = std::get<EObject>(find_corpus_entry("coord-2")->document.payload);
  ValidationOptions wrong_meet;
  wrong_meet.meet_override = [](const XElement& x, const XElement&, const TraceConeX&) { return x; };
  if (validate_e_object(coord, wrong_meet).summary() != "lattice") o.fail("wrong meet not isolated");
  if (seen < 7) o.fail("missing mutants");
  return o;
}

Outcome lattice_grids() {
  Outcome o;
  for (int n = 0; n <= 3; ++n) {
    const TraceConeX X{coordinate_family(n), 0};
    const auto g = oracle::grid(n);
    std::vector<XElement> xs;
    for (const auto& v : g) xs.push_back(oracle::coordinate_element(v));
    for (std::size_t i = 0; i < g.size(); ++i)
      for (std::size_t j = 0; j < g.size(); ++j) {
        const auto m = oracle::coordinate_embedding(x_meet(xs[i], xs[j], X), n);
        const auto jn = oracle::coordinate_embedding(x_join(xs[i], xs[j], X), n);
        if (m != meet_pointwise(g[i], g[j]) || jn != join_pointwise(g[i], g[j]) ||
            oracle::coordinate_embedding(x_add(xs[i], xs[j], X), n) != add_pointwise(g[i], g[j]) ||
            x_leq(xs[i], xs[j], X) != alg_leq(g[i], g[j]))
          o.fail("n=" + std::to_string(n) + ": operation disagrees with the pointwise one");
        for (const auto& z : g) {
          const bool below = oracle::pointwise_leq(z, g[i]) && oracle::pointwise_leq(z, g[j]);
          const bool above = oracle::pointwise_leq(g[i], z) && oracle::pointwise_leq(g[j], z);
          if (below != oracle::pointwise_leq(z, m) || above != oracle::pointwise_leq(jn, z))
            o.fail("n=" + std::to_string(n) + ": glb/lub law");
        }
      }
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget;  // seconds, 0 when unbounded
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "object round trips", 30, object_round_trips},
      {2, "projectionless counterexample", 0, counterexample},
      {3, "meet oracle and well-definedness", 60, meet_oracle},
      {4, "Riesz and decomposition", 0, riesz},
      {5, "morphism transport", 0, transport},
      {6, "functoriality", 0, functoriality},
      {7, "gluing", 0, gluing},
      {8, "mutation suite", 0, mutants},
      {9, "lattice laws on grids", 10, lattice_grids},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double took = seconds_since(t0);
    if (c.budget > 0 && took > c.budget) o.fail("over budget");
    std::ostringstream line;
    line.precision(2);
    line << std::fixed << (o.pass ? "PASS" : "FAIL") << " " << c.id << " " << c.name << " (" << took << " s)";
    if (!o.pass) line << ": " << o.detail;
    std::cout << line.str() << std::endl;
    failures += o.pass ? 0 : 1;
  }
  return failures == 0 ? 0 : 1;
}
