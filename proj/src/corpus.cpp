#include "eeinv/corpus.hpp"

#include "eeinv/errors.hpp"
#include "eeinv/functors.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>

namespace eeinv {

namespace {

FinAbGroup trivial_k1() { return {}; }

ScaledOrderedGroup unit_scale(int n) { return ScaledOrderedGroup::with_unit(VectorZ::Ones(n)); }

SObject coord_s(int n) { return {unit_scale(n), trivial_k1(), coordinate_family(n)}; }
EObject coord_e(int n) { return {unit_scale(n), trivial_k1(), {coordinate_family(n), 0}}; }

// Block 0 has two rays, block 1 one; the joint cone lists block 1 first and
// every ray carries its own scale.
DeltaFamily af_family() {
  BlockLayout layout;
  layout.sigma = {(VectorQ(2) << Rational(1), Rational(2)).finished(), VectorQ::Ones(1)};
  layout.rays = {{},
                 {{0, 0, Rational(1)}, {0, 1, Rational(1)}},
                 {{1, 0, Rational(1)}},
                 {{1, 0, Rational(2)}, {0, 0, Rational(1)}, {0, 1, Rational(1, 2)}}};
  return build_block_family(layout);
}

MatrixQ rows(std::initializer_list<std::initializer_list<Integer>> data) {
  MatrixQ m(static_cast<Index>(data.size()), static_cast<Index>(data.begin()->size()));
  Index r = 0;
  for (const auto& row : data) {
    Index c = 0;
    for (Integer v : row) m(r, c++) = Rational(v);
    ++r;
  }
  return m;
}

VectorQ vec(std::initializer_list<Integer> data) {
  VectorQ v(static_cast<Index>(data.size()));
  Index i = 0;
  for (Integer x : data) v(i++) = Rational(x);
  return v;
}

SObject mutant_cond1() {
  std::vector<VectorQ> sigma{vec({1, 1}), vec({1}), vec({1})};
  DeltaFamily d = build_block_family(BlockLayout::canonical(sigma));
  MatrixQ l = d.restriction(0b011, 0b001);
  l.row(0).swap(l.row(1));
  d.set_restriction(0b011, 0b001, l);
  return {ScaledOrderedGroup::all(3), trivial_k1(), d};
}

SObject mutant_cond2() {
  SObject s = coord_s(2);
  s.deltas.set_pairing(0b11, 0, vec({2, 0}));
  return s;
}

// Joint cone with three rays where block 0 sees rays {0} and {1,2} merged:
// the pulled-back functional of the merged ray dominates e_1, which is not
// itself a pullback.
SObject mutant_cond3() {
  DeltaFamily d(2);
  d.set_dim(0b01, 2);
  d.set_dim(0b10, 2);
  d.set_dim(0b11, 3);
  const MatrixQ l1 = rows({{1, 0, 0}, {0, 1, 1}});
  const MatrixQ l2 = rows({{0, 1, 0}, {0, 0, 1}});
  d.set_restriction(0b11, 0b01, l1);
  d.set_restriction(0b11, 0b10, l2);
  d.set_pairing(0b01, 0, vec({1, 1}));
  d.set_pairing(0b10, 1, vec({1, 1}));
  d.set_pairing(0b11, 0, l1.transpose() * vec({1, 1}));
  d.set_pairing(0b11, 1, l2.transpose() * vec({1, 1}));
  return {ScaledOrderedGroup::all(2), trivial_k1(), d};
}

// Invertible restriction onto block 0 (so pullbacks are hereditary) but the
// first ray functional of the joint cone is no positive combination.
SObject mutant_cond4() {
  DeltaFamily d(2);
  d.set_dim(0b01, 2);
  d.set_dim(0b10, 1);
  d.set_dim(0b11, 2);
  const MatrixQ l1 = rows({{1, 1}, {0, 1}});
  const MatrixQ l2 = rows({{0, 1}});
  d.set_restriction(0b11, 0b01, l1);
  d.set_restriction(0b11, 0b10, l2);
  d.set_pairing(0b01, 0, vec({1, 1}));
  d.set_pairing(0b10, 1, vec({1}));
  d.set_pairing(0b11, 0, l1.transpose() * vec({1, 1}));
  d.set_pairing(0b11, 1, l2.transpose() * vec({1}));
  return {ScaledOrderedGroup::all(2), trivial_k1(), d};
}

SObject mutant_simplex_base() {
  DeltaFamily d(1);
  d.set_dim(0b1, 2);
  d.set_pairing(0b1, 0, vec({1, 0}));
  return {ScaledOrderedGroup::all(1), trivial_k1(), d};
}

SMorphism swap_morphism(const SObject& s) {
  SMorphism m{{MatrixZ::Zero(2, 2)}, K1Hom::identity(s.k1), {}};
  m.theta0.matrix << 0, 1, 1, 0;
  for (IdealSupport src = 0; src < 4; ++src) {
    const IdealSupport t = image_support(m.theta0.matrix, src);
    MatrixQ x = MatrixQ::Zero(s.deltas.dim(src), s.deltas.dim(t));
    // coordinate cones list blocks in ascending order
    const auto src_blocks = members(src);
    const auto dst_blocks = members(t);
    for (std::size_t r = 0; r < src_blocks.size(); ++r)
      for (std::size_t c = 0; c < dst_blocks.size(); ++c)
        if (dst_blocks[c] == 1 - src_blocks[r]) x(static_cast<Index>(r), static_cast<Index>(c)) = 1;
    m.xi.push_back(std::move(x));
  }
  return m;
}

std::vector<CorpusEntry> build() {
  std::vector<CorpusEntry> out;
  const std::map<std::string, std::string> e_ok{{"validate", "ok"}, {"roundtrip", "identity"}, {"ideal-property", "true"}};
  const std::map<std::string, std::string> s_ok{{"validate", "ok"}, {"roundtrip", "identity"}};
  for (int n = 0; n <= 3; ++n) out.push_back({"coord-" + std::to_string(n), {coord_e(n)}, std::nullopt, std::nullopt, e_ok});
  out.push_back({"coord-2-s", {coord_s(2)}, std::nullopt, std::nullopt, s_ok});
  out.push_back({"coord-3-s", {coord_s(3)}, std::nullopt, std::nullopt, s_ok});
  out.push_back({"af-two-ideal", {SObject{unit_scale(2), trivial_k1(), af_family()}}, std::nullopt, std::nullopt, s_ok});
  out.push_back({"af-two-ideal-e", {EObject{unit_scale(2), trivial_k1(), {af_family(), 0}}}, std::nullopt, std::nullopt, e_ok});
  out.push_back({"razak",
                 {EObject{ScaledOrderedGroup::all(0), trivial_k1(), {DeltaFamily(0), 1}}},
                 std::nullopt,
                 std::nullopt,
                 {{"validate", "ok"}, {"roundtrip", "mismatch"}, {"ideal-property", "false"}}});

  out.push_back({"mutant-cond1", {mutant_cond1()}, std::nullopt, std::nullopt, {{"validate", "cond1-composition"}}});
  out.push_back({"mutant-cond2", {mutant_cond2()}, std::nullopt, std::nullopt, {{"validate", "cond2-pairing"}}});
  out.push_back({"mutant-cond3", {mutant_cond3()}, std::nullopt, std::nullopt, {{"validate", "cond3-hereditary"}}});
  out.push_back({"mutant-cond4", {mutant_cond4()}, std::nullopt, std::nullopt, {{"validate", "cond4-decomposition"}}});
  out.push_back({"mutant-simplex-base", {mutant_simplex_base()}, std::nullopt, std::nullopt, {{"validate", "simplex-base"}}});

  {
    const SObject one = coord_s(1);
    SMorphism m = identity_s_morphism(one);
    m.theta0.matrix(0, 0) = 2;
    m.xi[1](0, 0) = 2;
    out.push_back({"mutant-scale", {m}, Document{one}, Document{one}, {{"validate", "scale"}}});
  }
  {
    const EObject two = coord_e(2);
    EMorphism m = identity_e_morphism(two);
    for (auto& z : m.zeta) z *= Rational(2);
    out.push_back({"mutant-zeta", {m}, Document{two}, Document{two}, {{"validate", "compatibility"}}});
  }
  {
    const SObject two = coord_s(2);
    out.push_back({"swap-2", {swap_morphism(two)}, Document{two}, Document{two}, s_ok});
  }
  {
    const EObject two = coord_e(2);
    out.push_back({"id-coord-2", {identity_e_morphism(two)}, Document{two}, Document{two},
                   {{"validate", "ok"}, {"roundtrip", "identity"}}});
  }
  return out;
}

template <typename T>
const T& context(const std::optional<Document>& d, const std::string& name) {
  if (!d || !std::holds_alternative<T>(d->payload)) throw ContextError("corpus entry " + name + " lacks a matching context");
  return std::get<T>(d->payload);
}

}  // namespace

const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> entries = build();
  return entries;
}

const CorpusEntry* find_corpus_entry(const std::string& name) {
  for (const auto& e : corpus())
    if (e.name == name) return &e;
  return nullptr;
}

std::map<std::string, std::string> run_corpus_entry(const CorpusEntry& entry) {
  std::map<std::string, std::string> out;
  const auto wants = [&](const char* key) { return entry.expected.count(key) > 0; };
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, SObject>) {
          if (wants("validate")) out["validate"] = validate_s_object(p).summary();
          if (wants("roundtrip")) out["roundtrip"] = verdict_name(roundtrip_object(p).verdict);
        } else if constexpr (std::is_same_v<T, EObject>) {
          if (wants("validate")) out["validate"] = validate_e_object(p).summary();
          if (wants("roundtrip")) out["roundtrip"] = verdict_name(roundtrip_object(p).verdict);
          if (wants("ideal-property")) out["ideal-property"] = has_ideal_property(p) ? "true" : "false";
        } else if constexpr (std::is_same_v<T, SMorphism>) {
          const auto& src = context<SObject>(entry.source, entry.name);
          const auto& dst = context<SObject>(entry.target, entry.name);
          if (wants("validate")) out["validate"] = validate_s_morphism(p, src, dst).summary();
          if (wants("roundtrip")) out["roundtrip"] = verdict_name(roundtrip_morphism(p, src, dst).verdict);
        } else {
          const auto& src = context<EObject>(entry.source, entry.name);
          const auto& dst = context<EObject>(entry.target, entry.name);
          if (wants("validate")) out["validate"] = validate_e_morphism(p, src, dst).summary();
          if (wants("roundtrip")) out["roundtrip"] = verdict_name(roundtrip_morphism(p, src, dst).verdict);
        }
      },
      entry.document.payload);
  return out;
}

void write_corpus(const std::string& dir) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  nlohmann::ordered_json expected = nlohmann::ordered_json::object();
  for (const auto& e : corpus()) {
    const std::string ext(kind_extension(e.document.kind()));
    write_document((fs::path(dir) / (e.name + ext)).string(), e.document);
    if (e.source) write_document((fs::path(dir) / (e.name + ".src" + std::string(kind_extension(e.source->kind())))).string(), *e.source);
    if (e.target) write_document((fs::path(dir) / (e.name + ".dst" + std::string(kind_extension(e.target->kind())))).string(), *e.target);
    expected[e.name] = e.expected;
  }
  std::ofstream out(fs::path(dir) / "expected.json");
  if (!out) throw std::runtime_error("cannot write " + (fs::path(dir) / "expected.json").string());
  out << expected.dump(2) << "\n";
}

}  // namespace eeinv
