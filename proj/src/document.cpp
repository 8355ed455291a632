#include "eeinv/document.hpp"

#include "eeinv/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace eeinv {

using Json = nlohmann::ordered_json;

std::string_view kind_name(Kind k) {
  switch (k) {
    case Kind::SObject:
      return "s-object";
    case Kind::EObject:
      return "e-object";
    case Kind::SMorphism:
      return "s-morphism";
    case Kind::EMorphism:
      return "e-morphism";
  }
  return "s-object";
}

Kind parse_kind(std::string_view name) {
  for (Kind k : {Kind::SObject, Kind::EObject, Kind::SMorphism, Kind::EMorphism})
    if (kind_name(k) == name) return k;
  throw ParseError("unknown document kind '" + std::string(name) + "'");
}

std::string_view kind_extension(Kind k) {
  switch (k) {
    case Kind::SObject:
      return ".sj";
    case Kind::EObject:
      return ".ej";
    case Kind::SMorphism:
      return ".sm";
    case Kind::EMorphism:
      return ".em";
  }
  return ".sj";
}

namespace {

// ---- emission ----

Json support_json(IdealSupport s) {
  Json a = Json::array();
  for (int i : members(s)) a.push_back(i);
  return a;
}

Json rational_matrix_json(const MatrixQ& m) {
  Json data = Json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(format_rational(m(r, c)));
    data.push_back(std::move(row));
  }
  return Json{{"shape", {m.rows(), m.cols()}}, {"data", std::move(data)}};
}

Json integer_matrix_json(const MatrixZ& m) {
  Json data = Json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    data.push_back(std::move(row));
  }
  return Json{{"shape", {m.rows(), m.cols()}}, {"data", std::move(data)}};
}

Json vector_json(const VectorQ& v) {
  Json a = Json::array();
  for (Index i = 0; i < v.size(); ++i) a.push_back(format_rational(v(i)));
  return a;
}

Json group_json(const ScaledOrderedGroup& g) {
  Json j{{"rank", g.rank}};
  if (g.scale_all) {
    j["scale"] = "all";
  } else {
    Json u = Json::array();
    for (Index i = 0; i < g.unit.size(); ++i) u.push_back(g.unit(i));
    j["scale"] = std::move(u);
  }
  return j;
}

Json k1_json(const FinAbGroup& g) { return Json{{"free_rank", g.free_rank}, {"torsion", g.torsion}}; }

Json family_json(const DeltaFamily& d) {
  Json cones = Json::array();
  Json restrictions = Json::array();
  Json pairings = Json::array();
  for (IdealSupport s = 0; s < d.num_supports(); ++s) cones.push_back(Json{{"support", support_json(s)}, {"dim", d.dim(s)}});
  for (IdealSupport s = 0; s < d.num_supports(); ++s)
    for (IdealSupport t = 1; t < s; ++t)
      if (is_subset(t, s))
        restrictions.push_back(Json{{"from", support_json(s)}, {"to", support_json(t)}, {"matrix", rational_matrix_json(d.restriction(s, t))}});
  for (IdealSupport s = 1; s < d.num_supports(); ++s)
    for (int i : members(s))
      pairings.push_back(Json{{"support", support_json(s)}, {"generator", i}, {"functional", vector_json(d.pairing(s, i))}});
  return Json{{"cones", std::move(cones)}, {"restrictions", std::move(restrictions)}, {"pairings", std::move(pairings)}};
}

Json k1_hom_json(const K1Hom& h) {
  return Json{{"source", k1_json(h.source)}, {"target", k1_json(h.target)}, {"matrix", integer_matrix_json(h.matrix)}};
}

Json components_json(const std::vector<MatrixQ>& ms) {
  Json a = Json::array();
  for (std::size_t s = 0; s < ms.size(); ++s)
    a.push_back(Json{{"support", support_json(static_cast<IdealSupport>(s))}, {"matrix", rational_matrix_json(ms[s])}});
  return a;
}

Json payload_json(const SObject& s) {
  return Json{{"group", group_json(s.group)}, {"k1", k1_json(s.k1)}, {"family", family_json(s.deltas)}};
}

Json payload_json(const EObject& e) {
  return Json{{"group", group_json(e.group)}, {"k1", k1_json(e.k1)}, {"family", family_json(e.x.family)}, {"phantom_dim", e.x.phantom_dim}};
}

Json payload_json(const SMorphism& m) {
  return Json{{"theta0", integer_matrix_json(m.theta0.matrix)}, {"theta1", k1_hom_json(m.theta1)}, {"xi", components_json(m.xi)}};
}

Json payload_json(const EMorphism& m) {
  return Json{{"theta0", integer_matrix_json(m.theta0.matrix)},
              {"theta1", k1_hom_json(m.theta1)},
              {"zeta", components_json(m.zeta)},
              {"phantom", rational_matrix_json(m.phantom)}};
}

// ---- parsing ----

const Json& field(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw DocumentError(path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw DocumentError(path + "." + key, "missing");
  return *it;
}

Integer integer_value(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw DocumentError(path, "expected an integer");
  return j.get<Integer>();
}

Integer count_value(const Json& j, const std::string& path) {
  const Integer v = integer_value(j, path);
  if (v < 0) throw DocumentError(path, "must be nonnegative");
  return v;
}

Rational rational_value(const Json& j, const std::string& path, bool nonnegative) {
  Rational q;
  try {
    if (j.is_number_integer())
      q = Rational(j.get<Integer>());
    else if (j.is_string())
      q = parse_rational(j.get<std::string>());
    else
      throw DocumentError(path, "expected a rational \"num/den\"");
  } catch (const DocumentError& e) {
    if (e.field().empty()) throw DocumentError(path, e.what());
    throw;
  }
  if (nonnegative && q < 0) throw DocumentError(path, "negative value " + format_rational(q));
  return q;
}

const Json& array_value(const Json& j, const std::string& path) {
  if (!j.is_array()) throw DocumentError(path, "expected an array");
  return j;
}

IdealSupport support_value(const Json& j, int n, const std::string& path) {
  array_value(j, path);
  IdealSupport s = 0;
  Integer last = -1;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const Integer b = integer_value(j[i], path + "[" + std::to_string(i) + "]");
    if (b < 0 || b >= n) throw DocumentError(path, "block index " + std::to_string(b) + " out of range");
    if (b <= last) throw DocumentError(path, "support must be strictly ascending");
    last = b;
    s |= IdealSupport{1} << b;
  }
  return s;
}

std::pair<Index, Index> shape_value(const Json& j, const std::string& path) {
  const Json& shape = array_value(field(j, "shape", path), path + ".shape");
  if (shape.size() != 2) throw DocumentError(path + ".shape", "expected [rows, cols]");
  const Index rows = count_value(shape[0], path + ".shape[0]");
  const Index cols = count_value(shape[1], path + ".shape[1]");
  const Json& data = array_value(field(j, "data", path), path + ".data");
  if (static_cast<Index>(data.size()) != rows) throw DocumentError(path + ".data", "expected " + std::to_string(rows) + " rows");
  for (std::size_t r = 0; r < data.size(); ++r)
    if (!data[r].is_array() || static_cast<Index>(data[r].size()) != cols)
      throw DocumentError(path + ".data[" + std::to_string(r) + "]", "expected " + std::to_string(cols) + " entries");
  return {rows, cols};
}

MatrixQ rational_matrix_value(const Json& j, const std::string& path) {
  const auto [rows, cols] = shape_value(j, path);
  const Json& data = j["data"];
  MatrixQ m(rows, cols);
  for (Index r = 0; r < rows; ++r)
    for (Index c = 0; c < cols; ++c)
      m(r, c) = rational_value(data[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)],
                               path + ".data[" + std::to_string(r) + "][" + std::to_string(c) + "]", true);
  return m;
}

MatrixZ integer_matrix_value(const Json& j, const std::string& path) {
  const auto [rows, cols] = shape_value(j, path);
  const Json& data = j["data"];
  MatrixZ m(rows, cols);
  for (Index r = 0; r < rows; ++r)
    for (Index c = 0; c < cols; ++c)
      m(r, c) = integer_value(data[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)],
                              path + ".data[" + std::to_string(r) + "][" + std::to_string(c) + "]");
  return m;
}

ScaledOrderedGroup group_value(const Json& j, const std::string& path) {
  const Integer rank = count_value(field(j, "rank", path), path + ".rank");
  if (rank > kMaxFamilyRank) throw DocumentError(path + ".rank", "rank above " + std::to_string(kMaxFamilyRank));
  const Json& scale = field(j, "scale", path);
  if (scale.is_string()) {
    if (scale.get<std::string>() != "all") throw DocumentError(path + ".scale", "expected \"all\" or an array");
    return ScaledOrderedGroup::all(static_cast<int>(rank));
  }
  array_value(scale, path + ".scale");
  if (static_cast<Integer>(scale.size()) != rank) throw DocumentError(path + ".scale", "expected " + std::to_string(rank) + " entries");
  VectorZ u(rank);
  for (Index i = 0; i < rank; ++i) u(i) = count_value(scale[static_cast<std::size_t>(i)], path + ".scale[" + std::to_string(i) + "]");
  return ScaledOrderedGroup::with_unit(std::move(u));
}

FinAbGroup k1_value(const Json& j, const std::string& path) {
  FinAbGroup g;
  g.free_rank = static_cast<int>(count_value(field(j, "free_rank", path), path + ".free_rank"));
  const Json& t = array_value(field(j, "torsion", path), path + ".torsion");
  for (std::size_t i = 0; i < t.size(); ++i) g.torsion.push_back(integer_value(t[i], path + ".torsion[" + std::to_string(i) + "]"));
  try {
    g.check();
  } catch (const DocumentError& e) {
    throw DocumentError(path + "." + e.field(), e.what());
  }
  return g;
}

DeltaFamily family_value(const Json& j, int n, const std::string& path) {
  DeltaFamily d(n);
  const IdealSupport count = d.num_supports();
  std::vector<bool> seen(count, false);
  const Json& cones = array_value(field(j, "cones", path), path + ".cones");
  for (std::size_t k = 0; k < cones.size(); ++k) {
    const std::string p = path + ".cones[" + std::to_string(k) + "]";
    const IdealSupport s = support_value(field(cones[k], "support", p), n, p + ".support");
    if (seen[s]) throw DocumentError(p, "duplicate cone");
    seen[s] = true;
    const Integer dim = count_value(field(cones[k], "dim", p), p + ".dim");
    if (s == 0 && dim != 0) throw DocumentError(p + ".dim", "the cone over the empty support is a point");
    d.set_dim(s, dim);
  }
  for (IdealSupport s = 0; s < count; ++s)
    if (!seen[s]) throw DocumentError(path + ".cones", "missing cone for " + format_support(s));

  std::vector<bool> have(static_cast<std::size_t>(count) * count, false);
  const Json& rs = array_value(field(j, "restrictions", path), path + ".restrictions");
  for (std::size_t k = 0; k < rs.size(); ++k) {
    const std::string p = path + ".restrictions[" + std::to_string(k) + "]";
    const IdealSupport s = support_value(field(rs[k], "from", p), n, p + ".from");
    const IdealSupport t = support_value(field(rs[k], "to", p), n, p + ".to");
    if (t == 0 || t == s || !is_subset(t, s)) throw DocumentError(p, "expected a strictly smaller nonempty target support");
    if (have[s * count + t]) throw DocumentError(p, "duplicate restriction");
    have[s * count + t] = true;
    MatrixQ m = rational_matrix_value(field(rs[k], "matrix", p), p + ".matrix");
    if (m.rows() != d.dim(t) || m.cols() != d.dim(s))
      throw DocumentError(p + ".matrix", "expected shape " + std::to_string(d.dim(t)) + "x" + std::to_string(d.dim(s)));
    d.set_restriction(s, t, std::move(m));
  }
  for (IdealSupport s = 0; s < count; ++s)
    for (IdealSupport t = 1; t < s; ++t)
      if (is_subset(t, s) && !have[s * count + t])
        throw DocumentError(path + ".restrictions", "missing restriction " + format_support(s) + "->" + format_support(t));

  std::vector<bool> paired(static_cast<std::size_t>(count) * static_cast<std::size_t>(n), false);
  const Json& ps = array_value(field(j, "pairings", path), path + ".pairings");
  for (std::size_t k = 0; k < ps.size(); ++k) {
    const std::string p = path + ".pairings[" + std::to_string(k) + "]";
    const IdealSupport s = support_value(field(ps[k], "support", p), n, p + ".support");
    const Integer i = integer_value(field(ps[k], "generator", p), p + ".generator");
    if (i < 0 || i >= n || !(s & (IdealSupport{1} << i))) throw DocumentError(p + ".generator", "generator outside the support");
    const std::size_t slot = s * static_cast<std::size_t>(n) + static_cast<std::size_t>(i);
    if (paired[slot]) throw DocumentError(p, "duplicate pairing");
    paired[slot] = true;
    const Json& f = array_value(field(ps[k], "functional", p), p + ".functional");
    if (static_cast<Index>(f.size()) != d.dim(s)) throw DocumentError(p + ".functional", "expected " + std::to_string(d.dim(s)) + " entries");
    VectorQ v(d.dim(s));
    for (Index r = 0; r < v.size(); ++r) v(r) = rational_value(f[static_cast<std::size_t>(r)], p + ".functional[" + std::to_string(r) + "]", true);
    d.set_pairing(s, static_cast<int>(i), std::move(v));
  }
  for (IdealSupport s = 1; s < count; ++s)
    for (int i : members(s))
      if (!paired[s * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)])
        throw DocumentError(path + ".pairings", "missing pairing for " + format_support(s) + " generator " + std::to_string(i));
  return d;
}

K1Hom k1_hom_value(const Json& j, const std::string& path) {
  K1Hom h{k1_value(field(j, "source", path), path + ".source"), k1_value(field(j, "target", path), path + ".target"),
          integer_matrix_value(field(j, "matrix", path), path + ".matrix")};
  if (h.matrix.rows() != h.target.generators() || h.matrix.cols() != h.source.generators())
    throw DocumentError(path + ".matrix", "shape does not match the K1 presentations");
  return h;
}

std::vector<MatrixQ> components_value(const Json& j, int rank, const std::string& path) {
  const Json& a = array_value(j, path);
  const std::size_t count = std::size_t{1} << rank;
  std::vector<MatrixQ> out(count);
  std::vector<bool> seen(count, false);
  for (std::size_t k = 0; k < a.size(); ++k) {
    const std::string p = path + "[" + std::to_string(k) + "]";
    const IdealSupport s = support_value(field(a[k], "support", p), rank, p + ".support");
    if (seen[s]) throw DocumentError(p, "duplicate component");
    seen[s] = true;
    out[s] = rational_matrix_value(field(a[k], "matrix", p), p + ".matrix");
  }
  for (std::size_t s = 0; s < count; ++s)
    if (!seen[s]) throw DocumentError(path, "missing component for " + format_support(static_cast<IdealSupport>(s)));
  return out;
}

PositiveHom theta0_value(const Json& j, const std::string& path) {
  PositiveHom h{integer_matrix_value(j, path)};
  if (h.source_rank() > kMaxFamilyRank || h.target_rank() > kMaxFamilyRank) throw DocumentError(path, "rank above " + std::to_string(kMaxFamilyRank));
  return h;
}

Document payload_value(Kind kind, const Json& p) {
  const std::string path = "payload";
  switch (kind) {
    case Kind::SObject:
    case Kind::EObject: {
      const ScaledOrderedGroup g = group_value(field(p, "group", path), path + ".group");
      const FinAbGroup k1 = k1_value(field(p, "k1", path), path + ".k1");
      DeltaFamily d = family_value(field(p, "family", path), g.rank, path + ".family");
      if (kind == Kind::SObject) return {SObject{g, k1, std::move(d)}};
      const Integer t = count_value(field(p, "phantom_dim", path), path + ".phantom_dim");
      return {EObject{g, k1, {std::move(d), t}}};
    }
    case Kind::SMorphism: {
      const PositiveHom t0 = theta0_value(field(p, "theta0", path), path + ".theta0");
      return {SMorphism{t0, k1_hom_value(field(p, "theta1", path), path + ".theta1"),
                        components_value(field(p, "xi", path), static_cast<int>(t0.source_rank()), path + ".xi")}};
    }
    case Kind::EMorphism: {
      const PositiveHom t0 = theta0_value(field(p, "theta0", path), path + ".theta0");
      return {EMorphism{t0, k1_hom_value(field(p, "theta1", path), path + ".theta1"),
                        components_value(field(p, "zeta", path), static_cast<int>(t0.target_rank()), path + ".zeta"),
                        rational_matrix_value(field(p, "phantom", path), path + ".phantom")}};
    }
  }
  throw ParseError("unreachable document kind");
}

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace

Document parse_document(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    const auto [line, column] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ParseError("malformed JSON at line " + std::to_string(line) + ", column " + std::to_string(column), line, column);
  }
  if (!j.is_object()) throw ParseError("document must be a JSON object");
  const auto kind_it = j.find("kind");
  if (kind_it == j.end() || !kind_it->is_string()) throw ParseError("document has no kind");
  const Kind kind = parse_kind(kind_it->get<std::string>());
  const Json& version = field(j, "version", "document");
  if (!version.is_string() || version.get<std::string>() != kFormatVersion)
    throw DocumentError("version", "unsupported format version, expected \"" + std::string(kFormatVersion) + "\"");
  return payload_value(kind, field(j, "payload", "document"));
}

std::string emit_document(const Document& d) {
  Json j{{"kind", std::string(kind_name(d.kind()))}, {"version", std::string(kFormatVersion)}};
  j["payload"] = std::visit([](const auto& p) { return payload_json(p); }, d.payload);
  return j.dump(2) + "\n";
}

Document read_document(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str());
}

void write_document(const std::string& path, const Document& d) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << emit_document(d);
}

}  // namespace eeinv
