#include "json_io.hpp"

#include <fstream>

namespace ptc::io {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

const json& array_field(const json& j, const char* key) {
  const json& a = field(j, key);
  if (!a.is_array()) bad(std::string("field '") + key + "' is not an array");
  return a;
}

int parse_int(const json& j) {
  if (!j.is_number_integer()) bad("expected an integer, got " + j.dump());
  return j.get<int>();
}

}  // namespace

json emit(const Rational& q) { return to_string(q); }
json emit(double x) { return x; }

template <>
Rational parse_scalar<Rational>(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_number_float()) return Rational(j.get<double>());
  bad("expected a number, got " + j.dump());
}

template <>
double parse_scalar<double>(const json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) return parse_rational(j.get<std::string>()).convert_to<double>();
  bad("expected a number, got " + j.dump());
}

bool has_float(const json& j) {
  if (j.is_number_float()) return true;
  if (j.is_structured())
    for (const auto& x : j)
      if (has_float(x)) return true;
  return false;
}

template <class T>
Vec2<T> parse_vec(const json& j) {
  if (!j.is_array() || j.size() != 2) bad("expected [x, y], got " + j.dump());
  return {parse_scalar<T>(j[0]), parse_scalar<T>(j[1])};
}

template <class T>
json emit_points(const std::vector<Vec2<T>>& p) {
  json a = json::array();
  for (const auto& v : p) a.push_back(emit(v));
  return {{"points", a}};
}

template <class T>
std::vector<Vec2<T>> parse_points(const json& j) {
  const json& a = j.is_array() ? j : array_field(j, "points");
  std::vector<Vec2<T>> out;
  for (const auto& v : a) out.push_back(parse_vec<T>(v));
  return out;
}

template <class T>
json emit(const DeltaSet<T>& d) {
  json a = json::array();
  for (const auto& v : d.vectors) a.push_back(emit(v));
  return {{"vectors", a}};
}

template <class T>
DeltaSet<T> parse_delta(const json& j) {
  std::vector<Vec2<T>> v;
  for (const auto& x : array_field(j, "vectors")) v.push_back(parse_vec<T>(x));
  return validate_delta(std::move(v));
}

template <class T>
json emit(const AbstractCurve<T>& g) {
  json vertices = json::array(), edges = json::array(), legs = json::array();
  for (int v = 0; v < g.num_vertices; ++v) vertices.push_back(v);
  for (const auto& e : g.edges) edges.push_back({{"ends", {e.a, e.b}}, {"length", emit(e.length)}});
  for (const auto& l : g.legs) legs.push_back({{"vertex", l.vertex}});
  return {{"vertices", vertices}, {"edges", edges}, {"legs", legs}};
}

template <class T>
AbstractCurve<T> parse_graph(const json& j) {
  AbstractCurve<T> g;
  const json& v = field(j, "vertices");
  g.num_vertices = v.is_array() ? static_cast<int>(v.size()) : parse_int(v);
  for (const auto& e : array_field(j, "edges")) {
    const json& ends = field(e, "ends");
    if (!ends.is_array() || ends.size() != 2) bad("edge ends must be a pair");
    typename AbstractCurve<T>::Edge edge{parse_int(ends[0]), parse_int(ends[1]), T(1)};
    if (e.contains("length")) edge.length = parse_scalar<T>(e["length"]);
    g.edges.push_back(edge);
  }
  for (const auto& l : array_field(j, "legs")) g.legs.push_back({parse_int(field(l, "vertex"))});
  g.check();
  return g;
}

template <class T>
json emit(const PlaneCurve<T>& c) {
  json pos = json::array(), es = json::array(), ls = json::array();
  for (const auto& p : c.positions) pos.push_back(emit(p));
  for (const auto& s : c.edge_slopes) es.push_back(emit(s));
  for (const auto& s : c.leg_slopes) ls.push_back(emit(s));
  return {{"graph", emit(c.base)}, {"positions", pos}, {"slopes", {{"edges", es}, {"legs", ls}}}};
}

template <class T>
PlaneCurve<T> parse_curve(const json& j) {
  PlaneCurve<T> c;
  c.base = parse_graph<T>(field(j, "graph"));
  c.positions = parse_points<T>(array_field(j, "positions"));
  const json& s = field(j, "slopes");
  c.edge_slopes = parse_points<T>(array_field(s, "edges"));
  c.leg_slopes = parse_points<T>(array_field(s, "legs"));
  if (static_cast<int>(c.positions.size()) != c.base.num_vertices || c.edge_slopes.size() != c.base.edges.size() ||
      c.leg_slopes.size() != c.base.legs.size())
    bad("curve arrays do not match the graph");
  return c;
}

json emit(const MarkedType& t) {
  json adj = json::array();
  for (const auto& a : t.adj) adj.push_back({a[0], a[1], a[2]});
  return {{"key", canonical_form(t)}, {"n", t.n}, {"m", t.m}, {"adj", adj}, {"attach", t.attach}};
}

MarkedType parse_type(const json& j) {
  MarkedType t;
  t.n = parse_int(field(j, "n"));
  t.m = parse_int(field(j, "m"));
  for (const auto& a : array_field(j, "adj")) {
    if (!a.is_array() || a.size() != 3) bad("type vertices need three neighbours");
    t.adj.push_back({parse_int(a[0]), parse_int(a[1]), parse_int(a[2])});
  }
  for (const auto& a : array_field(j, "attach")) t.attach.push_back(parse_int(a));
  t.check();
  return t;
}

template <class T>
json emit(const CurveSolution<T>& s) {
  json l = json::array();
  for (const auto& x : s.lengths) l.push_back(emit(x));
  return {{"type", emit(s.type)}, {"lengths", l}, {"root_pos", emit(s.root_pos)}};
}

template <class T>
CurveSolution<T> parse_solution(const json& j) {
  CurveSolution<T> s;
  s.type = parse_type(field(j, "type"));
  for (const auto& x : array_field(j, "lengths")) s.lengths.push_back(parse_scalar<T>(x));
  s.root_pos = parse_vec<T>(field(j, "root_pos"));
  return s;
}

template <class T>
json emit(const Polygon<T>& p) {
  return {{"vertices", emit_points(p.vertices)["points"]}, {"area", emit(p.area())}};
}

template <class T>
Polygon<T> parse_polygon(const json& j) {
  return {parse_points<T>(array_field(j, "vertices"))};
}

template <class T>
json emit(const DualSubdivision<T>& s) {
  json cells = json::array();
  for (const auto& c : s.cells) cells.push_back(emit(c));
  return {{"outer", emit(s.outer)}, {"cells", cells}, {"vertices", emit_points(s.graph.points)["points"]}};
}

template <class T>
json emit(const IntersectionReport<T>& r) {
  json pts = json::array();
  for (const auto& p : r.points)
    pts.push_back({{"point", emit(p.point)}, {"pieces", {p.piece1, p.piece2}}, {"multiplicity", emit(p.multiplicity)}});
  return {{"points", pts},
          {"total", emit(r.total)},
          {"mixed_area", emit(r.mixed_area)},
          {"degree_squared", {emit(r.degree_squared1), emit(r.degree_squared2)}},
          {"total_matches_mixed_area", r.total_matches_mixed_area},
          {"bezout_holds", r.bezout_holds},
          {"equality", r.equality},
          {"homothetic", r.homothetic}};
}

template <class T>
IntersectionReport<T> parse_intersection(const json& j) {
  IntersectionReport<T> r;
  for (const auto& p : array_field(j, "points")) {
    const json& pieces = field(p, "pieces");
    r.points.push_back({parse_vec<T>(field(p, "point")), parse_int(pieces.at(0)), parse_int(pieces.at(1)),
                        parse_scalar<T>(field(p, "multiplicity"))});
  }
  r.total = parse_scalar<T>(field(j, "total"));
  r.mixed_area = parse_scalar<T>(field(j, "mixed_area"));
  const json& d = array_field(j, "degree_squared");
  r.degree_squared1 = parse_scalar<T>(d.at(0));
  r.degree_squared2 = parse_scalar<T>(d.at(1));
  r.total_matches_mixed_area = field(j, "total_matches_mixed_area").get<bool>();
  r.bezout_holds = field(j, "bezout_holds").get<bool>();
  r.equality = field(j, "equality").get<bool>();
  r.homothetic = field(j, "homothetic").get<bool>();
  return r;
}

json emit(const Weight& w) {
  return std::visit(
      [](const auto& v) -> json {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, LaurentPoly>)
          return {{"laurent", v.str()}};
        else
          return emit(v);
      },
      w.value());
}

Weight parse_weight(const json& j) {
  if (j.is_object()) return Weight(Weight::Value(LaurentPoly::parse(field(j, "laurent").get<std::string>())));
  if (j.is_number_float()) return Weight(Weight::Value(j.get<double>()));
  return Weight(Weight::Value(parse_scalar<Rational>(j)));
}

json emit(const CountResult& r) {
  json ledger = json::array();
  for (const auto& e : r.ledger) {
    json entry{{"key", e.key}, {"realized", e.realized}, {"coefficient", emit(e.coefficient)}};
    if (!e.lengths.empty()) {
      json l = json::array();
      for (const auto& x : e.lengths) l.push_back(emit(x));
      entry["lengths"] = l;
    }
    ledger.push_back(entry);
  }
  return {{"value", emit(r.value)},   {"raw", emit(r.raw)},         {"normalized", r.normalized},
          {"aut_size", r.aut_size},   {"attempts", r.attempts},     {"mode", r.mode},
          {"points", emit_points(r.points)["points"]}, {"ledger", ledger}};
}

CountResult parse_count(const json& j) {
  CountResult r;
  r.value = parse_weight(field(j, "value"));
  r.raw = parse_weight(field(j, "raw"));
  r.normalized = field(j, "normalized").get<bool>();
  r.aut_size = field(j, "aut_size").get<std::uint64_t>();
  r.attempts = parse_int(field(j, "attempts"));
  r.mode = field(j, "mode").get<std::string>();
  r.points = parse_points<Rational>(array_field(j, "points"));
  for (const auto& e : array_field(j, "ledger")) {
    CountEntry c;
    c.key = field(e, "key").get<std::string>();
    c.realized = parse_int(field(e, "realized"));
    c.coefficient = parse_weight(field(e, "coefficient"));
    if (e.contains("lengths"))
      for (const auto& x : e["lengths"]) c.lengths.push_back(parse_scalar<Rational>(x));
    r.ledger.push_back(std::move(c));
  }
  return r;
}

json emit(const RecursionResult& r) {
  return {{"value", emit(r.value)}, {"xi0", emit(r.xi0)}, {"subproblems", r.subproblems}, {"terms", r.terms}};
}

RecursionResult parse_recursion(const json& j) {
  RecursionResult r;
  r.value = parse_weight(field(j, "value"));
  r.xi0 = parse_vec<Rational>(field(j, "xi0"));
  r.subproblems = field(j, "subproblems").get<std::size_t>();
  r.terms = field(j, "terms").get<std::size_t>();
  return r;
}

json emit(const RelationRank& r) {
  return {{"generators", r.generators}, {"relations", r.relations}, {"rank", r.rank}, {"dimension", r.dimension}};
}

RelationRank parse_rank(const json& j) {
  return {parse_int(field(j, "generators")), parse_int(field(j, "relations")), parse_int(field(j, "rank")),
          parse_int(field(j, "dimension"))};
}

json emit(const Cycle& z) {
  json c = json::object();
  for (const auto& [key, w] : z.to_keys()) c[key] = emit(w);
  return {{"n", z.n}, {"coefficients", c}};
}

Cycle parse_cycle(const json& j, const WeightMode& mode) {
  std::map<std::string, Weight> entries;
  const json& c = field(j, "coefficients");
  if (!c.is_object()) bad("cycle coefficients must be an object");
  for (const auto& [key, w] : c.items()) entries.emplace(key, parse_weight(w));
  return Cycle::from_keys(parse_int(field(j, "n")), entries, mode);
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    bad(path + ": " + e.what());
  }
}

#define PTC_IO_INSTANTIATE(T)                                                   \
  template Vec2<T> parse_vec<T>(const json&);                                   \
  template json emit_points<T>(const std::vector<Vec2<T>>&);                    \
  template std::vector<Vec2<T>> parse_points<T>(const json&);                   \
  template json emit<T>(const DeltaSet<T>&);                                    \
  template DeltaSet<T> parse_delta<T>(const json&);                             \
  template json emit<T>(const AbstractCurve<T>&);                               \
  template AbstractCurve<T> parse_graph<T>(const json&);                        \
  template json emit<T>(const PlaneCurve<T>&);                                  \
  template PlaneCurve<T> parse_curve<T>(const json&);                           \
  template json emit<T>(const CurveSolution<T>&);                               \
  template CurveSolution<T> parse_solution<T>(const json&);                     \
  template json emit<T>(const Polygon<T>&);                                     \
  template Polygon<T> parse_polygon<T>(const json&);                            \
  template json emit<T>(const DualSubdivision<T>&);                             \
  template json emit<T>(const IntersectionReport<T>&);                          \
  template IntersectionReport<T> parse_intersection<T>(const json&);

PTC_IO_INSTANTIATE(Rational)
PTC_IO_INSTANTIATE(double)

}  // namespace ptc::io
