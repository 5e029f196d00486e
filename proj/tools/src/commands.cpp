#include "commands.hpp"

#include "json_io.hpp"
#include "svg.hpp"

#include <ptc/neumann.hpp>
#include <ptc/version.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <optional>

namespace ptc::cli {

namespace {

using io::json;

struct Common {
  std::string scalar = "auto";
  std::string format = "table";
  std::string output;
  double tolerance = 0;
};

struct ModeFlags {
  std::optional<double> hbar;
  bool laurent = false;

  void add(CLI::App* app) {
    auto* h = app->add_option("--hbar", hbar, "Numeric mode at this hbar");
    auto* l = app->add_flag("--laurent", laurent, "Laurent polynomials in y");
    h->excludes(l);
  }
  WeightMode mode() const {
    if (laurent) return WeightMode::laurent();
    if (hbar) return WeightMode::numeric(*hbar);
    return WeightMode::exact();
  }
};

Vec2<Rational> parse_pair(const std::string& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos) throw Error(ErrorCode::ParseError, "expected x,y but got '" + text + "'");
  return {parse_rational(text.substr(0, comma)), parse_rational(text.substr(comma + 1))};
}

template <class T>
Vec2<T> parse_pair_as(const std::string& text) {
  return convert_vec<T>(parse_pair(text));
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write '" + path + "'");
  f << text;
}

class Runner {
 public:
  Runner(std::ostream& out, const Common& common) : out_(out), common_(common) {}

  bool use_float(std::initializer_list<const json*> inputs) const {
    if (common_.scalar == "float") return true;
    if (common_.scalar == "exact") return false;
    for (const json* j : inputs)
      if (io::has_float(*j)) return true;
    return false;
  }

  // Prints `table` unless JSON was requested; the JSON also goes to --output.
  void finish(const json& doc, const std::string& table) const {
    if (!common_.output.empty()) write_text(common_.output, doc.dump(2) + "\n");
    if (common_.format == "json")
      out_ << doc.dump(2) << "\n";
    else
      out_ << table;
  }

  std::ostream& out_;
  const Common& common_;
};

template <class T>
PlaneCurve<T> load_curve(const json& j) {
  if (j.contains("positions")) return io::parse_curve<T>(j);
  auto g = io::parse_graph<T>(j.at("graph"));
  auto d = io::parse_delta<T>(j.at("delta"));
  const int root = j.value("root", 0);
  Vec2<T> at = j.contains("at") ? io::parse_vec<T>(j["at"]) : Vec2<T>{};
  return realize(g, d, root, at);
}

template <class T>
std::string curve_table(const PlaneCurve<T>& c) {
  std::ostringstream s;
  s << "vertices: " << c.positions.size() << ", edges: " << c.base.edges.size() << ", legs: " << c.base.legs.size() << "\n";
  for (size_t v = 0; v < c.positions.size(); ++v)
    s << "  h(" << v << ") = (" << to_string(c.positions[v].x) << ", " << to_string(c.positions[v].y) << ")\n";
  s << "balance residual: " << c.balance_residual() << "\n";
  return s.str();
}

PlaneCurve<double> to_double_curve(const PlaneCurve<double>& c) { return c; }
PlaneCurve<double> to_double_curve(const PlaneCurve<Rational>& c) {
  PlaneCurve<double> o;
  o.base.num_vertices = c.base.num_vertices;
  for (const auto& e : c.base.edges) o.base.edges.push_back({e.a, e.b, e.length.convert_to<double>()});
  for (const auto& l : c.base.legs) o.base.legs.push_back({l.vertex});
  for (const auto& p : c.positions) o.positions.push_back(convert_vec<double>(p));
  for (const auto& p : c.edge_slopes) o.edge_slopes.push_back(convert_vec<double>(p));
  for (const auto& p : c.leg_slopes) o.leg_slopes.push_back(convert_vec<double>(p));
  return o;
}

struct RealizeArgs {
  std::string graph, delta, at = "0,0", svg;
  int root = 0;
};

template <class T>
void realize_cmd(const Runner& r, const RealizeArgs& a, const json& g, const json& d) {
  auto c = realize(io::parse_graph<T>(g), io::parse_delta<T>(d), a.root, parse_pair_as<T>(a.at));
  if (!a.svg.empty()) write_text(a.svg, io::curves_svg({to_double_curve(c)}));
  r.finish(io::emit(c), curve_table(c));
}

template <class T>
void dualize_cmd(const Runner& r, const RealizeArgs& a, const json& g, const json& d) {
  auto c = realize(io::parse_graph<T>(g), io::parse_delta<T>(d), a.root, parse_pair_as<T>(a.at));
  auto dual = dual_subdivision(c, a.root);
  const T d2 = degree_squared(c);
  json doc{{"curve", io::emit(c)}, {"dual", io::emit(dual)}, {"degree_squared", io::emit(d2)}, {"degree", degree(c)}};
  std::ostringstream s;
  s << "dual polygon: " << dual.outer.vertices.size() << " vertices, area " << to_string(dual.outer.area()) << "\n";
  for (const auto& v : dual.outer.vertices) s << "  (" << to_string(v.x) << ", " << to_string(v.y) << ")\n";
  s << "cells: " << dual.cells.size() << "\n";
  s << "degree^2: " << to_string(d2) << "\ndegree: " << degree(c) << "\n";
  if (!a.svg.empty()) {
    auto cd = to_double_curve(c);
    write_text(a.svg, io::duality_svg(cd, dual_subdivision(cd, a.root)));
  }
  r.finish(doc, s.str());
}

template <class T>
void intersect_cmd(const Runner& r, const json& first, const json& second, const std::string& shift) {
  auto c1 = load_curve<T>(first);
  auto c2 = load_curve<T>(second);
  if (!shift.empty()) c2 = translate(c2, parse_pair_as<T>(shift));
  auto rep = intersect(c1, c2);
  std::ostringstream s;
  s << "intersection points: " << rep.points.size() << "\n";
  for (const auto& p : rep.points)
    s << "  (" << to_string(p.point.x) << ", " << to_string(p.point.y) << ")  multiplicity " << to_string(p.multiplicity) << "\n";
  s << "total: " << to_string(rep.total) << "\n2 * mixed area: " << to_string(T(2) * rep.mixed_area) << "\n";
  s << "deg^2: " << to_string(rep.degree_squared1) << ", " << to_string(rep.degree_squared2) << "\n";
  s << "bezout bound holds: " << (rep.bezout_holds ? "yes" : "no") << ", equality: " << (rep.equality ? "yes" : "no")
    << ", homothetic: " << (rep.homothetic ? "yes" : "no") << "\n";
  r.finish(io::emit(rep), s.str());
}

template <class T>
void through_cmd(const Runner& r, const json& d, const json& p, bool by_types, const std::string& svg) {
  auto delta = io::parse_delta<T>(d);
  auto points = io::parse_points<T>(p);
  auto sols = by_types ? curves_through_by_types(delta, points) : curves_through(delta, points);
  json list = json::array();
  std::ostringstream s;
  s << "curves: " << sols.size() << "\n";
  std::vector<PlaneCurve<double>> drawn;
  for (const auto& sol : sols) {
    list.push_back(io::emit(sol));
    s << "  " << canonical_form(sol.type) << "  mult " << to_string(multiplicity(sol.type, delta)) << "\n";
    if (!svg.empty()) drawn.push_back(to_double_curve(realize_solution(sol, delta)));
  }
  if (!svg.empty()) {
    std::vector<Vec2<double>> pd;
    for (const auto& q : points) pd.push_back({to_double(q.x), to_double(q.y)});
    write_text(svg, io::curves_svg(drawn, pd));
  }
  r.finish({{"count", sols.size()}, {"solutions", list}}, s.str());
}

MarkedType type_from_key(const std::string& key) {
  auto colon = key.rfind(':');
  auto n_end = key.find('m');
  if (key.size() < 2 || key[0] != 'n' || n_end == std::string::npos)
    throw Error(ErrorCode::UnknownType, "malformed type key '" + key + "'");
  const int n = std::stoi(key.substr(1, n_end - 1));
  const auto& cat = type_catalog(n);
  const int idx = cat.index_of(key);
  if (idx < 0) throw Error(ErrorCode::UnknownType, "'" + key + "' is not a rigid type");
  MarkedType t = cat.type(idx);
  const bool negative = colon != std::string::npos && key.substr(colon) == ":-";
  if (negative) {
    auto s = analyze(t);
    if (s.unmarked.empty()) throw Error(ErrorCode::UnknownType, "type has no orientation to reverse");
    t = flip_orientation(t, s.unmarked.front());
  }
  return t;
}

std::string count_table(const CountResult& c, int rows) {
  std::ostringstream s;
  s << c.value.str() << "\n";
  s << "curves: " << c.ledger.size() << ", raw: " << c.raw.str() << ", |Aut|: " << c.aut_size
    << (c.normalized ? " (normalized)" : "") << ", mode: " << c.mode << ", attempts: " << c.attempts << "\n";
  int shown = 0;
  for (const auto& e : c.ledger) {
    if (shown++ == rows) {
      s << "  ... " << c.ledger.size() - static_cast<size_t>(rows) << " more\n";
      break;
    }
    s << "  " << std::left << std::setw(48) << e.key << " " << e.coefficient.str() << "\n";
  }
  return s.str();
}

void report(std::ostream& err, const std::string& sub, ErrorCode code, std::string message) {
  const std::string prefix = std::string(error_name(code)) + ": ";
  if (message.rfind(prefix, 0) == 0) message.erase(0, prefix.size());
  err << json{{"error", error_name(code)}, {"subcommand", sub}, {"message", message}}.dump() << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pseudotropical curves: realization, duality, moduli and refined counts", "ptc"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.set_version_flag("--version", std::string("ptc ") + kVersion + " (json schema " + std::to_string(io::kSchemaVersion) + ")");
  app.add_option("--scalar", common.scalar, "exact, float, or auto (float if any input has JSON floats)")
      ->check(CLI::IsMember({"auto", "exact", "float"}));
  app.add_option("--format", common.format, "table or json")->check(CLI::IsMember({"table", "json"}));
  app.add_option("--output", common.output, "Also write the JSON result to this file");
  app.add_option("--tolerance", common.tolerance, "Float tolerance (0 keeps the default)");

  RealizeArgs ra;
  auto add_realize = [&](CLI::App* s) {
    s->add_option("--graph", ra.graph, "AbstractCurve JSON")->required();
    s->add_option("--delta", ra.delta, "DeltaSet JSON")->required();
    s->add_option("--root", ra.root, "Root vertex");
    s->add_option("--at", ra.at, "Root position x,y");
    s->add_option("--svg", ra.svg, "Write an SVG illustration");
  };
  auto* realize_sub = app.add_subcommand("realize", "Realize a metric graph with given leg slopes");
  add_realize(realize_sub);
  auto* dualize_sub = app.add_subcommand("dualize", "Dual polygon, subdivision and degree of a realized curve");
  add_realize(dualize_sub);

  std::string first, second, shift;
  auto* intersect_sub = app.add_subcommand("intersect", "Stable intersection of two curves");
  intersect_sub->add_option("--first", first, "PlaneCurve JSON, or {graph, delta, root, at}")->required();
  intersect_sub->add_option("--second", second, "Same format as --first")->required();
  intersect_sub->add_option("--shift", shift, "Translate the second curve by x,y");

  int types_n = 4, limit = 0;
  auto* types_sub = app.add_subcommand("types", "List rigid marked types in canonical form");
  types_sub->add_option("--n", types_n, "Number of unmarked legs")->required()->check(CLI::Range(2, 7));
  types_sub->add_option("--limit", limit, "Print at most this many keys (0: all)");

  std::string delta_path, points_path, svg_path;
  bool by_types = false;
  auto* through_sub = app.add_subcommand("through", "Rigid curves through n-1 points");
  through_sub->add_option("--delta", delta_path, "DeltaSet JSON")->required();
  through_sub->add_option("--points", points_path, "Points JSON")->required();
  through_sub->add_option("--svg", svg_path, "Write all found curves as SVG");
  through_sub->add_flag("--by-types", by_types, "Solve type by type instead of the flow search");

  int jacobi_n = 4;
  bool marked = false;
  auto* jacobi_sub = app.add_subcommand("jacobi", "Generators, relations and dimension of the Jacobi space");
  jacobi_sub->add_option("--n", jacobi_n, "Number of legs")->required()->check(CLI::Range(3, 7));
  jacobi_sub->add_flag("--marked", marked, "Use marked types and marked-point relations");

  std::string type_key;
  ModeFlags weight_mode;
  auto* weight_sub = app.add_subcommand("weight", "Lie weight and multiplicity of one type");
  weight_sub->add_option("--type", type_key, "Canonical key, e.g. from `ptc types`")->required();
  weight_sub->add_option("--delta", delta_path, "DeltaSet JSON")->required();
  weight_mode.add(weight_sub);

  ModeFlags count_mode;
  std::string cycle = "lie", search = "auto";
  std::uint64_t seed = 1;
  bool normalize = false;
  int rows = 20;
  auto* count_sub = app.add_subcommand("count", "Weighted count through a seeded generic configuration");
  count_sub->add_option("--delta", delta_path, "DeltaSet JSON")->required();
  count_mode.add(count_sub);
  count_sub->add_option("--cycle", cycle, "lie or caterpillar:s,t (legs numbered from 1)");
  count_sub->add_option("--seed", seed, "Configuration seed");
  count_sub->add_option("--points", points_path, "Use these points instead of a seeded configuration");
  count_sub->add_flag("--normalize", normalize, "Divide by |Aut|");
  count_sub->add_option("--search", search, "auto, exact or float")->check(CLI::IsMember({"auto", "exact", "float"}));
  count_sub->add_option("--rows", rows, "Ledger rows in the table");

  ModeFlags recurse_mode;
  std::string xi0;
  bool raw = false;
  auto* recurse_sub = app.add_subcommand("recurse", "Count by the partition recursion (normalized by |Aut|)");
  recurse_sub->add_option("--delta", delta_path, "DeltaSet JSON")->required();
  recurse_mode.add(recurse_sub);
  recurse_sub->add_option("--xi0", xi0, "Direction x,y (default: a generic rotation of the first vector)");
  recurse_sub->add_flag("--raw", raw, "Do not divide by |Aut|");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  std::string sub = app.get_subcommands().front()->get_name();
  try {
    if (common.tolerance > 0) set_tolerance(common.tolerance);
    Runner r(out, common);
    if (sub == "realize" || sub == "dualize") {
      const json g = io::read_file(ra.graph), d = io::read_file(ra.delta);
      const bool fl = r.use_float({&g, &d});
      if (sub == "realize")
        fl ? realize_cmd<double>(r, ra, g, d) : realize_cmd<Rational>(r, ra, g, d);
      else
        fl ? dualize_cmd<double>(r, ra, g, d) : dualize_cmd<Rational>(r, ra, g, d);
    } else if (sub == "intersect") {
      const json a = io::read_file(first), b = io::read_file(second);
      r.use_float({&a, &b}) ? intersect_cmd<double>(r, a, b, shift) : intersect_cmd<Rational>(r, a, b, shift);
    } else if (sub == "types") {
      const auto& cat = type_catalog(types_n);
      json keys = json::array();
      std::ostringstream s;
      s << "rigid types: " << cat.size() << "\n";
      for (int i = 0; i < cat.size() && (limit == 0 || i < limit); ++i) {
        keys.push_back(canonical_form(cat.type(i)));
        s << keys.back().get<std::string>() << "\n";
      }
      r.finish({{"n", types_n}, {"count", cat.size()}, {"types", keys}}, s.str());
    } else if (sub == "through") {
      const json d = io::read_file(delta_path), p = io::read_file(points_path);
      r.use_float({&d, &p}) ? through_cmd<double>(r, d, p, by_types, svg_path)
                            : through_cmd<Rational>(r, d, p, by_types, svg_path);
    } else if (sub == "jacobi") {
      auto rank = marked ? marked_relation_rank(jacobi_n) : relation_rank(jacobi_n);
      std::ostringstream s;
      s << "generators: " << rank.generators << "\nrelations: " << rank.relations << "\nrank: " << rank.rank
        << "\ndimension: " << rank.dimension << "\n";
      r.finish(io::emit(rank), s.str());
    } else if (sub == "weight") {
      auto delta = io::parse_delta<Rational>(io::read_file(delta_path));
      auto t = type_from_key(type_key);
      if (t.n != delta.size()) throw Error(ErrorCode::InvalidArgument, "type and delta set have different leg counts");
      auto w = lie_weight(t, delta, weight_mode.mode());
      auto mult = multiplicity(t, delta);
      std::ostringstream s;
      s << w.str() << "\nmultiplicity: " << to_string(mult) << "\n";
      r.finish({{"type", canonical_form(t)}, {"weight", io::emit(w)}, {"multiplicity", io::emit(mult)}}, s.str());
    } else if (sub == "count") {
      auto delta = io::parse_delta<Rational>(io::read_file(delta_path));
      CountOptions o;
      o.mode = count_mode.mode();
      o.seed = seed;
      o.normalize = normalize;
      o.search = search == "exact" ? CountOptions::Search::Exact
                 : search == "float" ? CountOptions::Search::Float
                                     : CountOptions::Search::Auto;
      CountResult c;
      if (cycle == "lie") {
        c = points_path.empty() ? refined_invariant(delta, o)
                                : refined_invariant_at(delta, io::parse_points<Rational>(io::read_file(points_path)), o);
      } else if (cycle.rfind("caterpillar:", 0) == 0) {
        auto st = parse_pair(cycle.substr(12));
        const int s = static_cast<int>(st.x.convert_to<double>()) - 1, t = static_cast<int>(st.y.convert_to<double>()) - 1;
        auto z = caterpillar_cycle(delta.size(), s, t, delta);
        auto points = points_path.empty() ? random_configuration(delta, seed)
                                          : io::parse_points<Rational>(io::read_file(points_path));
        c = weighted_count(delta, z, points);
        c.mode = "caterpillar " + std::to_string(s + 1) + "," + std::to_string(t + 1);
        if (normalize) {
          c.normalized = true;
          c.value = c.raw.divided(Rational(static_cast<long long>(c.aut_size)));
        }
      } else {
        throw Error(ErrorCode::InvalidArgument, "unknown cycle '" + cycle + "'");
      }
      r.finish(io::emit(c), count_table(c, rows));
    } else if (sub == "recurse") {
      auto delta = io::parse_delta<Rational>(io::read_file(delta_path));
      auto res = xi0.empty() ? recursive_count(delta, recurse_mode.mode())
                             : recursive_count(delta, parse_pair(xi0), recurse_mode.mode());
      const auto aut = delta_info(delta).aut_size;
      if (!raw) res.value = res.value.divided(Rational(static_cast<long long>(aut)));
      std::ostringstream s;
      s << res.value.str() << "\n";
      s << "xi0: (" << to_string(res.xi0.x) << ", " << to_string(res.xi0.y) << "), |Aut|: " << aut
        << (raw ? "" : " (normalized)") << ", subproblems: " << res.subproblems << ", partitions: " << res.terms << "\n";
      json doc = io::emit(res);
      doc["normalized"] = !raw;
      doc["aut_size"] = aut;
      r.finish(doc, s.str());
    }
  } catch (const Error& e) {
    report(err, sub, e.code(), e.what());
    return 2;
  } catch (const json::exception& e) {
    report(err, sub, ErrorCode::ParseError, e.what());
    return 2;
  } catch (const std::exception& e) {
    report(err, sub, ErrorCode::InvalidArgument, e.what());
    return 2;
  }
  return 0;
}

}  // namespace ptc::cli
