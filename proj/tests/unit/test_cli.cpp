#include <doctest.h>

#include "commands.hpp"
#include "json_io.hpp"

#include <ptc/neumann.hpp>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "support.hpp"

using namespace ptc;
using namespace ptc::testing;
using io::json;
using Q = Rational;

namespace {

const std::string kData = PTC_TEST_DATA_DIR;

struct Run {
  int status;
  std::string out, err;
  std::string first_line() const { return out.substr(0, out.find('\n')); }
};

Run ptc_run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int status = cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

std::vector<std::string> with(std::vector<std::string> a, const json& extra) {
  for (const auto& x : extra) a.push_back(x.get<std::string>());
  return a;
}

template <class X, class P>
void round_trip(const X& x, P parse) {
  const json once = io::emit(x);
  const json twice = io::emit(parse(json::parse(once.dump())));
  CHECK(once == twice);
}

std::filesystem::path temp_file(const std::string& name) { return std::filesystem::temp_directory_path() / name; }

}  // namespace

TEST_CASE("scalars keep their exactness") {
  CHECK(io::emit(Q(3, 2)) == json("3/2"));
  CHECK(io::parse_scalar<Q>(json("-7/21")) == Q(-1, 3));
  CHECK(io::parse_scalar<Q>(json("0.25")) == Q(1, 4));
  CHECK(io::parse_scalar<Q>(json(5)) == 5);
  CHECK(io::parse_scalar<Q>(json(0.1)) == Q(0.1));
  CHECK(io::parse_scalar<double>(json("1/4")) == 0.25);
  for (double x : {0.1, -1e-300, 3.141592653589793, 1e22}) CHECK(io::parse_scalar<double>(json::parse(io::emit(x).dump())) == x);
  CHECK(io::has_float(json::parse(R"({"a": [1, "2", {"b": 0.5}]})")));
  CHECK_FALSE(io::has_float(json::parse(R"({"a": [1, "2", {"b": "0.5"}]})")));
  CHECK_THROWS_AS(io::parse_scalar<Q>(json("1/0")), Error);
  CHECK_THROWS_AS(io::parse_scalar<Q>(json::array()), Error);
}

TEST_CASE("round trips") {
  std::mt19937_64 rng(21);
  auto d = random_real_delta(rng, 5);
  round_trip(d, [](const json& j) { return io::parse_delta<Q>(j); });
  round_trip(convert_delta<double>(d), [](const json& j) { return io::parse_delta<double>(j); });
  CHECK(io::parse_delta<Q>(io::emit(d)).vectors == d.vectors);

  auto c = random_curve(rng, d, {Q(1, 3), Q(2)});
  round_trip(c.base, [](const json& j) { return io::parse_graph<Q>(j); });
  round_trip(c, [](const json& j) { return io::parse_curve<Q>(j); });
  auto cd = convert_curve(c);
  round_trip(cd, [](const json& j) { return io::parse_curve<double>(j); });

  auto p = random_points(rng, 4);
  CHECK(io::parse_points<Q>(io::emit_points(p)) == p);

  const auto& cat = type_catalog(4);
  for (int i = 0; i < cat.size(); i += 17) {
    auto t = flip_orientation(cat.type(i), analyze(cat.type(i)).unmarked.front());
    auto back = io::parse_type(io::emit(t));
    CHECK(back.adj == t.adj);
    CHECK(back.attach == t.attach);
    CHECK(canonical_form(back) == canonical_form(t));
  }

  auto sols = curves_through(d, random_configuration(d, 3));
  REQUIRE_FALSE(sols.empty());
  for (const auto& s : sols) round_trip(s, [](const json& j) { return io::parse_solution<Q>(j); });

  auto cross = validate_delta(std::vector<Vec2<Q>>{{-1, 0}, {0, -1}, {1, 0}, {0, 1}});
  AbstractCurve<Q> h;
  h.num_vertices = 2;
  h.edges = {{0, 1, Q(2)}};
  h.legs = {{0}, {0}, {1}, {1}};
  auto hc = realize(h, cross, 0, Vec2<Q>{});
  auto dual = dual_subdivision(hc, 0);
  round_trip(dual.outer, [](const json& j) { return io::parse_polygon<Q>(j); });
  auto rep = intersect(hc, translate(hc, Vec2<Q>(Q(1, 3), Q(-1, 2))));
  round_trip(rep, [](const json& j) { return io::parse_intersection<Q>(j); });

  for (const auto& w : {Weight(Weight::Value(Q(-5, 3))), Weight(Weight::Value(0.125)),
                        Weight(Weight::Value(LaurentPoly::parse("y^-1 + 10 + y"))), Weight(Weight::Value(LaurentPoly::parse("2 y^(3/2)")))}) {
    auto back = io::parse_weight(json::parse(io::emit(w).dump()));
    CHECK(back.value().index() == w.value().index());
    CHECK(back.approx_equal(w));
  }

  CountOptions o;
  o.mode = WeightMode::laurent();
  o.normalize = true;
  round_trip(refined_invariant(tropical_delta(2), o), io::parse_count);
  round_trip(weighted_count(d, caterpillar_cycle(5, 0, 1, d), random_configuration(d, 2)), io::parse_count);
  round_trip(recursive_count(d, WeightMode::numeric(0.5)), io::parse_recursion);
  round_trip(relation_rank(5), io::parse_rank);

  auto z = lie_cycle(4, random_delta(rng, 4, 3), WeightMode::laurent());
  auto zb = io::parse_cycle(json::parse(io::emit(z).dump()), WeightMode::laurent());
  CHECK(io::emit(zb) == io::emit(z));
  CHECK(verify_cycle(zb).ok);
}

TEST_CASE("version and usage") {
  auto v = ptc_run({"--version"});
  CHECK(v.status == 0);
  CHECK(v.out.find("json schema " + std::to_string(io::kSchemaVersion)) != std::string::npos);
  CHECK(ptc_run({}).status == 1);
  CHECK(ptc_run({"count"}).status == 1);
  CHECK(ptc_run({"count", "--delta", "x", "--hbar", "1", "--laurent"}).status == 1);
}

TEST_CASE("structured errors") {
  auto missing = ptc_run({"recurse", "--delta", kData + "/nope.json"});
  CHECK(missing.status == 2);
  auto e = json::parse(missing.err);
  CHECK(e["error"] == "ParseError");
  CHECK(e["subcommand"] == "recurse");

  auto bad = temp_file("ptc_unbalanced.json");
  std::ofstream(bad) << R"({"vectors": [["1","0"],["0","1"]]})";
  auto unbalanced = ptc_run({"count", "--delta", bad.string()});
  CHECK(unbalanced.status == 2);
  CHECK(json::parse(unbalanced.err)["error"] == "Unbalanced");

  auto dir = ptc_run({"recurse", "--delta", kData + "/d1.json", "--xi0", "1,0"});
  CHECK(json::parse(dir.err)["error"] == "NonGenericDirection");
  auto pole = ptc_run({"count", "--delta", kData + "/d1.json", "--hbar", "2"});
  CHECK(json::parse(pole.err)["error"] == "PoleAtHbar");
  auto type = ptc_run({"weight", "--type", "n3m2:nonsense:+", "--delta", kData + "/d1.json"});
  CHECK(json::parse(type.err)["error"] == "UnknownType");
}

TEST_CASE("realize and dualize write SVG") {
  auto svg = temp_file("ptc_tripod.svg");
  std::filesystem::remove(svg);
  auto r = ptc_run({"realize", "--graph", kData + "/tripod.json", "--delta", kData + "/d1.json", "--svg", svg.string()});
  CHECK(r.status == 0);
  std::stringstream text;
  text << std::ifstream(svg).rdbuf();
  CHECK(text.str().rfind("<svg", 0) == 0);

  auto d = ptc_run({"--format", "json", "dualize", "--graph", kData + "/h.json", "--delta", kData + "/cross4.json",
                    "--svg", temp_file("ptc_h.svg").string()});
  REQUIRE(d.status == 0);
  auto doc = json::parse(d.out);
  CHECK(doc["degree_squared"] == "2");
  CHECK(doc["dual"]["cells"].size() == 2);
}

TEST_CASE("float inputs switch to float mode") {
  auto delta = temp_file("ptc_float_delta.json");
  std::ofstream(delta) << R"({"vectors": [[-1.0, 0], [0, -1], [1, 1]]})";
  auto r = ptc_run({"--format", "json", "realize", "--graph", kData + "/tripod.json", "--delta", delta.string(), "--at", "1/2,0"});
  REQUIRE(r.status == 0);
  CHECK(json::parse(r.out)["positions"][0][0].is_number_float());
  auto e = ptc_run({"--format", "json", "--scalar", "exact", "realize", "--graph", kData + "/tripod.json", "--delta",
                    delta.string(), "--at", "1/2,0"});
  CHECK(json::parse(e.out)["positions"][0][0] == "1/2");
}

TEST_CASE("through, types, jacobi, weight") {
  auto t = ptc_run({"--format", "json", "through", "--delta", kData + "/d1.json", "--points", kData + "/p1.json"});
  REQUIRE(t.status == 0);
  CHECK(json::parse(t.out)["count"] == 1);
  auto types = ptc_run({"--format", "json", "types", "--n", "4"});
  CHECK(json::parse(types.out)["count"] == 144);
  auto j = ptc_run({"jacobi", "--n", "5"});
  CHECK(j.out.find("dimension: 6") != std::string::npos);
  auto key = json::parse(ptc_run({"--format", "json", "types", "--n", "4", "--limit", "1"}).out)["types"][0].get<std::string>();
  auto w = ptc_run({"weight", "--type", key, "--delta", kData + "/cross4.json", "--laurent"});
  CHECK(w.status == 0);
}

TEST_CASE("golden counts and recursion") {
  auto golden = io::read_file(std::string(PTC_TEST_GOLDEN_DIR) + "/cli.json");
  for (const auto& g : golden["exact"]) {
    const std::string delta = kData + "/" + g["delta"].get<std::string>();
    const std::string expect = g["value"];
    auto c = ptc_run(with({"count", "--delta", delta, "--normalize", "--seed", "7"}, g["mode"]));
    auto r = ptc_run(with({"recurse", "--delta", delta}, g["mode"]));
    INFO(delta);
    CHECK(c.status == 0);
    CHECK(c.first_line() == expect);
    CHECK(r.first_line() == expect);
  }
  for (const auto& g : golden["numeric"]) {
    const std::string delta = kData + "/" + g["delta"].get<std::string>();
    const double expect = g["value"];
    auto c = ptc_run(with({"count", "--delta", delta, "--normalize", "--seed", "3"}, g["mode"]));
    auto r = ptc_run(with({"recurse", "--delta", delta}, g["mode"]));
    INFO(delta);
    CHECK(std::stod(c.first_line()) == doctest::Approx(expect).epsilon(1e-9));
    CHECK(std::stod(r.first_line()) == doctest::Approx(expect).epsilon(1e-9));
  }
}

TEST_CASE("caterpillar count through the command line") {
  auto a = ptc_run({"count", "--delta", kData + "/real4.json", "--cycle", "caterpillar:1,2", "--seed", "1"});
  auto b = ptc_run({"count", "--delta", kData + "/real4.json", "--cycle", "caterpillar:1,2", "--seed", "2"});
  CHECK(a.status == 0);
  CHECK(a.first_line() == b.first_line());
}
