#pragma once

#include <ptc/duality.hpp>
#include <ptc/enumeration.hpp>
#include <ptc/jacobi.hpp>
#include <ptc/moduli.hpp>
#include <ptc/recursion.hpp>

#include <json.hpp>

#include <string>
#include <vector>

namespace ptc::io {

using nlohmann::json;

// Bumped whenever any format below changes.
inline constexpr int kSchemaVersion = 1;

// Exact scalars are written as "p/q" strings, doubles as JSON numbers.
json emit(const Rational& q);
json emit(double x);

// Strings and integers parse exactly; JSON floats parse as their binary value.
template <class T>
T parse_scalar(const json& j);

// True if any number in the document is a JSON float.
bool has_float(const json& j);

template <class T>
json emit(const Vec2<T>& v) {
  return json::array({emit(v.x), emit(v.y)});
}
template <class T>
Vec2<T> parse_vec(const json& j);

template <class T>
json emit_points(const std::vector<Vec2<T>>& p);
template <class T>
std::vector<Vec2<T>> parse_points(const json& j);  // {"points": [...]} or a bare array

// {"vectors": [[x, y], ...]}; validated.
template <class T>
json emit(const DeltaSet<T>& d);
template <class T>
DeltaSet<T> parse_delta(const json& j);

// {"vertices": [0, 1, ...], "edges": [{"ends": [a, b], "length": "3/2"}], "legs": [{"vertex": v}]}
template <class T>
json emit(const AbstractCurve<T>& g);
template <class T>
AbstractCurve<T> parse_graph(const json& j);

// {"graph": ..., "positions": [...], "slopes": {"edges": [...], "legs": [...]}}
template <class T>
json emit(const PlaneCurve<T>& c);
template <class T>
PlaneCurve<T> parse_curve(const json& j);

json emit(const MarkedType& t);
MarkedType parse_type(const json& j);

template <class T>
json emit(const CurveSolution<T>& s);
template <class T>
CurveSolution<T> parse_solution(const json& j);

template <class T>
json emit(const Polygon<T>& p);
template <class T>
Polygon<T> parse_polygon(const json& j);

template <class T>
json emit(const DualSubdivision<T>& s);

template <class T>
json emit(const IntersectionReport<T>& r);
template <class T>
IntersectionReport<T> parse_intersection(const json& j);

// Rational -> "p/q", double -> number, Laurent -> {"laurent": "y^-1 + 10 + y"}.
json emit(const Weight& w);
Weight parse_weight(const json& j);

json emit(const CountResult& r);
CountResult parse_count(const json& j);

json emit(const RecursionResult& r);
RecursionResult parse_recursion(const json& j);

json emit(const RelationRank& r);
RelationRank parse_rank(const json& j);

// {"n": 4, "coefficients": {"key": weight, ...}}; parsed cycles are not yet verified.
json emit(const Cycle& z);
Cycle parse_cycle(const json& j, const WeightMode& mode);

// Reads a file; throws ParseError with the path on failure.
json read_file(const std::string& path);

}  // namespace ptc::io
