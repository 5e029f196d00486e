#pragma once

#include <ptc/duality.hpp>

#include <string>
#include <vector>

namespace ptc::io {

// Curves with legs cut off outside the frame, and optional marked points.
std::string curves_svg(const std::vector<PlaneCurve<double>>& curves, const std::vector<Vec2<double>>& points = {});

// Curve on the left, dual polygon with its subdivision on the right.
std::string duality_svg(const PlaneCurve<double>& curve, const DualSubdivision<double>& dual);

}  // namespace ptc::io
