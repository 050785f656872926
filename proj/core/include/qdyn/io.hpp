#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qdyn/operator_s.hpp"
#include "qdyn/orbits.hpp"
#include "qdyn/render.hpp"

namespace qdyn {

/// Parses "0.75", "0.75+0.1i", "-4+1i", "2i" or "0.75,0.1".
/// Throws std::invalid_argument on anything else.
Complex parse_complex(std::string_view text);

std::string fixed_points_json(Complex A, const std::vector<StabilityReport>& reports);
std::string critical_points_json(Complex A, const std::vector<CriticalPoint>& points);
/// Closed-form moduli and disk positions; at A in {0, 1} the z2,3 modulus comes
/// from S' at the actual points (null when they do not exist).
std::string stability_json(Complex A);
/// Array of {A, period, points, multiplier_modulus, class}.
std::string orbits_json(Complex A, const std::vector<Orbit>& orbits);
std::string render_report_json(const RasterGrid& grid);

}  // namespace qdyn
