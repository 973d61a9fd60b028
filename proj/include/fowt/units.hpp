#pragma once

#include <numbers>

// SI everywhere inside the library. Degrees, rpm and kN only at I/O boundaries.
namespace fowt::units {

inline constexpr double kilo = 1e3;
inline constexpr double mega = 1e6;

constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }
constexpr double rpm_to_rad_s(double rpm) { return rpm * std::numbers::pi / 30.0; }
constexpr double rad_s_to_rpm(double w) { return w * 30.0 / std::numbers::pi; }

}  // namespace fowt::units
