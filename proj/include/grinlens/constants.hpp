#pragma once

namespace grin {

/// Speed of light used throughout the sizing and gain calculations (m/s).
inline constexpr double kSpeedOfLight = 2.998e8;

inline constexpr double kPi = 3.14159265358979323846;

inline constexpr double kGHz = 1e9;
inline constexpr double kMm = 1e-3;

/// Upper bound of |g| for the trigonometric gyroid level-set function.
inline constexpr double kGyroidMax = 1.5;

inline constexpr const char* kToolName = "grinlens";
inline constexpr const char* kToolVersion = "1.0.0";

}  // namespace grin
