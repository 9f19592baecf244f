#pragma once

#include <string>
#include <vector>

namespace grin {

/// Design contract for one printed lens. Lengths in meters.
struct LensSpec {
    double diameter_m = 0.1;
    double eps_host = 2.8;
    double eps_min = 1.2;
    double cell_m = 0.01;

    [[nodiscard]] double radius_m() const { return 0.5 * diameter_m; }

    /// Every violated invariant, empty when valid.
    [[nodiscard]] std::vector<std::string> violations() const;

    /// Throws ValidationError listing all violations.
    void validate() const;
};

/// Ideal Luneburg permittivity 2 - (r/R)^2, no clamping.
double eval_luneburg(double r, double radius);

/// Luneburg permittivity floored at eps_min out to the lens surface.
double eval_clamped(double r, double radius, double eps_min);

/// Radius beyond which the floor is active: R * sqrt(2 - eps_min).
double clamp_radius(double radius, double eps_min);

/// Radial permittivity map of a (possibly clamped) Luneburg lens.
/// eps_min == 1 is the ideal profile.
class PermittivityProfile {
public:
    PermittivityProfile(double radius_m, double eps_min);

    static PermittivityProfile ideal(double radius_m) { return {radius_m, 1.0}; }
    static PermittivityProfile clamped(double radius_m, double eps_min) { return {radius_m, eps_min}; }

    [[nodiscard]] double radius() const { return radius_; }
    [[nodiscard]] double eps_min() const { return eps_min_; }
    [[nodiscard]] double clamp_radius() const { return clamp_radius_; }

    /// Domain-checked permittivity on [0, R].
    [[nodiscard]] double eps(double r) const { return eval_clamped(r, radius_, eps_min_); }

    /// True when the index jumps at r = R (outside is air).
    [[nodiscard]] bool surface_discontinuous() const { return eps_min_ > 1.0; }

private:
    double radius_;
    double eps_min_;
    double clamp_radius_;
};

}  // namespace grin
