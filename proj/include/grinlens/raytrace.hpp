#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "grinlens/profile.hpp"
#include "grinlens/vec3.hpp"

namespace grin {

struct Ray {
    Vec3 position{};
    Vec3 direction{1.0, 0.0, 0.0};
    std::vector<Vec3> path;

    // Filled in by trace_ray.
    bool missed = false;
    Vec3 entry_point{};
    Vec3 exit_point{};
};

/// Working precision of the integrator. Extended (long double) is only
/// needed to resolve truncation error below double round-off, e.g. when
/// measuring the convergence order at small steps.
enum class RayPrecision { Double, Extended };

/// Geometric-optics ray through a spherical lens centred at the origin.
///
/// Outside the sphere the ray is straight. Inside, d/ds(n dr/ds) = grad n
/// with n = sqrt(eps) is integrated by classical RK4 in arc length with a
/// fixed step. Steps are cut so the ray lands exactly on the clamp sphere,
/// where the gradient jumps, and on the surface.
/// Snell refraction is applied at entry and exit (total internal reflection
/// keeps the ray inside). On return `position`/`direction` hold the end of
/// the outgoing segment, which extends 2R past the exit point.
Ray trace_ray(const Ray& start, const PermittivityProfile& profile, double step,
              RayPrecision precision = RayPrecision::Double);

/// Where the outgoing segment of a traced ray crosses the plane x = plane_x.
std::optional<Vec3> plane_crossing(const Ray& ray, double plane_x);

struct FocusReport {
    std::size_t rays = 0;
    double rms_spread = 0.0;  // about focal_point, in the focal plane
    Vec3 focal_point{};
    std::vector<std::string> warnings;
    std::vector<Ray> traced;
};

/// Parallel bundle along +x at the given transverse offsets (y), launched
/// from x = -2R. Spots are taken in the plane x = R through the ideal focus.
FocusReport focus_report(std::span<const double> offsets, const PermittivityProfile& profile, double step,
                         unsigned workers = 0, RayPrecision precision = RayPrecision::Double);

/// Columns ray_id,s,x,y,z with s the cumulative path length.
void write_rays_csv(std::span<const Ray> rays, std::ostream& out);

}  // namespace grin
