#include "grinlens/profile.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <fmt/format.h>

#include "grinlens/errors.hpp"

namespace grin {

std::vector<std::string> LensSpec::violations() const {
    std::vector<std::string> out;
    if (!(diameter_m > 0.0)) out.push_back(fmt::format("diameter must be > 0 (got {} m)", diameter_m));
    if (!(cell_m > 0.0)) out.push_back(fmt::format("unit-cell size must be > 0 (got {} m)", cell_m));
    if (diameter_m > 0.0 && cell_m > 0.0 && !(cell_m < diameter_m))
        out.push_back(fmt::format("unit-cell size {} m must be smaller than the diameter {} m", cell_m,
                                  diameter_m));
    if (!(eps_min >= 1.0)) out.push_back(fmt::format("eps_min must be >= 1 (got {})", eps_min));
    if (!(eps_min <= 2.0)) out.push_back(fmt::format("eps_min must be <= 2, the Luneburg center value (got {})", eps_min));
    if (!(eps_min < eps_host))
        out.push_back(fmt::format("eps_min ({}) must be below eps_host ({})", eps_min, eps_host));
    return out;
}

void LensSpec::validate() const {
    if (auto v = violations(); !v.empty()) throw ValidationError(std::move(v));
}

double eval_luneburg(double r, double radius) {
    if (!(radius > 0.0)) throw DomainError(fmt::format("lens radius must be > 0 (got {})", radius));
    if (!(r >= 0.0) || r > radius)
        throw DomainError(fmt::format("radius {} outside [0, {}]", r, radius));
    const double q = r / radius;
    return 2.0 - q * q;
}

double eval_clamped(double r, double radius, double eps_min) {
    if (!(eps_min >= 1.0 && eps_min <= 2.0))
        throw DomainError(fmt::format("eps_min {} outside [1, 2]", eps_min));
    return std::max(eval_luneburg(r, radius), eps_min);
}

double clamp_radius(double radius, double eps_min) {
    if (!(eps_min >= 1.0 && eps_min <= 2.0))
        throw DomainError(fmt::format("eps_min {} outside [1, 2]", eps_min));
    return radius * std::sqrt(2.0 - eps_min);
}

PermittivityProfile::PermittivityProfile(double radius_m, double eps_min)
    : radius_(radius_m), eps_min_(eps_min), clamp_radius_(grin::clamp_radius(radius_m, eps_min)) {
    if (!(radius_m > 0.0)) throw DomainError(fmt::format("lens radius must be > 0 (got {})", radius_m));
}

}  // namespace grin
