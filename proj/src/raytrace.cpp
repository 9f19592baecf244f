#include "grinlens/raytrace.hpp"

#include <cmath>
#include <ostream>

#include <fmt/format.h>

#include "grinlens/errors.hpp"
#include "grinlens/parallel.hpp"

namespace grin {

namespace {

template <class Real>
struct V3 {
    Real x{}, y{}, z{};

    V3 operator+(const V3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    V3 operator-(const V3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    V3 operator*(Real s) const { return {x * s, y * s, z * s}; }
    Real dot(const V3& o) const { return x * o.x + y * o.y + z * o.z; }
    Real norm() const { return std::sqrt(dot(*this)); }
    V3 normalized() const { return *this * (Real(1) / norm()); }

    static V3 from(const Vec3& v) { return {Real(v.x), Real(v.y), Real(v.z)}; }
    Vec3 to_vec3() const { return {double(x), double(y), double(z)}; }
};

template <class Real>
struct State {
    V3<Real> r;
    V3<Real> t;  // optical direction vector n * dr/ds
};

// Index law of one region of the lens in working precision. The graded
// core follows n^2 = 2 - (r/R)^2, the clamped shell is uniform. Each law is
// smooth on its own, so RK stages that step slightly past a region boundary
// stay accurate.
template <class Real>
class IndexField {
public:
    IndexField(const PermittivityProfile& profile, bool graded)
        : inv_r2_(Real(1) / (Real(profile.radius()) * Real(profile.radius()))),
          floor_(profile.eps_min()),
          graded_(graded) {}

    [[nodiscard]] Real n(const V3<Real>& r) const {
        return graded_ ? std::sqrt(Real(2) - r.dot(r) * inv_r2_) : std::sqrt(floor_);
    }

    [[nodiscard]] State<Real> derivative(const State<Real>& s) const {
        const Real n_here = n(s.r);
        // grad n = grad(eps) / (2n) with grad(eps) = -2 r / R^2.
        const V3<Real> grad = graded_ ? s.r * (-inv_r2_ / n_here) : V3<Real>{};
        return {s.t * (Real(1) / n_here), grad};
    }

    [[nodiscard]] State<Real> rk4(const State<Real>& s, Real h) const {
        const Real half = h / Real(2);
        const State<Real> k1 = derivative(s);
        const State<Real> k2 = derivative({s.r + k1.r * half, s.t + k1.t * half});
        const State<Real> k3 = derivative({s.r + k2.r * half, s.t + k2.t * half});
        const State<Real> k4 = derivative({s.r + k3.r * h, s.t + k3.t * h});
        const Real w = h / Real(6);
        return {s.r + (k1.r + k2.r * Real(2) + k3.r * Real(2) + k4.r) * w,
                s.t + (k1.t + k2.t * Real(2) + k3.t * Real(2) + k4.t) * w};
    }

private:
    Real inv_r2_;
    Real floor_;
    bool graded_;
};

// Smallest step in (0, h] whose end point satisfies `past`, found by bisection.
template <class Real, class Field, class Pred>
Real step_to_boundary(const Field& field, const State<Real>& s, Real h, Pred past) {
    Real lo = 0;
    Real hi = h;
    for (int it = 0; it < 200; ++it) {
        const Real mid = (lo + hi) / Real(2);
        if (mid <= lo || mid >= hi) break;
        (past(field.rk4(s, mid).r.norm()) ? hi : lo) = mid;
    }
    return hi;
}

// Refracts unit direction d through a surface with unit normal `normal`
// pointing back toward the incident side. nullopt on total internal reflection.
template <class Real>
std::optional<V3<Real>> refract(const V3<Real>& d, const V3<Real>& normal, Real n1, Real n2) {
    const Real eta = n1 / n2;
    const Real cos_i = -normal.dot(d);
    const Real k = Real(1) - eta * eta * (Real(1) - cos_i * cos_i);
    if (k < Real(0)) return std::nullopt;
    return (d * eta + normal * (eta * cos_i - std::sqrt(k))).normalized();
}

template <class Real>
Ray trace_impl(const Ray& start, const PermittivityProfile& profile, double step_m) {
    using V = V3<Real>;
    const Real radius = profile.radius();
    const Real step = step_m;
    Ray ray;
    ray.path.push_back(start.position);
    const V p = V::from(start.position);
    if (start.direction.norm() == 0.0) throw DomainError("ray direction must be non-zero");
    V u = V::from(start.direction).normalized();
    if (p.norm() < radius * Real(1 - 1e-12)) throw DomainError("ray must start outside or on the lens surface");

    const Real b = p.dot(u);
    const Real c = p.dot(p) - radius * radius;
    const Real disc = b * b - c;
    const Real s_in = -b - std::sqrt(std::max(disc, Real(0)));
    if (disc <= Real(0) || b >= Real(0) || s_in < Real(-1e-12) * radius) {
        ray.missed = true;
        ray.direction = u.to_vec3();
        ray.position = (p + u * (Real(4) * radius)).to_vec3();
        ray.path.push_back(ray.position);
        return ray;
    }

    const bool jump = profile.surface_discontinuous();
    const Real n_surface = std::sqrt(Real(profile.eps(profile.radius())));
    const V entry = p + u * std::max(s_in, Real(0));
    ray.entry_point = entry.to_vec3();
    if (ray.path.back() != ray.entry_point) ray.path.push_back(ray.entry_point);
    if (jump) u = *refract(u, entry.normalized(), Real(1), n_surface);

    // The gradient is discontinuous on the clamp sphere. Steps are cut there
    // as at the surface and the ray switches to the other region's law.
    const Real r_kink = profile.clamp_radius();
    const bool two_regions = jump && r_kink > Real(0) && r_kink < radius;
    const IndexField<Real> core(profile, true);
    const IndexField<Real> shell(profile, false);
    bool in_core = !jump;  // entry is on the surface, inside the shell when clamped

    State<Real> s{entry, u * n_surface};
    const auto max_steps = static_cast<std::size_t>(100.0 * profile.radius() / step_m) + 1000;
    std::size_t steps = 0;
    for (;;) {
        if (++steps > max_steps) throw std::runtime_error("ray failed to leave the lens");
        const IndexField<Real>& field = in_core ? core : shell;
        State<Real> next = field.rk4(s, step);
        if (two_regions && (in_core ? next.r.norm() > r_kink : next.r.norm() < r_kink)) {
            const bool leaving_core = in_core;
            const Real h = step_to_boundary(field, s, step, [&](Real r) { return leaving_core ? r > r_kink : r < r_kink; });
            s = field.rk4(s, h);
            in_core = !in_core;
            ray.path.push_back(s.r.to_vec3());
            continue;
        }
        if (next.r.norm() < radius) {
            // Keep |t| = n so the direction stays a unit vector.
            next.t = next.t * (field.n(next.r) / next.t.norm());
            s = next;
            ray.path.push_back(s.r.to_vec3());
            continue;
        }
        // Shorten the last step so the ray lands on the surface.
        s = field.rk4(s, step_to_boundary(field, s, step, [&](Real r) { return r >= radius; }));
        ray.path.push_back(s.r.to_vec3());
        const V normal = s.r.normalized();
        const V dir = s.t.normalized();
        if (!jump) {
            u = dir;
            break;
        }
        if (auto out = refract(dir, normal * Real(-1), n_surface, Real(1))) {
            u = *out;
            break;
        }
        // Total internal reflection: continue inside from the surface point.
        s.t = (dir - normal * (Real(2) * dir.dot(normal))) * n_surface;
    }
    ray.exit_point = s.r.to_vec3();
    ray.direction = u.to_vec3();
    ray.position = (s.r + u * (Real(2) * radius)).to_vec3();
    ray.path.push_back(ray.position);
    return ray;
}

}  // namespace

Ray trace_ray(const Ray& start, const PermittivityProfile& profile, double step, RayPrecision precision) {
    const double radius = profile.radius();
    if (!(step > 0.0) || step > radius / 500.0 * (1.0 + 1e-12))
        throw DomainError(fmt::format("ray step {} must be in (0, R/500 = {}]", step, radius / 500.0));
    return precision == RayPrecision::Extended ? trace_impl<long double>(start, profile, step)
                                               : trace_impl<double>(start, profile, step);
}

std::optional<Vec3> plane_crossing(const Ray& ray, double plane_x) {
    if (ray.missed || ray.direction.x <= 0.0) return std::nullopt;
    const double s = (plane_x - ray.exit_point.x) / ray.direction.x;
    return ray.exit_point + ray.direction * s;
}

FocusReport focus_report(std::span<const double> offsets, const PermittivityProfile& profile, double step,
                         unsigned workers, RayPrecision precision) {
    const double radius = profile.radius();
    for (double b : offsets)
        if (!(b >= 0.0 && b <= 0.9 * radius * (1.0 + 1e-12)))
            throw DomainError(fmt::format("bundle offset {} outside [0, 0.9 R]", b));
    FocusReport report;
    report.traced.resize(offsets.size());
    parallel_for(offsets.size(), workers, [&](std::size_t i) {
        Ray start;
        start.position = {-2.0 * radius, offsets[i], 0.0};
        start.direction = {1.0, 0.0, 0.0};
        report.traced[i] = trace_ray(start, profile, step, precision);
    });

    std::vector<Vec3> spots;
    for (std::size_t i = 0; i < report.traced.size(); ++i) {
        const auto spot = plane_crossing(report.traced[i], radius);
        if (!spot) {
            report.warnings.push_back(fmt::format("ray {} (offset {:.6g} m) does not reach the focal plane; excluded", i,
                                                  offsets[i]));
            continue;
        }
        spots.push_back(*spot);
    }
    report.rays = spots.size();
    if (spots.empty()) return report;
    Vec3 centroid{};
    for (const auto& s : spots) centroid += s;
    centroid = centroid / static_cast<double>(spots.size());
    double sum2 = 0.0;
    for (const auto& s : spots) sum2 += (s - centroid).dot(s - centroid);
    report.focal_point = centroid;
    report.rms_spread = std::sqrt(sum2 / static_cast<double>(spots.size()));
    return report;
}

void write_rays_csv(std::span<const Ray> rays, std::ostream& out) {
    out << "ray_id,s,x,y,z\n";
    for (std::size_t id = 0; id < rays.size(); ++id) {
        double s = 0.0;
        const auto& path = rays[id].path;
        for (std::size_t i = 0; i < path.size(); ++i) {
            if (i > 0) s += (path[i] - path[i - 1]).norm();
            out << fmt::format("{},{:.9e},{:.9e},{:.9e},{:.9e}\n", id, s, path[i].x, path[i].y, path[i].z);
        }
    }
}

}  // namespace grin
