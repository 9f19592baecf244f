#pragma once

#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "grinlens/vec3.hpp"

namespace grin {

/// Gyroid level-set function sin u cos v + sin v cos w + sin w cos u with
/// (u, v, w) = 2*pi*p / cell. Clamped to [-1.5, 1.5].
double gyroid_value(const Vec3& p, double cell_m);

/// Same function on phase angles (radians).
double gyroid_phase(double u, double v, double w);

/// Thickened gyroid: the solid is the wall |g| <= threshold.
struct GyroidField {
    double cell_m = 0.01;
    double threshold = 0.0;
    Vec3 phase_origin{};

    [[nodiscard]] double value(const Vec3& p) const { return gyroid_value(p - phase_origin, cell_m); }
};

bool is_solid(const Vec3& p, const GyroidField& field);

/// Seeded Monte-Carlo estimate of the solid volume fraction of one period
/// cell for wall half-width t. The result does not depend on `workers`.
double fill_fraction(double t, std::size_t samples, std::uint64_t seed = 0, unsigned workers = 0);

struct FillSample {
    double t = 0.0;
    double phi = 0.0;
    double stderr_phi = 0.0;
};

/// phi(t) memoized on a monotone t grid, linearly interpolated.
class FillTable {
public:
    FillTable() = default;
    explicit FillTable(std::vector<FillSample> points);

    /// One Monte-Carlo pass shared by every grid point, so the table is
    /// monotone by construction.
    static FillTable estimate(const std::vector<double>& t_grid, std::size_t samples,
                              std::uint64_t seed = 0, unsigned workers = 0);

    /// Uniform grid of n points over [0, 1.5].
    static FillTable estimate_uniform(std::size_t n_points, std::size_t samples,
                                      std::uint64_t seed = 0, unsigned workers = 0);

    [[nodiscard]] double phi(double t) const;
    [[nodiscard]] const std::vector<FillSample>& points() const { return points_; }
    [[nodiscard]] std::size_t samples() const { return samples_; }

    /// CSV with header t,phi,stderr.
    void write_csv(std::ostream& out) const;
    static FillTable read_csv(std::istream& in, std::string_view source = "fill table");

private:
    std::vector<FillSample> points_;
    std::size_t samples_ = 0;
};

enum class MixingKind { VolumeAverage, MaxwellGarnett };

std::string_view to_string(MixingKind kind);
MixingKind parse_mixing_kind(std::string_view text);

/// Effective-medium rule for resin walls in air.
struct MixingModel {
    MixingKind kind = MixingKind::VolumeAverage;
    double eps_host = 2.8;
};

/// Effective permittivity at solid fraction phi.
double eps_eff(double phi, const MixingModel& model);

/// Wall half-width t realizing eps_target, found by bisection on the
/// interpolated fill table to within 1e-6 in permittivity.
double threshold_for_eps(double eps_target, const MixingModel& model, const FillTable& table);

/// Default number of Monte-Carlo samples behind a design's fill table.
inline constexpr std::size_t kDefaultFillSamples = 2'000'000;
inline constexpr std::size_t kDefaultFillGridPoints = 301;

}  // namespace grin
