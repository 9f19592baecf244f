#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "grinlens/errors.hpp"
#include "grinlens/profile.hpp"

using namespace grin;

namespace {
constexpr double kR = 0.05;
}

TEST(Luneburg, CenterSurfaceAndHalfPower) {
    EXPECT_EQ(eval_luneburg(0.0, kR), 2.0);
    EXPECT_DOUBLE_EQ(eval_luneburg(kR, kR), 1.0);
    EXPECT_NEAR(eval_luneburg(kR / std::sqrt(2.0), kR), 1.5, 1e-15);
}

TEST(Luneburg, RejectsOutOfDomain) {
    EXPECT_THROW(eval_luneburg(-1e-6, kR), DomainError);
    EXPECT_THROW(eval_luneburg(kR * 1.001, kR), DomainError);
    EXPECT_THROW(eval_luneburg(0.0, 0.0), DomainError);
    EXPECT_THROW(eval_clamped(0.0, kR, 0.9), DomainError);
}

TEST(Clamped, Examples) {
    EXPECT_DOUBLE_EQ(eval_clamped(kR, kR, 1.2), 1.2);
    EXPECT_EQ(eval_clamped(0.0, kR, 1.2), 2.0);
    EXPECT_DOUBLE_EQ(eval_clamped(0.5 * kR, kR, 1.2), 1.75);
}

TEST(ClampRadius, Examples) {
    EXPECT_NEAR(clamp_radius(kR, 1.2), kR * std::sqrt(0.8), 1e-15);
    EXPECT_NEAR(clamp_radius(kR, 1.2) / kR, 0.8944, 1e-4);
    EXPECT_DOUBLE_EQ(clamp_radius(kR, 1.0), kR);
    EXPECT_EQ(clamp_radius(kR, 2.0), 0.0);
    EXPECT_THROW(clamp_radius(kR, 2.1), DomainError);
    EXPECT_THROW(clamp_radius(kR, 0.99), DomainError);
}

TEST(ClampedProperty, FloorAndAgreementAtRandomRadii) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> r_dist(0.0, kR);
    for (double e : {1.0, 1.2, 1.5, 1.9}) {
        for (int i = 0; i < 1000; ++i) {
            const double r = r_dist(rng);
            const double c = eval_clamped(r, kR, e);
            const double l = eval_luneburg(r, kR);
            EXPECT_GE(c, e);
            EXPECT_GE(c, l);
            if (l >= e) EXPECT_EQ(c, l);
        }
    }
}

TEST(ClampedProperty, NonIncreasing) {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> r_dist(0.0, kR);
    for (int i = 0; i < 1000; ++i) {
        double r1 = r_dist(rng);
        double r2 = r_dist(rng);
        if (r1 > r2) std::swap(r1, r2);
        EXPECT_GE(eval_clamped(r1, kR, 1.2), eval_clamped(r2, kR, 1.2));
    }
}

TEST(ClampedProperty, ClampRadiusSolvesProfile) {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> e_dist(1.0, 2.0);
    std::uniform_real_distribution<double> radius_dist(1e-3, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const double e = e_dist(rng);
        const double radius = radius_dist(rng);
        EXPECT_NEAR(eval_luneburg(clamp_radius(radius, e), radius), e, 1e-12 * e);
    }
}

TEST(Profile, InvariantsOfClampedProfile) {
    const auto p = PermittivityProfile::clamped(kR, 1.2);
    EXPECT_EQ(p.eps(0.0), 2.0);
    for (int i = 0; i <= 100; ++i) {
        const double r = p.clamp_radius() + (kR - p.clamp_radius()) * i / 100.0;
        EXPECT_DOUBLE_EQ(p.eps(std::min(r, kR)), 1.2);
    }
    EXPECT_TRUE(p.surface_discontinuous());
    EXPECT_FALSE(PermittivityProfile::ideal(kR).surface_discontinuous());
}

TEST(LensSpec, ViolationsAreCollected) {
    LensSpec spec;
    EXPECT_TRUE(spec.violations().empty());
    spec.eps_min = 3.0;
    spec.cell_m = 0.2;
    EXPECT_GE(spec.violations().size(), 2u);
    EXPECT_THROW(spec.validate(), ValidationError);
}
